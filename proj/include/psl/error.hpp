#pragma once

#include <stdexcept>
#include <string>

namespace psl {

/// Base for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A request exceeds a configured limit (sieve cap, 127-bit accumulator, base-sieve reach).
class capacity_error : public error {
public:
    using error::error;
};

/// Argument outside the mathematical domain of a formula (log of a value <= 1, k below range).
class domain_error : public error {
public:
    using error::error;
};

/// Deterministic Miller-Rabin asked about a value beyond its proven bound.
class out_of_proven_range : public error {
public:
    using error::error;
};

class invalid_argument : public error {
public:
    using error::error;
};

/// Checkpoint does not match the data it claims to describe.
class digest_mismatch : public error {
public:
    using error::error;
};

class no_root_error : public error {
public:
    using error::error;
};

/// Input data (hits, pi rows, prime tables) does not cover the requested range.
class insufficient_data : public error {
public:
    using error::error;
};

}  // namespace psl
