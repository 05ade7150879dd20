#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "psl/int128.hpp"
#include "psl/primes.hpp"

namespace psl {

enum class SumKind { plain, offset, shifted };

/// Which prime-sum sequence is meant:
///   plain       S_n       = p_1 + ... + p_{2n}
///   offset(d)   S_n^(d)   = 2d + S_n
///   shifted(k)  S_n^(k)   = p_{1+k} + ... + p_{2n+1+k}   (an odd number of terms)
struct SumVariant {
    SumKind kind = SumKind::plain;
    std::uint64_t param = 0;

    static SumVariant plain() { return {}; }
    static SumVariant offset(std::uint64_t d) { return {SumKind::offset, d}; }
    static SumVariant shifted(std::uint64_t k);

    /// "plain", "offset:<d>" or "shifted:<k>".
    std::string to_string() const;
    static SumVariant parse(std::string_view text);

    friend bool operator==(const SumVariant&, const SumVariant&) = default;
};

/// Highest prime index the n-th term of `variant` depends on.
std::size_t primes_needed(SumVariant variant, std::uint64_t n);

/// Exact prefix sums S'_i = p_1 + ... + p_i for i = 0..count over an immutable table.
class SumTable {
public:
    SumTable(std::shared_ptr<const PrimeTable> table, std::size_t count);

    /// Prefix sums over the first `count` primes, drawn from the global cache.
    static SumTable first_primes(std::size_t count);

    std::size_t prime_count() const noexcept { return prefix_.size() - 1; }
    /// Largest n with S_n available.
    std::size_t max_s_index() const noexcept { return prime_count() / 2; }
    const PrimeTable& table() const noexcept { return *table_; }
    std::shared_ptr<const PrimeTable> shared_table() const noexcept { return table_; }

    std::uint64_t prime(std::size_t i) const;
    u128 s_prime(std::size_t n) const;
    u128 s(std::size_t n) const;
    u128 term(SumVariant variant, std::uint64_t n) const;

private:
    std::shared_ptr<const PrimeTable> table_;
    std::vector<u128> prefix_;
};

/// Process-wide prefix-sum table covering at least `prime_count` primes. Grows
/// by at least a factor two; returned tables are immutable snapshots.
std::shared_ptr<const SumTable> shared_sums(std::size_t prime_count);

/// S'_n, the sum of the first n primes. Throws capacity_error past 2^127 - 1.
u128 s_prime(std::uint64_t n);
/// S_n = S'_{2n}.
u128 s(std::uint64_t n);

struct SumState {
    SumVariant variant;
    std::uint64_t index = 0;  // 0 before the first step
    u128 accumulator = 0;
    std::array<std::uint64_t, 2> last_primes{};
};

/// Single-owner cursor producing (n, term) for n = 1, 2, ... with O(1) work per step.
class SumStream {
public:
    SumStream(SumVariant variant, std::shared_ptr<const PrimeTable> table);
    /// Continue after term `index` whose value is `accumulator`.
    SumStream(SumVariant variant, std::shared_ptr<const PrimeTable> table, std::uint64_t index,
              u128 accumulator);

    std::pair<std::uint64_t, u128> next();
    const SumState& state() const noexcept { return state_; }

private:
    std::uint64_t prime_at(std::size_t i) const;

    std::shared_ptr<const PrimeTable> table_;
    SumState state_;
};

/// First n_max terms of a variant, with the prime supply grown as needed.
std::vector<std::pair<std::uint64_t, u128>> stream(SumVariant variant, std::uint64_t n_max);

/// a + b, throwing capacity_error if the result would exceed 2^127 - 1.
u128 checked_add(u128 a, u128 b);

}  // namespace psl
