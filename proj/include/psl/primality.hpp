#pragma once

#include <array>
#include <cstdint>

#include "psl/int128.hpp"
#include "psl/primes.hpp"

namespace psl {

enum class PrimalityMethod { sieve, deterministic_miller_rabin };

struct PrimalityVerdict {
    u128 value = 0;
    bool is_prime = false;
    PrimalityMethod method = PrimalityMethod::sieve;
};

/// The first thirteen primes. Twelve bases (up to 37) are exact only below
/// 318 665 857 834 031 151 167 461; base 41 extends that to kMillerRabinBound.
inline constexpr std::array<std::uint32_t, 13> kMillerRabinBases = {2,  3,  5,  7,  11, 13, 17,
                                                                    19, 23, 29, 31, 37, 41};
/// 3 317 044 064 679 887 385 961 981, the smallest strong pseudoprime to all thirteen bases.
inline constexpr u128 kMillerRabinBound =
    static_cast<u128>(331704406467ULL) * 10000000000000ULL + 9887385961981ULL;

/// Deterministic primality. Values covered by `table` are answered by lookup,
/// everything else by Miller-Rabin over kMillerRabinBases. Throws out_of_proven_range for
/// values >= kMillerRabinBound.
PrimalityVerdict is_prime(u128 value, const PrimeTable* table = nullptr);

/// Miller-Rabin without the table shortcut; small values by trial division.
bool miller_rabin(u128 value);

/// Fast path used by the scanner: trial division by small primes, then
/// Miller-Rabin. Same range contract as miller_rabin.
bool is_prime_fast(u128 value);

}  // namespace psl
