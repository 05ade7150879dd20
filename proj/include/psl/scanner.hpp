#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "psl/int128.hpp"
#include "psl/prime_sums.hpp"

namespace psl {

/// The k-th prime found in a sequence, equal to its m-th term.
struct PrimeHit {
    std::uint64_t k = 0;
    std::uint64_t m = 0;
    u128 q = 0;

    friend bool operator==(const PrimeHit&, const PrimeHit&) = default;
};

/// pi_n (primes among the first n terms) with the largest of them and its index.
/// q_max and m_of_q_max are 0 when no term up to n is prime.
struct PiCheckpointRow {
    std::uint64_t n = 0;
    std::uint64_t pi_n = 0;
    u128 q_max = 0;
    std::uint64_t m_of_q_max = 0;

    friend bool operator==(const PiCheckpointRow&, const PiCheckpointRow&) = default;
};

/// Everything needed to continue a scan after term n_last.
struct Checkpoint {
    SumVariant variant;
    std::uint64_t n_last = 0;
    u128 accumulator = 0;
    std::uint64_t hits_so_far = 0;
    std::uint64_t digest = 0;

    friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

/// 64-bit FNV-1a over the hit list; each hit contributes m (8 bytes) then q
/// (16 bytes), both little-endian.
class HitDigest {
public:
    void update(const PrimeHit& hit);
    std::uint64_t value() const noexcept { return state_; }

private:
    std::uint64_t state_ = 14695981039346656037ULL;
};

std::uint64_t hit_digest(std::span<const PrimeHit> hits);

struct ScanOptions {
    unsigned threads = 1;
    /// Indices per parallel work unit.
    std::uint64_t block_size = 4096;
    /// A checkpoint is emitted every `cadence` indices and at the end.
    std::uint64_t cadence = 100000;
    /// Receives each checkpoint together with all hits up to it.
    std::function<void(const Checkpoint&, std::span<const PrimeHit>)> on_checkpoint;
};

struct ScanResult {
    std::vector<PrimeHit> hits;
    std::vector<PiCheckpointRow> rows;
    Checkpoint checkpoint;
};

/// Tests S_1..S_{n_max} of `variant` for primality. Hits come back sorted by m;
/// one row per requested n in `pi_points` (each must be <= n_max). Output is
/// identical for every thread count.
ScanResult scan(SumVariant variant, std::uint64_t n_max, std::span<const std::uint64_t> pi_points = {},
                const ScanOptions& options = {});

/// Continues a scan from `checkpoint`. `prior_hits` must be the hits up to
/// checkpoint.n_last; they are validated against the checkpoint digest and the
/// accumulator is recomputed from the prime table. Throws digest_mismatch.
ScanResult resume(const Checkpoint& checkpoint, std::span<const PrimeHit> prior_hits,
                  std::uint64_t n_max, std::span<const std::uint64_t> pi_points = {},
                  const ScanOptions& options = {});

/// Row for index n from hits sorted by m (all hits with m <= n must be present).
PiCheckpointRow pi_row_at(std::span<const PrimeHit> hits, std::uint64_t n);

/// Indices n <= n_max with S'_n (sum of the first n primes) prime.
std::vector<std::uint64_t> first_prime_indices(std::uint64_t n_max);

}  // namespace psl
