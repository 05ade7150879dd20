#include "psl/scanner.hpp"

#include <algorithm>
#include <atomic>
#include <string>
#include <thread>

#include "psl/error.hpp"
#include "psl/primality.hpp"

namespace psl {
namespace {

constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_bytes(std::uint64_t& state, u128 value, int bytes) {
    for (int i = 0; i < bytes; ++i) {
        state ^= static_cast<std::uint8_t>(value >> (8 * i));
        state *= kFnvPrime;
    }
}

// Marks primality of every value; blocks are claimed dynamically but each
// writes only its own slots, so the result does not depend on scheduling.
std::vector<std::uint8_t> test_values(std::span<const u128> values, const ScanOptions& options) {
    std::vector<std::uint8_t> flags(values.size(), 0);
    const std::uint64_t block = std::max<std::uint64_t>(options.block_size, 1);
    const std::uint64_t blocks = (values.size() + block - 1) / block;
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (std::uint64_t b = next++; b < blocks; b = next++) {
            const std::size_t lo = b * block;
            const std::size_t hi = std::min<std::size_t>(values.size(), lo + block);
            for (std::size_t i = lo; i < hi; ++i) {
                flags[i] = is_prime_fast(values[i]) ? 1 : 0;
            }
        }
    };
    const unsigned workers = static_cast<unsigned>(
        std::min<std::uint64_t>(std::max(1u, options.threads), std::max<std::uint64_t>(blocks, 1)));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    return flags;
}

std::vector<PiCheckpointRow> rows_for(std::span<const PrimeHit> hits,
                                      std::span<const std::uint64_t> points, std::uint64_t n_max) {
    std::vector<PiCheckpointRow> rows;
    rows.reserve(points.size());
    for (std::uint64_t n : points) {
        if (n == 0 || n > n_max) {
            throw invalid_argument("pi checkpoint " + std::to_string(n) + " outside 1.." +
                                   std::to_string(n_max));
        }
        rows.push_back(pi_row_at(hits, n));
    }
    return rows;
}

ScanResult run_scan(SumVariant variant, std::uint64_t start_index, u128 start_acc,
                    std::vector<PrimeHit> hits, std::uint64_t n_max,
                    std::span<const std::uint64_t> pi_points, const ScanOptions& options) {
    if (n_max == 0) {
        throw invalid_argument("scan needs n_max >= 1");
    }
    HitDigest digest;
    for (const auto& h : hits) {
        digest.update(h);
    }
    const auto table = PrimeCache::global().ensure_count(primes_needed(variant, n_max));
    SumStream cursor(variant, table, start_index, start_acc);
    const std::uint64_t cadence = std::max<std::uint64_t>(options.cadence, 1);

    std::vector<u128> values;
    while (cursor.state().index < n_max) {
        const std::uint64_t first = cursor.state().index + 1;
        const std::uint64_t last = std::min(n_max, (first - 1) / cadence * cadence + cadence);
        values.clear();
        values.reserve(last - first + 1);
        for (std::uint64_t n = first; n <= last; ++n) {
            values.push_back(cursor.next().second);
        }
        const auto flags = test_values(values, options);
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (flags[i]) {
                PrimeHit hit{hits.size() + 1, first + i, values[i]};
                digest.update(hit);
                hits.push_back(hit);
            }
        }
        if (options.on_checkpoint) {
            const Checkpoint cp{variant, last, cursor.state().accumulator, hits.size(), digest.value()};
            options.on_checkpoint(cp, hits);
        }
    }

    ScanResult result;
    result.checkpoint = {variant, cursor.state().index, cursor.state().accumulator, hits.size(),
                         digest.value()};
    result.rows = rows_for(hits, pi_points, n_max);
    result.hits = std::move(hits);
    return result;
}

}  // namespace

void HitDigest::update(const PrimeHit& hit) {
    fnv_bytes(state_, hit.m, 8);
    fnv_bytes(state_, hit.q, 16);
}

std::uint64_t hit_digest(std::span<const PrimeHit> hits) {
    HitDigest d;
    for (const auto& h : hits) {
        d.update(h);
    }
    return d.value();
}

ScanResult scan(SumVariant variant, std::uint64_t n_max, std::span<const std::uint64_t> pi_points,
                const ScanOptions& options) {
    return run_scan(variant, 0, 0, {}, n_max, pi_points, options);
}

ScanResult resume(const Checkpoint& checkpoint, std::span<const PrimeHit> prior_hits,
                  std::uint64_t n_max, std::span<const std::uint64_t> pi_points,
                  const ScanOptions& options) {
    if (prior_hits.size() != checkpoint.hits_so_far) {
        throw digest_mismatch("checkpoint records " + std::to_string(checkpoint.hits_so_far) +
                              " hits but " + std::to_string(prior_hits.size()) + " were supplied");
    }
    if (hit_digest(prior_hits) != checkpoint.digest) {
        throw digest_mismatch("hit list digest does not match the checkpoint");
    }
    for (std::size_t i = 0; i < prior_hits.size(); ++i) {
        const auto& h = prior_hits[i];
        if (h.k != i + 1 || h.m > checkpoint.n_last || (i > 0 && h.m <= prior_hits[i - 1].m)) {
            throw digest_mismatch("hit list is not a valid prefix for this checkpoint");
        }
    }
    if (checkpoint.n_last > 0) {
        const auto table =
            PrimeCache::global().ensure_count(primes_needed(checkpoint.variant, checkpoint.n_last));
        const SumTable sums(table, primes_needed(checkpoint.variant, checkpoint.n_last));
        if (sums.term(checkpoint.variant, checkpoint.n_last) != checkpoint.accumulator) {
            throw digest_mismatch("checkpoint accumulator does not match " +
                                  checkpoint.variant.to_string() + " at n = " +
                                  std::to_string(checkpoint.n_last));
        }
    }
    if (n_max < checkpoint.n_last) {
        throw invalid_argument("resume target precedes the checkpoint");
    }
    std::vector<PrimeHit> hits(prior_hits.begin(), prior_hits.end());
    if (n_max == checkpoint.n_last) {
        ScanResult result;
        result.checkpoint = checkpoint;
        result.rows = rows_for(hits, pi_points, n_max);
        result.hits = std::move(hits);
        return result;
    }
    return run_scan(checkpoint.variant, checkpoint.n_last, checkpoint.accumulator, std::move(hits),
                    n_max, pi_points, options);
}

PiCheckpointRow pi_row_at(std::span<const PrimeHit> hits, std::uint64_t n) {
    const auto it = std::upper_bound(hits.begin(), hits.end(), n,
                                     [](std::uint64_t v, const PrimeHit& h) { return v < h.m; });
    PiCheckpointRow row;
    row.n = n;
    row.pi_n = static_cast<std::uint64_t>(it - hits.begin());
    if (it != hits.begin()) {
        row.q_max = std::prev(it)->q;
        row.m_of_q_max = std::prev(it)->m;
    }
    return row;
}

std::vector<std::uint64_t> first_prime_indices(std::uint64_t n_max) {
    if (n_max == 0) {
        throw invalid_argument("first_prime_indices needs n_max >= 1");
    }
    const auto table = PrimeCache::global().ensure_count(n_max);
    std::vector<std::uint64_t> out;
    u128 acc = 0;
    std::uint64_t n = 0;
    for (std::uint64_t p : table->primes().first(n_max)) {
        acc = checked_add(acc, p);
        ++n;
        if (is_prime_fast(acc)) {
            out.push_back(n);
        }
    }
    return out;
}

}  // namespace psl
