#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace psl {

inline constexpr std::uint64_t kDefaultMaxSieve = std::uint64_t{1} << 40;
inline constexpr std::uint64_t kDefaultWindowReach = std::uint64_t{1} << 50;
inline constexpr std::uint64_t kDefaultSegmentSize = std::uint64_t{1} << 18;

/// Sieve capacity cap: PSL_MAX_SIEVE from the environment if set, else 2^40.
std::uint64_t max_sieve_limit();

struct SieveOptions {
    /// Numbers covered per segment; bounds working memory independently of the limit.
    std::uint64_t segment_size = kDefaultSegmentSize;
    /// 0 selects max_sieve_limit().
    std::uint64_t max_limit = 0;
    unsigned threads = 1;
};

/// All primes up to an inclusive limit, in increasing order. Immutable once built.
class PrimeTable {
public:
    PrimeTable() = default;

    /// Segmented sieve of Eratosthenes. Throws capacity_error past the cap.
    static PrimeTable sieve(std::uint64_t limit, const SieveOptions& options = {});

    std::uint64_t limit() const noexcept { return limit_; }
    std::uint64_t segment_size() const noexcept { return segment_size_; }
    std::span<const std::uint64_t> primes() const noexcept { return primes_; }
    std::size_t size() const noexcept { return primes_.size(); }

    /// p_n with p_1 = 2. Throws insufficient_data when n exceeds the table.
    std::uint64_t nth(std::size_t n) const;

    /// pi(x) for x <= limit. Throws insufficient_data beyond the limit.
    std::size_t pi(std::uint64_t x) const;

    /// Membership for x <= limit. Throws insufficient_data beyond the limit.
    bool contains(std::uint64_t x) const;

private:
    std::uint64_t limit_ = 1;
    std::uint64_t segment_size_ = kDefaultSegmentSize;
    std::vector<std::uint64_t> primes_;
};

PrimeTable sieve_primes(std::uint64_t limit);

/// Shared, growable prime supply. Tables handed out are immutable snapshots;
/// growth resieves with at least twice the previous limit.
class PrimeCache {
public:
    explicit PrimeCache(std::uint64_t initial_limit = 1 << 16, SieveOptions options = {});

    std::shared_ptr<const PrimeTable> table() const;
    std::shared_ptr<const PrimeTable> ensure_count(std::size_t count);
    std::shared_ptr<const PrimeTable> ensure_limit(std::uint64_t limit);

    std::uint64_t nth_prime(std::size_t n);

    static PrimeCache& global();

private:
    void grow_to(std::uint64_t limit);

    mutable std::mutex mutex_;
    SieveOptions options_;
    std::shared_ptr<const PrimeTable> table_;
};

/// The n-th prime from the process-wide cache.
std::uint64_t nth_prime(std::size_t n);

/// Upper bound on p_n valid for n >= 6, with a small-n fallback.
std::uint64_t nth_prime_upper_bound(std::size_t n);

/// Number of primes p with lo < p < hi, by a windowed segmented sieve seeded
/// with base primes up to sqrt(hi). Throws capacity_error when hi exceeds
/// `reach` or sqrt(hi) exceeds the sieve cap.
std::uint64_t prime_count_between(std::uint64_t lo, std::uint64_t hi,
                                  std::uint64_t reach = kDefaultWindowReach);

}  // namespace psl
