#include "psl/primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "psl/error.hpp"

namespace psl {
namespace {

std::uint64_t isqrt(std::uint64_t x) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    while (r * r > x) {
        --r;
    }
    while ((r + 1) * (r + 1) <= x) {
        ++r;
    }
    return r;
}

// Odd primes up to `bound` by a plain sieve; only used for base primes.
std::vector<std::uint64_t> small_odd_primes(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    if (bound < 3) {
        return out;
    }
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 3; i * i <= bound; i += 2) {
        if (!composite[i]) {
            for (std::uint64_t j = i * i; j <= bound; j += 2 * i) {
                composite[j] = true;
            }
        }
    }
    for (std::uint64_t i = 3; i <= bound; i += 2) {
        if (!composite[i]) {
            out.push_back(i);
        }
    }
    return out;
}

// Marks odd composites in [lo, hi). Slot i stands for first_odd + 2i.
struct OddWindow {
    std::uint64_t first_odd = 0;
    std::vector<std::uint8_t> composite;

    OddWindow(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint64_t> odd_base) {
        first_odd = lo | 1;
        if (hi <= first_odd) {
            return;
        }
        composite.assign((hi - first_odd + 1) / 2, 0);
        for (std::uint64_t p : odd_base) {
            const std::uint64_t sq = p * p;
            if (sq >= hi) {
                break;
            }
            std::uint64_t start = std::max(sq, (lo + p - 1) / p * p);
            if ((start & 1) == 0) {
                start += p;
            }
            for (std::uint64_t j = start; j < hi; j += 2 * p) {
                composite[(j - first_odd) / 2] = 1;
            }
        }
        if (first_odd == 1 && !composite.empty()) {
            composite[0] = 1;
        }
    }

    template <class F>
    void for_each_prime(F&& f) const {
        for (std::size_t i = 0; i < composite.size(); ++i) {
            if (!composite[i]) {
                f(first_odd + 2 * i);
            }
        }
    }
};

std::vector<std::uint64_t> sieve_segment(std::uint64_t lo, std::uint64_t hi,
                                         std::span<const std::uint64_t> odd_base) {
    std::vector<std::uint64_t> out;
    if (lo <= 2 && hi > 2) {
        out.push_back(2);
    }
    OddWindow window(lo, hi, odd_base);
    window.for_each_prime([&](std::uint64_t p) { out.push_back(p); });
    return out;
}

}  // namespace

std::uint64_t max_sieve_limit() {
    if (const char* env = std::getenv("PSL_MAX_SIEVE"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != nullptr && *end == '\0' && v >= 2) {
            return v;
        }
    }
    return kDefaultMaxSieve;
}

PrimeTable PrimeTable::sieve(std::uint64_t limit, const SieveOptions& options) {
    if (limit < 2) {
        throw invalid_argument("sieve limit must be at least 2");
    }
    const std::uint64_t cap = options.max_limit != 0 ? options.max_limit : max_sieve_limit();
    if (limit > cap) {
        throw capacity_error("sieve limit " + std::to_string(limit) + " exceeds cap " +
                             std::to_string(cap));
    }
    const std::uint64_t segment = std::max<std::uint64_t>(options.segment_size, 64);
    const auto base = small_odd_primes(isqrt(limit));

    PrimeTable table;
    table.limit_ = limit;
    table.segment_size_ = segment;

    const std::uint64_t end = limit + 1;
    const std::uint64_t segments = (end + segment - 1) / segment;
    const unsigned workers = std::max(1u, options.threads);

    // Segments are sieved in rounds of `workers`, then appended in index order.
    std::vector<std::vector<std::uint64_t>> round(workers);
    for (std::uint64_t first = 0; first < segments; first += workers) {
        const auto count = static_cast<unsigned>(std::min<std::uint64_t>(workers, segments - first));
        auto run = [&](unsigned slot) {
            const std::uint64_t lo = (first + slot) * segment;
            const std::uint64_t hi = std::min(end, lo + segment);
            round[slot] = sieve_segment(lo, hi, base);
        };
        if (count == 1) {
            run(0);
        } else {
            std::vector<std::jthread> pool;
            pool.reserve(count);
            for (unsigned slot = 0; slot < count; ++slot) {
                pool.emplace_back(run, slot);
            }
        }
        for (unsigned slot = 0; slot < count; ++slot) {
            table.primes_.insert(table.primes_.end(), round[slot].begin(), round[slot].end());
            round[slot].clear();
            round[slot].shrink_to_fit();
        }
    }
    return table;
}

std::uint64_t PrimeTable::nth(std::size_t n) const {
    if (n == 0) {
        throw invalid_argument("prime index starts at 1");
    }
    if (n > primes_.size()) {
        throw insufficient_data("p_" + std::to_string(n) + " is beyond the table (limit " +
                                std::to_string(limit_) + ")");
    }
    return primes_[n - 1];
}

std::size_t PrimeTable::pi(std::uint64_t x) const {
    if (x > limit_) {
        throw insufficient_data("pi(" + std::to_string(x) + ") is beyond the table limit " +
                                std::to_string(limit_));
    }
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) -
                                    primes_.begin());
}

bool PrimeTable::contains(std::uint64_t x) const {
    if (x > limit_) {
        throw insufficient_data("membership of " + std::to_string(x) + " is beyond the table");
    }
    return std::binary_search(primes_.begin(), primes_.end(), x);
}

PrimeTable sieve_primes(std::uint64_t limit) { return PrimeTable::sieve(limit); }

PrimeCache::PrimeCache(std::uint64_t initial_limit, SieveOptions options)
    : options_(options),
      table_(std::make_shared<const PrimeTable>(
          PrimeTable::sieve(std::max<std::uint64_t>(initial_limit, 2), options))) {}

std::shared_ptr<const PrimeTable> PrimeCache::table() const {
    std::lock_guard lock(mutex_);
    return table_;
}

void PrimeCache::grow_to(std::uint64_t limit) {
    std::uint64_t next = std::max(limit, 2 * table_->limit());
    const std::uint64_t cap = options_.max_limit != 0 ? options_.max_limit : max_sieve_limit();
    if (limit > cap) {
        throw capacity_error("prime supply would need limit " + std::to_string(limit) +
                             " beyond cap " + std::to_string(cap));
    }
    next = std::min(next, cap);
    table_ = std::make_shared<const PrimeTable>(PrimeTable::sieve(next, options_));
}

std::shared_ptr<const PrimeTable> PrimeCache::ensure_count(std::size_t count) {
    std::lock_guard lock(mutex_);
    if (table_->size() < count) {
        grow_to(nth_prime_upper_bound(count));
    }
    return table_;
}

std::shared_ptr<const PrimeTable> PrimeCache::ensure_limit(std::uint64_t limit) {
    std::lock_guard lock(mutex_);
    if (table_->limit() < limit) {
        grow_to(limit);
    }
    return table_;
}

std::uint64_t PrimeCache::nth_prime(std::size_t n) { return ensure_count(n)->nth(n); }

PrimeCache& PrimeCache::global() {
    static PrimeCache cache;
    return cache;
}

std::uint64_t nth_prime(std::size_t n) {
    if (n == 0) {
        throw invalid_argument("prime index starts at 1");
    }
    return PrimeCache::global().nth_prime(n);
}

std::uint64_t nth_prime_upper_bound(std::size_t n) {
    if (n < 6) {
        return 13;
    }
    const double x = static_cast<double>(n);
    return static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 2;
}

std::uint64_t prime_count_between(std::uint64_t lo, std::uint64_t hi, std::uint64_t reach) {
    if (lo < 2 || lo > hi) {
        throw invalid_argument("prime_count_between requires 2 <= lo <= hi");
    }
    if (hi > reach) {
        throw capacity_error("window end " + std::to_string(hi) + " exceeds reach " +
                             std::to_string(reach));
    }
    if (hi - lo < 2) {
        return 0;
    }
    const auto base_table = PrimeCache::global().ensure_limit(std::max<std::uint64_t>(isqrt(hi), 2));
    const auto all = base_table->primes();
    const std::span<const std::uint64_t> odd_base = all.subspan(1);

    std::uint64_t count = 0;
    const std::uint64_t first = lo + 1;
    for (std::uint64_t seg = first; seg < hi; seg += kDefaultSegmentSize) {
        const std::uint64_t seg_end = std::min(hi, seg + kDefaultSegmentSize);
        if (seg <= 2 && seg_end > 2) {
            ++count;
        }
        OddWindow window(seg, seg_end, odd_base);
        window.for_each_prime([&](std::uint64_t) { ++count; });
    }
    return count;
}

}  // namespace psl
