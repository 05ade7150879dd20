#include "psl/prime_sums.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>

#include "psl/error.hpp"

namespace psl {

SumVariant SumVariant::shifted(std::uint64_t k) {
    if (k == 0) {
        throw invalid_argument("shifted variant needs k >= 1 (k = 0 is the plain sequence)");
    }
    return {SumKind::shifted, k};
}

std::string SumVariant::to_string() const {
    switch (kind) {
        case SumKind::plain:
            return "plain";
        case SumKind::offset:
            return "offset:" + std::to_string(param);
        case SumKind::shifted:
            return "shifted:" + std::to_string(param);
    }
    return "plain";
}

SumVariant SumVariant::parse(std::string_view text) {
    if (text == "plain") {
        return plain();
    }
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw invalid_argument("unknown variant '" + std::string(text) + "'");
    }
    const auto name = text.substr(0, colon);
    const auto arg = text.substr(colon + 1);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
    if (ec != std::errc{} || ptr != arg.data() + arg.size() || arg.empty()) {
        throw invalid_argument("bad variant parameter in '" + std::string(text) + "'");
    }
    if (name == "offset") {
        return offset(value);
    }
    if (name == "shifted") {
        return shifted(value);
    }
    throw invalid_argument("unknown variant '" + std::string(text) + "'");
}

std::size_t primes_needed(SumVariant variant, std::uint64_t n) {
    if (variant.kind == SumKind::shifted) {
        return 2 * n + 1 + variant.param;
    }
    return 2 * n;
}

u128 checked_add(u128 a, u128 b) {
    if (a > kU127Max || b > kU127Max - a) {
        throw capacity_error("prime-sum accumulator would exceed 2^127 - 1");
    }
    return a + b;
}

SumTable::SumTable(std::shared_ptr<const PrimeTable> table, std::size_t count)
    : table_(std::move(table)) {
    if (table_->size() < count) {
        throw insufficient_data("prime table holds " + std::to_string(table_->size()) +
                                " primes, " + std::to_string(count) + " requested");
    }
    prefix_.resize(count + 1);
    prefix_[0] = 0;
    const auto primes = table_->primes();
    for (std::size_t i = 0; i < count; ++i) {
        prefix_[i + 1] = checked_add(prefix_[i], primes[i]);
    }
}

SumTable SumTable::first_primes(std::size_t count) {
    return SumTable(PrimeCache::global().ensure_count(count), count);
}

std::uint64_t SumTable::prime(std::size_t i) const {
    if (i == 0 || i > prime_count()) {
        throw insufficient_data("p_" + std::to_string(i) + " is outside the sum table");
    }
    return table_->primes()[i - 1];
}

u128 SumTable::s_prime(std::size_t n) const {
    if (n > prime_count()) {
        throw insufficient_data("S'_" + std::to_string(n) + " is outside the sum table");
    }
    return prefix_[n];
}

u128 SumTable::s(std::size_t n) const { return s_prime(2 * n); }

u128 SumTable::term(SumVariant variant, std::uint64_t n) const {
    switch (variant.kind) {
        case SumKind::plain:
            return s(n);
        case SumKind::offset:
            return checked_add(s(n), 2 * static_cast<u128>(variant.param));
        case SumKind::shifted:
            return s_prime(2 * n + 1 + variant.param) - s_prime(variant.param);
    }
    return 0;
}

std::shared_ptr<const SumTable> shared_sums(std::size_t prime_count) {
    static std::mutex mutex;
    static std::shared_ptr<const SumTable> current;
    std::lock_guard lock(mutex);
    if (!current || current->prime_count() < prime_count) {
        const std::size_t want =
            std::max<std::size_t>(prime_count, current ? 2 * current->prime_count() : 4096);
        current = std::make_shared<const SumTable>(PrimeCache::global().ensure_count(want), want);
    }
    return current;
}

u128 s_prime(std::uint64_t n) {
    if (n == 0) {
        throw invalid_argument("S'_n is defined for n >= 1");
    }
    const auto table = PrimeCache::global().ensure_count(n);
    u128 acc = 0;
    for (std::uint64_t p : table->primes().first(n)) {
        acc = checked_add(acc, p);
    }
    return acc;
}

u128 s(std::uint64_t n) {
    if (n == 0) {
        throw invalid_argument("S_n is defined for n >= 1");
    }
    return s_prime(2 * n);
}

SumStream::SumStream(SumVariant variant, std::shared_ptr<const PrimeTable> table)
    : table_(std::move(table)) {
    state_.variant = variant;
}

SumStream::SumStream(SumVariant variant, std::shared_ptr<const PrimeTable> table,
                     std::uint64_t index, u128 accumulator)
    : table_(std::move(table)) {
    state_.variant = variant;
    state_.index = index;
    state_.accumulator = accumulator;
    if (index > 0) {
        const std::size_t top = primes_needed(variant, index);
        state_.last_primes = {prime_at(top - 1), prime_at(top)};
    }
}

std::uint64_t SumStream::prime_at(std::size_t i) const {
    if (i == 0 || i > table_->size()) {
        throw insufficient_data("prime supply exhausted at p_" + std::to_string(i));
    }
    return table_->primes()[i - 1];
}

std::pair<std::uint64_t, u128> SumStream::next() {
    const std::uint64_t n = state_.index + 1;
    const std::size_t top = primes_needed(state_.variant, n);
    const std::uint64_t a = prime_at(top - 1);
    const std::uint64_t b = prime_at(top);
    u128 acc = state_.accumulator;
    if (n == 1) {
        switch (state_.variant.kind) {
            case SumKind::plain:
                acc = 0;
                break;
            case SumKind::offset:
                acc = 2 * static_cast<u128>(state_.variant.param);
                break;
            case SumKind::shifted:
                acc = prime_at(1 + state_.variant.param);  // the extra odd term
                break;
        }
    }
    acc = checked_add(checked_add(acc, a), b);
    state_.index = n;
    state_.accumulator = acc;
    state_.last_primes = {a, b};
    return {n, acc};
}

std::vector<std::pair<std::uint64_t, u128>> stream(SumVariant variant, std::uint64_t n_max) {
    if (n_max == 0) {
        throw invalid_argument("stream needs n_max >= 1");
    }
    SumStream cursor(variant, PrimeCache::global().ensure_count(primes_needed(variant, n_max)));
    std::vector<std::pair<std::uint64_t, u128>> out;
    out.reserve(n_max);
    for (std::uint64_t i = 0; i < n_max; ++i) {
        out.push_back(cursor.next());
    }
    return out;
}

}  // namespace psl
