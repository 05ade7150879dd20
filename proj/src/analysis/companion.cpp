#include <cmath>
#include <numeric>

#include "psl/analysis.hpp"
#include "psl/error.hpp"
#include "psl/primality.hpp"

namespace psl {

CompanionPoint companion_b(const SequenceSpec& sequence, std::uint64_t n) {
    if (n < 2) {
        throw domain_error("companion sequences are evaluated for n >= 2");
    }
    CompanionPoint point;
    point.n = n;
    switch (sequence.kind) {
        case SequenceKind::naturals: {
            point.a_n = n;
            point.pi_restricted = PrimeCache::global().ensure_limit(n)->pi(n);
            break;
        }
        case SequenceKind::primes: {
            point.a_n = nth_prime(n);
            point.pi_restricted = n;
            break;
        }
        case SequenceKind::arithmetic: {
            if (sequence.d == 0 || sequence.a == 0 || std::gcd(sequence.a, sequence.d) != 1) {
                throw invalid_argument("arithmetic progression needs a, d >= 1 with gcd(a, d) = 1");
            }
            const std::uint64_t last = sequence.a + (n - 1) * sequence.d;
            const auto table = PrimeCache::global().ensure_limit(last);
            std::uint64_t count = 0;
            for (std::uint64_t v = sequence.a; v <= last; v += sequence.d) {
                count += table->contains(v) ? 1 : 0;
            }
            point.a_n = last;
            point.pi_restricted = count;
            break;
        }
        case SequenceKind::prime_sums: {
            const auto result = scan(SumVariant::plain(), n);
            point.a_n = result.checkpoint.accumulator;
            point.pi_restricted = result.hits.size();
            break;
        }
    }
    const double a = to_double(point.a_n);
    const double log_a = std::log(a);
    point.b_n = log_a / a * static_cast<double>(point.pi_restricted);
    point.c_n = a / (std::log(static_cast<double>(n)) * log_a);
    return point;
}

std::uint64_t euler_phi(std::uint64_t d) {
    if (d == 0) {
        throw invalid_argument("euler_phi needs d >= 1");
    }
    std::uint64_t result = d;
    std::uint64_t rest = d;
    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(d))) + 1;
    const auto table = PrimeCache::global().ensure_limit(std::max<std::uint64_t>(root, 2));
    for (std::uint64_t p : table->primes()) {
        if (p * p > rest) {
            break;
        }
        if (rest % p == 0) {
            while (rest % p == 0) {
                rest /= p;
            }
            result -= result / p;
        }
    }
    if (rest > 1) {
        result -= result / rest;
    }
    return result;
}

double omega_ad(std::uint64_t a, std::uint64_t d, double x) {
    if (d == 0 || std::gcd(a, d) != 1) {
        throw invalid_argument("omega_ad needs gcd(a, d) = 1");
    }
    if (!(x > 1)) {
        throw domain_error("omega_ad needs x > 1");
    }
    return static_cast<double>(d) * x / (static_cast<double>(euler_phi(d)) * std::log(x));
}

double omega_34(double x) {
    if (!(x > std::exp(1.0))) {
        throw domain_error("omega_34 needs x > e");
    }
    const double scale = std::exp(kEulerGamma) / (2 * std::log(2.0));
    const double lx = std::log(x);
    const double llx = std::log(lx);
    return scale * (lx + llx + llx * llx / 2);
}

}  // namespace psl
