#include <cmath>
#include <string>

#include "psl/analysis.hpp"
#include "psl/error.hpp"

namespace psl {
namespace {

const SumTable& sums_for(std::size_t prime_count) {
    // Keep the snapshot alive for the duration of the call chain.
    thread_local std::shared_ptr<const SumTable> held;
    if (!held || held->prime_count() < prime_count) {
        held = shared_sums(prime_count);
    }
    return *held;
}

double as_double(u128 v) { return to_double(v); }

}  // namespace

double t_seq(std::uint64_t n) {
    if (n < 2) {
        throw domain_error("t_n needs n >= 2");
    }
    const double x = static_cast<double>(n);
    return as_double(sums_for(2 * n).s(n)) / (2 * x * x * std::log(x));
}

double v_seq(std::uint64_t n) {
    if (n < 1) {
        throw domain_error("v_n needs n >= 1");
    }
    const double x = static_cast<double>(n);
    return as_double(sums_for(2 * n).s(n)) / (2 * x * x);
}

double tprime_seq(std::uint64_t n) {
    if (n < 3) {
        throw domain_error("t'_n needs n >= 3");
    }
    const double x = static_cast<double>(n);
    return 2 * as_double(sums_for(n).s_prime(n)) / (x * x * std::log(x / 2));
}

double vprime_seq(std::uint64_t n) {
    if (n < 1) {
        throw domain_error("v'_n needs n >= 1");
    }
    const double x = static_cast<double>(n);
    return 2 * as_double(sums_for(n).s_prime(n)) / (x * x);
}

MonotonicityReport monotonicity_scan(MonotoneSequence sequence, std::uint64_t n_max) {
    if (n_max < 10) {
        throw domain_error("monotonicity_scan needs n_max >= 10");
    }
    const bool uses_s = sequence == MonotoneSequence::v || sequence == MonotoneSequence::t;
    const auto table = shared_sums(uses_s ? 2 * n_max : n_max);
    auto value_at = [&](std::uint64_t n) { return uses_s ? table->s(n) : table->s_prime(n); };

    std::uint64_t start = 2;
    if (sequence == MonotoneSequence::vprime) {
        start = 4;
    } else if (sequence == MonotoneSequence::tprime) {
        start = 3;
    }

    MonotonicityReport report;
    report.sequence = sequence;
    report.n_max = n_max;
    for (std::uint64_t n = start; n < n_max; ++n) {
        const u128 a = value_at(n);
        const u128 b = value_at(n + 1);
        const u128 n2 = static_cast<u128>(n) * n;
        const u128 m2 = static_cast<u128>(n + 1) * (n + 1);
        bool exception = false;
        switch (sequence) {
            case MonotoneSequence::v:
            case MonotoneSequence::vprime:
                // a / n^2 < b / (n+1)^2 exactly in integers.
                exception = !(a * m2 < b * n2);
                break;
            case MonotoneSequence::t: {
                const long double lhs = static_cast<long double>(b) * static_cast<long double>(n2) *
                                        std::log(static_cast<long double>(n));
                const long double rhs = static_cast<long double>(a) * static_cast<long double>(m2) *
                                        std::log(static_cast<long double>(n + 1));
                exception = lhs > rhs;
                break;
            }
            case MonotoneSequence::tprime: {
                const long double lhs = static_cast<long double>(b) * static_cast<long double>(n2) *
                                        std::log(static_cast<long double>(n) / 2);
                const long double rhs = static_cast<long double>(a) * static_cast<long double>(m2) *
                                        std::log(static_cast<long double>(n + 1) / 2);
                exception = lhs > rhs;
                break;
            }
        }
        if (exception) {
            report.exception_indices.push_back(n);
            report.max_exception = n;
        }
    }
    return report;
}

QDiagnostics q_diagnostics(const PrimeHit& hit, std::uint64_t p_k) {
    if (hit.k < 3) {
        throw domain_error("Q diagnostics need k >= 3");
    }
    if (hit.m < 2) {
        throw domain_error("Q diagnostics need m >= 2");
    }
    const double k = static_cast<double>(hit.k);
    const double m = static_cast<double>(hit.m);
    const double q = to_double(hit.q);
    const double lk = std::log(k);
    const double llk = std::log(lk);
    const double k2l2 = 2 * k * k * lk * lk;
    const double corollary_bound = k2l2 * (lk + llk);

    QDiagnostics d;
    d.q_main = (q - k2l2 * lk) / (k2l2 * llk);
    d.q_prime = (q - corollary_bound) / (k2l2 * llk);
    const double pk = static_cast<double>(p_k);
    d.q_second = (q - 2 * pk * pk * lk) / (k2l2 * llk);
    if (hit.k >= 16) {
        d.q_third = (q - corollary_bound) / (k2l2 * std::log(llk));
    }
    d.v = q / (2 * m * m * std::log(m));
    d.l = q / corollary_bound;
    d.ratio = q / (k2l2 * lk);
    return d;
}

QDiagnostics q_diagnostics(const PrimeHit& hit) { return q_diagnostics(hit, nth_prime(hit.k)); }

}  // namespace psl
