#include <cmath>

#include "psl/analysis.hpp"
#include "psl/error.hpp"

namespace psl {
namespace {

void require_n(std::uint64_t n) {
    if (n < 10) {
        throw domain_error("root equations are evaluated for n >= 10");
    }
}

std::uint64_t floor_root(double c) { return guarded_floor(solve_u_log_u(c)); }

}  // namespace

double solve_u_log_u(double c) {
    if (!(c > 0)) {
        throw domain_error("u log u = c needs c > 0");
    }
    // The root exceeds 1; f(u) = u log u - c is convex and increasing there.
    double u = c > std::exp(1.0) ? c / std::log(c) : 1.5;
    for (int i = 0; i < 100; ++i) {
        const double step = (u * std::log(u) - c) / (std::log(u) + 1);
        double next = u - step;
        if (next <= 1) {
            next = 0.5 * (u + 1);
        }
        const double change = std::abs(next - u);
        u = next;
        if (change <= 1e-14 * u) {
            break;
        }
    }
    return u;
}

std::uint64_t root_k0(std::uint64_t n, u128 s_n) {
    require_n(n);
    if (s_n == 0) {
        throw domain_error("root_k0 needs S_n > 0");
    }
    const double x = static_cast<double>(n);
    const double rhs = 2 * x * x * std::sqrt(x) * std::log(x) / to_double(s_n);
    return floor_root(rhs * rhs);
}

std::uint64_t root_k0(std::uint64_t n) {
    require_n(n);
    return root_k0(n, shared_sums(2 * n)->s(n));
}

std::uint64_t root_k1(std::uint64_t n) {
    require_n(n);
    const double x = static_cast<double>(n);
    const double factor = 1 + (std::log(2.0) + std::log(std::log(2 * x))) / std::log(x);
    return floor_root(x / (factor * factor));
}

std::uint64_t root_k2(std::uint64_t n) {
    require_n(n);
    return floor_root(static_cast<double>(n));
}

RootRatios table5_ratios(std::uint64_t k, std::uint64_t k0, std::uint64_t k1, std::uint64_t k2) {
    if (k1 == 0 || k2 == 0) {
        throw domain_error("table5_ratios needs k1 * k2 > 0");
    }
    const double kk = static_cast<double>(k);
    const double geo = std::sqrt(static_cast<double>(k1) * static_cast<double>(k2));
    RootRatios r;
    if (k != 0) {
        r.delta0 = (kk - static_cast<double>(k0)) / kk;
        r.delta1 = (kk - static_cast<double>(k1)) / kk;
        r.delta2 = (kk - static_cast<double>(k2)) / kk;
    }
    r.eta = static_cast<double>(k0) / geo;
    r.xi = kk / geo;
    return r;
}

}  // namespace psl
