#include <cmath>
#include <string>

#include "psl/analysis.hpp"
#include "psl/error.hpp"

namespace psl {

double mk_forward(std::uint64_t k, double m) {
    const double kk = static_cast<double>(k);
    const double lk = std::log(kk);
    return 2 * std::pow(m, 5) * kk * kk * lk * lk * (lk + std::log(lk) + 2 * std::log(m));
}

MkSolution solve_mk(std::uint64_t k, u128 q) {
    if (k < 3) {
        throw domain_error("solve_mk needs k >= 3");
    }
    if (q == 0) {
        throw invalid_argument("solve_mk needs q >= 1");
    }
    const double target = to_double(q);
    const double kk = static_cast<double>(k);
    const double lk = std::log(kk);
    const double scale = 2 * kk * kk * lk * lk;
    const double base = lk + std::log(lk);
    auto g = [&](double m) { return scale * std::pow(m, 5) * (base + 2 * std::log(m)) - target; };
    auto dg = [&](double m) { return scale * std::pow(m, 4) * (5 * (base + 2 * std::log(m)) + 2); };

    double lo = 0.1;
    double hi = 10.0;
    if (!(g(lo) < 0 && g(hi) > 0)) {
        throw no_root_error("M_k equation has no sign change on [0.1, 10] for k = " +
                            std::to_string(k) + ", q = " + to_string(q));
    }
    MkSolution sol;
    sol.k = k;
    sol.q = q;
    // Bisect to a narrow bracket, then Newton inside it.
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0 ? lo : hi) = mid;
        ++sol.iterations;
    }
    double m = 0.5 * (lo + hi);
    for (int i = 0; i < 50; ++i) {
        const double step = g(m) / dg(m);
        const double next = m - step;
        ++sol.iterations;
        if (!(next > lo && next < hi)) {
            break;
        }
        m = next;
        if (std::abs(step) <= 1e-16 * m) {
            break;
        }
    }
    // The root is unique: where base + 2 log M <= 0 g is negative, elsewhere g' > 0.
    if (!(dg(m) > 0)) {
        throw no_root_error("M_k equation is not increasing at the computed root");
    }
    sol.m_k = m;
    sol.residual = std::abs(mk_forward(k, m) - target) / target;
    return sol;
}

std::uint64_t guarded_floor(double x) {
    const double r = std::round(x);
    if (std::abs(x - r) < 1e-9) {
        return static_cast<std::uint64_t>(r);
    }
    return static_cast<std::uint64_t>(std::floor(x));
}

std::uint64_t floor_klogk(std::uint64_t k) {
    const double kk = static_cast<double>(k);
    return guarded_floor(kk * std::log(kk));
}

double mk_upper(std::uint64_t k) {
    if (k < 2) {
        throw domain_error("mk_upper needs k >= 2");
    }
    return t_seq(k);
}

double mk_refined(std::uint64_t k) {
    if (k < 3) {
        throw domain_error("mk_refined needs k >= 3");
    }
    return t_seq(floor_klogk(k));
}

}  // namespace psl
