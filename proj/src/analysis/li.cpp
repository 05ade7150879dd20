#include <cmath>

#include "psl/analysis.hpp"
#include "psl/error.hpp"

namespace psl {
namespace {

double inv_log(double t) { return 1.0 / std::log(t); }

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6 * (fa + 4 * fm + fb);
}

double adaptive(double a, double fa, double b, double fb, double m, double fm, double whole,
                double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = inv_log(lm);
    const double frm = inv_log(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15 * tol) {
        return left + right + delta / 15;
    }
    return adaptive(a, fa, m, fm, lm, flm, left, tol / 2, depth - 1) +
           adaptive(m, fm, b, fb, rm, frm, right, tol / 2, depth - 1);
}

}  // namespace

double li(double x) {
    if (!(x >= 2)) {
        throw domain_error("li(x) is integrated from 2 and needs x >= 2");
    }
    if (x == 2) {
        return 0;
    }
    const double tol = 1e-9 * std::max(1.0, x / std::log(x));
    // Geometric panels keep each Simpson step on a region of similar curvature.
    double sum = 0;
    double a = 2;
    int panels = 0;
    for (double b = 4; a < x; b *= 2) {
        ++panels;
        b = std::min(b, x);
        a = b;
    }
    a = 2;
    for (double b = 4;; b *= 2) {
        const double hi = std::min(b, x);
        const double fa = inv_log(a);
        const double fb = inv_log(hi);
        const double m = 0.5 * (a + hi);
        const double fm = inv_log(m);
        sum += adaptive(a, fa, hi, fb, m, fm, simpson(a, fa, hi, fb, fm), tol / panels, 50);
        if (hi >= x) {
            break;
        }
        a = hi;
    }
    return sum;
}

}  // namespace psl
