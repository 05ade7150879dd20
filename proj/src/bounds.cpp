#include "psl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "psl/analysis.hpp"
#include "psl/error.hpp"
#include "psl/prime_sums.hpp"

namespace psl {

namespace {

constexpr std::uint64_t kRefinedUpperFrom = 688383;
constexpr std::uint64_t kRefinedRatioUpperFrom = 344192;
constexpr std::uint64_t kIndexUpperFrom = 10000;
constexpr std::uint64_t kGrowthFrom = 252028;
constexpr std::uint64_t kMkBelowVFrom = 4000000;
constexpr std::uint64_t kPrimePiFrom = 10000;
constexpr std::uint64_t kNOverLogFrom = 100000;
constexpr std::uint64_t kRootFloorFrom = 4000000;
constexpr std::uint64_t kGeoMeanFrom = 100000;

void require(std::uint64_t n, std::uint64_t from, const char* rule) {
    if (n < from) {
        throw domain_error(std::string(rule) + " is stated for n >= " + std::to_string(from) +
                           ", got " + std::to_string(n));
    }
}

double ulp(double x) {
    x = std::abs(x);
    return std::nextafter(x, std::numeric_limits<double>::infinity()) - x;
}

BoundCheck gate(BoundCheck c, bool applies, std::uint64_t from) {
    if (!applies) {
        c.status = BoundStatus::not_applicable;
        c.note = "stated from " + std::to_string(from);
    }
    return c;
}

BoundCheck skipped(std::string name, std::uint64_t n, std::string note) {
    BoundCheck c;
    c.name = std::move(name);
    c.n_or_k = n;
    c.status = BoundStatus::not_applicable;
    c.note = std::move(note);
    return c;
}

int severity(BoundStatus s) {
    switch (s) {
        case BoundStatus::violated:
            return 3;
        case BoundStatus::inconclusive:
            return 2;
        case BoundStatus::holds:
            return 1;
        default:
            return 0;
    }
}

// Worst status wins; lhs/rhs/margin come from the smallest applicable margin.
BoundCheck combine(std::string name, std::uint64_t n, const std::vector<BoundCheck>& parts) {
    const BoundCheck* tight = nullptr;
    std::string skipped_forms;
    for (const auto& p : parts) {
        if (p.status == BoundStatus::not_applicable) {
            skipped_forms += (skipped_forms.empty() ? "" : ", ") + p.name;
            continue;
        }
        if (!tight || severity(p.status) > severity(tight->status) ||
            (severity(p.status) == severity(tight->status) && p.margin < tight->margin)) {
            tight = &p;
        }
    }
    if (!tight) {
        return skipped(std::move(name), n, "no form applies");
    }
    BoundCheck c = *tight;
    c.note = "tightest: " + tight->name;
    if (!skipped_forms.empty()) {
        c.note += "; not applicable: " + skipped_forms;
    }
    c.name = std::move(name);
    c.holds = std::all_of(parts.begin(), parts.end(), [](const BoundCheck& p) {
        return p.status == BoundStatus::not_applicable || p.holds;
    });
    return c;
}

std::shared_ptr<const SumTable> sums(std::size_t primes) { return shared_sums(primes); }

double log_log(double x) { return std::log(std::log(x)); }

BoundCheck dusart_lower(std::uint64_t n) {
    const double x = static_cast<double>(n);
    return compare_real("dusart-lower", n, x * (std::log(x) + log_log(x) - 1),
                      static_cast<double>(sums(n)->prime(n)), true);
}

BoundCheck dusart_upper(std::uint64_t n) {
    const double x = static_cast<double>(n);
    return compare_real("dusart-upper", n, static_cast<double>(sums(n)->prime(n)),
                      x * (std::log(x) + log_log(x)), true);
}

double refined_form(double x, double c) {
    const double l = std::log(x);
    const double ll = std::log(l);
    return x * (l + ll - 1 + (ll - c) / l);
}

BoundCheck dusart_refined_lower(std::uint64_t n) {
    return compare_real("dusart-refined-lower", n, refined_form(static_cast<double>(n), 2.2),
                      static_cast<double>(sums(n)->prime(n)), false);
}

BoundCheck dusart_refined_upper(std::uint64_t n) {
    return compare_real("dusart-refined-upper", n, static_cast<double>(sums(n)->prime(n)),
                      refined_form(static_cast<double>(n), 2.0), false);
}

BoundCheck sum_ratio_lower(std::uint64_t n) {
    const double x = static_cast<double>(n);
    return compare_real("sum-ratio-lower", n, 2 * x * x * std::log(x), to_double(sums(2 * n)->s(n)),
                      false);
}

BoundCheck sum_ratio_upper(std::uint64_t n) {
    const double x = static_cast<double>(n);
    const double l = std::log(x);
    const double bound = 2 * x * x * l * (1 + (std::log(2.0) + log_log(2 * x)) / l);
    return compare_real("sum-ratio-upper", n, to_double(sums(2 * n)->s(n)), bound, true);
}

BoundCheck refined_ratio_lower(std::uint64_t n) {
    const double x = static_cast<double>(n);
    const double l = std::log(x);
    const double ll = std::log(l);
    const double bound = 2 * x * x * l * (1 + (ll - 1) / l + (ll - 2.2) / (l * l));
    return compare_real("refined-ratio-lower", n, bound, to_double(sums(2 * n)->s(n)), false);
}

BoundCheck refined_ratio_upper(std::uint64_t n) {
    const double x = static_cast<double>(n);
    const double l = std::log(x);
    const double l2 = std::log(2 * x);
    const double ll2 = std::log(l2);
    const double bound =
        2 * x * x * l * (1 + (ll2 + std::log(2.0) - 1) / l + (ll2 - 2) / (l * l2));
    return compare_real("refined-ratio-upper", n, to_double(sums(2 * n)->s(n)), bound, false);
}

std::uint64_t isqrt(u128 v) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
    while (static_cast<u128>(r) * r > v) {
        --r;
    }
    while (static_cast<u128>(r + 1) * (r + 1) <= v) {
        ++r;
    }
    return r;
}

struct Rule {
    const char* name;
    std::uint64_t from;
    BoundCheck (*eval)(std::uint64_t);
};

const std::vector<Rule>& rules() {
    static const std::vector<Rule> table = {
        {"mandl", 9, check_mandl},
        {"mandl-doubled", 5, check_mandl_doubled},
        {"robin", 2, check_robin},
        {"hassani", 10, check_hassani},
        {"sum-ratio", 3, check_prop312},
        {"sun-lower", 3, check_sun_lower},
        {"dusart-lower", 2, dusart_lower},
        {"dusart-upper", 6, dusart_upper},
        {"dusart-refined-lower", 3, dusart_refined_lower},
        {"dusart-refined-upper", kRefinedUpperFrom, dusart_refined_upper},
        {"refined-ratio", 3, check_prop315},
    };
    return table;
}

}  // namespace

BoundCheck compare_real(std::string name, std::uint64_t n, double lhs, double rhs, bool strict) {
    BoundCheck c;
    c.name = std::move(name);
    c.n_or_k = n;
    c.lhs = lhs;
    c.rhs = rhs;
    c.strict = strict;
    c.margin = rhs - lhs;
    c.holds = strict ? c.margin > 0 : c.margin >= 0;
    const double guard = kUlpGuard * ulp(std::max(std::abs(lhs), std::abs(rhs)));
    if (c.margin > guard) {
        c.status = BoundStatus::holds;
    } else if (c.margin < -guard) {
        c.status = BoundStatus::violated;
    } else {
        c.status = BoundStatus::inconclusive;
        c.note = "margin within " + std::to_string(kUlpGuard) + " ulps";
    }
    return c;
}

BoundCheck compare_exact(std::string name, std::uint64_t n, u128 lhs, u128 rhs, bool strict) {
    BoundCheck c;
    c.name = std::move(name);
    c.n_or_k = n;
    c.lhs = to_double(lhs);
    c.rhs = to_double(rhs);
    c.strict = strict;
    c.exact = true;
    c.margin = rhs >= lhs ? to_double(rhs - lhs) : -to_double(lhs - rhs);
    c.holds = strict ? lhs < rhs : lhs <= rhs;
    c.status = c.holds ? BoundStatus::holds : BoundStatus::violated;
    return c;
}

std::string to_string(BoundStatus status) {
    switch (status) {
        case BoundStatus::holds:
            return "holds";
        case BoundStatus::violated:
            return "violated";
        case BoundStatus::inconclusive:
            return "inconclusive";
        case BoundStatus::not_applicable:
            return "not-applicable";
        case BoundStatus::informational:
            return "informational";
    }
    return "not-applicable";
}

BoundCheck check_mandl(std::uint64_t n) {
    require(n, 9, "mandl");
    const auto t = sums(n);
    return compare_exact("mandl", n, 2 * t->s_prime(n), static_cast<u128>(n) * t->prime(n), true);
}

BoundCheck check_mandl_doubled(std::uint64_t n) {
    require(n, 5, "mandl-doubled");
    const auto t = sums(2 * n);
    return compare_exact("mandl-doubled", n, t->s(n), static_cast<u128>(n) * t->prime(2 * n), true);
}

BoundCheck check_robin(std::uint64_t n) {
    require(n, 2, "robin");
    const auto t = sums(n);
    return compare_exact("robin", n, static_cast<u128>(n) * t->prime(n / 2), t->s_prime(n), false);
}

BoundCheck check_hassani(std::uint64_t n) {
    require(n, 10, "hassani");
    const auto t = sums(n);
    const u128 nn = static_cast<u128>(n) * n;
    const u128 npn = static_cast<u128>(n) * t->prime(n);
    // (n/2) p_n - S'_n > 0.01659 n^2, cleared of fractions by 10^5.
    BoundCheck c = compare_exact("hassani", n, 100000 * t->s_prime(n) + 1659 * nn, 50000 * npn, true);
    c.lhs = 0.01659 * to_double(nn);
    c.rhs = 0.5 * to_double(npn) - to_double(t->s_prime(n));
    c.margin = c.rhs - c.lhs;
    return c;
}

BoundCheck check_prop312(std::uint64_t n) {
    require(n, 3, "sum-ratio");
    return combine("sum-ratio", n, {sum_ratio_lower(n), sum_ratio_upper(n)});
}

BoundCheck check_sun_lower(std::uint64_t n) {
    require(n, 3, "sun-lower");
    const double x = static_cast<double>(n);
    const double bound = 2 + 2 * x * x * (std::log(x) + std::log(2.0) - 0.5);
    return compare_real("sun-lower", n, bound, to_double(sums(2 * n)->s(n)), true);
}

std::vector<BoundCheck> check_dusart_forms(std::uint64_t n) {
    std::vector<BoundCheck> out;
    for (const auto& r : rules()) {
        const std::string name = r.name;
        if (name.rfind("dusart", 0) != 0) {
            continue;
        }
        out.push_back(n >= r.from ? r.eval(n)
                                  : skipped(name, n, "stated from " + std::to_string(r.from)));
    }
    return out;
}

BoundCheck check_dusart_pn(std::uint64_t n) {
    if (n == 0) {
        throw domain_error("p_n needs n >= 1");
    }
    return combine("dusart", n, check_dusart_forms(n));
}

BoundCheck check_dusart_interval(std::uint64_t n) {
    require(n, kRefinedUpperFrom, "dusart-interval");
    const double x = static_cast<double>(n);
    const double lo = refined_form(x, 2.2);
    const double hi = refined_form(x, 2.0);
    const auto first = static_cast<std::uint64_t>(std::ceil(lo));
    const auto last = static_cast<std::uint64_t>(std::floor(hi));
    const std::uint64_t count = last >= first ? prime_count_between(first - 1, last + 1) : 0;
    BoundCheck c = compare_exact("dusart-interval", n, 0, count, true);
    c.note = "primes in [" + std::to_string(first) + ", " + std::to_string(last) +
             "]: " + std::to_string(count) + "; length " + std::to_string(hi - lo) +
             " vs 0.2n/ln n = " + std::to_string(0.2 * x / std::log(x));
    return c;
}

std::vector<BoundCheck> check_prop315_forms(std::uint64_t n) {
    require(n, 3, "refined-ratio");
    std::vector<BoundCheck> out{refined_ratio_lower(n)};
    out.push_back(gate(refined_ratio_upper(n), n >= kRefinedRatioUpperFrom, kRefinedRatioUpperFrom));
    return out;
}

BoundCheck check_prop315(std::uint64_t n) {
    return combine("refined-ratio", n, check_prop315_forms(n));
}

std::vector<BoundCheck> check_hit_conjectures(const PrimeHit& hit) {
    if (hit.k == 0 || hit.m == 0) {
        throw invalid_argument("a hit needs k, m >= 1");
    }
    const std::uint64_t k = hit.k;
    const std::uint64_t m = hit.m;
    const double kk = static_cast<double>(k);
    const double mm = static_cast<double>(m);
    const double q = to_double(hit.q);
    std::vector<BoundCheck> out;

    out.push_back(compare_exact("hit-index-lower", k, floor_klogk(k) + 1, m, false));

    if (k >= 2) {
        const double lk = std::log(kk);
        out.push_back(gate(compare_exact("hit-index-upper", k, m, guarded_floor(1.4 * kk * lk), false),
                           k >= kIndexUpperFrom, kIndexUpperFrom));

        const double lower = 2 * kk * kk * lk * lk * (lk + std::log(lk));
        out.push_back(compare_real("hit-lower", k, lower, q, true));

        if (m >= 2) {
            const double lm = std::log(mm);
            const double growth = 2 * mm * mm * std::sqrt(mm) * lm / std::sqrt(kk * lk);
            out.push_back(gate(compare_real("hit-growth", k, growth, q, true), k >= kGrowthFrom,
                               kGrowthFrom));
        }

        BoundCheck vs_prime =
            compare_real("hit-vs-prime", k, 2 * kk * static_cast<double>(nth_prime(k)) * lk * lk, q, true);
        vs_prime.status = BoundStatus::informational;
        vs_prime.note = "threshold unspecified; see onset report";
        out.push_back(vs_prime);

        const double x = std::log(2 * std::log(2 * kk)) / lk;
        const double upper =
            2 * kk * kk * lk * lk * std::pow(1 + x, 5) * (lk + std::log(lk) + 2 * std::log1p(x));
        out.push_back(combine("hit-interval", k,
                              {compare_real("hit-interval-lower", k, lower, q, false),
                               compare_real("hit-interval-upper", k, q, upper, false)}));
    }

    if (k >= 3 && m >= 2) {
        try {
            const double mk = solve_mk(k, hit.q).m_k;
            out.push_back(gate(compare_real("mk-below-v", k, mk, q / (2 * mm * mm * std::log(mm)), true),
                               k >= kMkBelowVFrom, kMkBelowVFrom));
        } catch (const no_root_error& e) {
            out.push_back(skipped("mk-below-v", k, e.what()));
        }
    }
    return out;
}

std::vector<BoundCheck> check_pi_conjectures(const PiCheckpointRow& row, const PrimeTable& table) {
    const std::uint64_t n = row.n;
    const std::uint64_t pi = row.pi_n;
    const double x = static_cast<double>(n);
    std::vector<BoundCheck> out;
    if (n < 2) {
        out.push_back(skipped("pi-conjectures", n, "n >= 2 needed"));
        return out;
    }

    out.push_back(gate(compare_exact("pi-below-prime-pi", n, pi, table.pi(n), true), n >= kPrimePiFrom,
                       kPrimePiFrom));
    out.push_back(gate(compare_real("pi-below-n-over-log", n, static_cast<double>(pi), x / std::log(x), true),
                       n >= kNOverLogFrom, kNOverLogFrom));

    if (n >= 10) {
        out.push_back(gate(compare_exact("pi-at-least-k0", n, root_k0(n), pi, false),
                           n >= kRootFloorFrom, kRootFloorFrom));
        const std::uint64_t k1 = root_k1(n);
        out.push_back(gate(compare_exact("pi-at-least-k1", n, k1, pi, false), n >= kRootFloorFrom,
                           kRootFloorFrom));
        const std::uint64_t geo = isqrt(static_cast<u128>(k1) * root_k2(n));
        out.push_back(gate(compare_exact("pi-below-sqrt-k1k2", n, pi, geo, true), n >= kGeoMeanFrom,
                           kGeoMeanFrom));
    }

    BoundCheck band;
    band.name = "chebyshev-band";
    band.n_or_k = n;
    band.lhs = static_cast<double>(pi) * std::log(x) / x;
    band.margin = band.lhs;
    band.holds = band.lhs > 0;
    band.status = BoundStatus::informational;
    band.note = "pi_n ln n / n";
    out.push_back(band);
    return out;
}

std::vector<BoundCheck> check_pi_conjectures(const PiCheckpointRow& row) {
    return check_pi_conjectures(row, *PrimeCache::global().ensure_limit(std::max<std::uint64_t>(row.n, 2)));
}

OnsetReport hit_vs_prime_onset(std::span<const PrimeHit> hits) {
    OnsetReport r;
    bool last_ok = true;
    for (const auto& h : hits) {
        const double kk = static_cast<double>(h.k);
        const double lk = std::log(kk);
        const bool ok = to_double(h.q) > 2 * kk * static_cast<double>(nth_prime(h.k)) * lk * lk;
        ++r.checked;
        if (!ok) {
            ++r.violations;
            r.last_violation = h.k;
        }
        last_ok = ok;
    }
    if (r.checked > 0 && last_ok) {
        r.onset = r.violations == 0 ? hits.front().k : r.last_violation + 1;
    }
    return r;
}

std::vector<std::string> range_rules() {
    std::vector<std::string> out;
    for (const auto& r : rules()) {
        out.emplace_back(r.name);
    }
    return out;
}

RangeScan scan_range(const std::string& rule, std::uint64_t lo, std::uint64_t hi, unsigned threads) {
    const auto it = std::find_if(rules().begin(), rules().end(),
                                 [&](const Rule& r) { return rule == r.name; });
    if (it == rules().end()) {
        throw invalid_argument("unknown rule '" + rule + "'");
    }
    require(lo, it->from, it->name);
    if (hi < lo) {
        throw invalid_argument("empty range");
    }
    sums(2 * hi);

    const unsigned workers = std::max(1u, threads);
    const std::uint64_t span = hi - lo + 1;
    std::vector<RangeScan> parts(workers);
    auto work = [&](unsigned w) {
        RangeScan& part = parts[w];
        part.min_margin = std::numeric_limits<double>::infinity();
        const std::uint64_t a = lo + span * w / workers;
        const std::uint64_t b = lo + span * (w + 1) / workers;
        for (std::uint64_t n = a; n < b; ++n) {
            const BoundCheck c = it->eval(n);
            ++part.checked;
            if (c.status == BoundStatus::violated) {
                part.violations.push_back(n);
            } else if (c.status == BoundStatus::inconclusive) {
                part.inconclusive.push_back(n);
            }
            if (c.margin < part.min_margin) {
                part.min_margin = c.margin;
                part.argmin = n;
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    RangeScan out;
    out.rule = rule;
    out.lo = lo;
    out.hi = hi;
    out.min_margin = std::numeric_limits<double>::infinity();
    for (const auto& p : parts) {
        out.checked += p.checked;
        out.violations.insert(out.violations.end(), p.violations.begin(), p.violations.end());
        out.inconclusive.insert(out.inconclusive.end(), p.inconclusive.begin(), p.inconclusive.end());
        if (p.checked > 0 && p.min_margin < out.min_margin) {
            out.min_margin = p.min_margin;
            out.argmin = p.argmin;
        }
    }
    return out;
}

}  // namespace psl
