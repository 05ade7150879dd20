#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "psl/analysis.hpp"
#include "psl/error.hpp"
#include "psl/report.hpp"

namespace psl {
namespace {

using Lines = std::vector<SuiteLine>;

std::string join(const std::vector<std::uint64_t>& v, std::size_t limit = 12) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size() && i < limit; ++i) {
        os << (i ? ", " : "") << v[i];
    }
    if (v.size() > limit) {
        os << ", ... (" << v.size() << " total)";
    }
    return os.str();
}

void add(Lines& out, BoundStatus status, std::string text) { out.push_back({status, std::move(text)}); }

// pi_n for every n in [0, n_max] from hits sorted by m.
std::vector<std::uint32_t> pi_prefix(const HitData& data, std::uint64_t n_max) {
    std::vector<std::uint32_t> pi(n_max + 1, 0);
    std::size_t next = 0;
    std::uint32_t count = 0;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        while (next < data.hits.size() && data.hits[next].m <= n) {
            ++count;
            ++next;
        }
        pi[n] = count;
    }
    return pi;
}

void require_hits(const HitData& data, std::uint64_t n_max) {
    if (data.scanned_to < n_max) {
        throw insufficient_data("suite needs a scan to " + std::to_string(n_max) + ", have " +
                                std::to_string(data.scanned_to));
    }
}

void monotone(Lines& out, MonotoneSequence seq, const char* label, std::uint64_t start,
              std::uint64_t last_allowed, std::uint64_t n_max) {
    if (n_max < 10) {
        add(out, BoundStatus::not_applicable, std::string(label) + ": needs --max-n >= 10");
        return;
    }
    const auto r = monotonicity_scan(seq, n_max);
    std::ostringstream os;
    os << label << " on [" << start << ", " << n_max << "]: " << r.exception_indices.size()
       << " exceptions";
    if (!r.exception_indices.empty()) {
        os << ", max " << r.max_exception << " [" << join(r.exception_indices) << "]";
    }
    const bool ok = r.exception_indices.empty() || r.max_exception <= last_allowed;
    add(out, ok ? BoundStatus::holds : BoundStatus::violated, os.str());
}

// Counts a per-n or per-hit rule over a range and summarizes it in one line.
struct Tally {
    explicit Tally(std::string name) : label(std::move(name)) {}

    std::string label;
    std::uint64_t checked = 0;
    std::vector<std::uint64_t> violated;
    std::vector<std::uint64_t> inconclusive;
    double min_margin = std::numeric_limits<double>::infinity();
    std::uint64_t argmin = 0;

    void take(const BoundCheck& c) {
        ++checked;
        if (c.status == BoundStatus::violated) {
            violated.push_back(c.n_or_k);
        } else if (c.status == BoundStatus::inconclusive) {
            inconclusive.push_back(c.n_or_k);
        }
        if (c.margin < min_margin) {
            min_margin = c.margin;
            argmin = c.n_or_k;
        }
    }

    void emit(Lines& out, const std::string& range) const {
        std::ostringstream os;
        os << label << ' ' << range << ": " << checked << " checked";
        if (checked == 0) {
            add(out, BoundStatus::not_applicable, os.str() + " (gate not reached)");
            return;
        }
        os << ", " << violated.size() << " violated, " << inconclusive.size()
           << " inconclusive, min margin " << format_sig(min_margin) << " at " << argmin;
        if (!violated.empty()) {
            os << " [" << join(violated) << "]";
        }
        BoundStatus s = BoundStatus::holds;
        if (!violated.empty()) {
            s = BoundStatus::violated;
        } else if (!inconclusive.empty()) {
            s = BoundStatus::inconclusive;
        }
        add(out, s, os.str());
    }
};

void ranges(Lines& out, std::uint64_t n_max, unsigned threads) {
    static const std::vector<std::pair<std::string, std::uint64_t>> starts = {
        {"mandl", 9},         {"mandl-doubled", 5},        {"robin", 2},
        {"hassani", 10},      {"sum-ratio", 3},            {"sun-lower", 3},
        {"dusart-lower", 2},  {"dusart-upper", 6},         {"dusart-refined-lower", 3},
        {"refined-ratio", 3}, {"dusart-refined-upper", 688383},
    };
    for (const auto& [rule, from] : starts) {
        if (n_max < from) {
            add(out, BoundStatus::not_applicable, rule + ": stated from " + std::to_string(from));
            continue;
        }
        const auto r = scan_range(rule, from, n_max, threads);
        std::ostringstream os;
        os << rule << " on [" << from << ", " << n_max << "]: " << r.checked << " checked, "
           << r.violations.size() << " violated, " << r.inconclusive.size()
           << " inconclusive, min margin " << format_sig(r.min_margin) << " at " << r.argmin;
        BoundStatus s = BoundStatus::holds;
        if (!r.violations.empty()) {
            s = BoundStatus::violated;
            os << " [" << join(r.violations) << "]";
        } else if (!r.inconclusive.empty()) {
            s = BoundStatus::inconclusive;
        }
        add(out, s, os.str());
    }
}

void interval(Lines& out, std::uint64_t n_max) {
    std::vector<std::uint64_t> points = {688383, 1000000};
    if (n_max >= 688383 && std::find(points.begin(), points.end(), n_max) == points.end()) {
        points.push_back(n_max);
    }
    for (std::uint64_t n : points) {
        const auto c = check_dusart_interval(n);
        add(out, c.status, "dusart-interval at " + std::to_string(n) + ": " + c.note);
    }
}

void hit_rules(Lines& out, const HitData& data, const std::vector<std::string>& names) {
    std::vector<Tally> tallies;
    for (const auto& n : names) {
        tallies.push_back(Tally{n});
    }
    std::uint64_t first_k = 0;
    std::uint64_t last_k = 0;
    for (const auto& h : data.hits) {
        first_k = first_k ? first_k : h.k;
        last_k = h.k;
        for (const auto& c : check_hit_conjectures(h)) {
            if (c.status == BoundStatus::not_applicable || c.status == BoundStatus::informational) {
                continue;
            }
            for (auto& t : tallies) {
                if (t.label == c.name) {
                    t.take(c);
                }
            }
        }
    }
    const std::string range = "over k in [" + std::to_string(first_k) + ", " + std::to_string(last_k) + "]";
    for (const auto& t : tallies) {
        t.emit(out, range);
    }
}

void pi_rules(Lines& out, std::uint64_t n_max, const HitData& data, bool prime_pi, bool n_over_log) {
    require_hits(data, n_max);
    const auto pi = pi_prefix(data, n_max);
    const auto table = PrimeCache::global().ensure_limit(std::max<std::uint64_t>(n_max, 2));
    Tally below_prime_pi{"pi-below-prime-pi"};
    Tally below_n_over_log{"pi-below-n-over-log"};
    const auto primes = table->primes();
    std::size_t count = 0;
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        while (count < primes.size() && primes[count] <= n) {
            ++count;
        }
        if (prime_pi && n >= 10000) {
            below_prime_pi.take(compare_exact("pi-below-prime-pi", n, pi[n], count, true));
        }
        if (n_over_log && n >= 100000) {
            const double x = static_cast<double>(n);
            below_n_over_log.take(compare_real("pi-below-n-over-log", n, pi[n], x / std::log(x), true));
        }
    }
    if (prime_pi) {
        below_prime_pi.emit(out, "on [10000, " + std::to_string(n_max) + "]");
        if (n_max >= 2) {
            add(out, BoundStatus::informational,
                "pi_" + std::to_string(n_max) + " = " + std::to_string(pi[n_max]) + " vs pi(" +
                    std::to_string(n_max) + ") = " + std::to_string(table->pi(n_max)));
        }
    }
    if (n_over_log) {
        below_n_over_log.emit(out, "on [100000, " + std::to_string(n_max) + "]");
        if (n_max >= 2) {
            const double x = static_cast<double>(n_max);
            add(out, BoundStatus::informational,
                "pi_" + std::to_string(n_max) + " = " + std::to_string(pi[n_max]) +
                    " vs n/ln n = " + format_sig(x / std::log(x)));
        }
    }
}

void root_rules(Lines& out, std::uint64_t n_max, const HitData& data, const std::string& which) {
    require_hits(data, n_max);
    const std::uint64_t from = which == "pi-below-sqrt-k1k2" ? 100000 : 4000000;
    Tally t{which};
    if (n_max >= from) {
        const auto pi = pi_prefix(data, n_max);
        for (std::uint64_t n = from; n <= n_max; ++n) {
            if (which == "pi-at-least-k0") {
                t.take(compare_exact(which, n, root_k0(n), pi[n], false));
            } else if (which == "pi-at-least-k1") {
                t.take(compare_exact(which, n, root_k1(n), pi[n], false));
            } else {
                const auto prod = static_cast<u128>(root_k1(n)) * root_k2(n);
                auto g = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(prod)));
                while (static_cast<u128>(g) * g > prod) {
                    --g;
                }
                while (static_cast<u128>(g + 1) * (g + 1) <= prod) {
                    ++g;
                }
                t.take(compare_exact(which, n, pi[n], g, true));
            }
        }
    }
    t.emit(out, "on [" + std::to_string(from) + ", " + std::to_string(n_max) + "]");
}

void chebyshev(Lines& out, std::uint64_t n_max, const HitData& data) {
    require_hits(data, n_max);
    const std::uint64_t from = std::min<std::uint64_t>(1000, std::max<std::uint64_t>(n_max / 10, 2));
    if (n_max < 2) {
        add(out, BoundStatus::not_applicable, "chebyshev-band: needs n >= 2");
        return;
    }
    const auto pi = pi_prefix(data, n_max);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::uint64_t at_lo = 0;
    std::uint64_t at_hi = 0;
    for (std::uint64_t n = from; n <= n_max; ++n) {
        const double x = static_cast<double>(n);
        const double band = pi[n] * std::log(x) / x;
        if (band < lo) {
            lo = band;
            at_lo = n;
        }
        if (band > hi) {
            hi = band;
            at_hi = n;
        }
    }
    add(out, BoundStatus::informational,
        "chebyshev-band pi_n ln n / n on [" + std::to_string(from) + ", " + std::to_string(n_max) +
            "]: min " + format_sig(lo) + " at " + std::to_string(at_lo) + ", max " + format_sig(hi) +
            " at " + std::to_string(at_hi));
}

void onset(Lines& out, const HitData& data) {
    const auto r = hit_vs_prime_onset(data.hits);
    std::ostringstream os;
    os << "q_k > 2 k p_k ln^2 k over " << r.checked << " hits: " << r.violations << " violations";
    if (r.violations) {
        os << ", last at k = " << r.last_violation;
    }
    if (r.onset) {
        os << "; holds from k = " << *r.onset << " to the end of the scan";
    } else {
        os << "; fails at the last scanned hit";
    }
    add(out, BoundStatus::informational, os.str());
}

const std::vector<std::string>& names() {
    static const std::vector<std::string> list = {
        "prop-5.1", "rem-5.2", "conj-5.3", "rem-5.4",  "ineq",     "dusart-interval",
        "conj-4.6", "cor-4.7", "conj-4.9", "conj-4.10", "conj-4.12", "cor-5.14",
        "conj-6.5", "conj-6.9", "conj-6.10", "conj-6.12", "conj-7.4", "all",
    };
    return list;
}

}  // namespace

bool SuiteReport::passed() const {
    return std::none_of(lines.begin(), lines.end(), [](const SuiteLine& l) {
        return l.status == BoundStatus::violated || l.status == BoundStatus::inconclusive;
    });
}

std::vector<std::string> suite_names() { return names(); }

bool suite_needs_hits(const std::string& suite) {
    static const std::vector<std::string> local = {"prop-5.1", "rem-5.2", "conj-5.3", "rem-5.4",
                                                   "ineq", "dusart-interval"};
    return std::find(local.begin(), local.end(), suite) == local.end();
}

SuiteReport run_suite(const std::string& suite, std::uint64_t n_max, const HitData& data,
                      unsigned threads) {
    if (std::find(names().begin(), names().end(), suite) == names().end()) {
        throw invalid_argument("unknown suite '" + suite + "'");
    }
    SuiteReport r;
    r.suite = suite;
    Lines& out = r.lines;
    if (suite == "all") {
        for (const auto& name : names()) {
            if (name == "all") {
                continue;
            }
            for (auto& line : run_suite(name, n_max, data, threads).lines) {
                line.text = name + ": " + line.text;
                out.push_back(std::move(line));
            }
        }
        return r;
    }
    if (suite_needs_hits(suite)) {
        require_hits(data, n_max);
    }

    if (suite == "prop-5.1") {
        monotone(out, MonotoneSequence::v, "v_n increasing", 2, 0, n_max);
    } else if (suite == "rem-5.2") {
        monotone(out, MonotoneSequence::vprime, "v'_n increasing", 4, 0, n_max);
    } else if (suite == "conj-5.3") {
        monotone(out, MonotoneSequence::t, "t_n decreasing from 1100", 2, 1099, n_max);
    } else if (suite == "rem-5.4") {
        monotone(out, MonotoneSequence::tprime, "t'_n decreasing from 2199", 3, 2198, n_max);
    } else if (suite == "ineq") {
        ranges(out, n_max, threads);
    } else if (suite == "dusart-interval") {
        interval(out, n_max);
    } else if (suite == "conj-4.6") {
        hit_rules(out, data, {"hit-index-lower", "hit-index-upper"});
    } else if (suite == "cor-4.7") {
        hit_rules(out, data, {"hit-lower"});
    } else if (suite == "conj-4.9") {
        hit_rules(out, data, {"hit-growth"});
    } else if (suite == "conj-4.10") {
        onset(out, data);
    } else if (suite == "conj-4.12") {
        pi_rules(out, n_max, data, true, true);
    } else if (suite == "cor-5.14") {
        hit_rules(out, data, {"hit-interval"});
    } else if (suite == "conj-6.5") {
        hit_rules(out, data, {"mk-below-v"});
    } else if (suite == "conj-6.9") {
        root_rules(out, n_max, data, "pi-at-least-k0");
    } else if (suite == "conj-6.10") {
        root_rules(out, n_max, data, "pi-at-least-k1");
    } else if (suite == "conj-6.12") {
        root_rules(out, n_max, data, "pi-below-sqrt-k1k2");
    } else if (suite == "conj-7.4") {
        chebyshev(out, n_max, data);
    }
    return r;
}

}  // namespace psl
