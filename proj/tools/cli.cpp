#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "psl/analysis.hpp"
#include "psl/bounds.hpp"
#include "psl/error.hpp"
#include "psl/report.hpp"
#include "psl/scan_io.hpp"
#include "psl/scanner.hpp"

namespace psl::cli {
namespace {

struct RunConfig {
    std::string variant = "plain";
    std::uint64_t n_max = 0;
    std::string checkpoint_path;
    bool resume = false;
    unsigned threads = 1;
    std::string output_path;
    std::string format = "csv";
    std::uint64_t cadence = 100000;
    std::string hits_path;
};

struct Io {
    std::ostream& out;
    std::ostream& err;
};

void emit(const RunConfig& cfg, Io& io, const std::string& text) {
    if (cfg.output_path.empty()) {
        io.out << text;
    } else {
        write_file_atomic(cfg.output_path, text);
    }
}

std::vector<std::uint64_t> default_pi_points(std::uint64_t n_max) {
    std::vector<std::uint64_t> pts;
    for (std::uint64_t p = 10; p < n_max; p *= 10) {
        pts.push_back(p);
    }
    pts.push_back(n_max);
    return pts;
}

Table rows_table(std::span<const PiCheckpointRow> rows) {
    Table t;
    t.title = "pi_n at selected n";
    t.columns = {"n", "pi_n", "q_max", "m"};
    for (const auto& r : rows) {
        t.rows.push_back({Cell::integer(r.n), Cell::integer(r.pi_n), Cell::integer(r.q_max),
                          Cell::integer(r.m_of_q_max)});
    }
    return t;
}

// Malformed input files are data errors, not usage errors.
template <class F>
auto read_input(const std::string& path, F&& load) {
    try {
        return load(path);
    } catch (const invalid_argument& e) {
        throw error(path + ": " + e.what());
    }
}

// Hits of a plain scan: from --hits (coverage = --max-n, else the last hit's m)
// or from a scan run here.
struct LoadedHits {
    std::vector<PrimeHit> hits;
    std::uint64_t scanned_to = 0;

    HitData data() const { return {hits, scanned_to}; }
};

LoadedHits obtain_hits(const RunConfig& cfg, std::uint64_t need) {
    LoadedHits h;
    if (!cfg.hits_path.empty()) {
        h.hits = read_input(cfg.hits_path, load_hits);
        h.scanned_to = cfg.n_max ? cfg.n_max : (h.hits.empty() ? 0 : h.hits.back().m);
        return h;
    }
    ScanOptions opts;
    opts.threads = cfg.threads;
    h.hits = scan(SumVariant::plain(), need, {}, opts).hits;
    h.scanned_to = need;
    return h;
}

int cmd_scan(const RunConfig& cfg, Io& io) {
    if (cfg.n_max == 0) {
        throw invalid_argument("scan needs --max-n >= 1");
    }
    if (cfg.cadence < 1000) {
        throw invalid_argument("--cadence must be at least 1000");
    }
    const auto points = default_pi_points(cfg.n_max);
    ScanOptions opts;
    opts.threads = cfg.threads;
    opts.cadence = cfg.cadence;
    opts.on_checkpoint = [&](const Checkpoint& cp, std::span<const PrimeHit> hits) {
        if (!cfg.output_path.empty()) {
            std::ostringstream os;
            write_hits_csv(os, hits);
            write_file_atomic(cfg.output_path, os.str());
        }
        if (!cfg.checkpoint_path.empty()) {
            write_file_atomic(cfg.checkpoint_path, checkpoint_to_json(cp) + "\n");
        }
    };

    ScanResult result;
    if (cfg.resume) {
        if (cfg.checkpoint_path.empty() || cfg.output_path.empty()) {
            throw invalid_argument("--resume needs --checkpoint and --emit (the hits file)");
        }
        const Checkpoint cp = read_input(cfg.checkpoint_path, load_checkpoint);
        if (cp.variant != SumVariant::parse(cfg.variant)) {
            throw invalid_argument("checkpoint is for variant " + cp.variant.to_string() + ", not " +
                                   cfg.variant);
        }
        auto prior = read_input(cfg.output_path, load_hits);
        // The hits file is written before the checkpoint, so it may run ahead.
        if (prior.size() > cp.hits_so_far) {
            prior.resize(cp.hits_so_far);
        }
        io.err << "resuming " << cp.variant.to_string() << " from n = " << cp.n_last << " ("
               << cp.hits_so_far << " hits)\n";
        result = resume(cp, prior, cfg.n_max, points, opts);
    } else {
        result = scan(SumVariant::parse(cfg.variant), cfg.n_max, points, opts);
    }
    io.out << render(rows_table(result.rows), parse_output_format(cfg.format));
    return kPass;
}

std::vector<std::uint64_t> parse_points(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        out.push_back(static_cast<std::uint64_t>(parse_u128(item)));
    }
    return out;
}

int cmd_table(const RunConfig& cfg, Io& io, int which, const std::string& points_text,
              const std::string& points_file) {
    std::vector<std::uint64_t> points;
    std::uint64_t coverage = cfg.n_max ? cfg.n_max : 1000000;
    if (!points_text.empty()) {
        points = parse_points(points_text);
        if (!cfg.n_max && cfg.hits_path.empty() && !points.empty()) {
            coverage = *std::max_element(points.begin(), points.end());
        }
    } else {
        const auto sp = load_sample_points(points_file.empty() ? default_sample_points_path()
                                                               : std::filesystem::path(points_file));
        const auto it = sp.tables.find(which);
        if (it == sp.tables.end()) {
            throw invalid_argument("no default sample points for table " + std::to_string(which));
        }
        for (std::uint64_t n : it->second) {
            if (n <= coverage) {
                points.push_back(n);
            }
        }
        if (points.size() < it->second.size()) {
            io.err << "table " << which << ": " << it->second.size() - points.size()
                   << " default points beyond n = " << coverage << " skipped\n";
        }
    }
    RunConfig c = cfg;
    c.n_max = cfg.hits_path.empty() ? coverage : cfg.n_max;
    const auto hits = obtain_hits(c, coverage);
    emit(cfg, io, render(build_table(which, points, hits.data()), parse_output_format(cfg.format)));
    return kPass;
}

int cmd_verify(const RunConfig& cfg, Io& io, const std::string& suite) {
    const std::uint64_t n_max = cfg.n_max ? cfg.n_max : 100000;
    LoadedHits hits;
    if (suite_needs_hits(suite)) {
        RunConfig c = cfg;
        c.n_max = n_max;
        hits = obtain_hits(c, n_max);
    }
    const auto report = run_suite(suite, n_max, hits.data(), cfg.threads);

    std::ostringstream os;
    if (parse_output_format(cfg.format) == OutputFormat::json) {
        nlohmann::ordered_json j;
        j["suite"] = suite;
        j["n_max"] = n_max;
        j["passed"] = report.passed();
        auto lines = nlohmann::ordered_json::array();
        for (const auto& l : report.lines) {
            lines.push_back({{"status", to_string(l.status)}, {"text", l.text}});
        }
        j["lines"] = lines;
        os << j.dump(2) << '\n';
    } else {
        std::vector<const SuiteLine*> skipped;
        for (const auto& l : report.lines) {
            if (l.status == BoundStatus::not_applicable) {
                skipped.push_back(&l);
                continue;
            }
            os << '[' << to_string(l.status) << "] " << l.text << '\n';
        }
        if (!skipped.empty()) {
            os << "not applicable in this range:\n";
            for (const auto* l : skipped) {
                os << "  " << l->text << '\n';
            }
        }
        os << suite << ": " << (report.passed() ? "PASS" : "FAIL") << '\n';
    }
    emit(cfg, io, os.str());
    return report.passed() ? kPass : kCheckFailed;
}

int cmd_solve_mk(const RunConfig& cfg, Io& io, std::uint64_t k, const std::string& q_text) {
    const u128 q = parse_u128(q_text);
    const auto s = solve_mk(k, q);
    Table t;
    t.title = "M_k";
    t.columns = {"k", "q", "M_k", "residual", "iterations"};
    t.rows.push_back({Cell::integer(k), Cell::integer(q), Cell::number(s.m_k), Cell::number(s.residual),
                      Cell::integer(s.iterations)});
    emit(cfg, io, render(t, parse_output_format(cfg.format)));
    return kPass;
}

int cmd_series(const RunConfig& cfg, Io& io, const std::string& kind_text, std::uint64_t upto,
               double epsilon) {
    const SeriesKind kind = parse_series_kind(kind_text);
    LoadedHits hits;
    if (!cfg.hits_path.empty()) {
        hits = obtain_hits(cfg, 0);
    } else if (kind == SeriesKind::inv_pi) {
        hits = obtain_hits(cfg, upto);
    } else {
        // Enough terms for upto primes; grow until the scan yields them.
        const double u = static_cast<double>(std::max<std::uint64_t>(upto, 3));
        auto n = static_cast<std::uint64_t>(2 * u * std::log(u)) + 64;
        for (;;) {
            hits = obtain_hits(cfg, n);
            if (hits.hits.size() >= upto) {
                break;
            }
            n *= 2;
        }
    }
    const auto ledger = series_partial(kind, upto, hits.hits, hits.scanned_to, epsilon);
    Table t;
    t.title = "Series partial sum";
    t.columns = {"kind", "upto", "epsilon", "partial_sum", "comparator"};
    t.rows.push_back({Cell::label(to_string(kind)), Cell::integer(upto), Cell::number(epsilon),
                      Cell::number(ledger.partial_sum), Cell::number(ledger.comparator)});
    emit(cfg, io, render(t, parse_output_format(cfg.format)));
    return kPass;
}

int cmd_li(const RunConfig& cfg, Io& io, double x) {
    Table t;
    t.title = "li(x), integral from 2";
    t.columns = {"x", "li"};
    t.rows.push_back({Cell::number(x), Cell::number(li(x))});
    emit(cfg, io, render(t, parse_output_format(cfg.format)));
    return kPass;
}

Table checks_table(const std::vector<BoundCheck>& checks) {
    Table t;
    t.title = "Inequality checks";
    t.columns = {"rule", "n", "lhs", "rhs", "margin", "status", "note"};
    for (const auto& c : checks) {
        t.rows.push_back({Cell::label(c.name), Cell::integer(c.n_or_k), Cell::number(c.lhs),
                          Cell::number(c.rhs), Cell::number(c.margin), Cell::label(to_string(c.status)),
                          Cell::label(c.note)});
    }
    return t;
}

int cmd_bounds(const RunConfig& cfg, Io& io, const std::string& rule, std::uint64_t from,
               std::uint64_t at) {
    const auto format = parse_output_format(cfg.format);
    bool ok = true;
    auto failing = [](BoundStatus s) { return s == BoundStatus::violated || s == BoundStatus::inconclusive; };

    if (at) {
        std::vector<BoundCheck> checks;
        auto maybe = [&](std::uint64_t from_n, auto fn) {
            if (at >= from_n) {
                checks.push_back(fn(at));
            }
        };
        maybe(9, check_mandl);
        maybe(5, check_mandl_doubled);
        maybe(2, check_robin);
        maybe(10, check_hassani);
        maybe(3, check_prop312);
        maybe(3, check_sun_lower);
        for (auto& c : check_dusart_forms(at)) {
            checks.push_back(std::move(c));
        }
        if (at >= 3) {
            for (auto& c : check_prop315_forms(at)) {
                checks.push_back(std::move(c));
            }
        }
        maybe(688383, check_dusart_interval);
        for (const auto& c : checks) {
            ok = ok && !failing(c.status);
        }
        emit(cfg, io, render(checks_table(checks), format));
        return ok ? kPass : kCheckFailed;
    }

    if (cfg.n_max == 0) {
        throw invalid_argument("bounds needs --at <n> or --max-n <n>");
    }
    std::vector<std::string> rules;
    if (rule == "all") {
        rules = range_rules();
    } else {
        rules.push_back(rule);
    }
    Table t;
    t.title = "Inequality range scans";
    t.columns = {"rule", "lo", "hi", "checked", "violated", "inconclusive", "min_margin", "argmin"};
    static const std::map<std::string, std::uint64_t> starts = {
        {"mandl", 9},         {"mandl-doubled", 5},        {"robin", 2},
        {"hassani", 10},      {"sum-ratio", 3},            {"sun-lower", 3},
        {"dusart-lower", 2},  {"dusart-upper", 6},         {"dusart-refined-lower", 3},
        {"refined-ratio", 3}, {"dusart-refined-upper", 688383},
    };
    for (const auto& r : rules) {
        const auto it = starts.find(r);
        if (it == starts.end()) {
            throw invalid_argument("unknown rule '" + r + "'");
        }
        const std::uint64_t lo = from ? from : it->second;
        if (lo > cfg.n_max) {
            io.err << r << ": stated from " << it->second << ", skipped\n";
            continue;
        }
        const auto s = scan_range(r, lo, cfg.n_max, cfg.threads);
        ok = ok && s.clean();
        t.rows.push_back({Cell::label(r), Cell::integer(s.lo), Cell::integer(s.hi), Cell::integer(s.checked),
                          Cell::integer(s.violations.size()), Cell::integer(s.inconclusive.size()),
                          Cell::number(s.min_margin), Cell::integer(s.argmin)});
    }
    emit(cfg, io, render(t, format));
    return ok ? kPass : kCheckFailed;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--max-n", cfg.n_max, "Largest index n");
    sub->add_option("--variant", cfg.variant, "plain | offset:<d> | shifted:<k>");
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
    sub->add_option("--checkpoint", cfg.checkpoint_path, "Checkpoint JSON path");
    sub->add_flag("--resume", cfg.resume, "Continue from --checkpoint");
    sub->add_option("--emit", cfg.output_path, "Output file (scan: hits CSV)");
    sub->add_option("--format", cfg.format, "csv | markdown | json")
        ->check(CLI::IsMember({"csv", "markdown", "md", "json"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Primes in sequences of prime sums"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    RunConfig cfg;
    Io io{out, err};

    auto* scan_cmd = app.add_subcommand("scan", "Scan S_1..S_n for primes");
    add_common(scan_cmd, cfg);
    scan_cmd->add_option("--cadence", cfg.cadence, "Indices between checkpoints (>= 1000)");

    int which = 0;
    std::string points_text;
    std::string points_file;
    auto* table_cmd = app.add_subcommand("table", "Emit one of the five result tables");
    add_common(table_cmd, cfg);
    table_cmd->add_option("which,--which", which, "Table number 1..5")->required()->check(CLI::Range(1, 5));
    table_cmd->add_option("--points", points_text, "Comma-separated n values");
    table_cmd->add_option("--points-file", points_file, "Sample points JSON");
    table_cmd->add_option("--hits", cfg.hits_path, "Hits CSV of a plain scan");

    std::string suite;
    auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
    add_common(verify_cmd, cfg);
    verify_cmd->add_option("--suite", suite, "Suite name")->required();
    verify_cmd->add_option("--hits", cfg.hits_path, "Hits CSV of a plain scan");

    std::uint64_t k = 0;
    std::string q_text;
    auto* mk_cmd = app.add_subcommand("solve-mk", "Solve for M_k given k and q_k");
    add_common(mk_cmd, cfg);
    mk_cmd->add_option("--k", k, "Index k >= 3")->required();
    mk_cmd->add_option("--q", q_text, "Prime q_k")->required();

    std::string kind;
    std::uint64_t upto = 0;
    double epsilon = 0;
    auto* series_cmd = app.add_subcommand("series", "Partial sums of the series over q_k or pi_i");
    add_common(series_cmd, cfg);
    series_cmd->add_option("--kind", kind, "k-log2-over-q | k-log2eps-over-q | inv-pi")->required();
    series_cmd->add_option("--upto", upto, "Last index")->required();
    series_cmd->add_option("--epsilon", epsilon, "Exponent gap for k-log2eps-over-q");
    series_cmd->add_option("--hits", cfg.hits_path, "Hits CSV of a plain scan");

    double x = 0;
    auto* li_cmd = app.add_subcommand("li", "Logarithmic integral from 2 to x");
    add_common(li_cmd, cfg);
    li_cmd->add_option("--x", x, "Upper limit >= 2")->required();

    std::string rule = "all";
    std::uint64_t from = 0;
    std::uint64_t at = 0;
    auto* bounds_cmd = app.add_subcommand("bounds", "Check the classical inequalities");
    add_common(bounds_cmd, cfg);
    bounds_cmd->add_option("--rule", rule, "Rule name or all");
    bounds_cmd->add_option("--from", from, "First n of the range scan");
    bounds_cmd->add_option("--at", at, "Evaluate every rule at one n");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*scan_cmd) {
            return cmd_scan(cfg, io);
        }
        if (*table_cmd) {
            return cmd_table(cfg, io, which, points_text, points_file);
        }
        if (*verify_cmd) {
            return cmd_verify(cfg, io, suite);
        }
        if (*mk_cmd) {
            return cmd_solve_mk(cfg, io, k, q_text);
        }
        if (*series_cmd) {
            return cmd_series(cfg, io, kind, upto, epsilon);
        }
        if (*li_cmd) {
            return cmd_li(cfg, io, x);
        }
        if (*bounds_cmd) {
            return cmd_bounds(cfg, io, rule, from, at);
        }
    } catch (const invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kData;
    }
    return kUsage;
}

}  // namespace psl::cli
