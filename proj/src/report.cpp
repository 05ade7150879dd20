#include "psl/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "psl/analysis.hpp"
#include "psl/error.hpp"
#include "psl/prime_sums.hpp"
#include "psl/primes.hpp"
#include "psl/scan_io.hpp"

#ifndef PSL_SOURCE_DIR
#define PSL_SOURCE_DIR "."
#endif

namespace psl {
namespace {

std::string printf_string(const char* fmt, int precision, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, precision, x);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

nlohmann::ordered_json cell_json(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::integer: {
            const u128 v = parse_u128(c.exact);
            if (v <= std::numeric_limits<std::uint64_t>::max()) {
                return static_cast<std::uint64_t>(v);
            }
            return c.exact;
        }
        case Cell::Kind::real:
            if (!std::isfinite(c.real)) {
                return nullptr;
            }
            if (c.exact.size() > 0) {
                return std::stoll(c.exact);
            }
            return c.real;
        case Cell::Kind::approx:
            return {{"approx", c.text}, {"exact", c.exact}};
        case Cell::Kind::text:
            break;
    }
    return c.text;
}

struct Point {
    std::uint64_t n;
    PiCheckpointRow row;
};

std::vector<Point> rows_for(std::span<const std::uint64_t> points, const HitData& data) {
    std::vector<Point> out;
    for (std::uint64_t n : points) {
        if (n == 0) {
            throw invalid_argument("sample points start at n = 1");
        }
        if (n > data.scanned_to) {
            throw insufficient_data("n = " + std::to_string(n) + " is beyond the scanned range (" +
                                    std::to_string(data.scanned_to) + ")");
        }
        out.push_back({n, pi_row_at(data.hits, n)});
    }
    return out;
}

Cell missing() { return Cell::label("-"); }

}  // namespace

OutputFormat parse_output_format(const std::string& text) {
    if (text == "csv") {
        return OutputFormat::csv;
    }
    if (text == "markdown" || text == "md") {
        return OutputFormat::markdown;
    }
    if (text == "json") {
        return OutputFormat::json;
    }
    throw invalid_argument("unknown format '" + text + "' (csv, markdown, json)");
}

std::string format_sig(double x, int digits) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    if (x == 0) {
        return "0";
    }
    const double a = std::abs(x);
    if (a < 1e-4 || a >= 1e9) {
        return printf_string("%.*e", digits - 1, x);
    }
    const int exponent = static_cast<int>(std::floor(std::log10(a)));
    if (exponent >= digits) {
        // round away the digits %f would otherwise print
        return printf_string("%.*f", 0, std::stod(printf_string("%.*e", digits - 1, x)));
    }
    return printf_string("%.*f", std::max(0, digits - 1 - exponent), x);
}

std::string format_sci3(u128 value) { return printf_string("%.*e", 2, to_double(value)); }

Cell Cell::integer(u128 v) {
    Cell c;
    c.kind = Kind::integer;
    c.text = to_string(v);
    c.exact = c.text;
    return c;
}

Cell Cell::signed_integer(std::int64_t v) {
    Cell c;
    c.kind = Kind::real;
    c.text = std::to_string(v);
    c.exact = c.text;
    c.real = static_cast<double>(v);
    return c;
}

Cell Cell::number(double v) {
    Cell c;
    c.kind = Kind::real;
    c.text = format_sig(v);
    c.real = v;
    return c;
}

Cell Cell::approx(u128 v) {
    Cell c;
    c.kind = Kind::approx;
    c.text = format_sci3(v);
    c.exact = to_string(v);
    return c;
}

Cell Cell::label(std::string s) {
    Cell c;
    c.text = std::move(s);
    return c;
}

std::string render(const Table& table, OutputFormat format) {
    std::ostringstream os;
    switch (format) {
        case OutputFormat::csv:
            for (std::size_t i = 0; i < table.columns.size(); ++i) {
                os << (i ? "," : "") << csv_escape(table.columns[i]);
            }
            os << '\n';
            for (const auto& row : table.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) {
                    os << (i ? "," : "") << csv_escape(row[i].text);
                }
                os << '\n';
            }
            break;
        case OutputFormat::markdown:
            if (!table.title.empty()) {
                os << table.title << "\n\n";
            }
            os << '|';
            for (const auto& c : table.columns) {
                os << ' ' << c << " |";
            }
            os << "\n|";
            for (std::size_t i = 0; i < table.columns.size(); ++i) {
                os << "---|";
            }
            os << '\n';
            for (const auto& row : table.rows) {
                os << '|';
                for (const auto& c : row) {
                    os << ' ' << c.text << " |";
                }
                os << '\n';
            }
            for (const auto& note : table.notes) {
                os << '\n' << note << '\n';
            }
            break;
        case OutputFormat::json: {
            nlohmann::ordered_json j;
            j["title"] = table.title;
            j["columns"] = table.columns;
            auto rows = nlohmann::ordered_json::array();
            for (const auto& row : table.rows) {
                nlohmann::ordered_json r;
                for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
                    r[table.columns[i]] = cell_json(row[i]);
                }
                rows.push_back(std::move(r));
            }
            j["rows"] = std::move(rows);
            j["notes"] = table.notes;
            os << j.dump(2) << '\n';
            break;
        }
    }
    return os.str();
}

Table table1(std::span<const std::uint64_t> points, const HitData& data) {
    Table t;
    t.title = "Distribution of primes in S_n";
    t.columns = {"n", "k", "q_approx", "n_minus_m", "M_k", "M_k_refined", "M_k_upper",
                 "klogk_over_m", "S_m_sqrt_klogk_over_2m52logm"};
    for (const auto& [n, row] : rows_for(points, data)) {
        const std::uint64_t k = row.pi_n;
        std::vector<Cell> cells{Cell::integer(n), Cell::integer(k)};
        if (k < 3) {
            cells.push_back(k ? Cell::approx(row.q_max) : missing());
            cells.push_back(k ? Cell::integer(n - row.m_of_q_max) : missing());
            while (cells.size() < t.columns.size()) {
                cells.push_back(missing());
            }
            t.rows.push_back(std::move(cells));
            continue;
        }
        const double kk = static_cast<double>(k);
        const double m = static_cast<double>(row.m_of_q_max);
        const double klogk = kk * std::log(kk);
        cells.push_back(Cell::approx(row.q_max));
        cells.push_back(Cell::integer(n - row.m_of_q_max));
        cells.push_back(Cell::number(solve_mk(k, row.q_max).m_k));
        cells.push_back(Cell::number(mk_refined(k)));
        cells.push_back(Cell::number(mk_upper(k)));
        cells.push_back(Cell::number(klogk / m));
        cells.push_back(Cell::number(to_double(row.q_max) * std::sqrt(klogk) /
                                     (2 * std::pow(m, 2.5) * std::log(m))));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

Table table2(std::span<const std::uint64_t> points, const HitData& data) {
    Table t;
    t.title = "pi_n against n/ln n and pi(n)";
    t.columns = {"n", "pi_n", "pi_n_over_n_over_log_n", "pi_n_over_prime_pi"};
    for (const auto& [n, row] : rows_for(points, data)) {
        std::vector<Cell> cells{Cell::integer(n), Cell::integer(row.pi_n)};
        if (n < 2) {
            cells.push_back(missing());
            cells.push_back(missing());
        } else {
            const double x = static_cast<double>(n);
            const auto primes = PrimeCache::global().ensure_limit(n);
            const double pi = static_cast<double>(row.pi_n);
            cells.push_back(Cell::number(pi / (x / std::log(x))));
            cells.push_back(Cell::number(pi / static_cast<double>(primes->pi(n))));
        }
        t.rows.push_back(std::move(cells));
    }
    return t;
}

Table table3(std::span<const std::uint64_t> points, const HitData& data) {
    Table t;
    t.title = "Largest prime q_k among S_1..S_n";
    t.columns = {"n", "k", "q", "q_over_2k2log3k", "q_over_2m2logm", "Q", "Q_prime", "Q_second"};
    for (const auto& [n, row] : rows_for(points, data)) {
        std::vector<Cell> cells{Cell::integer(n), Cell::integer(row.pi_n)};
        if (row.pi_n < 3) {
            cells.push_back(row.pi_n ? Cell::integer(row.q_max) : missing());
            while (cells.size() < t.columns.size()) {
                cells.push_back(missing());
            }
            t.rows.push_back(std::move(cells));
            continue;
        }
        const auto d = q_diagnostics(PrimeHit{row.pi_n, row.m_of_q_max, row.q_max});
        cells.push_back(Cell::integer(row.q_max));
        cells.push_back(Cell::number(d.ratio));
        cells.push_back(Cell::number(d.v));
        cells.push_back(Cell::number(d.q_main));
        cells.push_back(Cell::number(d.q_prime));
        cells.push_back(Cell::number(d.q_second));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

Table table4(std::span<const std::uint64_t> points, const HitData& data) {
    Table t;
    t.title = "k = pi_n against k_0(n)";
    t.columns = {"n", "k", "k_minus_k0"};
    for (const auto& [n, row] : rows_for(points, data)) {
        std::vector<Cell> cells{Cell::integer(n), Cell::integer(row.pi_n)};
        if (n < 10) {
            cells.push_back(missing());
        } else {
            cells.push_back(Cell::signed_integer(static_cast<std::int64_t>(row.pi_n) -
                                                 static_cast<std::int64_t>(root_k0(n))));
        }
        t.rows.push_back(std::move(cells));
    }
    return t;
}

Table table5(std::span<const std::uint64_t> points, const HitData& data) {
    Table t;
    t.title = "Root counts k_0, k_1, k_2";
    t.columns = {"n", "k0", "delta0", "k1", "delta1", "k2", "delta2", "eta", "xi"};
    for (const auto& [n, row] : rows_for(points, data)) {
        std::vector<Cell> cells{Cell::integer(n)};
        if (n < 10) {
            while (cells.size() < t.columns.size()) {
                cells.push_back(missing());
            }
            t.rows.push_back(std::move(cells));
            continue;
        }
        const std::uint64_t k0 = root_k0(n);
        const std::uint64_t k1 = root_k1(n);
        const std::uint64_t k2 = root_k2(n);
        const auto r = table5_ratios(row.pi_n, k0, k1, k2);
        cells.push_back(Cell::integer(k0));
        cells.push_back(Cell::number(r.delta0));
        cells.push_back(Cell::integer(k1));
        cells.push_back(Cell::number(r.delta1));
        cells.push_back(Cell::integer(k2));
        cells.push_back(Cell::number(r.delta2));
        cells.push_back(Cell::number(r.eta));
        cells.push_back(Cell::number(r.xi));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

Table build_table(int which, std::span<const std::uint64_t> points, const HitData& data) {
    switch (which) {
        case 1:
            return table1(points, data);
        case 2:
            return table2(points, data);
        case 3:
            return table3(points, data);
        case 4:
            return table4(points, data);
        case 5:
            return table5(points, data);
        default:
            throw invalid_argument("tables are numbered 1 to 5");
    }
}

SamplePoints load_sample_points(const std::filesystem::path& path) {
    SamplePoints sp;
    try {
        const auto j = nlohmann::json::parse(read_file(path));
        sp.version = j.at("version").get<int>();
        for (const auto& [key, list] : j.at("tables").items()) {
            sp.tables[std::stoi(key)] = list.get<std::vector<std::uint64_t>>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw invalid_argument("bad sample points file " + path.string() + ": " + e.what());
    }
    return sp;
}

std::filesystem::path default_sample_points_path() {
    return std::filesystem::path(PSL_SOURCE_DIR) / "data" / "sample_points.json";
}

}  // namespace psl
