#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "psl/bounds.hpp"
#include "psl/int128.hpp"
#include "psl/scanner.hpp"

namespace psl {

enum class OutputFormat { csv, markdown, json };

OutputFormat parse_output_format(const std::string& text);

/// Fixed notation with `digits` significant digits; scientific outside [1e-4, 1e9).
std::string format_sig(double x, int digits = 6);
/// Three significant digits in scientific form, e.g. 1.09e+05.
std::string format_sci3(u128 value);

struct Cell {
    enum class Kind { integer, real, text, approx };
    Kind kind = Kind::text;
    std::string text;
    /// Exact decimal for integer and approx cells.
    std::string exact;
    double real = 0;

    static Cell integer(u128 v);
    static Cell signed_integer(std::int64_t v);
    static Cell number(double v);
    static Cell approx(u128 v);
    static Cell label(std::string s);
};

struct Table {
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> notes;
};

/// CSV and markdown print cell text; JSON carries exact integers as strings
/// next to any rounded text.
std::string render(const Table& table, OutputFormat format);

/// Hits of a plain scan covering S_1..S_{scanned_to}.
struct HitData {
    std::span<const PrimeHit> hits;
    std::uint64_t scanned_to = 0;
};

Table table1(std::span<const std::uint64_t> points, const HitData& data);
Table table2(std::span<const std::uint64_t> points, const HitData& data);
Table table3(std::span<const std::uint64_t> points, const HitData& data);
Table table4(std::span<const std::uint64_t> points, const HitData& data);
Table table5(std::span<const std::uint64_t> points, const HitData& data);
Table build_table(int which, std::span<const std::uint64_t> points, const HitData& data);

struct SamplePoints {
    int version = 0;
    std::map<int, std::vector<std::uint64_t>> tables;
};

SamplePoints load_sample_points(const std::filesystem::path& path);
/// data/sample_points.json of the source tree this binary was built from.
std::filesystem::path default_sample_points_path();

struct SuiteLine {
    BoundStatus status = BoundStatus::holds;
    std::string text;
};

struct SuiteReport {
    std::string suite;
    std::vector<SuiteLine> lines;

    /// True when no line is violated or inconclusive.
    bool passed() const;
};

std::vector<std::string> suite_names();
/// Suites that need the hit list of a plain scan to n_max.
bool suite_needs_hits(const std::string& suite);

SuiteReport run_suite(const std::string& suite, std::uint64_t n_max, const HitData& data,
                      unsigned threads = 1);

}  // namespace psl
