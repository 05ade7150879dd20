#include <doctest.h>

#include <json.hpp>

#include "psl/error.hpp"
#include "psl/report.hpp"
#include "psl/scanner.hpp"

using namespace psl;

TEST_CASE("significant digit formatting") {
    CHECK(format_sig(0.956738123) == "0.956738");
    CHECK(format_sig(1.0) == "1.00000");
    CHECK(format_sig(-1.76013) == "-1.76013");
    CHECK(format_sig(78626.504) == "78626.5");
    CHECK(format_sig(123456789.0) == "123457000");
    CHECK(format_sig(2e9) == "2.00000e+09");
    CHECK(format_sig(5e-5) == "5.00000e-05");
    CHECK(format_sig(0) == "0");
    CHECK(format_sci3(107934) == "1.08e+05");
    CHECK(format_sci3(31380813002879ULL) == "3.14e+13");
}

TEST_CASE("output format names") {
    CHECK(parse_output_format("csv") == OutputFormat::csv);
    CHECK(parse_output_format("markdown") == OutputFormat::markdown);
    CHECK(parse_output_format("json") == OutputFormat::json);
    CHECK_THROWS_AS(parse_output_format("xml"), invalid_argument);
}

TEST_CASE("rendering") {
    Table t{"demo", {"n", "q", "x", "name"}, {}, {"a note"}};
    t.rows.push_back({Cell::integer(10), Cell::approx(107934), Cell::number(0.5), Cell::label("a,b")});
    CHECK(render(t, OutputFormat::csv) == "n,q,x,name\n10,1.08e+05,0.500000,\"a,b\"\n");
    auto md = render(t, OutputFormat::markdown);
    CHECK(md.find("| n | q | x | name |") != std::string::npos);
    CHECK(md.find("|---|---|---|---|") != std::string::npos);
    auto j = nlohmann::json::parse(render(t, OutputFormat::json));
    CHECK(j["rows"][0]["q"]["exact"] == "107934");
    CHECK(j["rows"][0]["x"] == 0.5);
    CHECK(j["columns"].size() == 4);
    CHECK(j["notes"][0] == "a note");
}

TEST_CASE("tables from a scan") {
    auto r = scan(SumVariant::plain(), 100000);
    HitData data{r.hits, 100000};
    std::vector<std::uint64_t> pts = {100, 100000};

    auto t3 = table3(pts, data);
    REQUIRE(t3.rows.size() == 2);
    CHECK(t3.rows[1][2].text == "264074170741");
    CHECK(t3.columns[5] == "Q");

    auto t5 = table5(pts, data);
    CHECK(t5.rows[0][1].text == "22");
    CHECK(t5.rows[0][3].text == "15");
    CHECK(t5.rows[0][5].text == "29");
    CHECK(t5.rows[0][8].text == "1.10277");
    CHECK(t5.rows[1][3].text == "6928");
    CHECK(t5.rows[1][5].text == "10770");

    auto t2 = table2(pts, data);
    CHECK(t2.rows[1][1].text == "8350");

    auto t1 = table1(pts, data);
    CHECK(t1.columns.size() == 9);
    CHECK(t1.rows[0][3].text == "1");
    CHECK(t1.rows[1][3].text == "10");

    auto t4 = table4(pts, data);
    CHECK(t4.columns == std::vector<std::string>{"n", "k", "k_minus_k0"});

    std::vector<std::uint64_t> beyond = {200000};
    CHECK_THROWS_AS(table2(beyond, data), insufficient_data);
    CHECK_THROWS(build_table(6, pts, data));
}

TEST_CASE("sample points file") {
    auto sp = load_sample_points(default_sample_points_path());
    CHECK(sp.version == 1);
    for (int t = 1; t <= 5; ++t) CHECK_FALSE(sp.tables.at(t).empty());
    CHECK(sp.tables.at(2).back() >= 1000000);
}

TEST_CASE("suites") {
    auto names = suite_names();
    CHECK(std::find(names.begin(), names.end(), "all") != names.end());
    auto r = scan(SumVariant::plain(), 5000);
    HitData data{r.hits, 5000};
    CHECK(run_suite("prop-5.1", 5000, data).passed());
    CHECK(run_suite("ineq", 5000, data).passed());
    CHECK_THROWS_AS(run_suite("nonexistent", 100, data), invalid_argument);

    SuiteReport bad{"x", {{BoundStatus::holds, "a"}, {BoundStatus::inconclusive, "b"}}};
    CHECK_FALSE(bad.passed());
    SuiteReport ok{"x", {{BoundStatus::holds, "a"}, {BoundStatus::not_applicable, "b"}}};
    CHECK(ok.passed());
}
