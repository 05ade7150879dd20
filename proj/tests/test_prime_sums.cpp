#include <doctest.h>

#include <utility>
#include <vector>

#include "oracles.hpp"
#include "psl/error.hpp"
#include "psl/prime_sums.hpp"

using namespace psl;

namespace {

u128 ref_prefix(std::size_t n) {
    auto ps = oracle::first_primes(n);
    u128 acc = 0;
    for (auto p : ps) acc += p;
    return acc;
}

}  // namespace

TEST_CASE("partial sums of the first primes") {
    CHECK(s_prime(1) == 2);
    CHECK(s_prime(2) == 5);
    CHECK(s_prime(14) == 281);
    CHECK(s_prime(9) == 100);
    CHECK(s_prime(10) == 129);
    CHECK(s_prime(200) == ref_prefix(200));
    CHECK(s_prime(200) == s(100));
    CHECK(s(1) == 5);
    CHECK(s(2) == 17);
    CHECK(s(3) == 41);
    CHECK(s(7) == 281);
    CHECK(s(10000) == ref_prefix(20000));
}

TEST_CASE("stream") {
    using V = std::vector<std::pair<std::uint64_t, u128>>;
    CHECK(stream(SumVariant::plain(), 3) == V{{1, 5}, {2, 17}, {3, 41}});
    CHECK(stream(SumVariant::offset(1), 2) == V{{1, 7}, {2, 19}});
    CHECK(stream(SumVariant::shifted(1), 1) == V{{1, 15}});
    CHECK(stream(SumVariant::shifted(2), 1) == V{{1, 5 + 7 + 11}});
    CHECK_THROWS_AS(SumVariant::shifted(0), invalid_argument);
}

TEST_CASE("variant terms against direct summation") {
    auto ps = oracle::first_primes(4000);
    auto plain = stream(SumVariant::plain(), 1500);
    auto off = stream(SumVariant::offset(7), 1500);
    for (std::uint64_t k : {1u, 2u, 5u, 12u}) {
        auto sh = stream(SumVariant::shifted(k), 1500);
        for (std::uint64_t n : {1u, 2u, 17u, 999u, 1500u}) {
            u128 ref = 0;
            for (std::uint64_t i = 1; i <= 2 * n + 1; ++i) ref += ps[i + k - 1];
            CAPTURE(k);
            CAPTURE(n);
            CHECK(sh[n - 1].second == ref);
        }
    }
    for (std::uint64_t n = 1; n <= 1500; ++n) {
        REQUIRE(plain[n - 1].first == n);
        CHECK(off[n - 1].second == plain[n - 1].second + 14);
    }
}

TEST_CASE("telescoping and parity") {
    auto sums = SumTable::first_primes(200000);
    auto t = stream(SumVariant::plain(), 100000);
    for (std::uint64_t n = 1; n < 100000; ++n) {
        REQUIRE(t[n].second - t[n - 1].second == sums.prime(2 * n + 1) + sums.prime(2 * n + 2));
        REQUIRE(t[n - 1].second % 2 == 1);
    }
    for (std::uint64_t n = 3; n < 20000; n += 2) REQUIRE(sums.s_prime(n) % 2 == 0);
}

TEST_CASE("sum table bounds") {
    auto table = SumTable::first_primes(10);
    CHECK(table.prime_count() >= 10);
    CHECK(table.s_prime(0) == 0);
    CHECK(table.prime(1) == 2);
    CHECK_THROWS_AS(table.s_prime(table.prime_count() + 1), insufficient_data);
    CHECK(table.term(SumVariant::offset(3), 2) == 23);
}

TEST_CASE("primes needed per variant") {
    CHECK(primes_needed(SumVariant::plain(), 10) == 20);
    CHECK(primes_needed(SumVariant::offset(4), 10) == 20);
    CHECK(primes_needed(SumVariant::shifted(3), 10) == 24);
}

TEST_CASE("variant text") {
    for (const char* text : {"plain", "offset:3", "shifted:12", "offset:0"}) {
        CHECK(SumVariant::parse(text).to_string() == text);
    }
    CHECK(SumVariant::parse("shifted:2") == SumVariant::shifted(2));
    CHECK_THROWS_AS(SumVariant::parse("shift:2"), invalid_argument);
    CHECK_THROWS_AS(SumVariant::parse("offset:"), invalid_argument);
    CHECK_THROWS_AS(SumVariant::parse("offset:-1"), invalid_argument);
    CHECK_THROWS_AS(SumVariant::parse("plain:1"), invalid_argument);
    CHECK_THROWS_AS(SumVariant::parse("shifted:0"), invalid_argument);
}

TEST_CASE("stream cursor continues from a saved state") {
    auto table = SumTable::first_primes(1000).shared_table();
    SumStream a(SumVariant::shifted(2), table);
    for (int i = 0; i < 50; ++i) a.next();
    SumStream b(SumVariant::shifted(2), table, a.state().index, a.state().accumulator);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("accumulator overflow") {
    CHECK_THROWS_AS(checked_add(kU127Max, 1), capacity_error);
    CHECK(checked_add(kU127Max - 1, 1) == kU127Max);
}
