#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "psl/analysis.hpp"
#include "psl/error.hpp"
#include "psl/prime_sums.hpp"

using namespace psl;
using doctest::Approx;

TEST_CASE("euler phi") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(4) == 2);
    for (std::uint64_t d = 1; d <= 300; ++d) {
        std::uint64_t c = 0;
        for (std::uint64_t r = 1; r <= d; ++r) c += std::gcd(r, d) == 1;
        REQUIRE(euler_phi(d) == c);
    }
}

TEST_CASE("counting densities") {
    CHECK(omega_ad(1, 4, std::exp(1.0)) == Approx(2 * std::exp(1.0)).epsilon(1e-14));
    CHECK(omega_ad(1, 1, 100) == Approx(100 / std::log(100.0)).epsilon(1e-14));
    CHECK(omega_ad(3, 4, 1e4) == Approx(2171.47).epsilon(1e-5));

    std::uint64_t three_mod_four = 0;
    for (std::uint64_t i = 0; i < 10000; ++i) three_mod_four += oracle::is_prime(3 + 4 * i);
    CHECK(std::abs(omega_ad(3, 4, 1e4) / double(three_mod_four) - 1) < 0.1);

    const double c = std::exp(kEulerGamma) / (2 * std::log(2.0));
    CHECK(c == Approx(1.28477).epsilon(1e-5));
    CHECK(omega_34(std::exp(std::exp(1.0))) == Approx(c * (std::exp(1.0) + 1.5)).epsilon(1e-13));
    CHECK(omega_34(1e6) == Approx(25.55).epsilon(2e-3));
    CHECK(omega_34(1e3) > 0);
    CHECK(omega_34(1e3) < omega_34(1e6));
    CHECK_THROWS_AS(omega_34(2.0), domain_error);
}

TEST_CASE("companion sequences") {
    auto nat = companion_b(SequenceSpec::naturals(), 1000000);
    CHECK(nat.pi_restricted == 78498);
    CHECK(nat.b_n == Approx(78498 * std::log(1e6) / 1e6).epsilon(1e-12));
    CHECK(nat.c_n == Approx(1e6 / (std::log(1e6) * std::log(1e6))).epsilon(1e-12));

    auto ap = companion_b(SequenceSpec::arithmetic(1, 4), 100000);
    CHECK(ap.a_n == 399997);
    std::uint64_t ref = 0;
    for (std::uint64_t i = 0; i < 100000; ++i) ref += oracle::is_prime(1 + 4 * i);
    CHECK(ap.pi_restricted == ref);
    CHECK(std::abs(ap.b_n / 0.5 - 1) < 0.1);

    auto sums = companion_b(SequenceSpec::prime_sums(), 1000);
    CHECK(sums.pi_restricted == 141);
    CHECK(sums.a_n == s(1000));

    CHECK_THROWS(companion_b(SequenceSpec::arithmetic(2, 4), 10));
    CHECK_THROWS_AS(companion_b(SequenceSpec::naturals(), 1), domain_error);
}

TEST_CASE("companion of the primes") {
    // b_n = n log p_n / p_n. p_n > n log n only gives b_n < log p_n / log n,
    // and b_n tends to 1 from above: it is below 1 just for n = 2, 3.
    auto ps = oracle::first_primes(100001);
    for (std::uint64_t n = 2; n <= 100000; n += (n < 1000 ? 1 : 101)) {
        auto b = companion_b(SequenceSpec::primes(), n);
        const double p = double(ps[n - 1]);
        REQUIRE(b.pi_restricted == n);
        REQUIRE(b.b_n == Approx(n * std::log(p) / p).epsilon(1e-13));
        REQUIRE(b.b_n < std::log(p) / std::log(double(n)));
        REQUIRE((b.b_n < 1) == (n <= 3));
    }
    CHECK(companion_b(SequenceSpec::primes(), 100000).b_n < 1.1);
}

TEST_CASE("M_k solver") {
    auto sol = solve_mk(141, 15501706);
    CHECK(sol.m_k == Approx(1.18281).epsilon(2e-3));
    CHECK(sol.residual <= 1e-12);

    for (std::uint64_t k : {23u, 1000u, 69251u}) {
        const double lk = std::log(double(k));
        const double q = 2.0 * k * k * lk * lk * (lk + std::log(lk));
        auto one = solve_mk(k, static_cast<u128>(std::llround(q)));
        CAPTURE(k);
        CHECK(one.m_k == Approx(1).epsilon(1e-5));
        CHECK(mk_forward(k, 1.0) == Approx(q).epsilon(1e-14));
    }
    CHECK_THROWS_AS(solve_mk(2, 100), domain_error);
    CHECK_THROWS_AS(solve_mk(23, u128{1} << 80), no_root_error);
}

TEST_CASE("M_k round trip and monotonicity") {
    auto hits = scan(SumVariant::plain(), 20000).hits;
    for (const auto& h : hits) {
        if (h.k < 3) continue;
        auto sol = solve_mk(h.k, h.q);
        const double fwd = mk_forward(h.k, sol.m_k);
        REQUIRE(std::abs(fwd - to_double(h.q)) / to_double(h.q) <= 1e-12);
        REQUIRE(sol.residual <= 1e-12);
        auto a = solve_mk(h.k, h.q - 2 * h.k);
        auto b = solve_mk(h.k, h.q + 2 * h.k);
        REQUIRE(a.m_k < sol.m_k);
        REQUIRE(sol.m_k < b.m_k);
    }
}

TEST_CASE("upper and refined M bounds") {
    CHECK(mk_upper(2) == Approx(17 / (8 * std::log(2.0))).epsilon(1e-14));
    CHECK(mk_upper(23) == Approx(1.27421).epsilon(1e-5));
    CHECK(mk_upper(141) == Approx(1.20278).epsilon(1e-5));
    CHECK(mk_refined(23) == Approx(1.22166).epsilon(1e-5));
    CHECK(mk_refined(141) == Approx(1.18140).epsilon(1e-5));
    CHECK(mk_refined(3) == Approx(41 / (18 * std::log(3.0))).epsilon(1e-14));
    for (std::uint64_t k = 1000; k <= 10000; ++k) {
        const double up = mk_upper(k), lo = mk_refined(k);
        if (!(up > lo && lo > 1)) FAIL("ordering fails at k=" << k);
    }
}

TEST_CASE("floor of k log k") {
    CHECK(guarded_floor(2.9999999999) == 3);
    CHECK(guarded_floor(3.0000000001) == 3);
    CHECK(guarded_floor(3.5) == 3);
    CHECK(floor_klogk(3) == 3);
    for (std::uint64_t k = 3; k < 20000; ++k) {
        const double x = k * std::log(double(k));
        REQUIRE(floor_klogk(k) == static_cast<std::uint64_t>(std::floor(x)));
    }
}

TEST_CASE("normalized sequences") {
    CHECK(v_seq(1) == 2.5);
    CHECK(t_seq(2) == Approx(3.0657).epsilon(1e-4));
    CHECK(t_seq(978) == Approx(to_double(s(978)) / (2.0 * 978 * 978 * std::log(978.0))));
    CHECK(vprime_seq(4) == Approx(2.0 * 17 / 16));
    CHECK(tprime_seq(4) == Approx(2.0 * 17 / (16 * std::log(2.0))));
}

TEST_CASE("monotonicity scans") {
    auto v = monotonicity_scan(MonotoneSequence::v, 100000);
    CHECK(v.exception_indices.empty());

    auto t = monotonicity_scan(MonotoneSequence::t, 20000);
    std::vector<std::uint64_t> ref;
    for (std::uint64_t m = 2; m < 20000; ++m) {
        const double a = to_double(s(m)) / (2.0 * m * m * std::log(double(m)));
        const double b = to_double(s(m + 1)) / (2.0 * (m + 1) * (m + 1) * std::log(double(m + 1)));
        if (b > a) ref.push_back(m);
    }
    CHECK(t.exception_indices == ref);
    CHECK(t.max_exception == 1099);

    CHECK_THROWS(monotonicity_scan(MonotoneSequence::v, 5));
}

TEST_CASE("per-hit diagnostics") {
    PrimeHit h{23, 99, 107934};
    auto d = q_diagnostics(h);
    CHECK(d.q_main == Approx(6.33647).epsilon(1e-5));
    CHECK(d.q_prime == Approx(5.33647).epsilon(1e-5));
    CHECK(d.q_second == Approx(5.44583).epsilon(1e-5));
    CHECK(d.v == Approx(1.19829).epsilon(1e-5));
    CHECK(d.ratio == Approx(3.30944).epsilon(1e-5));
    CHECK(d.q_third.has_value());

    auto small = q_diagnostics(PrimeHit{5, 7, 281});
    CHECK(small.q_prime == Approx(0.177181).epsilon(1e-5));
    CHECK(small.q_second == Approx(-1.76013).epsilon(1e-5));
    CHECK(small.v == Approx(1.47352).epsilon(1e-5));
    CHECK(small.ratio == Approx(1.34807).epsilon(1e-5));
    CHECK_FALSE(small.q_third.has_value());
    CHECK_THROWS(q_diagnostics(PrimeHit{2, 2, 17}));
}

TEST_CASE("Q minus Q' is one for every hit") {
    for (const auto& h : scan(SumVariant::plain(), 10000).hits) {
        if (h.k < 3) continue;
        auto d = q_diagnostics(h);
        REQUIRE(std::abs(d.q_main - d.q_prime - 1) < 1e-12 * std::max(1.0, std::abs(d.q_main)));
    }
}

TEST_CASE("u log u = c") {
    for (double c : {0.01, 0.5, 1.0, 2.718281828, 10.0, 1e3, 1e8, 1e15}) {
        const double u = solve_u_log_u(c);
        CHECK(u * std::log(u) == Approx(c).epsilon(1e-12));
    }
    CHECK_THROWS_AS(solve_u_log_u(0), domain_error);
}

TEST_CASE("roots k0 k1 k2") {
    CHECK(root_k2(100) == 29);
    CHECK(root_k1(100) == 15);
    CHECK(root_k0(100, s(100)) == 22);
    CHECK(root_k0(100) == 22);
    CHECK(root_k1(10000) == 846);
    CHECK(root_k2(10000) == 1382);
    CHECK(root_k1(100000) == 6928);
    CHECK(root_k2(100000) == 10770);
    CHECK_THROWS_AS(root_k2(9), domain_error);

    for (std::uint64_t n = 10; n <= 200000; n += (n < 5000 ? 1 : 37)) {
        const std::uint64_t k = root_k2(n);
        const double lo = k * std::log(double(k));
        const double hi = (k + 1) * std::log(double(k + 1));
        if (!(lo <= n && n < hi)) FAIL("k2 bracket fails at n=" << n);
    }
}

TEST_CASE("root k0 brackets its equation") {
    for (std::uint64_t n : {10u, 57u, 100u, 1000u, 10000u, 123457u}) {
        const double sn = to_double(s(n));
        const double c = std::pow(2.0 * std::pow(double(n), 2.5) * std::log(double(n)) / sn, 2);
        const std::uint64_t k = root_k0(n);
        CAPTURE(n);
        CHECK(k * std::log(double(k)) <= c);
        CHECK((k + 1) * std::log(double(k + 1)) > c);
    }
}

TEST_CASE("ratios between roots") {
    auto r = table5_ratios(23, 22, 15, 29);
    CHECK(r.xi == Approx(1.10277).epsilon(1e-5));
    CHECK(r.eta == Approx(1.05482).epsilon(1e-5));
    CHECK(r.delta0 == Approx(1.0 / 23));
    auto one = table5_ratios(50, 50, 50, 50);
    CHECK(one.eta == 1);
    CHECK(one.xi == 1);
    CHECK(one.delta0 == 0);
    CHECK(one.delta1 == 0);
    CHECK(one.delta2 == 0);
    CHECK(table5_ratios(1098, 1131, 846, 1382).eta == Approx(1.04598).epsilon(1e-5));
}

TEST_CASE("logarithmic integral") {
    CHECK(li(2) == 0);
    CHECK_THROWS_AS(li(1.5), domain_error);
    for (double x : {3.0, 10.0, 1e3, 1e5, 1e6, 1e9}) {
        CAPTURE(x);
        CHECK(li(x) == Approx(oracle::li(x)).epsilon(1e-9));
    }
    CHECK(std::abs(li(1e6) - 78627) < 1);
    CHECK(li(1e3) == Approx(176.564).epsilon(1e-5));
    double prev = 0;
    for (double x = 2.5; x < 1e7; x *= 1.37) {
        const double v = li(x);
        REQUIRE(v > prev);
        prev = v;
    }
}

TEST_CASE("series partial sums against direct evaluation") {
    auto r = scan(SumVariant::plain(), 5000);
    const auto& hits = r.hits;

    double ref = 0;
    for (std::uint64_t k = 2; k <= 5; ++k) {
        const double lk = std::log(double(k));
        ref += k * lk * lk / to_double(hits[k - 1].q);
    }
    auto a = series_partial(SeriesKind::k_log2_over_q, 5, hits, r.checkpoint.n_last);
    CHECK(a.partial_sum == Approx(ref).epsilon(1e-14));
    CHECK(a.comparator == Approx(std::log(std::log(5.0)) - std::log(std::log(2.0))));

    std::vector<std::uint64_t> pi(11, 0);
    {
        auto ps = oracle::first_primes(20);
        u128 acc = 0;
        std::uint64_t c = 0;
        for (int i = 1; i <= 10; ++i) {
            acc += ps[2 * i - 2] + ps[2 * i - 1];
            c += oracle::is_prime(acc);
            pi[i] = c;
        }
    }
    CHECK(std::vector<std::uint64_t>(pi.begin() + 1, pi.end()) ==
          std::vector<std::uint64_t>{1, 2, 3, 3, 3, 4, 5, 5, 5, 5});
    double inv = 0;
    for (int i = 1; i <= 10; ++i) inv += 1.0 / double(pi[i]);
    auto b = series_partial(SeriesKind::inv_pi, 10, hits, r.checkpoint.n_last);
    CHECK(b.partial_sum == Approx(inv).epsilon(1e-14));
    CHECK(b.comparator == Approx(0.5 * std::log(10.0) * std::log(10.0)));

    auto c = series_partial(SeriesKind::k_log2eps_over_q, 400, hits, r.checkpoint.n_last, 2.0);
    CHECK(c.partial_sum < 0.5);
    double prev = 0;
    for (std::uint64_t upto = 2; upto <= 400; upto += 7) {
        auto d = series_partial(SeriesKind::k_log2_over_q, upto, hits, r.checkpoint.n_last);
        REQUIRE(d.partial_sum >= prev);
        prev = d.partial_sum;
    }

    CHECK_THROWS_AS(series_partial(SeriesKind::k_log2_over_q, 100000, hits, r.checkpoint.n_last),
                    insufficient_data);
    CHECK_THROWS_AS(series_partial(SeriesKind::inv_pi, 6000, hits, r.checkpoint.n_last),
                    insufficient_data);
    CHECK_THROWS(series_partial(SeriesKind::k_log2eps_over_q, 10, hits, 5000, 0.0));
    CHECK(parse_series_kind(to_string(SeriesKind::inv_pi)) == SeriesKind::inv_pi);
    CHECK_THROWS(parse_series_kind("harmonic"));
}
