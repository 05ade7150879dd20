#pragma once

// Real-valued analytics over prime sums. "log" is the natural logarithm
// throughout; exact integers come from the prime and sum tables and are
// converted to binary64 only at the final division.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psl/int128.hpp"
#include "psl/prime_sums.hpp"
#include "psl/scanner.hpp"

namespace psl {

inline constexpr double kEulerGamma = 0.5772156649015329;

// ---------------------------------------------------------------------------
// Companion sequences and counting densities

enum class SequenceKind { naturals, primes, arithmetic, prime_sums };

struct SequenceSpec {
    SequenceKind kind = SequenceKind::naturals;
    std::uint64_t a = 1;  // arithmetic only: a_n = a + (n - 1) d
    std::uint64_t d = 1;

    static SequenceSpec naturals() { return {SequenceKind::naturals}; }
    static SequenceSpec primes() { return {SequenceKind::primes}; }
    static SequenceSpec arithmetic(std::uint64_t a, std::uint64_t d) {
        return {SequenceKind::arithmetic, a, d};
    }
    static SequenceSpec prime_sums() { return {SequenceKind::prime_sums}; }
};

struct CompanionPoint {
    std::uint64_t n = 0;
    u128 a_n = 0;
    /// Number of primes among a_1..a_n.
    std::uint64_t pi_restricted = 0;
    /// (log a_n / a_n) * pi_restricted
    double b_n = 0;
    /// a_n / (log n * log a_n)
    double c_n = 0;
};

/// Requires n >= 2 and, for arithmetic sequences, gcd(a, d) = 1.
CompanionPoint companion_b(const SequenceSpec& sequence, std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t d);

/// d x / (phi(d) log x).
double omega_ad(std::uint64_t a, std::uint64_t d, double x);

/// Expected count of Mersenne primes 2^q - 1 with q = 3 (mod 4) among the first x
/// such exponents: e^gamma / (2 log 2) * (log x + log log x + (log log x)^2 / 2).
double omega_34(double x);

// ---------------------------------------------------------------------------
// M_k: positive root of q = 2 M^5 k^2 log^2 k (log k + log log k + 2 log M)

struct MkSolution {
    std::uint64_t k = 0;
    u128 q = 0;
    double m_k = 0;
    /// |forward(m_k) - q| / q
    double residual = 0;
    int iterations = 0;
};

/// Right-hand side of the M_k equation.
double mk_forward(std::uint64_t k, double m);

/// Bisection on [0.1, 10] followed by Newton polishing. k >= 3, q >= 1.
/// Throws no_root_error when there is no sign change on the bracket.
MkSolution solve_mk(std::uint64_t k, u128 q);

/// t_k = S_k / (2 k^2 log k), k >= 2.
double mk_upper(std::uint64_t k);
/// t_j with j = floor(k log k), k >= 3.
double mk_refined(std::uint64_t k);

/// floor(x) that snaps to round(x) when x is within 1e-9 of an integer.
std::uint64_t guarded_floor(double x);
/// floor(k log k) with the integrality guard.
std::uint64_t floor_klogk(std::uint64_t k);

// ---------------------------------------------------------------------------
// Normalized sequences

double t_seq(std::uint64_t n);       // S_n / (2 n^2 log n), n >= 2
double v_seq(std::uint64_t n);       // S_n / (2 n^2), n >= 1
double tprime_seq(std::uint64_t n);  // 2 S'_n / (n^2 log(n/2)), n >= 3
double vprime_seq(std::uint64_t n);  // 2 S'_n / n^2, n >= 1

enum class MonotoneSequence { v, t, tprime, vprime };

struct MonotonicityReport {
    MonotoneSequence sequence = MonotoneSequence::v;
    std::uint64_t n_max = 0;
    /// For v / vprime: indices n with v_{n+1} <= v_n. For t / tprime: indices m
    /// with t_{m+1} > t_m. Only pairs with m + 1 <= n_max are examined.
    std::vector<std::uint64_t> exception_indices;
    std::uint64_t max_exception = 0;
};

/// Requires n_max >= 10. v starts at n = 2, vprime at 4, t at 2, tprime at 3.
MonotonicityReport monotonicity_scan(MonotoneSequence sequence, std::uint64_t n_max);

// ---------------------------------------------------------------------------
// Per-hit diagnostics

struct QDiagnostics {
    double q_main = 0;    // (q - 2k^2 log^3 k) / (2k^2 log^2 k loglog k)
    double q_prime = 0;   // (q - 2k^2 log^2 k (log k + loglog k)) / (2k^2 log^2 k loglog k)
    double q_second = 0;  // (q - 2 p_k^2 log k) / (2k^2 log^2 k loglog k)
    std::optional<double> q_third;  // as q_prime over logloglog k; k >= 16 only
    double v = 0;      // q / (2 m^2 log m)
    double l = 0;      // q / (2 k^2 log^2 k (log k + loglog k))
    double ratio = 0;  // q / (2 k^2 log^3 k)
};

/// Requires hit.k >= 3 and hit.m >= 2. p_k is the k-th ordinary prime.
QDiagnostics q_diagnostics(const PrimeHit& hit, std::uint64_t p_k);
QDiagnostics q_diagnostics(const PrimeHit& hit);

// ---------------------------------------------------------------------------
// Root equations u log u = C

/// Real root of u log u = c for c > 0, Newton from c / log c.
double solve_u_log_u(double c);

/// floor of the root of sqrt(x log x) = 2 n^2 sqrt(n) log n / S_n.
std::uint64_t root_k0(std::uint64_t n, u128 s_n);
std::uint64_t root_k0(std::uint64_t n);
/// floor of the root of (1 + (log 2 + log log 2n) / log n) sqrt(y log y) = sqrt(n).
std::uint64_t root_k1(std::uint64_t n);
/// floor of the root of x log x = n.
std::uint64_t root_k2(std::uint64_t n);

struct RootRatios {
    double delta0 = 0;
    double delta1 = 0;
    double delta2 = 0;
    double eta = 0;  // k0 / sqrt(k1 k2)
    double xi = 0;   // k / sqrt(k1 k2)
};

RootRatios table5_ratios(std::uint64_t k, std::uint64_t k0, std::uint64_t k1, std::uint64_t k2);

// ---------------------------------------------------------------------------
// Logarithmic integral and series

/// Integral of dt / log t from 2 to x by adaptive Simpson quadrature.
double li(double x);

enum class SeriesKind { k_log2_over_q, k_log2eps_over_q, inv_pi };

std::string to_string(SeriesKind kind);
SeriesKind parse_series_kind(const std::string& text);

struct SeriesLedger {
    SeriesKind kind = SeriesKind::k_log2_over_q;
    std::uint64_t upto = 0;
    double epsilon = 0;
    double partial_sum = 0;
    /// Asymptotic law at upto: loglog upto - loglog 2, 1 / (eps log^eps 2), or log^2(upto) / 2.
    double comparator = 0;
};

/// Partial sums over k = 2..upto (q kinds, needs hits q_1..q_upto) or over
/// i = 1..upto with pi_i >= 1 (inv_pi, needs the scan to cover upto).
/// Throws insufficient_data otherwise.
SeriesLedger series_partial(SeriesKind kind, std::uint64_t upto, std::span<const PrimeHit> hits,
                            std::uint64_t scanned_to, double epsilon = 0);

}  // namespace psl
