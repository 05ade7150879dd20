#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psl/primes.hpp"
#include "psl/scanner.hpp"

namespace psl {

enum class BoundStatus { holds, violated, inconclusive, not_applicable, informational };

std::string to_string(BoundStatus status);

/// One instantiated inequality lhs < rhs (or lhs <= rhs when !strict).
/// margin is rhs - lhs, so positive means the inequality holds.
struct BoundCheck {
    std::string name;
    std::uint64_t n_or_k = 0;
    double lhs = 0;
    double rhs = 0;
    double margin = 0;
    bool strict = true;
    /// Both sides integral and compared without rounding.
    bool exact = false;
    bool holds = false;
    BoundStatus status = BoundStatus::not_applicable;
    std::string note;
};

/// Real comparisons need |margin| above this many ulps of the larger side.
inline constexpr int kUlpGuard = 4;

/// lhs < rhs (lhs <= rhs when !strict) in binary64; within kUlpGuard ulps is inconclusive.
BoundCheck compare_real(std::string name, std::uint64_t n, double lhs, double rhs, bool strict);
/// Same comparison on exact integers.
BoundCheck compare_exact(std::string name, std::uint64_t n, u128 lhs, u128 rhs, bool strict);

BoundCheck check_mandl(std::uint64_t n);
BoundCheck check_mandl_doubled(std::uint64_t n);
BoundCheck check_robin(std::uint64_t n);
BoundCheck check_hassani(std::uint64_t n);
/// Both sides of 1 <= S_n/(2n^2 ln n) < 1 + (ln 2 + ln ln 2n)/ln n.
BoundCheck check_prop312(std::uint64_t n);
BoundCheck check_sun_lower(std::uint64_t n);

/// Every bound on p_n, one entry per form; forms outside their range are not_applicable.
std::vector<BoundCheck> check_dusart_forms(std::uint64_t n);
/// Tightest applicable form of check_dusart_forms.
BoundCheck check_dusart_pn(std::uint64_t n);
/// At least one prime in the refined Dusart interval (n >= 688383).
BoundCheck check_dusart_interval(std::uint64_t n);

std::vector<BoundCheck> check_prop315_forms(std::uint64_t n);
BoundCheck check_prop315(std::uint64_t n);

/// Rules about a single hit q_k = S_m. Rules below their threshold come back
/// not_applicable with the values still filled in.
std::vector<BoundCheck> check_hit_conjectures(const PrimeHit& hit);

std::vector<BoundCheck> check_pi_conjectures(const PiCheckpointRow& row, const PrimeTable& table);
std::vector<BoundCheck> check_pi_conjectures(const PiCheckpointRow& row);

/// q_k > 2 k p_k ln^2 k: the smallest k from which it holds for every later hit.
struct OnsetReport {
    std::optional<std::uint64_t> onset;
    std::uint64_t violations = 0;
    std::uint64_t last_violation = 0;
    std::uint64_t checked = 0;
};

OnsetReport hit_vs_prime_onset(std::span<const PrimeHit> hits);

/// Names accepted by scan_range.
std::vector<std::string> range_rules();

struct RangeScan {
    std::string rule;
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint64_t checked = 0;
    std::vector<std::uint64_t> violations;
    std::vector<std::uint64_t> inconclusive;
    double min_margin = 0;
    std::uint64_t argmin = 0;

    bool clean() const { return violations.empty() && inconclusive.empty(); }
};

/// Evaluate a per-n rule on [lo, hi]. Results are independent of `threads`.
RangeScan scan_range(const std::string& rule, std::uint64_t lo, std::uint64_t hi,
                     unsigned threads = 1);

}  // namespace psl
