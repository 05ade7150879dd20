#include <cmath>
#include <string>

#include "psl/analysis.hpp"
#include "psl/error.hpp"

namespace psl {

std::string to_string(SeriesKind kind) {
    switch (kind) {
        case SeriesKind::k_log2_over_q:
            return "k-log2-over-q";
        case SeriesKind::k_log2eps_over_q:
            return "k-log2eps-over-q";
        case SeriesKind::inv_pi:
            return "inv-pi";
    }
    return "inv-pi";
}

SeriesKind parse_series_kind(const std::string& text) {
    if (text == "k-log2-over-q") {
        return SeriesKind::k_log2_over_q;
    }
    if (text == "k-log2eps-over-q") {
        return SeriesKind::k_log2eps_over_q;
    }
    if (text == "inv-pi") {
        return SeriesKind::inv_pi;
    }
    throw invalid_argument("unknown series kind '" + text + "'");
}

SeriesLedger series_partial(SeriesKind kind, std::uint64_t upto, std::span<const PrimeHit> hits,
                            std::uint64_t scanned_to, double epsilon) {
    if (upto < 2) {
        throw domain_error("series partial sums need upto >= 2");
    }
    SeriesLedger ledger;
    ledger.kind = kind;
    ledger.upto = upto;
    ledger.epsilon = epsilon;
    const double log2 = std::log(2.0);
    const double lu = std::log(static_cast<double>(upto));

    if (kind == SeriesKind::inv_pi) {
        if (scanned_to < upto) {
            throw insufficient_data("inv-pi series to " + std::to_string(upto) +
                                    " needs a scan covering it (have " +
                                    std::to_string(scanned_to) + ")");
        }
        std::size_t next = 0;
        std::uint64_t pi = 0;
        double sum = 0;
        for (std::uint64_t i = 1; i <= upto; ++i) {
            while (next < hits.size() && hits[next].m <= i) {
                ++pi;
                ++next;
            }
            if (pi > 0) {
                sum += 1.0 / static_cast<double>(pi);
            }
        }
        ledger.partial_sum = sum;
        ledger.comparator = 0.5 * lu * lu;
        return ledger;
    }

    if (hits.size() < upto) {
        throw insufficient_data("series to k = " + std::to_string(upto) + " needs " +
                                std::to_string(upto) + " hits, have " + std::to_string(hits.size()));
    }
    const double power = kind == SeriesKind::k_log2_over_q ? 2.0 : 2.0 - epsilon;
    if (kind == SeriesKind::k_log2eps_over_q && !(epsilon > 0)) {
        throw domain_error("the convergent series needs epsilon > 0");
    }
    double sum = 0;
    for (std::uint64_t k = 2; k <= upto; ++k) {
        const double kk = static_cast<double>(k);
        sum += kk * std::pow(std::log(kk), power) / to_double(hits[k - 1].q);
    }
    ledger.partial_sum = sum;
    if (kind == SeriesKind::k_log2_over_q) {
        ledger.comparator = std::log(lu) - std::log(log2);
    } else {
        ledger.comparator = 1.0 / (epsilon * std::pow(log2, epsilon));
    }
    return ledger;
}

}  // namespace psl
