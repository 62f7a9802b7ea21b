#pragma once

#include <optional>
#include <string>

#include "polarsim/optimizer.hpp"

namespace polarsim {

enum class SchemeKind { polarforming, spra, paa, cpa, lpa };
enum class Side { tx_only, rx_only, joint };

std::string to_string(SchemeKind kind);
std::string to_string(Side side);

/// One antenna scheme placement: which antenna technology adapts, on which
/// side, and (for single-side placements) the fixed antenna on the other
/// side. CPA/LPA never adapt; their side only selects which of their quoted
/// vectors pairs with the counterpart.
struct Scheme {
    SchemeKind kind = SchemeKind::polarforming;
    Side side = Side::joint;
    std::optional<CVec2> fixed_counterpart;
};

/// Achievable rate of one realization together with the polarization
/// configuration that achieved it.
struct SchemeResult {
    double h2;
    double rate_bps_hz;
    CVec2 tx;
    CVec2 rx;
};

struct AngleResult {
    double angle;   // [0, pi); linear polarization is pi-periodic in |h|^2
    double value;   // |[cos a, sin a] . v|^2 at the optimum
};

// Quoted benchmark polarization vectors. LHCP/RHCP are the PFVs at +-pi/2 so
// that containment of SPRA/CPA inside the polarforming search space is exact.
CVec2 cpa_tx();   // (1/sqrt(2)) [1, j]
CVec2 cpa_rx();   // [1, j]
CVec2 rhcp_tx();  // (1/sqrt(2)) [1, -j]
CVec2 rhcp_rx();  // [1, -j]
CVec2 lpa_tx();   // [1, 0]
CVec2 lpa_rx();   // [1, 0]
CVec2 paa_vec(double angle);  // [cos a, sin a]

/// Best switchable-PRA configuration: exhaustive search over LHCP/RHCP on
/// the adaptive side(s); ties go to the first enumerated state (LHCP first,
/// tx-major). fixed must be present iff side != joint.
SchemeResult spra_best(const PolarizedChannel& ch, Side side,
                       const std::optional<CVec2>& fixed, const LinkBudget& budget);

/// Closed-form best linear-polarization angle for |[cos a, sin a] . v|^2:
/// a* = (1/2) atan2(2 M12, M11 - M22) with M = Re(v v^H), achieving
/// lambda_max(M). v = 0 returns angle 0 with value 0.
AngleResult paa_best_angle(const CVec2& v);

/// Best polarization-agile-antenna configuration. Single side: one
/// closed-form angle. Joint: alternating closed-form angle updates under the
/// same stopping rule as the polarforming algorithm, run from each principal
/// angle pair (alpha, beta in {0, pi/2}) with the best iterate kept, so the
/// result dominates the fixed linear configuration on every realization.
SchemeResult paa_best(const PolarizedChannel& ch, Side side,
                      const std::optional<CVec2>& fixed, const AlternatingConfig& cfg,
                      const LinkBudget& budget);

/// Fixed-antenna baselines with the quoted vectors at both ends (kind must
/// be cpa or lpa).
SchemeResult fixed_scheme(const PolarizedChannel& ch, SchemeKind kind,
                          const LinkBudget& budget);

/// Evaluate any scheme placement on one channel realization.
SchemeResult evaluate_scheme(const PolarizedChannel& ch, const Scheme& scheme,
                             const LinkBudget& budget, const AlternatingConfig& alt_cfg);

}  // namespace polarsim
