#pragma once

#include <vector>

#include "polarsim/channel.hpp"
#include "polarsim/polarcore.hpp"

namespace polarsim {

/// Stopping rule for the alternating optimization. The default compares the
/// per-iteration SNR increase relative to the previous value; the absolute
/// variant compares the raw increase against epsilon.
enum class StopRule {
    relative_increase,
    absolute_increase,
};

struct AlternatingConfig {
    double epsilon = 1e-3;
    int i_max = 20;
    double theta0 = 0.0;
    double phi0 = 0.0;
    StopRule stop = StopRule::relative_increase;

    void validate() const {
        if (!(epsilon > 0.0))
            throw std::invalid_argument("AlternatingConfig: epsilon must be > 0");
        if (i_max < 1)
            throw std::invalid_argument("AlternatingConfig: i_max must be >= 1");
        if (!std::isfinite(theta0) || !std::isfinite(phi0))
            throw std::invalid_argument("AlternatingConfig: initial phases must be finite");
    }
};

struct OptimIterate {
    int iteration;
    double theta;
    double phi;
    double snr;           // linear
    double rate_bps_hz;
};

/// Full iteration history of the alternating optimization, including the
/// initial point as iteration 0. The snr sequence is non-decreasing.
struct OptimTrace {
    std::vector<OptimIterate> iterations;
    bool converged = false;
    PhasePair final_phases;
};

/// Phase and achieved value of a single-side polarforming solution.
struct SideResult {
    double phase;         // optimal theta (transmit) or phi (receive), [0, 2*pi)
    double h2;            // |h|^2 at the optimum
    double rate_bps_hz;
};

/// Optimal receive phase shift for a fixed transmit phase:
/// phi* = arg([P f(theta) f(theta)^H P^H]_21).
double optimal_receive_phase(const PolarizedChannel& ch, double theta);

/// Optimal transmit phase shift for a fixed receive phase:
/// theta* = arg([P^H g(phi) g(phi)^H P]_21).
double optimal_transmit_phase(const PolarizedChannel& ch, double phi);

/// Receive polarforming: PS-based PRA at the receiver, fixed antenna at the
/// transmitter. tx_fixed must be unit norm (transmit power constraint).
SideResult receive_polarforming(const PolarizedChannel& ch, const CVec2& tx_fixed,
                                const LinkBudget& budget);

/// Transmit polarforming: PS-based PRA at the transmitter, fixed antenna at
/// the receiver (no norm constraint on the receive side).
SideResult transmit_polarforming(const PolarizedChannel& ch, const CVec2& rx_fixed,
                                 const LinkBudget& budget);

/// Alternating optimization of (theta, phi). Each iteration updates phi via
/// the closed-form receive solution, then theta via the transmit solution;
/// stops once the SNR increase falls below cfg.epsilon (relative by default)
/// or after cfg.i_max iterations.
OptimTrace alternate(const PolarizedChannel& ch, const LinkBudget& budget,
                     const AlternatingConfig& cfg);

struct JointPolarforming {
    PhasePair phases;
    double h2;
    double rate_bps_hz;
};

/// Joint polarforming solution as deployed by the rate sweeps: the
/// alternating optimization run from the configured start and once more from
/// each circular phase pair (theta, phi in {pi/2, 3pi/2}), keeping the best
/// iterate seen (ties to the earlier run). The objective can hold two
/// alternation fixed points; the circular restarts keep the result off the
/// lower one, so it dominates every switched- or fixed-circular
/// configuration on every realization.
JointPolarforming polarforming_joint(const PolarizedChannel& ch, const LinkBudget& budget,
                                     const AlternatingConfig& cfg);

}  // namespace polarsim
