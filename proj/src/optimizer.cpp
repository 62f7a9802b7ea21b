#include "polarsim/optimizer.hpp"

namespace polarsim {

namespace {

// Guard for the relative stopping rule when the previous SNR is zero.
constexpr double kTinySnr = 1e-300;

bool stop_reached(double prev, double cur, const AlternatingConfig& cfg) {
    const double inc = cur - prev;
    if (cfg.stop == StopRule::relative_increase)
        return inc < cfg.epsilon * std::max(prev, kTinySnr);
    return inc < cfg.epsilon;
}

}  // namespace

double optimal_receive_phase(const PolarizedChannel& ch, double theta) {
    const CVec2 b = ch.p * tx_pfv(theta);
    return optimal_phase_hermitian(outer(b, b));
}

double optimal_transmit_phase(const PolarizedChannel& ch, double phi) {
    const CVec2 d = ch.p.adjoint() * rx_pfv(phi);
    return optimal_phase_hermitian(outer(d, d));
}

SideResult receive_polarforming(const PolarizedChannel& ch, const CVec2& tx_fixed,
                                const LinkBudget& budget) {
    if (std::abs(tx_fixed.norm() - 1.0) > 1e-9)
        throw std::invalid_argument(
            "receive_polarforming: tx_fixed must be unit norm (transmit power constraint)");
    const CVec2 b = ch.p * tx_fixed;
    const double phi = optimal_phase_hermitian(outer(b, b));
    const Complex h = cdot(rx_pfv(phi), b);
    return {phi, std::norm(h), rate(snr(h, budget))};
}

SideResult transmit_polarforming(const PolarizedChannel& ch, const CVec2& rx_fixed,
                                 const LinkBudget& budget) {
    const CVec2 d = ch.p.adjoint() * rx_fixed;
    const double theta = optimal_phase_hermitian(outer(d, d));
    const Complex h = channel_response(ch.p, tx_pfv(theta), rx_fixed);
    return {theta, std::norm(h), rate(snr(h, budget))};
}

OptimTrace alternate(const PolarizedChannel& ch, const LinkBudget& budget,
                     const AlternatingConfig& cfg) {
    cfg.validate();
    double theta = wrap_2pi(cfg.theta0);
    double phi = wrap_2pi(cfg.phi0);

    auto snr_at = [&](double th, double ph) {
        return snr(channel_response(ch.p, tx_pfv(th), rx_pfv(ph)), budget);
    };

    OptimTrace trace;
    trace.iterations.reserve(static_cast<std::size_t>(cfg.i_max) + 1);
    double prev = snr_at(theta, phi);
    trace.iterations.push_back({0, theta, phi, prev, rate(prev)});

    for (int i = 1; i <= cfg.i_max; ++i) {
        phi = optimal_receive_phase(ch, theta);
        theta = optimal_transmit_phase(ch, phi);
        const double cur = snr_at(theta, phi);
        trace.iterations.push_back({i, theta, phi, cur, rate(cur)});
        const bool stop = stop_reached(prev, cur, cfg);
        prev = cur;
        if (stop) {
            trace.converged = true;
            break;
        }
    }
    trace.final_phases = PhasePair(theta, phi);
    return trace;
}

JointPolarforming polarforming_joint(const PolarizedChannel& ch, const LinkBudget& budget,
                                     const AlternatingConfig& cfg) {
    cfg.validate();
    double best_snr = -1.0;
    double best_rate = 0.0, best_theta = 0.0, best_phi = 0.0;
    auto consider = [&](const OptimTrace& trace) {
        for (const OptimIterate& it : trace.iterations) {
            if (it.snr > best_snr) {
                best_snr = it.snr;
                best_rate = it.rate_bps_hz;
                best_theta = it.theta;
                best_phi = it.phi;
            }
        }
    };
    consider(alternate(ch, budget, cfg));
    constexpr double kHalfPi = std::numbers::pi / 2.0;
    for (double theta0 : {kHalfPi, 3.0 * kHalfPi}) {
        for (double phi0 : {kHalfPi, 3.0 * kHalfPi}) {
            AlternatingConfig warm = cfg;
            warm.theta0 = theta0;
            warm.phi0 = phi0;
            consider(alternate(ch, budget, warm));
        }
    }
    const Complex h = channel_response(ch.p, tx_pfv(best_theta), rx_pfv(best_phi));
    return {PhasePair(best_theta, best_phi), std::norm(h), best_rate};
}

}  // namespace polarsim
