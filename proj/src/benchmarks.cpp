#include "polarsim/benchmarks.hpp"

#include <array>

namespace polarsim {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_fixed_presence(Side side, const std::optional<CVec2>& fixed, const char* who) {
    const bool need_fixed = side != Side::joint;
    if (need_fixed && !fixed.has_value())
        throw std::invalid_argument(std::string(who) +
                                    ": single-side scheme requires a fixed counterpart");
    if (!need_fixed && fixed.has_value())
        throw std::invalid_argument(std::string(who) +
                                    ": joint scheme must not carry a fixed counterpart");
}

SchemeResult make_result(const PolarizedChannel& ch, const CVec2& tx, const CVec2& rx,
                         const LinkBudget& budget) {
    const Complex h = channel_response(ch.p, tx, rx);
    return {std::norm(h), rate(snr(h, budget)), tx, rx};
}

}  // namespace

std::string to_string(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::polarforming: return "polarforming";
        case SchemeKind::spra: return "spra";
        case SchemeKind::paa: return "paa";
        case SchemeKind::cpa: return "cpa";
        case SchemeKind::lpa: return "lpa";
    }
    return "?";
}

std::string to_string(Side side) {
    switch (side) {
        case Side::tx_only: return "tx";
        case Side::rx_only: return "rx";
        case Side::joint: return "joint";
    }
    return "?";
}

CVec2 cpa_tx() { return tx_pfv(kHalfPi); }
CVec2 cpa_rx() { return rx_pfv(kHalfPi); }
CVec2 rhcp_tx() { return tx_pfv(3.0 * kHalfPi); }
CVec2 rhcp_rx() { return rx_pfv(3.0 * kHalfPi); }
CVec2 lpa_tx() { return {Complex(1.0, 0.0), Complex(0.0, 0.0)}; }
CVec2 lpa_rx() { return {Complex(1.0, 0.0), Complex(0.0, 0.0)}; }
CVec2 paa_vec(double angle) { return {Complex(std::cos(angle), 0.0), Complex(std::sin(angle), 0.0)}; }

SchemeResult spra_best(const PolarizedChannel& ch, Side side,
                       const std::optional<CVec2>& fixed, const LinkBudget& budget) {
    check_fixed_presence(side, fixed, "spra_best");
    const std::array<CVec2, 2> tx_states = {cpa_tx(), rhcp_tx()};   // LHCP first
    const std::array<CVec2, 2> rx_states = {cpa_rx(), rhcp_rx()};

    auto tx_candidates = [&]() -> std::array<CVec2, 2> {
        if (side == Side::rx_only) return {*fixed, *fixed};
        return tx_states;
    }();
    auto rx_candidates = [&]() -> std::array<CVec2, 2> {
        if (side == Side::tx_only) return {*fixed, *fixed};
        return rx_states;
    }();
    const std::size_t n_tx = side == Side::rx_only ? 1 : 2;
    const std::size_t n_rx = side == Side::tx_only ? 1 : 2;

    SchemeResult best{-1.0, 0.0, {}, {}};
    for (std::size_t i = 0; i < n_tx; ++i) {        // tx-major enumeration
        for (std::size_t k = 0; k < n_rx; ++k) {
            SchemeResult r = make_result(ch, tx_candidates[i], rx_candidates[k], budget);
            if (r.h2 > best.h2) best = r;
        }
    }
    return best;
}

AngleResult paa_best_angle(const CVec2& v) {
    // |q(a)^T v|^2 = q^T M q with M = Re(v v^H).
    const double m11 = std::norm(v.e0);
    const double m22 = std::norm(v.e1);
    const double m12 = (v.e0 * std::conj(v.e1)).real();
    if (m11 == 0.0 && m22 == 0.0) return {0.0, 0.0};
    double angle = 0.5 * std::atan2(2.0 * m12, m11 - m22);
    if (angle < 0.0) angle += std::numbers::pi;  // pi-ambiguity: report the smaller angle
    const CVec2 q = paa_vec(angle);
    const Complex proj = q.e0 * v.e0 + q.e1 * v.e1;
    return {angle, std::norm(proj)};
}

SchemeResult paa_best(const PolarizedChannel& ch, Side side,
                      const std::optional<CVec2>& fixed, const AlternatingConfig& cfg,
                      const LinkBudget& budget) {
    check_fixed_presence(side, fixed, "paa_best");
    cfg.validate();

    if (side == Side::tx_only) {
        // |fixed^H P q(alpha)|^2 = q^T Re(w w^H) q with w = P^H fixed.
        const CVec2 w = ch.p.adjoint() * (*fixed);
        const double alpha = paa_best_angle(w).angle;
        return make_result(ch, paa_vec(alpha), *fixed, budget);
    }
    if (side == Side::rx_only) {
        const CVec2 v = ch.p * (*fixed);
        const double beta = paa_best_angle(v).angle;
        return make_result(ch, *fixed, paa_vec(beta), budget);
    }

    // Joint: alternate the two closed-form angle updates. The bilinear
    // objective can hold two distinct alternation fixed points, so the
    // alternation runs from each principal angle pair and the best iterate
    // wins (ties to the earlier start).
    constexpr double kTiny = 1e-300;
    SchemeResult best{-1.0, 0.0, {}, {}};
    auto consider = [&](const SchemeResult& r) {
        if (r.h2 > best.h2) best = r;
    };
    for (double alpha0 : {0.0, kHalfPi}) {
        for (double beta0 : {0.0, kHalfPi}) {
            double alpha = alpha0;
            double beta = beta0;
            double prev = make_result(ch, paa_vec(alpha), paa_vec(beta), budget).h2;
            consider(make_result(ch, paa_vec(alpha), paa_vec(beta), budget));
            for (int i = 1; i <= cfg.i_max; ++i) {
                beta = paa_best_angle(ch.p * paa_vec(alpha)).angle;
                alpha = paa_best_angle(ch.p.adjoint() * paa_vec(beta)).angle;
                const SchemeResult cur = make_result(ch, paa_vec(alpha), paa_vec(beta), budget);
                consider(cur);
                const double inc = cur.h2 - prev;
                const bool stop = cfg.stop == StopRule::relative_increase
                                      ? inc < cfg.epsilon * std::max(prev, kTiny)
                                      : inc < cfg.epsilon;
                prev = cur.h2;
                if (stop) break;
            }
        }
    }
    return best;
}

SchemeResult fixed_scheme(const PolarizedChannel& ch, SchemeKind kind,
                          const LinkBudget& budget) {
    if (kind == SchemeKind::cpa) return make_result(ch, cpa_tx(), cpa_rx(), budget);
    if (kind == SchemeKind::lpa) return make_result(ch, lpa_tx(), lpa_rx(), budget);
    throw std::invalid_argument("fixed_scheme: kind must be cpa or lpa");
}

SchemeResult evaluate_scheme(const PolarizedChannel& ch, const Scheme& scheme,
                             const LinkBudget& budget, const AlternatingConfig& alt_cfg) {
    check_fixed_presence(scheme.side, scheme.fixed_counterpart, "evaluate_scheme");
    switch (scheme.kind) {
        case SchemeKind::polarforming: {
            if (scheme.side == Side::tx_only) {
                const SideResult r = transmit_polarforming(ch, *scheme.fixed_counterpart, budget);
                return {r.h2, r.rate_bps_hz, tx_pfv(r.phase), *scheme.fixed_counterpart};
            }
            if (scheme.side == Side::rx_only) {
                const SideResult r = receive_polarforming(ch, *scheme.fixed_counterpart, budget);
                return {r.h2, r.rate_bps_hz, *scheme.fixed_counterpart, rx_pfv(r.phase)};
            }
            const JointPolarforming r = polarforming_joint(ch, budget, alt_cfg);
            return {r.h2, r.rate_bps_hz, tx_pfv(r.phases.theta), rx_pfv(r.phases.phi)};
        }
        case SchemeKind::spra:
            return spra_best(ch, scheme.side, scheme.fixed_counterpart, budget);
        case SchemeKind::paa:
            return paa_best(ch, scheme.side, scheme.fixed_counterpart, alt_cfg, budget);
        case SchemeKind::cpa:
        case SchemeKind::lpa: {
            if (scheme.side == Side::joint) return fixed_scheme(ch, scheme.kind, budget);
            const CVec2 own_tx = scheme.kind == SchemeKind::cpa ? cpa_tx() : lpa_tx();
            const CVec2 own_rx = scheme.kind == SchemeKind::cpa ? cpa_rx() : lpa_rx();
            if (scheme.side == Side::tx_only)
                return make_result(ch, own_tx, *scheme.fixed_counterpart, budget);
            return make_result(ch, *scheme.fixed_counterpart, own_rx, budget);
        }
    }
    throw std::invalid_argument("evaluate_scheme: unknown scheme kind");
}

}  // namespace polarsim
