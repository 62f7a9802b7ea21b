#include "polarsim/polarcore.hpp"

namespace polarsim {

CVec2 tx_pfv(double theta) {
    if (!std::isfinite(theta))
        throw std::invalid_argument("tx_pfv: theta must be finite");
    return {Complex(kInvSqrt2, 0.0), std::polar(kInvSqrt2, theta)};
}

CVec2 rx_pfv(double phi) {
    if (!std::isfinite(phi))
        throw std::invalid_argument("rx_pfv: phi must be finite");
    return {Complex(1.0, 0.0), std::polar(1.0, phi)};
}

Complex channel_response(const CMat2& p, const CVec2& f, const CVec2& g) {
    return cdot(g, p * f);
}

double snr(const Complex& h, const LinkBudget& budget) {
    return std::norm(h) * budget.pt / budget.sigma2;
}

double rate(double gamma) {
    if (!(gamma >= 0.0))
        throw std::invalid_argument("rate: gamma must be non-negative");
    return std::log2(1.0 + gamma);
}

double optimal_phase_hermitian(const CMat2& w) {
    if (!w.is_hermitian(kHermitianTol))
        throw std::invalid_argument("optimal_phase_hermitian: matrix is not Hermitian");
    const Complex c = w.m21;
    if (std::abs(c) == 0.0) return 0.0;  // cosine term vanishes, every psi optimal
    return wrap_2pi(std::arg(c));
}

}  // namespace polarsim
