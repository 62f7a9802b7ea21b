#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace polarsim {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kInvSqrt2 = 0.70710678118654752440;

/// Tolerance for the entrywise Hermitian check on 2x2 matrices. All matrices
/// passed to the closed-form phase solver are v*v^H sandwiches, Hermitian by
/// construction; the check guards caller misuse.
inline constexpr double kHermitianTol = 1e-9;

/// Reduce an angle to the canonical interval [0, 2*pi).
inline double wrap_2pi(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;  // fmod(-tiny) + 2*pi can round up to 2*pi
    return r + 0.0;            // flush -0.0
}

/// Complex 2-vector. Carries polarization vectors (PFVs, FPA states) and
/// effective channel vectors.
struct CVec2 {
    Complex e0{};
    Complex e1{};

    double norm_sq() const { return std::norm(e0) + std::norm(e1); }
    double norm() const { return std::sqrt(norm_sq()); }
    CVec2 conjugate() const { return {std::conj(e0), std::conj(e1)}; }
    bool finite() const {
        return std::isfinite(e0.real()) && std::isfinite(e0.imag()) &&
               std::isfinite(e1.real()) && std::isfinite(e1.imag());
    }
};

inline CVec2 operator*(const Complex& a, const CVec2& v) { return {a * v.e0, a * v.e1}; }
inline CVec2 operator+(const CVec2& x, const CVec2& y) { return {x.e0 + y.e0, x.e1 + y.e1}; }

/// Inner product conjugating the first argument: x^H y.
inline Complex cdot(const CVec2& x, const CVec2& y) {
    return std::conj(x.e0) * y.e0 + std::conj(x.e1) * y.e1;
}

/// Complex 2x2 matrix, row-major entries m11 m12 / m21 m22.
struct CMat2 {
    Complex m11{};
    Complex m12{};
    Complex m21{};
    Complex m22{};

    static CMat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    CMat2 adjoint() const {
        return {std::conj(m11), std::conj(m21), std::conj(m12), std::conj(m22)};
    }
    CMat2 hadamard(const CMat2& o) const {
        return {m11 * o.m11, m12 * o.m12, m21 * o.m21, m22 * o.m22};
    }
    double frobenius_norm_sq() const {
        return std::norm(m11) + std::norm(m12) + std::norm(m21) + std::norm(m22);
    }
    bool is_hermitian(double tol) const {
        return std::abs(m11.imag()) <= tol && std::abs(m22.imag()) <= tol &&
               std::abs(m21 - std::conj(m12)) <= tol;
    }
    bool finite() const {
        return std::isfinite(m11.real()) && std::isfinite(m11.imag()) &&
               std::isfinite(m12.real()) && std::isfinite(m12.imag()) &&
               std::isfinite(m21.real()) && std::isfinite(m21.imag()) &&
               std::isfinite(m22.real()) && std::isfinite(m22.imag());
    }
};

inline CVec2 operator*(const CMat2& m, const CVec2& v) {
    return {m.m11 * v.e0 + m.m12 * v.e1, m.m21 * v.e0 + m.m22 * v.e1};
}

/// Outer product u v^H.
inline CMat2 outer(const CVec2& u, const CVec2& v) {
    return {u.e0 * std::conj(v.e0), u.e0 * std::conj(v.e1),
            u.e1 * std::conj(v.e0), u.e1 * std::conj(v.e1)};
}

/// Transmit/receive phase-shifter settings, canonicalized to [0, 2*pi).
struct PhasePair {
    double theta = 0.0;
    double phi = 0.0;

    PhasePair() = default;
    PhasePair(double theta_in, double phi_in)
        : theta(wrap_2pi(theta_in)), phi(wrap_2pi(phi_in)) {}
};

/// Transmit power and noise power (linear units).
struct LinkBudget {
    double pt = 1.0;
    double sigma2 = 1.0;

    LinkBudget() = default;
    LinkBudget(double pt_in, double sigma2_in) : pt(pt_in), sigma2(sigma2_in) {
        if (!(pt > 0.0) || !std::isfinite(pt))
            throw std::invalid_argument("LinkBudget: pt must be positive and finite");
        if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
            throw std::invalid_argument("LinkBudget: sigma2 must be positive and finite");
    }

    /// Budget with pt/sigma2 equal to the given average SNR in dB.
    static LinkBudget from_snr_db(double snr_db) {
        return LinkBudget(std::pow(10.0, snr_db / 10.0), 1.0);
    }

    double rho() const { return pt / sigma2; }
};

/// Transmit polarforming vector f(theta) = (1/sqrt(2)) [1, e^{j theta}]^T.
/// Unit norm (transmit power constraint).
CVec2 tx_pfv(double theta);

/// Receive polarforming vector g(phi) = [1, e^{j phi}]^T, norm sqrt(2).
/// No receive-side normalization.
CVec2 rx_pfv(double phi);

/// Overall channel response h = g^H P f.
Complex channel_response(const CMat2& p, const CVec2& f, const CVec2& g);

/// Receive SNR |h|^2 * pt / sigma2.
double snr(const Complex& h, const LinkBudget& budget);

/// Achievable rate log2(1 + gamma) in bits/s/Hz.
double rate(double gamma);

/// Closed-form maximizer of p(psi)^H W p(psi) over psi for Hermitian W,
/// with p(psi) = [1, e^{j psi}]^T. Writing W = [a, c*; c, d], the form equals
/// 2|c| cos(psi - arg c) + a + d, so the optimum is psi* = arg([W]_21),
/// returned in [0, 2*pi). Convention: [W]_21 == 0 makes every psi optimal
/// and 0 is returned. Throws std::invalid_argument if W is not Hermitian
/// within kHermitianTol.
double optimal_phase_hermitian(const CMat2& w);

}  // namespace polarsim
