#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "polarsim/polarcore.hpp"

#include <limits>
#include <random>

using namespace polarsim;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("wrap_2pi canonicalizes into [0, 2pi)") {
    CHECK(wrap_2pi(0.0) == 0.0);
    CHECK(wrap_2pi(kTwoPi) == 0.0);
    CHECK(wrap_2pi(-kPi) == Approx(kPi));
    CHECK(wrap_2pi(5.0 * kPi) == Approx(kPi));
    CHECK(wrap_2pi(-1e-17) < kTwoPi);
    CHECK(wrap_2pi(-1e-17) >= 0.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int i = 0; i < 1000; ++i) {
        const double w = wrap_2pi(u(rng));
        CHECK(w >= 0.0);
        CHECK(w < kTwoPi);
    }
}

TEST_CASE("tx_pfv values and unit norm") {
    const CVec2 f0 = tx_pfv(0.0);
    CHECK(f0.e0.real() == Approx(kInvSqrt2));
    CHECK(f0.e1.real() == Approx(kInvSqrt2));
    CHECK(f0.e1.imag() == Approx(0.0));

    // theta = pi/2 is the CPA transmit vector (1/sqrt(2))[1, j]
    const CVec2 fq = tx_pfv(kPi / 2.0);
    CHECK(fq.e1.real() == Approx(0.0).epsilon(1e-15));
    CHECK(fq.e1.imag() == Approx(kInvSqrt2));

    const CVec2 fp = tx_pfv(kPi);
    CHECK(fp.e1.real() == Approx(-kInvSqrt2));

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (int i = 0; i < 200; ++i) CHECK(tx_pfv(u(rng)).norm() == Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(tx_pfv(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
    CHECK_THROWS_AS(tx_pfv(std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST_CASE("rx_pfv values and sqrt(2) norm") {
    const CVec2 g0 = rx_pfv(0.0);
    CHECK(g0.e0 == Complex(1.0, 0.0));
    CHECK(g0.e1.real() == Approx(1.0));

    const CVec2 gq = rx_pfv(kPi / 2.0);  // CPA receive vector [1, j]
    CHECK(gq.e1.imag() == Approx(1.0));

    const CVec2 gm = rx_pfv(3.0 * kPi / 2.0);
    CHECK(gm.e1.imag() == Approx(-1.0));

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (int i = 0; i < 200; ++i)
        CHECK(rx_pfv(u(rng)).norm() == Approx(std::numbers::sqrt2).epsilon(1e-15));

    CHECK_THROWS_AS(rx_pfv(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
}

TEST_CASE("channel_response basics") {
    const CMat2 eye = CMat2::identity();
    CHECK(channel_response(eye, tx_pfv(0.0), rx_pfv(0.0)).real() ==
          Approx(std::numbers::sqrt2));

    const CMat2 only11{1.0, 0.0, 0.0, 0.0};
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (int i = 0; i < 50; ++i) {
        const Complex h = channel_response(only11, tx_pfv(u(rng)), rx_pfv(u(rng)));
        CHECK(std::abs(h - Complex(kInvSqrt2, 0.0)) < 1e-15);
    }
}

TEST_CASE("channel_response matches the scalar expansion") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (int i = 0; i < 500; ++i) {
        const CMat2 p = oracles::random_matrix(rng);
        const double theta = u(rng);
        const double phi = u(rng);
        const Complex h = channel_response(p, tx_pfv(theta), rx_pfv(phi));
        const Complex h_ref = oracles::scalar_expansion_response(p, theta, phi);
        CHECK(std::abs(h - h_ref) < 1e-12 * (1.0 + std::abs(h_ref)));
    }
}

TEST_CASE("channel_response is linear in f and conjugate-linear in g") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const CMat2 p = oracles::random_matrix(rng);
        const CVec2 f = oracles::random_vector(rng);
        const CVec2 g = oracles::random_vector(rng);
        const Complex a = oracles::random_cgauss(rng);
        const Complex h = channel_response(p, f, g);
        CHECK(std::abs(channel_response(p, a * f, g) - a * h) < 1e-12 * (1.0 + std::abs(h)));
        CHECK(std::abs(channel_response(p, f, a * g) - std::conj(a) * h) <
              1e-12 * (1.0 + std::abs(h)));
    }
}

TEST_CASE("snr examples and scale invariance") {
    CHECK(snr(Complex(std::numbers::sqrt2, 0.0), LinkBudget(1.0, 1.0)) == Approx(2.0));
    CHECK(snr(Complex(0.0, 0.0), LinkBudget(1.0, 1.0)) == 0.0);
    CHECK(snr(Complex(1.0, 1.0), LinkBudget(2.0, 0.5)) == Approx(8.0));

    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int i = 0; i < 100; ++i) {
        const Complex h = oracles::random_cgauss(rng);
        const double pt = u(rng), s2 = u(rng), scale = u(rng);
        CHECK(snr(h, LinkBudget(scale * pt, scale * s2)) ==
              Approx(snr(h, LinkBudget(pt, s2))).epsilon(1e-12));
    }
}

TEST_CASE("rate examples, monotonicity, domain") {
    CHECK(rate(0.0) == 0.0);
    CHECK(rate(3.0) == Approx(2.0));
    CHECK(rate(15.0) == Approx(4.0));
    CHECK_THROWS_AS(rate(-1e-9), std::invalid_argument);
    CHECK_THROWS_AS(rate(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    for (int i = 0; i < 200; ++i) {
        double a = u(rng), b = u(rng);
        if (a > b) std::swap(a, b);
        CHECK(rate(a) <= rate(b));
    }
}

TEST_CASE("LinkBudget validation") {
    CHECK_THROWS_AS(LinkBudget(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(LinkBudget(1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(LinkBudget(std::numeric_limits<double>::quiet_NaN(), 1.0),
                    std::invalid_argument);
    CHECK(LinkBudget::from_snr_db(10.0).rho() == Approx(10.0));
}

TEST_CASE("PhasePair canonicalizes both phases") {
    const PhasePair p(-kPi / 2.0, 7.0 * kPi);
    CHECK(p.theta == Approx(1.5 * kPi));
    CHECK(p.phi == Approx(kPi));
}

TEST_CASE("optimal_phase_hermitian closed form") {
    const CMat2 w{Complex(2.0, 0.0), Complex(0.0, -1.0), Complex(0.0, 1.0), Complex(3.0, 0.0)};
    CHECK(optimal_phase_hermitian(w) == Approx(kPi / 2.0));

    CHECK(optimal_phase_hermitian(CMat2::identity()) == 0.0);  // tie-break: m21 = 0

    const CMat2 bad{Complex(1.0, 0.0), Complex(1.0, 0.0), Complex(0.5, 0.0), Complex(1.0, 0.0)};
    CHECK_THROWS_AS(optimal_phase_hermitian(bad), std::invalid_argument);
    const CMat2 bad_diag{Complex(1.0, 1e-6), Complex(0.0, 0.0), Complex(0.0, 0.0),
                         Complex(1.0, 0.0)};
    CHECK_THROWS_AS(optimal_phase_hermitian(bad_diag), std::invalid_argument);
}

TEST_CASE("optimal_phase_hermitian beats a dense grid") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 50; ++i) {
        const CMat2 w = oracles::random_hermitian(rng);
        const double psi = optimal_phase_hermitian(w);
        const double achieved = oracles::quad_form(w, psi).real();
        CHECK(achieved >= oracles::grid_max_quad_form(w, 100000) - 1e-6);
    }
}

TEST_CASE("quadratic form properties for Hermitian matrices") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (int i = 0; i < 200; ++i) {
        const CMat2 w = oracles::random_hermitian(rng);
        const double psi_star = optimal_phase_hermitian(w);
        const double best = oracles::quad_form(w, psi_star).real();
        for (int k = 0; k < 20; ++k) {
            const Complex q = oracles::quad_form(w, u(rng));
            CHECK(std::abs(q.imag()) < 1e-12 * (1.0 + std::abs(q.real())));  // real-valued form
            CHECK(best >= q.real() - 1e-12 * (1.0 + std::abs(q.real())));
        }
        // expanded form: value equals 2|c| + a + d at the optimum
        const double direct =
            2.0 * std::abs(w.m21) + w.m11.real() + w.m22.real();
        CHECK(best == Approx(direct).epsilon(1e-12));
    }
}
