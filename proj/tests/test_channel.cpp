#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polarsim/channel.hpp"

#include <cstring>

using namespace polarsim;
using doctest::Approx;

namespace {

bool bit_equal(const CMat2& a, const CMat2& b) {
    return std::memcmp(&a, &b, sizeof(CMat2)) == 0;
}

}  // namespace

TEST_CASE("xpd_matrix values") {
    const CMat2 none = xpd_matrix(0.0);
    CHECK(none.m11.real() == 1.0);
    CHECK(none.m12.real() == 0.0);
    CHECK(none.m21.real() == 0.0);
    CHECK(none.m22.real() == 1.0);

    const CMat2 full = xpd_matrix(1.0);
    CHECK(full.m11.real() == Approx(kInvSqrt2));
    CHECK(full.m12.real() == Approx(kInvSqrt2));

    const CMat2 weak = xpd_matrix(0.2);
    CHECK(weak.m11.real() == Approx(1.0 / std::sqrt(1.2)));
    CHECK(weak.m21.real() == Approx(std::sqrt(0.2) / std::sqrt(1.2)));
    CHECK(weak.m12.real() == weak.m21.real());

    CHECK_THROWS_AS(xpd_matrix(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(xpd_matrix(std::numeric_limits<double>::quiet_NaN()),
                    std::invalid_argument);
}

TEST_CASE("xpd_matrix has squared Frobenius norm 2 for any chi") {
    for (double chi : {0.0, 0.05, 0.2, 1.0, 3.0, 100.0})
        CHECK(xpd_matrix(chi).frobenius_norm_sq() == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("generator is pinned: philox4x32-10 blocks") {
    // Known-answer blocks frozen from the verified implementation; a change
    // in the generator breaks every seeded result in the project.
    const auto z = RngStream(0, 0).block(0);
    CHECK(z[0] == 0x6627e8d5u);
    CHECK(z[1] == 0xe169c58du);
    CHECK(z[2] == 0xbc57ac4cu);
    CHECK(z[3] == 0x9b00dbd8u);
}

TEST_CASE("identical (seed, index) reproduces the identical matrix") {
    RngStream a(42, 0);
    RngStream b(42, 0);
    const CMat2 ha = draw_hiid(a);
    const CMat2 hb = draw_hiid(b);
    CHECK(bit_equal(ha, hb));

    // second draw from the same stream differs, but replays identically
    const CMat2 ha2 = draw_hiid(a);
    CHECK_FALSE(bit_equal(ha, ha2));
    const CMat2 hb2 = draw_hiid(b);
    CHECK(bit_equal(ha2, hb2));
}

TEST_CASE("distinct streams and seeds decorrelate") {
    RngStream s0(42, 0), s1(42, 1), t0(43, 0);
    const CMat2 h0 = draw_hiid(s0);
    const CMat2 h1 = draw_hiid(s1);
    const CMat2 h2 = draw_hiid(t0);
    CHECK_FALSE(bit_equal(h0, h1));
    CHECK_FALSE(bit_equal(h0, h2));
}

TEST_CASE("H_iid entries are zero-mean unit-variance complex Gaussians") {
    RngStream stream(1234, 0);
    const int n_draws = 250000;  // 1e6 entries
    double sum_re = 0.0, sum_im = 0.0, sum_abs2 = 0.0;
    for (int i = 0; i < n_draws; ++i) {
        const CMat2 h = draw_hiid(stream);
        for (const Complex& e : {h.m11, h.m12, h.m21, h.m22}) {
            sum_re += e.real();
            sum_im += e.imag();
            sum_abs2 += std::norm(e);
        }
    }
    const double n = 4.0 * n_draws;
    CHECK(sum_abs2 / n == Approx(1.0).epsilon(0.01));
    CHECK(std::abs(sum_re / n) < 0.01);
    CHECK(std::abs(sum_im / n) < 0.01);
}

TEST_CASE("alternative normalization halves the entry power by sqrt(2)") {
    RngStream stream(1234, 0);
    double sum_abs2 = 0.0;
    const int n_draws = 100000;
    for (int i = 0; i < n_draws; ++i) {
        const CMat2 h = draw_hiid(stream, HiidNormalization::entry_variance_inv_sqrt2);
        sum_abs2 += h.frobenius_norm_sq();
    }
    CHECK(sum_abs2 / (4.0 * n_draws) == Approx(kInvSqrt2).epsilon(0.01));
}

TEST_CASE("chi = 0 channels are exactly diagonal") {
    for (std::uint64_t t = 0; t < 100; ++t) {
        RngStream stream(9, t);
        const PolarizedChannel ch = draw_channel(stream, 0.0);
        CHECK(ch.p.m12 == Complex(0.0, 0.0));
        CHECK(ch.p.m21 == Complex(0.0, 0.0));
        CHECK(ch.chi == 0.0);
    }
}

TEST_CASE("channel statistics at chi = 0.2") {
    const double chi = 0.2;
    const int n = 100000;
    double sum_fro = 0.0;
    double sum_diag = 0.0, sum_off = 0.0;
    for (int t = 0; t < n; ++t) {
        RngStream stream(2025, static_cast<std::uint64_t>(t));
        const PolarizedChannel ch = draw_channel(stream, chi);
        sum_fro += ch.p.frobenius_norm_sq();
        sum_diag += std::norm(ch.p.m11) + std::norm(ch.p.m22);
        sum_off += std::norm(ch.p.m12) + std::norm(ch.p.m21);
    }
    CHECK(sum_fro / n == Approx(2.0).epsilon(0.01));           // E||P||_F^2 = 2
    CHECK(sum_off / sum_diag == Approx(chi).epsilon(0.05));    // variance ratio = chi
}

TEST_CASE("uniforms live in (0,1)") {
    RngStream stream(5, 5);
    for (int i = 0; i < 100000; ++i) {
        const double u = stream.next_uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}
