#include "polarsim/channel.hpp"

namespace polarsim {

namespace {

// Philox4x32 constants (Salmon et al., "Parallel random numbers: as easy as
// 1, 2, 3", SC 2011).
constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr, const std::uint32_t key[2]) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM4x32A) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM4x32B) * ctr[2];
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {}

std::array<std::uint32_t, 4> RngStream::block(std::uint64_t block_index) const {
    std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(block_index),
        static_cast<std::uint32_t>(block_index >> 32),
        static_cast<std::uint32_t>(stream_index_),
        static_cast<std::uint32_t>(stream_index_ >> 32),
    };
    std::uint32_t key[2] = {
        static_cast<std::uint32_t>(master_seed_),
        static_cast<std::uint32_t>(master_seed_ >> 32),
    };
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            key[0] += kPhiloxW32A;
            key[1] += kPhiloxW32B;
        }
        philox_round(ctr, key);
    }
    return ctr;
}

std::uint64_t RngStream::next_u64() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const auto out = block(block_index_++);
    spare_ = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    has_spare_ = true;
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

double RngStream::next_uniform() {
    // 53-bit mantissa, offset by half an ulp so the result is in (0,1).
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::pair<double, double> RngStream::next_normal_pair() {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = kTwoPi * u2;
    return {r * std::cos(a), r * std::sin(a)};
}

CMat2 xpd_matrix(double chi) {
    if (!(chi >= 0.0) || !std::isfinite(chi))
        throw std::invalid_argument("xpd_matrix: chi must be finite and >= 0");
    const double k = 1.0 / std::sqrt(chi + 1.0);
    const double ks = k * std::sqrt(chi);
    return {Complex(k, 0.0), Complex(ks, 0.0), Complex(ks, 0.0), Complex(k, 0.0)};
}

CMat2 draw_hiid(RngStream& stream, HiidNormalization norm) {
    // Per-component std 1/sqrt(2) gives unit variance per complex entry; the
    // alternative reading scales total entry variance to 1/sqrt(2).
    const double scale = norm == HiidNormalization::unit_entry_variance
                             ? kInvSqrt2
                             : kInvSqrt2 * 0.84089641525371454303;  // 2^(-1/4)
    auto entry = [&]() {
        const auto [re, im] = stream.next_normal_pair();
        return Complex(scale * re, scale * im);
    };
    CMat2 h;
    h.m11 = entry();
    h.m12 = entry();
    h.m21 = entry();
    h.m22 = entry();
    return h;
}

PolarizedChannel draw_channel(RngStream& stream, double chi, HiidNormalization norm) {
    return {xpd_matrix(chi).hadamard(draw_hiid(stream, norm)), chi};
}

}  // namespace polarsim
