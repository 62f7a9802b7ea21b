#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "polarsim/polarcore.hpp"

namespace polarsim {

/// One realization of the polarized channel P = Psi (.) H_iid together with
/// the inverse XPD chi that generated it.
struct PolarizedChannel {
    CMat2 p{};
    double chi = 0.0;
};

/// How the per-entry variance of H_iid is read off the channel model.
/// unit_entry_variance: real and imaginary parts each have std 1/sqrt(2),
/// i.e. unit variance per complex entry, so E||P||_F^2 = 2 and the average
/// SNR depends only on pt/sigma2. entry_variance_inv_sqrt2 is the alternative
/// reading (total per-entry variance 1/sqrt(2)), kept for sensitivity checks.
enum class HiidNormalization {
    unit_entry_variance,
    entry_variance_inv_sqrt2,
};

/// Counter-based random stream: Philox4x32-10 keyed by the master seed, with
/// the 128-bit counter split into (block index, stream index). A stream is a
/// cheap value type; identical (master_seed, stream_index) always reproduce
/// the identical draw sequence, regardless of thread count or execution
/// order, which is what makes parallel Monte Carlo trials reproducible.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t next_u64();
    /// Uniform double in the open interval (0,1), 53 significant bits.
    double next_uniform();
    /// Two independent standard normals (Box-Muller).
    std::pair<double, double> next_normal_pair();

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    /// Raw 128-bit generator output for the given block index (does not
    /// advance the stream). Exposed so tests can pin the generator.
    std::array<std::uint32_t, 4> block(std::uint64_t block_index) const;

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::uint64_t block_index_ = 0;
    std::uint64_t spare_ = 0;
    bool has_spare_ = false;
};

/// Depolarization matrix Psi = (1/sqrt(chi+1)) [[1, sqrt(chi)], [sqrt(chi), 1]].
/// chi is the inverse cross-polarization discrimination, chi >= 0.
CMat2 xpd_matrix(double chi);

/// One draw of H_iid: four i.i.d. circularly-symmetric complex Gaussian
/// entries (order m11, m12, m21, m22).
CMat2 draw_hiid(RngStream& stream,
                HiidNormalization norm = HiidNormalization::unit_entry_variance);

/// One polarized channel realization P = Psi (.) H_iid.
PolarizedChannel draw_channel(RngStream& stream, double chi,
                              HiidNormalization norm = HiidNormalization::unit_entry_variance);

}  // namespace polarsim
