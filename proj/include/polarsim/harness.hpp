#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polarsim/benchmarks.hpp"

namespace polarsim {

/// Monte Carlo sweep configuration. Trial t draws its channel from
/// RngStream(master_seed, t), so every scheme and every SNR point sees the
/// identical realization (common random numbers). channel_source, when set,
/// replaces the default draw (test hook).
struct SweepSpec {
    std::vector<Scheme> schemes;
    std::vector<double> snr_grid_db;
    double chi = 0.2;
    int trials = 10000;
    std::uint64_t master_seed = 1;
    AlternatingConfig alt_cfg{};
    HiidNormalization hiid_norm = HiidNormalization::unit_entry_variance;
    int threads = 0;  // 0 = hardware concurrency; results never depend on it
    std::function<PolarizedChannel(std::uint64_t master_seed, std::uint64_t trial)> channel_source;

    void validate(bool need_schemes = true) const;
};

/// One averaged point of a rate-vs-SNR curve.
struct CurvePoint {
    std::string scheme;
    std::string side;
    double snr_db;
    double chi;
    int trials;
    double mean_rate_bps_hz;
    double stderr_bps_hz;
};

struct ConvergenceRow {
    double snr_db;
    int iteration;
    double mean_rate_bps_hz;
};

struct GainEntry {
    std::string benchmark;
    double target_rate_bps_hz;
    double snr_gain_db;
};

struct GainReport {
    double target_rate_bps_hz = 0.0;
    std::vector<GainEntry> gains;
};

/// Run trials over all (scheme, snr) pairs; one CurvePoint per pair, ordered
/// scheme-major then by ascending SNR. Deterministic for a given spec
/// regardless of thread count: per-trial results are stored by trial index
/// and reduced in that fixed order.
std::vector<CurvePoint> run_sweep(const SweepSpec& spec);

/// Mean achievable rate at each iteration of the alternating optimization
/// (0 = initial point), one row group per SNR value in spec.snr_grid_db.
/// After a trial converges its final rate is carried forward.
std::vector<ConvergenceRow> run_convergence(const SweepSpec& spec);

/// SNR (dB) at which a curve reaches the target rate, by piecewise-linear
/// interpolation of rate vs snr_db. Throws std::out_of_range naming the
/// curve when the target is not bracketed.
double snr_at_rate(const std::vector<CurvePoint>& curve, double target_rate);

/// SNR gain of the proposed curve over a benchmark at the target rate:
/// benchmark_snr_db - proposed_snr_db.
double snr_gain_at_rate(const std::vector<CurvePoint>& proposed,
                        const std::vector<CurvePoint>& benchmark, double target_rate);

/// Points of one (scheme, side) curve, in sweep order.
std::vector<CurvePoint> extract_curve(const std::vector<CurvePoint>& points,
                                      const std::string& scheme, const std::string& side);

/// Gains of the polarforming curve over every other scheme in `points`.
GainReport gains_vs_benchmarks(const std::vector<CurvePoint>& points, double target_rate);

// CSV writers. Deterministic bytes for identical inputs: UTF-8, LF line
// endings, floating values with 6 significant digits.
void write_curve_csv(const std::vector<CurvePoint>& points, const std::string& path);
void write_convergence_csv(const std::vector<ConvergenceRow>& rows, const std::string& path);
void write_gain_csv(const GainReport& report, const std::string& path);

std::string curve_csv(const std::vector<CurvePoint>& points);
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);
std::string gain_csv(const GainReport& report);

/// Run body(0..n-1) on a worker pool. Iteration order is unspecified; any
/// exception is rethrown in the caller.
void parallel_trials(int n, int threads, const std::function<void(int)>& body);

}  // namespace polarsim
