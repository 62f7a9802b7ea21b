#include "polarsim/harness.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

namespace polarsim {

namespace {

PolarizedChannel trial_channel(const SweepSpec& spec, std::uint64_t trial) {
    if (spec.channel_source) return spec.channel_source(spec.master_seed, trial);
    RngStream stream(spec.master_seed, trial);
    return draw_channel(stream, spec.chi, spec.hiid_norm);
}

// Kahan-compensated sum over a fixed index order.
double compensated_sum(const double* values, std::size_t n) {
    double sum = 0.0;
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = values[i] - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

std::string fmt_g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void SweepSpec::validate(bool need_schemes) const {
    if (need_schemes && schemes.empty())
        throw std::invalid_argument("SweepSpec: schemes must not be empty");
    for (const Scheme& s : schemes) {
        const bool need_fixed = s.side != Side::joint;
        if (need_fixed != s.fixed_counterpart.has_value())
            throw std::invalid_argument("SweepSpec: scheme '" + to_string(s.kind) +
                                        "' has a fixed counterpart iff side is tx or rx");
    }
    if (snr_grid_db.empty())
        throw std::invalid_argument("SweepSpec: snr_grid_db must not be empty");
    for (std::size_t i = 0; i < snr_grid_db.size(); ++i) {
        if (!std::isfinite(snr_grid_db[i]))
            throw std::invalid_argument("SweepSpec: snr_grid_db values must be finite");
        if (i > 0 && !(snr_grid_db[i] > snr_grid_db[i - 1]))
            throw std::invalid_argument("SweepSpec: snr_grid_db must be strictly increasing");
    }
    if (!(chi >= 0.0) || !std::isfinite(chi))
        throw std::invalid_argument("SweepSpec: chi must be finite and >= 0");
    if (trials < 1)
        throw std::invalid_argument("SweepSpec: trials must be >= 1");
    if (threads < 0)
        throw std::invalid_argument("SweepSpec: threads must be >= 0");
    alt_cfg.validate();
}

void parallel_trials(int n, int threads, const std::function<void(int)>& body) {
    int nt = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (nt < 1) nt = 1;
    if (nt > n) nt = n;
    if (nt <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n, std::memory_order_relaxed);  // drain remaining work
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::vector<CurvePoint> run_sweep(const SweepSpec& spec) {
    spec.validate();
    const std::size_t n_schemes = spec.schemes.size();
    const std::size_t n_snr = spec.snr_grid_db.size();
    const std::size_t n_trials = static_cast<std::size_t>(spec.trials);

    std::vector<LinkBudget> budgets;
    budgets.reserve(n_snr);
    for (double db : spec.snr_grid_db) budgets.push_back(LinkBudget::from_snr_db(db));

    // rates[(s * n_snr + k) * n_trials + t]
    std::vector<double> rates(n_schemes * n_snr * n_trials);
    parallel_trials(spec.trials, spec.threads, [&](int t) {
        const PolarizedChannel ch = trial_channel(spec, static_cast<std::uint64_t>(t));
        for (std::size_t s = 0; s < n_schemes; ++s) {
            for (std::size_t k = 0; k < n_snr; ++k) {
                const SchemeResult r =
                    evaluate_scheme(ch, spec.schemes[s], budgets[k], spec.alt_cfg);
                rates[(s * n_snr + k) * n_trials + t] = r.rate_bps_hz;
            }
        }
    });

    std::vector<CurvePoint> points;
    points.reserve(n_schemes * n_snr);
    for (std::size_t s = 0; s < n_schemes; ++s) {
        for (std::size_t k = 0; k < n_snr; ++k) {
            const double* vals = &rates[(s * n_snr + k) * n_trials];
            const double mean = compensated_sum(vals, n_trials) / static_cast<double>(n_trials);
            double se = 0.0;
            if (n_trials > 1) {
                std::vector<double> sq(n_trials);
                for (std::size_t t = 0; t < n_trials; ++t) {
                    const double d = vals[t] - mean;
                    sq[t] = d * d;
                }
                const double m2 = compensated_sum(sq.data(), n_trials);
                se = std::sqrt(m2 / static_cast<double>(n_trials - 1) /
                               static_cast<double>(n_trials));
            }
            points.push_back({to_string(spec.schemes[s].kind), to_string(spec.schemes[s].side),
                              spec.snr_grid_db[k], spec.chi, spec.trials, mean, se});
        }
    }
    return points;
}

std::vector<ConvergenceRow> run_convergence(const SweepSpec& spec) {
    spec.validate(/*need_schemes=*/false);
    const std::size_t n_snr = spec.snr_grid_db.size();
    const std::size_t n_iter = static_cast<std::size_t>(spec.alt_cfg.i_max) + 1;
    const std::size_t n_trials = static_cast<std::size_t>(spec.trials);

    std::vector<LinkBudget> budgets;
    budgets.reserve(n_snr);
    for (double db : spec.snr_grid_db) budgets.push_back(LinkBudget::from_snr_db(db));

    // rates[(k * n_iter + i) * n_trials + t], final value carried forward
    std::vector<double> rates(n_snr * n_iter * n_trials);
    parallel_trials(spec.trials, spec.threads, [&](int t) {
        const PolarizedChannel ch = trial_channel(spec, static_cast<std::uint64_t>(t));
        for (std::size_t k = 0; k < n_snr; ++k) {
            const OptimTrace trace = alternate(ch, budgets[k], spec.alt_cfg);
            for (std::size_t i = 0; i < n_iter; ++i) {
                const std::size_t j = i < trace.iterations.size() ? i : trace.iterations.size() - 1;
                rates[(k * n_iter + i) * n_trials + t] = trace.iterations[j].rate_bps_hz;
            }
        }
    });

    std::vector<ConvergenceRow> rows;
    rows.reserve(n_snr * n_iter);
    for (std::size_t k = 0; k < n_snr; ++k) {
        for (std::size_t i = 0; i < n_iter; ++i) {
            const double* vals = &rates[(k * n_iter + i) * n_trials];
            const double mean = compensated_sum(vals, n_trials) / static_cast<double>(n_trials);
            rows.push_back({spec.snr_grid_db[k], static_cast<int>(i), mean});
        }
    }
    return rows;
}

double snr_at_rate(const std::vector<CurvePoint>& curve, double target_rate) {
    if (curve.empty()) throw std::invalid_argument("snr_at_rate: empty curve");
    const std::string name = curve.front().scheme + "/" + curve.front().side;
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        const double r0 = curve[i].mean_rate_bps_hz;
        const double r1 = curve[i + 1].mean_rate_bps_hz;
        if (r0 == target_rate) return curve[i].snr_db;
        if ((r0 < target_rate && target_rate <= r1) || (r0 > target_rate && target_rate >= r1)) {
            const double f = (target_rate - r0) / (r1 - r0);
            return curve[i].snr_db + f * (curve[i + 1].snr_db - curve[i].snr_db);
        }
    }
    if (curve.back().mean_rate_bps_hz == target_rate) return curve.back().snr_db;
    throw std::out_of_range("snr_at_rate: curve '" + name + "' does not bracket target rate " +
                            fmt_g6(target_rate) + " bps/Hz");
}

double snr_gain_at_rate(const std::vector<CurvePoint>& proposed,
                        const std::vector<CurvePoint>& benchmark, double target_rate) {
    return snr_at_rate(benchmark, target_rate) - snr_at_rate(proposed, target_rate);
}

std::vector<CurvePoint> extract_curve(const std::vector<CurvePoint>& points,
                                      const std::string& scheme, const std::string& side) {
    std::vector<CurvePoint> out;
    for (const CurvePoint& p : points)
        if (p.scheme == scheme && p.side == side) out.push_back(p);
    return out;
}

GainReport gains_vs_benchmarks(const std::vector<CurvePoint>& points, double target_rate) {
    // Preserve sweep order of the benchmark schemes.
    std::vector<std::pair<std::string, std::string>> ids;
    for (const CurvePoint& p : points) {
        const auto id = std::make_pair(p.scheme, p.side);
        bool seen = false;
        for (const auto& known : ids) seen = seen || known == id;
        if (!seen) ids.push_back(id);
    }
    std::vector<CurvePoint> proposed;
    for (const auto& id : ids)
        if (id.first == "polarforming") proposed = extract_curve(points, id.first, id.second);
    if (proposed.empty())
        throw std::invalid_argument("gains_vs_benchmarks: no polarforming curve in sweep");

    GainReport report;
    report.target_rate_bps_hz = target_rate;
    for (const auto& id : ids) {
        if (id.first == "polarforming") continue;
        const auto curve = extract_curve(points, id.first, id.second);
        report.gains.push_back({id.first, target_rate, snr_gain_at_rate(proposed, curve, target_rate)});
    }
    return report;
}

std::string curve_csv(const std::vector<CurvePoint>& points) {
    std::string out = "scheme,side,snr_db,chi,trials,mean_rate_bps_hz,stderr_bps_hz\n";
    for (const CurvePoint& p : points) {
        out += p.scheme + "," + p.side + "," + fmt_g6(p.snr_db) + "," + fmt_g6(p.chi) + "," +
               std::to_string(p.trials) + "," + fmt_g6(p.mean_rate_bps_hz) + "," +
               fmt_g6(p.stderr_bps_hz) + "\n";
    }
    return out;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::string out = "snr_db,iteration,mean_rate_bps_hz\n";
    for (const ConvergenceRow& r : rows)
        out += fmt_g6(r.snr_db) + "," + std::to_string(r.iteration) + "," +
               fmt_g6(r.mean_rate_bps_hz) + "\n";
    return out;
}

std::string gain_csv(const GainReport& report) {
    std::string out = "benchmark,target_rate_bps_hz,snr_gain_db\n";
    for (const GainEntry& g : report.gains)
        out += g.benchmark + "," + fmt_g6(g.target_rate_bps_hz) + "," + fmt_g6(g.snr_gain_db) + "\n";
    return out;
}

namespace {

void write_file(const std::string& text, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace

void write_curve_csv(const std::vector<CurvePoint>& points, const std::string& path) {
    write_file(curve_csv(points), path);
}

void write_convergence_csv(const std::vector<ConvergenceRow>& rows, const std::string& path) {
    write_file(convergence_csv(rows), path);
}

void write_gain_csv(const GainReport& report, const std::string& path) {
    write_file(gain_csv(report), path);
}

}  // namespace polarsim
