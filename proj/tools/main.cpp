// polarsim: link-level simulator for phase-shifter based polarization
// reconfigurable antennas. Runs seeded Monte Carlo rate sweeps of the
// polarforming scheme against SPRA/PAA/CPA/LPA benchmarks and writes CSV
// tables (rate curves, convergence traces, SNR gain reports).

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "polarsim/harness.hpp"

namespace {

using namespace polarsim;

struct Options {
    double chi = 0.2;
    int trials = 10000;
    std::uint64_t seed = 1;
    double snr_min = -5.0;
    double snr_max = 20.0;
    double snr_step = 1.0;
    double epsilon = 1e-3;
    int imax = 20;
    double target_rate = 4.0;
    std::string out;
    std::string hiid_norm = "unit";
    int threads = 0;
    std::string config_path;
};

struct SweepExtras {
    std::vector<std::string> schemes = {"polarforming", "spra", "paa", "cpa", "lpa"};
    std::string side = "joint";
    std::string fixed = "lpa";
};

const std::vector<std::string> kSchemeNames = {"polarforming", "spra", "paa", "cpa", "lpa"};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != value.size() || value.empty())
        throw std::invalid_argument("config key '" + key + "': invalid number '" + value + "'");
    return v;
}

long long parse_int(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(value, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != value.size() || value.empty())
        throw std::invalid_argument("config key '" + key + "': invalid integer '" + value + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(value, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != value.size() || value.empty())
        throw std::invalid_argument("config key '" + key + "': invalid integer '" + value + "'");
    return v;
}

void check_member(const std::string& key, const std::string& value,
                  const std::vector<std::string>& allowed) {
    for (const auto& a : allowed)
        if (value == a) return;
    throw std::invalid_argument("config key '" + key + "': invalid value '" + value + "'");
}

// Flat key=value config file ('#' starts a comment). Keys are the long flag
// names without the leading dashes; command-line flags take precedence;
// unknown keys are hard errors.
void apply_config(const CLI::App* sub, Options& o, SweepExtras* extras) {
    if (o.config_path.empty()) return;
    std::ifstream f(o.config_path);
    if (!f) throw std::runtime_error("cannot open config file '" + o.config_path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(o.config_path + ":" + std::to_string(lineno) +
                                        ": expected key=value");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        const bool is_extra = key == "schemes" || key == "side" || key == "fixed";
        if (is_extra && extras == nullptr)
            throw std::invalid_argument("config key '" + key +
                                        "' is not valid for this subcommand");
        if (sub->count("--" + key) > 0) continue;  // flags win

        if (key == "chi") o.chi = parse_double(key, value);
        else if (key == "trials") o.trials = static_cast<int>(parse_int(key, value));
        else if (key == "seed") o.seed = parse_u64(key, value);
        else if (key == "snr-min") o.snr_min = parse_double(key, value);
        else if (key == "snr-max") o.snr_max = parse_double(key, value);
        else if (key == "snr-step") o.snr_step = parse_double(key, value);
        else if (key == "epsilon") o.epsilon = parse_double(key, value);
        else if (key == "imax") o.imax = static_cast<int>(parse_int(key, value));
        else if (key == "target-rate") o.target_rate = parse_double(key, value);
        else if (key == "out") o.out = value;
        else if (key == "hiid-norm") o.hiid_norm = value;
        else if (key == "threads") o.threads = static_cast<int>(parse_int(key, value));
        else if (key == "schemes") {
            extras->schemes.clear();
            std::string rest = value;
            while (!rest.empty()) {
                const auto comma = rest.find(',');
                extras->schemes.push_back(trim(rest.substr(0, comma)));
                rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
            }
        } else if (key == "side") extras->side = value;
        else if (key == "fixed") extras->fixed = value;
        else
            throw std::invalid_argument("config key '" + key + "' is not recognized");
    }
}

// Range checks shared by flag- and config-sourced values.
void validate_options(const Options& o, const SweepExtras* extras) {
    if (!(o.chi >= 0.0) || !std::isfinite(o.chi))
        throw std::invalid_argument("chi must be finite and >= 0");
    if (o.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (!(o.snr_step > 0.0)) throw std::invalid_argument("snr-step must be > 0");
    if (o.snr_min > o.snr_max) throw std::invalid_argument("snr-min must not exceed snr-max");
    if (!(o.epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    if (o.imax < 1) throw std::invalid_argument("imax must be >= 1");
    if (!(o.target_rate > 0.0)) throw std::invalid_argument("target-rate must be > 0");
    if (o.threads < 0) throw std::invalid_argument("threads must be >= 0");
    check_member("hiid-norm", o.hiid_norm, {"unit", "invsqrt2"});
    if (extras != nullptr) {
        check_member("side", extras->side, {"joint", "tx", "rx"});
        check_member("fixed", extras->fixed, {"lpa", "cpa"});
        if (extras->schemes.empty()) throw std::invalid_argument("schemes must not be empty");
        for (const auto& s : extras->schemes) check_member("schemes", s, kSchemeNames);
    }
}

void add_common_options(CLI::App* sub, Options& o, const std::string& out_default,
                        const char* out_help) {
    o.out = out_default;
    sub->add_option("--chi", o.chi, "Inverse XPD of the polarized channel")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--trials", o.trials, "Monte Carlo channel realizations")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Master seed; trial t draws from stream (seed, t)")
        ->capture_default_str();
    sub->add_option("--snr-min", o.snr_min, "First SNR grid point (dB)")->capture_default_str();
    sub->add_option("--snr-max", o.snr_max, "Last SNR grid point (dB)")->capture_default_str();
    sub->add_option("--snr-step", o.snr_step, "SNR grid step (dB)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--epsilon", o.epsilon,
                    "Convergence threshold on the relative SNR increase")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--imax", o.imax, "Maximum alternating-optimization iterations")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--target-rate", o.target_rate, "Target rate for gain extraction (bps/Hz)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, out_help)->capture_default_str();
    sub->add_option("--hiid-norm", o.hiid_norm,
                    "Fading-matrix normalization: unit (unit variance per entry) or "
                    "invsqrt2 (entry variance 1/sqrt(2))")
        ->capture_default_str()
        ->check(CLI::IsMember({"unit", "invsqrt2"}));
    sub->add_option("--threads", o.threads, "Worker threads (0 = hardware); output independent")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--config", o.config_path,
                    "Flat key=value config file with the same keys as the flags "
                    "(without leading dashes); command-line flags take precedence; "
                    "unknown keys are errors");
}

std::vector<double> snr_grid(const Options& o) {
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double v = o.snr_min + i * o.snr_step;
        if (v > o.snr_max + 1e-9) break;
        grid.push_back(v);
    }
    return grid;
}

SweepSpec base_spec(const Options& o) {
    SweepSpec spec;
    spec.snr_grid_db = snr_grid(o);
    spec.chi = o.chi;
    spec.trials = o.trials;
    spec.master_seed = o.seed;
    spec.alt_cfg.epsilon = o.epsilon;
    spec.alt_cfg.i_max = o.imax;
    spec.hiid_norm = o.hiid_norm == "unit" ? HiidNormalization::unit_entry_variance
                                           : HiidNormalization::entry_variance_inv_sqrt2;
    spec.threads = o.threads;
    return spec;
}

std::vector<Scheme> all_schemes(Side side, const std::optional<CVec2>& fixed) {
    std::vector<Scheme> schemes;
    for (SchemeKind kind : {SchemeKind::polarforming, SchemeKind::spra, SchemeKind::paa,
                            SchemeKind::cpa, SchemeKind::lpa})
        schemes.push_back({kind, side, fixed});
    return schemes;
}

void cmd_converge(const Options& o) {
    SweepSpec spec = base_spec(o);
    write_convergence_csv(run_convergence(spec), o.out);
}

// One curve file per fixed-counterpart case ('lpa' and 'cpa' on the
// non-adaptive side); o.out names the output directory.
void cmd_side_sweep(const Options& o, Side side) {
    const std::string prefix = side == Side::tx_only ? "tx" : "rx";
    std::vector<std::pair<std::string, std::vector<CurvePoint>>> outputs;
    for (const std::string& fixed_kind : {std::string("lpa"), std::string("cpa")}) {
        CVec2 counterpart;
        if (side == Side::tx_only)
            counterpart = fixed_kind == "lpa" ? lpa_rx() : cpa_rx();
        else
            counterpart = fixed_kind == "lpa" ? lpa_tx() : cpa_tx();
        SweepSpec spec = base_spec(o);
        spec.schemes = all_schemes(side, counterpart);
        outputs.emplace_back(o.out + "/" + prefix + "_" + fixed_kind + ".csv", run_sweep(spec));
    }
    for (const auto& [path, points] : outputs) write_curve_csv(points, path);
}

void cmd_joint(const Options& o) {
    SweepSpec spec = base_spec(o);
    spec.schemes = all_schemes(Side::joint, std::nullopt);
    write_curve_csv(run_sweep(spec), o.out);
}

void cmd_gains(const Options& o) {
    SweepSpec spec = base_spec(o);
    spec.schemes = all_schemes(Side::joint, std::nullopt);
    const auto points = run_sweep(spec);
    write_gain_csv(gains_vs_benchmarks(points, o.target_rate), o.out);
}

void cmd_sweep(const Options& o, const SweepExtras& x) {
    static const std::map<std::string, SchemeKind> kinds = {
        {"polarforming", SchemeKind::polarforming},
        {"spra", SchemeKind::spra},
        {"paa", SchemeKind::paa},
        {"cpa", SchemeKind::cpa},
        {"lpa", SchemeKind::lpa},
    };
    const Side side = x.side == "joint" ? Side::joint
                      : x.side == "tx"  ? Side::tx_only
                                        : Side::rx_only;
    std::optional<CVec2> counterpart;
    if (side == Side::tx_only) counterpart = x.fixed == "lpa" ? lpa_rx() : cpa_rx();
    if (side == Side::rx_only) counterpart = x.fixed == "lpa" ? lpa_tx() : cpa_tx();

    SweepSpec spec = base_spec(o);
    for (const std::string& name : x.schemes) spec.schemes.push_back({kinds.at(name), side, counterpart});
    write_curve_csv(run_sweep(spec), o.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polarforming link simulator: seeded Monte Carlo rate sweeps of "
                 "phase-shifter based polarization reconfigurable antennas"};
    app.require_subcommand(1);

    Options converge_opts, tx_opts, rx_opts, joint_opts, gains_opts, sweep_opts;
    SweepExtras sweep_extras;

    CLI::App* converge = app.add_subcommand(
        "converge", "Mean achievable rate per alternating-optimization iteration");
    converge_opts.snr_min = 0.0;
    converge_opts.snr_max = 10.0;
    converge_opts.snr_step = 5.0;
    add_common_options(converge, converge_opts, "converge.csv", "Output CSV path");
    converge->callback([&]() {
        apply_config(converge, converge_opts, nullptr);
        validate_options(converge_opts, nullptr);
        cmd_converge(converge_opts);
    });

    CLI::App* tx = app.add_subcommand(
        "tx", "Transmit-side sweep: adaptive schemes at the transmitter, fixed "
              "LPA/CPA at the receiver (writes tx_lpa.csv and tx_cpa.csv)");
    add_common_options(tx, tx_opts, ".", "Output directory");
    tx->callback([&]() {
        apply_config(tx, tx_opts, nullptr);
        validate_options(tx_opts, nullptr);
        cmd_side_sweep(tx_opts, Side::tx_only);
    });

    CLI::App* rx = app.add_subcommand(
        "rx", "Receive-side sweep: adaptive schemes at the receiver, fixed "
              "LPA/CPA at the transmitter (writes rx_lpa.csv and rx_cpa.csv)");
    add_common_options(rx, rx_opts, ".", "Output directory");
    rx->callback([&]() {
        apply_config(rx, rx_opts, nullptr);
        validate_options(rx_opts, nullptr);
        cmd_side_sweep(rx_opts, Side::rx_only);
    });

    CLI::App* joint = app.add_subcommand(
        "joint", "Joint sweep: polarforming at both ends vs all benchmarks");
    add_common_options(joint, joint_opts, "joint.csv", "Output CSV path");
    joint->callback([&]() {
        apply_config(joint, joint_opts, nullptr);
        validate_options(joint_opts, nullptr);
        cmd_joint(joint_opts);
    });

    CLI::App* gains = app.add_subcommand(
        "gains", "SNR gains of polarforming over each benchmark at the target rate");
    add_common_options(gains, gains_opts, "gains.csv", "Output CSV path");
    gains->callback([&]() {
        apply_config(gains, gains_opts, nullptr);
        validate_options(gains_opts, nullptr);
        cmd_gains(gains_opts);
    });

    CLI::App* sweep = app.add_subcommand("sweep", "Custom sweep over selected schemes");
    add_common_options(sweep, sweep_opts, "sweep.csv", "Output CSV path");
    sweep->add_option("--schemes", sweep_extras.schemes, "Schemes to run")
        ->delimiter(',')
        ->capture_default_str()
        ->check(CLI::IsMember({"polarforming", "spra", "paa", "cpa", "lpa"}));
    sweep->add_option("--side", sweep_extras.side, "Adaptive side")
        ->capture_default_str()
        ->check(CLI::IsMember({"joint", "tx", "rx"}));
    sweep->add_option("--fixed", sweep_extras.fixed,
                      "Fixed antenna on the non-adaptive side (tx/rx sweeps)")
        ->capture_default_str()
        ->check(CLI::IsMember({"lpa", "cpa"}));
    sweep->callback([&]() {
        apply_config(sweep, sweep_opts, &sweep_extras);
        validate_options(sweep_opts, &sweep_extras);
        cmd_sweep(sweep_opts, sweep_extras);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
