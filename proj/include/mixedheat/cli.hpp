#pragma once

#include "mixedheat/io.hpp"

#include <chrono>
#include <cstdlib>
#include <sstream>

namespace mixedheat::cli {

/// Fully validated run configuration. `values` holds the canonical string
/// form of every key (defaults filled in), `provenance` records where each
/// value came from (flag, file or default). Serializing and re-parsing a
/// RunConfig yields an equal value.
struct RunConfig {
    std::string command;
    std::map<std::string, std::string> values;
    std::map<std::string, std::string> provenance;

    double real(const std::string& k) const { return std::stod(values.at(k)); }
    long integer(const std::string& k) const { return std::stol(values.at(k)); }
    std::uint64_t uinteger(const std::string& k) const { return std::stoull(values.at(k)); }
    const std::string& str(const std::string& k) const { return values.at(k); }

    std::string serialize() const {
        std::ostringstream out;
        out << "command = " << command << '\n';
        for (const auto& [k, v] : values) out << k << " = " << v << '\n';
        return out.str();
    }

    bool operator==(const RunConfig& o) const {
        return command == o.command && values == o.values;
    }
};

struct ParseResult {
    std::optional<RunConfig> config;
    std::vector<std::string> errors;
    bool ok() const { return errors.empty() && config.has_value(); }
};

namespace detail {

enum class OptKind { real, integer, uinteger, text, choice, real_or_auto, real_list };

struct OptionSpec {
    OptKind kind = OptKind::real;
    bool required = false;
    std::string default_value;
    std::vector<std::string> choices;
    std::function<std::string(double)> range; ///< returns an error or ""
};

using Schema = std::map<std::string, OptionSpec>;

inline std::string default_out_dir() {
    const char* env = std::getenv("MIXEDHEAT_OUT_DIR");
    return env != nullptr && *env != '\0' ? env : "out";
}

inline OptionSpec real_opt(std::string def, std::function<std::string(double)> range = {}) {
    return OptionSpec{OptKind::real, false, std::move(def), {}, std::move(range)};
}

inline std::string positive(double v) { return v > 0.0 ? "" : "must be positive"; }
inline std::string unit_interval(double v) {
    return v > 0.0 && v < 1.0 ? "" : "must lie strictly in (0,1)";
}
inline std::string above_one(double v) { return v > 1.0 ? "" : "must exceed 1"; }

inline Schema common_schema() {
    Schema s;
    s["out"] = OptionSpec{OptKind::text, false, default_out_dir(), {}, {}};
    s["format_version"] = OptionSpec{OptKind::integer, false, "1", {}, {}};
    s["N"] = OptionSpec{OptKind::integer, false, "1", {}, {}};
    s["s"] = real_opt("0.5", unit_interval);
    s["R"] = real_opt("40", positive);
    s["n"] = OptionSpec{OptKind::integer, false, "0", {}, {}}; // 0 = per-dimension default
    return s;
}

inline Schema schema_for(const std::string& command) {
    Schema s = common_schema();
    if (command == "kernel") {
        s["kind"] = OptionSpec{OptKind::choice, false, "mixed", {"gauss", "fractional", "mixed"},
                               {}};
        s["t"] = real_opt("1", positive);
        s["pad"] = OptionSpec{OptKind::integer, false, "1", {}, {}};
    } else if (command == "verify") {
        s["t"] = real_opt("1", positive);
        s["tau"] = real_opt("0.5", positive);
        s["tol_mass"] = real_opt("1e-6", positive);
        s["tol_semigroup"] = real_opt("1e-6", positive);
        s["tol_positivity"] = real_opt("1e-10", positive);
    } else if (command == "oracle") {
        s["t"] = real_opt("1", positive);
        s["samples"] = OptionSpec{OptKind::uinteger, false, "1000000", {}, {}};
        s["seed"] = OptionSpec{OptKind::uinteger, false, "1", {}, {}};
        s["bin_width"] = real_opt("0");
        s["ks_threshold"] = real_opt("0.01", positive);
        s["pad"] = OptionSpec{OptKind::integer, false, "8", {}, {}};
    } else if (command == "solve") {
        s["p"] = OptionSpec{OptKind::real, true, "", {}, above_one};
        s["datum"] = OptionSpec{OptKind::choice, false, "uniform", {"uniform", "small", "zero"},
                                {}};
        s["amplitude"] = real_opt("1");
        s["delta0"] = real_opt("0");
        s["tau0"] = OptionSpec{OptKind::real_or_auto, false, "1", {}, {}};
        s["C"] = real_opt("1", positive);
        s["dt"] = real_opt("1e-3", positive);
        s["T"] = real_opt("10", positive);
        s["umax"] = real_opt("1e6", positive);
        s["scheme"] = OptionSpec{OptKind::choice, false, "etd2", {"etd1", "etd2"}, {}};
        s["stride"] = OptionSpec{OptKind::uinteger, false, "0", {}, {}};
        s["seed"] = OptionSpec{OptKind::uinteger, false, "0", {}, {}};
    } else if (command == "schedule") {
        s["p"] = OptionSpec{OptKind::real, true, "", {}, above_one};
        s["delta0"] = OptionSpec{OptKind::real, true, "", {},
                                 [](double v) { return v >= 0.0 ? "" : "must be >= 0"; }};
        s["iters"] = OptionSpec{OptKind::uinteger, false, "100", {}, {}};
    } else if (command == "sweep") {
        s["p_list"] = OptionSpec{OptKind::real_list, true, "", {}, {}};
        s["datum"] = OptionSpec{OptKind::choice, false, "uniform", {"uniform", "small"}, {}};
        s["amp_list"] = OptionSpec{OptKind::real_list, false, "1", {}, {}};
        s["delta0_mult_list"] = OptionSpec{OptKind::real_list, false, "0.5", {}, {}};
        s["C"] = real_opt("1", positive);
        s["tau0"] = OptionSpec{OptKind::real_or_auto, false, "auto", {}, {}};
        s["dt"] = real_opt("1e-3", positive);
        s["T"] = real_opt("50", positive);
        s["umax"] = real_opt("1e6", positive);
        s["scheme"] = OptionSpec{OptKind::choice, false, "etd2", {"etd1", "etd2"}, {}};
        s["seed"] = OptionSpec{OptKind::uinteger, false, "0", {}, {}};
    } else if (command == "certificate") {
        s["p"] = OptionSpec{OptKind::real, true, "", {}, above_one};
        s["r_list"] = OptionSpec{OptKind::real_list, false, "2,4,8,16", {}, {}};
        s["datum"] = OptionSpec{OptKind::choice, false, "small", {"uniform", "small", "zero"},
                                {}};
        s["amplitude"] = real_opt("1");
        s["delta0"] = real_opt("0.05", positive);
        s["tau0"] = OptionSpec{OptKind::real_or_auto, false, "0.5", {}, {}};
        s["C"] = real_opt("1", positive);
        s["dt"] = real_opt("1e-3", positive);
        s["stride"] = OptionSpec{OptKind::uinteger, false, "20", {}, {}};
    } else {
        s.clear();
    }
    return s;
}

inline bool parse_real(const std::string& v, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(v, &pos);
        return pos == v.size() && std::isfinite(out);
    } catch (...) {
        return false;
    }
}

inline std::vector<double> parse_real_list(const std::string& v, bool& ok) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    ok = true;
    while (std::getline(ss, item, ',')) {
        double x;
        if (!parse_real(item, x)) {
            ok = false;
            return out;
        }
        out.push_back(x);
    }
    if (out.empty()) ok = false;
    return out;
}

inline void check_value(const std::string& key, const OptionSpec& spec, const std::string& value,
                        std::vector<std::string>& errors) {
    switch (spec.kind) {
        case OptKind::real: {
            double x;
            if (!parse_real(value, x)) {
                errors.push_back(key + ": expected a real number, got '" + value + "'");
            } else if (spec.range) {
                const std::string err = spec.range(x);
                if (!err.empty()) errors.push_back(key + ": " + err);
            }
            break;
        }
        case OptKind::real_or_auto: {
            if (value == "auto") break;
            double x;
            if (!parse_real(value, x) || !(x > 0.0))
                errors.push_back(key + ": expected a positive real or 'auto', got '" + value +
                                 "'");
            break;
        }
        case OptKind::integer:
        case OptKind::uinteger: {
            try {
                std::size_t pos = 0;
                const long long x = std::stoll(value, &pos);
                if (pos != value.size()) throw std::invalid_argument("");
                if (spec.kind == OptKind::uinteger && x < 0) throw std::invalid_argument("");
            } catch (...) {
                errors.push_back(key + ": expected an integer, got '" + value + "'");
            }
            break;
        }
        case OptKind::choice: {
            if (std::find(spec.choices.begin(), spec.choices.end(), value) ==
                spec.choices.end()) {
                std::string msg = key + ": '" + value + "' is not one of {";
                for (std::size_t i = 0; i < spec.choices.size(); ++i)
                    msg += (i ? "," : "") + spec.choices[i];
                errors.push_back(msg + "}");
            }
            break;
        }
        case OptKind::real_list: {
            bool ok;
            parse_real_list(value, ok);
            if (!ok) errors.push_back(key + ": expected a comma-separated list of reals");
            break;
        }
        case OptKind::text: break;
    }
}

inline void semantic_checks(RunConfig& cfg, std::vector<std::string>& errors) {
    const auto has = [&](const std::string& k) { return cfg.values.count(k) > 0; };
    if (has("N")) {
        const long N = cfg.integer("N");
        if (N < 1 || N > 3) errors.push_back("N: must be 1, 2 or 3");
        if (has("n")) {
            long n = cfg.integer("n");
            if (n == 0) {
                n = N == 1 ? 1024 : N == 2 ? 256 : 64;
                cfg.values["n"] = std::to_string(n);
            }
            if (n < 8 || n % 2 != 0) errors.push_back("n: must be even and >= 8");
        }
    }
    if (has("format_version") && cfg.integer("format_version") != kFormatVersion)
        errors.push_back("format_version: unsupported version " + cfg.str("format_version"));
    if (has("samples") && errors.empty() && cfg.uinteger("samples") < 10000)
        errors.push_back("samples: need at least 10000");
    if (has("pad") && cfg.integer("pad") < 1) errors.push_back("pad: must be >= 1");

    // resolve tau0 = auto via the threshold formula
    if (has("tau0") && cfg.str("tau0") == "auto" && errors.empty()) {
        const double s = cfg.real("s");
        const int N = int(cfg.integer("N"));
        const double C = cfg.real("C");
        const auto resolve = [&](double p) { return 2.0 * tau0_lower_bound(N, s, p, C); };
        try {
            if (cfg.command == "sweep") {
                bool ok;
                const auto ps = parse_real_list(cfg.str("p_list"), ok);
                double worst = 0.0;
                for (double p : ps)
                    if (p > critical_exponent(N, s)) worst = std::max(worst, resolve(p));
                if (worst == 0.0 && cfg.str("datum") == "small")
                    throw std::invalid_argument("no supercritical p in p_list");
                cfg.values["tau0"] = fmt_real(worst);
            } else {
                cfg.values["tau0"] = fmt_real(resolve(cfg.real("p")));
            }
            cfg.provenance["tau0"] = "auto";
        } catch (const std::exception& e) {
            errors.push_back(std::string("tau0: cannot resolve 'auto': ") + e.what());
        }
    }
}

} // namespace detail

/// Parse a flat key = value config file; '#' starts a comment. Returns pairs
/// in file order; a leading `command` entry selects the subcommand.
inline std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::filesystem::path& path, std::vector<std::string>& errors) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::ifstream in(path);
    if (!in) {
        errors.push_back("config: cannot open file " + path.string());
        return entries;
    }
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto notspace = [](unsigned char c) { return !std::isspace(c); };
        line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
        line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(), line.end());
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("config:" + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        key.erase(std::find_if(key.rbegin(), key.rend(), notspace).base(), key.end());
        value.erase(value.begin(), std::find_if(value.begin(), value.end(), notspace));
        entries.emplace_back(key, value);
    }
    return entries;
}

/// Parse argv-style arguments (without the program name). Flags override
/// config-file values; all validation errors are collected, not just the
/// first.
inline ParseResult parse_config(const std::vector<std::string>& args) {
    ParseResult res;
    RunConfig cfg;

    std::vector<std::pair<std::string, std::string>> flag_entries;
    std::string config_path;
    std::size_t i = 0;
    if (i < args.size() && !args[i].starts_with("--")) cfg.command = args[i++];
    for (; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (!a.starts_with("--")) {
            res.errors.push_back("unexpected positional argument '" + a + "'");
            continue;
        }
        std::string key = a.substr(2), value;
        const auto eq = key.find('=');
        if (eq != std::string::npos) {
            value = key.substr(eq + 1);
            key = key.substr(0, eq);
        } else if (i + 1 < args.size()) {
            value = args[++i];
        } else {
            res.errors.push_back("--" + key + ": missing value");
            continue;
        }
        std::replace(key.begin(), key.end(), '-', '_');
        if (key == "config")
            config_path = value;
        else
            flag_entries.emplace_back(key, value);
    }

    std::vector<std::pair<std::string, std::string>> file_entries;
    if (!config_path.empty()) file_entries = read_config_file(config_path, res.errors);
    for (const auto& [k, v] : file_entries)
        if (k == "command" && cfg.command.empty()) cfg.command = v;

    static const std::vector<std::string> kCommands = {"kernel",   "verify", "oracle",
                                                       "solve",    "schedule", "sweep",
                                                       "certificate"};
    if (cfg.command.empty()) {
        res.errors.push_back("missing command (one of kernel, verify, oracle, solve, schedule, "
                             "sweep, certificate)");
        return res;
    }
    if (std::find(kCommands.begin(), kCommands.end(), cfg.command) == kCommands.end()) {
        res.errors.push_back("unknown command '" + cfg.command + "'");
        return res;
    }

    const detail::Schema schema = detail::schema_for(cfg.command);

    // file values first, then flags override; provenance follows the winner
    for (const auto& [k, v] : file_entries) {
        if (k == "command") continue;
        if (schema.count(k) == 0) {
            res.errors.push_back("config: unknown key '" + k + "'");
            continue;
        }
        cfg.values[k] = v;
        cfg.provenance[k] = "file";
    }
    for (const auto& [k, v] : flag_entries) {
        if (schema.count(k) == 0) {
            res.errors.push_back("unknown option --" + k);
            continue;
        }
        cfg.values[k] = v;
        cfg.provenance[k] = "flag";
    }

    for (const auto& [key, spec] : schema) {
        auto it = cfg.values.find(key);
        if (it == cfg.values.end()) {
            if (spec.required) {
                res.errors.push_back("missing required key '" + key + "'");
                continue;
            }
            cfg.values[key] = spec.default_value;
            cfg.provenance[key] = "default";
            it = cfg.values.find(key);
        }
        detail::check_value(key, spec, it->second, res.errors);
    }
    if (res.errors.empty()) detail::semantic_checks(cfg, res.errors);
    if (res.errors.empty()) res.config = std::move(cfg);
    return res;
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

namespace detail {

struct ArtifactWriter {
    std::filesystem::path dir;
    std::vector<std::filesystem::path> written;
    std::filesystem::path operator()(const std::string& name) {
        std::filesystem::create_directories(dir);
        written.push_back(dir / name);
        return written.back();
    }
};

inline GridSpec grid_from(const RunConfig& cfg) {
    return GridSpec::make(int(cfg.integer("N")), cfg.real("R"), int(cfg.integer("n")));
}

inline SolverConfig solver_from(const RunConfig& cfg) {
    SolverConfig sc;
    sc.p = cfg.real("p");
    sc.dt = cfg.real("dt");
    sc.horizon = cfg.real("T");
    if (cfg.values.count("umax")) sc.u_max = cfg.real("umax");
    if (cfg.values.count("scheme"))
        sc.scheme = cfg.str("scheme") == "etd1" ? TimeScheme::etd1 : TimeScheme::etd2;
    if (cfg.values.count("stride")) sc.snapshot_stride = std::size_t(cfg.uinteger("stride"));
    return sc;
}

inline int exec_kernel(const RunConfig& cfg, ArtifactWriter& art) {
    const GridSpec g = grid_from(cfg);
    const ModelParams params = ModelParams::make(g.dim, cfg.real("s"));
    const double t = cfg.real("t");
    const int pad = int(cfg.integer("pad"));
    KernelField k;
    const std::string kind = cfg.str("kind");
    if (kind == "gauss")
        k = gauss_kernel(g, t);
    else if (kind == "fractional")
        k = fractional_kernel(params, g, t, pad);
    else
        k = mixed_kernel(params, g, t, pad);
    write_kernel_csv(art("kernel.csv"), k);
    return 0;
}

inline int exec_verify(const RunConfig& cfg, ArtifactWriter& art) {
    const GridSpec g = grid_from(cfg);
    const ModelParams params = ModelParams::make(g.dim, cfg.real("s"));
    const double t = cfg.real("t"), tau = cfg.real("tau");
    nlohmann::json rep;
    bool ok = true;
    for (KernelKind kind : {KernelKind::gauss, KernelKind::fractional, KernelKind::mixed}) {
        const KernelField k1 = make_kernel(params, g, kind, t);
        const KernelField k2 = make_kernel(params, g, kind, tau);
        const KernelPropertyReport r = verify_kernel_properties(k1, &k2);
        rep[to_string(kind)] = {{"positivity_floor", r.positivity_floor},
                                {"evenness_defect", r.evenness_defect},
                                {"mass_defect", r.mass_defect},
                                {"semigroup_defect", r.semigroup_defect}};
        ok = ok && r.positivity_floor >= -cfg.real("tol_positivity") &&
             r.mass_defect <= cfg.real("tol_mass") && r.evenness_defect == 0.0 &&
             r.semigroup_defect <= cfg.real("tol_semigroup");
    }
    rep["all_within_tolerance"] = ok;
    auto out = mixedheat::detail::open_out(art("verify.json"));
    out << rep.dump(2) << '\n';
    return ok ? 0 : 3;
}

inline int exec_oracle(const RunConfig& cfg, ArtifactWriter& art) {
    const GridSpec g = grid_from(cfg);
    const ModelParams params = ModelParams::make(g.dim, cfg.real("s"));
    SamplerConfig sc;
    sc.s = cfg.real("s");
    sc.t = cfg.real("t");
    sc.count = cfg.uinteger("samples");
    sc.seed = cfg.uinteger("seed");
    sc.bin_width = cfg.real("bin_width");
    const EmpiricalDensity d = sample_mixed_process(sc, g);
    const KernelField k = mixed_kernel(params, g, sc.t, int(cfg.integer("pad")));
    const DensityComparison cmp = compare_density(d, k.field);
    write_histogram_csv(art("histogram.csv"), d);
    nlohmann::json rep = {{"ks", cmp.ks},
                          {"max_abs_z", cmp.max_abs_z},
                          {"bins", cmp.bins},
                          {"tail_fraction", d.tail_fraction},
                          {"ks_threshold", cfg.real("ks_threshold")}};
    auto out = mixedheat::detail::open_out(art("oracle.json"));
    out << rep.dump(2) << '\n';
    return cmp.ks <= cfg.real("ks_threshold") ? 0 : 3;
}

inline Field datum_from(const RunConfig& cfg, const GridSpec& g, const ModelParams& params) {
    const std::string kind = cfg.str("datum");
    if (kind == "uniform") return Field(g, cfg.real("amplitude"));
    if (kind == "zero") return Field(g, 0.0);
    const double delta0 = cfg.real("delta0");
    if (!(delta0 > 0.0))
        throw std::invalid_argument("datum small: delta0 must be positive");
    return small_initial_datum(g, params, delta0, cfg.real("tau0"));
}

inline int exec_solve(const RunConfig& cfg, ArtifactWriter& art) {
    const GridSpec g = grid_from(cfg);
    const ModelParams params = ModelParams::make(g.dim, cfg.real("s"));
    const SolverConfig sc = solver_from(cfg);
    const Field u0 = datum_from(cfg, g, params);
    const Trajectory traj = run(u0, sc, params);
    write_trajectory_csv(art("trajectory.csv"), traj, sc, params, g);
    if (sc.snapshot_stride > 0 && !traj.snapshots.empty()) {
        KernelField snap;
        snap.field = traj.snapshots.back();
        snap.t = traj.snapshot_times.back();
        snap.s = params.s;
        snap.kind = KernelKind::mixed;
        snap.provenance = KernelProvenance::symbol;
        write_kernel_csv(art("final_state.csv"), snap);
    }
    return traj.outcome == OutcomeKind::numerical_failure ? 2 : 0;
}

inline int exec_schedule(const RunConfig& cfg, ArtifactWriter& art) {
    const FujitaSchedule sch =
        delta_schedule(cfg.real("delta0"), cfg.real("p"), cfg.uinteger("iters"));
    write_schedule_csv(art("schedule.csv"), sch);
    nlohmann::json rep = {{"delta0", sch.delta0},
                          {"p", sch.p},
                          {"converged", sch.converged},
                          {"delta0_star", sch.delta0_star}};
    if (sch.converged) rep["limit"] = sch.limit;
    auto out = mixedheat::detail::open_out(art("schedule.json"));
    out << rep.dump(2) << '\n';
    return 0;
}

inline int exec_sweep(const RunConfig& cfg, ArtifactWriter& art) {
    const GridSpec g = grid_from(cfg);
    const double s = cfg.real("s");
    bool ok = true;
    const auto ps = parse_real_list(cfg.str("p_list"), ok);
    std::vector<SweepCell> cells;
    if (cfg.str("datum") == "uniform") {
        const auto amps = parse_real_list(cfg.str("amp_list"), ok);
        for (double p : ps)
            for (double a : amps) cells.push_back(SweepCell{s, p, "uniform", a, 0.0, 0.0});
    } else {
        const auto mults = parse_real_list(cfg.str("delta0_mult_list"), ok);
        const double tau0 = cfg.real("tau0");
        for (double p : ps)
            for (double m : mults)
                cells.push_back(SweepCell{s, p, "small", m, m * delta0_threshold(p), tau0});
    }
    SolverConfig sc = solver_from(cfg);
    sc.p = ps.front(); // per-cell override happens inside the sweep
    const auto records = dichotomy_sweep(cells, g, sc);
    write_sweep_csv(art("sweep.csv"), records);
    for (const auto& r : records)
        if (r.outcome == OutcomeKind::numerical_failure) return 2;
    return 0;
}

inline int exec_certificate(const RunConfig& cfg, ArtifactWriter& art) {
    const GridSpec g = grid_from(cfg);
    const ModelParams params = ModelParams::make(g.dim, cfg.real("s"));
    bool ok = true;
    const auto rs = parse_real_list(cfg.str("r_list"), ok);
    double horizon = 0.0;
    for (double r : rs) horizon = std::max(horizon, std::pow(r, 2.0 * params.s));

    SolverConfig sc;
    sc.p = cfg.real("p");
    sc.dt = cfg.real("dt");
    sc.horizon = horizon;
    sc.snapshot_stride = std::size_t(cfg.uinteger("stride"));
    const Field u0 = datum_from(cfg, g, params);
    const Trajectory traj = run(u0, sc, params);
    if (traj.outcome != OutcomeKind::global_within_horizon) {
        nlohmann::json rep = {{"error", "trajectory ended before the largest window"},
                              {"outcome", to_string(traj.outcome)},
                              {"t", traj.t_star}};
        auto out = mixedheat::detail::open_out(art("certificate.json"));
        out << rep.dump(2) << '\n';
        return traj.outcome == OutcomeKind::numerical_failure ? 2 : 3;
    }
    const CertificateReport rep = nonexistence_certificate(traj, params, sc.p, rs);
    write_certificate_csv(art("certificate.csv"), rep);
    nlohmann::json side = {{"fitted_slope", rep.fitted_slope},
                           {"theory_exponent", rep.theory_exponent},
                           {"all_zero", rep.all_zero}};
    nlohmann::json defects = nlohmann::json::array();
    for (const auto& row : rep.rows) defects.push_back(row.weak_defect);
    side["weak_identity_defects"] = defects;
    auto out = mixedheat::detail::open_out(art("certificate.json"));
    out << side.dump(2) << '\n';
    return 0;
}

} // namespace detail

/// Run a validated configuration: writes the command's artifacts plus a
/// manifest into the output directory. Exit codes: 0 success, 1 validation
/// error, 2 numerical failure, 3 property-check failure.
inline int execute(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    detail::ArtifactWriter art{cfg.str("out"), {}};
    int code = 0;
    try {
        if (cfg.command == "kernel")
            code = detail::exec_kernel(cfg, art);
        else if (cfg.command == "verify")
            code = detail::exec_verify(cfg, art);
        else if (cfg.command == "oracle")
            code = detail::exec_oracle(cfg, art);
        else if (cfg.command == "solve")
            code = detail::exec_solve(cfg, art);
        else if (cfg.command == "schedule")
            code = detail::exec_schedule(cfg, art);
        else if (cfg.command == "sweep")
            code = detail::exec_sweep(cfg, art);
        else if (cfg.command == "certificate")
            code = detail::exec_certificate(cfg, art);
        else
            return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    write_manifest(std::filesystem::path(cfg.str("out")) / "manifest.json", cfg.command,
                   cfg.values, cfg.provenance, art.written, wall_ms);
    return code;
}

} // namespace mixedheat::cli
