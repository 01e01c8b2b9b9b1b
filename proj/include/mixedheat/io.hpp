#pragma once

#include "mixedheat/fujita.hpp"
#include "mixedheat/kernels.hpp"
#include "mixedheat/solver.hpp"
#include "mixedheat/stable.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace mixedheat {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kFormatVersion = 1;

/// Round-trip-safe decimal rendering: '.' decimal separator, 17 significant
/// digits, no grouping.
inline std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& path) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

} // namespace detail

inline std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string() + " for checksum");
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[4096];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= std::uint8_t(buf[i]);
            h *= 0x100000001b3ull;
        }
    }
    return h;
}

inline nlohmann::json to_json(const GridSpec& g) {
    return {{"N", g.dim}, {"R", g.half_length}, {"n", g.points_per_axis}};
}

inline nlohmann::json to_json(const ModelParams& p) {
    return {{"N", p.dim}, {"s", p.s}, {"C_Ns", p.c_norm}, {"p_critical", p.p_critical}};
}

inline nlohmann::json to_json(const SolverConfig& c) {
    return {{"p", c.p},
            {"dt", c.dt},
            {"T", c.horizon},
            {"u_max", c.u_max},
            {"scheme", c.scheme == TimeScheme::etd2 ? "etd2" : "etd1"},
            {"snapshot_stride", c.snapshot_stride},
            {"source_enabled", c.source_enabled}};
}

/// Kernel dump: header x[,y[,z]],value, one row per grid point, plus a JSON
/// sidecar with the kernel's labels and mass defect.
inline void write_kernel_csv(const std::filesystem::path& path, const KernelField& k) {
    auto out = detail::open_out(path);
    const GridSpec& g = k.field.grid;
    const char* headers[3] = {"x", "x,y", "x,y,z"};
    out << headers[g.dim - 1] << ",value\n";
    for (std::size_t i = 0; i < k.field.values.size(); ++i) {
        const auto x = g.point(i);
        for (int a = 0; a < g.dim; ++a) out << fmt_real(x[std::size_t(a)]) << ',';
        out << fmt_real(k.field.values[i]) << '\n';
    }
    nlohmann::json side = {{"kind", to_string(k.kind)},
                           {"provenance", to_string(k.provenance)},
                           {"t", k.t},
                           {"s", k.s},
                           {"N", g.dim},
                           {"R", g.half_length},
                           {"n", g.points_per_axis},
                           {"mass_defect", k.mass_defect}};
    auto side_out = detail::open_out(path.string() + ".json");
    side_out << side.dump(2) << '\n';
}

/// Histogram dump: bin_left,bin_right,probability plus a JSON sidecar.
inline void write_histogram_csv(const std::filesystem::path& path, const EmpiricalDensity& d) {
    auto out = detail::open_out(path);
    out << "bin_left,bin_right,probability\n";
    for (std::size_t b = 0; b + 1 < d.edges.size(); ++b)
        out << fmt_real(d.edges[b]) << ',' << fmt_real(d.edges[b + 1]) << ','
            << fmt_real(d.probs[b]) << '\n';
    nlohmann::json side = {{"seed", d.seed},
                           {"count", d.count},
                           {"s", d.s},
                           {"t", d.t},
                           {"tail_fraction", d.tail_fraction}};
    auto side_out = detail::open_out(path.string() + ".json");
    side_out << side.dump(2) << '\n';
}

/// Trajectory dump: t,sup_norm,mass,tail_norm plus an outcome sidecar.
inline void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj,
                                 const SolverConfig& config, const ModelParams& params,
                                 const GridSpec& grid) {
    auto out = detail::open_out(path);
    out << "t,sup_norm,mass,tail_norm\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        out << fmt_real(traj.times[i]) << ',' << fmt_real(traj.sup_norms[i]) << ','
            << fmt_real(traj.masses[i]) << ',' << fmt_real(traj.tail_norms[i]) << '\n';
    nlohmann::json side = {{"outcome", to_string(traj.outcome)},
                           {"config", to_json(config)},
                           {"params", to_json(params)},
                           {"grid", to_json(grid)}};
    if (traj.outcome != OutcomeKind::global_within_horizon) side["t_star"] = traj.t_star;
    auto side_out = detail::open_out(path.string() + ".json");
    side_out << side.dump(2) << '\n';
}

inline void write_sweep_csv(const std::filesystem::path& path,
                            const std::vector<DichotomyRecord>& records) {
    auto out = detail::open_out(path);
    out << "N,s,p,datum_kind,amplitude,delta0,tau0,outcome,t_star,max_supnorm,envelope_ok\n";
    for (const auto& r : records) {
        out << r.dim << ',' << fmt_real(r.s) << ',' << fmt_real(r.p) << ',' << r.datum_kind << ','
            << fmt_real(r.amplitude) << ',' << fmt_real(r.delta0) << ',' << fmt_real(r.tau0)
            << ',' << to_string(r.outcome) << ','
            << (r.outcome == OutcomeKind::blow_up ? fmt_real(r.t_star) : std::string()) << ','
            << fmt_real(r.max_supnorm) << ',' << (r.envelope_ok ? '1' : '0') << '\n';
    }
}

inline void write_certificate_csv(const std::filesystem::path& path,
                                  const CertificateReport& rep) {
    auto out = detail::open_out(path);
    out << "r,integral_up_phi,bound_value\n";
    for (const auto& row : rep.rows)
        out << fmt_real(row.r) << ',' << fmt_real(row.integral) << ','
            << fmt_real(row.bound_value) << '\n';
}

inline void write_schedule_csv(const std::filesystem::path& path, const FujitaSchedule& sch) {
    auto out = detail::open_out(path);
    out << "n,delta_n\n";
    for (std::size_t n = 0; n < sch.sequence.size(); ++n)
        out << n << ',' << fmt_real(sch.sequence[n]) << '\n';
}

/// Reproduction manifest: full configuration with per-key provenance,
/// library versions, wall time, and artifact checksums.
inline void write_manifest(const std::filesystem::path& path, const std::string& command,
                           const std::map<std::string, std::string>& values,
                           const std::map<std::string, std::string>& provenance,
                           const std::vector<std::filesystem::path>& artifacts,
                           double wall_ms) {
    nlohmann::json cfg;
    for (const auto& [k, v] : values) {
        auto it = provenance.find(k);
        cfg[k] = {{"value", v}, {"source", it == provenance.end() ? "default" : it->second}};
    }
    nlohmann::json checks;
    for (const auto& a : artifacts) {
        char hex[20];
        std::snprintf(hex, sizeof(hex), "%016llx",
                      static_cast<unsigned long long>(fnv1a64_file(a)));
        checks[a.filename().string()] = hex;
    }
    nlohmann::json m = {{"command", command},
                        {"config", cfg},
                        {"version", kVersion},
                        {"format_version", kFormatVersion},
                        {"wall_ms", wall_ms},
                        {"artifacts", checks}};
    auto out = detail::open_out(path);
    out << m.dump(2) << '\n';
}

} // namespace mixedheat
