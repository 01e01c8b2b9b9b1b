#pragma once

#include "mixedheat/fft.hpp"
#include "mixedheat/params.hpp"
#include "mixedheat/symbols.hpp"

#include <optional>

namespace mixedheat {

enum class TimeScheme { etd1, etd2 };
enum class OutcomeKind { global_within_horizon, blow_up, numerical_failure };

inline const char* to_string(OutcomeKind o) {
    switch (o) {
        case OutcomeKind::global_within_horizon: return "GlobalWithinHorizon";
        case OutcomeKind::blow_up: return "BlowUpAt";
        default: return "NumericalFailureAt";
    }
}

/// Time-stepping configuration for the semilinear problem u_t + Lu = u^p.
struct SolverConfig {
    double p = 2.0;
    double dt = 1e-3;
    double horizon = 10.0;
    double u_max = 1e6;        ///< sup-norm blow-up threshold
    TimeScheme scheme = TimeScheme::etd2;
    std::size_t snapshot_stride = 0; ///< 0 disables field snapshots
    bool source_enabled = true;      ///< test hook: false integrates u_t + Lu = 0
    double ringing_floor = 1e-10;    ///< values below -floor*sup are a failure

    void validate(double initial_sup) const {
        if (!(p > 1.0)) throw std::invalid_argument("SolverConfig: p must exceed 1");
        if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be positive");
        if (!(horizon > 0.0)) throw std::invalid_argument("SolverConfig: horizon must be positive");
        if (!(u_max > initial_sup))
            throw std::invalid_argument("SolverConfig: blow-up threshold must exceed the "
                                        "initial sup-norm");
    }
};

/// One solver run: recorded norms, optional snapshots, and the outcome.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> sup_norms;
    std::vector<double> masses;
    std::vector<double> tail_norms;
    std::vector<double> snapshot_times;
    std::vector<Field> snapshots;
    OutcomeKind outcome = OutcomeKind::global_within_horizon;
    double t_star = 0.0; ///< blow-up or failure time when applicable
};

/// Quadrature of int |u(x)| / (1 + |x|^{N+2s}) dx over the box.
inline double tail_norm(const Field& u, const ModelParams& params) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double r = u.grid.radius(i);
        s += std::abs(u.values[i]) / (1.0 + std::pow(r, params.dim + 2.0 * params.s));
    }
    return s * u.grid.cell_volume();
}

/// Exact linear flow over a step: multiply the spectrum by the heat symbol.
/// Mass is preserved (the zero-mode multiplier is 1) and the sup-norm cannot
/// grow beyond spectral ringing.
inline Field propagate_linear(const Field& u, double dt, const ModelParams& params) {
    if (!(dt >= 0.0)) throw std::invalid_argument("propagate_linear: dt must be >= 0");
    if (dt == 0.0) return u;
    SpectrumField F = forward_transform(u);
    const SpectrumField sym = symbol(u.grid, params.s, dt);
    for (std::size_t i = 0; i < F.coeffs.size(); ++i) F.coeffs[i] *= sym.coeffs[i].real();
    return inverse_transform(F);
}

namespace detail {

/// Exponential-integrator stepper with cached multipliers for a fixed dt.
/// etd1 applies the first-order increment weight (1 - e^{-lam dt})/lam (value
/// dt at the zero mode); etd2 adds the standard second-stage correction with
/// weight (e^{-lam dt} - 1 + lam dt)/(lam^2 dt) (value dt/2 at the zero mode).
class EtdStepper {
public:
    EtdStepper(const GridSpec& g, const ModelParams& params, const SolverConfig& cfg)
        : grid_(g), cfg_(cfg), decay_(g.size()), w1_(g.size()), w2_(g.size()) {
        const std::vector<double> lam = operator_eigenvalues(g, params.s);
        for (std::size_t i = 0; i < lam.size(); ++i) {
            const double z = lam[i] * cfg.dt;
            decay_[i] = std::exp(-z);
            w1_[i] = z < 1e-8 ? cfg.dt * (1.0 - 0.5 * z) : -std::expm1(-z) / lam[i];
            w2_[i] = z < 1e-4 ? cfg.dt * (0.5 - z / 6.0 + z * z / 24.0)
                              : (std::exp(-z) - 1.0 + z) / (lam[i] * lam[i] * cfg.dt);
        }
    }

    /// One step; returns false when the result is non-finite.
    bool step(Field& u) const {
        const SpectrumField un = forward_transform(u);
        SpectrumField fn(grid_);
        if (cfg_.source_enabled) fn = forward_transform(pow_field(u, cfg_.p));
        SpectrumField acc(grid_);
        for (std::size_t i = 0; i < acc.coeffs.size(); ++i)
            acc.coeffs[i] = decay_[i] * un.coeffs[i] + w1_[i] * fn.coeffs[i];
        Field a = inverse_transform(acc);
        if (cfg_.scheme == TimeScheme::etd2 && cfg_.source_enabled) {
            if (!a.all_finite()) return false;
            const SpectrumField fa = forward_transform(pow_field(a, cfg_.p));
            for (std::size_t i = 0; i < acc.coeffs.size(); ++i)
                acc.coeffs[i] += w2_[i] * (fa.coeffs[i] - fn.coeffs[i]);
            a = inverse_transform(acc);
        }
        u = std::move(a);
        return u.all_finite();
    }

private:
    GridSpec grid_;
    SolverConfig cfg_;
    std::vector<double> decay_, w1_, w2_;
};

} // namespace detail

/// One Duhamel step of u_t + Lu = u^p from state u. Exposed for calibration
/// tests; run() drives the same stepper with cached multipliers.
inline Field etd_step(const Field& u, double dt, const SolverConfig& config,
                      const ModelParams& params) {
    SolverConfig c = config;
    c.dt = dt;
    detail::EtdStepper stepper(u.grid, params, c);
    Field v = u;
    stepper.step(v);
    return v;
}

namespace detail {

inline bool exceeded(const Field& u, const SolverConfig& cfg) {
    return !u.all_finite() || u.sup_norm() >= cfg.u_max;
}

// One bisection level inside the crossing step; the declared time is the
// midpoint of the half-interval in which the threshold is first exceeded.
inline double refine_crossing(const Field& before, double t0, const SolverConfig& cfg,
                              const ModelParams& params) {
    SolverConfig half = cfg;
    half.dt = 0.5 * cfg.dt;
    EtdStepper stepper(before.grid, params, half);
    Field u = before;
    const bool first_half = !stepper.step(u) || exceeded(u, cfg);
    return first_half ? t0 + 0.25 * cfg.dt : t0 + 0.75 * cfg.dt;
}

} // namespace detail

/// March the mild formulation until the horizon, a sup-norm blow-up, or a
/// numerical failure. Negative values beyond the ringing floor are treated as
/// numerical failure, never clamped.
inline Trajectory run(const Field& u0, const SolverConfig& config, const ModelParams& params) {
    if (!u0.all_finite()) throw std::invalid_argument("run: initial datum is not finite");
    if (u0.min_value() < -config.ringing_floor * std::max(u0.sup_norm(), 1e-300))
        throw std::invalid_argument("run: initial datum must be nonnegative");
    config.validate(u0.sup_norm());

    Trajectory traj;
    const auto record = [&](double t, const Field& u) {
        traj.times.push_back(t);
        traj.sup_norms.push_back(u.sup_norm());
        traj.masses.push_back(u.mass());
        traj.tail_norms.push_back(tail_norm(u, params));
    };
    const auto snapshot = [&](double t, const Field& u) {
        traj.snapshot_times.push_back(t);
        traj.snapshots.push_back(u);
    };

    detail::EtdStepper stepper(u0.grid, params, config);
    Field u = u0;
    double t = 0.0;
    record(t, u);
    if (config.snapshot_stride > 0) snapshot(t, u);

    const std::size_t n_steps = std::size_t(std::ceil(config.horizon / config.dt - 1e-12));
    for (std::size_t k = 0; k < n_steps; ++k) {
        const Field before = u;
        const bool finite = stepper.step(u);
        const double t_next = t + config.dt;
        if (!finite || u.sup_norm() >= config.u_max) {
            traj.outcome = OutcomeKind::blow_up;
            traj.t_star = detail::refine_crossing(before, t, config, params);
            record(t_next, u);
            return traj;
        }
        if (u.min_value() < -config.ringing_floor * std::max(u.sup_norm(), 1e-300)) {
            traj.outcome = OutcomeKind::numerical_failure;
            traj.t_star = t_next;
            record(t_next, u);
            return traj;
        }
        t = t_next;
        record(t, u);
        if (config.snapshot_stride > 0 && (k + 1) % config.snapshot_stride == 0) snapshot(t, u);
    }
    traj.outcome = OutcomeKind::global_within_horizon;
    return traj;
}

/// Picard ladder u_{n+1} = u_0~ + Phi u_n~ on a fixed coarse time grid, with
/// the Duhamel operator Phi evaluated by trapezoidal quadrature in tau and the
/// exact propagator supplying p_{t-tau} * (.).
struct IterationLadder {
    std::vector<double> nodes;
    std::vector<std::vector<Field>> iterates; ///< iterates[n][node]
    std::vector<double> sup_norms;            ///< per iterate
    std::vector<double> monotonicity_defects; ///< max (u_n - u_{n+1})_+ over nodes
    bool truncated = false;                   ///< an iterate exceeded u_max
};

inline IterationLadder picard_iterate(const Field& u0, const std::vector<double>& nodes,
                                      std::size_t n_iters, const SolverConfig& config,
                                      const ModelParams& params) {
    if (nodes.size() < 2 || nodes.front() != 0.0)
        throw std::invalid_argument("picard_iterate: need a time grid starting at 0");
    for (std::size_t j = 1; j < nodes.size(); ++j)
        if (!(nodes[j] > nodes[j - 1]))
            throw std::invalid_argument("picard_iterate: nodes must increase");
    if (n_iters < 1) throw std::invalid_argument("picard_iterate: need at least one iterate");

    const std::size_t K = nodes.size();
    // base iterate: linear flow of the datum
    std::vector<Field> base;
    base.reserve(K);
    for (std::size_t j = 0; j < K; ++j) base.push_back(propagate_linear(u0, nodes[j], params));

    IterationLadder ladder;
    ladder.nodes = nodes;
    ladder.iterates.push_back(base);

    const auto sup_of = [](const std::vector<Field>& fs) {
        double m = 0.0;
        for (const auto& f : fs) m = std::max(m, f.sup_norm());
        return m;
    };
    ladder.sup_norms.push_back(sup_of(base));

    for (std::size_t n = 0; n < n_iters; ++n) {
        const std::vector<Field>& prev = ladder.iterates.back();
        std::vector<Field> next;
        next.reserve(K);
        std::vector<Field> powed;
        powed.reserve(K);
        for (std::size_t j = 0; j < K; ++j) powed.push_back(pow_field(prev[j], config.p));
        for (std::size_t j = 0; j < K; ++j) {
            Field acc = base[j];
            for (std::size_t i = 0; i <= j; ++i) {
                double w;
                if (j == 0)
                    w = 0.0;
                else if (i == 0)
                    w = 0.5 * (nodes[1] - nodes[0]);
                else if (i == j)
                    w = 0.5 * (nodes[j] - nodes[j - 1]);
                else
                    w = 0.5 * (nodes[i + 1] - nodes[i - 1]);
                if (w == 0.0) continue;
                acc = acc + w * propagate_linear(powed[i], nodes[j] - nodes[i], params);
            }
            next.push_back(std::move(acc));
        }
        double defect = 0.0;
        for (std::size_t j = 0; j < K; ++j)
            for (std::size_t i = 0; i < next[j].values.size(); ++i)
                defect = std::max(defect, prev[j].values[i] - next[j].values[i]);
        ladder.monotonicity_defects.push_back(defect);
        ladder.sup_norms.push_back(sup_of(next));
        ladder.iterates.push_back(std::move(next));
        if (ladder.sup_norms.back() >= config.u_max) {
            ladder.truncated = true;
            break;
        }
    }
    return ladder;
}

/// Independent check of the Duhamel identity on stored snapshots: recompute
/// u(t) = p_t * u0 + int_0^t p_{t-tau} * u^p(tau) dtau by trapezoidal
/// quadrature over the snapshots and report the worst relative defect.
struct ResidualReport {
    double max_rel_defect = 0.0;
    std::size_t samples = 0;
};

inline ResidualReport mild_residual(const Trajectory& traj, const ModelParams& params,
                                    const SolverConfig& config, std::size_t max_samples = 8) {
    if (traj.snapshots.size() < 2)
        throw std::invalid_argument("mild_residual: trajectory stores too few snapshots");
    if (traj.snapshot_times.front() != 0.0)
        throw std::invalid_argument("mild_residual: snapshots must start at t = 0");

    const std::size_t n = traj.snapshots.size();
    std::vector<Field> powed;
    powed.reserve(n);
    for (const auto& f : traj.snapshots) powed.push_back(pow_field(f, config.p));

    ResidualReport rep;
    const std::size_t stride = std::max<std::size_t>(1, (n - 1) / max_samples);
    for (std::size_t j = stride; j < n; j += stride) {
        const double tj = traj.snapshot_times[j];
        Field rhs = propagate_linear(traj.snapshots[0], tj, params);
        if (config.source_enabled) {
            for (std::size_t i = 0; i <= j; ++i) {
                double w;
                if (i == 0)
                    w = 0.5 * (traj.snapshot_times[1] - traj.snapshot_times[0]);
                else if (i == j)
                    w = 0.5 * (traj.snapshot_times[j] - traj.snapshot_times[j - 1]);
                else
                    w = 0.5 * (traj.snapshot_times[i + 1] - traj.snapshot_times[i - 1]);
                rhs = rhs + w * propagate_linear(powed[i], tj - traj.snapshot_times[i], params);
            }
        }
        double defect = 0.0;
        for (std::size_t i = 0; i < rhs.values.size(); ++i)
            defect = std::max(defect, std::abs(rhs.values[i] - traj.snapshots[j].values[i]));
        const double scale = std::max(traj.snapshots[j].sup_norm(), 1e-300);
        rep.max_rel_defect = std::max(rep.max_rel_defect, defect / scale);
        ++rep.samples;
    }
    return rep;
}

} // namespace mixedheat
