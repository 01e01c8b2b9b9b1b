#pragma once

#include "mixedheat/kernels.hpp"
#include "mixedheat/solver.hpp"

#include <algorithm>
#include <functional>

namespace mixedheat {

/// The scalar majorant recursion delta_{n+1} = delta_0 + delta_n^p and its
/// limit. The recursion converges exactly when delta_0 does not exceed
/// delta_0^* = (1 - 1/p) p^{-1/(p-1)}, the largest offset for which
/// x = delta_0 + x^p still has a fixed point.
struct FujitaSchedule {
    double delta0 = 0.0;
    double p = 2.0;
    std::vector<double> sequence; ///< delta_0, delta_1, ...
    bool converged = false;
    double limit = 0.0;       ///< M, smallest fixed point (when converged)
    double delta0_star = 0.0; ///< convergence threshold
    std::size_t diverged_at = 0; ///< first index past 1e9, 0 if none
};

inline double delta0_threshold(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("delta0_threshold: p must exceed 1");
    return (1.0 - 1.0 / p) * std::pow(p, -1.0 / (p - 1.0));
}

inline FujitaSchedule delta_schedule(double delta0, double p, std::size_t n_max) {
    if (!(delta0 >= 0.0)) throw std::invalid_argument("delta_schedule: delta0 must be >= 0");
    if (!(p > 1.0)) throw std::invalid_argument("delta_schedule: p must exceed 1");
    FujitaSchedule sch;
    sch.delta0 = delta0;
    sch.p = p;
    sch.delta0_star = delta0_threshold(p);
    sch.converged = delta0 <= sch.delta0_star * (1.0 + 1e-14);

    const std::size_t keep = std::min<std::size_t>(n_max + 1, 10001);
    sch.sequence.reserve(keep);
    double d = delta0;
    sch.sequence.push_back(d);
    for (std::size_t n = 1; n <= n_max; ++n) {
        d = delta0 + std::pow(d, p);
        if (sch.sequence.size() < keep) sch.sequence.push_back(d);
        if (!std::isfinite(d) || d > 1e9) {
            sch.diverged_at = n;
            sch.converged = false;
            break;
        }
    }

    if (delta0 == 0.0) {
        sch.limit = 0.0;
    } else if (sch.converged) {
        // Newton from 0 on g(x) = delta0 + x^p - x climbs monotonically to the
        // smallest root; at the tangency delta0 = delta0^* it still converges
        // (linearly) to x^* = p^{-1/(p-1)}.
        double x = 0.0;
        for (int it = 0; it < 400; ++it) {
            const double gx = delta0 + std::pow(x, p) - x;
            const double dgx = p * std::pow(x, p - 1.0) - 1.0;
            const double step = gx / dgx;
            x -= step;
            if (std::abs(step) < 1e-16 * std::max(1.0, x)) break;
        }
        sch.limit = x;
    } else {
        sch.limit = std::numeric_limits<double>::quiet_NaN();
    }
    return sch;
}

/// Threshold tau_0 > (C^{1-p} (N(p-1)/(2s) - 1))^{2s/(2s - N(p-1))} above
/// which the Duhamel self-bound closes. Requires p above the critical power
/// (otherwise the tau-integral diverges) and is increasing in C.
inline double tau0_lower_bound(int dim, double s, double p, double C) {
    if (!(C > 0.0)) throw std::invalid_argument("tau0_lower_bound: C must be positive");
    const double pbar = critical_exponent(dim, s);
    if (!(p > pbar))
        throw std::invalid_argument("tau0_lower_bound: requires p above the critical power");
    const double a = dim * (p - 1.0) / (2.0 * s);
    return std::pow(std::pow(C, 1.0 - p) * (a - 1.0), 2.0 * s / (2.0 * s - dim * (p - 1.0)));
}

/// Initial datum (1-eps) delta0 p_{tau0} sampled on the grid, so the strict
/// smallness u0 < delta0 p_{tau0} holds at every grid point.
inline Field small_initial_datum(const GridSpec& g, const ModelParams& params, double delta0,
                                 double tau0, double eps = 1e-3) {
    if (!(delta0 > 0.0)) throw std::invalid_argument("small_initial_datum: delta0 must be > 0");
    if (!(tau0 > 0.0)) throw std::invalid_argument("small_initial_datum: tau0 must be > 0");
    return (1.0 - eps) * delta0 * mixed_kernel(params, g, tau0).field;
}

// ---------------------------------------------------------------------------
// Rescaled cutoff test functions
// ---------------------------------------------------------------------------

namespace detail {

/// Septic smoothstep: C^3 transition from 0 to 1 on [0,1] with exact
/// plateaus outside. Profile version 1; the estimates only need finitely
/// many derivatives, so C^3 stands in for a mollified bump.
inline double smoothstep7(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double u2 = u * u;
    return u2 * u2 * (35.0 - 84.0 * u + 70.0 * u2 - 20.0 * u2 * u);
}

inline double smoothstep7_deriv(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double u2 = u * u;
    return u2 * u * (140.0 - 420.0 * u + 420.0 * u2 - 140.0 * u2 * u);
}

} // namespace detail

/// 1 on [0,1/2], 0 on [1,inf), monotone C^3 in between.
inline double cutoff_profile(double rho) { return detail::smoothstep7(2.0 * (1.0 - rho)); }

inline double cutoff_profile_deriv(double rho) {
    return -2.0 * detail::smoothstep7_deriv(2.0 * (1.0 - rho));
}

/// Rescaled cutoff family: phi(x,t) = zeta^m(x/(beta r)) psi^m(t/r^{2s}) with
/// m = 2p/(p-1) and the critical-case spatial dilation beta (beta = 1 in the
/// subcritical argument).
struct TestFunctionFamily {
    double p = 2.0;
    double r = 2.0;
    double beta = 1.0;

    double m() const { return 2.0 * p / (p - 1.0); }

    void validate() const {
        if (!(p > 1.0)) throw std::invalid_argument("TestFunctionFamily: p must exceed 1");
        if (!(r > 1.0)) throw std::invalid_argument("TestFunctionFamily: r must exceed 1");
        if (!(beta >= 1.0)) throw std::invalid_argument("TestFunctionFamily: beta must be >= 1");
    }
};

/// Separable space-time weight and its derived quantities; the spatial
/// derivatives are evaluated spectrally.
struct TestFunctionSet {
    TestFunctionFamily family;
    Field xi_m;                      ///< zeta^m(x/(beta r))
    Field zeta_base;                 ///< zeta(x/(beta r))
    Field lap_xi;                    ///< Laplacian of xi_m
    Field frac_xi;                   ///< (-Laplace)^s of xi_m
    std::vector<double> time_nodes;
    std::vector<double> psi_m;       ///< psi^m(t/r^{2s})
    std::vector<double> psi_m_dt;    ///< d/dt psi^m(t/r^{2s})
};

inline TestFunctionSet build_test_function(const TestFunctionFamily& family, const GridSpec& g,
                                           const std::vector<double>& time_nodes, double s) {
    family.validate();
    detail::require_order(s);
    const double spatial_radius = family.beta * family.r;
    if (!(spatial_radius < g.half_length))
        throw std::invalid_argument("build_test_function: spatial support exceeds the box");
    const double t_support = std::pow(family.r, 2.0 * s);
    if (time_nodes.empty() || !(time_nodes.back() >= t_support))
        throw std::invalid_argument("build_test_function: time horizon does not cover the "
                                    "support of the window");

    TestFunctionSet set;
    set.family = family;
    set.time_nodes = time_nodes;
    const double m = family.m();

    set.zeta_base = Field(g);
    set.xi_m = Field(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double z = cutoff_profile(g.radius(i) / spatial_radius);
        set.zeta_base.values[i] = z;
        set.xi_m.values[i] = std::pow(z, m);
    }

    SpectrumField F = forward_transform(set.xi_m);
    SpectrumField lap = F, frac = F;
    for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
        const double xi = g.xi_magnitude(i);
        lap.coeffs[i] *= -(xi * xi);
        frac.coeffs[i] *= std::pow(xi, 2.0 * s);
    }
    set.lap_xi = inverse_transform(lap);
    set.frac_xi = inverse_transform(frac);

    set.psi_m.resize(time_nodes.size());
    set.psi_m_dt.resize(time_nodes.size());
    for (std::size_t j = 0; j < time_nodes.size(); ++j) {
        const double theta = time_nodes[j] / t_support;
        const double ps = cutoff_profile(theta);
        set.psi_m[j] = std::pow(ps, m);
        set.psi_m_dt[j] = ps > 0.0 ? m * std::pow(ps, m - 1.0) * cutoff_profile_deriv(theta) /
                                         t_support
                                   : 0.0;
    }
    return set;
}

/// Pointwise convexity bound for the rescaled cutoff: the fractional
/// Laplacian of zeta^m stays below m zeta^{m-1} (-Laplace)^s zeta. Reported
/// as the largest signed violation together with the scale of both sides.
struct ConvexityReport {
    double max_violation = 0.0; ///< max over x of LHS - RHS (negative: margin)
    double scale = 0.0;
};

inline ConvexityReport check_fractional_convexity(const GridSpec& g, double s,
                                                  const TestFunctionFamily& family) {
    family.validate();
    const double spatial_radius = family.beta * family.r;
    if (!(spatial_radius < g.half_length))
        throw std::invalid_argument("check_fractional_convexity: support exceeds the box");
    const double m = family.m();
    Field w(g), wm(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double z = cutoff_profile(g.radius(i) / spatial_radius);
        w.values[i] = z;
        wm.values[i] = std::pow(z, m);
    }
    const auto frac = [&](const Field& f) {
        SpectrumField F = forward_transform(f);
        for (std::size_t i = 0; i < F.coeffs.size(); ++i)
            F.coeffs[i] *= std::pow(g.xi_magnitude(i), 2.0 * s);
        return inverse_transform(F);
    };
    const Field lhs = frac(wm);
    const Field fw = frac(w);
    ConvexityReport rep;
    rep.max_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double rhs = m * std::pow(w.values[i], m - 1.0) * fw.values[i];
        rep.max_violation = std::max(rep.max_violation, lhs.values[i] - rhs);
        rep.scale = std::max({rep.scale, std::abs(lhs.values[i]), std::abs(rhs)});
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Envelope and Duhamel bound checks
// ---------------------------------------------------------------------------

/// Per-iterate maxima of u_n~ / p_{t+tau0} compared against the schedule.
struct EnvelopeReport {
    std::vector<double> ratios;  ///< per iterate, max over nodes and space
    std::vector<double> deltas;  ///< matching schedule values
    double limit = 0.0;          ///< schedule limit M
    double max_excess = 0.0;     ///< max over n of ratios[n] - deltas[n]
    bool ok = true;              ///< max_excess within the quadrature tolerance
};

inline EnvelopeReport envelope_check(const IterationLadder& ladder, const FujitaSchedule& schedule,
                                     double tau0, const ModelParams& params,
                                     double tolerance = 1e-3) {
    if (ladder.iterates.empty()) throw std::invalid_argument("envelope_check: empty ladder");
    if (!schedule.converged)
        throw std::invalid_argument("envelope_check: schedule did not converge");
    const GridSpec& g = ladder.iterates[0][0].grid;

    std::vector<Field> envelopes;
    envelopes.reserve(ladder.nodes.size());
    for (double t : ladder.nodes)
        envelopes.push_back(mixed_kernel(params, g, t + tau0).field);

    EnvelopeReport rep;
    rep.limit = schedule.limit;
    for (std::size_t n = 0; n < ladder.iterates.size(); ++n) {
        double ratio = 0.0;
        for (std::size_t j = 0; j < ladder.nodes.size(); ++j) {
            const auto& u = ladder.iterates[n][j].values;
            const auto& pk = envelopes[j].values;
            for (std::size_t i = 0; i < u.size(); ++i)
                if (pk[i] > 0.0) ratio = std::max(ratio, u[i] / pk[i]);
        }
        rep.ratios.push_back(ratio);
        const double dn = n < schedule.sequence.size() ? schedule.sequence[n]
                                                       : schedule.sequence.back();
        rep.deltas.push_back(dn);
        rep.max_excess = std::max(rep.max_excess, ratio - dn);
    }
    rep.ok = rep.max_excess <= tolerance;
    return rep;
}

namespace detail {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fb, double fm, double whole, double tol,
                               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fb, fm, whole, tol, 48);
}

} // namespace detail

/// Numerical verification of the closing inequality
///   int_0^t p_{t-tau} * p_{tau+tau0}^p dtau < p_{t+tau0}
/// at every grid point for each sampled t, plus the quadrature-vs-closed-form
/// check of int_0^inf (tau+tau0)^{-a} dtau = tau0^{1-a}/(a-1).
struct DuhamelBoundReport {
    double min_margin_rel = 0.0; ///< min over (x,t) of (RHS-LHS)/sup RHS
    double worst_t = 0.0;
    double tau_integral_quadrature = 0.0;
    double tau_integral_closed_form = 0.0;
    bool strict = false;
};

inline DuhamelBoundReport duhamel_bound_check(const ModelParams& params, double p, double tau0,
                                              const GridSpec& g, const std::vector<double>& ts,
                                              std::size_t n_tau = 48) {
    if (!(p > params.p_critical))
        throw std::invalid_argument("duhamel_bound_check: requires p above the critical power");
    if (!(tau0 > 0.0)) throw std::invalid_argument("duhamel_bound_check: tau0 must be positive");
    if (ts.empty()) throw std::invalid_argument("duhamel_bound_check: no sample times");

    DuhamelBoundReport rep;
    rep.min_margin_rel = std::numeric_limits<double>::infinity();
    for (double t : ts) {
        // trapezoid over tau in [0, t]; p_{t-tau}* is the exact propagator
        const double h = t / double(n_tau);
        Field lhs(g, 0.0);
        for (std::size_t i = 0; i <= n_tau; ++i) {
            const double tau = h * double(i);
            const double w = (i == 0 || i == n_tau) ? 0.5 * h : h;
            const Field powed =
                pow_field(mixed_kernel(params, g, tau + tau0).field, p);
            lhs = lhs + w * propagate_linear(powed, t - tau, params);
        }
        const Field rhs = mixed_kernel(params, g, t + tau0).field;
        const double sup = rhs.max_value();
        double margin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < lhs.values.size(); ++i)
            margin = std::min(margin, (rhs.values[i] - lhs.values[i]) / sup);
        if (margin < rep.min_margin_rel) {
            rep.min_margin_rel = margin;
            rep.worst_t = t;
        }
    }

    const double a = params.dim * (p - 1.0) / (2.0 * params.s);
    const double cut = 1000.0 * tau0;
    const double quad = detail::integrate(
        [a, tau0](double tau) { return std::pow(tau + tau0, -a); }, 0.0, cut, 1e-12);
    const double tail = std::pow(cut + tau0, 1.0 - a) / (a - 1.0);
    rep.tau_integral_quadrature = quad + tail;
    rep.tau_integral_closed_form = std::pow(tau0, 1.0 - a) / (a - 1.0);
    rep.strict = rep.min_margin_rel > 0.0;
    return rep;
}

// ---------------------------------------------------------------------------
// Non-existence certificate
// ---------------------------------------------------------------------------

struct CertificateRow {
    double r = 0.0;
    double integral = 0.0;    ///< iint u^p phi
    double bound_value = 0.0; ///< r^{N+2s-2sp/(p-1)} (unit constant)
    double weak_defect = 0.0; ///< relative defect of the weak identity
};

struct CertificateReport {
    std::vector<CertificateRow> rows;
    double fitted_slope = 0.0;     ///< least-squares slope of log I vs log r
    double theory_exponent = 0.0;  ///< N + 2s - 2sp/(p-1)
    bool all_zero = false;         ///< trajectory is identically zero
};

/// Scaling exponent of the rescaled-cutoff bound; negative exactly when p is
/// below the critical power and zero at it.
inline double certificate_exponent(int dim, double s, double p) {
    return dim + 2.0 * s - 2.0 * s * p / (p - 1.0);
}

inline CertificateReport nonexistence_certificate(const Trajectory& traj,
                                                  const ModelParams& params, double p,
                                                  const std::vector<double>& r_values) {
    if (traj.snapshots.size() < 3)
        throw std::invalid_argument("nonexistence_certificate: trajectory stores too few "
                                    "snapshots");
    if (r_values.size() < 3)
        throw std::invalid_argument("nonexistence_certificate: need at least 3 values of r "
                                    "for a fit");
    const GridSpec& g = traj.snapshots[0].grid;

    CertificateReport rep;
    rep.theory_exponent = certificate_exponent(params.dim, params.s, p);

    const std::size_t n = traj.snapshots.size();
    std::vector<Field> powed;
    powed.reserve(n);
    for (const auto& f : traj.snapshots) powed.push_back(pow_field(f, p));

    for (double r : r_values) {
        TestFunctionFamily family{p, r, 1.0};
        const TestFunctionSet set = build_test_function(family, g, traj.snapshot_times, params.s);

        double integral = 0.0;   // iint u^p phi
        double lhs_weak = 0.0;   // iint u (-d_t phi + L phi)
        for (std::size_t j = 0; j < n; ++j) {
            double w;
            if (j == 0)
                w = 0.5 * (traj.snapshot_times[1] - traj.snapshot_times[0]);
            else if (j == n - 1)
                w = 0.5 * (traj.snapshot_times[j] - traj.snapshot_times[j - 1]);
            else
                w = 0.5 * (traj.snapshot_times[j + 1] - traj.snapshot_times[j - 1]);

            double sheet_up = 0.0, sheet_weak = 0.0;
            const auto& u = traj.snapshots[j].values;
            const auto& up = powed[j].values;
            for (std::size_t i = 0; i < u.size(); ++i) {
                sheet_up += up[i] * set.xi_m.values[i];
                sheet_weak += u[i] * (-set.xi_m.values[i] * set.psi_m_dt[j] +
                                      set.psi_m[j] * (-set.lap_xi.values[i] +
                                                      set.frac_xi.values[i]));
            }
            integral += w * set.psi_m[j] * sheet_up * g.cell_volume();
            lhs_weak += w * sheet_weak * g.cell_volume();
        }
        double datum_term = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            datum_term += traj.snapshots[0].values[i] * set.xi_m.values[i];
        datum_term *= g.cell_volume(); // psi^m(0) = 1

        CertificateRow row;
        row.r = r;
        row.integral = integral;
        row.bound_value = std::pow(r, rep.theory_exponent);
        const double scale = std::max({std::abs(lhs_weak), std::abs(datum_term),
                                       std::abs(integral), 1e-300});
        row.weak_defect = std::abs(lhs_weak - datum_term - integral) / scale;
        rep.rows.push_back(row);
    }

    // least-squares fit of log I against log r
    std::size_t npos = 0;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& row : rep.rows) {
        if (!(row.integral > 0.0)) continue;
        const double lx = std::log(row.r), ly = std::log(row.integral);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++npos;
    }
    if (npos < 2) {
        rep.all_zero = true;
        rep.fitted_slope = 0.0;
    } else {
        rep.fitted_slope = (double(npos) * sxy - sx * sy) / (double(npos) * sxx - sx * sx);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Dichotomy sweep
// ---------------------------------------------------------------------------

struct SweepCell {
    double s = 0.5;
    double p = 2.0;
    std::string datum_kind = "uniform"; ///< "uniform" | "small" | "zero"
    double amplitude = 1.0;             ///< uniform level, or delta0 multiplier
    double delta0 = 0.0;                ///< resolved delta0 (small datum)
    double tau0 = 0.0;                  ///< resolved tau0 (small datum)
};

/// One sweep cell's parameters and outcome.
struct DichotomyRecord {
    int dim = 1;
    double s = 0.5;
    double p = 2.0;
    std::string datum_kind;
    double amplitude = 0.0;
    double delta0 = 0.0;
    double tau0 = 0.0;
    OutcomeKind outcome = OutcomeKind::global_within_horizon;
    double t_star = 0.0;
    double max_supnorm = 0.0;
    bool envelope_ok = true;
};

inline DichotomyRecord run_sweep_cell(const SweepCell& cell, const GridSpec& g,
                                      const SolverConfig& base_config) {
    const ModelParams params = ModelParams::make(g.dim, cell.s);
    SolverConfig cfg = base_config;
    cfg.p = cell.p;

    Field u0(g, 0.0);
    double envelope_limit = 0.0;
    if (cell.datum_kind == "uniform") {
        u0 = Field(g, cell.amplitude);
    } else if (cell.datum_kind == "small") {
        u0 = small_initial_datum(g, params, cell.delta0, cell.tau0);
        const FujitaSchedule sch = delta_schedule(cell.delta0, cell.p, 200);
        envelope_limit = sch.converged ? sch.limit : 0.0;
    } else if (cell.datum_kind != "zero") {
        throw std::invalid_argument("run_sweep_cell: unknown datum kind " + cell.datum_kind);
    }

    const Trajectory traj = run(u0, cfg, params);

    DichotomyRecord rec;
    rec.dim = g.dim;
    rec.s = cell.s;
    rec.p = cell.p;
    rec.datum_kind = cell.datum_kind;
    rec.amplitude = cell.amplitude;
    rec.delta0 = cell.delta0;
    rec.tau0 = cell.tau0;
    rec.outcome = traj.outcome;
    rec.t_star = traj.t_star;
    for (double sn : traj.sup_norms)
        if (std::isfinite(sn)) rec.max_supnorm = std::max(rec.max_supnorm, sn);

    if (cell.datum_kind == "small" && envelope_limit > 0.0) {
        // sup_x p_{t+tau0} equals the symbol mean (nonnegative symbol peaks at 0)
        const std::vector<double> lam = operator_eigenvalues(g, params.s);
        const double pref = g.spectral_cell() * std::pow(2.0 * M_PI, -double(g.dim));
        for (std::size_t j = 0; j < traj.times.size(); ++j) {
            double sum = 0.0;
            for (double l : lam) sum += std::exp(-(traj.times[j] + cell.tau0) * l);
            const double env = envelope_limit * pref * sum + 1e-3;
            if (traj.sup_norms[j] > env) {
                rec.envelope_ok = false;
                break;
            }
        }
    }
    return rec;
}

/// Run every cell and return the records in deterministic parameter order.
inline std::vector<DichotomyRecord> dichotomy_sweep(const std::vector<SweepCell>& cells,
                                                    const GridSpec& g,
                                                    const SolverConfig& base_config) {
    std::vector<SweepCell> ordered = cells;
    std::sort(ordered.begin(), ordered.end(), [](const SweepCell& a, const SweepCell& b) {
        return std::tie(a.s, a.p, a.datum_kind, a.amplitude, a.delta0, a.tau0) <
               std::tie(b.s, b.p, b.datum_kind, b.amplitude, b.delta0, b.tau0);
    });
    std::vector<DichotomyRecord> records;
    records.reserve(ordered.size());
    for (const auto& cell : ordered) records.push_back(run_sweep_cell(cell, g, base_config));
    return records;
}

} // namespace mixedheat
