#include "dirichlet/iteration.hpp"

#include "dirichlet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dirichlet {

std::string_view to_string(Outcome outcome)
{
    switch (outcome) {
    case Outcome::Converged:
        return "converged";
    case Outcome::Diverged:
        return "diverged";
    case Outcome::MaxIters:
        return "max_iters";
    }
    return "unknown";
}

void IterationConfig::validate() const
{
    if (max_iters < 1)
        throw InvalidArgument("max_iters must be at least 1");
    if (!(h1_tol > 0.0))
        throw InvalidArgument("h1_tol must be positive");
    if (!(blowup_sup > 0.0))
        throw InvalidArgument("blowup_sup must be positive");
    if (growth_window < 1)
        throw InvalidArgument("growth_window must be at least 1");
    norms.validate();
    linear.validate();
}

std::optional<double> IterationReport::max_rho() const
{
    std::optional<double> best;
    for (const IterationRow& r : rows)
        if (r.rho)
            best = best ? std::max(*best, *r.rho) : *r.rho;
    return best;
}

double IterationReport::final_residual() const
{
    return rows.empty() ? 0.0 : rows.back().residual_sup;
}

double IterationReport::final_h1_diff() const
{
    return rows.empty() ? 0.0 : rows.back().h1_diff;
}

namespace {

bool all_finite(const GridField& u)
{
    return std::all_of(u.values().begin(), u.values().end(), [](double v) { return std::isfinite(v); });
}

GridField starting_iterate(const GridPtr& grid, const RhsEvaluator& rhs, const IterationConfig& cfg,
                           PoissonSolver& solver)
{
    if (cfg.initial) {
        GridField u = *cfg.initial;
        cfg.boundary.impose(u);
        return u;
    }
    if (cfg.start == StartKind::BoundaryLift) {
        // u0 solves Lap u0 = h with the boundary data; h is the nonlinearity
        // evaluated at the zero field.
        const GridField zero(grid);
        const GridField h = rhs(zero, gradient(zero));
        return solver.solve(h, cfg.boundary);
    }
    GridField u(grid);
    cfg.boundary.impose(u);
    return u;
}

} // namespace

IterationResult dirichlet_iterate(const GridPtr& grid, const RhsSpec& spec, const IterationConfig& cfg,
                                  std::optional<ContractionAnalysis> theory)
{
    cfg.validate();
    if (!cfg.boundary.fits(*grid))
        throw InvalidArgument("boundary data lives on a different grid");

    PoissonSolver solver(grid, cfg.linear);
    const RhsEvaluator rhs(spec, grid);

    IterationReport report;
    report.theory = std::move(theory);

    GridField u_prev = starting_iterate(grid, rhs, cfg, solver);
    GridField f_prev = rhs(u_prev, gradient(u_prev));

    int growth_streak = 0;
    for (int i = 1; i <= cfg.max_iters; ++i) {
        if (!all_finite(f_prev)) {
            report.outcome = Outcome::Diverged;
            return {std::move(u_prev), std::move(report)};
        }
        GridField u = solver.solve(f_prev, cfg.boundary);
        const double h1_diff = norm_h1semi(u - u_prev);
        GridField f = rhs(u, gradient(u));

        IterationRow row;
        row.i = i;
        row.sup_u = norm_sup(u);
        row.h1_diff = h1_diff;
        row.residual_sup = interior_residual(u, f);
        if (!report.rows.empty()) {
            const double previous = report.rows.back().h1_diff;
            row.rho = previous > 0.0 ? h1_diff / previous : (h1_diff > 0.0 ? INFINITY : 0.0);
        }

        const bool finite = std::isfinite(row.sup_u) && all_finite(u);
        row.c2alpha_est = finite ? c2alpha_estimate(u, cfg.norms) : INFINITY;
        report.C_empirical = std::max(report.C_empirical, row.c2alpha_est);
        report.rows.push_back(row);

        if (!finite || row.sup_u > cfg.blowup_sup) {
            report.outcome = Outcome::Diverged;
            return {std::move(u), std::move(report)};
        }
        if (h1_diff <= cfg.h1_tol) {
            report.outcome = Outcome::Converged;
            return {std::move(u), std::move(report)};
        }
        if (row.rho && *row.rho > 1.0 && h1_diff > 1e3 * cfg.h1_tol)
            ++growth_streak;
        else
            growth_streak = 0;
        if (growth_streak >= cfg.growth_window) {
            report.outcome = Outcome::Diverged;
            return {std::move(u), std::move(report)};
        }
        u_prev = std::move(u);
        f_prev = std::move(f);
    }
    report.outcome = Outcome::MaxIters;
    return {std::move(u_prev), std::move(report)};
}

GridField residual_field(const GridField& u, const RhsSpec& spec)
{
    const GridField f = evaluate_rhs(spec, u, gradient(u));
    GridField r = laplacian_apply(u);
    const Grid& g = u.grid();
    for (std::size_t k = 0; k < r.size(); ++k)
        r[k] = g.is_boundary(k) ? 0.0 : r[k] - f[k];
    return r;
}

UniformBoundCheck uniform_bound_check(const IterationReport& report, double C_theory)
{
    if (report.rows.empty())
        throw InvalidArgument("uniform bound check needs a nonempty report");
    double worst = 0.0;
    for (const IterationRow& r : report.rows)
        worst = std::max(worst, r.c2alpha_est);
    return UniformBoundCheck{worst <= C_theory * 1.1, C_theory - worst};
}

GridField interior_bump(const GridPtr& grid, double size, const NormConfig& cfg)
{
    const Grid& g = *grid;
    const double lx = g.realized_extent_x();
    const double ly = g.realized_extent_y();
    GridField bump = GridField::sample(grid, [&](double x, double y) {
        return std::sin(std::numbers::pi * (x - g.x(0)) / lx) * std::sin(std::numbers::pi * (y - g.y(0)) / ly);
    });
    // Exact zeros on the boundary.
    BoundarySpec::homogeneous().impose(bump);
    const double est = c2alpha_estimate(bump, cfg);
    bump *= size / est;
    return bump;
}

UniquenessCheck check_uniqueness(const GridPtr& grid, const RhsSpec& spec, const IterationConfig& cfg,
                                 const GridField& reference, double radius, double fraction)
{
    IterationConfig perturbed = cfg;
    GridField start(grid);
    if (cfg.initial) {
        start = *cfg.initial;
    } else if (cfg.start == StartKind::BoundaryLift) {
        PoissonSolver solver(grid, cfg.linear);
        const RhsEvaluator rhs(spec, grid);
        const GridField zero(grid);
        start = solver.solve(rhs(zero, gradient(zero)), cfg.boundary);
    }
    const GridField bump = interior_bump(grid, fraction * radius, cfg.norms);
    start += bump;
    perturbed.initial = start;

    const IterationResult run = dirichlet_iterate(grid, spec, perturbed);
    UniquenessCheck check;
    check.perturbation_size = c2alpha_estimate(bump, cfg.norms);
    check.sup_difference = norm_sup(run.u - reference);
    check.outcome = run.report.outcome;
    return check;
}

} // namespace dirichlet
