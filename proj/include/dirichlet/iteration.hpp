#pragma once

#include "dirichlet/calculus.hpp"
#include "dirichlet/domain.hpp"
#include "dirichlet/nonlinearity.hpp"
#include "dirichlet/poisson.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace dirichlet {

enum class StartKind { Zero, BoundaryLift };

enum class Outcome { Converged, Diverged, MaxIters };

std::string_view to_string(Outcome outcome);

struct IterationConfig {
    int max_iters = 200;
    /// Stop once ||grad(u_{i+1} - u_i)||_2 <= h1_tol.
    double h1_tol = 1e-10;
    /// Divergence once |u_i|_0 exceeds this.
    double blowup_sup = 1e6;
    /// Divergence once rho_i > 1 for this many consecutive iterations while
    /// the H^1 difference stays above 1e3 h1_tol.
    int growth_window = 10;
    BoundarySpec boundary;
    StartKind start = StartKind::Zero;
    /// Explicit starting iterate; its boundary values are overwritten by
    /// `boundary`. Takes precedence over `start`.
    std::optional<GridField> initial;
    NormConfig norms;
    LinearSolveConfig linear;

    void validate() const;
};

struct IterationRow {
    int i = 0;
    double sup_u = 0.0;
    double c2alpha_est = 0.0;
    double h1_diff = 0.0; ///< ||grad(u_i - u_{i-1})||_2
    std::optional<double> rho; ///< h1_diff_i / h1_diff_{i-1}, from i = 2 on
    double residual_sup = 0.0; ///< sup |Lap_h u_i - f(x, u_i, grad u_i)|
};

struct IterationReport {
    std::vector<IterationRow> rows;
    Outcome outcome = Outcome::MaxIters;
    double C_empirical = 0.0;
    std::optional<ContractionAnalysis> theory;

    int iterations() const noexcept { return static_cast<int>(rows.size()); }
    std::optional<double> max_rho() const;
    double final_residual() const;
    double final_h1_diff() const;
};

struct IterationResult {
    GridField u;
    IterationReport report;
};

/// Dirichlet iteration u_{i+1} = Lap_h^{-1} f(., u_i, grad u_i) with the
/// configured boundary data. The outcome (converged, diverged, max_iters) is
/// carried by the report; linear-solver errors propagate as exceptions.
IterationResult dirichlet_iterate(const GridPtr& grid, const RhsSpec& spec, const IterationConfig& cfg,
                                  std::optional<ContractionAnalysis> theory = std::nullopt);

/// Lap_h u - f(x, u, grad u) at interior nodes, 0 on the boundary.
GridField residual_field(const GridField& u, const RhsSpec& spec);

struct UniformBoundCheck {
    bool holds = false;
    double margin = 0.0; ///< C_theory - max c2alpha_est
};

/// Every iterate's C^{2,alpha} estimate against C_theory with 10% grid slack.
UniformBoundCheck uniform_bound_check(const IterationReport& report, double C_theory);

/// sin(pi xi) sin(pi eta) on the realized rectangle, scaled so its
/// c2alpha_estimate equals `size`.
GridField interior_bump(const GridPtr& grid, double size, const NormConfig& cfg);

struct UniquenessCheck {
    double perturbation_size = 0.0; ///< c2alpha_estimate of the perturbation
    double sup_difference = 0.0;    ///< |u_perturbed - reference|_0
    Outcome outcome = Outcome::MaxIters;
};

/// Re-runs the iteration from the regular start plus an interior bump of
/// size fraction * radius and compares the limit against `reference`.
UniquenessCheck check_uniqueness(const GridPtr& grid, const RhsSpec& spec, const IterationConfig& cfg,
                                 const GridField& reference, double radius, double fraction = 0.1);

} // namespace dirichlet
