#pragma once

#include "dirichlet/domain.hpp"

#include <memory>
#include <optional>

namespace dirichlet {

struct LinearSolveConfig {
    /// Bound on sup |Lap_h u - f| over interior nodes; defaults to
    /// 1e-10 * (1 + |f|_sup) per solve.
    std::optional<double> residual_tol;
    /// Iterative-refinement sweeps allowed after the direct solve.
    int max_inner_iters = 5;
    bool reuse_factorization = true;

    double tolerance_for(double f_sup) const;
    void validate() const;
};

/// Direct solver for Lap_h u = f on one grid with Dirichlet data. The
/// factorization of the interior 5-point matrix is built once and reused
/// while `reuse_factorization` is set. Not safe for concurrent use; give
/// each thread its own instance.
class PoissonSolver {
public:
    PoissonSolver(GridPtr grid, LinearSolveConfig cfg = {});
    ~PoissonSolver();
    PoissonSolver(PoissonSolver&&) noexcept;
    PoissonSolver& operator=(PoissonSolver&&) noexcept;

    const Grid& grid() const noexcept { return *grid_; }
    const LinearSolveConfig& config() const noexcept { return cfg_; }

    /// Values of f on boundary nodes are ignored. Throws NoConvergence if the
    /// residual bound cannot be met.
    GridField solve(const GridField& f, const BoundarySpec& bc);

    int factorizations() const noexcept { return factorizations_; }

private:
    struct Impl;
    GridPtr grid_;
    LinearSolveConfig cfg_;
    std::unique_ptr<Impl> impl_;
    int factorizations_ = 0;
};

GridField solve_dirichlet(const GridPtr& grid, const GridField& f, const BoundarySpec& bc,
                          const LinearSolveConfig& cfg = {});

/// Solution of Lap_h u0 = h_rhs with u0 = phi on the boundary.
GridField lift_boundary(const GridPtr& grid, const BoundarySpec& bc, const GridField& h_rhs,
                        const LinearSolveConfig& cfg = {});

/// sup |Lap_h u - f| over interior nodes.
double interior_residual(const GridField& u, const GridField& f);

} // namespace dirichlet
