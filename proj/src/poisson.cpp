#include "dirichlet/poisson.hpp"

#include "dirichlet/calculus.hpp"
#include "dirichlet/errors.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace dirichlet {

double LinearSolveConfig::tolerance_for(double f_sup) const
{
    return residual_tol.value_or(1e-10 * (1.0 + f_sup));
}

void LinearSolveConfig::validate() const
{
    if (residual_tol && !(*residual_tol > 0.0))
        throw InvalidArgument("residual_tol must be positive");
    if (max_inner_iters < 0)
        throw InvalidArgument("max_inner_iters must be nonnegative");
}

struct PoissonSolver::Impl {
    std::vector<long> unknown_of; // node -> interior unknown, -1 on boundary
    std::vector<std::size_t> node_of;
    Eigen::SparseMatrix<double> matrix; // -Lap_h restricted to interior unknowns
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    bool factored = false;
};

PoissonSolver::PoissonSolver(GridPtr grid, LinearSolveConfig cfg)
    : grid_(std::move(grid)), cfg_(cfg), impl_(std::make_unique<Impl>())
{
    cfg_.validate();
    const Grid& g = *grid_;
    impl_->unknown_of.assign(g.node_count(), -1);
    for (std::size_t k = 0; k < g.node_count(); ++k) {
        if (!g.is_boundary(k)) {
            impl_->unknown_of[k] = static_cast<long>(impl_->node_of.size());
            impl_->node_of.push_back(k);
        }
    }

    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(5 * impl_->node_of.size());
    for (std::size_t r = 0; r < impl_->node_of.size(); ++r) {
        const std::size_t k = impl_->node_of[r];
        const std::size_t i = g.col(k);
        const std::size_t j = g.row(k);
        entries.emplace_back(long(r), long(r), 4.0 * inv_h2);
        for (std::size_t nb : {g.index(i - 1, j), g.index(i + 1, j), g.index(i, j - 1), g.index(i, j + 1)}) {
            const long c = impl_->unknown_of[nb];
            if (c >= 0)
                entries.emplace_back(long(r), c, -inv_h2);
        }
    }
    const auto n = static_cast<long>(impl_->node_of.size());
    impl_->matrix.resize(n, n);
    impl_->matrix.setFromTriplets(entries.begin(), entries.end());
}

PoissonSolver::~PoissonSolver() = default;
PoissonSolver::PoissonSolver(PoissonSolver&&) noexcept = default;
PoissonSolver& PoissonSolver::operator=(PoissonSolver&&) noexcept = default;

GridField PoissonSolver::solve(const GridField& f, const BoundarySpec& bc)
{
    const Grid& g = *grid_;
    if (!f.grid().same_layout(g))
        throw InvalidArgument("right-hand side lives on a different grid");
    if (!bc.fits(g))
        throw InvalidArgument("boundary data lives on a different grid");

    if (!impl_->factored || !cfg_.reuse_factorization) {
        impl_->ldlt.compute(impl_->matrix);
        if (impl_->ldlt.info() != Eigen::Success)
            throw Error("internal error: 5-point Dirichlet matrix failed to factor");
        impl_->factored = true;
        ++factorizations_;
    }

    GridField u(grid_);
    bc.impose(u);

    double f_sup = 0.0;
    for (std::size_t k : impl_->node_of)
        f_sup = std::max(f_sup, std::abs(f[k]));
    const double tol = cfg_.tolerance_for(f_sup);

    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    const auto n = static_cast<long>(impl_->node_of.size());
    Eigen::VectorXd b(n);
    for (long r = 0; r < n; ++r) {
        const std::size_t k = impl_->node_of[std::size_t(r)];
        const std::size_t i = g.col(k);
        const std::size_t j = g.row(k);
        double rhs = -f[k];
        for (std::size_t nb : {g.index(i - 1, j), g.index(i + 1, j), g.index(i, j - 1), g.index(i, j + 1)})
            if (impl_->unknown_of[nb] < 0)
                rhs += u[nb] * inv_h2;
        b[r] = rhs;
    }

    Eigen::VectorXd x = impl_->ldlt.solve(b);
    auto scatter = [&] {
        for (long r = 0; r < n; ++r)
            u[impl_->node_of[std::size_t(r)]] = x[r];
    };
    scatter();

    double residual = interior_residual(u, f);
    int sweeps = 0;
    while (!(residual <= tol)) {
        if (sweeps >= cfg_.max_inner_iters)
            throw NoConvergence("Poisson solve missed residual bound " + std::to_string(tol) + " (residual "
                                    + std::to_string(residual) + ")",
                                sweeps, residual);
        const Eigen::VectorXd r = b - impl_->matrix * x;
        x += impl_->ldlt.solve(r);
        scatter();
        residual = interior_residual(u, f);
        ++sweeps;
    }
    return u;
}

GridField solve_dirichlet(const GridPtr& grid, const GridField& f, const BoundarySpec& bc,
                          const LinearSolveConfig& cfg)
{
    PoissonSolver solver(grid, cfg);
    return solver.solve(f, bc);
}

GridField lift_boundary(const GridPtr& grid, const BoundarySpec& bc, const GridField& h_rhs,
                        const LinearSolveConfig& cfg)
{
    return solve_dirichlet(grid, h_rhs, bc, cfg);
}

double interior_residual(const GridField& u, const GridField& f)
{
    const Grid& g = u.grid();
    const GridField lap = laplacian_apply(u);
    double m = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k)
        if (!g.is_boundary(k))
            m = std::max(m, std::abs(lap[k] - f[k]));
    return m;
}

} // namespace dirichlet
