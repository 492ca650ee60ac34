#include <doctest.h>

#include "dirichlet/calculus.hpp"
#include "dirichlet/errors.hpp"
#include "dirichlet/poisson.hpp"
#include "test_support.hpp"

#include <cmath>
#include <cstring>
#include <numbers>

using namespace dirichlet;
using namespace testing_support;
using std::numbers::pi;

namespace {

double manufactured_error(double h)
{
    const GridPtr g = unit_square(h);
    const GridField f = GridField::sample(g, [](double x, double y) { return -2 * pi * pi * sinsin(x, y); });
    const GridField u = solve_dirichlet(g, f, BoundarySpec::homogeneous());
    return norm_sup(u - GridField::sample(g, sinsin));
}

} // namespace

TEST_CASE("solve_dirichlet")
{
    SUBCASE("zero data gives zero")
    {
        const GridPtr g = unit_square(0.1);
        CHECK(norm_sup(solve_dirichlet(g, GridField(g), BoundarySpec::homogeneous())) == 0.0);
    }
    SUBCASE("manufactured solution converges at second order")
    {
        const double e16 = manufactured_error(1.0 / 16);
        const double e32 = manufactured_error(1.0 / 32);
        CHECK(e16 <= 1.0 / 16 / 16);
        CHECK(e16 / e32 == doctest::Approx(4.0).epsilon(0.05));
    }
    SUBCASE("mid-strip profile of u'' = 1")
    {
        const GridPtr g = build_grid(Domain::strip_truncation(1.0, 6.0), 1.0 / 32);
        const GridField u = solve_dirichlet(g, GridField(g, 1.0), BoundarySpec::homogeneous());
        const std::size_t ic = g->nx() / 2;
        CHECK(g->x(ic) == doctest::Approx(0.0));
        for (std::size_t j = 0; j < g->ny(); ++j) {
            const double y = g->y(j);
            CHECK(u.at(ic, j) == doctest::Approx((y * y - 0.25) / 2).epsilon(1e-7).scale(1.0));
        }
        CHECK(u.at(ic, g->ny() / 2) == doctest::Approx(-0.125).epsilon(1e-8));
    }
    SUBCASE("residual bound and exact boundary values")
    {
        oracle::Rng rng(1);
        const GridPtr g = build_grid(Domain::rectangle(1.5, 0.8), 0.05);
        const GridField f = random_noise(g, rng, false);
        const GridField phi = random_noise(g, rng, false);
        const GridField u = solve_dirichlet(g, f, BoundarySpec::prescribed(phi));
        CHECK(interior_residual(u, f) <= 1e-10 * (1 + norm_sup(f)));
        for (std::size_t k = 0; k < u.size(); ++k)
            if (g->is_boundary(k))
                CHECK(u[k] == phi[k]);
    }
    SUBCASE("bitwise deterministic")
    {
        oracle::Rng rng(2);
        const GridPtr g = unit_square(1.0 / 24);
        const GridField f = random_noise(g, rng, false);
        const GridField a = solve_dirichlet(g, f, BoundarySpec::homogeneous());
        const GridField b = solve_dirichlet(g, f, BoundarySpec::homogeneous());
        CHECK(std::memcmp(a.values().data(), b.values().data(), a.size() * sizeof(double)) == 0);
    }
    SUBCASE("unreachable residual bound")
    {
        const GridPtr g = unit_square(0.1);
        LinearSolveConfig cfg;
        cfg.residual_tol = 1e-300;
        cfg.max_inner_iters = 0;
        CHECK_THROWS_AS(solve_dirichlet(g, GridField(g, 1.0), BoundarySpec::homogeneous(), cfg), NoConvergence);
    }
    SUBCASE("invalid configuration")
    {
        LinearSolveConfig cfg;
        cfg.residual_tol = -1.0;
        CHECK_THROWS_AS(PoissonSolver(unit_square(0.1), cfg), InvalidArgument);
    }
}

TEST_CASE("lift_boundary")
{
    const GridPtr g = unit_square(0.1);
    SUBCASE("zero")
    {
        CHECK(norm_sup(lift_boundary(g, BoundarySpec::homogeneous(), GridField(g))) == 0.0);
    }
    SUBCASE("linear boundary data extend exactly")
    {
        const GridField lin = GridField::sample(g, [](double x, double y) { return x + y; });
        const GridField u = lift_boundary(g, BoundarySpec::prescribed(lin), GridField(g));
        CHECK(norm_sup(u - lin) < 1e-12);
    }
    SUBCASE("constants are harmonic")
    {
        const GridField u = lift_boundary(g, BoundarySpec::prescribed(GridField(g, 1.0)), GridField(g));
        CHECK(norm_sup(u - GridField(g, 1.0)) < 1e-12);
    }
}

TEST_CASE("discrete maximum principle")
{
    oracle::Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const GridPtr g = build_grid(Domain::rectangle(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)),
                                     rng.uniform(0.03, 0.1));
        GridField f(g);
        for (std::size_t k = 0; k < f.size(); ++k)
            f[k] = rng.uniform(0.0, 5.0);
        const GridField u = solve_dirichlet(g, f, BoundarySpec::homogeneous());
        double top = -INFINITY;
        for (double v : u.values())
            top = std::max(top, v);
        CHECK(top <= 0.0);
    }
}

TEST_CASE("integration by parts against the solver")
{
    oracle::Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const GridPtr g = build_grid(Domain::rectangle(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)), 0.05);
        const GridField f = random_noise(g, rng, true);
        const GridField u = solve_dirichlet(g, f, BoundarySpec::homogeneous());
        // Sum_h u (-Lap_h u) = |grad u|_2^2 for u vanishing on the boundary.
        const double lhs = -inner_product(u, laplacian_apply(u));
        CHECK(lhs == doctest::Approx(std::pow(norm_h1semi(u), 2)).epsilon(1e-12));
    }
}

TEST_CASE("linearity")
{
    oracle::Rng rng(5);
    const GridPtr g = unit_square(1.0 / 20);
    PoissonSolver solver(g);
    for (int trial = 0; trial < 10; ++trial) {
        const GridField f = random_noise(g, rng, false);
        const GridField h = random_noise(g, rng, false);
        const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
        const GridField lhs = solver.solve(a * f + b * h, BoundarySpec::homogeneous());
        const GridField rhs = a * solver.solve(f, BoundarySpec::homogeneous())
                              + b * solver.solve(h, BoundarySpec::homogeneous());
        CHECK(norm_sup(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("factorization reuse")
{
    const GridPtr g = unit_square(0.05);
    {
        PoissonSolver solver(g);
        for (int i = 0; i < 5; ++i)
            solver.solve(GridField(g, double(i)), BoundarySpec::homogeneous());
        CHECK(solver.factorizations() == 1);
    }
    {
        LinearSolveConfig cfg;
        cfg.reuse_factorization = false;
        PoissonSolver solver(g, cfg);
        for (int i = 0; i < 5; ++i)
            solver.solve(GridField(g, double(i)), BoundarySpec::homogeneous());
        CHECK(solver.factorizations() == 5);
    }
}
