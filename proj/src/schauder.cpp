#include "dirichlet/schauder.hpp"

#include "dirichlet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace dirichlet {

namespace {

constexpr int kDegree = 3;

// Portable uniform draw on [0, 1); std::uniform_real_distribution is
// implementation-defined.
double unit(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Sine modes vanish on the boundary, so the data is compatible with zero
// Dirichlet values at the corners and the ratio stays mesh-independent.
struct TrigCoefficients {
    double amplitude[kDegree][kDegree];
};

TrigCoefficients draw(std::mt19937_64& rng)
{
    TrigCoefficients c{};
    for (auto& row : c.amplitude)
        for (double& a : row)
            a = 2.0 * unit(rng) - 1.0;
    return c;
}

GridField evaluate(const GridPtr& grid, const TrigCoefficients& c)
{
    const Grid& g = *grid;
    const double lx = g.realized_extent_x();
    const double ly = g.realized_extent_y();
    GridField f = GridField::sample(grid, [&](double x, double y) {
        const double xi = (x - g.x(0)) / lx;
        const double eta = (y - g.y(0)) / ly;
        double s = 0.0;
        for (int p = 1; p <= kDegree; ++p)
            for (int q = 1; q <= kDegree; ++q)
                s += c.amplitude[p - 1][q - 1] * std::sin(p * std::numbers::pi * xi)
                     * std::sin(q * std::numbers::pi * eta);
        return s;
    });
    BoundarySpec::homogeneous().impose(f);
    return f;
}

} // namespace

double schauder_ratio(PoissonSolver& solver, const GridField& f, const NormConfig& cfg)
{
    const GridField u = solver.solve(f, BoundarySpec::homogeneous());
    const double denom = holder_norm(f, cfg);
    if (denom == 0.0)
        return 0.0;
    return c2alpha_estimate(u, cfg) / denom;
}

GridField random_trig_polynomial(const GridPtr& grid, std::uint64_t seed, int trial)
{
    std::mt19937_64 rng(seed);
    TrigCoefficients c{};
    for (int t = 0; t <= trial; ++t)
        c = draw(rng);
    return evaluate(grid, c);
}

double estimate_schauder_constant(const GridPtr& grid, const NormConfig& cfg, int trials, std::uint64_t seed)
{
    if (trials < 1)
        throw InvalidArgument("Schauder estimate needs at least one trial");
    PoissonSolver solver(grid);
    std::mt19937_64 rng(seed);
    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
        const GridField f = evaluate(grid, draw(rng));
        best = std::max(best, schauder_ratio(solver, f, cfg));
    }
    return best;
}

} // namespace dirichlet
