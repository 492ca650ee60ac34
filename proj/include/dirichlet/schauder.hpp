#pragma once

#include "dirichlet/calculus.hpp"
#include "dirichlet/poisson.hpp"

#include <cstdint>

namespace dirichlet {

/// c2alpha_estimate(u) / holder_norm(f) for the discrete solution of
/// Lap_h u = f with zero boundary data.
double schauder_ratio(PoissonSolver& solver, const GridField& f, const NormConfig& cfg);

/// Random sine polynomial sum_{p,q<=3} a_pq sin(p pi xi) sin(q pi eta) on the
/// grid's realized rectangle, a_pq uniform in [-1, 1]. Trial t of a seed is the t-th draw from one stream.
GridField random_trig_polynomial(const GridPtr& grid, std::uint64_t seed, int trial);

/// Empirical Schauder constant: running maximum of schauder_ratio over
/// `trials` random right-hand sides. Deterministic for a fixed seed.
double estimate_schauder_constant(const GridPtr& grid, const NormConfig& cfg, int trials, std::uint64_t seed);

} // namespace dirichlet
