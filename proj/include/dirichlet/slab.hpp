#pragma once

#include "dirichlet/calculus.hpp"
#include "dirichlet/errors.hpp"
#include "dirichlet/iteration.hpp"
#include "dirichlet/nonlinearity.hpp"

#include <cstdint>
#include <vector>

namespace dirichlet {

struct ExhaustionConfig {
    double d = 1.0;
    int n_start = 3;
    int n_max = 8;
    /// Half-width N of the compact [-N, N] x (-d/2, d/2) used for comparison.
    double compact_halfwidth = 2.0;
    double compact_tol = 1e-6;
    IterationConfig iteration;

    void validate() const;
};

struct TruncationRun {
    int n = 0;
    int iterations = 0;
    Outcome outcome = Outcome::MaxIters;
};

struct ExhaustionResult {
    GridField u_final; ///< solution on the largest truncation
    std::vector<TruncationRun> runs;
    /// tail[j] = sup over the compact of |u_{n_{j+1}} - u_{n_j}|.
    std::vector<double> tail;

    bool tail_within(double tol) const { return !tail.empty() && tail.back() <= tol; }
};

/// A truncation's iteration did not converge.
class TruncationFailure : public Error {
public:
    TruncationFailure(int n, IterationReport report, std::vector<TruncationRun> runs);

    int truncation() const noexcept { return n_; }
    const IterationReport& report() const noexcept { return report_; }
    const std::vector<TruncationRun>& runs() const noexcept { return runs_; }

private:
    int n_;
    IterationReport report_;
    std::vector<TruncationRun> runs_;
};

/// Values of u on the nodes with |x| <= N, ordered by x then y. All grids of
/// one spacing share these nodes.
std::vector<double> compact_restriction(const GridField& u, double N);

/// Solves on [-n, n] x (-d/2, d/2) for n = n_start..n_max with spacing h and
/// records the compact tails. Throws TruncationFailure on the first
/// non-converged truncation.
ExhaustionResult exhaustion_solve(const RhsSpec& spec, const ExhaustionConfig& cfg, double h);

struct SchauderProbe {
    std::vector<double> estimates; ///< one per entry of n_list
    double max = 0.0;
    double max_over_min = 0.0;
};

/// Empirical Schauder constants of the truncations of one strip, same seed.
SchauderProbe schauder_uniformity_probe(double d, const std::vector<int>& n_list, double h, const NormConfig& cfg,
                                        int trials, std::uint64_t seed);

} // namespace dirichlet
