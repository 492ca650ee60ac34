#include "dirichlet/slab.hpp"

#include "dirichlet/errors.hpp"
#include "dirichlet/schauder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dirichlet {

void ExhaustionConfig::validate() const
{
    if (!(d > 0.0))
        throw InvalidArgument("strip width must be positive");
    if (!(compact_halfwidth > 0.0) || n_start < compact_halfwidth + 1.0)
        throw InvalidArgument("n_start must be at least N + 1");
    if (n_max < n_start)
        throw InvalidArgument("n_max must not be below n_start");
    if (!iteration.boundary.is_homogeneous())
        throw InvalidArgument("exhaustion runs use zero boundary data");
    iteration.validate();
}

TruncationFailure::TruncationFailure(int n, IterationReport report, std::vector<TruncationRun> runs)
    : Error("iteration on truncation n = " + std::to_string(n) + " ended " + std::string(to_string(report.outcome))),
      n_(n), report_(std::move(report)), runs_(std::move(runs))
{
}

std::vector<double> compact_restriction(const GridField& u, double N)
{
    const Grid& g = u.grid();
    const double eps = 1e-9 * g.spacing();
    std::vector<double> out;
    for (std::size_t i = 0; i < g.nx(); ++i) {
        if (std::abs(g.x(i)) > N + eps)
            continue;
        for (std::size_t j = 0; j < g.ny(); ++j)
            out.push_back(u.at(i, j));
    }
    return out;
}

ExhaustionResult exhaustion_solve(const RhsSpec& spec, const ExhaustionConfig& cfg, double h)
{
    cfg.validate();
    ExhaustionResult result;
    std::vector<double> previous;
    for (int n = cfg.n_start; n <= cfg.n_max; ++n) {
        const GridPtr grid = build_grid(Domain::strip_truncation(cfg.d, n), h);
        IterationResult run = dirichlet_iterate(grid, spec, cfg.iteration);
        result.runs.push_back({n, run.report.iterations(), run.report.outcome});
        if (run.report.outcome != Outcome::Converged)
            throw TruncationFailure(n, std::move(run.report), result.runs);

        std::vector<double> current = compact_restriction(run.u, cfg.compact_halfwidth);
        if (!previous.empty()) {
            if (previous.size() != current.size())
                throw Error("internal error: truncations do not share the compact nodes");
            double sup = 0.0;
            for (std::size_t k = 0; k < current.size(); ++k)
                sup = std::max(sup, std::abs(current[k] - previous[k]));
            result.tail.push_back(sup);
        }
        previous = std::move(current);
        result.u_final = std::move(run.u);
    }
    return result;
}

SchauderProbe schauder_uniformity_probe(double d, const std::vector<int>& n_list, double h, const NormConfig& cfg,
                                        int trials, std::uint64_t seed)
{
    if (n_list.empty())
        throw InvalidArgument("n_list must be nonempty");
    SchauderProbe probe;
    for (int n : n_list)
        probe.estimates.push_back(
            estimate_schauder_constant(build_grid(Domain::strip_truncation(d, n), h), cfg, trials, seed));
    const auto [lo, hi] = std::minmax_element(probe.estimates.begin(), probe.estimates.end());
    probe.max = *hi;
    probe.max_over_min = *lo > 0.0 ? *hi / *lo : INFINITY;
    return probe;
}

} // namespace dirichlet
