#include <doctest.h>

#include "dirichlet/errors.hpp"
#include "dirichlet/mce.hpp"
#include "dirichlet/schauder.hpp"
#include "dirichlet/slab.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace dirichlet;
using namespace testing_support;

namespace {

ExhaustionConfig small_config()
{
    ExhaustionConfig cfg;
    cfg.d = 1.0;
    cfg.compact_halfwidth = 1.0;
    cfg.n_start = 2;
    cfg.n_max = 5;
    cfg.iteration.h1_tol = 1e-12;
    return cfg;
}

} // namespace

TEST_CASE("y-only Poisson data on growing truncations")
{
    const double h = 1.0 / 16;
    const ExhaustionResult r = exhaustion_solve(make_grad_lipschitz([](double, double) { return 1.0; }, 0.0),
                                                small_config(), h);
    REQUIRE(r.runs.size() == 4);
    REQUIRE(r.tail.size() == 3);
    for (double t : r.tail)
        CHECK(t > 0.0);
    for (std::size_t j = 1; j < r.tail.size(); ++j)
        CHECK(r.tail[j] < r.tail[j - 1]);

    const Grid& g = r.u_final.grid();
    for (std::size_t i = 0; i < g.nx(); ++i) {
        if (std::abs(g.x(i)) > 1.0)
            continue;
        for (std::size_t j = 0; j < g.ny(); ++j) {
            const double y = g.y(j);
            CHECK(std::abs(r.u_final.at(i, j) - (y * y - 0.25) / 2) <= 4 * h * h);
        }
    }
    for (const TruncationRun& run : r.runs)
        CHECK(run.outcome == Outcome::Converged);
}

TEST_CASE("zero data stays zero")
{
    const ExhaustionResult r = exhaustion_solve(make_grad_lipschitz(nullptr, 0.0), small_config(), 1.0 / 8);
    CHECK(norm_sup(r.u_final) == 0.0);
    for (double t : r.tail)
        CHECK(t == 0.0);
}

TEST_CASE("constant mean curvature approaches the arc")
{
    const double h = 1.0 / 16, H = 0.2;
    ExhaustionConfig cfg = small_config();
    cfg.n_start = 4; // N + 3
    cfg.n_max = 5;
    const ExhaustionResult r = exhaustion_solve(make_mean_curvature([=](double, double) { return H; }), cfg, h);
    const ArcSolution arc(1.0, H);
    const Grid& g = r.u_final.grid();
    double err = 0.0;
    for (std::size_t i = 0; i < g.nx(); ++i) {
        if (std::abs(g.x(i)) > cfg.compact_halfwidth)
            continue;
        for (std::size_t j = 0; j < g.ny(); ++j)
            err = std::max(err, std::abs(r.u_final.at(i, j) - arc(g.y(j))));
    }
    CHECK(err <= 5 * h * h);
}

TEST_CASE("single truncation has an empty tail")
{
    ExhaustionConfig cfg = small_config();
    cfg.n_max = cfg.n_start;
    const ExhaustionResult r = exhaustion_solve(make_grad_lipschitz([](double, double) { return 1.0; }, 0.0), cfg,
                                                1.0 / 8);
    CHECK(r.runs.size() == 1);
    CHECK(r.tail.empty());
    CHECK_FALSE(r.tail_within(1.0));
}

TEST_CASE("failed truncation carries its index")
{
    ExhaustionConfig cfg = small_config();
    cfg.n_start = 3;
    cfg.iteration.max_iters = 2;
    try {
        exhaustion_solve(make_mean_curvature([](double, double) { return 0.3; }), cfg, 1.0 / 8);
        FAIL("expected TruncationFailure");
    } catch (const TruncationFailure& e) {
        CHECK(e.truncation() == 3);
        CHECK(e.report().outcome == Outcome::MaxIters);
        CHECK(e.runs().size() == 1);
    }
}

TEST_CASE("configuration validation")
{
    ExhaustionConfig cfg = small_config();
    cfg.n_start = 1;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg = small_config();
    cfg.n_max = 1;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg = small_config();
    cfg.iteration.boundary = BoundarySpec::prescribed(GridField(unit_square(0.5), 1.0));
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("compact restriction")
{
    oracle::Rng rng(19);
    const GridPtr g = build_grid(Domain::strip_truncation(1.0, 3.0), 0.125);
    const GridField u = random_noise(g, rng, false);
    const std::vector<double> r = compact_restriction(u, 1.0);
    CHECK(r.size() == 17 * g->ny());
    const double c = rng.uniform(-4, 4);
    const std::vector<double> rc = compact_restriction(c * u, 1.0);
    for (std::size_t k = 0; k < r.size(); ++k)
        CHECK(rc[k] == c * r[k]);

    // Same spacing, longer truncation: identical node set on the compact.
    const GridPtr longer = build_grid(Domain::strip_truncation(1.0, 5.0), 0.125);
    const std::vector<double> xs = compact_restriction(GridField::sample(longer, [](double x, double) { return x; }), 1.0);
    const std::vector<double> ys = compact_restriction(GridField::sample(g, [](double x, double) { return x; }), 1.0);
    CHECK(xs == ys);
}

TEST_CASE("schauder_uniformity_probe")
{
    const NormConfig cfg;
    const double h = 1.0 / 8;
    SUBCASE("single truncation delegates")
    {
        const SchauderProbe p = schauder_uniformity_probe(1.0, {2}, h, cfg, 3, 11);
        REQUIRE(p.estimates.size() == 1);
        CHECK(p.estimates[0]
              == estimate_schauder_constant(build_grid(Domain::strip_truncation(1.0, 2), h), cfg, 3, 11));
        CHECK(p.max_over_min == 1.0);
    }
    SUBCASE("bounded across truncations and deterministic")
    {
        const SchauderProbe a = schauder_uniformity_probe(1.0, {2, 4, 8}, h, cfg, 3, 11);
        const SchauderProbe b = schauder_uniformity_probe(1.0, {2, 4, 8}, h, cfg, 3, 11);
        CHECK(std::isfinite(a.max));
        CHECK(a.max_over_min >= 1.0);
        CHECK(a.estimates == b.estimates);
    }
    SUBCASE("needs truncations")
    {
        CHECK_THROWS_AS(schauder_uniformity_probe(1.0, {}, h, cfg, 1, 1), InvalidArgument);
    }
}
