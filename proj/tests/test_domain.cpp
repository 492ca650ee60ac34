#include <doctest.h>

#include "dirichlet/domain.hpp"
#include "dirichlet/errors.hpp"

#include <cmath>
#include <numbers>

using namespace dirichlet;

TEST_CASE("build_grid counts nodes and flags the boundary")
{
    SUBCASE("unit square, h = 0.5")
    {
        const GridPtr g = build_grid(Domain::rectangle(1.0, 1.0), 0.5);
        CHECK(g->nx() == 3);
        CHECK(g->ny() == 3);
        CHECK(g->boundary_count() == 8);
        CHECK(g->interior_count() == 1);
        CHECK_FALSE(g->is_boundary(g->index(1, 1)));
    }
    SUBCASE("unit square, h = 0.25")
    {
        const GridPtr g = build_grid(Domain::rectangle(1.0, 1.0), 0.25);
        CHECK(g->nx() == 5);
        CHECK(g->interior_count() == 9);
    }
    SUBCASE("strip truncation d = 1, n = 2, h = 0.25")
    {
        const GridPtr g = build_grid(Domain::strip_truncation(1.0, 2.0), 0.25);
        // extent / h + 1 per axis
        CHECK(g->nx() == static_cast<std::size_t>(4.0 / 0.25) + 1);
        CHECK(g->ny() == static_cast<std::size_t>(1.0 / 0.25) + 1);
        CHECK(g->x(0) == doctest::Approx(-2.0));
        CHECK(g->x(g->nx() - 1) == doctest::Approx(2.0));
        CHECK(g->y(0) == doctest::Approx(-0.5));
        CHECK(g->y(g->ny() - 1) == doctest::Approx(0.5));
    }
}

TEST_CASE("boundary mask partitions the nodes")
{
    for (double h : {0.5, 0.2, 0.1, 1.0 / 7.0}) {
        const GridPtr g = build_grid(Domain::rectangle(1.3, 0.9), h);
        std::size_t boundary = 0;
        for (std::size_t j = 0; j < g->ny(); ++j)
            for (std::size_t i = 0; i < g->nx(); ++i) {
                const bool on_edge = i == 0 || j == 0 || i + 1 == g->nx() || j + 1 == g->ny();
                CHECK(g->is_boundary(g->index(i, j)) == on_edge);
                boundary += on_edge ? 1 : 0;
            }
        CHECK(boundary + g->interior_count() == g->node_count());
        // realized extents within one h of the request
        CHECK(std::abs(g->realized_extent_x() - 1.3) <= h);
        CHECK(std::abs(g->realized_extent_y() - 0.9) <= h);
    }
}

TEST_CASE("too coarse a spacing is rejected")
{
    CHECK_THROWS_AS(build_grid(Domain::rectangle(1.0, 1.0), 0.8), SpacingTooCoarse);
    CHECK_THROWS_AS(build_grid(Domain::rectangle(1.0, 0.2), 0.25), SpacingTooCoarse);
    CHECK_THROWS_AS(build_grid(Domain::rectangle(1.0, 1.0), -0.1), InvalidArgument);
    CHECK_THROWS_AS(Domain::rectangle(0.0, 1.0), InvalidArgument);
}

TEST_CASE("quadrature weights integrate the realized rectangle exactly")
{
    const GridPtr g = build_grid(Domain::rectangle(2.0, 0.5), 0.125);
    double total = 0.0;
    for (std::size_t k = 0; k < g->node_count(); ++k)
        total += g->weight(k);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("domain constants")
{
    SUBCASE("unit square")
    {
        const DomainConstants c = domain_constants(Domain::rectangle(1.0, 1.0));
        CHECK(c.volume == doctest::Approx(1.0));
        CHECK(c.slab_diameter == doctest::Approx(1.0));
        CHECK(c.kappa_volumetric == doctest::Approx(std::sqrt(1.0 / std::numbers::pi)).epsilon(1e-14));
        CHECK(c.kappa_volumetric == doctest::Approx(0.564190).epsilon(1e-6));
        CHECK(c.kappa_slab == doctest::Approx(0.707107).epsilon(1e-6));
    }
    SUBCASE("2 x 0.5 rectangle")
    {
        const DomainConstants c = domain_constants(Domain::rectangle(2.0, 0.5));
        CHECK(c.slab_diameter == doctest::Approx(0.5));
        CHECK(c.kappa_slab == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-14));
        CHECK(c.kappa_slab == doctest::Approx(0.353553).epsilon(1e-6));
    }
    SUBCASE("strip truncations share the slab diameter")
    {
        for (double n : {0.5, 1.0, 2.0, 3.0, 8.0, 100.0}) {
            const DomainConstants c = domain_constants(Domain::strip_truncation(1.0, n));
            CHECK(c.slab_diameter == 1.0);
            CHECK(c.kappa_slab == doctest::Approx(1.0 / std::sqrt(2.0)));
            CHECK(c.volume == doctest::Approx(2.0 * n));
            CHECK(c.kappa_volumetric > 0.0);
            CHECK(std::isfinite(c.kappa_volumetric));
        }
    }
    SUBCASE("unit ball volumes")
    {
        CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
        CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi));
        CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0));
    }
}

TEST_CASE("boundary specs impose their data")
{
    const GridPtr g = build_grid(Domain::rectangle(1.0, 1.0), 0.25);
    GridField u(g, 3.0);
    BoundarySpec::homogeneous().impose(u);
    CHECK(u.boundary_sup() == 0.0);
    CHECK(u.at(2, 2) == 3.0);

    const BoundarySpec bc = BoundarySpec::prescribed(GridField::sample(g, [](double x, double y) { return x + y; }));
    bc.impose(u);
    CHECK(u.at(4, 4) == doctest::Approx(2.0));
    CHECK(u.at(0, 2) == doctest::Approx(0.5));
    CHECK(u.at(2, 2) == 3.0);
    CHECK_FALSE(bc.fits(*build_grid(Domain::rectangle(1.0, 1.0), 0.5)));
}
