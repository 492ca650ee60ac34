#include <doctest.h>

#include "dirichlet/calculus.hpp"
#include "dirichlet/errors.hpp"
#include "dirichlet/nonlinearity.hpp"
#include "test_support.hpp"

#include <cmath>
#include <numbers>

using namespace dirichlet;
using namespace testing_support;
using std::numbers::pi;

namespace {

const Domain kSquare = Domain::rectangle(1.0, 1.0);

RhsNorms h_only(double h_alpha)
{
    RhsNorms n;
    n.h_alpha = h_alpha;
    return n;
}

GradLipschitz quadratic(double K)
{
    return std::get<GradLipschitz>(make_grad_lipschitz(nullptr, K, 2.0));
}

} // namespace

TEST_CASE("evaluate_rhs")
{
    const GridPtr g = unit_square(0.1);
    SUBCASE("gradient-Lipschitz at u = 0 returns h")
    {
        auto h = [](double x, double y) { return x * y + 1; };
        const RhsSpec spec = make_grad_lipschitz(h, 0.3);
        const GridField zero(g);
        const GridField f = evaluate_rhs(spec, zero, gradient(zero));
        CHECK(norm_sup(f - GridField::sample(g, h)) == 0.0);
    }
    SUBCASE("mean curvature at u = 0 returns n c")
    {
        const GridField zero(g);
        for (int n : {2, 3}) {
            const RhsSpec spec = make_mean_curvature([](double, double) { return 0.7; }, n);
            const GridField f = evaluate_rhs(spec, zero, gradient(zero));
            CHECK(norm_sup(f - GridField(g, 0.7 * n)) < 1e-15);
        }
    }
    SUBCASE("gamma-g with g(s) = s on u = x(1-x)")
    {
        // Built directly: g(s) = s is outside the validated class.
        GammaG spec{[](double, double) { return 1.0; }, [](double x, double y) { return std::cos(x + y); }, 2.0,
                    1.0, [](double s) { return s; }, [](double) { return 1.0; }};
        const GridPtr fine = unit_square(0.125);
        const GridField u = GridField::sample(fine, [](double x, double) { return x * (1 - x); });
        const GridField f = evaluate_rhs(spec, u, gradient(u));
        for (std::size_t k = 0; k < f.size(); ++k) {
            const double x = fine->x(fine->col(k)), y = fine->y(fine->row(k));
            const double expected = x * (1 - x) * (1 - 2 * x) * (1 - 2 * x) + std::cos(x + y);
            CHECK(f[k] == doctest::Approx(expected).epsilon(1e-12));
        }
    }
    SUBCASE("custom F is used")
    {
        const RhsSpec spec = make_grad_lipschitz(nullptr, 1.0, 2.0, [](double s) { return std::sin(s); });
        const GridField u = GridField::sample(g, [](double x, double) { return 2 * x; });
        const GridField f = evaluate_rhs(spec, u, gradient(u));
        for (std::size_t k = 0; k < f.size(); ++k)
            CHECK(f[k] == doctest::Approx(std::sin(4.0)));
    }
}

TEST_CASE("builder validation")
{
    CHECK_THROWS_AS(make_grad_lipschitz(nullptr, -1.0), InvalidArgument);
    CHECK_THROWS_AS(make_grad_lipschitz(nullptr, 1.0, 1.5), InvalidArgument);
    CHECK_THROWS_AS(make_grad_lipschitz(nullptr, 0.5, 2.0, [](double s) { return s; }), InvalidArgument);
    CHECK_NOTHROW(make_grad_lipschitz(nullptr, 0.5, 2.0, [](double s) { return 0.5 * std::sin(s); }));
    CHECK_THROWS_AS(make_gamma_g(nullptr, nullptr, 2.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(make_gamma_g(nullptr, nullptr, 2.0, 1.0, [](double s) { return s; }, [](double) { return 1.0; }),
                    InvalidArgument);
    CHECK_THROWS_AS(make_gamma_g(nullptr, nullptr, 2.0, 1.0, [](double s) { return -s; }, nullptr),
                    InvalidArgument);
    CHECK_NOTHROW(make_gamma_g(nullptr, nullptr, 2.0, 2.0));
    CHECK_THROWS_AS(make_mean_curvature(nullptr, 1), InvalidArgument);

    const GammaG def = std::get<GammaG>(make_gamma_g(nullptr, nullptr, 2.0, 1.0));
    CHECK(def.apply_g(2.0) == doctest::Approx(2.0));
    CHECK(def.apply_g(-2.0) == doctest::Approx(-2.0));
    CHECK(def.apply_g_prime(-3.0) == doctest::Approx(3.0));
}

TEST_CASE("psi")
{
    SUBCASE("K = 0 is constant")
    {
        const RhsSpec spec = quadratic(0.0);
        for (double t : {0.0, 1.0, 100.0})
            CHECK(psi(spec, kSquare, h_only(0.4), t) == 0.4);
    }
    SUBCASE("quadratic example")
    {
        CHECK(psi(quadratic(0.1), kSquare, h_only(1.0), 3.0) == doctest::Approx(1.9).epsilon(1e-14));
    }
    SUBCASE("mean curvature polynomial")
    {
        RhsNorms n;
        n.H_alpha = 0.01;
        const double expected = 1.01 * (0.01 + 8 * 0.001 * 1.01);
        CHECK(expected == doctest::Approx(0.0182608).epsilon(1e-12));
        CHECK(psi(make_mean_curvature(nullptr, 2), kSquare, n, 0.1) == doctest::Approx(expected).epsilon(1e-14));
    }
    SUBCASE("gamma-g uses the slab diameter")
    {
        RhsNorms n;
        n.h_alpha = 0.5;
        n.gamma_alpha = 2.0;
        const Domain strip = Domain::strip_truncation(0.5, 3.0);
        const RhsSpec spec = make_gamma_g(nullptr, nullptr, 2.0, 2.0);
        CHECK(psi(spec, strip, n, 1.5) == doctest::Approx(0.5 + 2.0 * 0.5 * std::pow(1.5, 4)));
    }
    SUBCASE("missing norms")
    {
        CHECK_THROWS_AS(psi(quadratic(1.0), kSquare, RhsNorms{}, 1.0), MissingNorm);
        CHECK_THROWS_AS(psi(make_mean_curvature(nullptr), kSquare, h_only(1.0), 1.0), MissingNorm);
    }
    SUBCASE("strictly increasing for every variant")
    {
        RhsNorms n;
        n.h_alpha = 0.3;
        n.gamma_alpha = 0.2;
        n.H_alpha = 0.1;
        for (const RhsSpec& spec : {RhsSpec(quadratic(0.5)), make_gamma_g(nullptr, nullptr, 3.0, 1.5),
                                    make_mean_curvature(nullptr, 2)}) {
            double previous = psi(spec, kSquare, n, 0.0);
            for (int i = 1; i <= 200; ++i) {
                const double v = psi(spec, kSquare, n, 0.05 * i);
                CHECK(v > previous);
                previous = v;
            }
        }
    }
}

TEST_CASE("smallest_fixed_point")
{
    SUBCASE("K = 0 gives Lambda h_alpha")
    {
        for (double m : {2.0, 3.5}) {
            const RhsSpec spec = make_grad_lipschitz(nullptr, 0.0, m);
            const auto t = smallest_fixed_point(spec, kSquare, h_only(0.7), 1.9);
            REQUIRE(t);
            CHECK(*t == doctest::Approx(1.9 * 0.7).epsilon(1e-14));
        }
    }
    SUBCASE("quadratic closed form")
    {
        const auto t = smallest_fixed_point(quadratic(0.1), kSquare, h_only(1.0), 1.0);
        REQUIRE(t);
        CHECK(std::abs(*t - 1.1270166538) < 1e-10);
        CHECK(std::abs(*t - (1 - std::sqrt(0.6)) / 0.2) < 1e-10);
    }
    SUBCASE("random quadratic cases against the oracle")
    {
        oracle::Rng rng(31);
        for (int trial = 0; trial < 100; ++trial) {
            const double Lambda = rng.uniform(0.5, 5.0);
            const double h = rng.uniform(0.01, 2.0);
            const double K = rng.uniform(0.0, 0.99) / (4 * Lambda * Lambda * h);
            const auto t = smallest_fixed_point(quadratic(K), kSquare, h_only(h), Lambda);
            REQUIRE(t);
            const double expected = oracle::quadratic_fixed_point(Lambda, K, h);
            CHECK(std::abs(*t - expected) <= 1e-10 * std::max(1.0, expected));
            // Residual and minimality.
            const double value = Lambda * psi(quadratic(K), kSquare, h_only(h), *t);
            CHECK(std::abs(value - *t) <= 1e-10 * std::max(1.0, *t));
            for (int s = 0; s < 20; ++s) {
                const double below = *t * s / 20.0;
                CHECK(Lambda * psi(quadratic(K), kSquare, h_only(h), below) > below);
            }
        }
    }
    SUBCASE("no fixed point when the discriminant is negative")
    {
        CHECK_FALSE(smallest_fixed_point(quadratic(1.0), kSquare, h_only(1.0), 1.0));
    }
    SUBCASE("small K ratio")
    {
        const double Lambda = 2.0, h = 0.5;
        const double K = 1e-4 / (Lambda * Lambda * h);
        const auto t = smallest_fixed_point(quadratic(K), kSquare, h_only(h), Lambda);
        REQUIRE(t);
        CHECK(*t / (Lambda * h) == doctest::Approx(1.0).epsilon(0.05));
    }
    SUBCASE("mean curvature and gamma-g satisfy the fixed-point equation")
    {
        RhsNorms n;
        n.h_alpha = 0.2;
        n.gamma_alpha = 0.1;
        n.H_alpha = 0.01;
        for (const RhsSpec& spec : {make_gamma_g(nullptr, nullptr, 2.0, 1.0), make_mean_curvature(nullptr, 2)}) {
            const auto t = smallest_fixed_point(spec, kSquare, n, 1.5);
            REQUIRE(t);
            CHECK(std::abs(1.5 * psi(spec, kSquare, n, *t) - *t) <= 1e-10 * std::max(1.0, *t));
        }
    }
    SUBCASE("Lambda must be positive")
    {
        CHECK_THROWS_AS(smallest_fixed_point(quadratic(0.1), kSquare, h_only(1.0), 0.0), InvalidArgument);
    }
}

TEST_CASE("contraction_bound")
{
    CHECK(contraction_bound(quadratic(0.1), h_only(1.0), 1.0, 0.5).rho == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(contraction_bound(quadratic(0.0), h_only(1.0), 3.0, 0.5).rho == 0.0);

    RhsNorms n;
    n.gamma_sup = 0.2;
    const ContractionBound b = contraction_bound(make_gamma_g(nullptr, nullptr, 2.0, 1.0), n, 0.5, 0.5);
    REQUIRE(b.B);
    CHECK(*b.B == doctest::Approx(0.5));
    CHECK(b.rho == doctest::Approx(0.00625).epsilon(1e-14));
    CHECK_FALSE(b.partial);

    // Slab form: kappa = delta / sqrt 2.
    const double delta = 0.8, kappa = delta / std::sqrt(2.0);
    const ContractionBound s = contraction_bound(make_gamma_g(nullptr, nullptr, 3.0, 1.0), n, 1.0, kappa);
    CHECK(*s.B == doctest::Approx(std::max(delta * delta / 2, 3.0 * delta / (2.0 * std::sqrt(2.0)))));

    RhsNorms hn;
    hn.H_sup = 0.3;
    const ContractionBound mc = contraction_bound(make_mean_curvature(nullptr), hn, 2.0, 0.5);
    CHECK(mc.partial);
    CHECK(mc.rho == doctest::Approx(std::sqrt(2.0) * 0.5 * 2.0 * 0.3));
}

TEST_CASE("admissible_K_threshold")
{
    const GradLipschitz spec = quadratic(0.1);
    CHECK(admissible_K_threshold(spec, kSquare, 1.0, 10.0, PoincareConstant::Volumetric)
          == doctest::Approx(0.886227).epsilon(1e-6));
    CHECK(admissible_K_threshold(spec, kSquare, 1.0, 10.0, PoincareConstant::Slab)
          == doctest::Approx(0.707107).epsilon(1e-6));
    CHECK(admissible_K_threshold(spec, kSquare, 1.0, 0.01, PoincareConstant::Volumetric) == 0.01);
}

TEST_CASE("find_K0 matches the vanishing discriminant")
{
    // t* = 2 Lambda h / (1 + sqrt(1 - 4 Lambda^2 K h)) never exceeds 2 Lambda h,
    // so the predicate fails only once the root disappears.
    for (double Lambda : {0.5, 2.0}) {
        const double h = 0.3;
        const double K0 = find_K0(quadratic(0.1), kSquare, h_only(h), Lambda);
        CHECK(K0 == doctest::Approx(1.0 / (4 * Lambda * Lambda * h)).epsilon(1e-6));
    }
    CHECK(std::isinf(find_K0(quadratic(0.1), kSquare, h_only(0.0), 1.0)));
}

TEST_CASE("analyze_contraction")
{
    const ContractionAnalysis a
        = analyze_contraction(quadratic(0.1), kSquare, h_only(1.0), 1.0, PoincareConstant::Slab);
    REQUIRE(a.C);
    CHECK(*a.C == doctest::Approx(1.1270166538));
    CHECK(a.kappa == doctest::Approx(1.0 / std::sqrt(2.0)));
    REQUIRE(a.rho);
    CHECK(*a.rho == doctest::Approx(2 * *a.C * 0.1 * a.kappa));
    REQUIRE(a.K_threshold);
    CHECK(*a.K_threshold <= *a.K0);

    const ContractionAnalysis none
        = analyze_contraction(quadratic(1.0), kSquare, h_only(1.0), 1.0, PoincareConstant::Volumetric);
    CHECK_FALSE(none.C);
    CHECK_FALSE(none.rho);
}

TEST_CASE("mean-value bound for gradient powers")
{
    oracle::Rng rng(37);
    const GridPtr g = unit_square(1.0 / 20);
    for (int trial = 0; trial < 30; ++trial) {
        const double m = rng.uniform(2.0, 4.0);
        const VectorField du = gradient(random_modes(g, rng));
        const VectorField dv = gradient(random_modes(g, rng));
        double C = 0.0;
        for (std::size_t k = 0; k < g->node_count(); ++k)
            C = std::max({C, du.magnitude(k), dv.magnitude(k)});
        for (std::size_t k = 0; k < g->node_count(); ++k) {
            const double lhs = std::abs(std::pow(du.magnitude(k), m) - std::pow(dv.magnitude(k), m));
            const double diff = std::hypot(du.x[k] - dv.x[k], du.y[k] - dv.y[k]);
            CHECK(lhs <= m * std::pow(C, m - 1) * diff * (1 + 1e-12) + 1e-14);
        }
    }
}

TEST_CASE("square root is half-Lipschitz on the nonnegative axis")
{
    oracle::Rng rng(41);
    for (int i = 0; i < 1000; ++i) {
        const double s = std::pow(10.0, rng.uniform(-6, 3));
        const double t = std::pow(10.0, rng.uniform(-6, 3));
        CHECK(std::abs(std::sqrt(1 + s) - std::sqrt(1 + t)) <= 0.5 * std::abs(s - t) * (1 + 1e-12));
    }
}

TEST_CASE("curvature term")
{
    oracle::Rng rng(43);
    const GridPtr g = unit_square(1.0 / 32);
    SUBCASE("cubic homogeneity")
    {
        for (int trial = 0; trial < 10; ++trial) {
            const GridField u = random_modes(g, rng);
            const double c = rng.uniform(-3, 3);
            const GridField G = curvature_term(gradient(u));
            const GridField Gc = curvature_term(gradient(c * u));
            CHECK(norm_sup(Gc - (c * c * c) * G) <= 1e-12 * (1 + norm_sup(Gc)));
        }
    }
    SUBCASE("agrees with the second-difference product form")
    {
        auto u_fn = [](double x, double y) { return std::sin(pi * x) * std::cos(0.5 * pi * y) + x * y; };
        auto exact = [](double x, double y) {
            const double ux = pi * std::cos(pi * x) * std::cos(0.5 * pi * y) + y;
            const double uy = -0.5 * pi * std::sin(pi * x) * std::sin(0.5 * pi * y) + x;
            const double uxx = -pi * pi * std::sin(pi * x) * std::cos(0.5 * pi * y);
            const double uyy = -0.25 * pi * pi * std::sin(pi * x) * std::cos(0.5 * pi * y);
            const double uxy = -0.5 * pi * pi * std::cos(pi * x) * std::sin(0.5 * pi * y) + 1;
            return 2 * (ux * ux * uxx + 2 * ux * uy * uxy + uy * uy * uyy);
        };
        double err_coarse = 0, err_fine = 0, scale = 0;
        for (double h : {1.0 / 32, 1.0 / 64}) {
            const GridPtr gr = unit_square(h);
            const GridField u = GridField::sample(gr, u_fn);
            const GridField a = curvature_term(gradient(u));
            const GridField b = curvature_term_product_form(u);
            double err = 0;
            for (std::size_t k = 0; k < u.size(); ++k) {
                const std::size_t i = gr->col(k), j = gr->row(k);
                if (i < 2 || j < 2 || i + 2 >= gr->nx() || j + 2 >= gr->ny())
                    continue;
                const double e = exact(gr->x(i), gr->y(j));
                scale = std::max(scale, std::abs(e));
                err = std::max({err, std::abs(a[k] - e), std::abs(b[k] - e)});
            }
            (h > 0.02 ? err_coarse : err_fine) = err;
        }
        CHECK(err_fine < 1e-2 * scale);
        CHECK(err_coarse / err_fine > 3.0);
    }
}
