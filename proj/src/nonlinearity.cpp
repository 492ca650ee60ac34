#include "dirichlet/nonlinearity.hpp"

#include "dirichlet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace dirichlet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

GridField sample_or_zero(const GridPtr& grid, const PointFunction& fn)
{
    return fn ? GridField::sample(grid, fn) : GridField(grid);
}

double require(const std::optional<double>& value, const char* name)
{
    if (!value)
        throw MissingNorm(std::string("missing data norm: ") + name);
    return *value;
}

constexpr double kSampleMax = 10.0;
constexpr int kSamples = 401;

} // namespace

double GammaG::apply_g(double s) const
{
    if (g)
        return g(s);
    return std::copysign(std::pow(std::abs(s), k + 1.0) / (k + 1.0), s);
}

double GammaG::apply_g_prime(double s) const
{
    if (g_prime)
        return g_prime(s);
    return std::pow(std::abs(s), k);
}

RhsSpec make_grad_lipschitz(PointFunction h, double K, double m, ScalarMap F)
{
    if (!(K >= 0.0))
        throw InvalidArgument("K must be nonnegative");
    if (!(m >= 2.0))
        throw InvalidArgument("m must be at least 2");
    GradLipschitz spec{std::move(h), K, m, std::move(F)};
    if (spec.F) {
        // |F(s1) - F(s2)| <= K |s1 - s2| on a sampled range of s = |grad u|^m.
        for (int a = 0; a < kSamples; ++a) {
            const double s1 = kSampleMax * a / (kSamples - 1);
            for (int b = a + 1; b < kSamples; b += 7) {
                const double s2 = kSampleMax * b / (kSamples - 1);
                const double lhs = std::abs(spec.F(s1) - spec.F(s2));
                if (lhs > K * std::abs(s1 - s2) * (1.0 + 1e-12) + 1e-300)
                    throw InvalidArgument("F violates the Lipschitz bound with constant K");
            }
        }
    }
    return spec;
}

RhsSpec make_gamma_g(PointFunction gamma, PointFunction h, double m, double k, ScalarMap g, ScalarMap g_prime)
{
    if (!(m >= 2.0))
        throw InvalidArgument("m must be at least 2");
    if (!(k > 0.0))
        throw InvalidArgument("k must be positive");
    if (static_cast<bool>(g) != static_cast<bool>(g_prime))
        throw InvalidArgument("g and g' must be supplied together");
    GammaG spec{std::move(gamma), std::move(h), m, k, std::move(g), std::move(g_prime)};
    double previous = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < kSamples; ++a) {
        const double s = -kSampleMax + 2.0 * kSampleMax * a / (kSamples - 1);
        const double gs = spec.apply_g(s);
        const double dg = spec.apply_g_prime(s);
        if (gs < previous)
            throw InvalidArgument("g must be nondecreasing");
        if (dg < 0.0 || dg > std::pow(std::abs(s), k) * (1.0 + 1e-12) + 1e-300)
            throw InvalidArgument("g' must satisfy 0 <= g'(s) <= |s|^k");
        previous = gs;
    }
    return spec;
}

RhsSpec make_mean_curvature(PointFunction H, int n)
{
    if (n < 2)
        throw InvalidArgument("dimension factor n must be at least 2");
    return MeanCurvature{std::move(H), n};
}

RhsEvaluator::RhsEvaluator(RhsSpec spec, const GridPtr& grid) : spec_(std::move(spec))
{
    std::visit(overloaded{
                   [&](const GradLipschitz& s) { h_ = sample_or_zero(grid, s.h); },
                   [&](const GammaG& s) {
                       h_ = sample_or_zero(grid, s.h);
                       gamma_ = sample_or_zero(grid, s.gamma);
                   },
                   [&](const MeanCurvature& s) { H_ = sample_or_zero(grid, s.H); },
               },
               spec_);
}

GridField RhsEvaluator::operator()(const GridField& u, const VectorField& grad_u) const
{
    GridField f(u.grid_ptr());
    std::visit(overloaded{
                   [&](const GradLipschitz& s) {
                       for (std::size_t k = 0; k < f.size(); ++k)
                           f[k] = h_[k] + s.apply_F(std::pow(grad_u.magnitude(k), s.m));
                   },
                   [&](const GammaG& s) {
                       for (std::size_t k = 0; k < f.size(); ++k)
                           f[k] = gamma_[k] * s.apply_g(u[k]) * std::pow(grad_u.magnitude(k), s.m) + h_[k];
                   },
                   [&](const MeanCurvature& s) {
                       const GridField G = curvature_term(grad_u);
                       for (std::size_t k = 0; k < f.size(); ++k) {
                           const double w2 = 1.0 + grad_u.magnitude_sq(k);
                           f[k] = s.n * std::sqrt(w2) * H_[k] + G[k] / (2.0 * w2);
                       }
                   },
               },
               spec_);
    return f;
}

GridField evaluate_rhs(const RhsSpec& spec, const GridField& u, const VectorField& grad_u)
{
    return RhsEvaluator(spec, u.grid_ptr())(u, grad_u);
}

GridField curvature_term(const VectorField& grad_u)
{
    GridField sq(grad_u.x.grid_ptr());
    for (std::size_t k = 0; k < sq.size(); ++k)
        sq[k] = grad_u.magnitude_sq(k);
    const VectorField d = gradient(sq);
    GridField G(grad_u.x.grid_ptr());
    for (std::size_t k = 0; k < G.size(); ++k)
        G[k] = grad_u.x[k] * d.x[k] + grad_u.y[k] * d.y[k];
    return G;
}

GridField curvature_term_product_form(const GridField& u)
{
    const VectorField du = gradient(u);
    const SecondDerivatives d2 = second_derivatives(u);
    GridField G(u.grid_ptr());
    for (std::size_t k = 0; k < G.size(); ++k) {
        const double ux = du.x[k];
        const double uy = du.y[k];
        G[k] = 2.0 * (ux * ux * d2.xx[k] + 2.0 * ux * uy * d2.xy[k] + uy * uy * d2.yy[k]);
    }
    return G;
}

RhsNorms rhs_norms(const RhsSpec& spec, const GridPtr& grid, const NormConfig& cfg)
{
    RhsNorms norms;
    std::visit(overloaded{
                   [&](const GradLipschitz& s) { norms.h_alpha = holder_norm(sample_or_zero(grid, s.h), cfg); },
                   [&](const GammaG& s) {
                       const GridField gamma = sample_or_zero(grid, s.gamma);
                       norms.h_alpha = holder_norm(sample_or_zero(grid, s.h), cfg);
                       norms.gamma_alpha = holder_norm(gamma, cfg);
                       norms.gamma_sup = norm_sup(gamma);
                   },
                   [&](const MeanCurvature& s) {
                       const GridField H = sample_or_zero(grid, s.H);
                       norms.H_alpha = holder_norm(H, cfg);
                       norms.H_sup = norm_sup(H);
                   },
               },
               spec);
    return norms;
}

double psi(const RhsSpec& spec, const Domain& domain, const RhsNorms& norms, double t)
{
    if (!(t >= 0.0))
        throw InvalidArgument("psi is defined for t >= 0");
    return std::visit(overloaded{
                          [&](const GradLipschitz& s) {
                              return require(norms.h_alpha, "h_alpha") + s.K * std::pow(t, s.m);
                          },
                          [&](const GammaG& s) {
                              const double delta = domain.slab_diameter();
                              return require(norms.h_alpha, "h_alpha")
                                     + require(norms.gamma_alpha, "gamma_alpha") * std::pow(delta, s.k - 1.0)
                                           * std::pow(t, s.m + s.k);
                          },
                          [&](const MeanCurvature& s) {
                              const double n2 = double(s.n) * double(s.n);
                              const double q = 1.0 + t * t;
                              return q * (require(norms.H_alpha, "H_alpha") + 2.0 * n2 * t * t * t * q);
                          },
                      },
                      spec);
}

double default_search_limit(const RhsNorms& norms, double Lambda)
{
    return 10.0 * Lambda
           * (norms.h_alpha.value_or(0.0) + norms.gamma_alpha.value_or(0.0) + norms.H_alpha.value_or(0.0) + 1.0);
}

std::optional<double> smallest_fixed_point(const RhsSpec& spec, const Domain& domain, const RhsNorms& norms,
                                           double Lambda, std::optional<double> t_max)
{
    if (!(Lambda > 0.0))
        throw InvalidArgument("Lambda must be positive");
    const double limit = t_max.value_or(default_search_limit(norms, Lambda));
    auto excess = [&](double t) { return Lambda * psi(spec, domain, norms, t) - t; };

    if (excess(0.0) <= 0.0)
        return 0.0;

    auto bisect = [&](double lo, double hi) {
        // excess(lo) > 0 >= excess(hi)
        for (int it = 0; it < 300 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (excess(mid) > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        // Report the endpoint whose residual is smaller.
        return std::abs(excess(lo)) < std::abs(excess(hi)) ? lo : hi;
    };

    // Walk left to right. On [a, b], psi increasing gives
    // excess(t) >= Lambda psi(a) - b, which certifies the absence of a root.
    bool uncertified = false;
    long budget = 1 << 21;
    std::optional<double> root;
    auto scan = [&](auto&& self, double a, double b, int depth) -> void {
        if (root || uncertified)
            return;
        if (--budget < 0) {
            uncertified = true;
            return;
        }
        if (excess(b) <= 0.0) {
            root = bisect(a, b);
            return;
        }
        if (Lambda * psi(spec, domain, norms, a) - b > 0.0)
            return;
        if (depth == 0) {
            uncertified = true;
            return;
        }
        const double mid = 0.5 * (a + b);
        self(self, a, mid, depth - 1);
        self(self, mid, b, depth - 1);
    };

    constexpr int kCoarse = 1024;
    for (int c = 0; c < kCoarse && !root; ++c)
        scan(scan, limit * c / kCoarse, limit * (c + 1) / kCoarse, 40);

    if (uncertified)
        throw BracketNotFound("fixed-point search could not bracket a root nor exclude one on [0, "
                              + std::to_string(limit) + "]");
    return root;
}

double kappa_for(const Domain& domain, PoincareConstant which)
{
    const DomainConstants dc = domain_constants(domain);
    return which == PoincareConstant::Volumetric ? dc.kappa_volumetric : dc.kappa_slab;
}

ContractionBound contraction_bound(const RhsSpec& spec, const RhsNorms& norms, double C, double kappa)
{
    if (!(C >= 0.0) || !(kappa > 0.0))
        throw InvalidArgument("contraction bound needs C >= 0 and kappa > 0");
    return std::visit(overloaded{
                          [&](const GradLipschitz& s) {
                              return ContractionBound{s.m * std::pow(C, s.m - 1.0) * s.K * kappa, std::nullopt,
                                                      false};
                          },
                          [&](const GammaG& s) {
                              // B = max{kappa^2, kappa m / (k+1)}; with kappa = delta/sqrt(2)
                              // this is the slab form max{delta^2/2, m delta / ((k+1) sqrt 2)}.
                              const double B = std::max(kappa * kappa, kappa * s.m / (s.k + 1.0));
                              const double rho
                                  = require(norms.gamma_sup, "gamma_sup") * B * std::pow(C, s.m + s.k) * kappa;
                              return ContractionBound{rho, B, false};
                          },
                          [&](const MeanCurvature&) {
                              return ContractionBound{std::numbers::sqrt2 * kappa * C * require(norms.H_sup, "H_sup"),
                                                      std::nullopt, true};
                          },
                      },
                      spec);
}

double admissible_K_threshold(const GradLipschitz& spec, const Domain& domain, double C, double K0,
                              PoincareConstant which)
{
    if (!(C > 0.0))
        throw InvalidArgument("admissible K threshold needs C > 0");
    const double slope = spec.m * std::pow(C, spec.m - 1.0);
    double candidate = 0.0;
    if (which == PoincareConstant::Volumetric) {
        const int n = domain.dimension();
        candidate = std::pow(unit_ball_volume(n) / domain.volume(), 1.0 / n) / slope;
    } else {
        candidate = std::numbers::sqrt2 / (slope * domain.slab_diameter());
    }
    return std::min(candidate, K0);
}

double find_K0(const GradLipschitz& spec, const Domain& domain, const RhsNorms& norms, double Lambda)
{
    const double h_alpha = require(norms.h_alpha, "h_alpha");
    if (h_alpha == 0.0)
        return std::numeric_limits<double>::infinity();
    const double cap = 2.0 * Lambda * h_alpha;
    auto admissible = [&](double K) {
        GradLipschitz trial = spec;
        trial.K = K;
        trial.F = {};
        try {
            // Only roots below the cap matter, so search no further.
            const auto t = smallest_fixed_point(trial, domain, norms, Lambda, cap);
            return t && *t <= cap;
        } catch (const BracketNotFound&) {
            return false;
        }
    };
    double lo = 0.0;
    double hi = 1.0 / (Lambda * (h_alpha + 1.0));
    for (int i = 0; i < 200 && admissible(hi); ++i) {
        lo = hi;
        hi *= 2.0;
    }
    for (int i = 0; i < 100 && hi - lo > 1e-14 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (admissible(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

ContractionAnalysis analyze_contraction(const RhsSpec& spec, const Domain& domain, const RhsNorms& norms,
                                        double Lambda, PoincareConstant which)
{
    ContractionAnalysis a;
    a.Lambda = Lambda;
    a.kappa = kappa_for(domain, which);
    a.kappa_kind = which;
    try {
        a.C = smallest_fixed_point(spec, domain, norms, Lambda);
    } catch (const BracketNotFound&) {
        a.C.reset();
    }
    if (a.C) {
        const ContractionBound bound = contraction_bound(spec, norms, *a.C, a.kappa);
        a.rho = bound.rho;
        a.rho_partial = bound.partial;
        a.B = bound.B;
    }
    if (const auto* gl = std::get_if<GradLipschitz>(&spec)) {
        a.K0 = find_K0(*gl, domain, norms, Lambda);
        if (a.C && *a.C > 0.0)
            a.K_threshold = admissible_K_threshold(*gl, domain, *a.C, *a.K0, which);
    }
    return a;
}

} // namespace dirichlet
