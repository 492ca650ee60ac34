#pragma once

#include "dirichlet/calculus.hpp"
#include "dirichlet/domain.hpp"

#include <functional>
#include <optional>
#include <variant>

namespace dirichlet {

using ScalarMap = std::function<double(double)>;

/// f = h(x) + F(|grad u|^m), F Lipschitz with constant K. An empty F means
/// F(s) = K s.
struct GradLipschitz {
    PointFunction h;
    double K = 0.0;
    double m = 2.0;
    ScalarMap F;

    double apply_F(double s) const { return F ? F(s) : K * s; }
};

/// f = gamma(x) g(u) |grad u|^m + h(x), with 0 <= g' (s) <= |s|^k. Empty g
/// means g(s) = sign(s) |s|^(k+1) / (k+1).
struct GammaG {
    PointFunction gamma;
    PointFunction h;
    double m = 2.0;
    double k = 1.0;
    ScalarMap g;
    ScalarMap g_prime;

    double apply_g(double s) const;
    double apply_g_prime(double s) const;
};

/// Expanded prescribed mean curvature equation
///   Lap u = n sqrt(1 + |grad u|^2) H + G_u / (2 (1 + |grad u|^2)),
/// where G_u = <grad u, grad(1 + |grad u|^2)> = 2 u_i u_j u_ij.
struct MeanCurvature {
    PointFunction H;
    int n = 2;
};

using RhsSpec = std::variant<GradLipschitz, GammaG, MeanCurvature>;

/// Builders that validate the Lipschitz / growth constraints on a sampled
/// range and throw InvalidArgument on violation.
RhsSpec make_grad_lipschitz(PointFunction h, double K, double m = 2.0, ScalarMap F = {});
RhsSpec make_gamma_g(PointFunction gamma, PointFunction h, double m = 2.0, double k = 1.0, ScalarMap g = {},
                     ScalarMap g_prime = {});
RhsSpec make_mean_curvature(PointFunction H, int n = 2);

/// Data fields of a spec sampled once on a grid.
class RhsEvaluator {
public:
    RhsEvaluator(RhsSpec spec, const GridPtr& grid);

    const RhsSpec& spec() const noexcept { return spec_; }
    GridField operator()(const GridField& u, const VectorField& grad_u) const;

private:
    RhsSpec spec_;
    GridField h_;
    GridField gamma_;
    GridField H_;
};

GridField evaluate_rhs(const RhsSpec& spec, const GridField& u, const VectorField& grad_u);

/// <grad u, grad_h |grad u|^2>, the curvature product 2 u_i u_j u_ij.
GridField curvature_term(const VectorField& grad_u);

/// Same quantity assembled from second differences.
GridField curvature_term_product_form(const GridField& u);

/// Hölder and sup norms of the data that the closed-form analysis needs.
struct RhsNorms {
    std::optional<double> h_alpha;
    std::optional<double> gamma_alpha;
    std::optional<double> H_alpha;
    std::optional<double> gamma_sup;
    std::optional<double> H_sup;
};

RhsNorms rhs_norms(const RhsSpec& spec, const GridPtr& grid, const NormConfig& cfg);

/// Right side of the a-priori bound |u_{i+1}|_{2,alpha} <= Lambda psi(|u_i|_{2,alpha}).
/// Throws MissingNorm when the variant's norms are absent.
double psi(const RhsSpec& spec, const Domain& domain, const RhsNorms& norms, double t);

/// 10 Lambda (h_alpha + gamma_alpha + H_alpha + 1), with absent norms as 0.
double default_search_limit(const RhsNorms& norms, double Lambda);

/// Smallest t >= 0 with Lambda psi(t) = t on [0, t_max]. Returns nullopt when
/// Lambda psi(t) > t is certified on the whole interval; throws
/// BracketNotFound when neither a root nor that certificate is obtained.
std::optional<double> smallest_fixed_point(const RhsSpec& spec, const Domain& domain, const RhsNorms& norms,
                                           double Lambda, std::optional<double> t_max = std::nullopt);

enum class PoincareConstant { Volumetric, Slab };

double kappa_for(const Domain& domain, PoincareConstant which);

struct ContractionBound {
    double rho = 0.0;
    std::optional<double> B; ///< combination constant of the gamma-g variant
    bool partial = false;    ///< mean curvature: only the H-term is known
};

/// Theoretical H^1 contraction factor for iterates bounded by C in C^{2,alpha}.
ContractionBound contraction_bound(const RhsSpec& spec, const RhsNorms& norms, double C, double kappa);

/// min{ 1/(m C^{m-1}) (omega_n/|Omega|)^{1/n}, K0 } or, for the slab constant,
/// min{ sqrt(2) / (m C^{m-1} delta), K0 }.
double admissible_K_threshold(const GradLipschitz& spec, const Domain& domain, double C, double K0,
                              PoincareConstant which);

/// Largest K for which the smallest fixed point exists and stays below
/// 2 Lambda h_alpha, located by bisection. Infinite when h_alpha = 0.
double find_K0(const GradLipschitz& spec, const Domain& domain, const RhsNorms& norms, double Lambda);

struct ContractionAnalysis {
    double Lambda = 0.0;
    std::optional<double> C;
    double kappa = 0.0;
    PoincareConstant kappa_kind = PoincareConstant::Slab;
    std::optional<double> rho;
    bool rho_partial = false;
    std::optional<double> K0;
    std::optional<double> K_threshold;
    std::optional<double> B;
};

ContractionAnalysis analyze_contraction(const RhsSpec& spec, const Domain& domain, const RhsNorms& norms,
                                        double Lambda, PoincareConstant which);

} // namespace dirichlet
