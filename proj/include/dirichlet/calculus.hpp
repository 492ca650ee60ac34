#pragma once

#include "dirichlet/domain.hpp"

#include <cstddef>

namespace dirichlet {

// Discrete differential operators.
//
// Two gradient representations coexist. `gradient` returns nodal samples
// (central differences inside, one-sided second order on the boundary) and is
// what the nonlinear right-hand sides and the C^{2,alpha} estimator consume.
// `face_gradient` returns the staggered normal differences; it is the one the
// H^1_0 seminorm is built from, so that
//
//   sum_k w_k v_k (-Lap_h u)_k = <grad_h u, grad_h v>     (v = 0 on the boundary)
//
// holds to rounding, and divergence(face_gradient(u)) is the 5-point Laplacian.

VectorField gradient(const GridField& u);

FaceField face_gradient(const GridField& u);

/// Averages nodal vectors onto the faces (normal component only).
FaceField to_faces(const VectorField& v);

/// 5-point Laplacian at interior nodes, 0 on the boundary.
GridField laplacian_apply(const GridField& u);

/// Flux-form divergence at interior nodes, 0 on the boundary.
GridField divergence(const FaceField& flux);
GridField divergence(const VectorField& v);

struct SecondDerivatives {
    GridField xx;
    GridField xy;
    GridField yy;
};

/// Second differences; one-sided (second order) on the boundary. Needs at
/// least 4 nodes per axis.
SecondDerivatives second_derivatives(const GridField& u);

// Norms. Integrals use the nodal trapezoid rule (Grid::weight).

double inner_product(const GridField& u, const GridField& v);
double norm_l2(const GridField& u);
double norm_sup(const GridField& u);

/// Face-based Dirichlet inner product <grad u, grad v>.
double h1_inner(const GridField& u, const GridField& v);
double norm_h1semi(const GridField& u);

struct NormConfig {
    double alpha = 0.5;
    /// Random pairs sampled for Hölder seminorms; 0 means exhaustive, which
    /// is honoured up to kExhaustiveNodeLimit nodes.
    std::size_t pair_budget = 0;

    static constexpr std::size_t kExhaustiveNodeLimit = 33 * 33;
    static constexpr std::size_t kDefaultBudget = std::size_t{1} << 16;

    void validate() const;
};

/// max |u(p) - u(q)| / |p - q|^alpha over node pairs. Every pair within two
/// grid steps is always included; beyond that the pairs come from a
/// deterministic low-discrepancy sequence unless the search is exhaustive.
/// The result is a lower bound on the continuum seminorm.
double holder_seminorm(const GridField& u, const NormConfig& cfg);

/// |u|_0 + [u]_alpha
double holder_norm(const GridField& u, const NormConfig& cfg);

/// Discrete |u|_{2,alpha}: |u|_0 + sum |D u|_0 + sum |D^2 u|_0 + sum [D^2 u]_alpha,
/// with the second-order multi-indices xx, xy, yy. Throws GridTooCoarse for
/// fewer than 5 nodes per axis.
double c2alpha_estimate(const GridField& u, const NormConfig& cfg);

struct PoincareCheck {
    double lhs;      ///< ||u||_2
    double grad;     ///< ||grad u||_2
    double rhs_vol;
    double rhs_slab;
    bool holds_vol;
    bool holds_slab;
};

/// Compares ||u||_2 against both Poincaré bounds with slack 2h ||grad u||_2.
/// Throws NotConforming unless u vanishes on the boundary.
PoincareCheck verify_poincare(const GridField& u, const Domain& domain);

} // namespace dirichlet
