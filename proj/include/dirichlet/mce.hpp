#pragma once

#include "dirichlet/domain.hpp"

#include <cmath>

namespace dirichlet {

/// div(grad u / sqrt(1 + |grad u|^2)) - n H at interior nodes, 0 on the
/// boundary. Face fluxes use the normal difference across the face and the
/// average of the two nodal tangential derivatives.
GridField mc_divergence_residual(const GridField& u, const GridField& H, int n = 2);

/// Circular-arc profile across the strip |y| < d/2 solving
/// (u' / sqrt(1 + u'^2))' = 2H with u(+-d/2) = 0.
class ArcSolution {
public:
    /// Throws InvalidArc unless |H| d < 1.
    ArcSolution(double d, double H);

    double width() const noexcept { return d_; }
    double curvature() const noexcept { return H_; }
    /// Arc radius 1 / (2|H|); infinite for H = 0.
    double radius() const noexcept;
    /// Existence condition for the arc (n = 2).
    static bool admissible(double d, double H) noexcept { return d > 0.0 && std::abs(H) * d < 1.0; }

    double operator()(double y) const;
    double derivative(double y) const;

private:
    double d_;
    double H_;
};

ArcSolution arc_solution(double d, double H);

} // namespace dirichlet
