#include "dirichlet/mce.hpp"

#include "dirichlet/calculus.hpp"
#include "dirichlet/errors.hpp"

#include <cmath>
#include <limits>

namespace dirichlet {

GridField mc_divergence_residual(const GridField& u, const GridField& H, int n)
{
    const Grid& g = u.grid();
    const VectorField du = gradient(u);
    const FaceField normal = face_gradient(u);
    FaceField flux = FaceField::zeros(u.grid_ptr());
    for (std::size_t j = 0; j < g.ny(); ++j) {
        for (std::size_t i = 0; i + 1 < g.nx(); ++i) {
            const double p = normal.xf(i, j);
            const double q = 0.5 * (du.y.at(i, j) + du.y.at(i + 1, j));
            flux.xf(i, j) = p / std::sqrt(1.0 + p * p + q * q);
        }
    }
    for (std::size_t j = 0; j + 1 < g.ny(); ++j) {
        for (std::size_t i = 0; i < g.nx(); ++i) {
            const double p = normal.yf(i, j);
            const double q = 0.5 * (du.x.at(i, j) + du.x.at(i, j + 1));
            flux.yf(i, j) = p / std::sqrt(1.0 + p * p + q * q);
        }
    }
    GridField r = divergence(flux);
    for (std::size_t k = 0; k < r.size(); ++k)
        if (!g.is_boundary(k))
            r[k] -= n * H[k];
    return r;
}

ArcSolution::ArcSolution(double d, double H) : d_(d), H_(H)
{
    if (!(d > 0.0))
        throw InvalidArgument("strip width must be positive");
    if (!admissible(d, H))
        throw InvalidArc("an arc of curvature H cannot span a strip of width d unless |H| d < 1");
}

double ArcSolution::radius() const noexcept
{
    return H_ == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / (2.0 * std::abs(H_));
}

double ArcSolution::operator()(double y) const
{
    if (H_ == 0.0)
        return 0.0;
    return (std::sqrt(1.0 - H_ * H_ * d_ * d_) - std::sqrt(1.0 - 4.0 * H_ * H_ * y * y)) / (2.0 * H_);
}

double ArcSolution::derivative(double y) const
{
    return 2.0 * H_ * y / std::sqrt(1.0 - 4.0 * H_ * H_ * y * y);
}

ArcSolution arc_solution(double d, double H)
{
    return ArcSolution(d, H);
}

} // namespace dirichlet
