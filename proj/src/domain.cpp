#include "dirichlet/domain.hpp"

#include "dirichlet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace dirichlet {

Domain::Domain(DomainKind kind, double ex, double ey, double x0, double y0)
    : kind_(kind), extent_x_(ex), extent_y_(ey), x_min_(x0), y_min_(y0)
{
    if (!(ex > 0.0) || !(ey > 0.0) || !std::isfinite(ex) || !std::isfinite(ey))
        throw InvalidArgument("domain extents must be positive and finite");
}

Domain Domain::rectangle(double a, double b)
{
    return Domain(DomainKind::Rectangle, a, b, 0.0, 0.0);
}

Domain Domain::strip_truncation(double d, double half_length)
{
    return Domain(DomainKind::StripTruncation, 2.0 * half_length, d, -half_length, -d / 2.0);
}

double Domain::slab_diameter() const noexcept
{
    if (kind_ == DomainKind::StripTruncation)
        return extent_y_;
    return std::min(extent_x_, extent_y_);
}

double unit_ball_volume(int n)
{
    const double half = 0.5 * static_cast<double>(n);
    return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

DomainConstants domain_constants(const Domain& domain)
{
    const int n = domain.dimension();
    const double vol = domain.volume();
    const double delta = domain.slab_diameter();
    return DomainConstants{
        vol,
        delta,
        std::pow(vol / unit_ball_volume(n), 1.0 / static_cast<double>(n)),
        delta / std::numbers::sqrt2,
    };
}

namespace {

std::size_t node_count_for(double extent, double h)
{
    return static_cast<std::size_t>(std::llround(extent / h)) + 1;
}

} // namespace

Grid::Grid(const Domain& domain, double h) : domain_(domain), h_(h)
{
    if (!(h > 0.0) || !std::isfinite(h))
        throw InvalidArgument("grid spacing must be positive");
    nx_ = node_count_for(domain.extent_x(), h);
    ny_ = node_count_for(domain.extent_y(), h);
    if (nx_ < 3 || ny_ < 3)
        throw SpacingTooCoarse("spacing " + std::to_string(h) + " leaves fewer than 3 nodes on an axis");

    // Keep the realized domain centred on the requested one.
    x0_ = domain.x_min() + 0.5 * (domain.extent_x() - realized_extent_x());
    y0_ = domain.y_min() + 0.5 * (domain.extent_y() - realized_extent_y());

    boundary_.assign(nx_ * ny_, 0);
    for (std::size_t j = 0; j < ny_; ++j)
        for (std::size_t i = 0; i < nx_; ++i)
            boundary_[index(i, j)] = is_boundary(i, j) ? 1 : 0;
}

double Grid::weight(std::size_t k) const noexcept
{
    const std::size_t i = col(k);
    const std::size_t j = row(k);
    double w = h_ * h_;
    if (i == 0 || i + 1 == nx_)
        w *= 0.5;
    if (j == 0 || j + 1 == ny_)
        w *= 0.5;
    return w;
}

bool Grid::same_layout(const Grid& other) const noexcept
{
    return nx_ == other.nx_ && ny_ == other.ny_ && h_ == other.h_ && x0_ == other.x0_ && y0_ == other.y0_;
}

GridPtr build_grid(const Domain& domain, double h)
{
    return std::make_shared<const Grid>(domain, h);
}

GridField::GridField(GridPtr grid, double value)
    : grid_(std::move(grid)), values_(grid_->node_count(), value)
{
}

GridField::GridField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values))
{
    if (values_.size() != grid_->node_count())
        throw InvalidArgument("field length does not match grid node count");
}

GridField GridField::sample(GridPtr grid, const PointFunction& fn)
{
    GridField out(grid);
    for (std::size_t j = 0; j < grid->ny(); ++j)
        for (std::size_t i = 0; i < grid->nx(); ++i)
            out.at(i, j) = fn(grid->x(i), grid->y(j));
    return out;
}

GridField& GridField::operator+=(const GridField& other)
{
    for (std::size_t k = 0; k < values_.size(); ++k)
        values_[k] += other.values_[k];
    return *this;
}

GridField& GridField::operator-=(const GridField& other)
{
    for (std::size_t k = 0; k < values_.size(); ++k)
        values_[k] -= other.values_[k];
    return *this;
}

GridField& GridField::operator*=(double c)
{
    for (double& v : values_)
        v *= c;
    return *this;
}

double GridField::boundary_sup() const
{
    double m = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k)
        if (grid_->is_boundary(k))
            m = std::max(m, std::abs(values_[k]));
    return m;
}

GridField operator+(GridField a, const GridField& b) { return a += b; }
GridField operator-(GridField a, const GridField& b) { return a -= b; }
GridField operator*(double c, GridField a) { return a *= c; }

double VectorField::magnitude_sq(std::size_t k) const noexcept
{
    return x[k] * x[k] + y[k] * y[k];
}

double VectorField::magnitude(std::size_t k) const noexcept
{
    return std::hypot(x[k], y[k]);
}

FaceField FaceField::zeros(GridPtr grid)
{
    FaceField f;
    f.x_faces.assign((grid->nx() - 1) * grid->ny(), 0.0);
    f.y_faces.assign(grid->nx() * (grid->ny() - 1), 0.0);
    f.grid = std::move(grid);
    return f;
}

BoundarySpec BoundarySpec::prescribed(GridField phi)
{
    BoundarySpec bc;
    bc.phi_ = std::make_shared<const GridField>(std::move(phi));
    return bc;
}

bool BoundarySpec::fits(const Grid& grid) const noexcept
{
    return !phi_ || phi_->grid().same_layout(grid);
}

void BoundarySpec::impose(GridField& u) const
{
    const Grid& g = u.grid();
    for (std::size_t k = 0; k < u.size(); ++k)
        if (g.is_boundary(k))
            u[k] = value(k);
}

} // namespace dirichlet
