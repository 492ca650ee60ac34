#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace dirichlet {

enum class DomainKind { Rectangle, StripTruncation };

/// Continuous domain: an a x b rectangle anchored at the origin, or the
/// truncation [-n, n] x (-d/2, d/2) of the strip of width d.
class Domain {
public:
    static Domain rectangle(double a, double b);
    static Domain strip_truncation(double d, double half_length);

    DomainKind kind() const noexcept { return kind_; }
    int dimension() const noexcept { return dimension_; }

    double extent_x() const noexcept { return extent_x_; }
    double extent_y() const noexcept { return extent_y_; }
    double x_min() const noexcept { return x_min_; }
    double y_min() const noexcept { return y_min_; }

    /// Strip width d; equals extent_y() for a truncation.
    double strip_width() const noexcept { return extent_y_; }
    double half_length() const noexcept { return extent_x_ / 2.0; }

    double volume() const noexcept { return extent_x_ * extent_y_; }

    /// Smallest distance between two parallel lines enclosing the domain.
    double slab_diameter() const noexcept;

private:
    Domain(DomainKind kind, double ex, double ey, double x0, double y0);

    DomainKind kind_;
    double extent_x_;
    double extent_y_;
    double x_min_;
    double y_min_;
    int dimension_ = 2;
};

struct DomainConstants {
    double volume;
    double slab_diameter;
    double kappa_volumetric; ///< (|Omega| / omega_n)^(1/n)
    double kappa_slab;       ///< delta / sqrt(2)
};

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

DomainConstants domain_constants(const Domain& domain);

/// Uniform Cartesian discretization. Node (i, j) sits at
/// (x_min + i h, y_min + j h); extents are rounded to integer multiples of h.
class Grid {
public:
    Grid(const Domain& domain, double h);

    const Domain& domain() const noexcept { return domain_; }
    double spacing() const noexcept { return h_; }
    std::size_t nx() const noexcept { return nx_; }
    std::size_t ny() const noexcept { return ny_; }
    std::size_t node_count() const noexcept { return nx_ * ny_; }

    double realized_extent_x() const noexcept { return h_ * static_cast<double>(nx_ - 1); }
    double realized_extent_y() const noexcept { return h_ * static_cast<double>(ny_ - 1); }

    double x(std::size_t i) const noexcept { return x0_ + h_ * static_cast<double>(i); }
    double y(std::size_t j) const noexcept { return y0_ + h_ * static_cast<double>(j); }

    std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * nx_ + i; }
    std::size_t col(std::size_t k) const noexcept { return k % nx_; }
    std::size_t row(std::size_t k) const noexcept { return k / nx_; }

    bool is_boundary(std::size_t k) const noexcept { return boundary_[k] != 0; }
    bool is_boundary(std::size_t i, std::size_t j) const noexcept
    {
        return i == 0 || j == 0 || i + 1 == nx_ || j + 1 == ny_;
    }
    std::size_t boundary_count() const noexcept { return 2 * (nx_ + ny_) - 4; }
    std::size_t interior_count() const noexcept { return (nx_ - 2) * (ny_ - 2); }

    /// Quadrature weight: h^2 in the interior, halved on edges, quartered at corners.
    double weight(std::size_t k) const noexcept;

    bool same_layout(const Grid& other) const noexcept;

private:
    Domain domain_;
    double h_;
    std::size_t nx_;
    std::size_t ny_;
    double x0_;
    double y0_;
    std::vector<unsigned char> boundary_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Throws SpacingTooCoarse if any axis would carry fewer than 3 nodes.
GridPtr build_grid(const Domain& domain, double h);

using PointFunction = std::function<double(double, double)>;

/// One scalar per grid node.
class GridField {
public:
    GridField() = default;
    explicit GridField(GridPtr grid, double value = 0.0);
    GridField(GridPtr grid, std::vector<double> values);

    static GridField sample(GridPtr grid, const PointFunction& fn);

    const Grid& grid() const noexcept { return *grid_; }
    const GridPtr& grid_ptr() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }

    double& operator[](std::size_t k) noexcept { return values_[k]; }
    double operator[](std::size_t k) const noexcept { return values_[k]; }
    double& at(std::size_t i, std::size_t j) noexcept { return values_[grid_->index(i, j)]; }
    double at(std::size_t i, std::size_t j) const noexcept { return values_[grid_->index(i, j)]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    GridField& operator+=(const GridField& other);
    GridField& operator-=(const GridField& other);
    GridField& operator*=(double c);

    /// Largest |u| over boundary nodes.
    double boundary_sup() const;

private:
    GridPtr grid_;
    std::vector<double> values_;
};

GridField operator+(GridField a, const GridField& b);
GridField operator-(GridField a, const GridField& b);
GridField operator*(double c, GridField a);

/// Nodal vector samples, two components per node.
struct VectorField {
    GridField x;
    GridField y;

    const Grid& grid() const noexcept { return x.grid(); }
    double magnitude(std::size_t k) const noexcept;
    double magnitude_sq(std::size_t k) const noexcept;
};

/// Staggered samples: normal components on the x-faces (i+1/2, j) and the
/// y-faces (i, j+1/2).
struct FaceField {
    GridPtr grid;
    std::vector<double> x_faces; ///< (nx-1) * ny, index j*(nx-1) + i
    std::vector<double> y_faces; ///< nx * (ny-1), index j*nx + i

    static FaceField zeros(GridPtr grid);
    double& xf(std::size_t i, std::size_t j) noexcept { return x_faces[j * (grid->nx() - 1) + i]; }
    double xf(std::size_t i, std::size_t j) const noexcept { return x_faces[j * (grid->nx() - 1) + i]; }
    double& yf(std::size_t i, std::size_t j) noexcept { return y_faces[j * grid->nx() + i]; }
    double yf(std::size_t i, std::size_t j) const noexcept { return y_faces[j * grid->nx() + i]; }
};

/// Dirichlet data: zero, or prescribed values phi on every boundary node.
class BoundarySpec {
public:
    static BoundarySpec homogeneous() { return BoundarySpec{}; }
    static BoundarySpec prescribed(GridField phi);

    bool is_homogeneous() const noexcept { return !phi_; }
    double value(std::size_t k) const noexcept { return phi_ ? (*phi_)[k] : 0.0; }
    /// Boundary data for the given grid; homogeneous data fits any grid.
    bool fits(const Grid& grid) const noexcept;

    /// Overwrites the boundary nodes of u with this data.
    void impose(GridField& u) const;

private:
    std::shared_ptr<const GridField> phi_;
};

} // namespace dirichlet
