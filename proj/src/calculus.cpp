#include "dirichlet/calculus.hpp"

#include "dirichlet/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <span>
#include <vector>

namespace dirichlet {

namespace {

// Second-order first derivative along one axis at position p of n samples
// spaced by `stride` starting at `base`.
double d1(const GridField& u, std::size_t base, std::size_t stride, std::size_t p, std::size_t n, double h)
{
    auto at = [&](std::size_t q) { return u[base + q * stride]; };
    if (p == 0)
        return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
    if (p + 1 == n)
        return (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * h);
    return (at(p + 1) - at(p - 1)) / (2.0 * h);
}

double d2(const GridField& u, std::size_t base, std::size_t stride, std::size_t p, std::size_t n, double h)
{
    auto at = [&](std::size_t q) { return u[base + q * stride]; };
    const double h2 = h * h;
    if (p == 0)
        return (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) / h2;
    if (p + 1 == n)
        return (2.0 * at(n - 1) - 5.0 * at(n - 2) + 4.0 * at(n - 3) - at(n - 4)) / h2;
    return (at(p + 1) - 2.0 * at(p) + at(p - 1)) / h2;
}

GridField derivative_x(const GridField& u)
{
    const Grid& g = u.grid();
    GridField out(u.grid_ptr());
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i)
            out.at(i, j) = d1(u, g.index(0, j), 1, i, g.nx(), g.spacing());
    return out;
}

GridField derivative_y(const GridField& u)
{
    const Grid& g = u.grid();
    GridField out(u.grid_ptr());
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i)
            out.at(i, j) = d1(u, g.index(i, 0), g.nx(), j, g.ny(), g.spacing());
    return out;
}

// Table of |p - q|^alpha indexed by the absolute index offsets.
class DistancePowers {
public:
    DistancePowers(const Grid& g, double alpha) : nx_(g.nx()), table_(g.nx() * g.ny())
    {
        const double h = g.spacing();
        for (std::size_t dj = 0; dj < g.ny(); ++dj)
            for (std::size_t di = 0; di < g.nx(); ++di)
                table_[dj * nx_ + di] = std::pow(h * std::hypot(double(di), double(dj)), alpha);
    }

    double operator()(std::size_t di, std::size_t dj) const { return table_[dj * nx_ + di]; }

private:
    std::size_t nx_;
    std::vector<double> table_;
};

constexpr std::array<std::array<int, 2>, 12> kLocalOffsets{{
    {1, 0}, {2, 0}, {0, 1}, {0, 2}, {1, 1}, {1, -1},
    {2, 1}, {2, -1}, {1, 2}, {1, -2}, {2, 2}, {2, -2},
}};

// Visits the pair set shared by all Hölder estimates on one grid.
template <typename Visit>
void for_each_pair(const Grid& g, const NormConfig& cfg, Visit&& visit)
{
    const std::size_t n = g.node_count();
    const DistancePowers dist(g, cfg.alpha);
    auto offset_of = [&](std::size_t a, std::size_t b) {
        const std::size_t di = g.col(a) > g.col(b) ? g.col(a) - g.col(b) : g.col(b) - g.col(a);
        const std::size_t dj = g.row(a) > g.row(b) ? g.row(a) - g.row(b) : g.row(b) - g.row(a);
        return dist(di, dj);
    };

    if (cfg.pair_budget == 0 && n <= NormConfig::kExhaustiveNodeLimit) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                visit(a, b, offset_of(a, b));
        return;
    }

    const auto nx = static_cast<long>(g.nx());
    const auto ny = static_cast<long>(g.ny());
    for (long j = 0; j < ny; ++j) {
        for (long i = 0; i < nx; ++i) {
            for (const auto& off : kLocalOffsets) {
                const long i2 = i + off[0];
                const long j2 = j + off[1];
                if (i2 < 0 || i2 >= nx || j2 < 0 || j2 >= ny)
                    continue;
                visit(g.index(std::size_t(i), std::size_t(j)), g.index(std::size_t(i2), std::size_t(j2)),
                      dist(std::size_t(std::labs(off[0])), std::size_t(std::labs(off[1]))));
            }
        }
    }

    // R2 sequence (plastic-number Weyl sequence) over pairs of node indices.
    constexpr double plastic = 1.32471795724474602596;
    constexpr double g1 = 1.0 / plastic;
    constexpr double g2 = 1.0 / (plastic * plastic);
    const std::size_t budget = cfg.pair_budget == 0 ? NormConfig::kDefaultBudget : cfg.pair_budget;
    const double nd = static_cast<double>(n);
    for (std::size_t s = 1; s <= budget; ++s) {
        const double sd = static_cast<double>(s);
        const double fa = 0.5 + sd * g1;
        const double fb = 0.5 + sd * g2;
        const auto a = std::min(n - 1, static_cast<std::size_t>((fa - std::floor(fa)) * nd));
        const auto b = std::min(n - 1, static_cast<std::size_t>((fb - std::floor(fb)) * nd));
        if (a != b)
            visit(a, b, offset_of(a, b));
    }
}

std::vector<double> holder_seminorms(std::span<const GridField* const> fields, const NormConfig& cfg)
{
    cfg.validate();
    std::vector<double> best(fields.size(), 0.0);
    if (fields.empty())
        return best;
    for_each_pair(fields.front()->grid(), cfg, [&](std::size_t a, std::size_t b, double d) {
        for (std::size_t f = 0; f < fields.size(); ++f) {
            const GridField& u = *fields[f];
            best[f] = std::max(best[f], std::abs(u[a] - u[b]) / d);
        }
    });
    return best;
}

} // namespace

VectorField gradient(const GridField& u)
{
    return VectorField{derivative_x(u), derivative_y(u)};
}

FaceField face_gradient(const GridField& u)
{
    const Grid& g = u.grid();
    const double h = g.spacing();
    FaceField f = FaceField::zeros(u.grid_ptr());
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i + 1 < g.nx(); ++i)
            f.xf(i, j) = (u.at(i + 1, j) - u.at(i, j)) / h;
    for (std::size_t j = 0; j + 1 < g.ny(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i)
            f.yf(i, j) = (u.at(i, j + 1) - u.at(i, j)) / h;
    return f;
}

FaceField to_faces(const VectorField& v)
{
    const Grid& g = v.grid();
    FaceField f = FaceField::zeros(v.x.grid_ptr());
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i + 1 < g.nx(); ++i)
            f.xf(i, j) = 0.5 * (v.x.at(i, j) + v.x.at(i + 1, j));
    for (std::size_t j = 0; j + 1 < g.ny(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i)
            f.yf(i, j) = 0.5 * (v.y.at(i, j) + v.y.at(i, j + 1));
    return f;
}

GridField laplacian_apply(const GridField& u)
{
    const Grid& g = u.grid();
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    GridField out(u.grid_ptr());
    for (std::size_t j = 1; j + 1 < g.ny(); ++j)
        for (std::size_t i = 1; i + 1 < g.nx(); ++i)
            out.at(i, j) = (u.at(i + 1, j) + u.at(i - 1, j) + u.at(i, j + 1) + u.at(i, j - 1) - 4.0 * u.at(i, j))
                           * inv_h2;
    return out;
}

GridField divergence(const FaceField& flux)
{
    const Grid& g = *flux.grid;
    const double h = g.spacing();
    GridField out(flux.grid);
    for (std::size_t j = 1; j + 1 < g.ny(); ++j)
        for (std::size_t i = 1; i + 1 < g.nx(); ++i)
            out.at(i, j) = (flux.xf(i, j) - flux.xf(i - 1, j)) / h + (flux.yf(i, j) - flux.yf(i, j - 1)) / h;
    return out;
}

GridField divergence(const VectorField& v)
{
    return divergence(to_faces(v));
}

SecondDerivatives second_derivatives(const GridField& u)
{
    const Grid& g = u.grid();
    if (g.nx() < 4 || g.ny() < 4)
        throw GridTooCoarse("second differences need at least 4 nodes per axis");
    const double h = g.spacing();
    GridField xx(u.grid_ptr());
    GridField yy(u.grid_ptr());
    for (std::size_t j = 0; j < g.ny(); ++j) {
        for (std::size_t i = 0; i < g.nx(); ++i) {
            xx.at(i, j) = d2(u, g.index(0, j), 1, i, g.nx(), h);
            yy.at(i, j) = d2(u, g.index(i, 0), g.nx(), j, g.ny(), h);
        }
    }
    return SecondDerivatives{std::move(xx), derivative_x(derivative_y(u)), std::move(yy)};
}

double inner_product(const GridField& u, const GridField& v)
{
    const Grid& g = u.grid();
    double s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k)
        s += g.weight(k) * u[k] * v[k];
    return s;
}

double norm_l2(const GridField& u)
{
    return std::sqrt(inner_product(u, u));
}

double norm_sup(const GridField& u)
{
    double m = 0.0;
    for (double v : u.values())
        m = std::max(m, std::abs(v));
    return m;
}

double h1_inner(const GridField& u, const GridField& v)
{
    const Grid& g = u.grid();
    const double h = g.spacing();
    const double h2 = h * h;
    const FaceField gu = face_gradient(u);
    const FaceField gv = face_gradient(v);
    double s = 0.0;
    for (std::size_t j = 0; j < g.ny(); ++j) {
        const double w = (j == 0 || j + 1 == g.ny()) ? 0.5 * h2 : h2;
        for (std::size_t i = 0; i + 1 < g.nx(); ++i)
            s += w * gu.xf(i, j) * gv.xf(i, j);
    }
    for (std::size_t j = 0; j + 1 < g.ny(); ++j) {
        for (std::size_t i = 0; i < g.nx(); ++i) {
            const double w = (i == 0 || i + 1 == g.nx()) ? 0.5 * h2 : h2;
            s += w * gu.yf(i, j) * gv.yf(i, j);
        }
    }
    return s;
}

double norm_h1semi(const GridField& u)
{
    return std::sqrt(h1_inner(u, u));
}

void NormConfig::validate() const
{
    if (!(alpha > 0.0 && alpha < 1.0))
        throw InvalidArgument("Hölder exponent must lie in (0, 1)");
}

double holder_seminorm(const GridField& u, const NormConfig& cfg)
{
    const GridField* fields[] = {&u};
    return holder_seminorms(fields, cfg).front();
}

double holder_norm(const GridField& u, const NormConfig& cfg)
{
    return norm_sup(u) + holder_seminorm(u, cfg);
}

double c2alpha_estimate(const GridField& u, const NormConfig& cfg)
{
    const Grid& g = u.grid();
    if (g.nx() < 5 || g.ny() < 5)
        throw GridTooCoarse("C^{2,alpha} estimate needs at least 5 nodes per axis");
    const VectorField du = gradient(u);
    const SecondDerivatives d2u = second_derivatives(u);
    const GridField* second[] = {&d2u.xx, &d2u.xy, &d2u.yy};
    const auto seminorms = holder_seminorms(second, cfg);

    double total = norm_sup(u) + norm_sup(du.x) + norm_sup(du.y);
    for (const GridField* f : second)
        total += norm_sup(*f);
    for (double s : seminorms)
        total += s;
    return total;
}

PoincareCheck verify_poincare(const GridField& u, const Domain& domain)
{
    if (u.boundary_sup() > 1e-12 * std::max(1.0, norm_sup(u)))
        throw NotConforming("Poincaré check needs a field vanishing on the boundary");
    const DomainConstants dc = domain_constants(domain);
    const double h = u.grid().spacing();
    PoincareCheck r{};
    r.lhs = norm_l2(u);
    r.grad = norm_h1semi(u);
    r.rhs_vol = dc.kappa_volumetric * r.grad;
    r.rhs_slab = dc.kappa_slab * r.grad;
    const double slack = 2.0 * h * r.grad;
    r.holds_vol = r.lhs <= r.rhs_vol + slack;
    r.holds_slab = r.lhs <= r.rhs_slab + slack;
    return r;
}

} // namespace dirichlet
