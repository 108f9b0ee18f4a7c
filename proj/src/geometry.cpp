#include "balab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "balab/quadrature.hpp"

namespace balab {

DomainKind domain_kind_from_string(const std::string& s) {
    if (s == "unit-disk") return DomainKind::UnitDisk;
    if (s == "disk") return DomainKind::Disk;
    if (s == "annulus") return DomainKind::Annulus;
    throw std::invalid_argument("unknown domain kind: " + s);
}

std::string to_string(DomainKind kind) {
    switch (kind) {
        case DomainKind::UnitDisk: return "unit-disk";
        case DomainKind::Disk: return "disk";
        case DomainKind::Annulus: return "annulus";
    }
    return "unit-disk";
}

bool Domain::contains(Complex z) const {
    const double d = std::abs(z - center);
    if (kind == DomainKind::Annulus) return d > inner_radius && d < radius;
    return d < radius;
}

double Domain::boundary_distance(Complex z) const {
    const double d = std::abs(z - center);
    if (kind == DomainKind::Annulus) return std::min(d - inner_radius, radius - d);
    return radius - d;
}

Domain make_domain(DomainKind kind, Complex center, double radius, double inner_radius) {
    Domain d;
    d.kind = kind;
    d.center = center;
    switch (kind) {
        case DomainKind::UnitDisk:
            d.center = Complex{0.0, 0.0};
            d.radius = 1.0;
            d.inner_radius = 0.0;
            break;
        case DomainKind::Disk:
            if (!(radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
            d.radius = radius;
            d.inner_radius = 0.0;
            break;
        case DomainKind::Annulus:
            if (!(inner_radius > 0.0)) throw std::invalid_argument("annulus inner radius must be positive");
            if (!(inner_radius < radius)) throw std::invalid_argument("annulus needs r_in < r_out");
            d.radius = radius;
            d.inner_radius = inner_radius;
            break;
    }
    return d;
}

Domain make_unit_disk() { return make_domain(DomainKind::UnitDisk); }

SetSystem nested_set_system(const Domain& domain, double s_radius, double s0_radius, double b,
                            Complex base) {
    if (!(b > 0.0)) throw std::invalid_argument("set system bound b must be positive");
    if (!(s_radius > 0.0)) throw std::invalid_argument("S must have nonempty interior");
    if (!(s_radius < s0_radius)) throw std::invalid_argument("nesting violated: need s_radius < s0_radius");
    if (!domain.contains(base)) throw std::invalid_argument("base point outside domain");
    const double inradius = domain.boundary_distance(base);
    if (!(s0_radius < inradius))
        throw std::invalid_argument("nesting violated: closure(S0) must stay inside the domain");
    SetSystem sys;
    sys.base = base;
    sys.s_radius = s_radius;
    sys.s0_radius = s0_radius;
    sys.bound = b;
    sys.margin_inner = s0_radius - s_radius;
    sys.margin_outer = inradius - s0_radius;
    return sys;
}

RadiusFunction admissible_radius_function(const Domain& domain, double shrink_factor) {
    if (!(shrink_factor > 0.0 && shrink_factor < 1.0))
        throw std::invalid_argument("shrink factor must lie in (0,1)");
    RadiusFunction r;
    r.shrink = shrink_factor;
    r.eval = [domain, shrink_factor](Complex z) {
        return shrink_factor * std::max(0.0, domain.boundary_distance(z));
    };
    return r;
}

Grid make_cartesian_grid(const Domain& domain, int n, double margin_cells) {
    if (n < 3) throw std::invalid_argument("grid too coarse: need at least 3 nodes per direction");
    Grid g;
    g.kind = Grid::Kind::Cartesian;
    g.nx = g.ny = n;
    const double h = 2.0 * domain.radius / n;
    g.spacing = h;
    g.atom_exclusion_radius = 3.0 * h;
    g.origin = domain.center - Complex{domain.radius, domain.radius};
    g.index.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
    const double margin = margin_cells * h;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Complex z = g.origin + Complex{(i + 0.5) * h, (j + 0.5) * h};
            if (domain.contains(z) && domain.boundary_distance(z) >= margin) {
                g.index[static_cast<std::size_t>(j) * n + i] =
                    static_cast<std::int32_t>(g.nodes.size());
                g.nodes.push_back(z);
                g.areas.push_back(h * h);
            }
        }
    }
    return g;
}

Grid make_polar_grid(Complex center, double r_lo, double r_hi, int n_radial, int n_angular) {
    if (!(0.0 <= r_lo && r_lo < r_hi)) throw std::invalid_argument("polar grid needs 0 <= r_lo < r_hi");
    if (n_radial < 3 || n_angular < 4) throw std::invalid_argument("polar grid too coarse");
    Grid g;
    g.kind = Grid::Kind::Polar;
    const QuadratureRule& rule = gauss_legendre(n_radial);
    const double mid = 0.5 * (r_lo + r_hi), half = 0.5 * (r_hi - r_lo);
    const double dtheta = kTwoPi / n_angular;
    g.spacing = (r_hi - r_lo) / n_radial;
    for (int i = 0; i < n_radial; ++i) {
        const double t = mid + half * rule.nodes[static_cast<std::size_t>(i)];
        const double wr = half * rule.weights[static_cast<std::size_t>(i)];
        for (int j = 0; j < n_angular; ++j) {
            const double theta = (j + 0.5) * dtheta;
            g.nodes.push_back(center + std::polar(t, theta));
            g.areas.push_back(wr * t * dtheta);
        }
    }
    return g;
}

Grid make_polar_grid(const Domain& domain, int n_radial, int n_angular, double boundary_margin) {
    const double lo = domain.kind == DomainKind::Annulus
                          ? domain.inner_radius + boundary_margin * (domain.radius - domain.inner_radius)
                          : 0.0;
    const double hi = domain.radius - boundary_margin * (domain.radius - domain.inner_radius);
    return make_polar_grid(domain.center, lo, hi, n_radial, n_angular);
}

}  // namespace balab
