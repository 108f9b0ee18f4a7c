#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "balab/types.hpp"

namespace balab {

enum class DomainKind { UnitDisk, Disk, Annulus };

DomainKind domain_kind_from_string(const std::string& s);
std::string to_string(DomainKind kind);

// Planar domain with analytic boundary: a disk or an annulus. The boundary is
// never polar for these kinds, so a Green function always exists.
struct Domain {
    DomainKind kind = DomainKind::UnitDisk;
    Complex center{0.0, 0.0};
    double radius = 1.0;        // outer radius
    double inner_radius = 0.0;  // annulus only

    int connectivity() const { return kind == DomainKind::Annulus ? 2 : 1; }
    bool boundary_polar() const { return false; }

    bool contains(Complex z) const;          // strict interior
    double boundary_distance(Complex z) const;
};

Domain make_domain(DomainKind kind, Complex center = {0.0, 0.0}, double radius = 1.0,
                   double inner_radius = 0.0);
Domain make_unit_disk();

// Nested pair of closed disks S subset S0 around the base point, with the
// class bound b. Margins are the slack of each strict inclusion.
struct SetSystem {
    Complex base{0.0, 0.0};  // base point; S and S0 are centered here
    double s_radius = 0.0;
    double s0_radius = 0.0;
    double bound = 0.0;       // b
    double margin_inner = 0.0;  // s0_radius - s_radius
    double margin_outer = 0.0;  // dist(S0, boundary of D)

    bool in_s(Complex z) const { return std::abs(z - base) <= s_radius; }
};

SetSystem nested_set_system(const Domain& domain, double s_radius, double s0_radius, double b,
                            Complex base = {0.0, 0.0});

// r(z) = shrink * dist(z, boundary); the closed disk D(z, r(z)) stays inside
// the domain and inf r > 0 on every compact subset.
struct RadiusFunction {
    std::function<double(Complex)> eval;
    double shrink = 0.0;
    double operator()(Complex z) const { return eval(z); }
};

RadiusFunction admissible_radius_function(const Domain& domain, double shrink_factor);

// Node set with per-node cell areas. Cartesian grids are cell-centered and
// carry index structure for finite-difference stencils; polar grids follow
// the circle structure of disks and annuli (Gauss-Legendre radii x uniform
// angles) and are meant for integration.
struct Grid {
    enum class Kind { Cartesian, Polar };

    Kind kind = Kind::Cartesian;
    std::vector<Complex> nodes;
    std::vector<double> areas;
    double spacing = 0.0;                // h for cartesian grids
    double atom_exclusion_radius = 0.0;  // default 3h; 0 disables

    // cartesian structure; node(i,j) = origin + ((i+0.5)h, (j+0.5)h)
    int nx = 0, ny = 0;
    Complex origin{0.0, 0.0};
    std::vector<std::int32_t> index;  // (i,j) -> node slot, -1 if masked out

    std::int32_t at(int i, int j) const {
        if (i < 0 || j < 0 || i >= nx || j >= ny) return -1;
        return index[static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
                     static_cast<std::size_t>(i)];
    }
};

// Cell-centered n x n grid over the bounding square of the domain, masked to
// nodes with boundary distance >= margin_cells * h.
Grid make_cartesian_grid(const Domain& domain, int n, double margin_cells = 2.0);

// Polar integration grid about `center` covering radii [r_lo, r_hi].
Grid make_polar_grid(Complex center, double r_lo, double r_hi, int n_radial, int n_angular);
Grid make_polar_grid(const Domain& domain, int n_radial, int n_angular,
                     double boundary_margin = 0.01);

}  // namespace balab
