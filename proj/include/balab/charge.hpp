#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "balab/geometry.hpp"
#include "balab/types.hpp"

namespace balab {

// Absolutely continuous part of a charge, sampled on a grid.
struct DensityBlock {
    std::shared_ptr<const Grid> grid;
    std::vector<double> values;        // density per node; excluded nodes hold 0
    std::vector<std::int32_t> excluded;  // nodes dropped from the stencil (non-finite samples)
    double min_value = 0.0;            // negativity diagnostic for subharmonic inputs
};

// Signed measure on the domain: finite atom list plus an optional grid
// density. Duplicate atom locations merge into a single weighted atom.
struct Charge {
    std::vector<Complex> atom_pos;
    std::vector<double> atom_weight;
    std::optional<DensityBlock> density;
    std::string label;

    void add_atom(Complex where, double weight);
    double total_mass() const;
    double total_variation() const;
    bool is_probability(double tol = 1e-9) const;
    Charge scaled(double factor) const;
};

Charge operator+(const Charge& a, const Charge& b);

// Point sequence with multiplicities; the stored truncation must lie strictly
// inside the domain it is used with.
struct ZeroSequence {
    std::vector<Complex> points;
    std::vector<int> multiplicities;

    std::string generator;   // empty for explicit lists
    long requested = 0;      // requested truncation for generated sequences
    double tail_bound = 0.0; // bound on sum(1-|z_k|) over points dropped by saturation

    std::size_t size() const { return points.size(); }
    void push(Complex z, int mult = 1);
    ZeroSequence truncated(std::size_t n) const;
};

enum class RadialRule { OneMinusPow2, OneMinusInverseK };

RadialRule radial_rule_from_string(const std::string& s);
std::string to_string(RadialRule rule);

// Radial zero sequences used throughout the audits: |z_k| = 1 - 2^-k (k >= 1)
// or |z_k| = 1 - 1/k (k >= 2), optionally spiraled by angle_step per point.
// Emission stops once 1 - |z_k| falls below floating resolution; the dropped
// tail is reported via `tail_bound`.
ZeroSequence radial_zero_sequence(RadialRule rule, long count, double angle_step = 0.0);

// Counting measure n_Z: one atom per distinct point, weight = multiplicity.
Charge counting_measure(const Domain& domain, const ZeroSequence& zeros);

struct RieszOptions {
    double exclusion_radius = -1.0;  // <0: use grid default
    std::vector<Complex> known_atoms;  // optional exclusion centers
};

// (1/2pi) * discrete Laplacian of u as a grid density (5-point stencil on the
// cartesian grid, clipped to nodes whose full stencil lies in the grid).
// Nodes where u is not finite are excluded and flagged.
Charge riesz_measure_numeric(const RealField& u, const std::shared_ptr<const Grid>& grid,
                             const RieszOptions& opts = {});

// Riesz mass inside the circle |z - center| = radius by the circulation
// (flux) method: (1/2pi) * contour integral of du/dn. Exact for log poles
// where the stencil route degrades.
double riesz_mass_flux(const RealField& u, Complex center, double radius, int nodes = 256,
                       double step = -1.0);

// Integration region D \ S (S omitted when system is null).
struct Region {
    const Domain* domain = nullptr;
    const SetSystem* system = nullptr;  // optional: excludes the closed disk S

    bool contains(Complex z) const {
        if (domain && !domain->contains(z)) return false;
        if (system && system->in_s(z)) return false;
        return true;
    }
};

// sum v(atom) * weight + sum v(node) * density * area over the region.
// A -inf value of v at an atom with nonzero weight propagates to a -inf
// result (a legitimate verdict for balayage left-hand sides), never throws.
double integrate_against(const RealField& v, const Charge& charge, const Region& region);

}  // namespace balab
