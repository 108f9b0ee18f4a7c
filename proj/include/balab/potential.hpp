#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "balab/charge.hpp"
#include "balab/geometry.hpp"
#include "balab/types.hpp"

namespace balab {

// Green function of the domain with the given pole. Closed form on disks;
// image-charge series on the annulus, truncated once terms drop below 1e-12
// (documented accuracy better than 1e-8). Returns +inf at the pole itself.
double green_function(const Domain& domain, Complex z, Complex pole = {0.0, 0.0});

// Harmonic measure of the inner boundary circle of an annulus at z.
double harmonic_measure_inner(const Domain& domain, Complex z);

// Logarithmic potential sum(w * ln|z - z'|) over atoms plus the density part;
// exactly -inf at an atom with positive weight.
double log_potential(const Charge& charge, Complex z);

// Area mean of ln|. - source| over the closed disk D(center, r); closed form.
double disk_mean_log_distance(Complex center, double r, Complex source);

// Smooth radial probability shell: planar density c * bump((2t-r_in-r_out)/(r_out-r_in))
// supported on r_in <= |z - base| <= r_out, normalized to unit planar mass.
struct ShellProfile {
    double r_in = 0.0;
    double r_out = 0.0;
    double normalization = 0.0;

    double density(double t) const;       // planar density at radius t
    double mass() const;                  // total planar mass (1 within 1e-10)
    double mass_up_to(double t) const;    // integral over [r_in, min(t, r_out)]
    double log_moment() const;            // integral of ln t against the measure
    double log_moment_from(double t) const;
};

ShellProfile make_shell_profile(double r_in, double r_out);

// Real test function v on D \ S with its class metadata.
struct TestFunctionMeta {
    bool compactly_supported = false;
    bool smooth = false;
    std::optional<double> support_radius;  // about the base point, when compact
};

struct TestFunction {
    std::string id;
    RealField eval;
    TestFunctionMeta meta;
};

// Potential V = p_mu - ln|z - base| of a smooth radial shell measure mu.
// V vanishes outside the shell, is smooth off the base point, harmonic inside
// the shell's inner radius except at the base, and V + ln|z - base| stays
// bounded near the base (the unit normalization).
struct JensenPotential {
    std::string id;
    Complex base{0.0, 0.0};
    ShellProfile shell;

    double potential(Complex z) const;  // p_mu(z)
    double value(Complex z) const;      // V(z); +inf at the base point
    double harmonic_radius() const { return shell.r_in; }

    // The generating Arens-Singer measure discretized on a polar grid.
    Charge measure_charge(int n_radial = 64, int n_angular = 128) const;

    TestFunction as_test_function() const;
};

struct FamilyOptions {
    Complex base{0.0, 0.0};
    double min_halfwidth = 0.004;
    double max_halfwidth = 0.03;
    double edge_gap = 0.004;
    // extra shells pushed toward the boundary: outer edge at distance
    // proximity_base * 2^-j from the boundary, j = 0..levels-1
    int proximity_levels = 0;
    double proximity_base = 0.1;
};

// Deterministic family of Jensen potentials supported in D \ U0, generated
// from the seed. Throws when the geometry leaves no room for the shells.
std::vector<JensenPotential> jensen_potential_family(const Domain& domain, double u0_radius,
                                                     int count, std::uint64_t seed,
                                                     const FamilyOptions& opts = {});

// v = scale * g_D(., base): in the wide test class but not compactly supported.
TestFunction green_test_function(const Domain& domain, Complex base = {0.0, 0.0},
                                 double scale = 1.0);

struct ValidationOptions {
    int rings = 24;
    int angular = 128;
    int collar_levels = 6;
    double collar_base_factor = 0.05;  // fraction of the outer radius
    double boundary_tol = 1e-3;
    double neg_tol = 1e-9;
    double sup_tol = 1e-9;
};

// Report for the three class conditions. Report-only: never throws on a
// failing function.
struct ClassReport {
    bool boundary_limit_zero = false;
    bool nonneg_outside_compact = false;
    bool sup_bound_ok = false;
    std::vector<double> collar_maxima;   // per shrinking collar
    double min_near_boundary = 0.0;
    double sup_on_ring_region = 0.0;     // sup |v| over S0 \ S
    double bound = 0.0;                  // b it was checked against
    double support_radius_estimate = 0.0;
    bool compactly_supported = false;
    bool smooth = false;

    bool all_pass() const { return boundary_limit_zero && nonneg_outside_compact && sup_bound_ok; }
};

ClassReport validate_test_function(const TestFunction& v, const SetSystem& system,
                                   const Domain& domain, const ValidationOptions& opts = {});

}  // namespace balab
