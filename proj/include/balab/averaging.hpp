#pragma once

#include <functional>
#include <optional>

#include "balab/charge.hpp"
#include "balab/geometry.hpp"
#include "balab/potential.hpp"
#include "balab/types.hpp"

namespace balab {

// Radial approximate identity: smooth profile supported in [0,1] whose induced
// planar measure has unit mass. The default is the standard bump
// c * exp(-1/(1-t^2)).
struct Kernel {
    std::function<double(double)> profile;

    double mass(int radial_nodes = 256) const;  // planar mass by quadrature
    Kernel normalized(int radial_nodes = 256) const;

    static Kernel smooth_bump();
};

struct AverageOptions {
    int angular_nodes = 256;   // snapped up to a power of two, >= 16
    int radial_nodes = 64;     // per radial panel / rule
    int max_doublings = 4;
    double stable_tol = 1e-8;
};

// (1/2pi) * integral of f over the circle |w - z| = r, by the periodic
// trapezoid rule. Non-finite samples trigger the half-step offset retry
// (principal-value refinement); nodes still non-finite after that are the
// integrand's own -inf values and make the average -inf.
double circle_average(const RealField& f, Complex z, double r, int nodes = 256);

// Containment-checked variant: throws unless the closed circle lies in D.
double circle_average(const Domain& domain, const RealField& f, Complex z, double r,
                      int nodes = 256);

// Area mean over the closed disk D(z, r): radial integral of circle averages
// with dyadically graded panels toward the center (handles log poles at z).
double disk_average(const RealField& f, Complex z, double r, const AverageOptions& opts = {});
double disk_average(const Domain& domain, const RealField& f, Complex z, double r,
                    const AverageOptions& opts = {});

// Smoothing average: integral of f(z + rhat*w) a(|w|) dA(w) over the unit
// disk; the quadrature is self-normalizing so constants reproduce exactly.
double smooth_average(const RealField& f, Complex z, double rhat, const Kernel& kernel,
                      const AverageOptions& opts = {});
double smooth_average(const Domain& domain, const RealField& f, Complex z, double rhat,
                      const Kernel& kernel, const AverageOptions& opts = {});

struct BoundCheck {
    double value = 0.0;
    double bound = 0.0;
    bool pass = false;
};

// Lower bound for disk averages of potentials of probability measures:
// p^(area mean over radius r) >= ln(r / sqrt(e)). The disk average of the
// log potential is evaluated through the exact per-source area-mean kernel
// (Fubini over the finitely supported charge), so the check carries no
// quadrature error. The bound is planar: no domain constraint on D(z, r).
BoundCheck disk_average_lower_bound_check(const Charge& mu, Complex z, double r,
                                          double tol = 1e-6);

}  // namespace balab
