#pragma once

#include <string>
#include <utility>
#include <vector>

#include "balab/charge.hpp"
#include "balab/potential.hpp"
#include "balab/types.hpp"

namespace balab {

// One verification instance of the extended Poisson-Jensen identity
// u(base) + integral(V d nu_u) = integral(u d mu_V).
struct PJInstance {
    std::string id;
    RealField u;
    Charge riesz_u;             // nu_u
    JensenPotential potential;  // V with its generating measure
    double base_value = 0.0;    // u at the potential's base point
};

PJInstance make_pj_instance(std::string id, RealField u, Charge riesz_u,
                            JensenPotential potential);

struct PJOptions {
    int base_angular = 32;
    int base_radial = 12;
    int trace_levels = 3;   // refinement levels always recorded
    int max_depth = 5;      // keep refining until stable or this depth
    double stable_tol = 1e-8;
};

struct PJResult {
    double residual = 0.0;                // at the finest level reached
    std::vector<double> refinement_trace; // residual per level
    double lhs = 0.0;                     // u(base) + integral(V d nu_u)
    double rhs = 0.0;                     // integral(u d mu_V), finest level
};

PJResult extended_pj_residual(const PJInstance& instance, const Domain& domain,
                              const PJOptions& opts = {});

using HarmonicSample = std::pair<std::string, RealField>;

// Real/imaginary parts of monomials up to degree 3: a finite surrogate for
// the full harmonic class that catches moment failures.
std::vector<HarmonicSample> standard_harmonic_basis();

struct MomentReport {
    struct Row {
        std::string name;
        double expected = 0.0;
        double integral = 0.0;
        double deviation = 0.0;
    };
    std::vector<Row> rows;
    double max_deviation = 0.0;
    double tol = 0.0;
    bool pass = false;
};

// Checks h(base) == integral(h d mu) for each harmonic sample.
MomentReport arens_singer_reproducing_check(const Charge& mu, Complex base = {0.0, 0.0},
                                            const std::vector<HarmonicSample>& samples =
                                                standard_harmonic_basis(),
                                            double tol = 1e-7);

}  // namespace balab
