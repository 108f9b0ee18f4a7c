#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "balab/balayage.hpp"
#include "balab/charge.hpp"
#include "balab/geometry.hpp"
#include "balab/potential.hpp"
#include "balab/types.hpp"
#include "balab/weight.hpp"

namespace balab {

struct BlaschkeEval {
    double ln_abs = 0.0;       // log magnitude of the truncated product
    double partial_mass = 0.0; // sum of (1 - |a_k|): the convergence diagnostic
};

// Truncated Blaschke product on the unit disk, magnitude form: each factor
// contributes ln|(a - z)/(1 - conj(a) z)|. truncation < 0 means all points.
BlaschkeEval blaschke_product(const ZeroSequence& zeros, Complex z, long truncation = -1);

struct SweepOptions {
    int rings = 10;
    int angular = 256;
    double start_distance_factor = 0.5;  // first ring at this fraction of the radius
    double trend_threshold = 0.1;        // per-ring sup increment considered "flat"
};

struct MembershipResult {
    double sup_value = 0.0;  // sup over the sweep of (ln|f| - M)
    std::vector<std::pair<double, double>> ring_trace;  // (boundary distance, ring sup)
    bool bounded = false;  // trend stays below the threshold toward the boundary
};

// Weighted-boundedness probe for Hol(D, M): sup of ln|f| - M on rings that
// approach the boundary, plus the per-ring trend.
MembershipResult membership_test(const RealField& ln_f, const Weight& M, const Domain& domain,
                                 const SweepOptions& opts = {});

// Log magnitude of a zero-prescribed product plus a harmonic correction
// Re(sum c_j w^j), w = (z - center)/R.
struct ProductFunction {
    RealField ln_abs;
    std::vector<Complex> harmonic_coeffs;
    int winding = 0;              // annulus correction factor z^m
    double residual_period = 0.0; // fractional period left after the winding fix
    bool holomorphic_form = false;
};

struct ConstructOptions {
    bool request_holomorphic = true;
    bool refine_plus_one = false;  // additionally enforce u <= M + slack
    double slack = 1.0;
    int harmonic_fit_degree = 0;   // least-squares degree on the boundary collar
    int sweep_rings = 14;
    int sweep_angular = 96;
    int circle_nodes = 128;
    int max_shrink_iterations = 40;
};

struct DominatedCertificate {
    bool circle_bound_ok = false;   // u <= M^(circle r) at 100% of sweep nodes
    double max_violation = 0.0;
    bool chain_ok = false;          // M^(circle r) <= M_plus^(circle r) - M_minus node-wise
    double chain_max_violation = 0.0;
    bool plus_one_checked = false;
    bool plus_one_ok = false;
    double continuity_modulus = 0.0;  // max of M_plus^(circle r) - M_plus at the final r
    int shrink_iterations = 0;
    int sweep_nodes = 0;
    std::string note;
};

struct DominatedResult {
    ProductFunction function;  // final u = raw product + harmonic correction
    DominatedCertificate certificate;
    double shift = 0.0;        // constant part of the correction
    double final_shrink = 0.0; // shrink factor of the radius function actually used
};

// Theorem-3-style construction: subharmonic u with Riesz measure nu and
// u <= M^(circle average at radius r) everywhere on the sweep; optionally the
// u <= M + slack refinement with the radius auto-shrunk until the continuity
// modulus of M_plus falls under the slack.
DominatedResult construct_dominated_subharmonic(const Charge& nu, const Weight& M,
                                                const RadiusFunction& r, const Domain& domain,
                                                const ConstructOptions& opts = {});

struct ClassifyConfig {
    SetSystem system;
    double u0_radius = 0.75;
    int family_size = 6;
    std::uint64_t seed = 1;
    double proximity_base = 0.1;
    std::vector<long> truncation = {1250, 2500, 5000, 10000};
    double slope_threshold = 0.5;
    double mass_slope_threshold = 0.1;
    double radius_shrink = 0.3;
    SweepOptions membership;
    ConstructOptions construct;
    BalayageOptions audit;  // truncation/prefix filled in by the classifier
};

struct ClassifyBundle {
    BalayageReport z3;
    std::string z3_verdict;

    std::vector<std::pair<long, double>> mass_trace;  // (N, partial blaschke mass)
    bool product_convergent = false;
    std::optional<MembershipResult> membership;
    std::optional<DominatedCertificate> certificate;
    bool z1_ok = false;
    std::string z1_verdict;

    bool agree = false;
    bool positive = false;
    std::string consistency;
};

// Full two-route check: the smooth compactly-supported balayage audit (z3)
// against the constructive product route (z1), with agreement diagnostics.
ClassifyBundle classify_zero_sequence(const ZeroSequence& zeros, const Weight& M,
                                      const Domain& domain, const ClassifyConfig& config);

}  // namespace balab
