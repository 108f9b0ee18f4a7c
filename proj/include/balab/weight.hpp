#pragma once

#include <string>

#include "balab/charge.hpp"
#include "balab/geometry.hpp"
#include "balab/types.hpp"

namespace balab {

// One subharmonic part of a weight together with its Riesz charge.
struct SubharmonicPart {
    RealField eval;
    Charge riesz;
    bool continuous = true;
};

// delta-subharmonic weight M = plus - minus; both parts finite at the base
// point of whatever system the weight is used with.
struct Weight {
    std::string name;
    SubharmonicPart plus;
    SubharmonicPart minus;

    double eval(Complex z) const {
        const double p = plus.eval(z), m = minus.eval(z);
        if (std::isinf(p) && std::isinf(m)) return neg_inf();
        return p - m;
    }
    Charge riesz_charge() const;  // nu_M = nu_plus - nu_minus
};

Weight zero_weight();

// M = alpha * ln(1/(1-|z|)) on the unit disk. The Riesz measure is the exact
// radial density alpha * (1/(1-t)^2 + 1/(t(1-t))) / 2pi sampled on a polar
// grid truncated at 1 - cap_margin (the full measure has infinite mass; the
// truncation is reported through the grid extent).
Weight bergman_weight(double alpha, const Domain& domain, int n_radial = 160,
                      int n_angular = 256, double cap_margin = 0.02);

// Weight given by its Riesz data: M_plus/M_minus are the logarithmic
// potentials of the two charges.
Weight potential_weight(const Charge& nu_plus, const Charge& nu_minus,
                        const std::string& name = "custom");

}  // namespace balab
