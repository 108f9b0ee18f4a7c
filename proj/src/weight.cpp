#include "balab/weight.hpp"

#include <cmath>
#include <stdexcept>

#include "balab/potential.hpp"

namespace balab {

Charge Weight::riesz_charge() const {
    return plus.riesz + minus.riesz.scaled(-1.0);
}

Weight zero_weight() {
    Weight w;
    w.name = "zero";
    w.plus.eval = [](Complex) { return 0.0; };
    w.minus.eval = [](Complex) { return 0.0; };
    w.plus.riesz.label = "zero";
    w.minus.riesz.label = "zero";
    return w;
}

Weight bergman_weight(double alpha, const Domain& domain, int n_radial, int n_angular,
                      double cap_margin) {
    if (domain.kind == DomainKind::Annulus)
        throw std::invalid_argument("bergman weight is defined on disks");
    if (!(alpha > 0.0)) throw std::invalid_argument("bergman weight needs alpha > 0");
    const Complex c = domain.center;
    const double R = domain.radius;

    Weight w;
    w.name = "bergman_alpha";
    w.plus.continuous = true;
    w.plus.eval = [alpha, c, R](Complex z) {
        const double t = std::abs(z - c) / R;
        if (t >= 1.0) return pos_inf();
        return -alpha * std::log(1.0 - t);
    };
    w.minus.eval = [](Complex) { return 0.0; };
    w.minus.riesz.label = "zero";

    Grid grid = make_polar_grid(c, 1e-3 * R, (1.0 - cap_margin) * R, n_radial, n_angular);
    DensityBlock block;
    block.values.reserve(grid.nodes.size());
    for (const Complex& node : grid.nodes) {
        const double t = std::abs(node - c) / R;
        const double lap = alpha * (1.0 / ((1.0 - t) * (1.0 - t)) + 1.0 / (t * (1.0 - t)));
        block.values.push_back(lap / (kTwoPi * R * R));
    }
    block.grid = std::make_shared<Grid>(std::move(grid));
    w.plus.riesz.label = "bergman";
    w.plus.riesz.density = std::move(block);
    return w;
}

Weight potential_weight(const Charge& nu_plus, const Charge& nu_minus, const std::string& name) {
    for (double v : nu_plus.atom_weight)
        if (v < 0.0) throw std::invalid_argument("potential weight: nu_plus must be nonnegative");
    for (double v : nu_minus.atom_weight)
        if (v < 0.0) throw std::invalid_argument("potential weight: nu_minus must be nonnegative");
    Weight w;
    w.name = name;
    Charge plus = nu_plus, minus = nu_minus;
    w.plus.eval = [plus](Complex z) { return log_potential(plus, z); };
    w.plus.riesz = plus;
    w.plus.continuous = plus.atom_pos.empty();
    w.minus.eval = [minus](Complex z) { return log_potential(minus, z); };
    w.minus.riesz = minus;
    w.minus.continuous = minus.atom_pos.empty();
    return w;
}

}  // namespace balab
