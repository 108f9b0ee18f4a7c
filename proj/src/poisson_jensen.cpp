#include "balab/poisson_jensen.hpp"

#include <cmath>
#include <stdexcept>

#include "balab/averaging.hpp"
#include "balab/quadrature.hpp"

namespace balab {

PJInstance make_pj_instance(std::string id, RealField u, Charge riesz_u,
                            JensenPotential potential) {
    PJInstance inst;
    inst.id = std::move(id);
    inst.u = std::move(u);
    inst.riesz_u = std::move(riesz_u);
    inst.potential = std::move(potential);
    inst.base_value = inst.u(inst.potential.base);
    if (!std::isfinite(inst.base_value))
        throw std::invalid_argument("pj instance: u must be finite at the base point");
    for (std::size_t i = 0; i < inst.riesz_u.atom_pos.size(); ++i) {
        if (inst.riesz_u.atom_weight[i] != 0.0 &&
            std::abs(inst.riesz_u.atom_pos[i] - inst.potential.base) < 1e-12)
            throw std::invalid_argument("pj instance: nu_u may not charge the base point");
    }
    return inst;
}

PJResult extended_pj_residual(const PJInstance& instance, const Domain& domain,
                              const PJOptions& opts) {
    const JensenPotential& V = instance.potential;
    if (std::abs(V.shell.mass() - 1.0) > 1e-9)
        throw std::invalid_argument("pj: generating measure is not a probability");
    if (!(V.shell.r_in > 0.0) || !domain.contains(V.base))
        throw std::invalid_argument("pj: potential lacks the unit normalization at an interior base");
    if (domain.boundary_distance(V.base) <= V.shell.r_out)
        throw std::invalid_argument("pj: shell support leaves the domain");

    Region whole{&domain, nullptr};
    const double lhs =
        instance.base_value +
        integrate_against([&V](Complex z) { return V.value(z); }, instance.riesz_u, whole);

    PJResult result;
    result.lhs = lhs;
    double previous = 0.0;
    for (int level = 0; level < opts.max_depth; ++level) {
        const int radial = opts.base_radial << level;
        const int angular = opts.base_angular << level;
        // integral of u against the shell measure: exact radial weights times
        // circle averages of u (no self-normalization, so the trace reflects
        // the genuine quadrature refinement)
        const double rhs = gl_integrate(
            [&](double t) {
                return V.shell.density(t) * kTwoPi * t *
                       circle_average(instance.u, V.base, t, angular);
            },
            V.shell.r_in, V.shell.r_out, radial);
        const double residual = std::abs(lhs - rhs);
        result.refinement_trace.push_back(residual);
        result.rhs = rhs;
        result.residual = residual;
        const bool have_trace = level + 1 >= opts.trace_levels;
        if (have_trace && level > 0 && std::abs(residual - previous) < opts.stable_tol) break;
        previous = residual;
    }
    return result;
}

std::vector<HarmonicSample> standard_harmonic_basis() {
    std::vector<HarmonicSample> basis;
    basis.emplace_back("1", [](Complex) { return 1.0; });
    basis.emplace_back("Re z", [](Complex z) { return z.real(); });
    basis.emplace_back("Im z", [](Complex z) { return z.imag(); });
    basis.emplace_back("Re z^2", [](Complex z) { return (z * z).real(); });
    basis.emplace_back("Im z^2", [](Complex z) { return (z * z).imag(); });
    basis.emplace_back("Re z^3", [](Complex z) { return (z * z * z).real(); });
    return basis;
}

MomentReport arens_singer_reproducing_check(const Charge& mu, Complex base,
                                            const std::vector<HarmonicSample>& samples,
                                            double tol) {
    if (!mu.is_probability())
        throw std::invalid_argument("arens_singer_reproducing_check: mass must equal 1");
    MomentReport report;
    report.tol = tol;
    Region everywhere;  // mu is compactly supported by construction
    for (const auto& [name, h] : samples) {
        MomentReport::Row row;
        row.name = name;
        row.expected = h(base);
        row.integral = integrate_against(h, mu, everywhere);
        row.deviation = std::abs(row.expected - row.integral);
        report.max_deviation = std::max(report.max_deviation, row.deviation);
        report.rows.push_back(std::move(row));
    }
    report.pass = report.max_deviation < tol;
    return report;
}

}  // namespace balab
