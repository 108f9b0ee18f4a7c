#include "balab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "balab/quadrature.hpp"
#include "balab/rng.hpp"

namespace balab {

namespace {

constexpr double kSeriesCut = 1e-12;  // annulus image series truncation
constexpr int kShellGL = 96;          // machine precision for the bump profile

double log_abs_one_minus(double x, double cos_d, double sin_d) {
    // ln|1 - x e^{i d}|
    const double re = 1.0 - x * cos_d, im = -x * sin_d;
    return 0.5 * std::log(re * re + im * im);
}

// Green function of the annulus a < |z| < b (both points relative to the
// center) as an image-charge expansion. Derivation: expand the angular
// Fourier series of g, subtract the free-space log, and resum the remainder
// with 1/(1-q^n) = sum_j q^{jn}; every resulting mode series is a closed-form
// log. Terms decay geometrically with ratio q = (a/b)^2, and the expansion
// telescopes to exactly zero on both boundary circles.
double annulus_green(double a, double b, Complex zc, Complex wc) {
    const double r = std::abs(zc), s = std::abs(wc);
    const double r_lo = std::min(r, s), r_hi = std::max(r, s);
    const double L = std::log(b / a);
    const double delta = std::arg(zc) - std::arg(wc);
    const double cd = std::cos(delta), sd = std::sin(delta);

    const double radial = std::log(r_lo / a) * std::log(b / r_hi) / L;
    const double t = r_lo / r_hi;
    const double A = r_lo * r_hi / (b * b);
    const double B = (a * a) / (r_lo * r_hi);
    const double q = (a / b) * (a / b);

    double g = radial - log_abs_one_minus(t, cd, sd);
    double qj = 1.0;
    for (int j = 0; j < 100000; ++j) {
        const double term = log_abs_one_minus(A * qj, cd, sd) + log_abs_one_minus(B * qj, cd, sd) -
                            log_abs_one_minus(t * q * qj, cd, sd) -
                            log_abs_one_minus((q / t) * qj, cd, sd);
        g += term;
        qj *= q;
        const double scale = qj * (A + B + t * q + q / t);
        if (scale < kSeriesCut && j >= 1) return g;
    }
    throw std::runtime_error("annulus green series did not converge (annulus too thin)");
}

double bump(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
}

}  // namespace

double green_function(const Domain& domain, Complex z, Complex pole) {
    if (!domain.contains(pole)) throw std::invalid_argument("green_function: pole outside domain");
    if (z == pole) return pos_inf();
    if (!domain.contains(z)) throw std::invalid_argument("green_function: point outside domain");
    if (domain.kind == DomainKind::Annulus)
        return annulus_green(domain.inner_radius, domain.radius, z - domain.center,
                             pole - domain.center);
    const Complex zc = z - domain.center, wc = pole - domain.center;
    const double R = domain.radius;
    return std::log(std::abs(R * R - zc * std::conj(wc))) - std::log(R * std::abs(z - pole));
}

double harmonic_measure_inner(const Domain& domain, Complex z) {
    if (domain.kind != DomainKind::Annulus)
        throw std::invalid_argument("harmonic_measure_inner: annulus only");
    if (!domain.contains(z)) throw std::invalid_argument("harmonic_measure_inner: point outside domain");
    return std::log(domain.radius / std::abs(z - domain.center)) /
           std::log(domain.radius / domain.inner_radius);
}

double log_potential(const Charge& charge, Complex z) {
    std::vector<double> terms;
    terms.reserve(charge.atom_pos.size());
    for (std::size_t i = 0; i < charge.atom_pos.size(); ++i) {
        const double w = charge.atom_weight[i];
        if (w == 0.0) continue;
        const double d = std::abs(z - charge.atom_pos[i]);
        if (d == 0.0) return w > 0.0 ? neg_inf() : pos_inf();
        terms.push_back(w * std::log(d));
    }
    if (charge.density) {
        const Grid& g = *charge.density->grid;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            const double w = charge.density->values[i] * g.areas[i];
            if (w == 0.0) continue;
            const double d = std::abs(z - g.nodes[i]);
            if (d == 0.0) continue;
            terms.push_back(w * std::log(d));
        }
    }
    return pairwise_sum(terms);
}

double disk_mean_log_distance(Complex center, double r, Complex source) {
    const double d = std::abs(source - center);
    if (d >= r) return std::log(d);
    // (1/pi r^2) * integral of ln|.-source| over D(center,r)
    return std::log(r) - 0.5 * (1.0 - (d * d) / (r * r));
}

double ShellProfile::density(double t) const {
    if (t <= r_in || t >= r_out) return 0.0;
    const double s = (2.0 * t - r_in - r_out) / (r_out - r_in);
    return normalization * bump(s);
}

double ShellProfile::mass() const { return mass_up_to(r_out); }

double ShellProfile::mass_up_to(double t) const {
    const double hi = std::min(t, r_out);
    if (hi <= r_in) return 0.0;
    return gl_integrate([this](double x) { return density(x) * kTwoPi * x; }, r_in, hi, kShellGL);
}

double ShellProfile::log_moment() const { return log_moment_from(r_in); }

double ShellProfile::log_moment_from(double t) const {
    const double lo = std::max(t, r_in);
    if (lo >= r_out) return 0.0;
    return gl_integrate([this](double x) { return density(x) * kTwoPi * x * std::log(x); }, lo,
                        r_out, kShellGL);
}

ShellProfile make_shell_profile(double r_in, double r_out) {
    if (!(0.0 < r_in && r_in < r_out))
        throw std::invalid_argument("shell profile needs 0 < r_in < r_out");
    ShellProfile p;
    p.r_in = r_in;
    p.r_out = r_out;
    p.normalization = 1.0;
    const double raw = gl_integrate(
        [&p](double x) { return p.density(x) * kTwoPi * x; }, r_in, r_out, 256);
    p.normalization = 1.0 / raw;
    return p;
}

double JensenPotential::potential(Complex z) const {
    const double d = std::abs(z - base);
    if (d >= shell.r_out) return std::log(d);
    if (d <= shell.r_in) return shell.log_moment();
    // radial measure: potential at distance d is ln(d) on the mass inside,
    // plus the log moment of the mass outside
    return std::log(d) * shell.mass_up_to(d) + shell.log_moment_from(d);
}

double JensenPotential::value(Complex z) const {
    const double d = std::abs(z - base);
    if (d == 0.0) return pos_inf();
    if (d >= shell.r_out) return 0.0;  // exact vanishing outside the shell
    return potential(z) - std::log(d);
}

Charge JensenPotential::measure_charge(int n_radial, int n_angular) const {
    Grid grid = make_polar_grid(base, shell.r_in, shell.r_out, n_radial, n_angular);
    DensityBlock block;
    block.values.reserve(grid.nodes.size());
    for (const Complex& node : grid.nodes) block.values.push_back(shell.density(std::abs(node - base)));
    block.grid = std::make_shared<Grid>(std::move(grid));
    Charge c;
    c.label = id.empty() ? "jensen-measure" : id;
    c.density = std::move(block);
    return c;
}

TestFunction JensenPotential::as_test_function() const {
    TestFunction f;
    f.id = id;
    JensenPotential self = *this;
    f.eval = [self](Complex z) { return self.value(z); };
    f.meta.compactly_supported = true;
    f.meta.smooth = true;
    f.meta.support_radius = shell.r_out;
    return f;
}

std::vector<JensenPotential> jensen_potential_family(const Domain& domain, double u0_radius,
                                                     int count, std::uint64_t seed,
                                                     const FamilyOptions& opts) {
    if (count < 1) throw std::invalid_argument("jensen family needs count >= 1");
    if (!domain.contains(opts.base)) throw std::invalid_argument("family base point outside domain");
    const double edge = domain.boundary_distance(opts.base);
    const double lo = u0_radius + opts.edge_gap;
    const double hi = edge - opts.edge_gap;
    if (!(u0_radius > 0.0) || !(lo + 2.0 * opts.min_halfwidth < hi))
        throw std::invalid_argument("geometry leaves no room for the shell support");

    std::vector<JensenPotential> family;
    Rng rng(seed);
    char buf[96];
    for (int k = 0; k < count; ++k) {
        const double w_cap = std::min(opts.max_halfwidth, 0.25 * (hi - lo));
        const double w = rng.uniform(opts.min_halfwidth, w_cap);
        const double mid = rng.uniform(lo + w, hi - w);
        JensenPotential p;
        p.base = opts.base;
        p.shell = make_shell_profile(mid - w, mid + w);
        std::snprintf(buf, sizeof buf, "shell-%02d(mid=%.6g,w=%.6g)", k, mid, w);
        p.id = buf;
        family.push_back(std::move(p));
    }
    for (int j = 0; j < opts.proximity_levels; ++j) {
        const double prox = opts.proximity_base * std::pow(2.0, -j);
        const double outer = edge - 0.5 * prox;
        const double inner = edge - 0.75 * prox;
        if (inner <= lo) throw std::invalid_argument("proximity shell collides with U0");
        JensenPotential p;
        p.base = opts.base;
        p.shell = make_shell_profile(inner, outer);
        std::snprintf(buf, sizeof buf, "edge-shell-%02d(prox=%.6g)", j, prox);
        p.id = buf;
        family.push_back(std::move(p));
    }
    return family;
}

TestFunction green_test_function(const Domain& domain, Complex base, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("green test function scale must be positive");
    TestFunction f;
    char buf[64];
    std::snprintf(buf, sizeof buf, "green(scale=%.6g)", scale);
    f.id = buf;
    f.eval = [domain, base, scale](Complex z) {
        if (z == base) return pos_inf();
        return scale * green_function(domain, z, base);
    };
    f.meta.compactly_supported = false;
    f.meta.smooth = true;
    return f;
}

namespace {

// Sample |v| on the circles at a fixed distance from every boundary component.
void boundary_ring_stats(const TestFunction& v, const Domain& domain, double dist, int angular,
                         double& max_abs, double& min_val) {
    std::vector<double> radii;
    radii.push_back(domain.radius - dist);
    if (domain.kind == DomainKind::Annulus) radii.push_back(domain.inner_radius + dist);
    for (double rad : radii) {
        if (rad <= (domain.kind == DomainKind::Annulus ? domain.inner_radius : 0.0)) continue;
        for (int j = 0; j < angular; ++j) {
            const Complex z = domain.center + std::polar(rad, kTwoPi * (j + 0.5) / angular);
            const double val = v.eval(z);
            if (std::isfinite(val)) {
                max_abs = std::max(max_abs, std::abs(val));
                min_val = std::min(min_val, val);
            } else if (std::isinf(val) && val < 0.0) {
                min_val = neg_inf();
            }
        }
    }
}

}  // namespace

ClassReport validate_test_function(const TestFunction& v, const SetSystem& system,
                                   const Domain& domain, const ValidationOptions& opts) {
    ClassReport report;
    report.bound = system.bound;
    report.compactly_supported = v.meta.compactly_supported;
    report.smooth = v.meta.smooth;

    const double collar_base = opts.collar_base_factor * domain.radius;

    // one dense ladder of boundary distances shared by conditions 1 and 2;
    // per-collar maxima are nested maxima over it, so they are monotone by
    // construction and the content of condition 1 is the decay below the
    // tolerance at the deepest collar
    std::vector<double> depths;
    for (int k = 1; k <= 64; ++k) depths.push_back(collar_base * k / 64.0);
    for (int k = 1; k <= opts.collar_levels; ++k)
        for (int s = 1; s <= 4; ++s)
            depths.push_back(collar_base * std::pow(2.0, -k) * s / 4.0);
    std::vector<double> depth_max(depths.size(), 0.0);
    double min_outer = 0.0;
    for (std::size_t i = 0; i < depths.size(); ++i) {
        double mn = 0.0;
        boundary_ring_stats(v, domain, depths[i], opts.angular, depth_max[i], mn);
        min_outer = std::min(min_outer, mn);
    }
    for (int k = 1; k <= opts.collar_levels; ++k) {
        const double eps = collar_base * std::pow(2.0, -k);
        double max_abs = 0.0;
        for (std::size_t i = 0; i < depths.size(); ++i)
            if (depths[i] <= eps + 1e-15) max_abs = std::max(max_abs, depth_max[i]);
        report.collar_maxima.push_back(max_abs);
    }
    report.boundary_limit_zero = report.collar_maxima.back() < opts.boundary_tol;

    // condition 2: no negativity accumulating at the boundary
    report.min_near_boundary = min_outer;
    report.nonneg_outside_compact = min_outer >= -opts.neg_tol;

    // condition 3: sup |v| over S0 \ S against the class bound
    double sup_abs = 0.0;
    for (int i = 0; i <= opts.rings; ++i) {
        const double rad = system.s_radius +
                           (system.s0_radius - system.s_radius) * static_cast<double>(i) / opts.rings;
        for (int j = 0; j < opts.angular; ++j) {
            const Complex z = system.base + std::polar(rad, kTwoPi * (j + 0.5) / opts.angular);
            if (!domain.contains(z)) continue;
            const double val = v.eval(z);
            if (std::isfinite(val)) sup_abs = std::max(sup_abs, std::abs(val));
        }
    }
    report.sup_on_ring_region = sup_abs;
    report.sup_bound_ok = sup_abs <= system.bound + opts.sup_tol;

    // support estimate about the base point (informational)
    double support = 0.0;
    const double reach = domain.boundary_distance(system.base);
    for (int i = 1; i <= 2 * opts.rings; ++i) {
        const double rad = reach * (static_cast<double>(i) / (2 * opts.rings + 1));
        for (int j = 0; j < opts.angular; ++j) {
            const Complex z = system.base + std::polar(rad, kTwoPi * (j + 0.5) / opts.angular);
            if (!domain.contains(z)) continue;
            const double val = v.eval(z);
            if (std::isfinite(val) && std::abs(val) > 1e-9) support = std::max(support, rad);
        }
    }
    report.support_radius_estimate = support;
    return report;
}

}  // namespace balab
