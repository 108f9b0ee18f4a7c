#include "balab/products.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "balab/averaging.hpp"
#include "balab/parallel.hpp"
#include "balab/quadrature.hpp"

namespace balab {

BlaschkeEval blaschke_product(const ZeroSequence& zeros, Complex z, long truncation) {
    const std::size_t n = truncation < 0
                              ? zeros.size()
                              : std::min<std::size_t>(zeros.size(), static_cast<std::size_t>(truncation));
    std::vector<double> terms(n), masses(n);
    bool pole_hit = false;
    for (std::size_t k = 0; k < n; ++k) {
        const Complex a = zeros.points[k];
        const double mod = std::abs(a);
        if (mod >= 1.0)
            throw std::invalid_argument(
                "blaschke_product: points must lie in the unit disk (use the dominated "
                "construction for annuli)");
        const double mult = static_cast<double>(zeros.multiplicities[k]);
        masses[k] = mult * (1.0 - mod);
        const double num = std::abs(a - z);
        if (num == 0.0) { pole_hit = true; terms[k] = 0.0; continue; }
        terms[k] = mult * (std::log(num) - std::log(std::abs(1.0 - std::conj(a) * z)));
    }
    BlaschkeEval out;
    out.partial_mass = pairwise_sum(masses);
    out.ln_abs = pole_hit ? neg_inf() : pairwise_sum(terms);
    return out;
}

namespace {

std::vector<double> sweep_distances(const Domain& domain, const SweepOptions& opts) {
    // boundary distances halving toward the boundary
    std::vector<double> dist;
    const double span = domain.radius - domain.inner_radius;
    double d = opts.start_distance_factor * span;
    for (int i = 0; i < opts.rings; ++i) {
        dist.push_back(d);
        d *= 0.5;
    }
    return dist;
}

}  // namespace

MembershipResult membership_test(const RealField& ln_f, const Weight& M, const Domain& domain,
                                 const SweepOptions& opts) {
    MembershipResult result;
    result.sup_value = neg_inf();
    const int angular = snap_pow2(opts.angular, 16);
    for (double d : sweep_distances(domain, opts)) {
        std::vector<double> radii{domain.radius - d};
        if (domain.kind == DomainKind::Annulus) radii.push_back(domain.inner_radius + d);
        double ring_sup = neg_inf();
        for (double rad : radii) {
            int finite_weight_nodes = 0;
            for (int j = 0; j < angular; ++j) {
                const Complex z = domain.center + std::polar(rad, kTwoPi * (j + 0.5) / angular);
                const double m = M.eval(z);
                if (!std::isfinite(m) && m < 0.0) continue;  // log pole of the weight
                ++finite_weight_nodes;
                ring_sup = std::max(ring_sup, ln_f(z) - m);
            }
            if (finite_weight_nodes == 0)
                throw std::invalid_argument("membership_test: weight is -inf on a whole ring");
        }
        result.ring_trace.emplace_back(d, ring_sup);
        result.sup_value = std::max(result.sup_value, ring_sup);
    }
    // trend toward the boundary: the last ring sups must stop climbing
    bool flat = true;
    const std::size_t n = result.ring_trace.size();
    const std::size_t take = std::min<std::size_t>(3, n > 0 ? n - 1 : 0);
    for (std::size_t i = n - take; i + 1 <= n && i >= 1; ++i) {
        const double step = result.ring_trace[i].second - result.ring_trace[i - 1].second;
        if (step > opts.trend_threshold) flat = false;
    }
    result.bounded = flat && std::isfinite(result.sup_value);
    return result;
}

namespace {

struct SweepNode {
    Complex z;
    double radius = 0.0;  // r(z)
};

std::vector<SweepNode> build_sweep(const Domain& domain, const RadiusFunction& r, int rings,
                                   int angular) {
    // uniform interior rings plus geometric collars toward every boundary
    // component: the additive correction is an infimum over the sweep and
    // needs nodes where the target gap actually bottoms out
    const double lo = domain.inner_radius;
    const double span = domain.radius - lo;
    std::vector<double> radii;
    const int uniform = std::max(4, rings / 3);
    for (int i = 1; i <= uniform; ++i)
        radii.push_back(lo + span * (static_cast<double>(i) / (uniform + 1)));
    const int geometric = std::max(4, rings - uniform);
    for (int i = 1; i <= geometric; ++i) {
        const double d = span * std::pow(2.0, -(i + 2));
        radii.push_back(domain.radius - d);
        if (domain.kind == DomainKind::Annulus) radii.push_back(lo + d);
    }
    std::vector<SweepNode> nodes;
    for (double rad : radii) {
        for (int j = 0; j < angular; ++j) {
            const Complex z = domain.center + std::polar(rad, kTwoPi * (j + 0.5) / angular);
            if (!domain.contains(z)) continue;
            const double rz = r(z);
            if (!(rz > 0.0)) continue;
            nodes.push_back({z, rz});
        }
    }
    return nodes;
}

// least squares fit of gap(z) by Re(sum c_j w^j) on the collar nodes, w scaled
// to the unit disk for conditioning; degree 0 reduces to the plain mean
std::vector<Complex> fit_harmonic(const std::vector<SweepNode>& nodes,
                                  const std::vector<double>& gap,
                                  const std::vector<std::size_t>& collar, const Domain& domain,
                                  int degree) {
    const int nbasis = 1 + 2 * degree;
    std::vector<std::vector<double>> ata(static_cast<std::size_t>(nbasis),
                                         std::vector<double>(static_cast<std::size_t>(nbasis), 0.0));
    std::vector<double> atb(static_cast<std::size_t>(nbasis), 0.0);
    std::vector<double> row(static_cast<std::size_t>(nbasis));
    for (std::size_t idx : collar) {
        const Complex w = (nodes[idx].z - domain.center) / domain.radius;
        row[0] = 1.0;
        Complex p = w;
        for (int j = 1; j <= degree; ++j) {
            row[static_cast<std::size_t>(2 * j - 1)] = p.real();
            row[static_cast<std::size_t>(2 * j)] = p.imag();
            p *= w;
        }
        for (int a = 0; a < nbasis; ++a) {
            atb[static_cast<std::size_t>(a)] += row[static_cast<std::size_t>(a)] * gap[idx];
            for (int b = 0; b < nbasis; ++b)
                ata[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] +=
                    row[static_cast<std::size_t>(a)] * row[static_cast<std::size_t>(b)];
        }
    }
    // Gaussian elimination with partial pivoting on the small normal system
    for (int col = 0; col < nbasis; ++col) {
        int pivot = col;
        for (int r2 = col + 1; r2 < nbasis; ++r2)
            if (std::abs(ata[static_cast<std::size_t>(r2)][static_cast<std::size_t>(col)]) >
                std::abs(ata[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)]))
                pivot = r2;
        std::swap(ata[static_cast<std::size_t>(col)], ata[static_cast<std::size_t>(pivot)]);
        std::swap(atb[static_cast<std::size_t>(col)], atb[static_cast<std::size_t>(pivot)]);
        const double diag = ata[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
        if (std::abs(diag) < 1e-14) throw std::runtime_error("harmonic fit: singular normal system");
        for (int r2 = col + 1; r2 < nbasis; ++r2) {
            const double f = ata[static_cast<std::size_t>(r2)][static_cast<std::size_t>(col)] / diag;
            for (int c2 = col; c2 < nbasis; ++c2)
                ata[static_cast<std::size_t>(r2)][static_cast<std::size_t>(c2)] -=
                    f * ata[static_cast<std::size_t>(col)][static_cast<std::size_t>(c2)];
            atb[static_cast<std::size_t>(r2)] -= f * atb[static_cast<std::size_t>(col)];
        }
    }
    std::vector<double> coef(static_cast<std::size_t>(nbasis), 0.0);
    for (int r2 = nbasis - 1; r2 >= 0; --r2) {
        double acc = atb[static_cast<std::size_t>(r2)];
        for (int c2 = r2 + 1; c2 < nbasis; ++c2)
            acc -= ata[static_cast<std::size_t>(r2)][static_cast<std::size_t>(c2)] *
                   coef[static_cast<std::size_t>(c2)];
        coef[static_cast<std::size_t>(r2)] = acc / ata[static_cast<std::size_t>(r2)][static_cast<std::size_t>(r2)];
    }
    std::vector<Complex> out(static_cast<std::size_t>(degree) + 1);
    out[0] = Complex{coef[0], 0.0};
    // Re(c w^j) with c = x + iy gives x*Re(w^j) - y*Im(w^j)
    for (int j = 1; j <= degree; ++j)
        out[static_cast<std::size_t>(j)] = Complex{coef[static_cast<std::size_t>(2 * j - 1)],
                                                   -coef[static_cast<std::size_t>(2 * j)]};
    return out;
}

double eval_harmonic(const std::vector<Complex>& coeffs, Complex z, const Domain& domain) {
    const Complex w = (z - domain.center) / domain.radius;
    Complex p{1.0, 0.0};
    double acc = 0.0;
    for (const Complex& c : coeffs) {
        acc += (c * p).real();
        p *= w;
    }
    return acc;
}

}  // namespace

DominatedResult construct_dominated_subharmonic(const Charge& nu, const Weight& M,
                                                const RadiusFunction& r, const Domain& domain,
                                                const ConstructOptions& opts) {
    if (nu.density)
        throw std::invalid_argument("construct_dominated_subharmonic: atomic charges only");
    bool integer_weights = true;
    for (std::size_t i = 0; i < nu.atom_pos.size(); ++i) {
        if (nu.atom_weight[i] < 0.0)
            throw std::invalid_argument("construct_dominated_subharmonic: nu must be nonnegative");
        if (std::abs(nu.atom_weight[i] - std::round(nu.atom_weight[i])) > 1e-9)
            integer_weights = false;
        if (!domain.contains(nu.atom_pos[i]))
            throw std::invalid_argument("construct_dominated_subharmonic: atom outside domain");
    }

    ProductFunction fn;
    fn.holomorphic_form = integer_weights && opts.request_holomorphic;

    const std::vector<Complex> atoms = nu.atom_pos;
    const std::vector<double> weights = nu.atom_weight;

    if (domain.kind == DomainKind::Annulus) {
        // product of Green factors; a winding factor z^m cancels the integer
        // part of the logarithmic period around the inner boundary, the
        // fractional remainder is the connectivity obstruction and is reported
        double period = 0.0;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            period += weights[i] * harmonic_measure_inner(domain, atoms[i]);
        fn.winding = static_cast<int>(std::lround(period));
        fn.residual_period = std::abs(period - static_cast<double>(fn.winding));
        if (fn.residual_period > 1e-9) fn.holomorphic_form = false;
        const Domain dom = domain;
        const int m = fn.winding;
        fn.ln_abs = [dom, atoms, weights, m](Complex z) {
            std::vector<double> terms(atoms.size());
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                if (z == atoms[i]) return neg_inf();
                terms[i] = -weights[i] * green_function(dom, z, atoms[i]);
            }
            return pairwise_sum(terms) + m * std::log(std::abs(z - dom.center) / dom.radius);
        };
    } else {
        const Complex c = domain.center;
        const double R = domain.radius;
        fn.ln_abs = [atoms, weights, c, R](Complex z) {
            const Complex zw = (z - c) / R;
            std::vector<double> terms(atoms.size());
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                const Complex aw = (atoms[i] - c) / R;
                const double num = std::abs(aw - zw);
                if (num == 0.0) return neg_inf();
                terms[i] = weights[i] * (std::log(num) - std::log(std::abs(1.0 - std::conj(aw) * zw)));
            }
            return pairwise_sum(terms);
        };
    }

    DominatedResult result;
    RadiusFunction rad = r;
    result.final_shrink = r.shrink;

    const std::vector<SweepNode> sweep = build_sweep(domain, rad, opts.sweep_rings, opts.sweep_angular);
    if (sweep.empty()) throw std::invalid_argument("construct: empty sweep");

    // optional refinement: shrink r until the continuity modulus of M_plus
    // over radius r(z) falls below the slack
    int shrink_iters = 0;
    double modulus = 0.0;
    auto compute_modulus = [&](const RadiusFunction& rr) {
        std::vector<double> worst(sweep.size(), 0.0);
        parallel_for(sweep.size(), [&](std::size_t i) {
            const double rz = rr(sweep[i].z);
            const double avg = circle_average(M.plus.eval, sweep[i].z, rz, opts.circle_nodes);
            const double here = M.plus.eval(sweep[i].z);
            if (std::isfinite(avg) && std::isfinite(here)) worst[i] = avg - here;
        });
        return *std::max_element(worst.begin(), worst.end());
    };
    if (opts.refine_plus_one) {
        if (!M.plus.continuous)
            throw std::invalid_argument("construct: the +slack refinement needs continuous M_plus");
        modulus = compute_modulus(rad);
        double shrink = rad.shrink;
        while (modulus >= opts.slack && shrink_iters < opts.max_shrink_iterations) {
            shrink *= 0.5;
            const double factor = shrink / r.shrink;
            const RadiusFunction base = r;
            rad.eval = [base, factor](Complex z) { return factor * base(z); };
            rad.shrink = shrink;
            ++shrink_iters;
            modulus = compute_modulus(rad);
        }
        if (modulus >= opts.slack)
            throw std::runtime_error("construct: auto-shrink failed to reach the continuity slack");
        result.final_shrink = rad.shrink;
    }

    // circle averages of both weight parts at radius r(z)
    std::vector<double> m_circ(sweep.size()), m_plus_circ(sweep.size()), m_minus_here(sweep.size());
    std::vector<double> u_raw(sweep.size());
    parallel_for(sweep.size(), [&](std::size_t i) {
        const double rz = rad(sweep[i].z);
        const double avg_p = circle_average(M.plus.eval, sweep[i].z, rz, opts.circle_nodes);
        const double avg_m = circle_average(M.minus.eval, sweep[i].z, rz, opts.circle_nodes);
        m_plus_circ[i] = avg_p;
        m_circ[i] = avg_p - avg_m;
        m_minus_here[i] = M.minus.eval(sweep[i].z);
        u_raw[i] = fn.ln_abs(sweep[i].z);
    });

    // harmonic correction fitted on the boundary collar, then lowered until
    // u_raw + h <= M^(circle r) on every sweep node
    std::vector<double> gap(sweep.size());
    std::vector<std::size_t> usable, collar;
    double max_node_dist = 0.0;
    for (const SweepNode& n : sweep)
        max_node_dist = std::max(max_node_dist, std::abs(n.z - domain.center));
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        if (!std::isfinite(u_raw[i]) || !std::isfinite(m_circ[i])) continue;
        gap[i] = m_circ[i] - u_raw[i];
        usable.push_back(i);
        if (std::abs(sweep[i].z - domain.center) > 0.85 * max_node_dist) collar.push_back(i);
    }
    if (usable.empty()) throw std::runtime_error("construct: no usable sweep nodes");
    if (collar.empty()) collar = usable;

    std::vector<Complex> coeffs;
    if (opts.harmonic_fit_degree > 0) {
        coeffs = fit_harmonic(sweep, gap, collar, domain, opts.harmonic_fit_degree);
    } else {
        double mean = 0.0;
        for (std::size_t i : collar) mean += gap[i];
        coeffs = {Complex{mean / static_cast<double>(collar.size()), 0.0}};
    }
    double worst = neg_inf();
    for (std::size_t i : usable)
        worst = std::max(worst, eval_harmonic(coeffs, sweep[i].z, domain) - gap[i]);
    coeffs[0] -= Complex{worst, 0.0};

    fn.harmonic_coeffs = coeffs;
    const RealField raw = fn.ln_abs;
    const Domain dom = domain;
    fn.ln_abs = [raw, coeffs, dom](Complex z) { return raw(z) + eval_harmonic(coeffs, z, dom); };
    result.shift = coeffs[0].real();

    // certificate sweep
    DominatedCertificate cert;
    cert.sweep_nodes = static_cast<int>(usable.size());
    cert.max_violation = neg_inf();
    cert.chain_max_violation = neg_inf();
    for (std::size_t i : usable) {
        const double u_final = u_raw[i] + eval_harmonic(coeffs, sweep[i].z, domain);
        cert.max_violation = std::max(cert.max_violation, u_final - m_circ[i]);
        cert.chain_max_violation =
            std::max(cert.chain_max_violation, m_circ[i] - (m_plus_circ[i] - m_minus_here[i]));
    }
    cert.circle_bound_ok = cert.max_violation <= 1e-9;
    cert.chain_ok = cert.chain_max_violation <= 1e-9;
    cert.shrink_iterations = shrink_iters;
    cert.continuity_modulus = modulus;
    if (opts.refine_plus_one) {
        cert.plus_one_checked = true;
        double worst_excess = neg_inf();
        for (std::size_t i : usable) {
            const double u_final = u_raw[i] + eval_harmonic(coeffs, sweep[i].z, domain);
            const double m_here = M.eval(sweep[i].z);
            if (std::isfinite(m_here)) worst_excess = std::max(worst_excess, u_final - m_here);
        }
        cert.plus_one_ok = worst_excess <= opts.slack + 1e-9;
    }
    if (!integer_weights && opts.request_holomorphic)
        cert.note = "non-integer weights: subharmonic-only output";
    else if (fn.residual_period > 1e-9)
        cert.note = "winding correction leaves a fractional period";

    result.function = fn;
    result.certificate = cert;
    return result;
}

ClassifyBundle classify_zero_sequence(const ZeroSequence& zeros, const Weight& M,
                                      const Domain& domain, const ClassifyConfig& config) {
    ClassifyBundle bundle;

    // z3 route: audit over the smooth compactly supported family, with shells
    // pushed toward the boundary level by level
    const int levels = static_cast<int>(config.truncation.size());
    FamilyOptions fam;
    fam.base = config.system.base;
    fam.proximity_levels = levels;
    fam.proximity_base = config.proximity_base;
    std::vector<JensenPotential> potentials = jensen_potential_family(
        domain, config.u0_radius, config.family_size, config.seed, fam);
    std::vector<TestFunction> family;
    family.reserve(potentials.size());
    for (const JensenPotential& p : potentials) family.push_back(p.as_test_function());

    BalayageOptions audit = config.audit;
    audit.truncation = config.truncation;
    audit.slope_threshold = config.slope_threshold;
    audit.family_prefix.clear();
    for (int lvl = 0; lvl < levels; ++lvl)
        audit.family_prefix.push_back(config.family_size + lvl + 1);

    bundle.z3 = balayage_audit(zeros, M.riesz_charge(), family, config.system, domain, audit);
    bundle.z3_verdict = to_string(bundle.z3.verdict);

    // z1 route: product convergence ladder first, then the dominated
    // construction and the membership sweep
    for (long n : config.truncation) {
        const long cap = std::min<long>(n, static_cast<long>(zeros.size()));
        double mass = 0.0;
        for (long k = 0; k < cap; ++k)
            mass += zeros.multiplicities[static_cast<std::size_t>(k)] *
                    (domain.boundary_distance(zeros.points[static_cast<std::size_t>(k)]) /
                     domain.radius);
        bundle.mass_trace.emplace_back(cap, mass);
    }
    bool mass_flat = true;
    const std::size_t nm = bundle.mass_trace.size();
    for (std::size_t i = nm >= 3 ? nm - 3 : 1; i < nm; ++i) {
        if (bundle.mass_trace[i].second - bundle.mass_trace[i - 1].second >
            config.mass_slope_threshold)
            mass_flat = false;
    }
    bundle.product_convergent = mass_flat;

    if (bundle.product_convergent) {
        const long finest = config.truncation.empty() ? static_cast<long>(zeros.size())
                                                      : config.truncation.back();
        const ZeroSequence trunc = zeros.truncated(static_cast<std::size_t>(finest));
        const Charge nu = counting_measure(domain, trunc);
        const RadiusFunction r = admissible_radius_function(domain, config.radius_shrink);
        DominatedResult built = construct_dominated_subharmonic(nu, M, r, domain, config.construct);
        bundle.certificate = built.certificate;
        bundle.membership = membership_test(built.function.ln_abs, M, domain, config.membership);
        bundle.z1_ok = built.certificate.circle_bound_ok && bundle.membership->bounded;
        bundle.z1_verdict = bundle.z1_ok ? "member-constructed" : "construction-unbounded";
    } else {
        bundle.z1_ok = false;
        bundle.z1_verdict = "product-mass-diverges";
    }

    const bool z3_positive = bundle.z3.verdict == Verdict::Consistent;
    const bool z3_negative = bundle.z3.verdict == Verdict::Diverging;
    if (z3_positive && bundle.z1_ok) {
        bundle.agree = true;
        bundle.positive = true;
        bundle.consistency = "agree-positive";
    } else if (z3_negative && !bundle.z1_ok) {
        bundle.agree = true;
        bundle.positive = false;
        bundle.consistency = "agree-negative";
    } else {
        bundle.agree = false;
        bundle.positive = false;
        std::ostringstream os;
        os << "mixed: z3 " << bundle.z3_verdict << " vs z1 " << bundle.z1_verdict
           << " (check the truncation ladder and family size)";
        bundle.consistency = os.str();
    }
    return bundle;
}

}  // namespace balab
