#include "balab/charge.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <unordered_map>

#include "balab/quadrature.hpp"

namespace balab {

namespace {

struct BitKey {
    std::uint64_t re, im;
    bool operator==(const BitKey& o) const { return re == o.re && im == o.im; }
};

struct BitKeyHash {
    std::size_t operator()(const BitKey& k) const {
        return std::hash<std::uint64_t>{}(k.re * 0x9e3779b97f4a7c15ULL ^ k.im);
    }
};

BitKey key_of(Complex z) {
    BitKey k;
    double re = z.real(), im = z.imag();
    std::memcpy(&k.re, &re, sizeof k.re);
    std::memcpy(&k.im, &im, sizeof k.im);
    return k;
}

}  // namespace

void Charge::add_atom(Complex where, double weight) {
    // merge exact duplicates; linear scan is fine for the small lists that
    // arrive here one by one (bulk construction goes through counting_measure)
    for (std::size_t i = 0; i < atom_pos.size(); ++i) {
        if (atom_pos[i] == where) {
            atom_weight[i] += weight;
            return;
        }
    }
    atom_pos.push_back(where);
    atom_weight.push_back(weight);
}

double Charge::total_mass() const {
    double m = pairwise_sum(atom_weight);
    if (density) {
        std::vector<double> cells(density->values.size());
        for (std::size_t i = 0; i < cells.size(); ++i)
            cells[i] = density->values[i] * density->grid->areas[i];
        m += pairwise_sum(cells);
    }
    return m;
}

double Charge::total_variation() const {
    double m = 0.0;
    for (double w : atom_weight) m += std::abs(w);
    if (density)
        for (std::size_t i = 0; i < density->values.size(); ++i)
            m += std::abs(density->values[i]) * density->grid->areas[i];
    return m;
}

bool Charge::is_probability(double tol) const {
    if (std::abs(total_mass() - 1.0) > tol) return false;
    for (double w : atom_weight)
        if (w < -tol) return false;
    return true;
}

Charge Charge::scaled(double factor) const {
    Charge out = *this;
    for (double& w : out.atom_weight) w *= factor;
    if (out.density)
        for (double& v : out.density->values) v *= factor;
    return out;
}

Charge operator+(const Charge& a, const Charge& b) {
    if (a.density && b.density)
        throw std::invalid_argument("charge sum: at most one density block supported");
    Charge out = a;
    if (!out.density) out.density = b.density;
    for (std::size_t i = 0; i < b.atom_pos.size(); ++i) out.add_atom(b.atom_pos[i], b.atom_weight[i]);
    out.label = a.label.empty() ? b.label : a.label;
    return out;
}

void ZeroSequence::push(Complex z, int mult) {
    if (mult <= 0) throw std::invalid_argument("zero multiplicity must be positive");
    points.push_back(z);
    multiplicities.push_back(mult);
}

ZeroSequence ZeroSequence::truncated(std::size_t n) const {
    ZeroSequence out;
    out.generator = generator;
    out.requested = static_cast<long>(std::min(n, points.size()));
    out.tail_bound = tail_bound;
    const std::size_t m = std::min(n, points.size());
    out.points.assign(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(m));
    out.multiplicities.assign(multiplicities.begin(),
                              multiplicities.begin() + static_cast<std::ptrdiff_t>(m));
    return out;
}

RadialRule radial_rule_from_string(const std::string& s) {
    if (s == "1-2^-k") return RadialRule::OneMinusPow2;
    if (s == "1-1/k") return RadialRule::OneMinusInverseK;
    throw std::invalid_argument("unknown radial rule: " + s);
}

std::string to_string(RadialRule rule) {
    return rule == RadialRule::OneMinusPow2 ? "1-2^-k" : "1-1/k";
}

ZeroSequence radial_zero_sequence(RadialRule rule, long count, double angle_step) {
    if (count < 1) throw std::invalid_argument("radial sequence needs count >= 1");
    ZeroSequence z;
    z.generator = to_string(rule);
    z.requested = count;
    long emitted = 0;
    for (long k = rule == RadialRule::OneMinusPow2 ? 1 : 2; emitted < count; ++k) {
        const double gap = rule == RadialRule::OneMinusPow2
                               ? std::pow(2.0, -static_cast<double>(k))
                               : 1.0 / static_cast<double>(k);
        const double r = 1.0 - gap;
        if (!(r < 1.0) || gap < 1e-15) {
            // remaining points are not resolvable in double precision;
            // their total Blaschke mass is below 2 * gap
            z.tail_bound = 2.0 * gap;
            break;
        }
        z.push(std::polar(r, angle_step * static_cast<double>(emitted)), 1);
        ++emitted;
    }
    return z;
}

Charge counting_measure(const Domain& domain, const ZeroSequence& zeros) {
    Charge c;
    c.label = "n_Z";
    std::unordered_map<BitKey, std::size_t, BitKeyHash> slot;
    slot.reserve(zeros.points.size());
    for (std::size_t i = 0; i < zeros.points.size(); ++i) {
        const Complex z = zeros.points[i];
        if (!domain.contains(z))
            throw std::invalid_argument("zero sequence point outside the domain");
        auto [it, fresh] = slot.try_emplace(key_of(z), c.atom_pos.size());
        if (fresh) {
            c.atom_pos.push_back(z);
            c.atom_weight.push_back(static_cast<double>(zeros.multiplicities[i]));
        } else {
            c.atom_weight[it->second] += static_cast<double>(zeros.multiplicities[i]);
        }
    }
    return c;
}

Charge riesz_measure_numeric(const RealField& u, const std::shared_ptr<const Grid>& grid,
                             const RieszOptions& opts) {
    if (!grid) throw std::invalid_argument("riesz_measure_numeric: null grid");
    const Grid& g = *grid;
    if (g.kind != Grid::Kind::Cartesian)
        throw std::invalid_argument("riesz_measure_numeric: stencil needs a cartesian grid");
    if (g.nx < 3 || g.ny < 3)
        throw std::invalid_argument("grid too coarse: fewer than 3 nodes per direction");

    const double h = g.spacing;
    const double excl = opts.exclusion_radius >= 0.0 ? opts.exclusion_radius
                                                     : g.atom_exclusion_radius;

    std::vector<double> uval(g.nodes.size());
    std::vector<char> ok(g.nodes.size(), 1);
    DensityBlock block;
    block.grid = grid;
    block.values.assign(g.nodes.size(), 0.0);

    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        bool near_atom = false;
        for (const Complex& a : opts.known_atoms)
            if (std::abs(g.nodes[i] - a) < excl) { near_atom = true; break; }
        double v = near_atom ? neg_inf() : u(g.nodes[i]);
        if (!std::isfinite(v)) {
            ok[i] = 0;
            block.excluded.push_back(static_cast<std::int32_t>(i));
            v = 0.0;
        }
        uval[i] = v;
    }

    double min_density = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::int32_t c = g.at(i, j);
            if (c < 0 || !ok[static_cast<std::size_t>(c)]) continue;
            const std::int32_t e = g.at(i + 1, j), w = g.at(i - 1, j);
            const std::int32_t n = g.at(i, j + 1), s = g.at(i, j - 1);
            if (e < 0 || w < 0 || n < 0 || s < 0) continue;  // clip to the grid interior
            if (!ok[static_cast<std::size_t>(e)] || !ok[static_cast<std::size_t>(w)] ||
                !ok[static_cast<std::size_t>(n)] || !ok[static_cast<std::size_t>(s)])
                continue;
            const double lap = (uval[static_cast<std::size_t>(e)] + uval[static_cast<std::size_t>(w)] +
                                uval[static_cast<std::size_t>(n)] + uval[static_cast<std::size_t>(s)] -
                                4.0 * uval[static_cast<std::size_t>(c)]) /
                               (h * h);
            const double d = lap / kTwoPi;
            block.values[static_cast<std::size_t>(c)] = d;
            min_density = std::min(min_density, d);
        }
    }
    block.min_value = min_density;

    Charge out;
    out.label = "riesz";
    out.density = std::move(block);
    return out;
}

double riesz_mass_flux(const RealField& u, Complex center, double radius, int nodes,
                       double step) {
    if (!(radius > 0.0)) throw std::invalid_argument("flux circle radius must be positive");
    const int n = snap_pow2(nodes, 16);
    const double eps = step > 0.0 ? step : 1e-4 * radius;
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const double theta = kTwoPi * (j + 0.5) / n;
        const Complex dir = std::polar(1.0, theta);
        const double outer = u(center + (radius + eps) * dir);
        const double inner = u(center + (radius - eps) * dir);
        acc += (outer - inner) / (2.0 * eps);
    }
    return acc * radius / n;  // (1/2pi) * integral over the circle of du/dn ds
}

double integrate_against(const RealField& v, const Charge& charge, const Region& region) {
    std::vector<double> terms;
    terms.reserve(charge.atom_pos.size());
    bool minus_infinity = false;
    for (std::size_t i = 0; i < charge.atom_pos.size(); ++i) {
        const Complex a = charge.atom_pos[i];
        const double w = charge.atom_weight[i];
        if (w == 0.0 || !region.contains(a)) continue;
        const double val = v(a);
        if (std::isinf(val) && val < 0.0) {
            if (w > 0.0) minus_infinity = true;  // signed verdict, not an exception
            continue;
        }
        terms.push_back(val * w);
    }
    if (charge.density) {
        const Grid& g = *charge.density->grid;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            const double w = charge.density->values[i] * g.areas[i];
            if (w == 0.0 || !region.contains(g.nodes[i])) continue;
            const double val = v(g.nodes[i]);
            if (std::isinf(val) && val < 0.0) continue;  // density weight vanishes at log poles
            terms.push_back(val * w);
        }
    }
    if (minus_infinity) return neg_inf();
    return pairwise_sum(terms);
}

}  // namespace balab
