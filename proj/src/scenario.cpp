#include "balab/scenario.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "balab/averaging.hpp"
#include "balab/balayage.hpp"
#include "balab/poisson_jensen.hpp"
#include "balab/rng.hpp"

namespace balab {

double round_sig(double x, int digits) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

Json json_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return round_sig(x);
}

namespace {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

Complex parse_point(const Json& j) {
    return Complex{j.value("re", 0.0), j.value("im", 0.0)};
}

Json point_json(Complex z) {
    return Json{{"re", json_number(z.real())}, {"im", json_number(z.imag())}};
}

Domain parse_domain(const Json& j) {
    const std::string kind = j.value("kind", "unit-disk");
    return make_domain(domain_kind_from_string(kind),
                       j.contains("center") ? parse_point(j.at("center")) : Complex{0.0, 0.0},
                       j.value("radius", 1.0), j.value("r_in", 0.0));
}

Json domain_json(const Domain& d) {
    Json j;
    j["kind"] = to_string(d.kind);
    j["center"] = point_json(d.center);
    if (d.kind == DomainKind::Annulus) {
        j["r_in"] = json_number(d.inner_radius);
        j["radius"] = json_number(d.radius);
    } else {
        j["radius"] = json_number(d.radius);
    }
    return j;
}

SetSystem parse_system(const Json& j, const Domain& domain) {
    const Complex base = j.contains("base") ? parse_point(j.at("base")) : Complex{0.0, 0.0};
    return nested_set_system(domain, j.value("s_radius", 0.25), j.value("s0_radius", 0.5),
                             j.value("b", 1.0), base);
}

Json system_json(const SetSystem& s) {
    Json j;
    j["base"] = point_json(s.base);
    j["s_radius"] = json_number(s.s_radius);
    j["s0_radius"] = json_number(s.s0_radius);
    j["b"] = json_number(s.bound);
    return j;
}

Charge parse_charge(const Json& j, const Domain& domain) {
    Charge c;
    c.label = j.value("label", "charge");
    if (j.contains("atoms")) {
        for (const Json& a : j.at("atoms")) {
            const Complex z = parse_point(a);
            if (!domain.contains(z)) throw std::invalid_argument("charge atom outside domain");
            c.add_atom(z, a.value("w", 1.0));
        }
    }
    return c;
}

Weight parse_weight(const Json& j, const Domain& domain) {
    const std::string preset = j.value("preset", "zero");
    if (preset == "zero") return zero_weight();
    if (preset == "bergman_alpha")
        return bergman_weight(j.value("alpha", 1.0), domain, j.value("n_radial", 160),
                              j.value("n_angular", 256));
    if (preset == "custom_grid") {
        Charge plus, minus;
        if (j.contains("atoms")) {
            for (const Json& a : j.at("atoms")) {
                const double w = a.value("w", 1.0);
                const Complex z = parse_point(a);
                if (!domain.contains(z)) throw std::invalid_argument("weight atom outside domain");
                if (w >= 0.0)
                    plus.add_atom(z, w);
                else
                    minus.add_atom(z, -w);
            }
        }
        return potential_weight(plus, minus, "custom_grid");
    }
    throw std::invalid_argument("unknown weight preset: " + preset);
}

Json weight_json(const Scenario& s, const Json& original) {
    Json j = original.is_null() ? Json{{"preset", "zero"}} : original;
    j["name"] = s.weight.name;
    return j;
}

ZeroSequence parse_zeros(const Json& j, const Domain& domain) {
    if (j.contains("radial")) {
        const Json& r = j.at("radial");
        return radial_zero_sequence(radial_rule_from_string(r.value("rule", std::string("1-2^-k"))),
                                    r.value("count", 100L), r.value("angle_step", 0.0));
    }
    ZeroSequence z;
    if (j.contains("points")) {
        for (const Json& p : j.at("points")) {
            const Complex pt = parse_point(p);
            if (!domain.contains(pt))
                throw std::invalid_argument("zero sequence point outside domain");
            z.push(pt, p.value("mult", 1));
        }
    }
    return z;
}

Json zeros_json(const ZeroSequence& z, const Json& original) {
    if (!original.is_null() && original.contains("radial")) {
        Json j = original;
        j["emitted"] = static_cast<long>(z.size());
        if (z.tail_bound > 0.0) j["tail_mass_bound"] = json_number(z.tail_bound);
        return j;
    }
    Json pts = Json::array();
    for (std::size_t i = 0; i < z.size(); ++i) {
        Json p = point_json(z.points[i]);
        p["mult"] = z.multiplicities[i];
        pts.push_back(std::move(p));
    }
    return Json{{"points", std::move(pts)}};
}

std::string csv_escape(const std::string& s) { return s; }  // ids never carry commas

}  // namespace

Scenario load_scenario(const Json& doc) {
    Scenario s;
    s.pipeline = doc.value("pipeline", "classify");
    if (s.pipeline != "pj-audit" && s.pipeline != "balayage-audit" && s.pipeline != "classify" &&
        s.pipeline != "averaging-sweep")
        throw std::invalid_argument("unknown pipeline: " + s.pipeline);
    if (!doc.contains("seed")) throw std::invalid_argument("scenario: missing required field 'seed'");
    s.seed = doc.at("seed").get<std::uint64_t>();

    s.domain = parse_domain(doc.value("domain", Json{{"kind", "unit-disk"}}));

    Json system_doc = doc.value("system", Json());
    if (system_doc.is_null()) {
        const double edge = s.domain.boundary_distance(s.domain.center);
        system_doc = Json{{"s_radius", 0.25 * edge}, {"s0_radius", 0.5 * edge}, {"b", 2.0}};
    }
    s.system = parse_system(system_doc, s.domain);

    s.weight = parse_weight(doc.value("weight", Json{{"preset", "zero"}}), s.domain);
    s.zeros = parse_zeros(doc.value("zeros", Json()), s.domain);

    const Json fam = doc.value("family", Json());
    s.classify.system = s.system;
    s.classify.seed = s.seed;
    s.classify.family_size = fam.is_null() ? 6 : fam.value("size", 6);
    s.classify.u0_radius = fam.is_null() ? 0.6 * s.domain.boundary_distance(s.system.base)
                                         : fam.value("u0_radius", 0.75);
    s.classify.proximity_base =
        fam.is_null() ? 0.1 : fam.value("proximity_base", 0.1);

    if (doc.contains("truncation")) {
        s.classify.truncation.clear();
        for (const Json& n : doc.at("truncation"))
            s.classify.truncation.push_back(n.get<long>());
        if (s.classify.truncation.empty())
            throw std::invalid_argument("truncation ladder must not be empty");
    }

    const Json tol = doc.value("tolerances", Json());
    if (!tol.is_null()) {
        s.classify.slope_threshold = tol.value("slope_threshold", 0.5);
        s.classify.mass_slope_threshold = tol.value("mass_slope_threshold", 0.1);
        s.pj_tolerance = tol.value("pj_residual", 1e-6);
        if (!(s.pj_tolerance > 0.0) || !(s.classify.slope_threshold > 0.0))
            throw std::invalid_argument("tolerances must be positive");
    }

    s.pj_instances = doc.value("pj_instances", 25);
    s.angular_nodes = doc.value("nodes", 256);

    const Json avg = doc.value("averaging", Json());
    if (!avg.is_null()) {
        if (avg.contains("ops")) {
            s.averaging_ops.clear();
            for (const Json& op : avg.at("ops")) s.averaging_ops.push_back(op.get<std::string>());
        }
        s.sweep_rings = avg.value("rings", 6);
        s.sweep_angular = avg.value("angular", 8);
        s.sweep_radius_shrink = avg.value("radius_shrink", 0.3);
    }

    // canonical resolved form
    Json r;
    r["pipeline"] = s.pipeline;
    r["seed"] = s.seed;
    r["domain"] = domain_json(s.domain);
    r["system"] = system_json(s.system);
    r["weight"] = weight_json(s, doc.value("weight", Json()));
    r["zeros"] = zeros_json(s.zeros, doc.value("zeros", Json()));
    r["family"] = Json{{"kind", "jensen_shells"},
                       {"size", s.classify.family_size},
                       {"u0_radius", json_number(s.classify.u0_radius)},
                       {"proximity_base", json_number(s.classify.proximity_base)},
                       {"seed", s.seed}};
    Json ladder = Json::array();
    for (long n : s.classify.truncation) ladder.push_back(n);
    r["truncation"] = std::move(ladder);
    r["tolerances"] = Json{{"pj_residual", json_number(s.pj_tolerance)},
                           {"slope_threshold", json_number(s.classify.slope_threshold)},
                           {"mass_slope_threshold", json_number(s.classify.mass_slope_threshold)}};
    r["nodes"] = s.angular_nodes;
    if (s.pipeline == "averaging-sweep") {
        Json ops = Json::array();
        for (const std::string& op : s.averaging_ops) ops.push_back(op);
        r["averaging"] = Json{{"ops", std::move(ops)},
                              {"rings", s.sweep_rings},
                              {"angular", s.sweep_angular},
                              {"radius_shrink", json_number(s.sweep_radius_shrink)}};
    }
    if (s.pipeline == "pj-audit") r["pj_instances"] = s.pj_instances;
    s.resolved = std::move(r);
    return s;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path.string());
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("scenario parse failure: ") + e.what());
    }
    return load_scenario(doc);
}

namespace {

Json balayage_report_json(const BalayageReport& report) {
    Json j;
    j["verdict"] = to_string(report.verdict);
    j["inferred_c"] = json_number(report.inferred_c);
    j["family_size"] = report.family_size;
    j["slope_threshold"] = json_number(report.slope_threshold);
    j["family_note"] = report.family_note;
    Json rows = Json::array();
    for (const BalayageRow& row : report.rows)
        rows.push_back(Json{{"test", row.test_id},
                            {"lhs", json_number(row.lhs)},
                            {"rhs", json_number(row.rhs)},
                            {"gap", json_number(row.gap)}});
    j["rows"] = std::move(rows);
    Json trace = Json::array();
    for (const TraceEntry& e : report.growth_trace)
        trace.push_back(Json{{"level", e.level},
                             {"truncation", e.truncation},
                             {"family_size", e.family_size},
                             {"inferred_c", json_number(e.inferred_c)}});
    j["growth_trace"] = std::move(trace);
    return j;
}

std::string balayage_trace_csv(const BalayageReport& report) {
    std::ostringstream os;
    os << "level,truncation,family_size,inferred_c\n";
    for (const TraceEntry& e : report.growth_trace)
        os << e.level << ',' << e.truncation << ',' << e.family_size << ','
           << format_number(e.inferred_c) << '\n';
    return os.str();
}

std::string balayage_rows_csv(const BalayageReport& report) {
    std::ostringstream os;
    os << "test,lhs,rhs,gap\n";
    for (const BalayageRow& row : report.rows)
        os << csv_escape(row.test_id) << ',' << format_number(row.lhs) << ','
           << format_number(row.rhs) << ',' << format_number(row.gap) << '\n';
    return os.str();
}

RunOutcome run_classify(const Scenario& s) {
    RunOutcome out;
    ClassifyBundle bundle = classify_zero_sequence(s.zeros, s.weight, s.domain, s.classify);

    Json j;
    j["scenario"] = s.resolved;
    j["z3"] = balayage_report_json(bundle.z3);
    Json z1;
    Json mass = Json::array();
    for (const auto& [n, m] : bundle.mass_trace)
        mass.push_back(Json{{"truncation", n}, {"partial_mass", json_number(m)}});
    z1["mass_trace"] = std::move(mass);
    z1["product_convergent"] = bundle.product_convergent;
    z1["verdict"] = bundle.z1_verdict;
    if (bundle.membership) {
        Json rings = Json::array();
        for (const auto& [d, sup] : bundle.membership->ring_trace)
            rings.push_back(Json{{"boundary_distance", json_number(d)}, {"sup", json_number(sup)}});
        z1["membership"] = Json{{"sup", json_number(bundle.membership->sup_value)},
                                {"bounded", bundle.membership->bounded},
                                {"rings", std::move(rings)}};
    }
    if (bundle.certificate) {
        const DominatedCertificate& c = *bundle.certificate;
        z1["certificate"] = Json{{"circle_bound_ok", c.circle_bound_ok},
                                 {"max_violation", json_number(c.max_violation)},
                                 {"chain_ok", c.chain_ok},
                                 {"sweep_nodes", c.sweep_nodes},
                                 {"note", c.note}};
    }
    j["z1"] = std::move(z1);
    j["consistency"] = bundle.consistency;
    j["agree"] = bundle.agree;
    j["positive"] = bundle.positive;

    out.report = std::move(j);
    out.diverging = bundle.z3.verdict == Verdict::Diverging;
    out.csv.push_back({"growth_trace.csv", balayage_trace_csv(bundle.z3)});
    if (bundle.membership) {
        std::ostringstream os;
        os << "boundary_distance,sup\n";
        for (const auto& [d, sup] : bundle.membership->ring_trace)
            os << format_number(d) << ',' << format_number(sup) << '\n';
        out.csv.push_back({"membership_trace.csv", os.str()});
    }
    return out;
}

RunOutcome run_balayage(const Scenario& s) {
    RunOutcome out;
    const int levels = static_cast<int>(s.classify.truncation.size());
    FamilyOptions fam;
    fam.base = s.system.base;
    fam.proximity_levels = levels;
    fam.proximity_base = s.classify.proximity_base;
    std::vector<JensenPotential> potentials = jensen_potential_family(
        s.domain, s.classify.u0_radius, s.classify.family_size, s.seed, fam);
    std::vector<TestFunction> family;
    for (const JensenPotential& p : potentials) family.push_back(p.as_test_function());

    BalayageOptions opts;
    opts.truncation = s.classify.truncation;
    opts.slope_threshold = s.classify.slope_threshold;
    for (int lvl = 0; lvl < levels; ++lvl)
        opts.family_prefix.push_back(s.classify.family_size + lvl + 1);

    BalayageReport report =
        balayage_audit(s.zeros, s.weight.riesz_charge(), family, s.system, s.domain, opts);

    out.report["scenario"] = s.resolved;
    out.report["balayage"] = balayage_report_json(report);
    out.diverging = report.verdict == Verdict::Diverging;
    out.csv.push_back({"growth_trace.csv", balayage_trace_csv(report)});
    out.csv.push_back({"rows.csv", balayage_rows_csv(report)});
    return out;
}

RunOutcome run_pj_audit(const Scenario& s) {
    RunOutcome out;
    Rng rng(s.seed);

    // instance pool: blaschke logs and plain log factors with atomic Riesz
    // charges, harmonic polynomials with zero charge, paired with randomized
    // shells
    const double edge = s.domain.boundary_distance(s.system.base);
    const double shell_lo = 0.55 * edge, shell_hi = 0.92 * edge;

    Json instances = Json::array();
    std::string worst_id;
    double max_residual = 0.0;
    bool all_monotone = true;
    for (int i = 0; i < s.pj_instances; ++i) {
        const double w = rng.uniform(0.01, 0.03);
        const double mid = rng.uniform(shell_lo + w, shell_hi - w);
        JensenPotential V;
        V.base = s.system.base;
        V.shell = make_shell_profile(mid - w, mid + w);
        V.id = "shell(" + std::to_string(i) + ")";

        PJInstance inst;
        const int kind = i % 3;
        if (kind == 0) {
            const int nz = rng.uniform_int(1, 3);
            ZeroSequence z, z_unit;  // domain points and their unit-disk images
            for (int k = 0; k < nz; ++k) {
                const Complex p =
                    std::polar(rng.uniform(0.15, 0.45) * edge, rng.uniform(0.0, kTwoPi)) +
                    s.system.base;
                z.push(p);
                z_unit.push((p - s.domain.center) / s.domain.radius);
            }
            const Charge nu = counting_measure(s.domain, z);
            const Domain dom = s.domain;
            inst = make_pj_instance(
                "blaschke-" + std::to_string(i),
                [z_unit, dom](Complex w2) {
                    return blaschke_product(z_unit, (w2 - dom.center) / dom.radius).ln_abs;
                },
                nu, V);
        } else if (kind == 1) {
            const double a = rng.uniform(-1.0, 1.0), b = rng.uniform(-1.0, 1.0),
                         c = rng.uniform(0.5, 2.0);
            inst = make_pj_instance(
                "harmonic-" + std::to_string(i),
                [a, b, c](Complex z) { return a * z.real() + b * (z * z).imag() + c; }, Charge{},
                V);
        } else {
            const Complex a =
                std::polar(rng.uniform(0.2, 0.4) * edge, rng.uniform(0.0, kTwoPi)) + s.system.base;
            Charge nu;
            nu.add_atom(a, 1.0);
            inst = make_pj_instance(
                "log-" + std::to_string(i), [a](Complex z) { return std::log(std::abs(z - a)); },
                nu, V);
        }

        PJResult res = extended_pj_residual(inst, s.domain);
        Json trace = Json::array();
        for (double r : res.refinement_trace) trace.push_back(json_number(r));
        instances.push_back(Json{{"id", inst.id},
                                 {"shell", V.id},
                                 {"residual", json_number(res.residual)},
                                 {"trace", std::move(trace)}});
        if (res.residual > max_residual) {
            max_residual = res.residual;
            worst_id = inst.id;
        }
        for (std::size_t lvl = 1; lvl < res.refinement_trace.size(); ++lvl) {
            const double prev = res.refinement_trace[lvl - 1];
            const double cur = res.refinement_trace[lvl];
            if (!(cur <= prev || prev < 1e-12)) all_monotone = false;
        }
    }

    out.report["scenario"] = s.resolved;
    out.report["pj"] = Json{{"instances", std::move(instances)},
                            {"max_residual", json_number(max_residual)},
                            {"worst", worst_id},
                            {"monotone_refinement", all_monotone},
                            {"tolerance", json_number(s.pj_tolerance)},
                            {"pass", all_monotone && max_residual < s.pj_tolerance}};
    return out;
}

RunOutcome run_averaging_sweep(const Scenario& s) {
    RunOutcome out;
    const RadiusFunction r = admissible_radius_function(s.domain, s.sweep_radius_shrink);
    const Kernel kernel = Kernel::smooth_bump();
    const RealField f = [&s](Complex z) { return s.weight.eval(z); };

    std::ostringstream csv;
    csv << "re,im,r,op,value,nodes\n";
    Json summary = Json::array();
    const double lo = s.domain.inner_radius;
    for (int i = 1; i <= s.sweep_rings; ++i) {
        const double rad = lo + (s.domain.radius - lo) * (static_cast<double>(i) / (s.sweep_rings + 1));
        for (int j = 0; j < s.sweep_angular; ++j) {
            const Complex z = s.domain.center + std::polar(rad, kTwoPi * (j + 0.5) / s.sweep_angular);
            if (!s.domain.contains(z)) continue;
            const double rz = r(z);
            if (!(rz > 0.0)) continue;
            for (const std::string& op : s.averaging_ops) {
                double value = 0.0;
                AverageOptions aopts;
                aopts.angular_nodes = s.angular_nodes;
                if (op == "circle")
                    value = circle_average(s.domain, f, z, rz, s.angular_nodes);
                else if (op == "disk")
                    value = disk_average(s.domain, f, z, rz, aopts);
                else if (op == "smooth")
                    value = smooth_average(s.domain, f, z, rz, kernel, aopts);
                else
                    throw std::invalid_argument("unknown averaging op: " + op);
                csv << format_number(z.real()) << ',' << format_number(z.imag()) << ','
                    << format_number(rz) << ',' << op << ',' << format_number(value) << ','
                    << s.angular_nodes << '\n';
                summary.push_back(Json{{"re", json_number(z.real())},
                                       {"im", json_number(z.imag())},
                                       {"r", json_number(rz)},
                                       {"op", op},
                                       {"value", json_number(value)},
                                       {"nodes", s.angular_nodes}});
            }
        }
    }
    out.report["scenario"] = s.resolved;
    out.report["sweep"] = std::move(summary);
    out.csv.push_back({"sweep.csv", csv.str()});
    return out;
}

}  // namespace

RunOutcome run_scenario(const Scenario& scenario, const RunOverrides& overrides) {
    Scenario s = scenario;
    if (overrides.seed) {
        s.seed = *overrides.seed;
        s.classify.seed = *overrides.seed;
        s.resolved["seed"] = *overrides.seed;
        s.resolved["family"]["seed"] = *overrides.seed;
    }
    if (overrides.nodes) {
        s.angular_nodes = *overrides.nodes;
        s.resolved["nodes"] = *overrides.nodes;
    }

    RunOutcome out;
    if (s.pipeline == "classify")
        out = run_classify(s);
    else if (s.pipeline == "balayage-audit")
        out = run_balayage(s);
    else if (s.pipeline == "pj-audit")
        out = run_pj_audit(s);
    else
        out = run_averaging_sweep(s);

    out.exit_code = overrides.strict && out.diverging ? 2 : 0;
    return out;
}

int run_scenario_file(const std::filesystem::path& scenario_path,
                      const std::filesystem::path& out_dir, const RunOverrides& overrides) {
    try {
        const Scenario scenario = load_scenario_file(scenario_path);
        RunOutcome outcome = run_scenario(scenario, overrides);
        std::filesystem::create_directories(out_dir);
        export_report(outcome.report, out_dir / "report.json", "json");
        for (const CsvArtifact& artifact : outcome.csv) {
            std::ofstream f(out_dir / artifact.filename, std::ios::binary);
            if (!f) throw std::runtime_error("unwritable path: " + (out_dir / artifact.filename).string());
            f << artifact.content;
        }
        return outcome.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

void export_report(const Json& report, const std::filesystem::path& path,
                   const std::string& format) {
    if (format == "json") {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("unwritable path: " + path.string());
        f << report.dump(2) << '\n';
        return;
    }
    if (format == "csv") {
        const Json* table = nullptr;
        if (report.contains("sweep"))
            table = &report.at("sweep");
        else if (report.contains("balayage"))
            table = nullptr;  // handled below via growth trace
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("unwritable path: " + path.string());
        if (table) {
            f << "re,im,r,op,value,nodes\n";
            for (const Json& row : *table)
                f << row.at("re").dump() << ',' << row.at("im").dump() << ',' << row.at("r").dump()
                  << ',' << row.at("op").get<std::string>() << ',' << row.at("value").dump() << ','
                  << row.at("nodes").dump() << '\n';
            return;
        }
        if (report.contains("balayage") || report.contains("z3")) {
            const Json& rep = report.contains("balayage") ? report.at("balayage") : report.at("z3");
            f << "level,truncation,family_size,inferred_c\n";
            for (const Json& e : rep.at("growth_trace"))
                f << e.at("level").dump() << ',' << e.at("truncation").dump() << ','
                  << e.at("family_size").dump() << ',' << e.at("inferred_c").dump() << '\n';
            return;
        }
        throw std::runtime_error("report has no CSV-exportable table");
    }
    throw std::invalid_argument("unsupported export format: " + format);
}

}  // namespace balab
