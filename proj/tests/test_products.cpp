#include <doctest.h>

#include <cmath>

#include "balab/products.hpp"

using namespace balab;

TEST_SUITE_BEGIN("products");

TEST_CASE("blaschke product closed forms and the 20-term sum oracle") {
    ZeroSequence single;
    single.push({0.5, 0.0});
    CHECK(blaschke_product(single, {0.0, 0.0}).ln_abs ==
          doctest::Approx(std::log(0.5)).epsilon(1e-14));
    // unimodular on the circle
    for (int j = 0; j < 16; ++j) {
        const Complex z = std::polar(1.0, kTwoPi * j / 16 + 0.05);
        CHECK(std::abs(blaschke_product(single, z).ln_abs) < 1e-12);
    }

    const ZeroSequence dyadic = radial_zero_sequence(RadialRule::OneMinusPow2, 20);
    double oracle = 0.0;  // direct 20-term sum
    for (int k = 1; k <= 20; ++k) oracle += std::log(1.0 - std::pow(2.0, -k));
    const BlaschkeEval eval = blaschke_product(dyadic, {0.0, 0.0}, 20);
    CHECK(eval.ln_abs == doctest::Approx(oracle).epsilon(1e-13));
    CHECK(oracle == doctest::Approx(-1.2420611411379467).epsilon(1e-12));

    double mass_oracle = 0.0;
    for (int k = 1; k <= 20; ++k) mass_oracle += std::pow(2.0, -k);
    CHECK(eval.partial_mass == doctest::Approx(mass_oracle).epsilon(1e-13));

    CHECK(blaschke_product(single, {0.5, 0.0}).ln_abs == neg_inf());

    ZeroSequence outside;
    outside.push({1.5, 0.0});
    CHECK_THROWS_AS(blaschke_product(outside, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("blaschke rotation covariance") {
    const ZeroSequence z = radial_zero_sequence(RadialRule::OneMinusPow2, 8, 0.9);
    ZeroSequence zr;
    const double alpha = 1.3;
    for (std::size_t i = 0; i < z.size(); ++i) zr.push(rotate(z.points[i], alpha));
    for (const Complex& w : {Complex{0.2, 0.1}, Complex{-0.4, 0.33}, Complex{0.0, 0.8}}) {
        CHECK(blaschke_product(zr, rotate(w, alpha)).ln_abs ==
              doctest::Approx(blaschke_product(z, w).ln_abs).epsilon(1e-12));
    }
}

TEST_CASE("membership: blaschke bounded, matched growth bounded, weight ring error") {
    const Domain disk = make_unit_disk();
    const ZeroSequence dyadic = radial_zero_sequence(RadialRule::OneMinusPow2, 30);
    const auto ln_f = [&dyadic](Complex z) { return blaschke_product(dyadic, z).ln_abs; };

    const MembershipResult blaschke = membership_test(ln_f, zero_weight(), disk);
    CHECK(blaschke.sup_value <= 1e-9);
    CHECK(blaschke.bounded);

    // ln|1/(1-z)| against M = ln(1/(1-|z|)): sup <= 0 since |1-z| >= 1-|z|
    Weight growth;
    growth.name = "log-growth";
    growth.plus.eval = [](Complex z) { return -std::log(1.0 - std::abs(z)); };
    growth.minus.eval = [](Complex) { return 0.0; };
    const auto f2 = [](Complex z) { return -std::log(std::abs(1.0 - z)); };
    const MembershipResult matched = membership_test(f2, growth, disk);
    CHECK(matched.sup_value <= 1e-9);
    CHECK(matched.bounded);

    // unmatched growth: the ring trend keeps climbing
    const MembershipResult unbounded = membership_test(f2, zero_weight(), disk);
    CHECK_FALSE(unbounded.bounded);

    Weight bottomless;
    bottomless.name = "minus-inf";
    bottomless.plus.eval = [](Complex) { return neg_inf(); };
    bottomless.minus.eval = [](Complex) { return 0.0; };
    CHECK_THROWS_AS(membership_test(ln_f, bottomless, disk), std::invalid_argument);
}

TEST_CASE("construct: single blaschke factor under the zero weight") {
    const Domain disk = make_unit_disk();
    Charge nu;
    nu.add_atom({0.5, 0.0}, 1.0);
    const RadiusFunction r = admissible_radius_function(disk, 0.3);
    const DominatedResult out = construct_dominated_subharmonic(nu, zero_weight(), r, disk);

    CHECK(out.certificate.circle_bound_ok);
    CHECK(out.certificate.chain_ok);
    CHECK(out.function.holomorphic_form);
    CHECK(std::abs(out.shift) < 2e-3);  // the correction vanishes with the sweep depth
    CHECK(out.function.ln_abs({0.0, 0.0}) == doctest::Approx(std::log(0.5)).epsilon(0.01));
}

TEST_CASE("construct: empty charge under |z|^2 with the +1 refinement") {
    const Domain disk = make_unit_disk();
    Weight M;
    M.name = "square";
    M.plus.eval = [](Complex z) { return std::norm(z); };
    M.plus.continuous = true;
    M.minus.eval = [](Complex) { return 0.0; };

    ConstructOptions opts;
    opts.refine_plus_one = true;
    const RadiusFunction r = admissible_radius_function(disk, 0.5);
    const DominatedResult out = construct_dominated_subharmonic(Charge{}, M, r, disk, opts);

    CHECK(out.certificate.circle_bound_ok);
    CHECK(out.certificate.plus_one_checked);
    CHECK(out.certificate.plus_one_ok);
    // u is the constant min of the circle averages, which is nonnegative
    const double u0 = out.function.ln_abs({0.3, 0.3});
    CHECK(u0 == doctest::Approx(out.function.ln_abs({-0.2, 0.6})).epsilon(1e-12));
    CHECK(u0 >= 0.0);
    CHECK(u0 <= 1.0 + 1e-9);
}

TEST_CASE("construct: dyadic sequence stays under the zero weight") {
    const Domain disk = make_unit_disk();
    const ZeroSequence dyadic = radial_zero_sequence(RadialRule::OneMinusPow2, 25);
    const Charge nu = counting_measure(disk, dyadic);
    const RadiusFunction r = admissible_radius_function(disk, 0.3);
    const DominatedResult out = construct_dominated_subharmonic(nu, zero_weight(), r, disk);
    CHECK(out.certificate.circle_bound_ok);
    const MembershipResult member = membership_test(out.function.ln_abs, zero_weight(), disk);
    CHECK(member.sup_value <= 1e-9);
}

TEST_CASE("construct: non-integer weights fall back to subharmonic output") {
    const Domain disk = make_unit_disk();
    Charge nu;
    nu.add_atom({0.4, 0.0}, 1.5);
    const RadiusFunction r = admissible_radius_function(disk, 0.3);
    const DominatedResult out = construct_dominated_subharmonic(nu, zero_weight(), r, disk);
    CHECK_FALSE(out.function.holomorphic_form);
    CHECK(out.certificate.note == "non-integer weights: subharmonic-only output");
    CHECK(out.certificate.circle_bound_ok);

    Charge negative;
    negative.add_atom({0.4, 0.0}, -1.0);
    CHECK_THROWS_AS(construct_dominated_subharmonic(negative, zero_weight(), r, disk),
                    std::invalid_argument);
}

TEST_CASE("construct on the annulus: winding correction and residual period") {
    const Domain ann = make_domain(DomainKind::Annulus, {0.0, 0.0}, 1.0, 0.2);
    const RadiusFunction r = admissible_radius_function(ann, 0.3);

    // single atom: harmonic measure of the inner circle is fractional
    Charge one;
    one.add_atom({0.6, 0.0}, 1.0);
    const DominatedResult single = construct_dominated_subharmonic(one, zero_weight(), r, ann);
    const double omega = std::log(1.0 / 0.6) / std::log(5.0);
    CHECK(single.function.winding == 0);
    CHECK(single.function.residual_period == doctest::Approx(omega).epsilon(1e-12));
    CHECK_FALSE(single.function.holomorphic_form);
    CHECK(single.certificate.circle_bound_ok);

    // three atoms on the same circle push the period near an integer
    Charge three;
    for (int k = 0; k < 3; ++k) three.add_atom(std::polar(0.6, kTwoPi * k / 3.0), 1.0);
    const DominatedResult triple = construct_dominated_subharmonic(three, zero_weight(), r, ann);
    CHECK(triple.function.winding == 1);
    CHECK(triple.function.residual_period == doctest::Approx(3.0 * omega - 1.0).epsilon(1e-9));
    CHECK(triple.certificate.circle_bound_ok);
}

TEST_CASE("classify: a single zero is trivially two-route positive") {
    const Domain disk = make_unit_disk();
    ZeroSequence z;
    z.push({0.5, 0.0});
    ClassifyConfig config;
    config.system = nested_set_system(disk, 0.25, 0.5, 1.8862943611198906);
    config.u0_radius = 0.6;
    config.family_size = 4;
    config.seed = 5;
    config.truncation = {1, 1, 1, 1};
    const ClassifyBundle bundle = classify_zero_sequence(z, zero_weight(), disk, config);
    CHECK(bundle.z3.verdict == Verdict::Consistent);
    CHECK(bundle.product_convergent);
    CHECK(bundle.z1_ok);
    CHECK(bundle.consistency == "agree-positive");
    CHECK(bundle.positive);
}

TEST_CASE("classify: harmonic-series zeros disagree with membership on both routes") {
    const Domain disk = make_unit_disk();
    const ZeroSequence zeros = radial_zero_sequence(RadialRule::OneMinusInverseK, 800);
    ClassifyConfig config;
    config.system = nested_set_system(disk, 0.25, 0.5, 1.8862943611198906);
    config.u0_radius = 0.6;
    config.family_size = 4;
    config.seed = 5;
    config.truncation = {100, 200, 400, 800};
    const ClassifyBundle bundle = classify_zero_sequence(zeros, zero_weight(), disk, config);
    CHECK(bundle.z3.verdict == Verdict::Diverging);
    CHECK_FALSE(bundle.product_convergent);
    CHECK(bundle.consistency == "agree-negative");
    CHECK(bundle.agree);
    CHECK_FALSE(bundle.positive);
}

TEST_SUITE_END();
