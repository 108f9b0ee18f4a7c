#include <doctest.h>

#include <cmath>

#include "balab/geometry.hpp"

using namespace balab;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("make_domain basic kinds and invariants") {
    const Domain disk = make_domain(DomainKind::Disk, {0.0, 0.0}, 1.0);
    CHECK(disk.connectivity() == 1);
    CHECK(disk.boundary_polar() == false);
    CHECK(disk.contains({0.5, 0.0}));
    CHECK_FALSE(disk.contains({1.5, 0.0}));

    const Domain ann = make_domain(DomainKind::Annulus, {0.0, 0.0}, 1.0, 0.2);
    CHECK(ann.connectivity() == 2);
    CHECK(ann.contains({0.6, 0.0}));
    CHECK_FALSE(ann.contains({0.1, 0.0}));
    CHECK_FALSE(ann.contains({0.0, 0.0}));

    CHECK_THROWS_AS(make_domain(DomainKind::Disk, {0.0, 0.0}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_domain(DomainKind::Annulus, {0.0, 0.0}, 0.2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_domain(DomainKind::Annulus, {0.0, 0.0}, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("nested_set_system margins and violations") {
    const Domain disk = make_unit_disk();
    const SetSystem sys = nested_set_system(disk, 0.25, 0.5, 1.0);
    CHECK(sys.margin_inner == doctest::Approx(0.25));
    CHECK(sys.margin_outer == doctest::Approx(0.5));
    CHECK(sys.margin_inner >= 1e-12);
    CHECK(sys.margin_outer >= 1e-12);

    CHECK_THROWS_AS(nested_set_system(disk, 0.5, 0.25, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(nested_set_system(disk, 0.25, 0.5, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(nested_set_system(disk, 0.25, 1.5, 1.0), std::invalid_argument);
}

TEST_CASE("nested_set_system off-center inside an annulus") {
    const Domain ann = make_domain(DomainKind::Annulus, {0.0, 0.0}, 1.0, 0.2);
    const SetSystem sys = nested_set_system(ann, 0.05, 0.1, 2.0, {0.6, 0.0});
    // check the inclusions numerically: S0 stays inside the annulus
    for (int j = 0; j < 64; ++j) {
        const Complex z = sys.base + std::polar(sys.s0_radius * (1.0 - 1e-9), kTwoPi * j / 64);
        CHECK(ann.contains(z));
    }
    CHECK(sys.in_s({0.6, 0.0}));
    CHECK_FALSE(sys.in_s({0.7, 0.0}));
}

TEST_CASE("admissible_radius_function distances") {
    const Domain disk = make_unit_disk();
    const RadiusFunction r = admissible_radius_function(disk, 0.5);
    CHECK(r({0.0, 0.0}) == doctest::Approx(0.5));
    CHECK(r({0.8, 0.0}) == doctest::Approx(0.1));

    const Domain ann = make_domain(DomainKind::Annulus, {0.0, 0.0}, 1.0, 0.2);
    const RadiusFunction ra = admissible_radius_function(ann, 0.5);
    CHECK(ra({0.6, 0.0}) == doctest::Approx(0.2));  // dist = min(0.4, 0.4)

    CHECK_THROWS_AS(admissible_radius_function(disk, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(admissible_radius_function(disk, 1.0), std::invalid_argument);
}

TEST_CASE("radius function containment is literal on grids") {
    const Domain disk = make_unit_disk();
    for (double shrink : {0.3, 0.5, 0.9}) {
        const RadiusFunction r = admissible_radius_function(disk, shrink);
        const Grid grid = make_polar_grid(disk, 12, 32);
        for (const Complex& z : grid.nodes) {
            CHECK(std::abs(z) + r(z) < 1.0);
        }
    }
}

TEST_CASE("grids stay inside the domain") {
    const Domain ann = make_domain(DomainKind::Annulus, {0.0, 0.0}, 1.0, 0.2);
    const Grid polar = make_polar_grid(ann, 10, 24);
    CHECK(polar.nodes.size() == 240);
    for (const Complex& z : polar.nodes) CHECK(ann.contains(z));
    CHECK(polar.spacing > 0.0);

    const Domain disk = make_unit_disk();
    const Grid cart = make_cartesian_grid(disk, 40);
    CHECK(cart.spacing == doctest::Approx(0.05));
    for (const Complex& z : cart.nodes) CHECK(disk.contains(z));
    for (int j = 0; j < cart.ny; ++j)
        for (int i = 0; i < cart.nx; ++i) {
            const auto idx = cart.at(i, j);
            if (idx >= 0) {
                const Complex expect = cart.origin + Complex{(i + 0.5) * cart.spacing,
                                                             (j + 0.5) * cart.spacing};
                CHECK(std::abs(cart.nodes[static_cast<std::size_t>(idx)] - expect) < 1e-15);
            }
        }

    CHECK_THROWS_AS(make_cartesian_grid(disk, 2), std::invalid_argument);
}

TEST_SUITE_END();
