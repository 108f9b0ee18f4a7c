#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace balab {

struct QuadratureRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;  // sum to 2
};

// n-point Gauss-Legendre rule on [-1,1]; results are cached per n.
const QuadratureRule& gauss_legendre(int n);

// Integrates f over [a, b] with an n-point Gauss-Legendre rule.
template <typename F>
double gl_integrate(F&& f, double a, double b, int n) {
    const QuadratureRule& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

// Deterministic pairwise tree reduction; the result does not depend on how the
// terms were produced (serially or in parallel by index).
double pairwise_sum(std::span<const double> terms);

// Smallest power of two >= max(n, floor).
int snap_pow2(int n, int floor_value = 16);

}  // namespace balab
