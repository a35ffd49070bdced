#pragma once

#include <functional>
#include <vector>

namespace channelfield {

struct QuadRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre rule of order n (n nodes), computed by Newton iteration on
// the Legendre recurrence.
QuadRule gauss_legendre(int n);

// Fixed Gauss-Legendre quadrature of f over [a,b] with the given rule.
double quad_fixed(const std::function<double(double)>& f, double a, double b,
                  const QuadRule& rule);

// Adaptive Gauss-Kronrod quadrature of f over the finite interval [a,b] to
// the requested absolute/relative tolerance: a (G7,K15) pair per panel, with
// bisection of panels whose embedded error estimate is too large.
double quad_adaptive(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-12, double abs_tol = 0.0);

}  // namespace channelfield
