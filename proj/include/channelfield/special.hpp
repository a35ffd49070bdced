#pragma once

namespace channelfield {

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x),
// series / continued-fraction split at x = a+1. Accurate to ~1e-14 relative
// for the parameter range used here (a in (0,4), x >= 0).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Lower incomplete gamma, unregularized.
double gamma_lower(double a, double x);

}  // namespace channelfield
