#pragma once

// Student's t distribution via the regularized incomplete beta function,
// plus the normal CDF helpers used by the rank-test approximations.

namespace scorecmp {

// I_x(a, b), continued-fraction evaluation (modified Lentz)
double regularized_incomplete_beta(double x, double a, double b);

// P(T <= t) for T ~ t(df); df > 0
double t_cdf(double t, double df);

// inverse of t_cdf in t for fixed df; p in (0, 1), bisection to ~1e-12
double t_quantile(double p, double df);

double normal_cdf(double z);
double normal_sf(double z);

}  // namespace scorecmp
