#pragma once

namespace initpop::special {

/// Gamma function. Relative error below 1e-12 on [0.1, 30].
double gamma(double x);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a, b).
double beta_inc(double a, double b, double x);

/// Upper tail P(X >= x) of a chi-square variable with `df` degrees of freedom.
double chi2_sf(double x, double df);

/// Two-sided tail P(|T| >= |t|) of Student's t with `df` degrees of freedom.
double student_t_two_sided(double t, double df);

/// Standard normal CDF.
double normal_cdf(double z);

}  // namespace initpop::special
