#pragma once

namespace pivotboot {

// Standard normal distribution function.
double normal_cdf(double x);

// Upper tail 1 - Phi(x), accurate for large x.
double normal_sf(double x);

double normal_pdf(double x);

// z with Phi(z) = p; throws DomainError unless 0 < p < 1.
double normal_quantile(double p);

// z_{alpha/2}: P(Z >= z) = alpha / 2.
double two_sided_critical(double alpha);

}  // namespace pivotboot
