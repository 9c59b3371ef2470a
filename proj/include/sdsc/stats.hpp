#ifndef SDSC_STATS_HPP_
#define SDSC_STATS_HPP_

namespace sdsc {

// Regularized lower incomplete gamma P(s, x), s > 0, x >= 0.  Series
// expansion for x < s + 1, Lentz continued fraction otherwise; absolute
// accuracy around 1e-14.
double lower_regularized_gamma(double s, double x);

// Q(s, x) = 1 - P(s, x).
double upper_regularized_gamma(double s, double x);

// Standard normal CDF, via P(1/2, z^2/2).
double normal_cdf(double z);

// Chi-square CDF and survival function with k degrees of freedom.
double chi_squared_cdf(double x, int k);
double chi_squared_sf(double x, int k);

}  // namespace sdsc

#endif  // SDSC_STATS_HPP_
