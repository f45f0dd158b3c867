#pragma once

namespace agora {

// Probability plus an absolute error bound achieved by the evaluation.
// Central distributions stay below 1e-10; the studentized range and the
// noncentral F stay below 1e-8.
struct DistributionResult {
  double value = 0.0;
  double abs_error_bound = 0.0;
};

DistributionResult normal_cdf(double x);
DistributionResult normal_sf(double x);

DistributionResult chi2_cdf(double x, double df);
DistributionResult chi2_sf(double x, double df);

DistributionResult t_cdf(double x, double df);
DistributionResult t_sf(double x, double df);

DistributionResult f_cdf(double x, double df1, double df2);
DistributionResult f_sf(double x, double df1, double df2);

// Series over Poisson weights of regularized incomplete betas; lambda is
// the noncentrality parameter (lambda = 0 recovers the central F exactly).
DistributionResult noncentral_f_cdf(double x, double df1, double df2, double lambda);
DistributionResult noncentral_f_sf(double x, double df1, double df2, double lambda);

// Distribution of the range of k standardized normals divided by an
// independent chi estimate with df degrees of freedom, evaluated by
// Gauss-Legendre panels with refinement on the outer integral.
DistributionResult studentized_range_cdf(double q, int k, double df);
DistributionResult studentized_range_sf(double q, int k, double df);

// Inverse kernels (quantiles), found by bisection on the forward kernels.
double normal_quantile(double p);
double f_quantile(double p, double df1, double df2);
double studentized_range_quantile(double p, int k, double df);

}  // namespace agora
