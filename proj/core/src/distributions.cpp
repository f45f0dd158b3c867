#include "agora/distributions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "agora/errors.hpp"

namespace agora {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 2000;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw NumericsError(std::string(name) + " must be finite", v);
  }
}

void require_positive(double v, const char* name) {
  require_finite(v, name);
  if (v <= 0.0) {
    throw NumericsError(std::string(name) + " must be positive", v);
  }
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// Regularized lower incomplete gamma P(a, x) by power series; converges
// fast for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxIter; n++) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw NumericsError("incomplete gamma series did not converge", std::fabs(term));
}

// Regularized upper incomplete gamma Q(a, x) by Lentz continued fraction;
// converges fast for x >= a + 1.
double gamma_q_cf(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; i++) {
    double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) {
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw NumericsError("incomplete gamma continued fraction did not converge",
                      std::fabs(h));
}

// Returns {P(a,x), Q(a,x)} with P + Q == 1 exactly (one branch computed,
// the other taken as the complement).
std::array<double, 2> gamma_pq(double a, double x) {
  if (x < 0.0) throw NumericsError("incomplete gamma requires x >= 0", x);
  if (x == 0.0) return {0.0, 1.0};
  if (x < a + 1.0) {
    double p = gamma_p_series(a, x);
    return {p, 1.0 - p};
  }
  double q = gamma_q_cf(a, x);
  return {1.0 - q, q};
}

// Continued fraction for the regularized incomplete beta.
double betacf(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; m++) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) return h;
  }
  throw NumericsError("incomplete beta continued fraction did not converge",
                      std::fabs(h));
}

// Regularized incomplete beta I_x(a, b). Symmetric switch keeps the
// continued fraction in its fast region, and makes I_x(a,b) and
// I_{1-x}(b,a) exact complements of each other.
double beta_inc(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * betacf(a, b, x) / a;
  }
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

constexpr double kCentralBound = 1e-12;

// 20-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; the
// rule is symmetric).
constexpr int kGlHalf = 10;
constexpr double kGlNode[kGlHalf] = {
    0.0765265211334973, 0.2277858511416451, 0.3737060887154196,
    0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
    0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
    0.9931285991850949};
constexpr double kGlWeight[kGlHalf] = {
    0.1527533871307258, 0.1491729864726037, 0.1420961093183820,
    0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
    0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
    0.0176140071391521};

template <typename F>
double gauss_legendre(F&& f, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (int i = 0; i < kGlHalf; i++) {
    const double dx = half * kGlNode[i];
    sum += kGlWeight[i] * (f(mid - dx) + f(mid + dx));
  }
  return sum * half;
}

template <typename F>
double panel_integrate(F&& f, double lo, double hi, int panels) {
  const double w = (hi - lo) / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; i++) {
    sum += gauss_legendre(f, lo + i * w, lo + (i + 1) * w);
  }
  return sum;
}

double std_normal_pdf(double z) {
  return std::exp(-0.5 * z * z) * 0.3989422804014326779;
}

double std_normal_cdf(double z) {
  return 0.5 * std::erfc(-z * 0.7071067811865475244);
}

// P(range of k iid standard normals < r).
double range_cdf_of_normals(double r, int k) {
  if (r <= 0.0) return 0.0;
  auto integrand = [&](double z) {
    const double span = std_normal_cdf(z) - std_normal_cdf(z - r);
    return k * std_normal_pdf(z) * std::pow(span, k - 1);
  };
  return panel_integrate(integrand, -9.0, 9.0, 18);
}

// CDF of the studentized range: outer integral over the chi-based scale
// factor s = sqrt(chi2_df / df), refined until two panel counts agree.
DistributionResult studentized_range_cdf_impl(double q, int k, double df) {
  if (q <= 0.0) return {0.0, 0.0};
  if (df > 1e6) {
    return {clamp01(range_cdf_of_normals(q, k)), 1e-10};
  }
  const double ln_norm = (1.0 - 0.5 * df) * std::log(2.0) +
                         0.5 * df * std::log(df) - std::lgamma(0.5 * df);
  auto outer = [&](double s) {
    const double ln_density = ln_norm + (df - 1.0) * std::log(s) - 0.5 * df * s * s;
    return std::exp(ln_density) * range_cdf_of_normals(q * s, k);
  };
  const double spread = 14.0 / std::sqrt(std::max(df, 1.0));
  const double lo = std::max(0.0, 1.0 - spread);
  const double hi = 1.0 + spread;

  int panels = 32;
  double prev = panel_integrate(outer, lo, hi, panels);
  double curr = prev;
  double err = 1.0;
  for (int round = 0; round < 4; round++) {
    panels *= 2;
    curr = panel_integrate(outer, lo, hi, panels);
    err = std::fabs(curr - prev);
    if (err < 1e-11) break;
    prev = curr;
  }
  if (err > 1e-8) {
    throw NumericsError("studentized range integral did not converge", err);
  }
  return {clamp01(curr), std::max(err, 1e-12) + 1e-10};
}

template <typename F>
double bisect(F&& cdf, double target, double lo, double hi, const char* what) {
  double flo = cdf(lo);
  double fhi = cdf(hi);
  int expand = 0;
  while (fhi < target && expand++ < 64) {
    hi *= 2.0;
    fhi = cdf(hi);
  }
  if (flo > target || fhi < target) {
    throw NumericsError(std::string("quantile bracket failed for ") + what,
                        target);
  }
  for (int i = 0; i < 200; i++) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::fabs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

DistributionResult normal_cdf(double x) {
  require_finite(x, "x");
  return {clamp01(std_normal_cdf(x)), 1e-15};
}

DistributionResult normal_sf(double x) {
  require_finite(x, "x");
  return {clamp01(0.5 * std::erfc(x * 0.7071067811865475244)), 1e-15};
}

DistributionResult chi2_cdf(double x, double df) {
  require_finite(x, "x");
  require_positive(df, "df");
  if (x <= 0.0) return {0.0, 0.0};
  return {clamp01(gamma_pq(0.5 * df, 0.5 * x)[0]), kCentralBound};
}

DistributionResult chi2_sf(double x, double df) {
  require_finite(x, "x");
  require_positive(df, "df");
  if (x <= 0.0) return {1.0, 0.0};
  return {clamp01(gamma_pq(0.5 * df, 0.5 * x)[1]), kCentralBound};
}

DistributionResult t_sf(double x, double df) {
  require_finite(x, "x");
  require_positive(df, "df");
  const double ib = beta_inc(0.5 * df, 0.5, df / (df + x * x));
  const double sf = x >= 0.0 ? 0.5 * ib : 1.0 - 0.5 * ib;
  return {clamp01(sf), kCentralBound};
}

DistributionResult t_cdf(double x, double df) {
  auto r = t_sf(-x, df);
  return {r.value, r.abs_error_bound};
}

DistributionResult f_cdf(double x, double df1, double df2) {
  require_finite(x, "x");
  require_positive(df1, "df1");
  require_positive(df2, "df2");
  if (x <= 0.0) return {0.0, 0.0};
  const double y = df1 * x / (df1 * x + df2);
  return {clamp01(beta_inc(0.5 * df1, 0.5 * df2, y)), kCentralBound};
}

DistributionResult f_sf(double x, double df1, double df2) {
  require_finite(x, "x");
  require_positive(df1, "df1");
  require_positive(df2, "df2");
  if (x <= 0.0) return {1.0, 0.0};
  const double y = df2 / (df1 * x + df2);
  return {clamp01(beta_inc(0.5 * df2, 0.5 * df1, y)), kCentralBound};
}

DistributionResult noncentral_f_cdf(double x, double df1, double df2, double lambda) {
  require_finite(x, "x");
  require_positive(df1, "df1");
  require_positive(df2, "df2");
  require_finite(lambda, "lambda");
  if (lambda < 0.0) {
    throw NumericsError("lambda must be non-negative", lambda);
  }
  if (x <= 0.0) return {0.0, 0.0};
  const double y = df1 * x / (df1 * x + df2);
  const double half = 0.5 * lambda;
  if (half == 0.0) {
    return {clamp01(beta_inc(0.5 * df1, 0.5 * df2, y)), kCentralBound};
  }
  double sum = 0.0;
  double cum_weight = 0.0;
  double term_bound = 1.0;
  const int cap = 100000;
  for (int j = 0; j < cap; j++) {
    const double ln_w = -half + j * std::log(half) - std::lgamma(j + 1.0);
    const double w = std::exp(ln_w);
    if (w > 0.0) {
      term_bound = beta_inc(0.5 * df1 + j, 0.5 * df2, y);
      sum += w * term_bound;
    }
    cum_weight += w;
    // The beta factor decreases in j, so the remainder is bounded by the
    // missing Poisson mass times the last beta value.
    if (j > half && (1.0 - cum_weight) * term_bound < 1e-13) {
      const double tail = (1.0 - cum_weight) * term_bound;
      return {clamp01(sum), std::max(tail, 0.0) + 1e-11};
    }
  }
  throw NumericsError("noncentral F series did not converge", 1.0 - cum_weight);
}

DistributionResult noncentral_f_sf(double x, double df1, double df2, double lambda) {
  auto c = noncentral_f_cdf(x, df1, df2, lambda);
  return {clamp01(1.0 - c.value), c.abs_error_bound};
}

DistributionResult studentized_range_cdf(double q, int k, double df) {
  require_finite(q, "q");
  require_positive(df, "df");
  if (k < 2) {
    throw NumericsError("studentized range requires k >= 2", double(k));
  }
  if (df < 1.0) {
    throw NumericsError("studentized range kernel requires df >= 1", df);
  }
  return studentized_range_cdf_impl(q, k, df);
}

DistributionResult studentized_range_sf(double q, int k, double df) {
  auto c = studentized_range_cdf(q, k, df);
  return {clamp01(1.0 - c.value), c.abs_error_bound};
}

double normal_quantile(double p) {
  require_finite(p, "p");
  if (p <= 0.0 || p >= 1.0) {
    throw NumericsError("normal quantile requires p in (0, 1)", p);
  }
  // Acklam's rational approximation, then one Halley polish step.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double u = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  } else if (p <= 1.0 - plow) {
    const double u = p - 0.5;
    const double r = u * u;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double u = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  }
  const double e = std_normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  x = x - u / (1.0 + 0.5 * x * u);
  return x;
}

double f_quantile(double p, double df1, double df2) {
  require_finite(p, "p");
  if (p <= 0.0 || p >= 1.0) {
    throw NumericsError("F quantile requires p in (0, 1)", p);
  }
  auto cdf = [&](double x) { return f_cdf(x, df1, df2).value; };
  return bisect(cdf, p, 0.0, 16.0, "F");
}

double studentized_range_quantile(double p, int k, double df) {
  require_finite(p, "p");
  if (p <= 0.0 || p >= 1.0) {
    throw NumericsError("studentized range quantile requires p in (0, 1)", p);
  }
  auto cdf = [&](double q) { return studentized_range_cdf(q, k, df).value; };
  return bisect(cdf, p, 1e-6, 16.0, "studentized range");
}

}  // namespace agora
