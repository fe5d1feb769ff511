#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace levycop {

// Tolerances for the adaptive quadrature routines.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;

  void validate() const;
};

// Nelder-Mead controls.
struct OptimizerSpec {
  double initial_step = 0.1;
  double f_tol = 1e-10;
  double x_tol = 1e-8;
  int max_iters = 5000;

  void validate() const;
};

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// Gamma(a + sigma) / Gamma(a), evaluated in log space.
double gamma_ratio(double a, double sigma);

// Regularized incomplete beta I(x, a, b).
double reg_inc_beta(double x, double a, double b);

// Regularized lower incomplete gamma P(a, x).
double reg_inc_gamma(double a, double x);

// Adaptive Gauss-Kronrod integration of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

// Integral of f over (0, infinity) via the map u = t / (1 - t).
double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& spec = {});

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  bool converged = false;
  int iterations = 0;
};

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& x0, const OptimizerSpec& spec = {});

// Right-continuous empirical CDF of a sample.
class Ecdf {
 public:
  explicit Ecdf(std::vector<double> samples);

  // (# samples <= x) / n
  double operator()(double x) const;
  // (# samples < x) / n, the left limit at x
  double left(double x) const;

  const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

// sup over sample points of max(|F_n(x) - F(x)|, |F_n(x^-) - F(x)|).
double ks_distance(const std::vector<double>& samples,
                   const std::function<double(double)>& cdf);

}  // namespace levycop
