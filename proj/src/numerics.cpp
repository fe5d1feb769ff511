#include "levycop/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace levycop {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1) {
    throw std::domain_error("QuadratureSpec: tolerances must be positive and max_subdivisions >= 1");
  }
}

void OptimizerSpec::validate() const {
  if (!(initial_step > 0.0) || !(f_tol > 0.0) || !(x_tol > 0.0) || max_iters < 1) {
    throw std::domain_error("OptimizerSpec: tolerances must be positive and max_iters >= 1");
  }
}

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("log_gamma: argument must be positive");
  }
  return std::lgamma(x);
}

double gamma_ratio(double a, double sigma) {
  if (!(a > 0.0) || !(sigma > 0.0)) {
    throw std::domain_error("gamma_ratio: arguments must be positive");
  }
  return std::exp(log_gamma(a + sigma) - log_gamma(a));
}

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cf(double x, double a, double b) {
  constexpr int kMaxIter = 500;
  const double eps = std::numeric_limits<double>::epsilon();
  const double fpmin = std::numeric_limits<double>::min() / eps;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= eps) break;
  }
  return h;
}

}  // namespace

double reg_inc_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("reg_inc_beta: a and b must be positive");
  }
  if (x < 0.0 || x > 1.0) {
    throw std::domain_error("reg_inc_beta: x must be in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double ln_front = log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(x, a, b) / a;
  }
  return 1.0 - front * beta_cf(1.0 - x, b, a) / b;
}

namespace {

double gamma_p_series(double a, double x) {
  double sum = 1.0 / a;
  double term = sum;
  for (int n = 1; n < 1000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * std::numeric_limits<double>::epsilon()) break;
  }
  return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
}

double gamma_q_cf(double a, double x) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double fpmin = std::numeric_limits<double>::min() / eps;
  double b = x + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= eps) break;
  }
  return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
}

}  // namespace

double reg_inc_gamma(double a, double x) {
  if (!(a > 0.0)) {
    throw std::domain_error("reg_inc_gamma: a must be positive");
  }
  if (x < 0.0) {
    throw std::domain_error("reg_inc_gamma: x must be nonnegative");
  }
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

namespace {

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
constexpr double kXgk[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,
    0.741531185599394,  0.864864423359769,  0.949107912342759,
    0.991455371120813};
constexpr double kWk[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529};
constexpr double kWg[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct GkResult {
  double value;
  double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double resk = 0.0;
  double resg = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double x = c + h * kXgk[i];
    double v = f(x);
    if (!std::isfinite(v)) v = 0.0;  // endpoint singularity; subdivision shrinks the cell
    resk += kWk[i] * v;
    if (i % 2 == 1) resg += kWg[i / 2] * v;
  }
  return {resk * h, std::fabs((resk - resg) * h)};
}

struct Cell {
  double a, b, value, error;
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
  spec.validate();
  if (a == b) return 0.0;
  std::vector<Cell> cells;
  GkResult first = gk15(f, a, b);
  cells.push_back({a, b, first.value, first.error});
  int subdivisions = 1;
  while (subdivisions < spec.max_subdivisions) {
    double total = 0.0;
    double err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      total += cells[i].value;
      err += cells[i].error;
      if (cells[i].error > cells[worst].error) worst = i;
    }
    if (err <= spec.abs_tol || err <= spec.rel_tol * std::fabs(total)) {
      return total;
    }
    const Cell cell = cells[worst];
    const double mid = 0.5 * (cell.a + cell.b);
    GkResult left = gk15(f, cell.a, mid);
    GkResult right = gk15(f, mid, cell.b);
    cells[worst] = {cell.a, mid, left.value, left.error};
    cells.push_back({mid, cell.b, right.value, right.error});
    ++subdivisions;
  }
  // Final check after exhausting the budget.
  double total = 0.0;
  double err = 0.0;
  for (const Cell& c : cells) {
    total += c.value;
    err += c.error;
  }
  if (err <= spec.abs_tol || err <= spec.rel_tol * std::fabs(total)) {
    return total;
  }
  throw std::runtime_error("integrate: tolerance not met within max_subdivisions");
}

double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& spec) {
  auto mapped = [&f](double t) {
    const double om = 1.0 - t;
    const double u = t / om;
    return f(u) / (om * om);
  };
  return integrate(mapped, 0.0, 1.0, spec);
}

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& x0, const OptimizerSpec& spec) {
  spec.validate();
  const std::size_t n = x0.size();
  if (n == 0) throw std::domain_error("nelder_mead: empty starting point");

  const double f0 = objective(x0);
  if (!std::isfinite(f0)) {
    throw std::domain_error("nelder_mead: objective not finite at x0");
  }

  struct Vertex {
    std::vector<double> x;
    double f;
    int order;  // insertion order, breaks ties deterministically
  };
  std::vector<Vertex> simplex;
  simplex.push_back({x0, f0, 0});
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> xi = x0;
    xi[i] += spec.initial_step;
    double fi = objective(xi);
    if (!std::isfinite(fi)) fi = std::numeric_limits<double>::max();
    simplex.push_back({std::move(xi), fi, static_cast<int>(i) + 1});
  }

  auto cmp = [](const Vertex& u, const Vertex& v) {
    if (u.f != v.f) return u.f < v.f;
    return u.order < v.order;
  };

  auto eval = [&objective](const std::vector<double>& x) {
    double v = objective(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::max();
  };

  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  int iter = 0;
  int next_order = static_cast<int>(n) + 1;
  for (; iter < spec.max_iters; ++iter) {
    std::sort(simplex.begin(), simplex.end(), cmp);

    double max_dx = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        max_dx = std::max(max_dx, std::fabs(simplex[i].x[j] - simplex[0].x[j]));
      }
    }
    const double df = std::fabs(simplex[n].f - simplex[0].f);
    if (max_dx <= spec.x_tol && df <= spec.f_tol) {
      return {simplex[0].x, simplex[0].f, true, iter};
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i].x[j];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    auto blend = [&](double coef) {
      std::vector<double> x(n);
      for (std::size_t j = 0; j < n; ++j) {
        x[j] = centroid[j] + coef * (centroid[j] - simplex[n].x[j]);
      }
      return x;
    };

    std::vector<double> xr = blend(kReflect);
    const double fr = eval(xr);
    if (fr < simplex[0].f) {
      std::vector<double> xe = blend(kExpand);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[n] = {std::move(xe), fe, next_order++};
      } else {
        simplex[n] = {std::move(xr), fr, next_order++};
      }
    } else if (fr < simplex[n - 1].f) {
      simplex[n] = {std::move(xr), fr, next_order++};
    } else {
      const bool outside = fr < simplex[n].f;
      std::vector<double> xc = blend(outside ? kContract : -kContract);
      const double fc = eval(xc);
      if (fc < (outside ? fr : simplex[n].f)) {
        simplex[n] = {std::move(xc), fc, next_order++};
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            simplex[i].x[j] =
                simplex[0].x[j] + kShrink * (simplex[i].x[j] - simplex[0].x[j]);
          }
          simplex[i].f = eval(simplex[i].x);
          simplex[i].order = next_order++;
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(), cmp);
  return {simplex[0].x, simplex[0].f, false, iter};
}

Ecdf::Ecdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) {
    throw std::domain_error("Ecdf: empty sample");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double Ecdf::left(double x) const {
  const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double ks_distance(const std::vector<double>& samples,
                   const std::function<double(double)>& cdf) {
  Ecdf ecdf(samples);
  double sup = 0.0;
  for (double x : ecdf.sorted()) {
    const double fx = cdf(x);
    sup = std::max(sup, std::fabs(ecdf(x) - fx));
    sup = std::max(sup, std::fabs(ecdf.left(x) - fx));
  }
  return sup;
}

}  // namespace levycop
