#include "relilat/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <fmt/format.h>

#include "relilat/errors.hpp"

namespace relilat {

namespace {

// QUADPACK qk21 abscissae and weights.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod21(const std::function<double(double)>& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_centre = f(centre);
  double res_gauss = 0.0;
  double res_kronrod = kWgk[10] * f_centre;
  double res_abs = std::abs(res_kronrod);
  std::array<double, 10> f_lo{};
  std::array<double, 10> f_hi{};
  for (int j = 0; j < 10; ++j) {
    const double x = half * kXgk[j];
    f_lo[j] = f(centre - x);
    f_hi[j] = f(centre + x);
    const double sum = f_lo[j] + f_hi[j];
    res_kronrod += kWgk[j] * sum;
    res_abs += kWgk[j] * (std::abs(f_lo[j]) + std::abs(f_hi[j]));
    if (j % 2 == 1) res_gauss += kWg[j / 2] * sum;
  }
  const double mean = 0.5 * res_kronrod;
  double res_asc = kWgk[10] * std::abs(f_centre - mean);
  for (int j = 0; j < 10; ++j) res_asc += kWgk[j] * (std::abs(f_lo[j] - mean) + std::abs(f_hi[j] - mean));

  const double scale = std::abs(half);
  res_asc *= scale;
  res_abs *= scale;
  double error = std::abs((res_kronrod - res_gauss) * half);
  if (res_asc != 0.0 && error != 0.0) error = res_asc * std::min(1.0, std::pow(200.0 * error / res_asc, 1.5));
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) error = std::max(50.0 * eps * res_abs, error);
  return {a, b, res_kronrod * half, error};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                           int max_subdivisions) {
  if (a == b) return {};
  std::priority_queue<Segment> segments;
  segments.push(gauss_kronrod21(f, a, b));
  double total = segments.top().value;
  double error = segments.top().error;
  int subdivisions = 0;
  while (error > abs_tol) {
    if (subdivisions >= max_subdivisions)
      throw NonconvergenceError(fmt::format(
          "quadrature on [{}, {}] reached {} subdivisions with error estimate {:.3g} > {:.3g}", a, b,
          subdivisions, error, abs_tol));
    const Segment worst = segments.top();
    segments.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b))
      throw NonconvergenceError(fmt::format("quadrature interval around {} cannot be bisected further", mid));
    const Segment left = gauss_kronrod21(f, worst.a, mid);
    const Segment right = gauss_kronrod21(f, mid, worst.b);
    segments.push(left);
    segments.push(right);
    ++subdivisions;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
  }
  // Final sum from the segments themselves rather than the running update.
  total = 0.0;
  error = 0.0;
  for (; !segments.empty(); segments.pop()) {
    total += segments.top().value;
    error += segments.top().error;
  }
  return {total, error, subdivisions};
}

QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double c, double abs_tol,
                                       int max_subdivisions, double decay_tol) {
  auto mapped = [&](double u) {
    const double s = 1.0 - u;
    return f(c + u / s) / (s * s);
  };
  constexpr double kProbe = 1.0 - 0x1.0p-30;
  const double tail = mapped(kProbe);
  if (!(std::abs(tail) <= decay_tol))
    throw NonconvergenceError(fmt::format(
        "integrand does not decay: mapped value {:.3g} at t = {:.6g} exceeds {:.3g}", tail,
        c + kProbe / (1.0 - kProbe), decay_tol));
  return integrate(mapped, 0.0, 1.0, abs_tol, max_subdivisions);
}

}  // namespace relilat
