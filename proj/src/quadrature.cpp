#include "riemann/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "riemann/error.hpp"

namespace riemann {

namespace {

// Nonnegative Kronrod nodes on [-1, 1]; odd indices are the Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b;
  CVec3 value;
  double error;
  double resabs;  // integral of |f|, for the round-off floor
  bool operator<(const Piece& o) const { return error < o.error; }
};

double magnitude(const CVec3& v) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

Piece rule(const std::function<CVec3(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  CVec3 fc = f(c);
  CVec3 k = kKronrod[7] * fc;
  CVec3 g = kGauss[3] * fc;
  double abs_sum = kKronrod[7] * magnitude(fc);
  for (int j = 0; j < 7; ++j) {
    const double x = h * kNodes[j];
    const CVec3 fl = f(c - x), fr = f(c + x);
    const CVec3 s = fl + fr;
    k += kKronrod[j] * s;
    if (j % 2 == 1) g += kGauss[j / 2] * s;
    abs_sum += kKronrod[j] * (magnitude(fl) + magnitude(fr));
  }
  k *= h;
  g *= h;
  return {a, b, k, magnitude(k - g), std::abs(h) * abs_sum};
}

}  // namespace

QuadratureResult gauss_kronrod(const std::function<CVec3(double)>& f, double a, double b,
                               const QuadratureOptions& opts) {
  QuadratureResult out;
  if (a == b) return out;

  std::priority_queue<Piece> heap;
  Piece first = rule(f, a, b);
  CVec3 total = first.value;
  double err = first.error;
  double resabs = first.resabs;
  heap.push(first);
  int count = 1;

  // Below 50 eps times the integral of |f| the estimate is round-off.
  constexpr double kRoundoff = 50.0 * std::numeric_limits<double>::epsilon();
  auto target = [&] {
    return std::max({opts.abs_tol, opts.rel_tol * magnitude(total), kRoundoff * resabs});
  };
  while (err > target()) {
    if (count >= opts.max_subintervals) {
      std::ostringstream os;
      os << "tolerance " << target() << " not met on [" << a << ", " << b << "], estimate "
         << err << " after " << count << " subintervals";
      throw Error(ErrorCode::QuadratureFailure, os.str());
    }
    Piece worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (m <= std::min(worst.a, worst.b) || m >= std::max(worst.a, worst.b)) {
      throw Error(ErrorCode::QuadratureFailure, "interval can no longer be bisected");
    }
    Piece left = rule(f, worst.a, m);
    Piece right = rule(f, m, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    resabs += left.resabs + right.resabs - worst.resabs;
    heap.push(left);
    heap.push(right);
    ++count;
  }

  // Re-sum to avoid drift from the incremental updates.
  out.value = CVec3::Zero();
  out.error = 0.0;
  while (!heap.empty()) {
    out.value += heap.top().value;
    out.error += heap.top().error;
    heap.pop();
  }
  out.subintervals = count;
  return out;
}

}  // namespace riemann
