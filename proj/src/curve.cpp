#include "riemann/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace riemann {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::BranchTooClose: return "BranchTooClose";
    case ErrorCode::AmbiguousSheet: return "AmbiguousSheet";
    case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::PathBlocked: return "PathBlocked";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InsufficientSlicePoints: return "InsufficientSlicePoints";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

Lambda::Lambda(double value) : value_(value) {
  if (!std::isfinite(value) || value <= 0.0) {
    std::ostringstream os;
    os << "lambda must be finite and positive, got " << value;
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

cplx curve_rhs(cplx z, Lambda lambda) noexcept {
  return z * (z - lambda.value()) * (z + lambda.inverse());
}

cplx curve_rhs_derivative(cplx z, Lambda lambda) noexcept {
  const double a = lambda.value();
  const double b = lambda.inverse();
  // d/dz [z^3 + (b - a) z^2 - a b z]
  return 3.0 * z * z + 2.0 * (b - a) * z - a * b;
}

BranchPoints branch_points(Lambda lambda) {
  return {{cplx(0.0), cplx(lambda.value()), cplx(-lambda.inverse())}, true};
}

double branch_clearance(Lambda lambda) noexcept {
  const double nominal = 1e-6 * std::max({1.0, lambda.value(), lambda.inverse()});
  const double gap = std::min(lambda.value(), lambda.inverse());
  return std::min(nominal, 0.01 * gap);
}

double branch_distance(cplx z, Lambda lambda) noexcept {
  return std::min({std::abs(z), std::abs(z - lambda.value()), std::abs(z + lambda.inverse())});
}

bool on_curve(cplx z, cplx w, Lambda lambda, double tol) noexcept {
  const double scale = std::pow(1.0 + std::abs(z), 3);
  return std::abs(w * w - curve_rhs(z, lambda)) <= tol * scale;
}

CurvePoint CurvePoint::make(cplx z, cplx w, Lambda lambda) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::InvalidArgument, "curve point must be finite");
  }
  if (!on_curve(z, w, lambda)) {
    std::ostringstream os;
    os << "point (" << z << ", " << w << ") is not on the curve for lambda=" << lambda.value();
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  if (z == cplx(0.0)) {
    throw Error(ErrorCode::SingularPoint, "z = 0 is a puncture");
  }
  return {z, w, lambda};
}

namespace {

// Shared body of the two slit-branch evaluations. `lower` selects which lip
// is returned for points exactly on a slit.
cplx slit_branch_impl(cplx z, Lambda lambda, bool lower) noexcept {
  if (z == cplx(0.0)) return cplx(0.0);
  const double a = lambda.value();
  if (z.imag() == 0.0) {
    // Nudge real points into the requested half-plane; this only changes the
    // result on the slits, where it selects the lip.
    const double tiny = 1e-300;
    z = cplx(z.real(), lower ? -tiny : tiny);
  }
  // z sqrt(1 + 1/(a z)) has its cut on [-1/a, 0]; sqrt(a - z) on [a, inf).
  const cplx left = z * std::sqrt(1.0 + 1.0 / (a * z));
  const cplx right = std::sqrt(a - z);
  return cplx(0.0, 1.0) * left * right;
}

}  // namespace

cplx slit_branch(cplx z, Lambda lambda) noexcept { return slit_branch_impl(z, lambda, false); }

cplx slit_branch_lower(cplx z, Lambda lambda) noexcept {
  return slit_branch_impl(z, lambda, true);
}

bool base_is_branch_point(Lambda lambda) noexcept {
  return std::abs(1.0 - lambda.value()) <= branch_clearance(lambda);
}

cplx base_root(Lambda lambda, Sheet sheet) noexcept {
  if (base_is_branch_point(lambda)) return cplx(0.0);
  return sign_of(sheet) * std::sqrt(curve_rhs(cplx(1.0), lambda));
}

cplx nearest_root(cplx radicand, cplx reference) noexcept {
  const cplx r = std::sqrt(radicand);
  return std::norm(r - reference) <= std::norm(r + reference) ? r : -r;
}

double Radicand::distance(cplx z) const noexcept {
  double d = std::numeric_limits<double>::infinity();
  for (const cplx& s : singular) d = std::min(d, std::abs(z - s));
  return d;
}

Radicand curve_radicand(Lambda lambda) {
  const auto bp = branch_points(lambda);
  return Radicand{[lambda](cplx z) { return curve_rhs(z, lambda); },
                  {bp.finite.begin(), bp.finite.end()}, branch_clearance(lambda)};
}

namespace {

constexpr double kStepRatio = 0.25;

class Continuer {
 public:
  Continuer(const Radicand& radicand, RootPath& out) : radicand_(radicand), out_(out) {}

  void check_clear(cplx z) const {
    if (radicand_.distance(z) < radicand_.clearance) {
      std::ostringstream os;
      os << "vertex " << z << " within " << radicand_.clearance << " of a branch point";
      throw Error(ErrorCode::BranchTooClose, os.str());
    }
  }

  // Appends the subdivided segment (a, ra) -> b; (a, ra) is already in out_.
  void advance(cplx a, cplx ra, cplx b, int depth) {
    check_clear(b);
    const cplx rb = nearest_root(radicand_.value(b), ra);
    const double limit = kStepRatio * std::min(radicand_.distance(a), radicand_.distance(b));
    const bool short_enough = std::abs(b - a) <= limit;
    const bool unambiguous = std::abs(rb - ra) < 0.5 * std::abs(rb + ra);
    if (short_enough && unambiguous) {
      out_.vertices.push_back(b);
      out_.roots.push_back(rb);
      return;
    }
    if (depth >= kContinuationDepthCap) {
      std::ostringstream os;
      os << "sheet unresolved on segment " << a << " -> " << b << " after " << depth
         << " bisections";
      throw Error(ErrorCode::AmbiguousSheet, os.str());
    }
    const cplx m = 0.5 * (a + b);
    advance(a, ra, m, depth + 1);
    advance(m, out_.roots.back(), b, depth + 1);
  }

 private:
  const Radicand& radicand_;
  RootPath& out_;
};

// Point on the segment from a singular vertex s toward p that is close enough
// for the square-root substitution to be accurate.
cplx singular_anchor(cplx s, cplx p, const Radicand& radicand, bool p_singular = false) {
  double others = std::numeric_limits<double>::infinity();
  for (const cplx& q : radicand.singular) {
    const double d = std::abs(q - s);
    if (d > 0.0) others = std::min(others, d);
  }
  double reach = kStepRatio * others;
  if (p_singular) reach = std::min(reach, 0.5 * std::abs(p - s));
  const double len = std::abs(p - s);
  if (len <= reach) return p;
  return s + (p - s) * (reach / len);
}

}  // namespace

RootPath continue_root(std::span<const cplx> vertices, cplx seed, const Radicand& radicand,
                       PathEnds ends) {
  if (vertices.empty()) throw Error(ErrorCode::InvalidArgument, "empty path");
  RootPath out;
  out.ends = ends;
  Continuer cont(radicand, out);
  const std::size_t n = vertices.size();

  auto mark = [&out] { out.input_index.push_back(out.vertices.size() - 1); };

  if (n == 1) {
    if (ends.singular_start || ends.singular_end) {
      out.vertices.push_back(vertices[0]);
      out.roots.push_back(cplx(0.0));
    } else {
      cont.check_clear(vertices[0]);
      out.vertices.push_back(vertices[0]);
      out.roots.push_back(nearest_root(radicand.value(vertices[0]), seed));
    }
    mark();
    return out;
  }

  std::size_t next = 1;
  if (ends.singular_start) {
    out.vertices.push_back(vertices[0]);
    out.roots.push_back(cplx(0.0));
    mark();
    const cplx anchor =
        singular_anchor(vertices[0], vertices[1], radicand, n == 2 && ends.singular_end);
    cont.check_clear(anchor);
    out.vertices.push_back(anchor);
    out.roots.push_back(nearest_root(radicand.value(anchor), seed));
    if (anchor == vertices[1]) {
      mark();
      next = 2;
    }
  } else {
    cont.check_clear(vertices[0]);
    out.vertices.push_back(vertices[0]);
    out.roots.push_back(nearest_root(radicand.value(vertices[0]), seed));
    mark();
  }

  for (std::size_t i = next; i < n; ++i) {
    const bool last = i + 1 == n;
    if (last && ends.singular_end) {
      const cplx anchor = singular_anchor(vertices[i], out.vertices.back(), radicand);
      if (anchor != out.vertices.back()) {
        cont.advance(out.vertices.back(), out.roots.back(), anchor, 0);
      }
      out.vertices.push_back(vertices[i]);
      out.roots.push_back(cplx(0.0));
      mark();
      break;
    }
    cont.advance(out.vertices.back(), out.roots.back(), vertices[i], 0);
    mark();
  }
  return out;
}

SheetedPath continue_sheet(std::span<const cplx> vertices, cplx w_start, Lambda lambda,
                           PathEnds ends) {
  if (vertices.empty()) throw Error(ErrorCode::InvalidArgument, "empty path");
  if (!ends.singular_start && !on_curve(vertices.front(), w_start, lambda, 1e-8)) {
    std::ostringstream os;
    os << "start value w=" << w_start << " is not a root at z=" << vertices.front();
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  RootPath rp = continue_root(vertices, w_start, curve_radicand(lambda), ends);
  return SheetedPath{std::move(rp.vertices), std::move(rp.roots), lambda, ends,
                     std::move(rp.input_index)};
}

}  // namespace riemann
