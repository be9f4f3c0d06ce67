#include <gtest/gtest.h>

#include <cmath>

#include "riemann/curve.hpp"

using namespace riemann;

namespace {

std::vector<cplx> circle(cplx center, double radius, int n) {
  std::vector<cplx> out;
  for (int k = 0; k <= n; ++k) out.push_back(center + std::polar(radius, kTwoPi * k / n));
  return out;
}

}  // namespace

TEST(Lambda, RejectsNonPositiveAndNonFinite) {
  EXPECT_THROW(Lambda(0.0), Error);
  EXPECT_THROW(Lambda(-1.0), Error);
  EXPECT_THROW(Lambda(std::nan("")), Error);
  EXPECT_THROW(Lambda{INFINITY}, Error);
  EXPECT_DOUBLE_EQ(Lambda(4.0).reciprocal().value(), 0.25);
}

TEST(Curve, RhsAgainstExpandedCubic) {
  const Lambda lambda(2.5);
  const double l = 2.5, li = 0.4;
  for (cplx z : {cplx(0.3, 0.7), cplx(-4.0, 1.0), cplx(10.0, -3.0)}) {
    // z^3 + (1/l - l) z^2 - z
    const cplx expanded = z * z * z + (li - l) * z * z - z;
    EXPECT_LT(std::abs(curve_rhs(z, lambda) - expanded), 1e-12 * std::abs(expanded));
    const cplx derivative = 3.0 * z * z + 2.0 * (li - l) * z - 1.0;
    EXPECT_LT(std::abs(curve_rhs_derivative(z, lambda) - derivative), 1e-12 * std::abs(derivative));
  }
}

TEST(Curve, BranchPointsAreRootsOfTheCubic) {
  for (double l : {0.1, 1.0, 7.0}) {
    const Lambda lambda(l);
    const BranchPoints bp = branch_points(lambda);
    EXPECT_TRUE(bp.at_infinity);
    for (cplx e : bp.finite) EXPECT_LT(std::abs(curve_rhs(e, lambda)), 1e-12);
    EXPECT_EQ(bp.finite[0], cplx(0.0));
    EXPECT_EQ(bp.finite[1], cplx(l));
    EXPECT_EQ(bp.finite[2], cplx(-1.0 / l));
  }
}

TEST(Curve, ClearanceDefaultAndCap) {
  EXPECT_DOUBLE_EQ(branch_clearance(Lambda(1.0)), 1e-6);
  EXPECT_DOUBLE_EQ(branch_clearance(Lambda(50.0)), 5e-5);
  // Capped by the gap 1/lambda between 0 and -1/lambda.
  EXPECT_DOUBLE_EQ(branch_clearance(Lambda(1e4)), 0.01 * 1e-4);
  EXPECT_DOUBLE_EQ(branch_clearance(Lambda(1e-4)), 0.01 * 1e-4);
}

TEST(Curve, PointValidation) {
  const Lambda lambda(3.0);
  const cplx z(1.0, 2.0);
  const cplx w = std::sqrt(curve_rhs(z, lambda));
  EXPECT_NO_THROW(CurvePoint::make(z, w, lambda));
  EXPECT_NO_THROW(CurvePoint::make(z, -w, lambda));
  EXPECT_THROW(CurvePoint::make(z, w * 1.001, lambda), Error);
  EXPECT_TRUE(on_curve(cplx(3.0), cplx(0.0), lambda));
  EXPECT_EQ(CurvePoint::make(z, w, lambda).partner().w, -w);
}

TEST(SlitBranch, SquaresToTheCubicAndIsContinuousOffTheSlits) {
  const Lambda lambda(0.7);
  for (double re = -5.0; re <= 5.0; re += 0.37) {
    for (double im = -4.0; im <= 4.0; im += 0.41) {
      const cplx z(re, im);
      const cplx w = slit_branch(z, lambda);
      EXPECT_LT(std::abs(w * w - curve_rhs(z, lambda)), 1e-10 * std::pow(1.0 + std::abs(z), 3));
      // Small steps never flip the sign away from the slits.
      if (std::abs(im) > 0.05) {
        const cplx w2 = slit_branch(z + cplx(1e-4, 1e-4), lambda);
        EXPECT_LT(std::abs(w2 - w), std::abs(w2 + w));
      }
    }
  }
}

TEST(SlitBranch, LipsDifferInSignAcrossTheSlits) {
  const Lambda lambda(2.0);
  for (double x : {-0.3, -0.1, 3.0, 10.0}) {
    const cplx up = slit_branch(cplx(x, 0.0), lambda);
    const cplx down = slit_branch_lower(cplx(x, 0.0), lambda);
    EXPECT_LT(std::abs(up + down), 1e-12 * std::abs(up));
    EXPECT_LT(std::abs(up - slit_branch(cplx(x, 1e-9), lambda)), 1e-6 * std::abs(up));
  }
  // Across (0, lambda) the branch is continuous.
  const cplx a = slit_branch(cplx(1.0, 1e-9), lambda), b = slit_branch(cplx(1.0, -1e-9), lambda);
  EXPECT_LT(std::abs(a - b), 1e-6);
}

TEST(Continuation, MonodromyAroundOneBranchPointFlipsTheSheet) {
  const Lambda lambda(1.5);
  const auto path = circle(cplx(1.5), 0.5, 16);
  const cplx w0 = slit_branch(path.front(), lambda);
  const SheetedPath lifted = continue_sheet(path, w0, lambda);
  EXPECT_LT(std::abs(lifted.end_w() + w0), 1e-10 * std::abs(w0));
}

TEST(Continuation, MonodromyAroundTwoBranchPointsIsTrivial) {
  const Lambda lambda(1.5);
  const auto path = circle(cplx(0.75), 1.2, 16);  // encloses 0 and lambda
  const cplx w0 = slit_branch(path.front(), lambda);
  const SheetedPath lifted = continue_sheet(path, w0, lambda);
  EXPECT_LT(std::abs(lifted.end_w() - w0), 1e-10 * std::abs(w0));
  for (std::size_t k = 0; k < lifted.vertices.size(); ++k) {
    EXPECT_TRUE(on_curve(lifted.vertices[k], lifted.w_values[k], lambda));
  }
}

TEST(Continuation, AgreesWithTheSlitBranchAwayFromSlits) {
  const Lambda lambda(0.4);
  const std::vector<cplx> path{cplx(1.0, 0.5), cplx(-3.0, 2.0), cplx(-4.0, 6.0), cplx(5.0, 3.0)};
  const SheetedPath lifted = continue_sheet(path, slit_branch(path.front(), lambda), lambda);
  for (std::size_t k = 0; k < lifted.vertices.size(); ++k) {
    const cplx expected = slit_branch(lifted.vertices[k], lambda);
    EXPECT_LT(std::abs(lifted.w_values[k] - expected), 1e-12 * (1.0 + std::abs(expected)));
  }
  ASSERT_EQ(lifted.input_index.size(), path.size());
  for (std::size_t k = 0; k < path.size(); ++k) EXPECT_EQ(lifted.vertices[lifted.input_index[k]], path[k]);
}

TEST(Continuation, RejectsVerticesInsideTheClearance) {
  const Lambda lambda(1.0);
  const std::vector<cplx> path{cplx(0.5, 0.5), cplx(1e-9, 0.0)};
  EXPECT_THROW(continue_sheet(path, slit_branch(path.front(), lambda), lambda), Error);
}

TEST(Continuation, SingularStartSelectsTheSheetAtTheFirstRegularVertex) {
  const Lambda lambda(2.0);
  const std::vector<cplx> path{cplx(2.0), cplx(2.0, 1.0), cplx(0.5, 1.0)};
  for (double sign : {1.0, -1.0}) {
    const cplx seed = sign * slit_branch(path[1], lambda);
    const SheetedPath lifted = continue_sheet(path, seed, lambda, {true, false});
    EXPECT_EQ(lifted.w_values.front(), cplx(0.0));
    EXPECT_LT(std::abs(lifted.end_w() - sign * slit_branch(path[2], lambda)), 1e-12);
  }
}

TEST(Continuation, BaseRootAndSingularBase) {
  EXPECT_TRUE(base_is_branch_point(Lambda(1.0)));
  EXPECT_TRUE(base_is_branch_point(Lambda(1.0 + 1e-8)));
  EXPECT_FALSE(base_is_branch_point(Lambda(1.001)));
  const Lambda lambda(3.0);
  const cplx w = base_root(lambda, Sheet::Principal);
  EXPECT_LT(std::abs(w * w - curve_rhs(1.0, lambda)), 1e-12);
  EXPECT_EQ(base_root(lambda, Sheet::Opposite), -w);
}
