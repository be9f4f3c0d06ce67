#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "riemann/error.hpp"
#include "riemann/reference.hpp"

using namespace riemann;

TEST(Catenoid, ClosedFormMatchesQuadratureOfTheData) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> logr(std::log(0.1), std::log(10.0)), ang(-kPi, kPi);
  for (int k = 0; k < 200; ++k) {
    const double r = std::exp(logr(rng)), t = ang(rng);
    const Vec3 quad = oracle::reference_by_quadrature(1.0, r, t);
    const Vec3 closed = catenoid_point(std::polar(r, t));
    EXPECT_LT((quad - closed).norm(), 1e-8 * (1.0 + closed.norm()));
  }
}

TEST(Helicoid, ClosedFormMatchesQuadratureWithBranches) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> logr(std::log(0.1), std::log(10.0)), ang(-kPi, kPi);
  for (int k = 0; k < 200; ++k) {
    const double r = std::exp(logr(rng));
    const double t = ang(rng) + kTwoPi * (k % 3 - 1);  // windings -1, 0, 1
    const int branch = static_cast<int>(std::floor((t + kPi) / kTwoPi));
    const Vec3 quad = oracle::reference_by_quadrature(cplx(0, -1), r, t);
    const Vec3 closed = helicoid_point(std::polar(r, t), branch);
    EXPECT_LT((quad - closed).norm(), 1e-8 * (1.0 + closed.norm())) << "r " << r << " t " << t;
  }
}

TEST(Helicoid, OneCircuitRaisesHeightByFourPi) {
  const cplx z = std::polar(2.0, 0.3);
  EXPECT_NEAR(helicoid_point(z, 1).z() - helicoid_point(z, 0).z(), 4.0 * kPi, 1e-12);
  EXPECT_TRUE(helicoid_point(1.0, 0).isZero(1e-15));
  EXPECT_TRUE(catenoid_point(1.0).isZero(1e-15));
}

TEST(Catenoid, AxisThroughTwoZeroAndCircularSlices) {
  for (double r : {0.2, 1.0, 3.0}) {
    double lo = INFINITY, hi = 0.0;
    for (int k = 0; k < 32; ++k) {
      const Vec3 p = catenoid_point(std::polar(r, kTwoPi * k / 32));
      const double rho = std::hypot(p.x() - 2.0, p.y());
      lo = std::min(lo, rho);
      hi = std::max(hi, rho);
      EXPECT_NEAR(p.z(), 2.0 * std::log(r), 1e-14);
    }
    EXPECT_NEAR(hi - lo, 0.0, 1e-13);
    EXPECT_NEAR(hi, r + 1.0 / r, 1e-13);
  }
}

TEST(Deviation, MaxDistanceAndLengthMismatch) {
  const std::vector<cplx> z{cplx(1.0), cplx(2.0)};
  std::vector<Vec3> x{catenoid_point(z[0]), catenoid_point(z[1]) + Vec3(0.0, 0.3, 0.4)};
  EXPECT_NEAR(deviation_field(z, x, ReferenceKind::Catenoid), 0.5, 1e-15);
  x.pop_back();
  try {
    deviation_field(z, x, ReferenceKind::Catenoid);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
  }
  const std::vector<Vec3> h{helicoid_point(z[0], 2), helicoid_point(z[1], -1)};
  EXPECT_LT(deviation_field(z, h, ReferenceKind::Helicoid, std::vector<int>{2, -1}), 1e-15);
}
