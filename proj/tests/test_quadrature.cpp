#include <gtest/gtest.h>

#include <cmath>

#include "riemann/error.hpp"
#include "riemann/parallel.hpp"
#include "riemann/quadrature.hpp"

using namespace riemann;

TEST(GaussKronrod, PolynomialsAreExact) {
  const auto f = [](double t) {
    return CVec3(cplx(t * t * t, 1.0), cplx(0.0, t), cplx(std::pow(t, 10), -t * t));
  };
  const auto r = gauss_kronrod(f, -1.0, 2.0);
  EXPECT_NEAR(r.value[0].real(), (16.0 - 1.0) / 4.0, 1e-13);
  EXPECT_NEAR(r.value[0].imag(), 3.0, 1e-13);
  EXPECT_NEAR(r.value[1].imag(), (4.0 - 1.0) / 2.0, 1e-13);
  EXPECT_NEAR(r.value[2].real(), (2048.0 + 1.0) / 11.0, 1e-10);
  EXPECT_NEAR(r.value[2].imag(), -3.0, 1e-13);
}

TEST(GaussKronrod, OscillatoryAndPeakedIntegrands) {
  const auto f = [](double t) {
    return CVec3(std::exp(cplx(0.0, 40.0 * t)), 1.0 / (1e-4 + t * t), std::sqrt(t));
  };
  const auto r = gauss_kronrod(f, 0.0, 1.0);
  const cplx osc = (std::exp(cplx(0.0, 40.0)) - 1.0) / cplx(0.0, 40.0);
  EXPECT_LT(std::abs(r.value[0] - osc), 1e-12);
  EXPECT_NEAR(r.value[1].real(), 100.0 * std::atan(100.0), 1e-9);
  EXPECT_NEAR(r.value[2].real(), 2.0 / 3.0, 1e-11);
  EXPECT_GT(r.subintervals, 1);
}

TEST(GaussKronrod, ReversedIntervalNegates) {
  const auto f = [](double t) { return CVec3(std::cos(t), std::sin(t), t); };
  const auto a = gauss_kronrod(f, 0.0, 3.0), b = gauss_kronrod(f, 3.0, 0.0);
  EXPECT_LT((a.value + b.value).norm(), 1e-13);
}

TEST(GaussKronrod, NonIntegrableSingularityFails) {
  const auto f = [](double t) { return CVec3(1.0 / t, 0.0, 0.0); };
  QuadratureOptions opts;
  opts.max_subintervals = 200;
  try {
    gauss_kronrod(f, 0.0, 1.0, opts);
    FAIL() << "expected a quadrature failure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::QuadratureFailure);
    EXPECT_TRUE(e.numerical());
  }
}

TEST(Parallel, CoversEveryIndexOnceAndRethrowsFirstFailure) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_GE(thread_count(), 1u);
  try {
    parallel_for(100, [](std::size_t i) {
      if (i == 17 || i == 80) throw Error(ErrorCode::PathBlocked, std::to_string(i));
    });
    FAIL() << "expected an exception";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("17"), std::string::npos);
  }
}
