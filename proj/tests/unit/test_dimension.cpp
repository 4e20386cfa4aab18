#include "diophlab/dimension.hpp"

#include <cmath>

#include <gtest/gtest.h>

using namespace diophlab;
using namespace diophlab::dimension;

namespace {

int count_internal(const CoverNode& n) {
  if (n.children.empty()) return 0;
  int k = 1;
  for (const auto& c : n.children) k += count_internal(c);
  return k;
}

}  // namespace

TEST(Covering, BinaryHalves) {
  const CoverNode t = two_piece_tree(Rational(1, 2), Rational(1, 2), 4);
  const DimResult r = covering_s_estimate(t);
  EXPECT_NEAR(r.s, 1.0, 1e-12);
  EXPECT_LT(r.residual, 1e-12);
}

TEST(Covering, MiddleThirds) {
  const CoverNode t = two_piece_tree(Rational(1, 3), Rational(1, 3), 5);
  EXPECT_NEAR(covering_s_estimate(t).s, std::log(2.0) / std::log(3.0), 1e-12);
}

TEST(Covering, DistortedNodeMatchesClosedForm) {
  for (const double d : {0.05, 0.3, 0.5, 0.9}) {
    const Rational delta(d);
    const CoverNode t = cantor_tree(delta, 3);
    const double s = covering_s_estimate(t).s;
    EXPECT_NEAR(s, cantor_exact_dim(d).s, 1e-12) << d;
    EXPECT_NEAR(s, cantor_exact_dim_scaled(d).s, 1e-12) << d;
  }
}

TEST(Covering, RejectsNonShrinkingChild) {
  CoverNode root{"r", Rational(1), std::nullopt, std::nullopt, {}};
  root.children.push_back({"a", Rational(1), std::nullopt, std::nullopt, {}});
  EXPECT_THROW(covering_s_estimate(root), PreconditionError);
}

TEST(Covering, SingleChildGivesZero) {
  CoverNode root{"r", Rational(1), std::nullopt, std::nullopt, {}};
  root.children.push_back({"a", Rational(1, 2), std::nullopt, std::nullopt, {}});
  EXPECT_EQ(covering_s_estimate(root).s, 0.0);
}

TEST(LowerCert, MiddleThirdsSpacingIsStrict) {
  const CoverNode t = two_piece_tree(Rational(1, 3), Rational(1, 3), 4);
  const double s = std::log(2.0) / std::log(3.0);

  LowerCertOptions at_gap;
  at_gap.rho = Rational(1, 3);
  const LowerCert eq = lower_cert(t, s, at_gap);
  EXPECT_FALSE(eq.pass);
  for (const auto& v : eq.violations) EXPECT_EQ(v.condition, "iii");
  EXPECT_EQ(eq.violations.size(), static_cast<std::size_t>(count_internal(t)));

  LowerCertOptions below;
  below.rho = Rational(1, 3) - Rational(1, 1000000);
  const LowerCert ok = lower_cert(t, s, below);
  EXPECT_TRUE(ok.pass);
  EXPECT_EQ(ok.nodes_checked, 15u);
  for (const auto& n : ok.sums) EXPECT_NEAR(n.sum, 1.0, 1e-12);
}

TEST(LowerCert, SumFailsAboveDimension) {
  const CoverNode t = two_piece_tree(Rational(1, 3), Rational(1, 3), 3);
  LowerCertOptions opts;
  opts.rho = Rational(1, 4);
  const LowerCert c = lower_cert(t, 0.7, opts);
  EXPECT_FALSE(c.pass);
  EXPECT_EQ(c.violations.size(), 7u);
  for (const auto& v : c.violations) EXPECT_EQ(v.condition, "iv");
  for (const auto& n : c.sums) EXPECT_NEAR(n.sum, 2 * std::pow(3.0, -0.7), 1e-14);
}

TEST(LowerCert, CertifiedEqualsEstimatedOnSelfSimilarTrees) {
  for (const double d : {0.2, 0.6}) {
    const CoverNode t = cantor_tree(Rational(d), 4);
    const double s = covering_s_estimate(t).s;
    LowerCertOptions opts;
    opts.rho = Rational(1 - Rational(d)) / 4;
    const LowerCert c = lower_cert(t, s, opts);
    EXPECT_TRUE(c.pass) << d;
    EXPECT_FALSE(lower_cert(t, s + 1e-10, opts).pass) << d;
  }
}

TEST(LowerCert, SingleChildFailsConditionOne) {
  CoverNode root{"r", Rational(1), Interval{Rational(0), Rational(1)}, std::nullopt, {}};
  root.children.push_back({"a", Rational(1, 2), Interval{Rational(0), Rational(1, 2)}, std::nullopt, {}});
  LowerCertOptions opts;
  opts.rho = Rational(1, 10);
  opts.check_sums = false;
  const LowerCert c = lower_cert(root, 0.5, opts);
  ASSERT_FALSE(c.pass);
  EXPECT_EQ(c.violations.front().condition, "i");
}

TEST(LowerCert, NotNestedFailsConditionOne) {
  CoverNode root{"r", Rational(1), Interval{Rational(0), Rational(1)}, std::nullopt, {}};
  root.children.push_back({"a", Rational(1, 4), Interval{Rational(0), Rational(1, 4)}, std::nullopt, {}});
  root.children.push_back({"b", Rational(1, 4), Interval{Rational(7, 8), Rational(9, 8)}, std::nullopt, {}});
  LowerCertOptions opts;
  opts.rho = Rational(1, 10);
  const LowerCert c = lower_cert(root, 0.5, opts);
  ASSERT_FALSE(c.pass);
  EXPECT_EQ(c.violations.front().condition, "i");
}

TEST(LowerCert, WeightedForm) {
  CoverNode t = two_piece_tree(Rational(1, 3), Rational(1, 3), 2);
  const auto set_rho = [](auto&& self, CoverNode& n) -> void {
    n.rho = Rational(1, 4);
    for (auto& c : n.children) self(self, c);
  };
  set_rho(set_rho, t);
  LowerCertOptions opts;
  const LowerCert c = lower_cert(t, std::log(2.0) / std::log(3.0), opts);
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.sums.size(), 3u);
  t.children[0].rho = Rational(1, 100);
  const LowerCert bad = lower_cert(t, std::log(2.0) / std::log(3.0), opts);
  ASSERT_FALSE(bad.pass);
  EXPECT_EQ(bad.violations.front().condition, "iv'");
}

TEST(LowerCert, CustomGeometry) {
  CoverNode root{"r", Rational(1), std::nullopt, std::nullopt, {}};
  root.children.push_back({"a", Rational(1, 3), std::nullopt, std::nullopt, {}});
  root.children.push_back({"b", Rational(1, 3), std::nullopt, std::nullopt, {}});
  LowerCertOptions opts;
  opts.rho = Rational(1, 5);
  opts.geometry.contains = [](const CoverNode&, std::size_t) { return true; };
  opts.geometry.distance = [](const CoverNode&, std::size_t, std::size_t) { return Rational(1, 4); };
  EXPECT_TRUE(lower_cert(root, 0.5, opts).pass);
  opts.rho = Rational(1, 4);
  EXPECT_FALSE(lower_cert(root, 0.5, opts).pass);
}

TEST(Cantor, ExactDimension) {
  EXPECT_NEAR(cantor_exact_dim(1.0).s, 1.0, 1e-12);
  EXPECT_THROW(cantor_exact_dim(0.0), PreconditionError);
  EXPECT_THROW(cantor_exact_dim(1.5), PreconditionError);
  double prev = 0;
  for (int i = 1; i <= 100; ++i) {
    const double d = i / 100.0;
    const DimResult r = cantor_exact_dim(d);
    EXPECT_LT(r.residual, 1e-12) << d;
    EXPECT_NEAR(std::exp2(r.s), 1 + std::pow(d, r.s), 1e-12) << d;
    EXPECT_GT(r.s, prev) << d;
    prev = r.s;
    if (d < 1) {
      const CantorBounds b = cantor_bounds(d);
      EXPECT_LE(b.h_d, r.s + 1e-12) << d;
      EXPECT_LE(b.h_g, r.s + 1e-12) << d;
    }
  }
}

TEST(Cantor, SmallDeltaAsymptotics) {
  // the ratio dips near 0.795 around 1e-48 and then creeps back up
  for (const double d : {1e-3, 1e-6, 1e-12, 1e-48, 1e-100, 1e-300}) {
    const double s = cantor_exact_dim(d).s;
    const double l = std::log(1 / d);
    const double ratio = s * l / std::log(l);
    EXPECT_GE(ratio, 0.75) << d;
    EXPECT_LE(ratio, 1.25) << d;
  }
  const double l = std::log(1e12);
  const double ratio = cantor_exact_dim(1e-12).s * l / std::log(l);
  EXPECT_GE(ratio, 0.75);
  EXPECT_LE(ratio, 1.25);
}

TEST(Cantor, BoundTrends) {
  for (const double d : {0.999, 0.9999}) {
    const CantorBounds b = cantor_bounds(d);
    EXPECT_NEAR(b.h_d, 1.0, 1e-3);
    EXPECT_NEAR(b.h_g, 1.0, 2e-3);
    EXPECT_NEAR((1 - b.h_g) / (1 - b.h_d), 2.0, 1e-2);
  }
  double prev = 1;
  for (const double d : {1e-2, 1e-4, 1e-8, 1e-16}) {
    const CantorBounds b = cantor_bounds(d);
    EXPECT_LT(b.h_d / b.h_g, prev);
    prev = b.h_d / b.h_g;
  }
  EXPECT_LT(prev, 1e-14);
}

TEST(Cantor, Crossing) {
  const Crossing c = cantor_crossing();
  EXPECT_NEAR(c.delta, 0.2726604, 1e-6);
  EXPECT_NEAR(c.h, 0.3478475, 1e-6);
  const CantorBounds b = cantor_bounds(c.delta);
  EXPECT_NEAR(b.h_d, b.h_g, 1e-12);
}

TEST(Dn, BoundsAndResiduals) {
  EXPECT_THROW(dn_bounds(71), PreconditionError);
  double prev_minus = 1, prev_plus = 1;
  for (const double n : {72.0, 1e3, 1e6, 1e9}) {
    const DnBounds b = dn_bounds(n);
    const double l = std::log(n);
    const double ym = 1 / (2 * b.s_minus.s - 1);
    const double yp = 1 / (2 * b.s_plus.s - 1);
    EXPECT_LT(std::abs(ym * std::log(ym / 6) - l), 1e-12) << n;
    EXPECT_LT(std::abs(yp * std::log(4 * yp) - l), 1e-12) << n;
    EXPECT_LE(b.s_minus.s, b.s_plus.s);
    EXPECT_GT(b.s_minus.s, 0.5);
    EXPECT_LT(b.s_minus.s, prev_minus);
    EXPECT_LT(b.s_plus.s, prev_plus);
    prev_minus = b.s_minus.s;
    prev_plus = b.s_plus.s;
  }
}

TEST(Dn, Inversions) {
  // y = 2: 2 log 8 = log 64; y = 12: 12 log 2 = log 4096
  EXPECT_NEAR(solve_s_plus(std::log(64.0)).s, 0.75, 1e-12);
  EXPECT_NEAR(solve_s_minus(std::log(4096.0)).s, 13.0 / 24.0, 1e-12);
  EXPECT_DOUBLE_EQ(2 * std::log(8.0), std::log(64.0));
  EXPECT_DOUBLE_EQ(12 * std::log(2.0), std::log(4096.0));
}

TEST(Dn, AsymptoticTrend) {
  double prev_gap_plus = 1e9, prev_gap_minus = 1e9;
  for (const double n : {1e3, 1e6, 1e9, 1e30}) {
    const double l = std::log(n);
    const DnBounds b = dn_bounds(n);
    const double tp = (2 * b.s_plus.s - 1) * l / std::log(l);
    const double tm = (2 * b.s_minus.s - 1) * l / std::log(l);
    EXPECT_LT(std::abs(tp - 1), prev_gap_plus) << n;
    EXPECT_LT(std::abs(tm - 1), prev_gap_minus) << n;
    prev_gap_plus = std::abs(tp - 1);
    prev_gap_minus = std::abs(tm - 1);
  }
  const double l = std::log(1e9);
  const double tp = (2 * dn_bounds(1e9).s_plus.s - 1) * l / std::log(l);
  EXPECT_NEAR(tp, 1.0, 0.2);
}
