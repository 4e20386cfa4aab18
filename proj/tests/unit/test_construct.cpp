#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>

#include "diophlab/construct.hpp"
#include "diophlab/latinv.hpp"
#include "oracles.hpp"

using namespace diophlab;
using namespace diophlab::construct;

namespace {

const PrimVec kSeed(0, 0, 1);
const Rational kEighth(1, 8);

// Multiples of 20 strictly inside (m, 2m - 1), counted one by one.
std::int64_t count_slots(const Rational& m) {
  std::int64_t n = 0;
  for (std::int64_t c = 20; Rational(c) < 2 * m - 1; c += 20) {
    if (Rational(c) > m) ++n;
  }
  return n;
}

// u' with u' ^ u = lp and floor(|u'| / |u|) = c, by scanning the block.
std::optional<std::array<oracle::i64, 3>> brute_psi(const PrimVec& u, const Wedge2& lp,
                                                    oracle::i64 c) {
  const oracle::i64 q = u.q().get_si(), a1 = u.p1().get_si(), a2 = u.p2().get_si();
  std::optional<std::array<oracle::i64, 3>> found;
  for (oracle::i64 h = c * q; h < (c + 1) * q; ++h) {
    const oracle::i64 r = lp.p13.get_si() > 0 ? lp.p13.get_si() : -lp.p13.get_si();
    const oracle::i64 s = lp.p23.get_si() > 0 ? lp.p23.get_si() : -lp.p23.get_si();
    const oracle::i64 span = (r > s ? r : s) / q + 2;
    const oracle::i64 f1 = oracle::floor_div(h * a1, q), f2 = oracle::floor_div(h * a2, q);
    for (oracle::i64 x = f1 - span; x <= f1 + span; ++x) {
      for (oracle::i64 y = f2 - span; y <= f2 + span; ++y) {
        // (x, y, h) ^ (a1, a2, q)
        if (x * a2 - y * a1 == lp.p12.get_si() && x * q - h * a1 == lp.p13.get_si() &&
            y * q - h * a2 == lp.p23.get_si()) {
          if (found) return std::nullopt;
          found = std::array<oracle::i64, 3>{x, y, h};
        }
      }
    }
  }
  return found;
}

}  // namespace

TEST(Psi, RootExamples) {
  EXPECT_EQ(psi(kSeed, 1, 0, 520, kEighth), PrimVec(0, 1, 520));
  EXPECT_EQ(psi(kSeed, 1, 1, 520, kEighth), PrimVec(1, 1, 520));
}

TEST(Psi, WindowAndPairPreconditions) {
  EXPECT_THROW(psi(kSeed, 1, 0, 512, kEighth), PreconditionError);
  EXPECT_THROW(psi(kSeed, 1, 0, 1023, kEighth), PreconditionError);
  EXPECT_NO_THROW(psi(kSeed, 1, 0, 1022, kEighth));
  EXPECT_THROW(psi(kSeed, 2, 0, 520, kEighth), PreconditionError);
  EXPECT_THROW(psi(kSeed, 1, 2, 520, kEighth), PreconditionError);
  EXPECT_THROW(psi(kSeed, 0, 0, 520, kEighth), PreconditionError);
}

TEST(Psi, MatchesBlockScanOnRandomParents) {
  const Rational eps(1, 2);
  int checked = 0;
  for (oracle::i64 q = 2; q <= 30; ++q) {
    for (oracle::i64 p1 = 0; p1 < q; p1 += 3) {
      for (oracle::i64 p2 = 0; p2 < q; p2 += 5) {
        if (oracle::gcd3(p1, p2, q) != 1) continue;
        const PrimVec u(p1, p2, q);
        const latinv::Invariants inv = latinv::invariants(u);
        for (const auto& [a, b] : {std::pair<int, int>{1, 0}, {1, 1}, {2, 1}}) {
          const Wedge2 lp = child_wedge(inv, a, b);
          const Rational m = window_centre(inv, lp, eps);
          const Integer c = 20 * (floor_of(m / 20) + 1);
          if (!(Rational(c) < 2 * m - 1)) continue;
          const auto want = brute_psi(u, lp, c.get_si());
          ASSERT_TRUE(want.has_value()) << u.str();
          const PrimVec got = psi(inv, a, b, c, eps);
          EXPECT_EQ(got, PrimVec((*want)[0], (*want)[1], (*want)[2])) << u.str();
          EXPECT_TRUE(in_N_eps(inv, got, eps));
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(CantorChildren, RootCountMatchesSlotCount) {
  const latinv::Invariants inv = latinv::invariants(kSeed);
  std::int64_t expected = 0;
  for (const auto& [a, b] : {std::pair<int, int>{1, 0}, {1, 1}}) {
    expected += count_slots(window_centre(inv, child_wedge(inv, a, b), kEighth));
  }
  EXPECT_EQ(expected, 52);  // 520, 540, ..., 1020 for each of the two pairs
  const ChildSet cs = cantor_children(kSeed, kEighth, 1);
  EXPECT_EQ(cs.total, expected);
  EXPECT_EQ(static_cast<std::int64_t>(cs.children.size()), expected);
  EXPECT_TRUE(cs.inadmissible.empty());
  EXPECT_EQ(cs.children.front().u, PrimVec(0, 1, 520));
  EXPECT_EQ(cs.children.back().u.q(), 1020);
}

TEST(CantorChildren, RootChildrenPassEveryCheck) {
  const latinv::Invariants inv = latinv::invariants(kSeed);
  const ChildSet cs = cantor_children(kSeed, kEighth, 1);
  for (const auto& c : cs.children) {
    const latinv::Invariants ci = latinv::invariants(c.u);
    EXPECT_TRUE(in_N_eps(inv, c.u, kEighth)) << c.u.str();
    EXPECT_TRUE(in_Q_eps_shell(ci, kEighth)) << c.u.str();
    EXPECT_TRUE(nested(inv, c.u, ci.L)) << c.u.str();
    EXPECT_TRUE(certifies_shortest(c.u, c.lp));
    EXPECT_TRUE(ci.L == c.lp.sign_normalized());
    // height in the block of c
    EXPECT_GE(c.u.q(), c.slot.c);
    EXPECT_LT(c.u.q(), c.slot.c + 1);
  }
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < cs.children.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.children.size(); ++j) {
      EXPECT_TRUE(verify_spacing(inv, cs.children[i], cs.children[j], kEighth, 1));
      ++pairs;
    }
  }
  EXPECT_EQ(pairs, 52u * 51u / 2u);
  EXPECT_EQ(verify_all_spacing(inv, cs.children, kEighth, 1).failures, 0u);
}

TEST(CantorChildren, BucketedSpacingAgreesWithAllPairs) {
  const PrimVec u(0, 1, 520);
  const latinv::Invariants inv = latinv::invariants(u);
  const ChildSet cs = cantor_children(u, kEighth, 1, 120);
  ASSERT_EQ(cs.children.size(), 240u);
  std::uint64_t naive = 0;
  for (std::size_t i = 0; i < cs.children.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.children.size(); ++j) {
      if (!verify_spacing(inv, cs.children[i], cs.children[j], kEighth, 1)) ++naive;
    }
  }
  EXPECT_EQ(verify_all_spacing(inv, cs.children, kEighth, 1).failures, naive);
  // a shrunken copy with overlapping balls must be caught
  std::vector<Child> dup{cs.children[0], cs.children[0]};
  EXPECT_EQ(verify_all_spacing(inv, dup, kEighth, 1).failures, 1u);
}

TEST(CantorChildren, SpacingRho) {
  EXPECT_EQ(spacing_rho(kEighth, 1), Rational(1, Integer(1) << 38));
  EXPECT_EQ(spacing_rho(Rational(1, 2), 2), Rational(1, 512 * 2048 * 8));
}

TEST(Chain, FixedChainFirstSteps) {
  Chain ch = seed_chain(kSeed);
  EXPECT_EQ(ch.nodes.size(), 1u);
  EXPECT_TRUE(audit_chain(ch).ok());
  ch = extend_chain(ch, FixedPolicy{kEighth, 1});
  EXPECT_EQ(ch.nodes.back().u, PrimVec(0, 1, 520));
  ch = extend_chain(ch, FixedPolicy{kEighth, 1});
  EXPECT_GT(ch.nodes.back().u.q(), Integer(262144) * 520);
  for (int i = 0; i < 2; ++i) ch = extend_chain(ch, FixedPolicy{kEighth, 1});
  const ChainAudit a = audit_chain(ch);
  EXPECT_TRUE(a.ok()) << a.witness;
}

TEST(Chain, LimitBox) {
  Chain ch = extend_chain(seed_chain(kSeed), FixedPolicy{kEighth, 1});
  const LimitBox box = limit_box(ch);
  EXPECT_EQ(box.center, RatPoint(0, Rational(1, 520)));
  EXPECT_EQ(box.radius, Rational(1, 135200));
  EXPECT_THROW(limit_box(seed_chain(kSeed)), PreconditionError);
  Rational prev = box.radius;
  const Rational e6 = kEighth * kEighth * kEighth * kEighth * kEighth * kEighth;
  for (int i = 0; i < 3; ++i) {
    ch = extend_chain(ch, FixedPolicy{kEighth, 1});
    const Rational r = limit_box(ch).radius;
    EXPECT_LT(r, e6 * prev);
    prev = r;
  }
}

TEST(Chain, ShrinkingScheduleKeepsInvariants) {
  for (std::size_t k = 0; k < 8; ++k) {
    const auto [e, n] = sing_parameters(k, 4.0e6);
    const auto [e2, n2] = sing_parameters(k + 1, 4.0e6);
    EXPECT_LT(e, Rational(1, 128));
    EXPECT_LT(e2, e);
    EXPECT_LT(e, 2 * e2);
    EXPECT_EQ(n, Integer(static_cast<unsigned long>(k + 1)));
  }
  EXPECT_THROW(sing_parameters(0, 10.0), PreconditionError);
  Chain ch = seed_chain(kSeed, ScheduleTag::sing_schedule);
  for (int i = 0; i < 6; ++i) ch = extend_chain(ch, SingSchedulePolicy{});
  const ChainAudit a = audit_chain(ch);
  EXPECT_TRUE(a.ok()) << a.witness;
  for (std::size_t k = 1; k + 1 < ch.nodes.size(); ++k) {
    EXPECT_LT(latinv::invariants(ch.nodes[k + 1].u).eps_cubed(),
              latinv::invariants(ch.nodes[k].u).eps_cubed());
  }
  // each radius shrinks by more than eps_k^6, with eps_k -> 0
  Rational prev = limit_box(Chain{{ch.nodes[0], ch.nodes[1]}, ch.tag}).radius;
  for (std::size_t k = 2; k < ch.nodes.size(); ++k) {
    Chain prefix{{ch.nodes.begin(), ch.nodes.begin() + static_cast<long>(k) + 1}, ch.tag};
    const Rational r = limit_box(prefix).radius;
    const Rational e = *ch.nodes[k].eps_used;
    EXPECT_LT(r, e * e * e * e * e * e * prev);
    prev = r;
  }
}

TEST(Chain, GrowthBoundUnderSupNorm) {
  // the sup norm only gives |L| |Lhat| >= |u| / 2, so psi children of a
  // parent in Q_eps grow by at least eps^{-6} / 4, and that is attained
  const TreeReport t = psi_tree(kSeed, TreeConfig{kEighth, 1, 3, 5, 200});
  ASSERT_EQ(t.levels.size(), 3u);
  for (std::size_t d = 1; d < 3; ++d) {
    ASSERT_TRUE(t.levels[d].min_growth.has_value());
    EXPECT_GE(*t.levels[d].min_growth, Rational(1, 4));
  }
  EXPECT_GT(t.levels[1].growth_fail + t.levels[2].growth_fail, 0u);
}

TEST(Tree, SubsampledTreeChecks) {
  const TreeReport t = psi_tree(kSeed, TreeConfig{kEighth, 1, 3, 5, 100});
  EXPECT_EQ(t.root_children, 52);
  EXPECT_EQ(t.levels[0].parents, 1u);
  EXPECT_EQ(t.levels[1].parents, 5u);
  EXPECT_EQ(t.levels[2].parents, 25u);
  for (const auto& l : t.levels) {
    EXPECT_EQ(l.inadmissible, 0u);
    EXPECT_EQ(l.n_eps_fail, 0u);
    EXPECT_EQ(l.shell_fail, 0u);
    EXPECT_EQ(l.nested_fail, 0u);
    EXPECT_EQ(l.spacing_fail, 0u);
  }
}

TEST(Suff, FixedChainSandwich) {
  Chain ch = seed_chain(kSeed);
  for (int i = 0; i < 4; ++i) ch = extend_chain(ch, FixedPolicy{kEighth, 1});
  const SuffReport r = suff_audit(ch, 50, kEighth);
  EXPECT_FALSE(r.vacuous);
  ASSERT_EQ(r.samples.size(), 50u);
  for (const auto& s : r.samples) {
    EXPECT_TRUE(s.upper);
    EXPECT_TRUE(s.lower);
  }
  EXPECT_TRUE(r.maxima_ok);
  // the unnormalized reading eps_x <= 2 eps^{3/2} does not hold at eps = 1/8
  EXPECT_FALSE(r.maxima_literal_ok);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.x, dot(ch.nodes.back().u));
}

TEST(Suff, ShortChainsAreVacuous) {
  const SuffReport r = suff_audit(seed_chain(kSeed), 10, kEighth);
  EXPECT_TRUE(r.vacuous);
  EXPECT_TRUE(r.ok());
  EXPECT_THROW(suff_audit(seed_chain(kSeed), 10, Rational(1, 2)), PreconditionError);
}

TEST(Schedule, LinearExample) {
  const Schedule s = regularize_schedule([](double t) { return t; }, 1.0, 2.0, 8.0);
  ASSERT_GE(s.t.size(), 3u);
  EXPECT_EQ(s.t[0], 2.0);
  EXPECT_EQ(s.y[0], 2.0);
  EXPECT_EQ(s.t[1], 4.0);
  EXPECT_EQ(s.y[1], 3.0);
  EXPECT_EQ(s.t[2], 7.0);
  EXPECT_EQ(s.y[2], 4.0);
  EXPECT_TRUE(s.below([](double t) { return t; }));
  EXPECT_TRUE(s.slow_growth());
  EXPECT_EQ(s(5.5), 3.0);
  EXPECT_THROW(s(1.0), PreconditionError);
}

TEST(Schedule, ConstantAndSampled) {
  const Schedule c = regularize_schedule([](double) { return 1.5; }, 0.5, 0.0, 10.0);
  for (std::size_t k = 0; k < c.t.size(); ++k) {
    EXPECT_DOUBLE_EQ(c.t[k], 1.5 * static_cast<double>(k));
    EXPECT_EQ(c.y[k], 1.5);
  }
  const SampledFunction f({0, 1, 4, 9}, {0.5, 1, 2, 3});
  EXPECT_DOUBLE_EQ(f(2.5), 1.5);
  EXPECT_EQ(f(100), 3.0);
  const auto big_f = [&f](double t) { return f(t); };
  const Schedule s = regularize_schedule(big_f, 0.25, 0.0, 50.0);
  EXPECT_TRUE(s.below(big_f));
  EXPECT_TRUE(s.slow_growth());
  EXPECT_THROW(SampledFunction({0, 1}, {1, 0}), PreconditionError);
  EXPECT_THROW(regularize_schedule([](double) { return 0.0; }, 1.0, 0.0, 5.0),
               PreconditionError);
}

TEST(SlowStep, Examples) {
  EXPECT_EQ(slow_step(kSeed, Rational(1, 2)).u, PrimVec(0, 1, 9));
  EXPECT_EQ(slow_step(kSeed, kEighth).u, PrimVec(0, 1, 513));
  EXPECT_THROW(slow_step(kSeed, Rational(1)), PreconditionError);
  const SlowStep s = slow_step(kSeed, Rational(1, 2));
  EXPECT_EQ(wedge(s.u, kSeed), latinv::invariants(kSeed).Lhat);
}

TEST(SlowStep, DefectsOverCorpus) {
  double worst_eps = 0, worst_tau = 0;
  for (oracle::i64 q = 50; q <= 400; q += 35) {
    for (oracle::i64 p1 = 1; p1 < q; p1 += 37) {
      for (oracle::i64 p2 = 0; p2 < q; p2 += 41) {
        if (oracle::gcd3(p1, p2, q) != 1) continue;
        for (const Rational e : {Rational(1, 2), Rational(1, 3), Rational(1, 5)}) {
          const SlowStep s = slow_step(PrimVec(p1, p2, q), e);
          worst_eps = std::max(worst_eps, std::abs(s.eps_defect()));
          worst_tau = std::max(worst_tau, std::abs(s.tau_defect()));
          EXPECT_LE(s.eps_ratio_cubed, 1);
        }
      }
    }
  }
  // measured envelopes of the step's unstated constant
  EXPECT_LT(worst_eps, 0.5);
  EXPECT_LT(worst_tau, 1.0);
}

TEST(SlowChain, DegenerateCases) {
  const auto w = [](double t) { return -std::log(1 + t); };
  const SlowCertificate z = slow_chain(PrimVec(1, 16, 1000), w, 1.0, 0);
  EXPECT_TRUE(z.vacuous);
  EXPECT_EQ(z.chain.nodes.size(), 1u);
  const SlowCertificate c =
      slow_chain(PrimVec(1, 16, 1000), [](double) { return -2.0; }, 1.0, 6, 10);
  EXPECT_TRUE(c.di_type);
}

TEST(SlowChain, LogTargetShortRun) {
  const auto w = [](double t) { return -std::log(1 + t); };
  const Schedule f = slow_schedule(w, 1.0, 64);
  const PrimVec seed = aligned_seed(1000, f);
  const SlowCertificate c = slow_chain(seed, w, 1.0, 8, 12);
  EXPECT_FALSE(c.di_type);
  EXPECT_TRUE(c.tau_increasing);
  EXPECT_LE(c.recursion_defect, 5.0);
  EXPECT_TRUE(c.certificate_ok);
  EXPECT_LT(c.eps.back(), c.eps.front());
  EXPECT_TRUE(audit_chain(c.chain).n_eps);
}
