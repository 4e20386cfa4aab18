// Acceptance run: one PASS/FAIL line per criterion with measured values and
// runtimes. Exit status is nonzero only with --strict or on an exception.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "diophlab/bestapprox.hpp"
#include "diophlab/cfrac.hpp"
#include "diophlab/construct.hpp"
#include "diophlab/dimension.hpp"
#include "diophlab/domains.hpp"
#include "oracles.hpp"

using namespace diophlab;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "[first failure: " << what << "] ";
      pass = false;
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<void(Verdict&)> run;
};

std::string fmt(double x, int prec = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, x);
  return buf;
}

// 1 ----------------------------------------------------------------------

void crossing(Verdict& v) {
  const auto c = dimension::cantor_crossing();
  v.detail << "delta*=" << fmt(c.delta) << " h*=" << fmt(c.h);
  v.require(std::abs(c.delta - 0.2726604) <= 1e-6, "delta* off by more than 1e-6");
  v.require(std::abs(c.h - 0.3478475) <= 1e-6, "h* off by more than 1e-6");
  const double hd = std::log1p(c.delta) / std::log(2.0);
  const double hg = std::log(2.0) / std::log(2.0 / c.delta);
  v.detail << " |h_d-h_g|=" << fmt(std::abs(hd - hg), 3);
  v.require(std::abs(hd - hg) <= 1e-9, "h_d and h_g differ at delta*");
}

// 2 ----------------------------------------------------------------------

void cantor(Verdict& v) {
  double worst = 0;
  int below = 0;
  for (int i = 1; i <= 100; ++i) {
    const double d = i / 100.0;
    const double s = dimension::cantor_exact_dim(d).s;
    const double res = std::abs(std::pow(2.0, s) - 1.0 - std::pow(d, s));
    worst = std::max(worst, res);
    v.require(res < 1e-12, "residual at delta=" + fmt(d));
    if (i < 100) {
      const auto b = dimension::cantor_bounds(d);
      const bool ok = b.h_d <= s && b.h_g <= s;
      below += ok;
      v.require(ok, "bound above s at delta=" + fmt(d));
    }
  }
  const double s1 = dimension::cantor_exact_dim(1.0).s;
  v.require(std::abs(s1 - 1) < 1e-12, "s(1) != 1");
  const double small = 1e-12;
  const double ratio = dimension::cantor_exact_dim(small).s * std::log(1 / small) / std::log(std::log(1 / small));
  v.require(ratio >= 0.75 && ratio <= 1.25, "asymptotic ratio outside [0.75, 1.25]");
  v.detail << "max residual=" << fmt(worst, 3) << " s(1)=" << fmt(s1, 17) << " bounds<=s at " << below
           << "/99 grid points, ratio(1e-12)=" << fmt(ratio, 6);
}

// 3 ----------------------------------------------------------------------

double eq_plus(double s, double log_n) {
  const double y = 1 / (2 * s - 1);
  return std::abs(y * std::log(4 * y) - log_n);
}

double eq_minus(double s, double log_n) {
  const double y = 1 / (2 * s - 1);
  return std::abs(y * std::log(y / 6) - log_n);
}

void dn_bounds(Verdict& v) {
  double worst = 0;
  for (double n : {72.0, 1e3, 1e6, 1e9}) {
    const auto b = dimension::dn_bounds(n);
    const double rp = eq_plus(b.s_plus.s, std::log(n));
    const double rm = eq_minus(b.s_minus.s, std::log(n));
    worst = std::max({worst, rp, rm});
    v.require(rp < 1e-12 && rm < 1e-12, "residual at N=" + fmt(n));
    v.require(b.s_minus.s <= b.s_plus.s, "s_- > s_+ at N=" + fmt(n));
    if (n == 72.0) v.detail << "N=72: s_-=" << fmt(b.s_minus.s) << " s_+=" << fmt(b.s_plus.s) << "; ";
  }
  double prev_m = 1, prev_p = 1;
  for (double n : {72.0, 1e3, 1e6, 1e9, 1e12, 1e18, 1e30, 1e60, 1e100}) {
    const auto b = dimension::dn_bounds(n);
    v.require(b.s_minus.s < prev_m && b.s_plus.s < prev_p && b.s_minus.s > 0.5,
              "not decreasing to 1/2 at N=" + fmt(n));
    prev_m = b.s_minus.s;
    prev_p = b.s_plus.s;
  }
  const double sp = dimension::solve_s_plus(std::log(64.0)).s;
  const double sm = dimension::solve_s_minus(std::log(4096.0)).s;
  // y = 1/(2s - 1): y = 2 gives 2 log 8 = log 64, y = 12 gives 12 log 2 = log 4096
  v.require(std::abs(2 * std::log(8.0) - std::log(64.0)) <= 1e-15 && std::abs(sp - 0.75) <= 1e-12,
            "s_+ inversion at N=64");
  v.require(std::abs(12 * std::log(2.0) - std::log(4096.0)) <= 1e-15 && std::abs(sm - 13.0 / 24) <= 1e-12,
            "s_- inversion at N=4096");
  v.detail << "max residual=" << fmt(worst, 3) << " s_+(64)=" << fmt(sp, 17) << " s_-(4096)=" << fmt(sm, 17)
           << " (13/24=" << fmt(13.0 / 24, 17) << ") s_-(1e100)=" << fmt(prev_m, 6)
           << " s_+(1e100)=" << fmt(prev_p, 6);
}

// 4 ----------------------------------------------------------------------

struct FastBest {
  std::int64_t q;
  std::int64_t hor_num;  // hor = hor_num / den
};

// Best approximation heights and errors by direct residue scan over a
// common denominator.
std::vector<FastBest> fast_brute(const RatPoint& x, std::int64_t qmax, std::int64_t& den) {
  const std::int64_t d1 = x.x1.get_den().get_si(), d2 = x.x2.get_den().get_si();
  den = std::lcm(d1, d2);
  const std::int64_t a1 = x.x1.get_num().get_si() * (den / d1);
  const std::int64_t a2 = x.x2.get_num().get_si() * (den / d2);
  std::vector<FastBest> out;
  std::int64_t record = -1;
  for (std::int64_t q = 1; q <= qmax; ++q) {
    const std::int64_t r1 = ((q * a1) % den + den) % den;
    const std::int64_t r2 = ((q * a2) % den + den) % den;
    const std::int64_t h = std::max(std::min(r1, den - r1), std::min(r2, den - r2));
    if (record < 0 || h < record) {
      record = h;
      out.push_back({q, h});
      if (h == 0) break;
    }
  }
  return out;
}

void best_audit(Verdict& v) {
  std::uint64_t items = 0, pairs = 0, sandwiches = 0;
  const auto xs = oracle::random_targets(2024, 100, 10000);
  for (const auto& x : xs) {
    const auto seq = bestapprox::best_approximations(x, 10000);
    std::int64_t den = 0;
    const auto brute = fast_brute(x, 10000, den);
    bool same = brute.size() == seq.items.size();
    for (std::size_t j = 0; same && j < brute.size(); ++j) {
      Rational hor(brute[j].hor_num, den);
      hor.canonicalize();
      same = seq.items[j].v.q() == brute[j].q && seq.items[j].hor == hor;
    }
    v.require(same, "sequence differs from brute force at " + x.str());
    const auto realise = bestapprox::audit_realise(seq);
    v.require(realise.ok, "realise at " + x.str() + ": " + realise.witness);
    items += seq.items.size();
    for (const auto& c : bestapprox::audit_best_inequalities(seq)) {
      ++pairs;
      v.require(c.primitive, "primitivity at " + x.str() + " j=" + std::to_string(c.j));
      v.require(c.lower && c.upper, "two-sided inequality at " + x.str() + " j=" + std::to_string(c.j));
    }
    for (std::size_t j = 1; j < seq.items.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        ++sandwiches;
        v.require(domains::best_sandwich(x, seq.items[i].v, seq.items[j].v).ok(),
                  "sandwich at " + x.str() + " " + seq.items[i].v.str() + " " + seq.items[j].v.str());
      }
    }
  }
  v.detail << xs.size() << " targets, " << items << " best approximations, " << pairs
           << " consecutive pairs, " << sandwiches << " sandwich pairs";
}

// 5 ----------------------------------------------------------------------

void profile_oracle(Verdict& v) {
  std::uint64_t points = 0;
  std::uint64_t nodes = 0;
  for (const auto& x : oracle::random_targets(4051, 50, 10000)) {
    const auto prof = bestapprox::wx_profile(bestapprox::best_approximations(x, 10000));
    const double hi = prof.e_hi ? std::log(prof.e_hi->get_d()) / 3.0 : 10.0;
    for (int i = 0; i < 50; ++i) {
      const Rational e = bestapprox::exp3_dyadic(hi * (i + 0.5) / 50);
      v.require(prof.in_window(e), "grid point outside the window at " + x.str());
      if (!prof.in_window(e)) continue;
      const auto o = bestapprox::shortest_vector_oracle(x, e);
      nodes += o.nodes;
      ++points;
      v.require(prof.length_cubed(e) == o.length_cubed, x.str() + " at E=" + fmt(e.get_d()));
    }
  }
  v.require(points == 2500, "fewer than 2500 grid points");
  v.detail << points << " grid points agree exactly, " << nodes << " oracle nodes";
}

// 6 ----------------------------------------------------------------------

void psi_tree(Verdict& v) {
  construct::TreeConfig cfg;
  cfg.eps = Rational(1, 8);
  cfg.n = 1;
  cfg.depth = 3;
  cfg.expand = 5;
  const auto r = construct::psi_tree(PrimVec(0, 0, 1), cfg);
  v.detail << "depth-1 children=" << r.root_children.get_str() << " (expected 50)";
  v.require(r.root_children == 50, "depth-1 child count is " + r.root_children.get_str());
  std::size_t checked = 0, growth_checked = 0, growth_fail = 0, spacing = 0;
  Rational min_growth = -1;
  for (const auto& lv : r.levels) {
    const std::string at = "depth " + std::to_string(lv.depth);
    v.require(lv.inadmissible == 0, at + " inadmissible slot");
    v.require(lv.n_eps_fail == 0, at + " N_eps membership: " + lv.witness);
    v.require(lv.shell_fail == 0, at + " Q'_eps membership: " + lv.witness);
    v.require(lv.nested_fail == 0, at + " nesting: " + lv.witness);
    v.require(lv.spacing_fail == 0, at + " spacing: " + lv.witness);
    v.require(lv.growth_fail == 0, at + ": " + std::to_string(lv.growth_fail) + " children with |u'| <= eps^-6 |u|");
    checked += lv.checked;
    growth_checked += lv.growth_checked;
    growth_fail += lv.growth_fail;
    spacing += lv.spacing_pairs;
    if (lv.min_growth && (min_growth < 0 || *lv.min_growth < min_growth)) min_growth = *lv.min_growth;
  }
  v.detail << "; " << checked << " nodes pass N_eps, Q'_eps, nesting; " << spacing
           << " sibling pairs pass spacing with rho=" << construct::spacing_rho(cfg.eps, cfg.n).get_str()
           << "; literal growth fails for " << growth_fail << "/" << growth_checked
           << ", min |u'| eps^6/|u|=" << fmt(min_growth.get_d(), 6) << " (> 1/4 holds: "
           << (min_growth > Rational(1, 4) ? "yes" : "no") << ")";
}

// 7 ----------------------------------------------------------------------

void suff(Verdict& v) {
  const Rational eps(1, 8);
  construct::Chain ch = construct::seed_chain(PrimVec(0, 0, 1));
  for (int i = 0; i < 4; ++i) ch = construct::extend_chain(ch, construct::FixedPolicy{eps, 1});
  const auto r = construct::suff_audit(ch, 50, eps);
  std::size_t upper = 0, lower = 0;
  for (const auto& s : r.samples) {
    upper += s.upper;
    lower += s.lower;
  }
  v.require(!r.vacuous, "vacuous window");
  v.require(r.samples.size() == 50, "sample count");
  v.require(upper == r.samples.size() && lower == r.samples.size(), "sandwich violated");
  v.require(r.maxima_ok, "local maximum above log(2 eps^{3/2}) in the normalized form");
  double worst = 0;
  for (const auto& m : r.maxima_cubed) worst = std::max(worst, m.get_d());
  v.detail << "upper " << upper << "/" << r.samples.size() << ", lower " << lower << "/" << r.samples.size()
           << ", " << r.maxima_cubed.size() << " maxima with max eps_x^3=" << fmt(worst, 6)
           << " < 4 eps^3=" << fmt(4.0 / 512, 6) << "; unnormalized reading eps_x <= 2 eps^{3/2}: "
           << (r.maxima_literal_ok ? "holds" : "fails");
}

// 8 ----------------------------------------------------------------------

void slow(Verdict& v) {
  const auto w = [](double t) { return -std::log1p(t); };
  const auto f = construct::slow_schedule(w, 1.0, 64);
  const PrimVec seed = construct::aligned_seed(1000, f);
  const auto c = construct::slow_chain(seed, w, 1.0, 15, 200);
  std::string where;
  for (std::size_t k = 1; k < c.eps.size() && where.empty(); ++k)
    if (!(c.eps[k] < c.eps[k - 1]))
      where = std::to_string(k - 1) + "->" + std::to_string(k) + " (" + fmt(c.eps[k - 1], 6) + " -> " +
              fmt(c.eps[k], 6) + ")";
  v.require(c.eps_decreasing, "eps(u_k) not strictly decreasing at " + where);
  v.require(c.tau_increasing, "tau(u_k) not strictly increasing");
  v.require(c.recursion_defect <= 5, "recursion defect above 5");
  v.require(c.certificate_ok, "slack above 3B + D");
  v.require(c.samples == 200, "sample count");
  v.detail << c.chain.nodes.size() - 1 << " steps, tau increasing: " << (c.tau_increasing ? "yes" : "no")
           << ", recursion defect=" << fmt(c.recursion_defect, 6) << ", B=" << fmt(c.b_measured, 6)
           << ", slack=" << fmt(c.slack, 6) << " <= 3B+D=" << fmt(3 * c.b_measured + c.d_const, 6) << " at "
           << c.samples << " samples, eps(u_15)=" << fmt(c.eps.back(), 6);
}

// 9 ----------------------------------------------------------------------

void dn_tree(Verdict& v) {
  cfrac::DnTreeConfig cfg;
  cfg.n = 72;
  cfg.depth = 4;
  cfg.a_max = Integer(144);
  cfg.expand = 6;
  const auto t = cfrac::dn_tree(cfrac::Frac(1, 2), cfg);
  std::size_t intervals = 0;
  for (const auto& lv : t.levels) intervals += lv.intervals;
  v.require(t.ok(), "nesting or gaps: " + t.witness);
  const double s = dimension::dn_bounds(72).s_minus.s;
  dimension::LowerCertOptions opts;
  opts.rho = Rational(1, 36 * 72);
  const auto cert = dimension::lower_cert(t.tree, s, opts);
  bool structural = true;
  for (const auto& x : cert.violations) {
    if (x.condition == "iv") continue;
    v.require(false, "(" + x.condition + ") at " + x.node + ": " + x.detail);
    structural = false;
  }
  double lo = 2, hi = 0;
  for (const auto& n : cert.sums) {
    lo = std::min(lo, n.sum);
    hi = std::max(hi, n.sum);
  }
  v.require(lo >= 1, "(iv) sums at s_-(72) are " + fmt(lo, 6) + ".." + fmt(hi, 6) + ", below 1");
  const auto range = dimension::node_s_range(t.tree);
  v.detail << intervals << " intervals nested with gaps >= |I|/(36N): " << (t.ok() ? "yes" : "no")
           << "; (i)-(iii) over " << cert.nodes_checked << " nodes, " << cert.pairs_checked
           << " pairs: " << (structural ? "pass" : "fail") << "; (iv) sums at s_-=" << fmt(s, 9) << " in ["
           << fmt(lo, 6) << ", " << fmt(hi, 6) << "]; sums reach 1 at s=" << fmt(range.second, 6);
}

// 10 ---------------------------------------------------------------------

void statement(Verdict& v) {
  v.detail << "Hdim Sing(2) = 4/3 and Hdim D_inf = 1/2 are limits over infinite trees and are not "
              "reproducible at desk scale. Their finite ingredients are certified by criteria 2, 3, 6, 7 "
              "and 9.";
}

}  // namespace

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  const std::vector<Criterion> all{
      {1, "Cantor crossing point", 1, crossing},
      {2, "C_delta closed form", 1, cantor},
      {3, "D_N exponent bounds", 1, dn_bounds},
      {4, "best-approximation audit", 60, best_audit},
      {5, "profile and oracle agreement", 60, profile_oracle},
      {6, "psi tree", 60, psi_tree},
      {7, "sandwich along a fixed-eps chain", 120, suff},
      {8, "slow divergence", 120, slow},
      {9, "D_N interval tree", 30, dn_tree},
      {10, "non-reproducibility statement", 1, statement},
  };
  int failed = 0;
  try {
    for (const auto& c : all) {
      Verdict v;
      const auto t0 = std::chrono::steady_clock::now();
      c.run(v);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      v.require(secs < c.limit_s, "runtime over " + fmt(c.limit_s) + " s");
      failed += !v.pass;
      std::printf("%s %2d %s: %s (%.2f s, limit %g s)\n", v.pass ? "PASS" : "FAIL", c.id, c.name,
                  v.detail.str().c_str(), secs, c.limit_s);
      std::fflush(stdout);
    }
  } catch (const std::exception& e) {
    std::printf("ERROR %s\n", e.what());
    return 2;
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(all.size()) - failed, all.size());
  return strict && failed ? 1 : 0;
}
