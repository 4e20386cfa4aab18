#include "audit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <random>
#include <sstream>

#include "diophlab/bestapprox.hpp"
#include "diophlab/cfrac.hpp"
#include "diophlab/construct.hpp"
#include "diophlab/dimension.hpp"
#include "diophlab/domains.hpp"
#include "diophlab/latinv.hpp"

namespace diophlab::cli {

namespace {

using Rng = std::mt19937_64;

/// Draws in [lo, hi] from the raw engine output, identical on every platform.
long draw(Rng& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::vector<RatPoint> targets(Rng& rng, int count, long max_den) {
  std::vector<RatPoint> out;
  while (static_cast<int>(out.size()) < count) {
    const long q = draw(rng, 2, max_den);
    out.emplace_back(Rational(draw(rng, 0, q - 1), q), Rational(draw(rng, 0, q - 1), q));
  }
  return out;
}

std::vector<PrimVec> vectors(Rng& rng, int count, long min_q, long max_q) {
  std::vector<PrimVec> out;
  while (static_cast<int>(out.size()) < count) {
    const long q = draw(rng, min_q, max_q);
    const Integer p1 = draw(rng, 0, q - 1);
    const Integer p2 = draw(rng, 0, q - 1);
    if (gcd3(p1, p2, Integer(q)) == 1) out.emplace_back(p1, p2, Integer(q));
  }
  return out;
}

std::vector<cfrac::Frac> fracs(Rng& rng, int count, long max_q) {
  std::vector<cfrac::Frac> out;
  while (static_cast<int>(out.size()) < count) {
    const long q = draw(rng, 2, max_q);
    const Integer p = draw(rng, -2 * q, 2 * q);
    if (gcd(p, Integer(q)) == 1) out.emplace_back(p, Integer(q));
  }
  return out;
}

class Tally {
 public:
  Tally(std::string id, std::string statement) {
    item_.id = std::move(id);
    item_.statement = std::move(statement);
  }

  template <class W>
  void check(bool ok, W&& witness) {
    ++item_.checks;
    if (ok) return;
    if (item_.failures++ == 0) item_.witness = witness();
  }

  void count(std::uint64_t passed) { item_.checks += passed; }

  AuditItem done() { return std::move(item_); }

 private:
  AuditItem item_;
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

using ItemFn = std::function<AuditItem(Rng&, const AuditConfig&)>;

AuditItem realise(Rng& rng, const AuditConfig& cfg) {
  Tally t("realise", "every listed best approximation is realised and none is missing");
  const auto fault = cfg.inject == Injection::realise_tiebreak ? bestapprox::Fault::shifted_choice
                                                               : bestapprox::Fault::none;
  std::vector<RatPoint> xs{RatPoint(Rational(3, 7), Rational(2, 7))};
  for (const auto& x : targets(rng, 24, 300)) xs.push_back(x);
  for (const auto& x : xs) {
    const auto r = bestapprox::audit_realise(bestapprox::best_approximations(x, 300, fault));
    t.check(r.ok, [&] { return x.str() + ": " + r.witness; });
  }
  return t.done();
}

AuditItem consecutive_primitive(Rng& rng, const AuditConfig&) {
  Tally t("consecutive-primitive", "consecutive best approximations span a primitive sublattice");
  for (const auto& x : targets(rng, 40, 2000)) {
    for (const auto& c : bestapprox::audit_best_inequalities(bestapprox::best_approximations(x, 2000)))
      t.check(c.primitive, [&] { return x.str() + " j=" + std::to_string(c.j); });
  }
  return t.done();
}

AuditItem two_sided(Rng& rng, const AuditConfig&) {
  Tally t("best-two-sided", "|L| / (q_j (q_j + q_{j+1})) <= ||x - p_j/q_j|| <= 2 |L| / (q_j q_{j+1})");
  for (const auto& x : targets(rng, 40, 2000)) {
    for (const auto& c : bestapprox::audit_best_inequalities(bestapprox::best_approximations(x, 2000)))
      t.check(c.lower && c.upper, [&] { return x.str() + " j=" + std::to_string(c.j); });
  }
  return t.done();
}

AuditItem best_sandwich(Rng& rng, const AuditConfig&) {
  Tally t("best-sandwich", "distance sandwich for every pair of best approximations");
  for (const auto& x : targets(rng, 20, 2000)) {
    const auto seq = bestapprox::best_approximations(x, 2000);
    for (std::size_t j = 1; j < seq.items.size(); ++j)
      for (std::size_t i = 0; i < j; ++i)
        t.check(domains::best_sandwich(x, seq.items[i].v, seq.items[j].v).ok(),
                [&] { return x.str() + " " + seq.items[i].v.str() + " " + seq.items[j].v.str(); });
  }
  return t.done();
}

AuditItem tail_unique(Rng& rng, const AuditConfig&) {
  Tally t("tail-unique", "best approximations above height 64 are unique");
  for (const auto& x : targets(rng, 40, 3000)) {
    const auto ties = bestapprox::tail_ties(bestapprox::best_approximations(x, 3000));
    t.check(ties.empty(), [&] { return x.str() + " item " + std::to_string(ties.front()); });
  }
  return t.done();
}

AuditItem profile_oracle(Rng& rng, const AuditConfig&) {
  Tally t("profile-oracle", "piecewise-linear W_x equals the exact shortest vector length");
  for (const auto& x : targets(rng, 8, 500)) {
    const auto prof = bestapprox::wx_profile(bestapprox::best_approximations(x, 500));
    const double hi = prof.e_hi ? std::log(prof.e_hi->get_d()) / 3.0 : 6.0;
    for (int i = 0; i < 12; ++i) {
      const Rational e = bestapprox::exp3_dyadic(hi * (i + 0.5) / 12);
      if (!prof.in_window(e)) continue;
      t.check(prof.length_cubed(e) == bestapprox::shortest_vector_oracle(x, e).length_cubed,
              [&] { return x.str() + " E=" + num(e.get_d()); });
    }
  }
  return t.done();
}

AuditItem reduced_basis(Rng& rng, const AuditConfig&) {
  Tally t("reduced-basis", "reduced basis lies in the lattice and starts with a shortest element");
  for (const auto& v : vectors(rng, 300, 2, 1000000)) {
    const auto b = latinv::reduced_basis(v, NormChoice::sup);
    const bool ok = latinv::in_lattice(v, b.b1) && latinv::in_lattice(v, b.b2) &&
                    seminorm(b.b1) * seminorm(b.b1) == latinv::shortest_squared(v, NormChoice::sup) &&
                    seminorm(b.b1) <= seminorm(b.b2) && b.b1.content() == 1;
    t.check(ok, [&] { return v.str(); });
  }
  return t.done();
}

AuditItem second_minimum(Rng& rng, const AuditConfig&) {
  Tally t("second-minimum", "|v| / 2 <= |L| |Lhat| and |Lhat| <= (1 + eps^3) |v| / |L| under sup");
  for (const auto& v : vectors(rng, 300, 2, 1000000)) {
    const auto inv = latinv::invariants(v);
    const bool low = 2 * inv.abs_l * inv.abs_lhat >= v.q();
    const bool high = Rational(inv.abs_lhat) <= (1 + inv.eps_cubed()) * Rational(v.q(), inv.abs_l);
    t.check(low && high, [&] { return v.str(); });
  }
  return t.done();
}

AuditItem u_pm(Rng& rng, const AuditConfig&) {
  Tally t("u-pm", "u_+ ^ v = L, u_- ^ v = -L with heights at most |v|");
  for (const auto& v : vectors(rng, 300, 2, 1000000)) {
    const auto inv = latinv::invariants(v);
    const auto p = latinv::u_pm(v, inv.L);
    t.check(diophlab::wedge(p.plus, v) == inv.L && diophlab::wedge(p.minus, v) == -inv.L &&
                p.plus.q() <= v.q() && p.minus.q() <= v.q(),
            [&] { return v.str(); });
  }
  return t.done();
}

AuditItem inner_ball(Rng& rng, const AuditConfig&) {
  Tally t("inner-ball", "points well inside B(v., r/2) lie in the domain of v");
  for (const auto& v : vectors(rng, 30, 2, 400)) {
    const auto b = domains::ball_bounds(v);
    for (int i = -2; i <= 2; ++i) {
      for (int k = -2; k <= 2; ++k) {
        const RatPoint x(b.center.x1 + Rational(i, 5) * b.inner(), b.center.x2 + Rational(k, 5) * b.inner());
        t.check(domains::in_domain(x, v), [&] { return v.str() + " " + x.str(); });
      }
    }
  }
  return t.done();
}

AuditItem half_domain(Rng& rng, const AuditConfig&) {
  Tally t("half-domain-distance", "distance bound on half domains");
  const auto vs = vectors(rng, 120, 2, 300);
  for (std::size_t i = 0; i + 1 < vs.size(); i += 2) {
    PrimVec u = vs[i], v = vs[i + 1];
    if (u.q() > v.q()) std::swap(u, v);
    if (u == v) continue;
    for (int s = 0; s < 40; ++s) {
      const RatPoint x(Rational(draw(rng, -400, 400), 200), Rational(draw(rng, -400, 400), 200));
      if (!domains::in_half_domain(x, u, v)) continue;
      t.check(domains::half_domain_distance_bound(x, u, v), [&] { return u.str() + v.str() + x.str(); });
    }
  }
  return t.done();
}

AuditItem di_tail(Rng& rng, const AuditConfig&) {
  Tally t("di-tail-bracket", "eps_j^{3/2} / 2 <= delta_j <= 2 eps_j^{3/2} along best approximations");
  for (const auto& x : targets(rng, 30, 3000)) {
    const auto seq = bestapprox::best_approximations(x, 3000);
    for (const auto& e : domains::di_tail_check(seq, Rational(1, 2)))
      t.check(e.bracket, [&] { return x.str() + " j=" + std::to_string(e.j); });
  }
  return t.done();
}

AuditItem psi_children(Rng& rng, const AuditConfig&) {
  Tally t("psi-children", "psi children lie in N_eps and Q'_eps and are nested");
  const Rational eps(1, 8);
  const auto check_children = [&](const PrimVec& u, std::optional<std::size_t> limit) {
    const auto parent = latinv::invariants(u);
    const auto set = construct::cantor_children(u, eps, 1, limit);
    t.check(set.inadmissible.empty(), [&] { return u.str() + " inadmissible slot"; });
    for (const auto& c : set.children) {
      const auto inv = latinv::invariants(c.u);
      t.check(construct::in_N_eps(parent, c.u, eps) && construct::in_Q_eps_shell(inv, eps) &&
                  construct::nested(parent, c.u, inv.L),
              [&] { return u.str() + " -> " + c.u.str(); });
    }
    return set.children;
  };
  const auto kids = check_children(PrimVec(0, 0, 1), std::nullopt);
  for (int i = 0; i < 2; ++i) check_children(kids[static_cast<std::size_t>(draw(rng, 0, static_cast<long>(kids.size()) - 1))].u, 6);
  return t.done();
}

AuditItem psi_spacing(Rng& rng, const AuditConfig&) {
  Tally t("psi-spacing", "sibling domains are rho diam apart, rho = eps^9 / (2^11 N^3)");
  const Rational eps(1, 8);
  const auto root = construct::cantor_children(PrimVec(0, 0, 1), eps, 1);
  std::vector<PrimVec> parents{PrimVec(0, 0, 1)};
  parents.push_back(root.children[static_cast<std::size_t>(draw(rng, 0, static_cast<long>(root.children.size()) - 1))].u);
  for (const auto& u : parents) {
    const auto set = construct::cantor_children(u, eps, 1, u.q() == 1 ? std::nullopt : std::optional<std::size_t>(20));
    const auto r = construct::verify_all_spacing(latinv::invariants(u), set.children, eps, 1);
    t.count(r.pairs_close - r.failures);
    t.check(r.failures == 0, [&] { return u.str() + ": " + r.witness; });
  }
  return t.done();
}

AuditItem psi_growth(Rng&, const AuditConfig&) {
  Tally t("psi-growth", "psi children grow by more than eps^{-6} / 4 under the sup norm");
  construct::TreeConfig cfg;
  cfg.depth = 2;
  cfg.expand = 3;
  cfg.child_limit = 8;
  const auto rep = construct::psi_tree(PrimVec(0, 0, 1), cfg);
  for (const auto& lv : rep.levels) {
    if (lv.growth_checked == 0) continue;
    t.count(lv.growth_checked);
    t.check(lv.min_growth && *lv.min_growth > Rational(1, 4),
            [&] { return "depth " + std::to_string(lv.depth) + " min ratio " + num(lv.min_growth->get_d()); });
  }
  return t.done();
}

AuditItem chains(Rng&, const AuditConfig&) {
  Tally t("chain-invariants", "fixed and shrinking chains keep N_eps, nesting, growth and Q'_eps");
  construct::Chain fixed = construct::seed_chain(PrimVec(0, 0, 1));
  for (int i = 0; i < 4; ++i) fixed = construct::extend_chain(fixed, construct::FixedPolicy{Rational(1, 8), 1});
  const auto a = construct::audit_chain(fixed);
  t.check(a.ok(), [&] { return "fixed: " + a.witness; });
  construct::Chain sing = construct::seed_chain(PrimVec(0, 0, 1), construct::ScheduleTag::sing_schedule);
  for (int i = 0; i < 4; ++i) sing = construct::extend_chain(sing, construct::SingSchedulePolicy{});
  const auto b = construct::audit_chain(sing);
  t.check(b.ok(), [&] { return "sing: " + b.witness; });
  const auto box = construct::limit_box(fixed);
  t.check(box.radius > 0, [&] { return std::string("empty limit box"); });
  return t.done();
}

AuditItem suff_sandwich(Rng&, const AuditConfig&) {
  Tally t("suff-sandwich", "(1 - eps^6) W <= W_x <= W on cubed lengths, maxima eps_x^3 < 4 eps^3");
  const Rational eps(1, 8);
  construct::Chain ch = construct::seed_chain(PrimVec(0, 0, 1));
  for (int i = 0; i < 4; ++i) ch = construct::extend_chain(ch, construct::FixedPolicy{eps, 1});
  const auto r = construct::suff_audit(ch, 12, eps);
  for (const auto& s : r.samples)
    t.check(s.upper && s.lower, [&] { return "E=" + num(s.e.get_d()); });
  t.check(r.maxima_ok, [] { return std::string("local maximum above 2 eps^{3/2}"); });
  return t.done();
}

AuditItem slow_steps(Rng& rng, const AuditConfig&) {
  Tally t("slow-step", "slow steps keep eps(u') <= eps' with bounded eps and tau defects");
  for (const auto& u : vectors(rng, 60, 50, 400)) {
    for (const Rational& e : {Rational(1, 2), Rational(1, 3), Rational(1, 5)}) {
      const auto s = construct::slow_step(u, e);
      t.check(s.eps_ratio_cubed <= 1 && std::abs(s.eps_defect()) < 0.5 && std::abs(s.tau_defect()) < 1.0,
              [&] { return u.str() + " eps'=" + to_string(e) + " tau defect " + num(s.tau_defect()); });
    }
  }
  return t.done();
}

AuditItem cantor_dim(Rng&, const AuditConfig&) {
  Tally t("cantor-dimension", "2^s = 1 + delta^s solved to 1e-12 and above both classical bounds");
  for (int i = 1; i <= 100; ++i) {
    const double d = i / 100.0;
    const auto r = dimension::cantor_exact_dim(d);
    bool ok = r.residual < 1e-12;
    if (d < 1) {
      const auto b = dimension::cantor_bounds(d);
      ok = ok && b.h_d <= r.s + 1e-12 && b.h_g <= r.s + 1e-12;
    }
    t.check(ok, [&] { return "delta=" + num(d); });
  }
  const auto c = dimension::cantor_crossing();
  t.check(std::abs(c.delta - 0.2726604) <= 1e-6 && std::abs(c.h - 0.3478475) <= 1e-6,
          [&] { return "crossing " + num(c.delta) + " " + num(c.h); });
  return t.done();
}

AuditItem dn_bounds(Rng&, const AuditConfig&) {
  Tally t("dn-bounds", "s_- <= s_+ solve their equations and decrease to 1/2");
  double prev_m = 1, prev_p = 1;
  for (const double n : {72.0, 1e3, 1e6, 1e9}) {
    const auto b = dimension::dn_bounds(n);
    const bool ok = b.s_minus.residual < 1e-12 && b.s_plus.residual < 1e-12 && b.s_minus.s <= b.s_plus.s &&
                    b.s_minus.s > 0.5 && b.s_minus.s < prev_m && b.s_plus.s < prev_p;
    prev_m = b.s_minus.s;
    prev_p = b.s_plus.s;
    t.check(ok, [&] { return "N=" + num(n); });
  }
  return t.done();
}

AuditItem self_similar(Rng&, const AuditConfig&) {
  Tally t("self-similar", "covering estimate and lower certificate agree on self-similar trees");
  for (const int k : {1, 3, 5, 7, 9}) {
    const Rational delta(k, 10);
    const auto tree = dimension::cantor_tree(delta, 4);
    const double s = dimension::covering_s_estimate(tree).s;
    dimension::LowerCertOptions opts;
    opts.rho = (1 - delta) / 4;
    t.check(dimension::lower_cert(tree, s, opts).pass && !dimension::lower_cert(tree, s + 1e-10, opts).pass,
            [&] { return "delta=" + to_string(delta); });
  }
  return t.done();
}

AuditItem convergents(Rng& rng, const AuditConfig&) {
  Tally t("convergents", "consecutive convergents have determinant +-1 and end at x");
  for (const auto& v : fracs(rng, 200, 100000)) {
    const auto c = cfrac::convergents(v.value());
    bool ok = c.back() == v;
    for (std::size_t k = 1; k < c.size(); ++k) ok = ok && abs(c[k].p * c[k - 1].q - c[k - 1].p * c[k].q) == 1;
    t.check(ok, [&] { return v.str(); });
  }
  return t.done();
}

AuditItem neighbors(Rng& rng, const AuditConfig&) {
  Tally t("neighbors", "p_+- q - p q_+- = +-1, 0 < q_+- < q, q_+ + q_- = q");
  for (const auto& v : fracs(rng, 300, 100000)) {
    const auto [m, p] = cfrac::neighbors(v);
    t.check(p.p * v.q - v.p * p.q == 1 && m.p * v.q - v.p * m.q == -1 && m.q > 0 && p.q > 0 && m.q + p.q == v.q,
            [&] { return v.str(); });
  }
  return t.done();
}

AuditItem interval_length(Rng& rng, const AuditConfig&) {
  Tally t("interval-length", "|I_N(v)| = (2N+1)/((Nq+q_-)(Nq+q_+)) within 2/((N+1)q^2) and 2/(Nq^2)");
  for (const auto& v : fracs(rng, 200, 100000)) {
    const Integer n = draw(rng, 1, 500);
    const auto iv = cfrac::interval_IN(v, n);
    const auto [m, p] = cfrac::neighbors(v);
    const Rational q2(v.q * v.q);
    const bool ok = iv.length() == Rational(2 * n + 1) / Rational((n * v.q + m.q) * (n * v.q + p.q)) &&
                    Rational(2) / (Rational(n + 1) * q2) <= iv.length() && iv.length() <= Rational(2) / (Rational(n) * q2);
    t.check(ok, [&] { return v.str() + " N=" + n.get_str(); });
  }
  return t.done();
}

AuditItem dn_gaps(Rng& rng, const AuditConfig&) {
  Tally t("dn-gaps", "sigma'_N children are nested with gaps >= |I_N(v)| / (36 N) at N = 72");
  for (const auto& v : fracs(rng, 12, 10000)) {
    const auto g = cfrac::audit_children(v, 72, cfrac::dn_children(v, 72, 144));
    t.check(g.nested && g.gaps_ok, [&] { return v.str() + ": " + g.witness; });
  }
  return t.done();
}

const std::vector<ItemFn>& corpus() {
  static const std::vector<ItemFn> items{
      realise,      consecutive_primitive, two_sided,   best_sandwich,  tail_unique,   profile_oracle,
      reduced_basis, second_minimum,      u_pm,        inner_ball,     half_domain,   di_tail,
      psi_children, psi_spacing,           psi_growth,  chains,         suff_sandwich, slow_steps,
      cantor_dim,   dn_bounds,             self_similar, convergents,   neighbors,     interval_length,
      dn_gaps};
  return items;
}

}  // namespace

std::vector<AuditItem> run_audit(const AuditConfig& cfg) {
  const auto& items = corpus();
  std::vector<AuditItem> out(items.size());
  const auto run_one = [&](std::size_t i) {
    Rng rng(cfg.seed * 0x9e3779b97f4a7c15ULL + i);
    try {
      return items[i](rng, cfg);
    } catch (const std::exception& e) {
      AuditItem a;
      a.id = "item-" + std::to_string(i);
      a.checks = 1;
      a.failures = 1;
      a.witness = std::string("exception: ") + e.what();
      return a;
    }
  };
  const std::size_t jobs = std::max(1u, cfg.jobs);
  for (std::size_t start = 0; start < items.size(); start += jobs) {
    std::vector<std::future<AuditItem>> batch;
    for (std::size_t i = start; i < std::min(items.size(), start + jobs); ++i)
      batch.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async, run_one, i));
    for (std::size_t k = 0; k < batch.size(); ++k) out[start + k] = batch[k].get();
  }
  return out;
}

}  // namespace diophlab::cli
