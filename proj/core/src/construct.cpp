#include "diophlab/construct.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "diophlab/domains.hpp"

namespace diophlab::construct {
namespace {

using latinv::Invariants;

Rational cube(const Rational& r) { return r * r * r; }

Integer gcd2(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer ceil_of(const Rational& r) { return -floor_of(-r); }

// Smallest and largest multiples of 20 strictly inside (m, 2m - 1).
std::pair<Integer, Integer> c_range(const Rational& m) {
  const Integer lo = 20 * (floor_of(m / 20) + 1);
  const Integer hi = 20 * (ceil_of((2 * m - 1) / 20) - 1);
  return {lo, hi};
}

Rational radius(const PrimVec& v, const Wedge2& l) {
  return Rational(seminorm(l), v.q() * v.q());
}

std::string slot_str(const Slot& s) {
  return "(" + s.a.get_str() + "," + s.b.get_str() + "," + s.c.get_str() + ")";
}

bool proportional(const Wedge2& a, const Wedge2& b) {
  return a.p12 * b.p13 == a.p13 * b.p12 && a.p12 * b.p23 == a.p23 * b.p12 &&
         a.p13 * b.p23 == a.p23 * b.p13;
}

Rational length_cubed(const RatPoint& x, const PrimVec& v, const Rational& e) {
  const Rational h = hor(x, v);
  const Rational q(v.q());
  const Rational a = e * cube(h);
  const Rational b = cube(q) / (e * e);
  return a < b ? b : a;
}

bool grows(const Invariants& parent, const PrimVec& child, const Rational& eps) {
  const Rational e3 = cube(eps);
  return e3 * e3 * child.q() > parent.v.q();
}

Rational growth_ratio(const Invariants& parent, const PrimVec& child, const Rational& eps) {
  const Rational e3 = cube(eps);
  Rational r = e3 * e3 * child.q() / parent.v.q();
  r.canonicalize();
  return r;
}

void keep_min(std::optional<Rational>& slot, const Rational& r) {
  if (!slot || r < *slot) slot = r;
}

}  // namespace

Wedge2 child_wedge(const Invariants& parent, const Integer& a, const Integer& b) {
  return a * parent.Lhat + b * parent.L;
}

Rational window_centre(const Invariants& parent, const Wedge2& lp, const Rational& eps) {
  const Integer l = seminorm(lp);
  Rational m = Rational(l * l, parent.v.q()) / cube(eps);
  m.canonicalize();
  return m;
}

PrimVec psi(const Invariants& parent, const Integer& a, const Integer& b, const Integer& c,
            const Rational& eps) {
  if (eps <= 0) throw PreconditionError("eps must be positive");
  if (a < 1 || b < 0 || b > a || gcd2(a, b) != 1) {
    throw PreconditionError("psi needs a >= b >= 0, a >= 1, gcd(a, b) = 1");
  }
  const Wedge2 lp = child_wedge(parent, a, b);
  const Rational m = window_centre(parent, lp, eps);
  if (!(m < c && c < 2 * m - 1)) {
    throw PreconditionError("c = " + c.get_str() + " outside the window (" + to_string(m) +
                            ", " + to_string(Rational(2 * m - 1)) + ")");
  }
  const Integer& q = parent.v.q();
  PrimVec out = latinv::lift_with_height(parent.v, lp, c * q - 1);
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), out.q().get_mpz_t(), q.get_mpz_t());
  if (f != c) throw std::logic_error("psi height landed outside its block");
  return out;
}

PrimVec psi(const PrimVec& u, const Integer& a, const Integer& b, const Integer& c,
            const Rational& eps) {
  return psi(latinv::invariants(u), a, b, c, eps);
}

bool in_N_eps(const Invariants& parent, const PrimVec& child, const Rational& eps) {
  const Wedge2 w = wedge(child, parent.v);
  if (w.is_zero() || w.content() != 1) return false;
  if (w == parent.L || w == -parent.L) return false;
  const Integer l = seminorm(w);
  return cube(eps) * child.q() > Rational(l * l);
}

bool in_Q_eps_shell(const Invariants& inv, const Rational& eps) {
  const Rational e3 = inv.eps_cubed();
  const Rational c = cube(eps);
  return e3 < c && e3 * 8 >= c;
}

bool certifies_shortest(const PrimVec& v, const Wedge2& w) {
  if (!latinv::in_lattice(v, w) || w.content() != 1) return false;
  const Integer l = seminorm(w);
  return 2 * l * l < v.q();
}

Rational inner_scale(const Invariants& inv) {
  if (inv.v.q() == 1) return 1;
  return radius(inv.v, inv.L);
}

Rational diam_bound(const Invariants& inv) {
  if (inv.v.q() == 1) return 1;
  return 4 * radius(inv.v, inv.L);
}

bool nested(const Invariants& parent, const PrimVec& child, const Wedge2& child_l) {
  const Rational d = sup_dist(dot(parent.v), dot(child));
  return d + 2 * radius(child, child_l) < inner_scale(parent) / 2;
}

namespace {

bool keeps_invariants(const Invariants& parent, const Invariants& child, const Rational& eps) {
  if (!in_N_eps(parent, child.v, eps) || !nested(parent, child.v, child.L)) return false;
  if (!in_Q_eps_shell(child, eps)) return false;
  return !latinv::in_Q_eps(parent, eps) || grows(parent, child.v, eps);
}

}  // namespace

ChildSet cantor_children(const PrimVec& u, const Rational& eps, const Integer& n,
                         std::optional<std::size_t> limit) {
  if (n < 1) throw PreconditionError("N must be at least 1");
  if (limit && *limit == 0) throw PreconditionError("child limit must be positive");
  const Invariants inv = latinv::invariants(u);
  ChildSet out;
  for (Integer a = 1; a <= n; ++a) {
    for (Integer b = 0; b <= a; ++b) {
      if (gcd2(a, b) != 1) continue;
      const Wedge2 lp = child_wedge(inv, a, b);
      const auto [lo, hi] = c_range(window_centre(inv, lp, eps));
      if (hi < lo) continue;
      const Integer count = (hi - lo) / 20 + 1;
      out.total += count;
      std::vector<Integer> idx;
      if (!limit || count <= *limit) {
        for (Integer i = 0; i < count; ++i) idx.push_back(i);
      } else if (*limit == 1) {
        idx.push_back(0);
      } else {
        const Integer k = *limit - 1;
        for (Integer i = 0; i <= k; ++i) idx.push_back((i * (count - 1)) / k);
      }
      for (const auto& i : idx) {
        const Slot s{a, b, lo + 20 * i};
        try {
          out.children.push_back({psi(inv, a, b, s.c, eps), s, lp});
        } catch (const PreconditionError&) {
          out.inadmissible.push_back(slot_str(s));
        }
      }
    }
  }
  return out;
}

Rational spacing_rho(const Rational& eps, const Integer& n) {
  Rational e9 = cube(cube(eps));
  Rational r = e9 / Rational(2048 * n * n * n);
  r.canonicalize();
  return r;
}

bool verify_spacing(const Invariants& parent, const Child& c1, const Child& c2,
                    const Rational& eps, const Integer& n) {
  const Rational gap = sup_dist(dot(c1.u), dot(c2.u)) - 2 * radius(c1.u, c1.lp) -
                       2 * radius(c2.u, c2.lp);
  return gap > spacing_rho(eps, n) * diam_bound(parent);
}

SpacingReport verify_all_spacing(const Invariants& parent, const std::vector<Child>& kids,
                                 const Rational& eps, const Integer& n) {
  SpacingReport rep;
  if (kids.size() < 2) return rep;
  Rational rmax = 0;
  for (const auto& k : kids) rmax = std::max(rmax, radius(k.u, k.lp));
  // centres farther apart than cell always pass
  Rational cell = spacing_rho(eps, n) * diam_bound(parent) + 4 * rmax;
  cell.canonicalize();
  using Key = std::pair<Integer, Integer>;
  std::map<Key, std::vector<std::size_t>> grid;
  std::vector<Key> keys;
  keys.reserve(kids.size());
  for (std::size_t i = 0; i < kids.size(); ++i) {
    const RatPoint c = dot(kids[i].u);
    Key k{floor_of(c.x1 / cell), floor_of(c.x2 / cell)};
    grid[k].push_back(i);
    keys.push_back(std::move(k));
  }
  for (std::size_t i = 0; i < kids.size(); ++i) {
    for (int d1 = -1; d1 <= 1; ++d1) {
      for (int d2 = -1; d2 <= 1; ++d2) {
        const auto it = grid.find({keys[i].first + d1, keys[i].second + d2});
        if (it == grid.end()) continue;
        for (const std::size_t j : it->second) {
          if (j <= i) continue;
          ++rep.pairs_close;
          if (!verify_spacing(parent, kids[i], kids[j], eps, n)) {
            if (rep.failures++ == 0) {
              rep.witness = slot_str(kids[i].slot) + " vs " + slot_str(kids[j].slot);
            }
          }
        }
      }
    }
  }
  return rep;
}

Chain seed_chain(const PrimVec& u0, ScheduleTag tag) { return {{{u0, std::nullopt, std::nullopt}}, tag}; }

std::pair<Rational, Integer> sing_parameters(std::size_t k, double c_prime) {
  const double s = static_cast<double>(k + 1) + c_prime;
  const double lll = std::log(std::log(std::log(s)));
  if (!(lll > 1.0)) throw PreconditionError("C' too small: eps_k must stay below 2^-7");
  return {Rational(1.0 / (128.0 * lll)), Integer(static_cast<unsigned long>(k + 1))};
}

Chain extend_chain(Chain chain, const Policy& policy) {
  if (chain.nodes.empty()) throw PreconditionError("chain has no seed");
  const PrimVec& u = chain.nodes.back().u;
  if (const auto* slow = std::get_if<SlowPolicy>(&policy)) {
    SlowStep s = slow_step(u, slow->eps_prime);
    chain.nodes.push_back({s.u, slow->eps_prime, std::nullopt});
    return chain;
  }
  const Invariants inv = latinv::invariants(u);
  Rational eps;
  Integer n;
  const bool monotone = std::holds_alternative<SingSchedulePolicy>(policy);
  if (const auto* f = std::get_if<FixedPolicy>(&policy)) {
    eps = f->eps;
    n = f->n;
  } else {
    std::tie(eps, n) = sing_parameters(chain.nodes.size() - 1,
                                       std::get<SingSchedulePolicy>(policy).c_prime);
  }
  const Rational eps_u = inv.eps_cubed();
  const bool in_q = latinv::in_Q_eps(inv, eps);
  for (Integer a = 1; a <= n; ++a) {
    for (Integer b = 0; b <= a; ++b) {
      if (gcd2(a, b) != 1) continue;
      const Wedge2 lp = child_wedge(inv, a, b);
      auto [lo, hi] = c_range(window_centre(inv, lp, eps));
      if (monotone) {
        // eps(u')^3 < eps(u)^3 needs |u'| > |L'|^2 / eps(u)^3
        const Integer l = seminorm(lp);
        lo = std::max(lo, Integer(20 * floor_of(Rational(l * l) / (eps_u * u.q()) / 20) - 20));
      }
      if (in_q) {
        // |u'| > eps^{-6} |u| needs c >= eps^{-6} - 1
        lo = std::max(lo, Integer(20 * floor_of(1 / (cube(eps) * cube(eps)) / 20) - 20));
      }
      int tries = 0;
      for (Integer c = lo; c <= hi && tries < 64; c += 20, ++tries) {
        PrimVec child = PrimVec::unchecked(0, 0, 1);
        try {
          child = psi(inv, a, b, c, eps);
        } catch (const PreconditionError&) {
          continue;
        }
        const Invariants cinv = latinv::invariants(child);
        if (!keeps_invariants(inv, cinv, eps)) continue;
        if (monotone && !(cinv.eps_cubed() < eps_u)) continue;
        chain.nodes.push_back({child, eps, Slot{a, b, c}});
        return chain;
      }
    }
  }
  throw PreconditionError("no admissible child of " + u.str());
}

ChainAudit audit_chain(const Chain& chain) {
  ChainAudit out;
  auto flag = [&](bool& field, std::size_t k, const char* what) {
    if (field) {
      field = false;
      if (out.witness.empty()) out.witness = std::string(what) + " at step " + std::to_string(k);
    }
  };
  std::vector<Invariants> inv;
  inv.reserve(chain.nodes.size());
  for (const auto& node : chain.nodes) inv.push_back(latinv::invariants(node.u));
  for (std::size_t k = 0; k + 1 < chain.nodes.size(); ++k) {
    const auto& next = chain.nodes[k + 1];
    if (!next.eps_used) continue;
    const Rational& eps = *next.eps_used;
    if (!in_N_eps(inv[k], next.u, eps)) flag(out.n_eps, k, "N_eps");
    if (!nested(inv[k], next.u, inv[k + 1].L)) flag(out.nested, k, "nesting");
    if (latinv::in_Q_eps(inv[k], eps)) {
      keep_min(out.min_growth, growth_ratio(inv[k], next.u, eps));
      if (!grows(inv[k], next.u, eps)) flag(out.growth, k, "growth");
    }
    if (next.slot && !in_Q_eps_shell(inv[k + 1], eps)) flag(out.shell, k, "shell");
    if (k >= 1 && proportional(inv[k].L, inv[k + 1].L)) flag(out.off_line, k, "plane");
  }
  return out;
}

bool TreeReport::ok() const {
  return std::all_of(levels.begin(), levels.end(), [](const TreeLevel& l) { return l.ok(); });
}

TreeReport psi_tree(const PrimVec& seed, const TreeConfig& cfg) {
  if (cfg.depth < 1 || cfg.expand == 0) throw PreconditionError("tree needs depth and expansion");
  TreeReport rep;
  std::vector<PrimVec> frontier{seed};
  for (int d = 1; d <= cfg.depth; ++d) {
    TreeLevel lvl;
    lvl.depth = d;
    lvl.parents = frontier.size();
    std::vector<PrimVec> next;
    auto note = [&lvl](std::size_t& counter, const std::string& what) {
      if (counter++ == 0 && lvl.witness.empty()) lvl.witness = what;
    };
    for (const auto& u : frontier) {
      const Invariants inv = latinv::invariants(u);
      const ChildSet cs = cantor_children(u, cfg.eps, cfg.n, cfg.child_limit);
      if (d == 1) rep.root_children = cs.total;
      lvl.slots += cs.total;
      lvl.inadmissible += cs.inadmissible.size();
      if (!cs.inadmissible.empty() && lvl.witness.empty()) {
        lvl.witness = "inadmissible slot " + cs.inadmissible.front() + " under " + u.str();
      }
      const bool parent_in_q = latinv::in_Q_eps(inv, cfg.eps);
      const Rational e3 = cube(cfg.eps);
      for (const auto& c : cs.children) {
        ++lvl.checked;
        const std::string tag = c.u.str() + " under " + u.str();
        if (!in_N_eps(inv, c.u, cfg.eps)) note(lvl.n_eps_fail, "N_eps " + tag);
        Rational ce3;
        Wedge2 cl = c.lp;
        if (certifies_shortest(c.u, c.lp)) {
          const Integer l = seminorm(c.lp);
          ce3 = Rational(l * l, c.u.q());
          ce3.canonicalize();
        } else {
          const Invariants ci = latinv::invariants(c.u);
          ce3 = ci.eps_cubed();
          cl = ci.L;
        }
        if (!(ce3 < e3 && 8 * ce3 >= e3)) note(lvl.shell_fail, "Q'_eps " + tag);
        if (!nested(inv, c.u, cl)) note(lvl.nested_fail, "nesting " + tag);
        if (parent_in_q) {
          ++lvl.growth_checked;
          keep_min(lvl.min_growth, growth_ratio(inv, c.u, cfg.eps));
          if (!grows(inv, c.u, cfg.eps)) note(lvl.growth_fail, "growth " + tag);
        }
      }
      const SpacingReport sp = verify_all_spacing(inv, cs.children, cfg.eps, cfg.n);
      lvl.spacing_pairs += sp.pairs_close;
      if (sp.failures > 0) {
        if (lvl.spacing_fail == 0 && lvl.witness.empty()) lvl.witness = "spacing " + sp.witness;
        lvl.spacing_fail += sp.failures;
      }
      const std::size_t n = cs.children.size();
      if (d < cfg.depth && n > 0) {
        const std::size_t k = std::min(cfg.expand, n);
        for (std::size_t i = 0; i < k; ++i) {
          next.push_back(cs.children[k == 1 ? 0 : i * (n - 1) / (k - 1)].u);
        }
      }
    }
    rep.levels.push_back(std::move(lvl));
    frontier = std::move(next);
  }
  return rep;
}

LimitBox limit_box(const Chain& chain) {
  if (chain.nodes.empty() || chain.nodes.back().u.q() <= 1) {
    throw PreconditionError("limit box needs a last node of height > 1");
  }
  const Invariants inv = latinv::invariants(chain.nodes.back().u);
  return {dot(inv.v), 2 * radius(inv.v, inv.L)};
}

bool SuffReport::ok() const {
  if (vacuous) return true;
  const bool all = std::all_of(samples.begin(), samples.end(),
                               [](const SandwichSample& s) { return s.upper && s.lower; });
  return all && maxima_ok;
}

SuffReport suff_audit(const Chain& chain, int t_samples, const Rational& eps,
                      std::uint64_t node_budget) {
  if (t_samples < 2) throw PreconditionError("need at least two samples");
  if (!(eps > 0 && eps * 3 < 1)) throw PreconditionError("suff audit needs 0 < eps < 1/3");
  SuffReport rep;
  if (chain.nodes.size() < 4) {
    rep.vacuous = true;
    if (!chain.nodes.empty()) rep.x = dot(chain.nodes.back().u);
    return rep;
  }
  const auto& nodes = chain.nodes;
  rep.x = dot(nodes.back().u);
  const Invariants first = latinv::invariants(nodes[1].u);
  const Invariants penult = latinv::invariants(nodes[nodes.size() - 2].u);
  rep.e_lo = Rational(first.v.q() * first.v.q(), first.abs_l);
  rep.e_hi = Rational(penult.v.q() * penult.v.q(), penult.abs_l);
  rep.e_lo.canonicalize();
  rep.e_hi.canonicalize();
  if (!(rep.e_lo < rep.e_hi)) {
    rep.vacuous = true;
    return rep;
  }
  const double t_lo = log_of(rep.e_lo) / 3.0;
  const double t_hi = log_of(rep.e_hi) / 3.0;
  const Rational shrink = cube(1 - cube(eps) * cube(eps));
  for (int i = 0; i < t_samples; ++i) {
    Rational e;
    if (i == 0) {
      e = rep.e_lo;
    } else if (i == t_samples - 1) {
      e = rep.e_hi;
    } else {
      e = bestapprox::exp3_dyadic(t_lo + (t_hi - t_lo) * i / (t_samples - 1));
    }
    SandwichSample s;
    s.e = e;
    s.w_cubed = length_cubed(rep.x, nodes.front().u, e);
    for (const auto& node : nodes) s.w_cubed = std::min(s.w_cubed, length_cubed(rep.x, node.u, e));
    s.wx_cubed = bestapprox::shortest_vector_oracle(rep.x, e, node_budget).length_cubed;
    s.upper = s.wx_cubed <= s.w_cubed;
    s.lower = shrink * s.w_cubed <= s.wx_cubed;
    rep.samples.push_back(std::move(s));
  }
  const Rational e3 = cube(eps);
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const Rational h = hor(rep.x, nodes[k].u);
    if (h == 0) continue;
    Rational m = nodes[k + 1].u.q() * h * h;
    m.canonicalize();
    if (!(m < 4 * e3)) rep.maxima_ok = false;
    if (!(m * m <= 64 * e3 * e3 * e3)) rep.maxima_literal_ok = false;
    rep.maxima_cubed.push_back(std::move(m));
  }
  return rep;
}

SampledFunction::SampledFunction(std::vector<double> ts, std::vector<double> ys)
    : ts_(std::move(ts)), ys_(std::move(ys)) {
  if (ts_.size() != ys_.size() || ts_.size() < 2) {
    throw PreconditionError("sampled function needs at least two matching samples");
  }
  for (std::size_t i = 1; i < ts_.size(); ++i) {
    if (!(ts_[i] > ts_[i - 1])) throw PreconditionError("sample times must increase");
    if (ys_[i] < ys_[i - 1]) throw PreconditionError("sampled F must be nondecreasing");
  }
}

double SampledFunction::operator()(double t) const {
  if (t <= ts_.front()) return ys_.front();
  if (t >= ts_.back()) return ys_.back();
  const auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - ts_.begin());
  const double w = (t - ts_[i - 1]) / (ts_[i] - ts_[i - 1]);
  return ys_[i - 1] + w * (ys_[i] - ys_[i - 1]);
}

double Schedule::operator()(double s) const {
  if (t.empty() || s < t.front()) throw PreconditionError("schedule evaluated before t0");
  const auto it = std::upper_bound(t.begin(), t.end(), s);
  return y[static_cast<std::size_t>(it - t.begin()) - 1];
}

bool Schedule::below(const std::function<double(double)>& big_f) const {
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (y[k] > big_f(t[k]) + 1e-12) return false;
  }
  return true;
}

bool Schedule::slow_growth() const {
  for (std::size_t k = 0; k < t.size(); ++k) {
    if ((*this)(t[k] + y[k]) > y[k] + delta + 1e-12) return false;
  }
  return true;
}

Schedule regularize_schedule(const std::function<double(double)>& big_f, double delta,
                             double t0, double t_max) {
  if (!(delta > 0)) throw PreconditionError("delta must be positive");
  Schedule s;
  s.delta = delta;
  double t = t0;
  double y = big_f(t0);
  if (!(y > 0)) throw PreconditionError("F(t0) must be positive");
  constexpr std::size_t cap = 50'000'000;
  while (t <= t_max) {
    s.t.push_back(t);
    s.y.push_back(y);
    if (s.t.size() > cap) throw BudgetExceeded("schedule too long");
    t += y;
    y = std::min(big_f(t), y + delta);
    if (!(y > 0)) throw PreconditionError("F must stay positive after t0");
  }
  return s;
}

double SlowStep::eps_defect() const { return log_of(eps_ratio_cubed) / 3.0; }
double SlowStep::tau_defect() const { return log_of(tau_defect_arg) / 3.0; }

SlowStep slow_step(const PrimVec& u, const Rational& eps_prime) {
  if (!(eps_prime > 0 && eps_prime < 1)) throw PreconditionError("eps' must lie in (0, 1)");
  const Invariants inv = latinv::invariants(u);
  const Rational t = Rational(inv.abs_lhat * inv.abs_lhat) / cube(eps_prime);
  const PrimVec next = latinv::lift_with_height(u, inv.Lhat, floor_of(t));
  const Invariants ninv = latinv::invariants(next);
  Rational ratio = ninv.eps_cubed() / cube(eps_prime);
  const Rational e3 = inv.eps_cubed();
  Rational arg = inv.tau_arg() / ninv.tau_arg() * cube(eps_prime) * cube(eps_prime) *
                 (e3 <= 1 ? e3 : 1 / e3);
  ratio.canonicalize();
  arg.canonicalize();
  return {next, ratio, arg};
}

Schedule slow_schedule(const std::function<double(double)>& w_target, double delta,
                       double t_max) {
  const auto big_f = [&w_target](double t) { return -w_target(t); };
  double t0 = 1;
  while (!(big_f(t0) > 0)) {
    t0 *= 2;
    if (t0 > t_max) throw PreconditionError("-W_target never becomes positive");
  }
  return regularize_schedule(big_f, delta, t0, t_max);
}

PrimVec aligned_seed(const Integer& q, const Schedule& f_tilde) {
  std::optional<PrimVec> best;
  double best_gap = 0;
  for (Integer p1 = 0; p1 < std::min(q, Integer(40)); ++p1) {
    for (Integer p2 = 0; p2 < q; ++p2) {
      if (gcd3(p1, p2, q) != 1) continue;
      const PrimVec v(p1, p2, q);
      const Invariants inv = latinv::invariants(v);
      const double tau = inv.tau();
      if (tau < f_tilde.t.front()) continue;
      const double gap = std::abs(f_tilde(tau) / 3.0 + std::log(inv.eps()));
      if (!best || gap < best_gap) {
        best = v;
        best_gap = gap;
      }
    }
  }
  if (!best) throw PreconditionError("no seed of height " + q.get_str() + " inside the schedule");
  return *best;
}

SlowCertificate slow_chain(const PrimVec& u0, const std::function<double(double)>& w_target,
                           double delta, int steps, int t_samples, std::uint64_t node_budget) {
  if (steps < 0) throw PreconditionError("steps must be nonnegative");
  SlowCertificate out;
  out.chain = seed_chain(u0, ScheduleTag::slow);
  out.d_const = -std::log1p(-1.0 / 729.0);
  double t_max = 64;
  out.f_tilde = slow_schedule(w_target, delta, t_max);
  auto f = [&out, &t_max, &w_target, delta](double s) {
    while (s >= out.f_tilde.t.back()) {
      t_max *= 2;
      out.f_tilde = slow_schedule(w_target, delta, t_max);
    }
    return out.f_tilde(std::max(s, out.f_tilde.t.front())) / 3.0;
  };
  std::vector<Invariants> inv{latinv::invariants(u0)};
  for (int k = 0; k < steps; ++k) {
    const Invariants& cur = inv.back();
    const double s = cur.tau() + std::abs(std::log(cur.eps()));
    const double fe = f(s);
    const Rational eps_prime(std::exp(-fe));
    out.eps_prime.push_back(eps_prime.get_d());
    out.chain = extend_chain(std::move(out.chain), SlowPolicy{eps_prime});
    inv.push_back(latinv::invariants(out.chain.nodes.back().u));
  }
  for (std::size_t k = 0; k < inv.size(); ++k) {
    out.eps.push_back(inv[k].eps());
    out.tau.push_back(inv[k].tau());
    out.b_measured = std::max(out.b_measured, std::abs(f(out.tau[k]) + std::log(out.eps[k])));
    if (k > 0) {
      if (!(inv[k].eps_cubed() < inv[k - 1].eps_cubed())) out.eps_decreasing = false;
      if (!(inv[k].tau_arg() < inv[k - 1].tau_arg())) out.tau_increasing = false;
      const double d = out.tau[k] - out.tau[k - 1] - 3.0 * std::abs(std::log(out.eps[k - 1]));
      out.recursion_defect = std::max(out.recursion_defect, std::abs(d));
    }
  }
  if (inv.size() < 3) {
    out.vacuous = true;
    return out;
  }
  const auto [lo, hi] = std::minmax_element(out.eps_prime.begin(), out.eps_prime.end());
  out.di_type = *hi <= *lo * (1 + 1e-12);
  const RatPoint x = dot(out.chain.nodes.back().u);
  const double t_lo = out.tau[1];
  const double t_hi = out.tau[out.tau.size() - 2];
  out.samples = t_samples;
  for (int i = 0; i < t_samples; ++i) {
    const double t = t_samples == 1 ? t_lo : t_lo + (t_hi - t_lo) * i / (t_samples - 1);
    const Rational e = bestapprox::exp3_dyadic(t);
    const double wx =
        log_of(bestapprox::shortest_vector_oracle(x, e, node_budget).length_cubed) / 3.0;
    out.slack = std::max(out.slack, w_target(t) - wx);
  }
  out.certificate_ok = out.slack <= 3 * out.b_measured + out.d_const;
  return out;
}

}  // namespace diophlab::construct
