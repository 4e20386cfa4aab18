#include "diophlab/cfrac.hpp"

#include <algorithm>

namespace diophlab::cfrac {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw PreconditionError("inverse_mod: not invertible");
  return r;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::string node_id(const std::string& parent, std::size_t i) {
  return parent + "." + std::to_string(i);
}

struct Builder {
  const DnTreeConfig& cfg;
  Integer a_max;
  Rational rho;
  std::vector<DnLevel>& levels;
  std::string& witness;

  dimension::CoverNode make(const Frac& v, std::string id) const {
    const IntervalIN iv = interval_IN(v, cfg.n);
    return {std::move(id), iv.length(), dimension::Interval{iv.lo, iv.hi}, rho, {}};
  }

  void expand(dimension::CoverNode& node, const Frac& v, int depth) {
    if (depth >= cfg.depth) return;
    const std::vector<Frac> kids = dn_children(v, cfg.n, a_max);
    const GapAudit audit = audit_children(v, cfg.n, kids);
    DnLevel& lv = levels[static_cast<std::size_t>(depth)];
    ++lv.parents;
    lv.intervals += kids.size();
    if (!audit.nested) ++lv.nested_fail;
    if (!audit.gaps_ok) ++lv.gap_fail;
    if (audit.min_gap_ratio && (!lv.min_gap_ratio || *audit.min_gap_ratio < *lv.min_gap_ratio))
      lv.min_gap_ratio = audit.min_gap_ratio;
    if (witness.empty() && !audit.witness.empty()) witness = v.str() + ": " + audit.witness;

    node.children.reserve(kids.size());
    for (std::size_t i = 0; i < kids.size(); ++i) node.children.push_back(make(kids[i], node_id(node.id, i)));

    const std::size_t k = std::min(cfg.expand, kids.size());
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t i = k == 1 ? 0 : j * (kids.size() - 1) / (k - 1);
      expand(node.children[i], kids[i], depth + 1);
    }
  }
};

}  // namespace

Frac::Frac(Integer p_, Integer q_) : p(std::move(p_)), q(std::move(q_)) {
  if (q <= 0) throw PreconditionError("Frac: denominator must be positive");
  if (gcd(p, q) != 1) throw PreconditionError("Frac: not reduced: " + p.get_str() + "/" + q.get_str());
}

Frac::Frac(const Rational& r) : p(r.get_num()), q(r.get_den()) {}

std::string Frac::str() const { return p.get_str() + "/" + q.get_str(); }

std::vector<Integer> partial_quotients(const Rational& x) {
  std::vector<Integer> out;
  Integer num = x.get_num();
  Integer den = x.get_den();
  while (den != 0) {
    const Integer a = floor_div(num, den);
    out.push_back(a);
    const Integer r = num - a * den;
    num = den;
    den = r;
  }
  return out;
}

std::vector<Frac> convergents(const Rational& x) {
  std::vector<Frac> out;
  Integer p_prev = 1, q_prev = 0, p = 0, q = 1;
  bool first = true;
  for (const Integer& a : partial_quotients(x)) {
    if (first) {
      p_prev = 1;
      q_prev = 0;
      p = a;
      q = 1;
      first = false;
    } else {
      const Integer pn = a * p + p_prev;
      const Integer qn = a * q + q_prev;
      p_prev = p;
      q_prev = q;
      p = pn;
      q = qn;
    }
    out.emplace_back(p, q);
  }
  return out;
}

std::pair<Frac, Frac> neighbors(const Frac& v) {
  if (v.q < 2) throw PreconditionError("neighbors: requires q >= 2");
  const Integer inv = inverse_mod(mod(v.p, v.q), v.q);
  // p q_- = 1 mod q and p q_+ = -1 mod q
  const Integer q_minus = inv;
  const Integer q_plus = v.q - inv;
  const Integer p_minus = (v.p * q_minus - 1) / v.q;
  const Integer p_plus = (v.p * q_plus + 1) / v.q;
  Frac minus(p_minus, q_minus);
  Frac plus(p_plus, q_plus);
  if (plus.p * v.q - v.p * plus.q != 1 || minus.p * v.q - v.p * minus.q != -1 ||
      minus.q + plus.q != v.q)
    throw std::logic_error("neighbors: identity check failed for " + v.str());
  return {minus, plus};
}

IntervalIN interval_IN(const Frac& v, const Integer& n) {
  if (n < 1) throw PreconditionError("interval_IN: N must be at least 1");
  const auto [m, pl] = neighbors(v);
  return {v, n, Rational(n * v.p + m.p, n * v.q + m.q), Rational(n * v.p + pl.p, n * v.q + pl.q)};
}

std::vector<Frac> dn_children(const Frac& v, const Integer& n, const Integer& a_max) {
  if (n < 1) throw PreconditionError("dn_children: N must be at least 1");
  if (a_max <= n) throw PreconditionError("dn_children: a_max must exceed N");
  const auto [m, pl] = neighbors(v);
  std::vector<Frac> out;
  for (Integer a = n + 1; a <= a_max; ++a) {
    out.emplace_back(a * v.p + m.p, a * v.q + m.q);
    out.emplace_back(a * v.p + pl.p, a * v.q + pl.q);
  }
  return out;
}

GapAudit audit_children(const Frac& v, const Integer& n, const std::vector<Frac>& kids) {
  GapAudit out;
  const IntervalIN parent = interval_IN(v, n);
  std::vector<IntervalIN> ivs;
  ivs.reserve(kids.size());
  for (const Frac& k : kids) {
    ivs.push_back(interval_IN(k, n));
    if (ivs.back().lo < parent.lo || ivs.back().hi > parent.hi) {
      out.nested = false;
      if (out.witness.empty()) out.witness = "I_N(" + k.str() + ") not nested";
    }
  }
  std::sort(ivs.begin(), ivs.end(), [](const IntervalIN& a, const IntervalIN& b) { return a.lo < b.lo; });
  const Rational bound = parent.length() / Rational(36 * n);
  for (std::size_t i = 1; i < ivs.size(); ++i) {
    // sorted disjoint intervals: the closest pairs are adjacent
    const Rational gap = ivs[i].lo - ivs[i - 1].hi;
    const Rational r = gap / parent.length();
    if (!out.min_gap_ratio || r < *out.min_gap_ratio) out.min_gap_ratio = r;
    if (gap < bound) {
      out.gaps_ok = false;
      if (out.witness.empty())
        out.witness = "gap(" + ivs[i - 1].v.str() + ", " + ivs[i].v.str() + ") = " + gap.get_str() +
                      " < " + bound.get_str();
    }
  }
  return out;
}

bool DnTree::ok() const {
  return std::all_of(levels.begin(), levels.end(),
                     [](const DnLevel& l) { return l.nested_fail == 0 && l.gap_fail == 0; });
}

DnTree dn_tree(const Frac& root, const DnTreeConfig& cfg) {
  if (cfg.depth < 0) throw PreconditionError("dn_tree: negative depth");
  if (cfg.expand == 0) throw PreconditionError("dn_tree: expand must be positive");
  DnTree out;
  out.levels.resize(static_cast<std::size_t>(cfg.depth));
  for (int d = 0; d < cfg.depth; ++d) out.levels[static_cast<std::size_t>(d)].depth = d;
  Builder b{cfg, cfg.a_max.value_or(2 * cfg.n), Rational(1) / Rational(36 * cfg.n), out.levels, out.witness};
  out.tree = b.make(root, "r");
  b.expand(out.tree, root, 0);
  return out;
}

}  // namespace diophlab::cfrac
