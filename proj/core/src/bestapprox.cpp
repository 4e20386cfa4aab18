#include "diophlab/bestapprox.hpp"

#include <cmath>
#include <functional>

namespace diophlab::bestapprox {
namespace {

Rational frac_dist(const Rational& c) {
  Rational f = c - floor_of(c);
  Rational g = 1 - f;
  return f < g ? f : g;
}

Integer ceil_of(const Rational& r) { return -floor_of(-r); }

Rational cube(const Rational& r) { return r * r * r; }

Rational max_of(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace

BestApproxSeq best_approximations(const RatPoint& x, const Integer& height_bound, Fault fault) {
  if (height_bound < 1) throw PreconditionError("height bound must be at least 1");
  BestApproxSeq seq{x, {}, height_bound, false};
  std::optional<Rational> record;
  for (Integer q = 1; q <= height_bound; ++q) {
    const Rational c1 = q * x.x1;
    const Rational c2 = q * x.x2;
    const Rational h = max_of(frac_dist(c1), frac_dist(c2));
    if (record && !(h < *record)) continue;
    record = h;
    // smallest p_i with |q x_i - p_i| <= h
    Integer p1 = ceil_of(c1 - h);
    Integer p2 = ceil_of(c2 - h);
    if (fault == Fault::shifted_choice && seq.items.size() == 1) {
      seq.items.push_back({PrimVec::unchecked(p1 + 1, p2, q), h});
    } else {
      seq.items.push_back({PrimVec(p1, p2, q), h});
    }
    if (h == 0) {
      seq.exact_hit = true;
      break;
    }
  }
  return seq;
}

Rational Crossing::e_value() const {
  Rational r = Rational(v_height) / hor_prev;
  r.canonicalize();
  return r;
}

Rational Crossing::eps_cubed() const { return v_height * hor_prev * hor_prev; }

double Crossing::tau() const { return (log_of(v_height) - log_of(hor_prev)) / 3.0; }

double Crossing::log_eps() const { return log_of(eps_cubed()) / 3.0; }

bool PLProfile::in_window(const Rational& e) const {
  if (e < e_lo) return false;
  return !e_hi || e <= *e_hi;
}

Rational PLProfile::length_cubed(const Rational& e) const {
  if (!in_window(e)) throw PreconditionError("time outside the certified profile window");
  const Rational e2 = e * e;
  std::optional<Rational> best;
  for (const auto& m : minima) {
    Rational len = max_of(e * cube(m.hor), Rational(m.v.q() * m.v.q() * m.v.q()) / e2);
    if (!best || len < *best) best = len;
  }
  best->canonicalize();
  return *best;
}

double PLProfile::value(double t) const { return log_of(length_cubed(exp3_dyadic(t))) / 3.0; }

PLProfile wx_profile(const BestApproxSeq& seq) {
  if (seq.items.empty()) throw PreconditionError("profile needs a nonempty sequence");
  PLProfile p;
  p.target = seq.target;
  p.minima = seq.items;
  for (std::size_t j = 1; j < seq.items.size(); ++j) {
    p.maxima.push_back({seq.items[j].v.q(), seq.items[j - 1].hor});
  }
  p.e_lo = 1;
  if (!seq.exact_hit) {
    // any vector above the height bound stays longer than the last item up to here
    p.e_hi = Rational(seq.height_bound + 1) / seq.items.back().hor;
    p.e_hi->canonicalize();
  }
  return p;
}

Rational exp3_dyadic(double t) {
  const double e = std::exp(3.0 * t);
  if (!std::isfinite(e) || e <= 0) throw PreconditionError("time out of binary64 range");
  return Rational(e);
}

namespace {

using Vec3 = std::array<Rational, 3>;

Rational dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

struct GramSchmidt {
  std::array<Rational, 3> bn;              // |b*_i|^2
  std::array<std::array<Rational, 3>, 3> mu;
};

GramSchmidt gram_schmidt(const std::array<Vec3, 3>& b) {
  GramSchmidt g;
  std::array<Vec3, 3> star = b;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < i; ++j) {
      g.mu[i][j] = dot3(b[i], star[j]) / g.bn[j];
      for (int k = 0; k < 3; ++k) star[i][k] -= g.mu[i][j] * star[j][k];
    }
    g.bn[i] = dot3(star[i], star[i]);
  }
  return g;
}

Rational sup3(const Vec3& v) {
  Rational m = abs(v[0]);
  for (int k = 1; k < 3; ++k) m = max_of(m, abs(v[k]));
  return m;
}

}  // namespace

OracleResult shortest_vector_oracle(const RatPoint& x, const Rational& e,
                                    std::uint64_t node_budget) {
  if (e <= 0) throw PreconditionError("E = e^{3t} must be positive");
  // images of e_p1, e_p2, e_q under w -> (E (q x - p), q)
  std::array<Vec3, 3> b{Vec3{-e, 0, 0}, Vec3{0, -e, 0}, Vec3{e * x.x1, e * x.x2, 1}};
  std::array<std::array<Integer, 3>, 3> u{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

  // LLL with parameter 3/4 in exact arithmetic
  int k = 1;
  while (k < 3) {
    GramSchmidt g = gram_schmidt(b);
    for (int j = k - 1; j >= 0; --j) {
      Integer r = round_half_down(g.mu[k][j]);
      if (r == 0) continue;
      for (int c = 0; c < 3; ++c) {
        b[k][c] -= r * b[j][c];
        u[k][c] -= r * u[j][c];
      }
      g = gram_schmidt(b);
    }
    if (g.bn[k] >= (Rational(3, 4) - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.bn[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(u[k], u[k - 1]);
      k = std::max(k - 1, 1);
    }
  }
  const GramSchmidt g = gram_schmidt(b);

  OracleResult best;
  best.sup_scaled = -1;
  for (int i = 0; i < 3; ++i) {
    Rational s = sup3(b[i]);
    if (best.sup_scaled < 0 || s < best.sup_scaled) {
      best.sup_scaled = s;
      best.w = u[i];
    }
  }
  // every vector of sup length <= m has Euclidean length^2 <= 3 m^2
  Rational radius2 = 3 * best.sup_scaled * best.sup_scaled;
  std::array<Integer, 3> y;
  std::uint64_t nodes = 0;

  std::function<void(int, const Rational&)> descend = [&](int level, const Rational& partial) {
    if (++nodes > node_budget) {
      throw BudgetExceeded("shortest-vector enumeration exceeded " +
                           std::to_string(node_budget) + " nodes");
    }
    if (level < 0) {
      if (y[0] == 0 && y[1] == 0 && y[2] == 0) return;
      Vec3 img{0, 0, 0};
      for (int i = 0; i < 3; ++i) {
        for (int c = 0; c < 3; ++c) img[c] += y[i] * b[i][c];
      }
      Rational s = sup3(img);
      if (s < best.sup_scaled) {
        best.sup_scaled = s;
        for (int c = 0; c < 3; ++c) best.w[c] = y[0] * u[0][c] + y[1] * u[1][c] + y[2] * u[2][c];
        radius2 = 3 * s * s;
      }
      return;
    }
    Rational centre = 0;
    for (int j = level + 1; j < 3; ++j) centre -= g.mu[j][level] * y[j];
    const Integer start = round_half_down(centre);
    auto cost = [&](const Integer& c) -> Rational {
      Rational d = c - centre;
      return partial + d * d * g.bn[level];
    };
    for (Integer c = start;; ++c) {
      Rational p = cost(c);
      if (p > radius2) break;
      y[level] = c;
      descend(level - 1, p);
    }
    for (Integer c = start - 1;; --c) {
      Rational p = cost(c);
      if (p > radius2) break;
      y[level] = c;
      descend(level - 1, p);
    }
  };
  descend(2, Rational(0));

  auto& w = best.w;
  const bool flip = w[2] < 0 || (w[2] == 0 && (w[0] < 0 || (w[0] == 0 && w[1] < 0)));
  if (flip) {
    for (auto& c : w) c = -c;
  }
  best.length_cubed = cube(best.sup_scaled) / (e * e);
  best.length_cubed.canonicalize();
  best.nodes = nodes;
  return best;
}

bool in_integer_span(const PrimVec& a, const PrimVec& b, const PrimVec& w) {
  const Wedge2 d = wedge(a, b);
  if (d.is_zero()) throw PreconditionError("span of dependent vectors");
  auto ratio = [&](const Wedge2& n) -> std::optional<Integer> {
    const Integer& dk = d.p12 != 0 ? d.p12 : (d.p13 != 0 ? d.p13 : d.p23);
    const Integer& nk = d.p12 != 0 ? n.p12 : (d.p13 != 0 ? n.p13 : n.p23);
    if (mpz_divisible_p(nk.get_mpz_t(), dk.get_mpz_t()) == 0) return std::nullopt;
    Integer r = nk / dk;
    if (!(r * d == n)) return std::nullopt;
    return r;
  };
  return ratio(wedge(w, b)).has_value() && ratio(wedge(a, w)).has_value();
}

std::vector<std::size_t> hat_sigma(const BestApproxSeq& seq) {
  std::vector<std::size_t> out;
  const auto& it = seq.items;
  for (std::size_t j = 2; j < it.size(); ++j) {
    if (!in_integer_span(it[j - 2].v, it[j - 1].v, it[j].v)) out.push_back(j);
  }
  return out;
}

std::vector<PairCheck> audit_best_inequalities(const BestApproxSeq& seq) {
  std::vector<PairCheck> out;
  const auto& it = seq.items;
  for (std::size_t j = 0; j + 1 < it.size(); ++j) {
    const PrimVec& vj = it[j].v;
    const PrimVec& vn = it[j + 1].v;
    const Wedge2 l = wedge(vj, vn);
    const Integer absl = seminorm(l);
    const Rational dist = sup_dist(seq.target, dot(vj));
    PairCheck c;
    c.j = j;
    c.lower = Rational(absl) <= dist * vj.q() * (vn.q() + vj.q());
    c.upper = dist * vj.q() * vn.q() <= 2 * absl;
    c.primitive = l.content() == 1;
    out.push_back(c);
  }
  return out;
}

namespace {

struct BoxMin {
  Rational hor;
  Integer p1, p2;
  int count = 0;  // vectors attaining the minimum
};

BoxMin box_min(const RatPoint& x, const Integer& q) {
  const Integer f1 = floor_of(q * x.x1);
  const Integer f2 = floor_of(q * x.x2);
  BoxMin m;
  bool first = true;
  for (Integer p1 = f1 - 1; p1 <= f1 + 2; ++p1) {
    for (Integer p2 = f2 - 1; p2 <= f2 + 2; ++p2) {
      Rational h = max_of(abs(q * x.x1 - p1), abs(q * x.x2 - p2));
      if (first || h < m.hor) {
        m = {h, p1, p2, 1};
        first = false;
      } else if (h == m.hor) {
        ++m.count;
      }
    }
  }
  return m;
}

}  // namespace

RealiseCheck audit_realise(const BestApproxSeq& seq) {
  RealiseCheck r;
  const auto& it = seq.items;
  if (it.empty()) return r;
  const Integer top = seq.exact_hit ? it.back().v.q() : seq.height_bound;
  std::optional<Rational> lower_min;  // min hor over heights below the current one
  std::size_t next = 0;
  for (Integer q = 1; q <= top; ++q) {
    BoxMin m = box_min(seq.target, q);
    while (next < it.size() && it[next].v.q() == q) {
      const Item& item = it[next];
      const Rational h = hor(seq.target, item.v);
      if (h != item.hor) {
        r.ok = false;
        r.witness = "item " + item.v.str() + " reports hor " + to_string(item.hor) +
                    " but has " + to_string(h);
        return r;
      }
      if (lower_min && *lower_min <= h) {
        r.ok = false;
        r.witness = "item " + item.v.str() + " with hor " + to_string(h) +
                    " is not better than a lower height reaching " + to_string(*lower_min);
        return r;
      }
      if (m.hor < h) {
        r.ok = false;
        r.witness = "item " + item.v.str() + " with hor " + to_string(h) + " beaten by ((" +
                    m.p1.get_str() + "," + m.p2.get_str() + ")," + q.get_str() + ") with hor " +
                    to_string(m.hor);
        return r;
      }
      ++next;
    }
    if (!lower_min || m.hor < *lower_min) {
      // a new record must be one of the listed items
      const bool listed = next > 0 && it[next - 1].v.q() == q;
      if (!listed) {
        r.ok = false;
        r.witness = "missing best approximation ((" + m.p1.get_str() + "," + m.p2.get_str() +
                    ")," + q.get_str() + ") with hor " + to_string(m.hor);
        return r;
      }
      lower_min = m.hor;
    }
    if (m.hor == 0) break;
  }
  if (next != it.size()) {
    r.ok = false;
    r.witness = "item " + it[next].v.str() + " lies beyond the scanned heights";
  }
  return r;
}

std::vector<std::size_t> tail_ties(const BestApproxSeq& seq, const Rational& mu0) {
  std::vector<std::size_t> out;
  const Rational threshold = 64 * mu0 * mu0;
  for (std::size_t j = 0; j < seq.items.size(); ++j) {
    const auto& item = seq.items[j];
    if (!(Rational(item.v.q()) > threshold)) continue;
    if (box_min(seq.target, item.v.q()).count > 1) out.push_back(j);
  }
  return out;
}

}  // namespace diophlab::bestapprox
