#include "torbase/groebner.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>

#include "exact.hpp"
#include "torbase/errors.hpp"
#include "torbase/graver.hpp"
#include "torbase/markov.hpp"

namespace torbase {

using Wide = __int128;

MonomialOrder::MonomialOrder(Vec weights, std::vector<std::size_t> tiebreak)
    : weights_(std::move(weights)), tiebreak_(std::move(tiebreak)) {
  if (weights_.size() != tiebreak_.size()) throw ValidationError("order weights and tiebreak differ in length");
  for (Int w : weights_)
    if (w < 0) throw ValidationError("order weights must be nonnegative");
  std::vector<std::size_t> sorted = tiebreak_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw ValidationError("tiebreak is not a permutation");
}

MonomialOrder MonomialOrder::lex(std::size_t n, std::vector<std::size_t> perm) {
  if (perm.empty()) {
    perm.resize(n);
    std::iota(perm.begin(), perm.end(), 0);
  }
  return MonomialOrder(Vec(n, 0), std::move(perm));
}

MonomialOrder MonomialOrder::parse(const std::string& text, std::size_t n) {
  auto colon = text.find(':');
  std::string wpart = text.substr(0, colon);
  std::vector<std::pair<Int, Int>> fractions;
  std::stringstream ws(wpart);
  std::string item;
  auto number = [](const std::string& s) -> Int {
    std::size_t pos = 0;
    Int v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      throw ValidationError("bad number '" + s + "' in order");
    }
    if (pos != s.size()) throw ValidationError("bad number '" + s + "' in order");
    return v;
  };
  while (std::getline(ws, item, ',')) {
    auto slash = item.find('/');
    Int p = number(item.substr(0, slash));
    Int q = slash == std::string::npos ? 1 : number(item.substr(slash + 1));
    if (q <= 0) throw ValidationError("weight denominators must be positive");
    if (p < 0) throw ValidationError("order weights must be nonnegative");
    Int g = gcd(p, q);
    fractions.emplace_back(p / g, q / g);
  }
  if (fractions.size() != n) throw ValidationError("order needs exactly one weight per generator");
  Int common = 1;
  for (auto& [p, q] : fractions) common = lcm(common, q);
  Vec w;
  for (auto& [p, q] : fractions) w.push_back(checked_mul(p, common / q));
  std::vector<std::size_t> perm;
  if (colon != std::string::npos) {
    std::stringstream ps(text.substr(colon + 1));
    while (std::getline(ps, item, ',')) {
      Int k = number(item);
      if (k < 1 || k > static_cast<Int>(n)) throw ValidationError("tiebreak index out of range");
      perm.push_back(static_cast<std::size_t>(k - 1));
    }
    if (perm.size() != n) throw ValidationError("tiebreak must list every variable once");
  } else {
    perm.resize(n);
    std::iota(perm.begin(), perm.end(), 0);
  }
  return MonomialOrder(std::move(w), std::move(perm));
}

bool MonomialOrder::greater(std::span<const Int> u, std::span<const Int> v) const {
  Wide du = 0, dv = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    du += static_cast<Wide>(weights_[i]) * u[i];
    dv += static_cast<Wide>(weights_[i]) * v[i];
  }
  if (du != dv) return du > dv;
  for (std::size_t k : tiebreak_)
    if (u[k] != v[k]) return u[k] > v[k];
  return false;
}

Vec MarkedBinomial::normal() const {
  Vec z(lead.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = lead[i] - trail[i];
  return z;
}

std::vector<Vec> MarkedBasis::cone_normals() const {
  std::vector<Vec> out;
  for (const auto& e : elements) out.push_back(e.normal());
  return out;
}

BasisSet MarkedBasis::unmarked(std::span<const Int> gens) const {
  std::vector<KernelBinomial> v;
  for (const auto& e : elements) v.push_back(KernelBinomial::from_pair(e.lead, e.trail, gens));
  return BasisSet(BasisKind::kGroebnerReduced, std::move(v));
}

namespace {

bool divides(std::span<const Int> a, std::span<const Int> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::uint64_t support(std::span<const Int> a) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) m |= std::uint64_t{1} << i;
  return m;
}

struct Rule {
  Vec lead;
  Vec trail;
  Vec delta;
  std::uint64_t lead_support = 0;
  bool active = true;  // false once another lead divides this one
};

Rule make_rule(Vec lead, Vec trail) {
  Rule r;
  r.delta.resize(lead.size());
  for (std::size_t i = 0; i < lead.size(); ++i) r.delta[i] = lead[i] - trail[i];
  r.lead_support = support(lead);
  r.lead = std::move(lead);
  r.trail = std::move(trail);
  return r;
}

// Replaces p by its normal form. Applies a rule as many times in a row as it fits.
void reduce(Vec& p, const std::vector<Rule>& rules) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::uint64_t ps = support(p);
    for (const Rule& r : rules) {
      if (!r.active || (r.lead_support & ~ps) != 0 || !divides(r.lead, p)) continue;
      Int k = std::numeric_limits<Int>::max();
      for (std::size_t i = 0; i < p.size(); ++i)
        if (r.delta[i] > 0) k = std::min(k, (p[i] - r.lead[i]) / r.delta[i] + 1);
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = checked_sub(p[i], checked_mul(k, r.delta[i]));
      ps = support(p);
      changed = true;
    }
  }
}

}  // namespace

MarkedBasis buchberger(std::span<const Int> gens, std::span<const Vec> generators, const MonomialOrder& order,
                       PairSchedule schedule) {
  const std::size_t n = gens.size();
  std::vector<Rule> rules;
  using Item = std::tuple<Int, std::size_t, std::size_t, std::size_t>;  // degree, sequence, i, j
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pairs;
  std::size_t seq = 0;
  // state[i][j] for i > j: 0 never queued, 1 pending, 2 done.
  std::vector<std::vector<char>> state;
  auto status = [&](std::size_t a, std::size_t b) { return a > b ? state[a][b] : state[b][a]; };

  auto insert = [&](Vec p, Vec q) {
    reduce(p, rules);
    reduce(q, rules);
    if (p == q) return;
    if (!order.greater(p, q)) std::swap(p, q);
    rules.push_back(make_rule(std::move(p), std::move(q)));
    const std::size_t k = rules.size() - 1;
    for (std::size_t j = 0; j < k; ++j)
      if (rules[j].active && divides(rules[k].lead, rules[j].lead)) rules[j].active = false;
    state.emplace_back(k, 0);
    for (std::size_t j = 0; j < k; ++j) {
      if ((rules[j].lead_support & rules[k].lead_support) == 0) continue;  // coprime leads
      Int key = 0;
      if (schedule == PairSchedule::kSmallestDegree) {
        Vec m(n);
        for (std::size_t i = 0; i < n; ++i) m[i] = std::max(rules[j].lead[i], rules[k].lead[i]);
        key = dot(m, gens);
      }
      pairs.emplace(key, seq++, j, k);
      state[k][j] = 1;
    }
  };

  for (const Vec& z : generators) {
    Vec u(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = z[i] > 0 ? z[i] : 0;
      v[i] = z[i] < 0 ? -z[i] : 0;
    }
    insert(std::move(u), std::move(v));
  }
  while (!pairs.empty()) {
    auto [key, s, i, j] = pairs.top();
    pairs.pop();
    state[j][i] = 2;
    Vec m(n);
    for (std::size_t t = 0; t < n; ++t) m[t] = std::max(rules[i].lead[t], rules[j].lead[t]);
    // Chain criterion: another lead divides the lcm and both side pairs are settled.
    bool chained = false;
    for (std::size_t k = 0; k < rules.size() && !chained; ++k)
      chained = k != i && k != j && status(i, k) != 1 && status(j, k) != 1 && divides(rules[k].lead, m);
    if (chained) continue;
    Vec p(n), q(n);
    for (std::size_t t = 0; t < n; ++t) {
      p[t] = m[t] - rules[i].lead[t] + rules[i].trail[t];
      q[t] = m[t] - rules[j].lead[t] + rules[j].trail[t];
    }
    insert(std::move(p), std::move(q));
  }

  // Keep rules whose lead is minimal, then reduce the trails.
  std::vector<Rule> minimal;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < rules.size() && keep; ++j) {
      if (j == i || !divides(rules[j].lead, rules[i].lead)) continue;
      if (rules[j].lead != rules[i].lead || j < i) keep = false;
    }
    if (keep) {
      minimal.push_back(rules[i]);
      minimal.back().active = true;
    }
  }
  MarkedBasis out;
  out.order = order;
  for (const Rule& r : minimal) {
    Vec t = r.trail;
    reduce(t, minimal);
    out.elements.push_back({r.lead, std::move(t)});
  }
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

MarkedBasis reduced_groebner(const NumericalSemigroup& s, const MonomialOrder& order, PairSchedule schedule) {
  if (order.size() != s.embedding_dimension()) throw ValidationError("order size does not match the semigroup");
  const BasisSet markov = minimal_markov(s);
  std::vector<Vec> gens;
  for (const auto& b : markov.elements()) gens.push_back(b.vector());
  return buchberger(s.gens(), gens, order, schedule);
}

bool is_reduced(const MarkedBasis& g) {
  for (std::size_t i = 0; i < g.elements.size(); ++i)
    for (std::size_t j = 0; j < g.elements.size(); ++j) {
      if (divides(g.elements[i].lead, g.elements[j].trail)) return false;
      if (i != j && divides(g.elements[i].lead, g.elements[j].lead)) return false;
    }
  return true;
}

namespace {

Wide wide_dot(std::span<const Int> a, std::span<const Int> b) {
  Wide s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<Wide>(a[i]) * b[i];
  return s;
}

Vec primitive_direction(Vec z) {
  Int g = 0;
  for (Int x : z) g = gcd(g, x);
  if (g > 1)
    for (Int& x : z) x /= g;
  return z;
}

// Extreme rays of {w : w . z >= 0 for z in normals} modulo the line spanned by gens.
std::vector<Vec> cone_rays(std::span<const Int> gens, const std::vector<Vec>& normals) {
  const std::size_t n = gens.size();
  const std::size_t pick = n - 2;
  std::set<Vec> rays;
  std::vector<std::size_t> idx(pick);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Vec> rows;
  while (true) {
    if (pick <= normals.size()) {
      rows.assign(1, Vec(gens.begin(), gens.end()));
      for (std::size_t k : idx) rows.push_back(normals[k]);
      Vec r = exact::null_vector(rows);
      if (!r.empty()) {
        for (int sign : {1, -1}) {
          bool ok = true;
          for (const Vec& z : normals)
            if (sign * wide_dot(r, z) < 0) {
              ok = false;
              break;
            }
          if (ok) {
            Vec ray = r;
            if (sign < 0)
              for (Int& x : ray) x = -x;
            rays.insert(std::move(ray));
          }
        }
      }
    }
    // next combination
    if (pick == 0 || pick > normals.size()) break;
    std::size_t k = pick;
    while (k > 0 && idx[k - 1] == normals.size() - pick + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t t = k; t < pick; ++t) idx[t] = idx[t - 1] + 1;
  }
  return {rays.begin(), rays.end()};
}

// Shifts a weight vector along gens until it is nonnegative.
Vec nonnegative_weight(Vec w, std::span<const Int> gens) {
  Int t = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] < 0) t = std::max(t, (-w[i] + gens[i] - 1) / gens[i]);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = checked_add(w[i], checked_mul(t, gens[i]));
  return w;
}

std::vector<std::size_t> identity(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

struct ConeData {
  std::vector<Vec> normals;  // deduplicated primitive directions
  std::vector<Vec> rays;
  Vec interior;
};

ConeData analyze(std::span<const Int> gens, const MarkedBasis& g) {
  ConeData c;
  std::set<Vec> seen;
  for (const auto& z : g.cone_normals()) seen.insert(primitive_direction(z));
  c.normals.assign(seen.begin(), seen.end());
  c.rays = cone_rays(gens, c.normals);
  c.interior.assign(gens.size(), 0);
  for (const auto& r : c.rays)
    for (std::size_t i = 0; i < r.size(); ++i) c.interior[i] = checked_add(c.interior[i], r[i]);
  for (const auto& z : c.normals) ensure(wide_dot(c.interior, z) > 0, "Gröbner cone has empty interior");
  return c;
}

MarkedBasis flip(std::span<const Int> gens, const MarkedBasis& g, const Vec& facet_point, const Vec& normal) {
  std::vector<Vec> generators = g.cone_normals();
  for (Int k = 1; k <= (Int{1} << 40); k *= 2) {
    Vec w(gens.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = checked_sub(checked_mul(k, facet_point[i]), normal[i]);
    MonomialOrder order(nonnegative_weight(std::move(w), gens), identity(gens.size()));
    MarkedBasis next = buchberger(gens, generators, order);
    bool ok = true;
    for (const auto& z : next.cone_normals()) {
      if (wide_dot(order.weights(), z) <= 0 || wide_dot(facet_point, z) < 0) {
        ok = false;
        break;
      }
    }
    if (ok) return next;
  }
  throw InternalConsistencyError("facet flip did not reach a neighboring cone");
}

}  // namespace

bool for_each_groebner_basis(const NumericalSemigroup& s, const std::function<bool(const MarkedBasis&)>& visit,
                             const Budget& budget) {
  const std::size_t n = s.embedding_dimension();
  const auto gens = s.gens();
  if (n < 2) return visit(MarkedBasis{MonomialOrder::lex(n), {}});

  std::set<std::vector<MarkedBinomial>> seen;
  std::deque<MarkedBasis> queue;
  MarkedBasis start = reduced_groebner(s, MonomialOrder::lex(n));
  seen.insert(start.elements);
  queue.push_back(std::move(start));
  while (!queue.empty()) {
    MarkedBasis g = std::move(queue.front());
    queue.pop_front();
    budget.check_deadline();
    ConeData cone = analyze(gens, g);
    g.order = MonomialOrder(nonnegative_weight(cone.interior, gens), identity(n));
    if (!visit(g)) return false;
    for (const Vec& z : cone.normals) {
      std::vector<Vec> tight;
      Vec point(n, 0);
      for (const Vec& r : cone.rays)
        if (wide_dot(r, z) == 0) {
          tight.push_back(r);
          for (std::size_t i = 0; i < n; ++i) point[i] = checked_add(point[i], r[i]);
        }
      if (exact::rank(tight) != n - 2) continue;
      MarkedBasis next = flip(gens, g, point, z);
      if (seen.count(next.elements)) continue;
      if (seen.size() >= budget.fan_cap) throw ResourceLimitError("Gröbner fan exceeded the cone budget");
      seen.insert(next.elements);
      queue.push_back(std::move(next));
    }
  }
  return true;
}

std::vector<MarkedBasis> groebner_fan(const NumericalSemigroup& s, const Budget& budget) {
  std::vector<MarkedBasis> out;
  for_each_groebner_basis(
      s,
      [&](const MarkedBasis& g) {
        out.push_back(g);
        return true;
      },
      budget);
  std::sort(out.begin(), out.end(), [](const MarkedBasis& a, const MarkedBasis& b) { return a.elements < b.elements; });
  return out;
}

bool every_reduced_basis_has_size(const NumericalSemigroup& s, std::size_t size, const Budget& budget) {
  return for_each_groebner_basis(s, [&](const MarkedBasis& g) { return g.size() == size; }, budget);
}

BasisSet universal_groebner(const NumericalSemigroup& s, const Budget& budget) {
  if (s.embedding_dimension() < 2) return BasisSet(BasisKind::kGroebnerUniversal);
  try {
    std::vector<KernelBinomial> all;
    for (const auto& g : groebner_fan(s, budget))
      for (const auto& b : g.unmarked(s.gens()).elements()) all.push_back(b);
    BasisSet out(BasisKind::kGroebnerUniversal, std::move(all));
    out.meta()["algorithm"] = "fan-union";
    return out;
  } catch (const OverflowError&) {
    throw;
  } catch (const ResourceLimitError&) {
    BasisSet out = fiber_edge_universal(s, budget);
    out.meta()["algorithm"] = "fiber-edge";
    return out;
  }
}

bool is_fiber_edge_lp(const NumericalSemigroup& s, const KernelBinomial& b) {
  const Vec u = b.positive();
  const Vec v = b.negative();
  const Fiber f = s.fiber(b.degree());
  const std::size_t n = u.size();
  std::vector<const Vec*> others;
  for (const auto& p : f.elements)
    if (p != u && p != v) others.push_back(&p);
  if (others.empty()) return true;
  // Columns: others, then u, v and the scale t. Feasible iff the midpoint of
  // [u, v] is a convex combination giving positive weight to another point.
  const std::size_t cols = others.size() + 3;
  std::vector<std::vector<mpq_class>> m(n + 2, std::vector<mpq_class>(cols));
  std::vector<mpq_class> rhs(n + 2, 0);
  for (std::size_t c = 0; c < others.size(); ++c) {
    const Vec& p = *others[c];
    for (std::size_t i = 0; i < n; ++i) m[i][c] = static_cast<long>(2 * p[i]);
    m[n][c] = 1;
    m[n + 1][c] = 1;
  }
  const std::size_t cu = others.size(), cv = cu + 1, ct = cu + 2;
  for (std::size_t i = 0; i < n; ++i) {
    m[i][cu] = static_cast<long>(2 * u[i]);
    m[i][cv] = static_cast<long>(2 * v[i]);
    m[i][ct] = static_cast<long>(-(u[i] + v[i]));
  }
  m[n][cu] = 1;
  m[n][cv] = 1;
  m[n][ct] = -1;
  rhs[n + 1] = 1;
  return !exact::feasible(m, rhs);
}

namespace {

// n - 2 integer functionals vanishing on z that are independent modulo gens.
std::vector<Vec> quotient_coordinates(std::span<const Int> gens, const Vec& z) {
  const std::size_t n = gens.size();
  std::vector<Vec> rows{Vec(gens.begin(), gens.end())};
  std::vector<Vec> out;
  for (std::size_t i = 0; i < n && out.size() + 2 < n; ++i)
    for (std::size_t j = i + 1; j < n && out.size() + 2 < n; ++j) {
      Vec c(n, 0);
      c[i] = z[j];
      c[j] = -z[i];
      rows.push_back(c);
      if (exact::rank(rows) == rows.size()) {
        out.push_back(std::move(c));
      } else {
        rows.pop_back();
      }
    }
  ensure(out.size() + 2 == n, "quotient coordinates are incomplete");
  return out;
}

int half_plane(Wide x, Wide y) { return y > 0 || (y == 0 && x > 0) ? 0 : 1; }

// All points lie in an open half-line or open half-plane through the origin.
bool strictly_one_sided(const std::vector<std::array<Wide, 2>>& pts, std::size_t dim) {
  if (dim == 1) {
    bool pos = false, neg = false;
    for (const auto& p : pts) {
      if (p[0] == 0) return false;
      (p[0] > 0 ? pos : neg) = true;
    }
    return !(pos && neg);
  }
  for (const auto& p : pts)
    if (p[0] == 0 && p[1] == 0) return false;
  auto sorted = pts;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    const int ha = half_plane(a[0], a[1]), hb = half_plane(b[0], b[1]);
    if (ha != hb) return ha < hb;
    return a[0] * b[1] - a[1] * b[0] > 0;
  });
  // An angular gap larger than a half turn leaves room for a separating line.
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& p = sorted[i];
    const auto& q = sorted[(i + 1) % sorted.size()];
    const Wide cross = p[0] * q[1] - p[1] * q[0];
    const Wide inner = p[0] * q[0] + p[1] * q[1];
    if (sorted.size() == 1 || cross < 0 || (cross == 0 && inner > 0 && i + 1 == sorted.size())) return true;
  }
  return false;
}

}  // namespace

bool is_fiber_edge(const NumericalSemigroup& s, const KernelBinomial& b) {
  const std::size_t n = s.embedding_dimension();
  if (n < 3 || n > 4) return is_fiber_edge_lp(s, b);
  const Vec u = b.positive();
  const Vec v = b.negative();
  const auto coords = quotient_coordinates(s.gens(), b.vector());
  std::vector<std::array<Wide, 2>> pts;
  for (const auto& p : s.fiber(b.degree()).elements) {
    if (p == u || p == v) continue;
    std::array<Wide, 2> q{0, 0};
    for (std::size_t k = 0; k < coords.size(); ++k)
      for (std::size_t i = 0; i < n; ++i) q[k] += static_cast<Wide>(coords[k][i]) * (p[i] - u[i]);
    pts.push_back(q);
  }
  if (pts.empty()) return true;
  return strictly_one_sided(pts, coords.size());
}

BasisSet fiber_edge_universal(const NumericalSemigroup& s, const Budget& budget) {
  std::vector<KernelBinomial> out;
  for (const auto& b : graver(s, budget).elements())
    if (is_fiber_edge(s, b)) out.push_back(b);
  BasisSet result(BasisKind::kGroebnerUniversal, std::move(out));
  result.meta()["algorithm"] = "fiber-edge";
  return result;
}

std::vector<std::size_t> initial_ideal_generator_counts(const NumericalSemigroup& s, const Budget& budget) {
  std::vector<std::size_t> out;
  for (const auto& g : groebner_fan(s, budget)) out.push_back(g.size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace torbase
