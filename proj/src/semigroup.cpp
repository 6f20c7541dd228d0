#include "torbase/semigroup.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <tuple>

#include "torbase/errors.hpp"

namespace torbase {

namespace {

constexpr Int kUnreached = std::numeric_limits<Int>::max();

}  // namespace

Monoid::Monoid(std::span<const Int> gens) {
  gcd_ = gcd_of(gens);
  if (gcd_ == 0) {
    // Trivial monoid {0}.
    modulus_ = 1;
    apery_ = {0};
    gcd_ = 0;
    return;
  }
  std::vector<Int> scaled;
  scaled.reserve(gens.size());
  for (Int g : gens)
    if (g > 0) scaled.push_back(g / gcd_);
  std::sort(scaled.begin(), scaled.end());
  scaled.erase(std::unique(scaled.begin(), scaled.end()), scaled.end());
  modulus_ = scaled.front();
  apery_.assign(static_cast<std::size_t>(modulus_), kUnreached);
  apery_[0] = 0;
  if (modulus_ == 1) return;

  using Item = std::pair<Int, Int>;  // (distance, residue)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.emplace(0, 0);
  while (!heap.empty()) {
    auto [d, r] = heap.top();
    heap.pop();
    if (d != apery_[static_cast<std::size_t>(r)]) continue;
    for (std::size_t k = 1; k < scaled.size(); ++k) {
      Int g = scaled[k];
      Int nd = checked_add(d, g);
      Int nr = (r + g) % modulus_;
      if (nd < apery_[static_cast<std::size_t>(nr)]) {
        apery_[static_cast<std::size_t>(nr)] = nd;
        heap.emplace(nd, nr);
      }
    }
  }
}

bool Monoid::contains(Int b) const {
  if (b < 0) return false;
  if (b == 0) return true;
  if (gcd_ == 0) return false;
  if (b % gcd_ != 0) return false;
  Int s = b / gcd_;
  return s >= apery_[static_cast<std::size_t>(s % modulus_)];
}

Factorizer::Factorizer(std::vector<Int> gens) : gens_(std::move(gens)) {
  prefix_.reserve(gens_.size());
  for (std::size_t k = 0; k < gens_.size(); ++k)
    prefix_.emplace_back(std::span<const Int>(gens_.data(), k + 1));
}

void Factorizer::recurse(std::size_t i, Int rest, Vec& cur, std::vector<Vec>& out) const {
  Int g = gens_[i];
  if (i == 0) {
    if (rest % g == 0) {
      cur[0] = rest / g;
      out.push_back(cur);
      cur[0] = 0;
    }
    return;
  }
  for (Int c = 0; c * g <= rest; ++c) {
    Int r = rest - c * g;
    if (!prefix_[i - 1].contains(r)) continue;
    cur[i] = c;
    recurse(i - 1, r, cur, out);
  }
  cur[i] = 0;
}

std::vector<Vec> Factorizer::factorizations(Int b) const {
  std::vector<Vec> out;
  if (b < 0 || gens_.empty()) return out;
  if (!prefix_.back().contains(b)) return out;
  Vec cur(gens_.size(), 0);
  recurse(gens_.size() - 1, b, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> Fiber::neighbors(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < elements.size(); ++j)
    if (j != i && adjacent(i, j)) out.push_back(j);
  return out;
}

Fiber make_fiber(Int degree, std::vector<Vec> elements) {
  Fiber f;
  f.degree = degree;
  f.elements = std::move(elements);
  const std::size_t n = f.elements.empty() ? 0 : f.elements.front().size();
  if (n > 64) throw ValidationError("at most 64 generators are supported");
  f.supports.reserve(f.elements.size());
  for (const auto& u : f.elements) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (u[i] != 0) m |= std::uint64_t{1} << i;
    f.supports.push_back(m);
  }

  // Components of the shared-support graph coincide with the components of
  // the index graph in which each support is a clique.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::uint64_t m : f.supports) {
    if (m == 0) continue;
    std::size_t first = static_cast<std::size_t>(std::countr_zero(m));
    for (std::size_t i = first + 1; i < n; ++i)
      if (m >> i & 1) parent[find(i)] = find(first);
  }

  std::vector<std::size_t> label(n + 1, static_cast<std::size_t>(-1));
  f.component.resize(f.elements.size());
  for (std::size_t e = 0; e < f.elements.size(); ++e) {
    std::uint64_t m = f.supports[e];
    std::size_t root = m == 0 ? n : find(static_cast<std::size_t>(std::countr_zero(m)));
    if (label[root] == static_cast<std::size_t>(-1)) label[root] = f.component_count++;
    f.component[e] = label[root];
  }
  return f;
}

std::vector<Int> minimal_generators(std::vector<Int> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Int> kept;
  Monoid current;
  for (Int g : gens) {
    if (!kept.empty() && current.contains(g)) continue;
    kept.push_back(g);
    current = Monoid(kept);
  }
  return kept;
}

NumericalSemigroup::NumericalSemigroup(std::vector<Int> input, Normalize mode) : input_(std::move(input)) {
  if (input_.empty()) throw ValidationError("a numerical semigroup needs at least one generator");
  for (Int g : input_) {
    if (g < 1) throw ValidationError("generators must be positive integers");
    if (g > kMaxGenerator) throw ValidationError("generator exceeds the supported bound of 10^6");
  }
  std::vector<Int> sorted = input_;
  std::sort(sorted.begin(), sorted.end());
  Int g = gcd_of(sorted);
  std::vector<Int> scaled = sorted;
  for (Int& x : scaled) x /= g;
  gens_ = minimal_generators(scaled);
  normalized_ = gens_ != sorted;
  if (mode == Normalize::kStrict && normalized_) {
    if (g != 1) throw ValidationError("generators are not coprime");
    throw ValidationError("generating set is not minimal");
  }
  if (gens_.size() > 64) throw ValidationError("at most 64 generators are supported");
  monoid_ = Monoid(gens_);
  factorizer_ = Factorizer(gens_);
}

bool NumericalSemigroup::contains(Int b) const { return monoid_.contains(b); }

Int NumericalSemigroup::frobenius() const {
  auto ap = monoid_.apery();
  Int mx = *std::max_element(ap.begin(), ap.end());
  return mx - gens_.front();
}

Fiber NumericalSemigroup::fiber(Int b) const { return make_fiber(b, factorizations(b)); }

std::vector<GluingPartition> NumericalSemigroup::gluing_decompositions() const {
  std::vector<GluingPartition> out;
  const std::size_t n = gens_.size();
  if (n < 2) return out;
  const std::uint64_t full = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  for (std::uint64_t mask = 1; mask < full; mask += 2) {  // first part holds gens_[0]
    GluingPartition p;
    for (std::size_t i = 0; i < n; ++i) (mask >> i & 1 ? p.first : p.second).push_back(gens_[i]);
    Int d1 = gcd_of(p.first);
    Int d2 = gcd_of(p.second);
    Int l = lcm(d1, d2);
    if (Monoid(p.first).contains(l) && Monoid(p.second).contains(l)) out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const GluingPartition& a, const GluingPartition& b) {
    return std::tie(a.first, a.second) < std::tie(b.first, b.second);
  });
  return out;
}

std::string NumericalSemigroup::to_string() const {
  std::ostringstream os;
  os << '<';
  for (std::size_t i = 0; i < gens_.size(); ++i) os << (i ? "," : "") << gens_[i];
  os << '>';
  return os.str();
}

NumericalSemigroup NumericalSemigroup::parse(const std::string& text, Normalize mode) {
  std::string body = text;
  auto strip = [](std::string s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  body = strip(body);
  if (body.size() < 2 || body.front() != '<' || body.back() != '>')
    throw ValidationError("expected semigroup text of the form <a1,...,an>");
  body = body.substr(1, body.size() - 2);
  std::vector<Int> gens;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = strip(item);
    if (item.empty()) throw ValidationError("empty generator in semigroup text");
    std::size_t pos = 0;
    Int v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      throw ValidationError("bad generator '" + item + "'");
    }
    if (pos != item.size()) throw ValidationError("bad generator '" + item + "'");
    gens.push_back(v);
  }
  return NumericalSemigroup(std::move(gens), mode);
}

}  // namespace torbase
