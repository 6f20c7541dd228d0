#include "torbase/markov.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

#include "torbase/errors.hpp"

namespace torbase {

std::size_t fiber_component_count(const NumericalSemigroup& s, Int b) {
  if (!s.contains(b)) return 0;
  if (b == 0) return 1;
  const std::size_t n = s.embedding_dimension();
  std::vector<std::size_t> active;
  for (std::size_t p = 0; p < n; ++p)
    if (s.contains(b - s.gen(p))) active.push_back(p);
  std::vector<std::size_t> parent(active.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t count = active.size();
  for (std::size_t i = 0; i < active.size(); ++i)
    for (std::size_t j = i + 1; j < active.size(); ++j) {
      if (!s.contains(b - s.gen(active[i]) - s.gen(active[j]))) continue;
      auto ri = find(i), rj = find(j);
      if (ri != rj) {
        parent[rj] = ri;
        --count;
      }
    }
  return count;
}

std::vector<Int> betti_candidates(const NumericalSemigroup& s) {
  std::vector<Int> out;
  const auto ap = s.apery();
  for (Int w : ap) {
    out.push_back(w);
    for (std::size_t j = 1; j < s.embedding_dimension(); ++j) out.push_back(w + s.gen(j));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Int> betti_elements(const NumericalSemigroup& s) {
  std::vector<Int> out;
  if (s.embedding_dimension() < 2) return out;
  for (Int b : betti_candidates(s))
    if (b > 0 && fiber_component_count(s, b) > 1) out.push_back(b);
  return out;
}

namespace {

Fiber checked_fiber(const NumericalSemigroup& s, Int b) {
  Fiber f = s.fiber(b);
  ensure(f.component_count == fiber_component_count(s, b), "fiber components disagree with the index graph");
  return f;
}

}  // namespace

BasisSet minimal_markov(const NumericalSemigroup& s) {
  std::vector<KernelBinomial> out;
  for (Int b : betti_elements(s)) {
    Fiber f = checked_fiber(s, b);
    std::vector<std::size_t> rep(f.component_count, f.size());
    for (std::size_t e = 0; e < f.size(); ++e)
      if (rep[f.component[e]] == f.size()) rep[f.component[e]] = e;
    for (std::size_t c = 1; c < f.component_count; ++c)
      out.push_back(KernelBinomial::from_pair(f.elements[rep[0]], f.elements[rep[c]], s.gens()));
  }
  BasisSet result(BasisKind::kMarkovMinimal, std::move(out));
  result.meta()["algorithm"] = "fiber-components";
  return result;
}

BasisSet universal_markov(const NumericalSemigroup& s) {
  std::vector<KernelBinomial> out;
  for (Int b : betti_elements(s)) {
    Fiber f = checked_fiber(s, b);
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j)
        if (f.component[i] != f.component[j])
          out.push_back(KernelBinomial::from_pair(f.elements[i], f.elements[j], s.gens()));
  }
  BasisSet result(BasisKind::kMarkovUniversal, std::move(out));
  result.meta()["algorithm"] = "fiber-components";
  return result;
}

CriticalBinomials critical_binomials(const NumericalSemigroup& s) {
  CriticalBinomials out;
  const std::size_t n = s.embedding_dimension();
  if (n < 2) return out;
  std::vector<KernelBinomial> elems;
  out.exponents.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Int> others;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) others.push_back(s.gen(j));
    Monoid rest(others);
    Int c = 1;
    while (!rest.contains(checked_mul(c, s.gen(i)))) ++c;
    out.exponents[i] = c;
    Factorizer fz(others);
    for (const Vec& r : fz.factorizations(c * s.gen(i))) {
      Vec z(n, 0);
      z[i] = c;
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != i) z[j] = -r[k++];
      elems.push_back(KernelBinomial::from_vector(std::move(z), s.gens()));
    }
  }
  out.basis = BasisSet(BasisKind::kCritical, std::move(elems));
  return out;
}

bool connects_fiber(const Fiber& fiber, std::span<const KernelBinomial> moves) {
  if (fiber.size() <= 1) return true;
  std::map<Vec, std::size_t> index;
  for (std::size_t i = 0; i < fiber.size(); ++i) index.emplace(fiber.elements[i], i);
  std::vector<bool> seen(fiber.size(), false);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  const std::size_t n = fiber.elements.front().size();
  Vec next(n);
  while (!q.empty()) {
    const Vec& cur = fiber.elements[q.front()];
    q.pop();
    for (const auto& m : moves) {
      const Vec& z = m.vector();
      for (int sign : {1, -1}) {
        bool ok = true;
        for (std::size_t k = 0; k < n && ok; ++k) {
          next[k] = cur[k] - sign * z[k];
          ok = next[k] >= 0;
        }
        if (!ok) continue;
        auto it = index.find(next);
        if (it == index.end() || seen[it->second]) continue;
        seen[it->second] = true;
        ++reached;
        q.push(it->second);
      }
    }
  }
  return reached == fiber.size();
}

}  // namespace torbase
