#include "torbase/graver.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "torbase/errors.hpp"
#include "torbase/markov.hpp"

namespace torbase {

namespace {

struct Entry {
  Vec z;
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
};

Entry make_entry(Vec z) {
  Entry e;
  auto first = std::find_if(z.begin(), z.end(), [](Int x) { return x != 0; });
  if (first != z.end() && *first < 0)
    for (Int& x : z) x = -x;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] > 0) e.pos |= std::uint64_t{1} << i;
    if (z[i] < 0) e.neg |= std::uint64_t{1} << i;
  }
  e.z = std::move(z);
  return e;
}

// +1 when g is conformally below s, -1 when -g is, 0 otherwise.
int below(const Entry& g, const Vec& s, std::uint64_t spos, std::uint64_t sneg) {
  if ((g.pos & ~spos) == 0 && (g.neg & ~sneg) == 0) {
    bool ok = true;
    for (std::size_t i = 0; i < s.size() && ok; ++i) ok = g.z[i] == 0 || (g.z[i] > 0 ? g.z[i] <= s[i] : g.z[i] >= s[i]);
    if (ok) return 1;
  }
  if ((g.pos & ~sneg) == 0 && (g.neg & ~spos) == 0) {
    bool ok = true;
    for (std::size_t i = 0; i < s.size() && ok; ++i) ok = g.z[i] == 0 || (g.z[i] > 0 ? g.z[i] <= -s[i] : g.z[i] >= -s[i]);
    if (ok) return -1;
  }
  return 0;
}

void masks(const Vec& s, std::uint64_t& pos, std::uint64_t& neg) {
  pos = neg = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] > 0) pos |= std::uint64_t{1} << i;
    if (s[i] < 0) neg |= std::uint64_t{1} << i;
  }
}

class Completion {
 public:
  Completion(std::span<const Int> gens, const Budget& budget) : gens_(gens), budget_(budget) {}

  void add(Vec z) {
    Entry e = make_entry(std::move(z));
    if (e.pos == 0 && e.neg == 0) return;
    if (!seen_.insert(e.z).second) return;
    if ((store_.size() & 255) == 0) budget_.check_deadline();
    if (store_.size() >= budget_.graver_cap)
      throw ResourceLimitError("Graver completion exceeded the candidate budget");
    Int deg = 0;
    for (std::size_t i = 0; i < e.z.size(); ++i)
      if (e.z[i] > 0) deg = checked_add(deg, checked_mul(e.z[i], gens_[i]));
    if (deg > budget_.degree_cap) throw ResourceLimitError("Graver completion exceeded the degree budget");
    store_.push_back(std::move(e));
  }

  void reduce(Vec& s) const {
    std::uint64_t pos, neg;
    masks(s, pos, neg);
    bool changed = true;
    while (changed && (pos | neg) != 0) {
      changed = false;
      for (const Entry& g : store_) {
        int sign = below(g, s, pos, neg);
        if (sign == 0) continue;
        do {
          for (std::size_t i = 0; i < s.size(); ++i) s[i] -= sign * g.z[i];
          masks(s, pos, neg);
        } while ((pos | neg) != 0 && below(g, s, pos, neg) == sign);
        changed = true;
        if ((pos | neg) == 0) break;
      }
    }
  }

  void run() {
    Vec s;
    for (std::size_t k = 0; k < store_.size(); ++k) {
      for (std::size_t i = 0; i < k; ++i) {
        for (int sign : {1, -1}) {
          const Entry& f = store_[i];
          const Entry& g = store_[k];
          std::uint64_t gpos = sign > 0 ? g.pos : g.neg;
          std::uint64_t gneg = sign > 0 ? g.neg : g.pos;
          if ((f.pos & gneg) == 0 && (f.neg & gpos) == 0) continue;  // sign-compatible
          s.resize(f.z.size());
          for (std::size_t t = 0; t < s.size(); ++t) s[t] = checked_add(f.z[t], sign * g.z[t]);
          reduce(s);
          if (std::any_of(s.begin(), s.end(), [](Int x) { return x != 0; })) add(s);
        }
      }
    }
  }

  std::vector<KernelBinomial> minimal() const {
    std::vector<KernelBinomial> out;
    for (std::size_t a = 0; a < store_.size(); ++a) {
      const Entry& e = store_[a];
      bool minimal = true;
      for (std::size_t b = 0; b < store_.size() && minimal; ++b)
        if (b != a && below(store_[b], e.z, e.pos, e.neg) != 0) minimal = false;
      if (minimal) out.push_back(KernelBinomial::from_vector(e.z, gens_));
    }
    return out;
  }

 private:
  std::span<const Int> gens_;
  Budget budget_;
  std::vector<Entry> store_;
  std::set<Vec> seen_;
};

}  // namespace

bool conformal_le(std::span<const Int> z, std::span<const Int> w) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] == 0) continue;
    if ((z[i] > 0) != (w[i] > 0) || w[i] == 0) return false;
    if ((z[i] > 0 ? z[i] : -z[i]) > (w[i] > 0 ? w[i] : -w[i])) return false;
  }
  return true;
}

BasisSet graver(const NumericalSemigroup& s, const Budget& budget) {
  BasisSet result(BasisKind::kGraver);
  if (s.embedding_dimension() < 2) return result;
  Completion c(s.gens(), budget);
  const BasisSet markov = minimal_markov(s);
  for (const auto& b : markov.elements()) c.add(b.vector());
  c.run();
  result = BasisSet(BasisKind::kGraver, c.minimal());
  result.meta()["algorithm"] = "completion";
  return result;
}

bool is_primitive(const NumericalSemigroup& s, const KernelBinomial& b) {
  const Vec u = b.positive();
  const Vec v = b.negative();
  const Int deg = b.degree();
  auto reach = [&](const Vec& e) {
    std::vector<char> r(static_cast<std::size_t>(deg) + 1, 0);
    r[0] = 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
      const auto g = static_cast<std::size_t>(s.gen(i));
      for (Int c = 0; c < e[i]; ++c)
        for (std::size_t d = r.size(); d-- > g;)
          if (r[d - g]) r[d] = 1;
    }
    return r;
  };
  const auto ru = reach(u);
  const auto rv = reach(v);
  for (std::size_t d = 1; d < static_cast<std::size_t>(deg); ++d)
    if (ru[d] && rv[d]) return false;
  return true;
}

}  // namespace torbase
