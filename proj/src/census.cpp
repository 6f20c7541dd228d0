#include "torbase/census.hpp"

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include <omp.h>

#include "torbase/classify.hpp"
#include "torbase/errors.hpp"
#include "torbase/groebner.hpp"
#include "torbase/markov.hpp"

namespace torbase {

using Json = nlohmann::ordered_json;

namespace {

// Runs body(i) for i in [0, count); the first exception is rethrown after the loop.
template <typename Body>
void for_each_index(std::size_t count, bool parallel, int jobs, Body&& body) {
  std::exception_ptr failure;
  if (parallel) {
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::size_t i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
#pragma omp critical(torbase_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) body(i);
  }
  if (failure) std::rethrow_exception(failure);
}

// Free semigroups by Frobenius number, built bottom-up. F = -1 is N itself.
class FreeBuilder {
 public:
  const std::vector<NumericalSemigroup>& with_frobenius(Int f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    std::set<std::vector<Int>> found;
    // free implies symmetric, so the Frobenius number is odd
    if (f >= 1 && f % 2 == 1) {
      for (Int inner = -1; inner < f; inner += 2) collect(f, inner, found);
    }
    std::vector<NumericalSemigroup> out;
    for (const auto& gens : found) {
      NumericalSemigroup s(gens, Normalize::kStrict);
      ensure(s.frobenius() == f, "gluing Frobenius formula failed for " + s.to_string());
      ensure(is_free(s), "constructed semigroup is not free: " + s.to_string());
      out.push_back(std::move(s));
    }
    return memo_.emplace(f, std::move(out)).first->second;
  }

 private:
  // S = <a> + d S' with F(S) = d F(S') + a (d - 1), gcd(a, d) = 1, a in S'.
  void collect(Int f, Int inner, std::set<std::vector<Int>>& found) {
    for (Int d = 2;; ++d) {
      const Int rest = f - d * inner;
      if (rest < 2 * (d - 1)) break;  // a would drop below 2 from here on
      if (rest % (d - 1) != 0) continue;
      const Int a = rest / (d - 1);
      if (gcd(a, d) != 1) continue;
      if (inner == -1) {
        found.insert(std::vector<Int>{std::min(a, d), std::max(a, d)});
        continue;
      }
      for (const auto& base : with_frobenius(inner)) {
        if (!base.contains(a)) continue;
        std::vector<Int> gens{a};
        for (Int g : base.gens()) gens.push_back(checked_mul(d, g));
        std::sort(gens.begin(), gens.end());
        if (minimal_generators(gens) == gens) found.insert(std::move(gens));
      }
    }
  }

  std::map<Int, std::vector<NumericalSemigroup>> memo_;
};

bool is_symmetric_with_frobenius(const NumericalSemigroup& s, Int f) {
  if (f % 2 == 0) return false;
  Int gaps = 0;
  for (Int x = 1; x <= f; ++x)
    if (!s.contains(x)) ++gaps;
  return 2 * gaps == f + 1;
}

}  // namespace

std::vector<NumericalSemigroup> enumerate_free_with_frobenius(Int f) {
  if (f < 1) throw ValidationError("Frobenius number must be at least 1");
  FreeBuilder builder;
  return builder.with_frobenius(f);
}

std::vector<NumericalSemigroup> all_with_frobenius(Int f, Int cap) {
  if (f < 1) throw ValidationError("Frobenius number must be at least 1");
  if (f > cap) throw ValidationError("brute force refuses Frobenius numbers above the cap " + std::to_string(cap));
  // member[x] for 1 <= x < f; everything above f belongs to S.
  std::vector<char> member(static_cast<std::size_t>(f), 0);
  std::vector<NumericalSemigroup> out;

  auto forced_in = [&](Int x) {
    for (Int y = 1; 2 * y <= x; ++y)
      if (member[y] && member[x - y]) return true;
    return false;
  };
  auto emit = [&] {
    std::vector<Int> elements;
    for (Int x = 1; x < f; ++x)
      if (member[x]) elements.push_back(x);
    for (Int x = f + 1; x <= 2 * f + 1; ++x) elements.push_back(x);
    out.emplace_back(minimal_generators(std::move(elements)), Normalize::kStrict);
  };
  auto search = [&](auto&& self, Int x) -> void {
    if (x == f) {
      emit();
      return;
    }
    const bool must = forced_in(x);
    // x in S is impossible when x + y = f for some y already in S, or 2x = f.
    const bool banned = 2 * x == f || (f - x < x && member[f - x]);
    if (!banned) {
      member[x] = 1;
      self(self, x + 1);
      member[x] = 0;
    }
    if (!must) self(self, x + 1);
  };
  search(search, 1);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.gens_vector() < b.gens_vector(); });
  return out;
}

std::vector<NumericalSemigroup> brute_force_with_frobenius(Int f, Int cap) {
  std::vector<NumericalSemigroup> out;
  for (auto& s : all_with_frobenius(f, cap))
    if (is_symmetric_with_frobenius(s, f) && is_free(s)) out.push_back(std::move(s));
  return out;
}

std::vector<CensusFlags> census_flags(const std::vector<NumericalSemigroup>& free, bool parallel) {
  std::vector<CensusFlags> flags(free.size());
  for_each_index(free.size(), parallel, 0, [&](std::size_t i) {
    flags[i] = CensusFlags{is_telescopic(free[i]), is_universally_free(free[i])};
  });
  return flags;
}

std::vector<CensusFlags> census_flags_serial(const std::vector<NumericalSemigroup>& free) {
  return census_flags(free, false);
}

CensusRow census_row(Int f, bool parallel) {
  const auto free = enumerate_free_with_frobenius(f);
  const auto flags = census_flags(free, parallel);
  CensusRow row{f, free.size(), 0, 0};
  for (const auto& fl : flags) {
    row.telescopic += fl.telescopic ? 1 : 0;
    row.universally_free += fl.universally_free ? 1 : 0;
    ensure(!fl.universally_free || fl.telescopic, "universally free semigroup is not telescopic");
  }
  ensure(row.universally_free <= row.telescopic && row.telescopic <= row.free, "census counts out of order");
  return row;
}

std::string conjecture_name(Conjecture c) {
  switch (c) {
    case Conjecture::kCircuitsInMarkov: return "1";
    case Conjecture::kMinimalBasesEverywhere: return "2";
    case Conjecture::kGluingSplit: return "glue";
  }
  throw InternalConsistencyError("unknown conjecture");
}

Conjecture conjecture_from_name(const std::string& name) {
  if (name == "1") return Conjecture::kCircuitsInMarkov;
  if (name == "2") return Conjecture::kMinimalBasesEverywhere;
  if (name == "glue") return Conjecture::kGluingSplit;
  throw ValidationError("unknown conjecture '" + name + "' (expected 1, 2 or glue)");
}

void ScanJob::validate() const {
  if (dim < 2 || dim > 8) throw ValidationError("scan dimension must be between 2 and 8");
  if (min < 1 || max < min) throw ValidationError("scan range must satisfy 1 <= min <= max");
  if (static_cast<std::size_t>(max - min + 1) < dim) throw ValidationError("scan range holds fewer values than the dimension");
  if (conjectures.empty()) throw ValidationError("scan needs at least one conjecture");
  std::set<Conjecture> unique(conjectures.begin(), conjectures.end());
  if (unique.size() != conjectures.size()) throw ValidationError("scan conjectures must be distinct");
  if (checkpoint_every == 0) throw ValidationError("checkpoint interval must be positive");
}

std::uint64_t tuple_count(const ScanJob& job) {
  const auto values = static_cast<std::uint64_t>(job.max - job.min + 1);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 0; i < job.dim; ++i) c = c * (values - i) / (i + 1);
  if (c > static_cast<unsigned __int128>(UINT64_MAX)) throw ResourceLimitError("scan range is too large");
  return static_cast<std::uint64_t>(c);
}

namespace {

std::vector<Int> first_tuple(const ScanJob& job) {
  std::vector<Int> t(job.dim);
  for (std::size_t i = 0; i < job.dim; ++i) t[i] = job.min + static_cast<Int>(i);
  return t;
}

bool next_tuple(std::vector<Int>& t, Int max) {
  const std::size_t k = t.size();
  for (std::size_t i = k; i-- > 0;) {
    if (t[i] < max - static_cast<Int>(k - 1 - i)) {
      ++t[i];
      for (std::size_t j = i + 1; j < k; ++j) t[j] = t[j - 1] + 1;
      return true;
    }
  }
  return false;
}

Json gens_json(std::span<const Int> g) { return Json(std::vector<Int>(g.begin(), g.end())); }

std::string evaluate_one(const NumericalSemigroup& s, Conjecture c, bool uf, const Budget& budget) {
  Json w;
  switch (c) {
    case Conjecture::kCircuitsInMarkov: {
      const BasisSet circ = circuits(s);
      const BasisSet markov = universal_markov(s);
      const bool inside = circ.subset_of(markov);
      if (inside == uf) return {};
      w["circuits_in_markov"] = inside;
      w["universally_free"] = uf;
      if (!inside) {
        for (const auto& b : circ.elements())
          if (!markov.contains(b)) {
            w["circuit"] = b.to_string();
            break;
          }
      } else if (auto fail = universal_freeness_failure(s)) {
        w["element"] = fail->element;
        w["subset"] = fail->subset;
      }
      break;
    }
    case Conjecture::kMinimalBasesEverywhere: {
      const std::size_t mu = minimal_markov(s).size();
      const bool all = every_reduced_basis_has_size(s, mu, budget);
      if (all == uf) return {};
      w["all_bases_minimal"] = all;
      w["universally_free"] = uf;
      w["minimal_markov_size"] = mu;
      break;
    }
    case Conjecture::kGluingSplit: {
      const auto split = universally_free_split(s);
      if (split.has_value() == uf) return {};
      w["split"] = split ? Json::array({gens_json(split->first), gens_json(split->second)}) : Json();
      w["universally_free"] = uf;
      break;
    }
  }
  return w.dump();
}

}  // namespace

std::vector<Finding> evaluate_tuple(const std::vector<Int>& tuple, const std::vector<Conjecture>& conjectures,
                                    const Budget& budget) {
  std::vector<Finding> out;
  if (gcd_of(tuple) != 1) return out;
  std::vector<Int> sorted = tuple;
  std::sort(sorted.begin(), sorted.end());
  if (minimal_generators(sorted) != sorted || sorted != tuple) return out;
  const NumericalSemigroup s(tuple, Normalize::kStrict);
  const Budget local = budget.with_tuple_deadline();
  std::optional<bool> uf;
  for (Conjecture c : conjectures) {
    try {
      if (!uf) uf = is_universally_free(s);
      std::string w = evaluate_one(s, c, *uf, local);
      if (!w.empty()) out.push_back(Finding{tuple, c, "counterexample", std::move(w)});
    } catch (const ResourceLimitError& e) {
      out.push_back(Finding{tuple, c, "skipped", Json{{"reason", e.what()}}.dump()});
    }
  }
  return out;
}

std::string finding_line(const Finding& f) {
  Json j;
  j["tuple"] = f.tuple;
  j["predicate"] = conjecture_name(f.conjecture);
  j["verdict"] = f.verdict;
  j["witness"] = Json::parse(f.witness);
  return j.dump();
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

Json job_header(const ScanJob& job) {
  Json names = Json::array();
  for (Conjecture c : job.conjectures) names.push_back(conjecture_name(c));
  return Json{{"job", {{"dim", job.dim}, {"min", job.min}, {"max", job.max}, {"conjectures", names}}}};
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

std::string cursor_line(const ScanSummary& s) {
  return Json{{"cursor", s.cursor}, {"emitted", s.emitted}, {"hash", hex(s.hash)}}.dump();
}

// Restores the state recorded by the last cursor line and truncates the file there.
ScanSummary resume(const ScanJob& job, const std::string& path) {
  ScanSummary state;
  state.hash = fnv1a("");
  std::ifstream in(path, std::ios::binary);
  std::string line;
  std::uint64_t offset = 0, keep = 0;
  bool header = false;
  ScanSummary running = state, last = state;
  while (std::getline(in, line)) {
    offset += line.size() + 1;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception&) {
      break;  // torn tail from an interrupted write
    }
    if (!header) {
      if (j != job_header(job)) throw ValidationError("checkpoint " + path + " belongs to a different scan job");
      header = true;
      keep = offset;
      continue;
    }
    if (j.contains("cursor")) {
      running.cursor = j.at("cursor").get<std::uint64_t>();
      if (j.at("emitted").get<std::uint64_t>() != running.emitted || j.at("hash").get<std::string>() != hex(running.hash))
        throw ValidationError("checkpoint " + path + " failed its integrity check");
      last = running;
      keep = offset;
    } else {
      running.emitted += 1;
      running.hash = fnv1a(line + "\n", running.hash);
      if (j.at("verdict") == "skipped") running.skipped += 1;
    }
  }
  if (!header) throw ValidationError("checkpoint " + path + " has no job header");
  in.close();
  std::filesystem::resize_file(path, keep);
  return last;
}

}  // namespace

ScanSummary scan(const ScanJob& job, std::ostream& findings, bool parallel) {
  job.validate();
  const std::uint64_t total = tuple_count(job);
  ScanSummary state;
  state.hash = fnv1a("");
  std::ofstream log;
  if (!job.checkpoint.empty()) {
    const bool existing = std::filesystem::exists(job.checkpoint) && std::filesystem::file_size(job.checkpoint) > 0;
    if (existing) state = resume(job, job.checkpoint);
    log.open(job.checkpoint, std::ios::binary | std::ios::app);
    if (!log) throw ValidationError("cannot open checkpoint " + job.checkpoint);
    if (!existing) log << job_header(job).dump() << '\n';
  }
  if (state.cursor >= total) {
    state.complete = true;
    return state;
  }

  std::vector<Int> tuple = first_tuple(job);
  for (std::uint64_t i = 0; i < state.cursor; ++i) next_tuple(tuple, job.max);

  const std::uint64_t stop = job.stop_after ? std::min(total, state.cursor + *job.stop_after) : total;
  const std::uint64_t block = job.checkpoint_every;
  while (state.cursor < stop) {
    const std::uint64_t end = std::min(stop, (state.cursor / block + 1) * block);
    std::vector<std::vector<Int>> batch;
    for (std::uint64_t i = state.cursor; i < end; ++i) {
      batch.push_back(tuple);
      next_tuple(tuple, job.max);
    }
    std::vector<std::vector<Finding>> results(batch.size());
    for_each_index(batch.size(), parallel, job.jobs,
                   [&](std::size_t i) { results[i] = evaluate_tuple(batch[i], job.conjectures, job.budget); });
    for (const auto& per_tuple : results)
      for (const Finding& f : per_tuple) {
        const std::string line = finding_line(f) + "\n";
        findings << line;
        if (log.is_open()) log << line;
        state.emitted += 1;
        state.hash = fnv1a(line, state.hash);
        if (f.verdict == "skipped") state.skipped += 1;
      }
    state.cursor = end;
    if (log.is_open() && (end % block == 0 || end == total)) {
      log << cursor_line(state) << '\n';
      log.flush();
    }
  }
  findings.flush();
  state.complete = state.cursor == total;
  return state;
}

std::vector<Finding> scan_serial(const ScanJob& job) {
  job.validate();
  std::vector<Finding> out;
  std::vector<Int> tuple = first_tuple(job);
  do {
    auto found = evaluate_tuple(tuple, job.conjectures, job.budget);
    out.insert(out.end(), found.begin(), found.end());
  } while (next_tuple(tuple, job.max));
  return out;
}

}  // namespace torbase
