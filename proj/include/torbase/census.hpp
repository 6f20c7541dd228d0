#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "torbase/config.hpp"
#include "torbase/semigroup.hpp"

namespace torbase {

/// All free numerical semigroups with Frobenius number f, sorted by generators.
/// Built by gluing a single generator to a scaled free semigroup; every result
/// is certified by recomputing its Frobenius number and freeness.
std::vector<NumericalSemigroup> enumerate_free_with_frobenius(Int f);

/// Exhaustive oracle: every numerical semigroup with Frobenius number f,
/// filtered by freeness. Refuses f > cap.
std::vector<NumericalSemigroup> brute_force_with_frobenius(Int f, Int cap = 40);

/// Every numerical semigroup with Frobenius number f (no filter), f <= cap.
std::vector<NumericalSemigroup> all_with_frobenius(Int f, Int cap = 40);

struct CensusRow {
  Int frobenius = 0;
  std::size_t free = 0;
  std::size_t telescopic = 0;
  std::size_t universally_free = 0;
  friend bool operator==(const CensusRow&, const CensusRow&) = default;
};

struct CensusFlags {
  bool telescopic = false;
  bool universally_free = false;
  friend bool operator==(const CensusFlags&, const CensusFlags&) = default;
};

/// Per-semigroup flags, computed in parallel or serially; results agree.
std::vector<CensusFlags> census_flags(const std::vector<NumericalSemigroup>& free, bool parallel = true);
std::vector<CensusFlags> census_flags_serial(const std::vector<NumericalSemigroup>& free);

/// Counts for one Frobenius number; asserts nsf <= nt <= nf.
CensusRow census_row(Int f, bool parallel = true);

enum class Conjecture { kCircuitsInMarkov, kMinimalBasesEverywhere, kGluingSplit };

std::string conjecture_name(Conjecture c);
Conjecture conjecture_from_name(const std::string& name);

struct ScanJob {
  std::size_t dim = 4;
  Int min = 10;
  Int max = 30;
  std::vector<Conjecture> conjectures{Conjecture::kCircuitsInMarkov};
  std::string checkpoint;            // empty: no checkpoint file
  std::size_t checkpoint_every = 10'000;
  int jobs = 0;                      // 0: OpenMP default
  std::optional<std::uint64_t> stop_after;  // tuples to process this run
  Budget budget;

  void validate() const;
};

/// Lexicographic increasing tuples of the job, including non-minimal ones.
std::uint64_t tuple_count(const ScanJob& job);

struct Finding {
  std::vector<Int> tuple;
  Conjecture conjecture = Conjecture::kCircuitsInMarkov;
  std::string verdict;  // "counterexample" or "skipped"
  std::string witness;  // compact JSON object text
  friend bool operator==(const Finding&, const Finding&) = default;
};

/// Findings for a single tuple, in conjecture order. Empty for tuples that
/// are not minimal generating sets of a numerical semigroup.
std::vector<Finding> evaluate_tuple(const std::vector<Int>& tuple, const std::vector<Conjecture>& conjectures,
                                    const Budget& budget);

struct ScanSummary {
  std::uint64_t cursor = 0;   // tuples consumed in total
  std::uint64_t emitted = 0;  // findings emitted in total
  std::uint64_t hash = 0;     // FNV-1a of the findings text
  std::uint64_t skipped = 0;  // findings with verdict "skipped"
  bool complete = false;
};

/// Runs the scan. Finding lines go to `findings`; when job.checkpoint is set
/// the same lines plus cursor records are appended there, and an existing file
/// is resumed from its last cursor record.
ScanSummary scan(const ScanJob& job, std::ostream& findings, bool parallel = true);

/// Serial reference of scan without checkpointing, used by tests and benchmarks.
std::vector<Finding> scan_serial(const ScanJob& job);

std::string finding_line(const Finding& f);
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 14695981039346656037ULL);

}  // namespace torbase
