#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "torbase/census.hpp"
#include "torbase/classify.hpp"
#include "torbase/errors.hpp"
#include "torbase/markov.hpp"

namespace torbase {
namespace {

std::vector<std::vector<Int>> gens_of(const std::vector<NumericalSemigroup>& v) {
  std::vector<std::vector<Int>> out;
  for (const auto& s : v) out.push_back(s.gens_vector());
  return out;
}

bool contains_gens(const std::vector<NumericalSemigroup>& v, std::vector<Int> g) {
  const auto all = gens_of(v);
  return std::find(all.begin(), all.end(), g) != all.end();
}

// Every subset of [1, f) that closes up to a semigroup with Frobenius number f.
std::size_t subset_oracle_count(Int f) {
  std::size_t count = 0;
  const std::uint64_t limit = std::uint64_t{1} << (f - 1);
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    auto in = [&](Int x) { return x > f || (x >= 1 && x < f && ((mask >> (x - 1)) & 1)); };
    bool ok = true;
    for (Int x = 1; x < f && ok; ++x)
      for (Int y = x; y < f && ok; ++y)
        if (in(x) && in(y) && !in(x + y)) ok = false;
    count += ok ? 1 : 0;
  }
  return count;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string temp_path(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("torbase_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove(p);
  return p.string();
}

TEST(Census, GoldenFrobeniusLists) {
  EXPECT_EQ(gens_of(enumerate_free_with_frobenius(1)), (std::vector<std::vector<Int>>{{2, 3}}));
  EXPECT_EQ(gens_of(brute_force_with_frobenius(1)), (std::vector<std::vector<Int>>{{2, 3}}));
  EXPECT_EQ(gens_of(brute_force_with_frobenius(3)), (std::vector<std::vector<Int>>{{2, 5}}));
  EXPECT_TRUE(contains_gens(all_with_frobenius(3), {4, 5, 6, 7}));
  EXPECT_TRUE(contains_gens(enumerate_free_with_frobenius(11), {4, 6, 9}));
  const auto seven = brute_force_with_frobenius(7);
  EXPECT_TRUE(contains_gens(seven, {2, 9}));
  EXPECT_TRUE(contains_gens(seven, {4, 5, 6}));
  EXPECT_TRUE(enumerate_free_with_frobenius(10).empty());
  EXPECT_THROW(brute_force_with_frobenius(41), ValidationError);
  EXPECT_THROW(enumerate_free_with_frobenius(0), ValidationError);
}

TEST(Census, GapSearchMatchesSubsetOracle) {
  for (Int f = 1; f <= 14; ++f) EXPECT_EQ(all_with_frobenius(f).size(), subset_oracle_count(f)) << f;
}

TEST(Census, GluingEnumerationMatchesBruteForce) {
  for (Int f = 1; f <= 25; ++f) {
    EXPECT_EQ(gens_of(enumerate_free_with_frobenius(f)), gens_of(brute_force_with_frobenius(f))) << f;
  }
}

TEST(Census, PublishedRows) {
  EXPECT_EQ(census_row(101), (CensusRow{101, 194, 86, 5}));
  EXPECT_EQ(census_row(131), (CensusRow{131, 387, 171, 7}));
}

TEST(CensusProperty, RowsAreOrderedAndCertified) {
  for (Int f = 1; f <= 61; f += 2) {
    const auto free = enumerate_free_with_frobenius(f);
    for (const auto& s : free) {
      EXPECT_EQ(s.frobenius(), f);
      EXPECT_TRUE(is_free(s)) << s.to_string();
    }
    const auto row = census_row(f);
    EXPECT_LE(row.universally_free, row.telescopic);
    EXPECT_LE(row.telescopic, row.free);
  }
}

TEST(CensusProperty, ParallelFlagsMatchSerial) {
  const auto free = enumerate_free_with_frobenius(75);
  ASSERT_FALSE(free.empty());
  EXPECT_EQ(census_flags(free, true), census_flags_serial(free));
}

TEST(Scan, PublishedTuples) {
  const NumericalSemigroup a({390, 546, 770, 1155});
  auto split = universally_free_split(a);
  ASSERT_TRUE(split);
  EXPECT_EQ(split->first, (std::vector<Int>{390, 546}));
  EXPECT_EQ(split->second, (std::vector<Int>{770, 1155}));
  EXPECT_EQ(lcm_of(a.gens()), 30030);
  const std::vector<Conjecture> all{Conjecture::kCircuitsInMarkov, Conjecture::kMinimalBasesEverywhere,
                                    Conjecture::kGluingSplit};
  EXPECT_TRUE(evaluate_tuple({390, 546, 770, 1155}, all, {}).empty());

  const NumericalSemigroup b({30, 105, 546, 770});
  EXPECT_FALSE(is_universally_free(b));
  const auto betti = betti_elements(b);
  EXPECT_EQ(std::count(betti.begin(), betti.end(), lcm(546, 770)), 0);
  EXPECT_FALSE(universally_free_split(b));
  EXPECT_TRUE(evaluate_tuple({30, 105, 546, 770}, all, {}).empty());

  EXPECT_TRUE(evaluate_tuple({4, 8, 9}, all, {}).empty());  // not minimal
  EXPECT_TRUE(evaluate_tuple({4, 6, 10}, all, {}).empty());  // gcd 2
}

TEST(Scan, SmallRangeHasNoCounterexamples) {
  ScanJob job;
  job.dim = 4;
  job.min = 10;
  job.max = 30;
  job.conjectures = {Conjecture::kCircuitsInMarkov, Conjecture::kGluingSplit};
  std::ostringstream out;
  const auto summary = scan(job, out);
  EXPECT_TRUE(summary.complete);
  EXPECT_EQ(summary.cursor, tuple_count(job));
  EXPECT_EQ(summary.emitted, 0u) << out.str();
  EXPECT_TRUE(out.str().empty());
}

ScanJob skipping_job(const std::string& checkpoint) {
  // A tiny cone budget makes conjecture 2 skip the larger fans, so the log is nonempty.
  ScanJob job;
  job.dim = 3;
  job.min = 5;
  job.max = 24;
  job.conjectures = {Conjecture::kCircuitsInMarkov, Conjecture::kMinimalBasesEverywhere};
  job.checkpoint = checkpoint;
  job.checkpoint_every = 97;
  job.budget.fan_cap = 3;
  return job;
}

TEST(Scan, ResumeReproducesTheLog) {
  const std::string full = temp_path("full");
  std::ostringstream full_out;
  const auto whole = scan(skipping_job(full), full_out);
  ASSERT_TRUE(whole.complete);
  ASSERT_GT(whole.emitted, 0u);

  const std::string pieces = temp_path("pieces");
  ScanJob job = skipping_job(pieces);
  std::uint64_t rounds = 0;
  for (std::uint64_t step : {130u, 1u, 250u, 97u, 400u}) {
    job.stop_after = step;
    std::ostringstream sink;
    scan(job, sink);
    ++rounds;
  }
  job.stop_after.reset();
  std::ostringstream sink;
  const auto resumed = scan(job, sink);
  EXPECT_TRUE(resumed.complete);
  EXPECT_EQ(resumed.emitted, whole.emitted);
  EXPECT_EQ(resumed.hash, whole.hash);
  EXPECT_EQ(slurp(pieces), slurp(full));

  // A second pass over a finished log emits nothing.
  std::ostringstream again;
  EXPECT_TRUE(scan(job, again).complete);
  EXPECT_TRUE(again.str().empty());
  std::filesystem::remove(full);
  std::filesystem::remove(pieces);
}

TEST(Scan, TornTailIsDiscarded) {
  const std::string full = temp_path("torn_full");
  std::ostringstream ignore;
  scan(skipping_job(full), ignore);
  const std::string torn = temp_path("torn");
  ScanJob job = skipping_job(torn);
  job.stop_after = 150;
  scan(job, ignore);
  {
    std::ofstream append(torn, std::ios::app | std::ios::binary);
    append << "{\"tuple\":[5,6,";
  }
  job.stop_after.reset();
  scan(job, ignore);
  EXPECT_EQ(slurp(torn), slurp(full));
  std::filesystem::remove(full);
  std::filesystem::remove(torn);
}

TEST(Scan, CheckpointGuards) {
  const std::string path = temp_path("guard");
  ScanJob job = skipping_job(path);
  job.stop_after = 200;
  std::ostringstream sink;
  scan(job, sink);
  ScanJob other = job;
  other.max = 25;
  EXPECT_THROW(scan(other, sink), ValidationError);

  std::string text = slurp(path);
  const auto at = text.find("\"hash\":\"");
  ASSERT_NE(at, std::string::npos);
  text[at + 8] = text[at + 8] == '0' ? '1' : '0';
  std::ofstream(path, std::ios::binary | std::ios::trunc) << text;
  EXPECT_THROW(scan(job, sink), ValidationError);
  std::filesystem::remove(path);

  ScanJob bad;
  bad.min = 20;
  bad.max = 21;
  EXPECT_THROW(bad.validate(), ValidationError);
  EXPECT_THROW(conjecture_from_name("3"), ValidationError);
}

TEST(ScanProperty, ParallelMatchesSerialReference) {
  ScanJob job = skipping_job("");
  std::ostringstream parallel_out, serial_out;
  const auto p = scan(job, parallel_out, true);
  const auto s = scan(job, serial_out, false);
  EXPECT_EQ(parallel_out.str(), serial_out.str());
  EXPECT_EQ(p.hash, s.hash);
  std::string reference;
  for (const auto& f : scan_serial(job)) reference += finding_line(f) + "\n";
  EXPECT_EQ(reference, serial_out.str());
}

}  // namespace
}  // namespace torbase
