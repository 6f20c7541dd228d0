#include "torbase/cli.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "torbase/census.hpp"
#include "torbase/classify.hpp"
#include "torbase/ed3.hpp"
#include "torbase/errors.hpp"
#include "torbase/graver.hpp"
#include "torbase/groebner.hpp"
#include "torbase/markov.hpp"
#include "torbase/serialize.hpp"

namespace torbase::cli {

namespace {

struct Options {
  bool json = false;
  std::optional<std::size_t> graver_cap;
  std::optional<std::size_t> fan_cap;
  std::optional<std::int64_t> tuple_timeout_ms;

  Budget budget() const {
    Budget b = Budget::from_env();
    if (graver_cap) b.graver_cap = *graver_cap;
    if (fan_cap) b.fan_cap = *fan_cap;
    if (tuple_timeout_ms) b.tuple_timeout_ms = *tuple_timeout_ms;
    return b;
  }
};

std::string monomial(const Vec& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += "x" + std::to_string(i + 1);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

std::string joined(const std::vector<Int>& v, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

NumericalSemigroup semigroup_from_args(const std::vector<Int>& gens, std::ostream& err) {
  NumericalSemigroup s(gens);
  if (s.was_normalized()) err << "note: generators normalized to " << s.to_string() << "\n";
  return s;
}

void print_basis(std::ostream& out, const std::string& title, const BasisSet& b) {
  out << title << " (" << b.size() << ")";
  if (auto it = b.meta().find("method"); it != b.meta().end()) out << " [" << it->second << "]";
  out << "\n";
  for (const auto& e : b.elements()) out << "  " << e.to_string() << "    degree " << e.degree() << "\n";
}

void print_marked(std::ostream& out, const MarkedBasis& g) {
  out << "order weights (" << joined(g.order.weights()) << ")\n";
  for (const auto& m : g.elements) out << "  " << monomial(m.lead) << " -> " << monomial(m.trail) << "\n";
}

const char* yes(bool b) { return b ? "yes" : "no"; }

// One basis by its command-line name.
BasisSet basis_by_name(const std::string& kind, const NumericalSemigroup& s, const Budget& budget) {
  if (kind == "circuits") return circuits(s);
  if (kind == "critical") return critical_binomials(s).basis;
  if (kind == "markov") return minimal_markov(s);
  if (kind == "umarkov") return universal_markov(s);
  if (kind == "graver") return graver(s, budget);
  if (kind == "ugb") return universal_groebner(s, budget);
  throw ValidationError("unknown kind '" + kind + "'");
}

const std::vector<std::string> kKinds{"circuits", "critical", "markov", "umarkov", "graver", "ugb"};

int cmd_bases(const Options& o, const std::vector<Int>& gens, const std::string& kind, std::ostream& out,
              std::ostream& err) {
  const auto s = semigroup_from_args(gens, err);
  const Budget budget = o.budget();
  if (kind != "all") {
    const BasisSet b = basis_by_name(kind, s, budget);
    if (o.json)
      out << to_json(b).dump() << "\n";
    else
      print_basis(out, kind + " of " + s.to_string(), b);
    return kExitOk;
  }
  Json all = Json::object();
  for (const auto& k : kKinds) {
    const BasisSet b = basis_by_name(k, s, budget);
    if (o.json)
      all[k] = to_json(b);
    else
      print_basis(out, k + " of " + s.to_string(), b);
  }
  if (o.json) out << all.dump() << "\n";
  return kExitOk;
}

int cmd_classify(const Options& o, const std::vector<Int>& gens, bool families, std::ostream& out, std::ostream& err) {
  const auto s = semigroup_from_args(gens, err);
  const auto r = classify(s, families, o.budget());
  if (o.json) {
    out << to_json(r).dump() << "\n";
    return kExitOk;
  }
  auto row = [&](const std::string& label, const std::string& value) {
    out << std::left << std::setw(24) << label << value << "\n";
  };
  row("semigroup", s.to_string());
  row("complete intersection", yes(r.ci));
  row("free", yes(r.free));
  row("telescopic", yes(r.telescopic));
  row("universally free", yes(r.universally_free));
  row("Betti divisible", yes(r.betti_divisible));
  row("circuit", yes(r.circuit));
  if (r.free_arrangement) row("free arrangement", "(" + joined(*r.free_arrangement) + ")");
  if (r.failure) row("first failure", std::to_string(r.failure->element) + " over {" + joined(r.failure->subset) + "}");
  for (const auto& g : r.gluings) row("gluing", "{" + joined(g.first) + "} + {" + joined(g.second) + "}");
  if (r.robustness) {
    row("robust", yes(r.robustness->robust));
    row("generalized robust", yes(r.robustness->generalized_robust));
    row("strongly robust", yes(r.robustness->strongly_robust));
  }
  if (families)
    for (std::size_t i = 0; i < kFamilyCount; ++i)
      row("F" + std::to_string(i), r.families[i] ? yes(*r.families[i]) : "unknown");
  for (const auto& n : r.notes) err << "note: " << n << "\n";
  return kExitOk;
}

int cmd_betti(const Options& o, const std::vector<Int>& gens, std::ostream& out, std::ostream& err) {
  const auto s = semigroup_from_args(gens, err);
  const auto betti = betti_elements(s);
  if (o.json)
    out << Json{{"gens", s.gens_vector()}, {"betti", betti}}.dump() << "\n";
  else
    out << "Betti(" << s.to_string() << ") = {" << joined(betti) << "}\n";
  return kExitOk;
}

int cmd_groebner(const Options& o, const std::vector<Int>& gens, const std::string& order, bool fan, bool sizes,
                 std::ostream& out, std::ostream& err) {
  const auto s = semigroup_from_args(gens, err);
  if (static_cast<int>(!order.empty()) + static_cast<int>(fan) + static_cast<int>(sizes) != 1)
    throw ValidationError("groebner needs exactly one of --order, --fan, --sizes");
  const Budget budget = o.budget();
  if (!order.empty()) {
    const auto g = reduced_groebner(s, MonomialOrder::parse(order, s.embedding_dimension()));
    if (o.json)
      out << to_json(g).dump() << "\n";
    else
      print_marked(out, g);
  } else if (fan) {
    const auto bases = groebner_fan(s, budget);
    if (o.json) {
      Json all = Json::array();
      for (const auto& g : bases) all.push_back(to_json(g));
      out << all.dump() << "\n";
    } else {
      out << bases.size() << " reduced Gröbner bases of " << s.to_string() << "\n";
      for (const auto& g : bases) print_marked(out, g);
    }
  } else {
    const auto counts = initial_ideal_generator_counts(s, budget);
    std::vector<Int> as_int(counts.begin(), counts.end());
    if (o.json)
      out << Json{{"gens", s.gens_vector()}, {"sizes", as_int}}.dump() << "\n";
    else
      out << "reduced basis sizes: " << joined(as_int, " ") << "\n";
  }
  return kExitOk;
}

int cmd_ed3(const Options& o, const std::vector<Int>& d, Int f3, bool verify, std::ostream& out) {
  if (d.size() != 3) throw ValidationError("--d needs three values d1,d2,d3");
  const Ed3Parameters p{d[0], d[1], d[2], f3};
  const auto s = p.semigroup();
  const auto bases = closed_form_bases(p);
  if (verify) {
    const Budget budget = o.budget();
    ensure(bases.markov.same_elements(universal_markov(s)), "closed-form Markov basis disagrees with the engine");
    ensure(bases.graver.same_elements(graver(s, budget)), "closed-form Graver basis disagrees with the engine");
    ensure(bases.circuits.same_elements(circuits(s)), "closed-form circuits disagree with the engine");
    ensure(bases.ugb.same_elements(universal_groebner(s, budget)), "closed-form universal Gröbner basis disagrees with the engine");
  }
  if (o.json) {
    Json j{{"params", to_json(p)},     {"gens", s.gens_vector()},          {"markov", to_json(bases.markov)},
           {"graver", to_json(bases.graver)}, {"circuits", to_json(bases.circuits)}, {"ugb", to_json(bases.ugb)},
           {"verified", verify}};
    out << j.dump() << "\n";
    return kExitOk;
  }
  out << "d = (" << joined(d) << "), f3 = " << f3 << ", semigroup " << s.to_string() << "\n";
  print_basis(out, "markov", bases.markov);
  print_basis(out, "graver", bases.graver);
  print_basis(out, "circuits", bases.circuits);
  print_basis(out, "ugb", bases.ugb);
  if (verify) out << "verified against the general engines\n";
  return kExitOk;
}

int cmd_census(const Options& o, Int f, std::optional<Int> brute_cap, std::ostream& out) {
  const auto free = enumerate_free_with_frobenius(f);
  if (brute_cap) {
    const auto oracle = brute_force_with_frobenius(f, *brute_cap);
    ensure(oracle == free, "gluing enumeration disagrees with brute force");
  }
  const auto flags = census_flags(free);
  CensusRow row{f, free.size(), 0, 0};
  for (const auto& fl : flags) {
    row.telescopic += fl.telescopic;
    row.universally_free += fl.universally_free;
  }
  ensure(row.universally_free <= row.telescopic && row.telescopic <= row.free, "census counts out of order");
  if (o.json) {
    Json j = to_json(row);
    Json list = Json::array();
    for (std::size_t i = 0; i < free.size(); ++i)
      list.push_back(Json{{"gens", free[i].gens_vector()},
                          {"telescopic", flags[i].telescopic},
                          {"universally_free", flags[i].universally_free}});
    j["brute_force_checked"] = brute_cap.has_value();
    j["semigroups"] = list;
    out << j.dump() << "\n";
    return kExitOk;
  }
  out << "Frobenius " << f << ": " << row.free << " free, " << row.telescopic << " telescopic, " << row.universally_free
      << " universally free\n";
  for (std::size_t i = 0; i < free.size(); ++i)
    out << "  " << free[i].to_string() << (flags[i].telescopic ? "  telescopic" : "")
        << (flags[i].universally_free ? "  universally free" : "") << "\n";
  if (brute_cap) out << "matches brute force\n";
  return kExitOk;
}

int cmd_scan(const Options& o, ScanJob job, const std::vector<std::string>& conjectures, std::ostream& out,
             std::ostream& err) {
  job.conjectures.clear();
  for (const auto& c : conjectures) job.conjectures.push_back(conjecture_from_name(c));
  job.budget = o.budget();
  const auto summary = scan(job, out);
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << summary.hash;
  err << "scanned " << summary.cursor << " of " << tuple_count(job) << " tuples, " << summary.emitted << " findings ("
      << summary.skipped << " skipped), hash " << hash.str() << (summary.complete ? "" : ", incomplete") << "\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toric bases and classification of numerical semigroups", "torbase"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Options o;
  app.add_flag("--json", o.json, "Machine-readable JSON output");
  app.add_option("--graver-cap", o.graver_cap, "Graver candidate budget (TORBASE_GRAVER_CAP)");
  app.add_option("--fan-cap", o.fan_cap, "Gröbner fan cone budget (TORBASE_FAN_CAP)");
  app.add_option("--tuple-timeout-ms", o.tuple_timeout_ms, "Per-tuple scan time budget (TORBASE_TUPLE_TIMEOUT_MS)");

  std::vector<Int> gens;
  std::string kind = "all";
  auto* bases = app.add_subcommand("bases", "Toric bases of a semigroup");
  bases->add_option("gens", gens, "Generators")->required();
  bases->add_option("--kind", kind, "Which basis")
      ->check(CLI::IsMember({"circuits", "critical", "markov", "umarkov", "graver", "ugb", "all"}));

  bool families = false;
  auto* cls = app.add_subcommand("classify", "Family membership and witnesses");
  cls->add_option("gens", gens, "Generators")->required();
  cls->add_flag("--families", families, "Also compute the basis-inclusion families");

  auto* betti = app.add_subcommand("betti", "Betti elements");
  betti->add_option("gens", gens, "Generators")->required();

  std::string order;
  bool fan = false, sizes = false;
  auto* gb = app.add_subcommand("groebner", "Reduced Gröbner bases");
  gb->add_option("gens", gens, "Generators")->required();
  gb->add_option("--order", order, "Weights w1,...,wn with optional :p1,...,pn tiebreak");
  gb->add_flag("--fan", fan, "Every reduced Gröbner basis");
  gb->add_flag("--sizes", sizes, "Sizes of every reduced Gröbner basis");

  std::vector<Int> d;
  Int f3 = 0;
  bool verify = false;
  auto* ed3 = app.add_subcommand("ed3", "Closed forms for three generators");
  ed3->add_option("--d", d, "d1,d2,d3")->required()->delimiter(',')->expected(3);
  ed3->add_option("--f3", f3, "f3")->required();
  ed3->add_flag("--verify", verify, "Check against the general engines");

  Int frobenius = 0;
  std::optional<Int> brute_cap;
  auto* census = app.add_subcommand("census", "Free semigroups with a given Frobenius number");
  census->add_option("--frobenius", frobenius, "Frobenius number")->required();
  census->add_option("--brute-cap", brute_cap, "Cross-check by exhaustive search up to this cap");

  ScanJob job;
  std::vector<std::string> conjectures;
  auto* sc = app.add_subcommand("scan", "Conjecture scan over generator tuples");
  sc->add_option("--dim", job.dim, "Embedding dimension")->required();
  sc->add_option("--min", job.min, "Smallest generator")->required();
  sc->add_option("--max", job.max, "Largest generator")->required();
  sc->add_option("--conjecture", conjectures, "1, 2 or glue (repeatable or comma separated)")
      ->required()
      ->delimiter(',');
  sc->add_option("--checkpoint", job.checkpoint, "Append-only findings log, resumed when present");
  sc->add_option("--checkpoint-every", job.checkpoint_every, "Tuples between cursor records");
  sc->add_option("--jobs", job.jobs, "Worker threads (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (bases->parsed()) return cmd_bases(o, gens, kind, out, err);
    if (cls->parsed()) return cmd_classify(o, gens, families, out, err);
    if (betti->parsed()) return cmd_betti(o, gens, out, err);
    if (gb->parsed()) return cmd_groebner(o, gens, order, fan, sizes, out, err);
    if (ed3->parsed()) return cmd_ed3(o, d, f3, verify, out);
    if (census->parsed()) return cmd_census(o, frobenius, brute_cap, out);
    if (sc->parsed()) return cmd_scan(o, job, conjectures, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const InternalConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"torbase"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace torbase::cli
