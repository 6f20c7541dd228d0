#include "torbase/serialize.hpp"

#include "torbase/errors.hpp"

namespace torbase {

namespace {

// Wraps nlohmann access errors as validation errors.
template <typename F>
auto parsing(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(); }
std::optional<bool> optional_bool(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<bool>();
}

Json partition_json(const GluingPartition& p) { return Json::array({p.first, p.second}); }
GluingPartition partition_from(const Json& j) {
  return GluingPartition{j.at(0).get<std::vector<Int>>(), j.at(1).get<std::vector<Int>>()};
}

}  // namespace

Json to_json(const NumericalSemigroup& s) { return Json{{"gens", s.gens_vector()}}; }

NumericalSemigroup semigroup_from_json(const Json& j) {
  return parsing("semigroup", [&] { return NumericalSemigroup(j.at("gens").get<std::vector<Int>>(), Normalize::kStrict); });
}

Json to_json(const KernelBinomial& b) { return Json{{"u", b.positive()}, {"v", b.negative()}}; }

KernelBinomial binomial_from_json(const Json& j, std::span<const Int> gens) {
  return parsing("binomial", [&] {
    const auto u = j.at("u").get<Vec>();
    const auto v = j.at("v").get<Vec>();
    if (u.size() != gens.size() || v.size() != gens.size()) throw ValidationError("binomial has the wrong length");
    return KernelBinomial::from_pair(u, v, gens);
  });
}

Json to_json(const BasisSet& b) {
  Json elements = Json::array();
  for (const auto& e : b.elements()) elements.push_back(to_json(e));
  Json meta = Json::object();
  for (const auto& [k, v] : b.meta()) meta[k] = v;
  return Json{{"kind", std::string(kind_name(b.kind()))}, {"elements", elements}, {"meta", meta}};
}

BasisSet basis_set_from_json(const Json& j, std::span<const Int> gens) {
  return parsing("basis", [&] {
    std::vector<KernelBinomial> elements;
    for (const auto& e : j.at("elements")) elements.push_back(binomial_from_json(e, gens));
    BasisSet out(kind_from_name(j.at("kind").get<std::string>()), std::move(elements));
    for (const auto& [k, v] : j.at("meta").items()) out.meta()[k] = v.get<std::string>();
    return out;
  });
}

Json to_json(const MonomialOrder& o) { return Json{{"weights", o.weights()}, {"tiebreak", o.tiebreak()}}; }

MonomialOrder order_from_json(const Json& j) {
  return parsing("order", [&] {
    return MonomialOrder(j.at("weights").get<Vec>(), j.at("tiebreak").get<std::vector<std::size_t>>());
  });
}

Json to_json(const MarkedBasis& g) {
  Json elements = Json::array();
  for (const auto& m : g.elements) {
    // u is the sign-normalized positive part; lead says which side is leading
    const Vec z = m.normal();
    const auto first = std::find_if(z.begin(), z.end(), [](Int x) { return x != 0; });
    const bool lead_is_u = first == z.end() || *first > 0;
    elements.push_back(Json{{"u", lead_is_u ? m.lead : m.trail}, {"v", lead_is_u ? m.trail : m.lead},
                            {"lead", lead_is_u ? "u" : "v"}});
  }
  return Json{{"order", to_json(g.order)}, {"elements", elements}};
}

MarkedBasis marked_basis_from_json(const Json& j) {
  return parsing("marked basis", [&] {
    MarkedBasis g;
    g.order = order_from_json(j.at("order"));
    for (const auto& e : j.at("elements")) {
      Vec u = e.at("u").get<Vec>(), v = e.at("v").get<Vec>();
      const std::string lead = e.at("lead").get<std::string>();
      if (lead != "u" && lead != "v") throw ValidationError("lead must be \"u\" or \"v\"");
      if (lead == "u")
        g.elements.push_back(MarkedBinomial{std::move(u), std::move(v)});
      else
        g.elements.push_back(MarkedBinomial{std::move(v), std::move(u)});
    }
    std::sort(g.elements.begin(), g.elements.end());
    return g;
  });
}

Json to_json(const ClassificationReport& r) {
  Json families = Json::object();
  for (std::size_t i = 0; i < kFamilyCount; ++i) families["F" + std::to_string(i)] = optional_bool(r.families[i]);
  Json robustness;
  if (r.robustness)
    robustness = Json{{"robust", r.robustness->robust},
                      {"generalized_robust", r.robustness->generalized_robust},
                      {"strongly_robust", r.robustness->strongly_robust},
                      {"unique_betti", r.robustness->unique_betti}};
  Json witness = Json::object();
  witness["free_arrangement"] = r.free_arrangement ? Json(*r.free_arrangement) : Json();
  witness["failure"] = r.failure ? Json{{"element", r.failure->element}, {"subset", r.failure->subset}} : Json();
  Json gluings = Json::array();
  for (const auto& p : r.gluings) gluings.push_back(partition_json(p));
  return Json{{"gens", r.gens},
              {"ci", r.ci},
              {"free", r.free},
              {"telescopic", r.telescopic},
              {"universally_free", r.universally_free},
              {"betti_divisible", r.betti_divisible},
              {"circuit", r.circuit},
              {"robustness", robustness},
              {"families", families},
              {"witness", witness},
              {"gluings", gluings},
              {"notes", r.notes}};
}

ClassificationReport report_from_json(const Json& j) {
  return parsing("classification", [&] {
    ClassificationReport r;
    r.gens = j.at("gens").get<std::vector<Int>>();
    r.ci = j.at("ci").get<bool>();
    r.free = j.at("free").get<bool>();
    r.telescopic = j.at("telescopic").get<bool>();
    r.universally_free = j.at("universally_free").get<bool>();
    r.betti_divisible = j.at("betti_divisible").get<bool>();
    r.circuit = j.at("circuit").get<bool>();
    if (const auto& rb = j.at("robustness"); !rb.is_null())
      r.robustness = RobustnessFlags{rb.at("robust").get<bool>(), rb.at("generalized_robust").get<bool>(),
                                     rb.at("strongly_robust").get<bool>(), rb.at("unique_betti").get<bool>()};
    for (std::size_t i = 0; i < kFamilyCount; ++i) r.families[i] = optional_bool(j.at("families").at("F" + std::to_string(i)));
    const auto& w = j.at("witness");
    if (!w.at("free_arrangement").is_null()) r.free_arrangement = w.at("free_arrangement").get<std::vector<Int>>();
    if (const auto& f = w.at("failure"); !f.is_null())
      r.failure = FreenessFailure{f.at("element").get<Int>(), f.at("subset").get<std::vector<Int>>()};
    for (const auto& p : j.at("gluings")) r.gluings.push_back(partition_from(p));
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
  });
}

Json to_json(const Ed3Parameters& p) { return Json{{"d", {p.d1, p.d2, p.d3}}, {"f3", p.f3}}; }

Ed3Parameters ed3_from_json(const Json& j) {
  return parsing("ed3 parameters", [&] {
    const auto d = j.at("d").get<std::vector<Int>>();
    if (d.size() != 3) throw ValidationError("ed3 parameters need three d values");
    Ed3Parameters p{d[0], d[1], d[2], j.at("f3").get<Int>()};
    p.validate();
    return p;
  });
}

Json to_json(const CensusRow& r) {
  return Json{{"frobenius", r.frobenius}, {"free", r.free}, {"telescopic", r.telescopic}, {"universally_free", r.universally_free}};
}

CensusRow census_row_from_json(const Json& j) {
  return parsing("census row", [&] {
    return CensusRow{j.at("frobenius").get<Int>(), j.at("free").get<std::size_t>(), j.at("telescopic").get<std::size_t>(),
                     j.at("universally_free").get<std::size_t>()};
  });
}

Json to_json(const Finding& f) { return Json::parse(finding_line(f)); }

Finding finding_from_json(const Json& j) {
  return parsing("finding", [&] {
    return Finding{j.at("tuple").get<std::vector<Int>>(), conjecture_from_name(j.at("predicate").get<std::string>()),
                   j.at("verdict").get<std::string>(), j.at("witness").dump()};
  });
}

}  // namespace torbase
