#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tvx/funceq.hpp"
#include "tvx/gw.hpp"
#include "tvx/quiver.hpp"
#include "tvx/series.hpp"
#include "tvx/wallcross.hpp"

namespace tvx {

using json = nlohmann::ordered_json;

inline json to_json(const Rational& r) { return r.str(); }

inline json to_json(const DimVector& d) { return json{{"p1", d.p1}, {"p2", d.p2}}; }

inline DimVector dimvec_from_json(const json& j) {
  return {j.at("p1").get<std::vector<int>>(), j.at("p2").get<std::vector<int>>()};
}

inline json to_json(const TruncatedSeries& s) {
  json vars = json::array();
  for (const auto& v : s.ctx().variables())
    vars.push_back({{"name", v.name}, {"axis", v.axis == Axis::X ? "x" : "y"}, {"weight", v.weight}});
  std::vector<const Term*> sorted;
  for (const auto& t : s.terms()) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(), [](const Term* a, const Term* b) { return Monomial::lex_less(a->mono, b->mono); });
  json terms = json::array();
  for (const Term* t : sorted) terms.push_back({{"exponents", t->mono.exponents(s.ctx().size())}, {"coeff", t->coeff.str()}});
  return json{{"context", {{"variables", vars}}}, {"order", s.order()}, {"terms", terms}};
}

inline TruncatedSeries series_from_json(const json& j) {
  std::vector<VariableSpec> vars;
  for (const auto& v : j.at("context").at("variables")) {
    std::string axis = v.at("axis").get<std::string>();
    if (axis != "x" && axis != "y") throw std::invalid_argument("axis must be x or y");
    vars.push_back({v.at("name").get<std::string>(), axis == "x" ? Axis::X : Axis::Y, v.at("weight").get<int>()});
  }
  ContextPtr ctx = make_context(std::move(vars));
  std::vector<Term> terms;
  for (const auto& t : j.at("terms")) {
    auto e = t.at("exponents").get<std::vector<int>>();
    if (e.size() != ctx->size()) throw std::invalid_argument("exponent vector has the wrong length");
    terms.push_back({Monomial::from_exponents(e), Rational::parse(t.at("coeff").get<std::string>())});
  }
  return TruncatedSeries::from_terms(ctx, j.at("order").get<int>(), terms);
}

inline json to_json(const Scattering& s) {
  json out = json::array();
  for (const auto& w : s.walls()) out.push_back({{"a", w.a}, {"b", w.b}, {"f", to_json(w.f)}});
  return out;
}

inline json to_json(const ChiTable& t) {
  json out = json::array();
  for (const auto& [d, e] : t.entries())
    out.push_back({{"p1", d.p1}, {"p2", d.p2}, {"chi", e.chi}, {"provenance", provenance_name(e.provenance)}});
  return out;
}

inline ChiTable chi_table_from_json(const json& j) {
  ChiTable t;
  for (const auto& e : j) {
    std::string p = e.value("provenance", "fixture");
    Provenance prov = p == "direct" ? Provenance::Direct
                      : p == "extracted" ? Provenance::Extracted
                      : p == "closed-form" ? Provenance::ClosedForm
                                           : Provenance::Fixture;
    t.set(dimvec_from_json(e), e.at("chi").get<long>(), prov);
  }
  return t;
}

inline json to_json(const GWTable& t) {
  json refined = json::array();
  for (const auto& [d, n] : t.refined) refined.push_back({{"p1", d.p1}, {"p2", d.p2}, {"N", n.str()}});
  json agg = json::array();
  for (const auto& [k, n] : t.aggregated) agg.push_back({{"k", k}, {"N", n.str()}});
  return json{{"a", t.a}, {"b", t.b}, {"refined", refined}, {"aggregated", agg}};
}

inline json to_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

// A wall given as a product of binomial factors (1 + c m)^power.
struct FixtureFactor {
  std::vector<int> exponents;
  Rational coeff;
  long power = 1;
};

struct FixtureWall {
  int a = 0;
  int b = 0;
  std::vector<FixtureFactor> factors;
};

struct WallFixture {
  std::string name;
  std::string description;
  int l1 = 0;
  int l2 = 0;
  int order = 0;
  bool complete = false;  // no walls other than the listed ones
  std::vector<FixtureWall> walls;
};

inline std::string fixture_dir() {
  if (const char* env = std::getenv("TVX_FIXTURE_DIR")) return env;
#ifdef TVX_FIXTURE_DIR
  return TVX_FIXTURE_DIR;
#else
  return "fixtures";
#endif
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return json::parse(in);
}

// Accepts a path to a JSON file or the bare name of a file in the fixture directory.
inline std::string resolve_fixture(const std::string& name_or_path) {
  if (std::filesystem::exists(name_or_path)) return name_or_path;
  std::string p = fixture_dir() + "/" + name_or_path;
  if (std::filesystem::exists(p)) return p;
  if (std::filesystem::exists(p + ".json")) return p + ".json";
  throw std::invalid_argument("unknown fixture " + name_or_path);
}

inline WallFixture load_wall_fixture(const std::string& name_or_path) {
  json j = read_json_file(resolve_fixture(name_or_path));
  WallFixture f;
  f.name = j.at("name").get<std::string>();
  f.description = j.value("description", "");
  f.l1 = j.at("initial").at("l1").get<int>();
  f.l2 = j.at("initial").at("l2").get<int>();
  f.order = j.at("order").get<int>();
  f.complete = j.value("complete", false);
  for (const auto& w : j.at("walls")) {
    FixtureWall fw{w.at("a").get<int>(), w.at("b").get<int>(), {}};
    for (const auto& fac : w.at("factors"))
      fw.factors.push_back({fac.at("exponents").get<std::vector<int>>(), Rational::parse(fac.at("coeff").get<std::string>()),
                            fac.value("power", 1L)});
    f.walls.push_back(std::move(fw));
  }
  return f;
}

inline TruncatedSeries expand_fixture_wall(const FixtureWall& w, const ContextPtr& ctx, int order) {
  TruncatedSeries acc = TruncatedSeries::one(ctx, order);
  for (const auto& fac : w.factors) {
    if (fac.exponents.size() != ctx->size()) throw std::invalid_argument("fixture exponent vector has the wrong length");
    TruncatedSeries lin = TruncatedSeries::one(ctx, order) +
                          TruncatedSeries::monomial(ctx, order, Monomial::from_exponents(fac.exponents), fac.coeff);
    acc = acc * pow_int(lin, fac.power);
  }
  return acc;
}

struct FixtureComparison {
  bool pass = true;
  std::vector<std::string> mismatches;
};

// Compares the listed walls exactly at the scattering's order; a complete fixture also rules
// out any further walls.
inline FixtureComparison compare_fixture(const Scattering& s, const WallFixture& f) {
  FixtureComparison c;
  for (const auto& w : f.walls) {
    TruncatedSeries expected = expand_fixture_wall(w, s.context(), s.order());
    if (to_json(s.wall(w.a, w.b)).dump() != to_json(expected).dump()) {
      c.pass = false;
      c.mismatches.push_back("wall (" + std::to_string(w.a) + "," + std::to_string(w.b) + ") differs");
    }
  }
  if (f.complete) {
    for (const auto& w : s.walls()) {
      bool listed = std::any_of(f.walls.begin(), f.walls.end(), [&](const FixtureWall& fw) { return fw.a == w.a && fw.b == w.b; });
      if (!listed) {
        c.pass = false;
        c.mismatches.push_back("unexpected wall (" + std::to_string(w.a) + "," + std::to_string(w.b) + ")");
      }
    }
  }
  return c;
}

}  // namespace tvx
