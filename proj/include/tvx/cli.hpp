#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "tvx/funceq.hpp"
#include "tvx/gw.hpp"
#include "tvx/hn.hpp"
#include "tvx/io.hpp"
#include "tvx/localization.hpp"
#include "tvx/quiver.hpp"
#include "tvx/wallcross.hpp"

namespace tvx::cli {

enum ExitCode { kOk = 0, kMathFailure = 1, kUsage = 2 };

class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline std::vector<long> parse_longs(const std::string& s) {
  std::vector<long> v;
  if (s.empty()) return v;
  for (const auto& part : split(s, ',')) {
    try {
      std::size_t pos = 0;
      long x = std::stol(part, &pos);
      if (pos != part.size()) throw usage_error("bad integer '" + part + "'");
      v.push_back(x);
    } catch (const std::logic_error&) {
      throw usage_error("bad integer '" + part + "'");
    }
  }
  return v;
}

inline std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> v;
  for (long x : parse_longs(s)) v.push_back(static_cast<int>(x));
  return v;
}

// Runs independent jobs on up to TVX_THREADS workers; results keep the job order.
template <class Result>
std::vector<Result> run_jobs(const std::vector<std::function<Result()>>& jobs) {
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TVX_THREADS")) {
    long cap = std::atol(env);
    if (cap >= 1) workers = std::min(workers, static_cast<std::size_t>(cap));
  }
  workers = std::min(workers, jobs.size());
  std::vector<Result> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next++; i < jobs.size(); i = next++) results[i] = jobs[i]();
  };
  if (workers <= 1) {
    work();
    return results;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return results;
}

struct QuiverOptions {
  int l1 = 0;
  int l2 = 0;
  int kronecker = 0;
  std::string levels;

  void add_to(CLI::App* app) {
    app->add_option("--l1", l1, "number of sinks (x-axis factors)");
    app->add_option("--l2", l2, "number of sources (y-axis factors)");
    app->add_option("--kronecker", kronecker, "use the Kronecker quiver with this many arrows");
    app->add_option("--levels", levels, "levelled data as 'r1,r2,...:s1,s2,...' (counts per level)");
  }
  bool is_levelled() const { return !levels.empty(); }
  std::pair<std::vector<int>, std::vector<int>> level_counts() const {
    auto parts = split(levels, ':');
    if (parts.size() != 2) throw usage_error("--levels needs the form 'counts:counts'");
    return {parse_ints(parts[0]), parse_ints(parts[1])};
  }
  void require_plain() const {
    if (kronecker != 0 || is_levelled()) throw usage_error("this command needs --l1 and --l2");
    if (l1 < 1 || l2 < 1) throw usage_error("--l1 and --l2 must be positive");
  }
  BipartiteQuiver quiver() const {
    if (kronecker != 0) return BipartiteQuiver::kronecker(kronecker);
    if (is_levelled()) {
      auto [a, b] = level_counts();
      return BipartiteQuiver::levelled(a, b);
    }
    if (l1 < 1 || l2 < 1) throw usage_error("give --l1/--l2, --kronecker or --levels");
    return BipartiteQuiver::complete(l1, l2);
  }
  InitialData initial() const {
    if (kronecker != 0) return InitialData::kronecker(kronecker);
    if (is_levelled()) {
      auto [a, b] = level_counts();
      return InitialData::levelled(a, b);
    }
    if (l1 < 1 || l2 < 1) throw usage_error("give --l1/--l2, --kronecker or --levels");
    return InitialData::plain(l1, l2);
  }
};

// "3,5" for a one-sink one-source quiver, otherwise "p1 parts/p2 parts" (';' also separates).
inline DimVector parse_dim(const std::string& s, const BipartiteQuiver& q) {
  std::string t = s;
  std::replace(t.begin(), t.end(), ';', '/');
  auto halves = split(t, '/');
  DimVector d;
  if (halves.size() == 1 && q.l1() == 1 && q.l2() == 1) {
    auto v = parse_ints(halves[0]);
    if (v.size() != 2) throw usage_error("--dim for a Kronecker quiver is 'sink,source'");
    d = {{v[0]}, {v[1]}};
  } else if (halves.size() == 2) {
    d = {parse_ints(halves[0]), parse_ints(halves[1])};
  } else {
    throw usage_error("--dim needs the form 'p1/p2'");
  }
  try {
    q.check(d);
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }
  if (d.is_zero()) throw usage_error("--dim must be nonzero");
  return d;
}

inline StabilitySpec parse_stability(const BipartiteQuiver& q, const std::string& theta, const std::string& kappa) {
  StabilitySpec s = default_stability(q);
  if (!theta.empty()) s.theta = parse_longs(theta);
  if (!kappa.empty()) s.kappa = parse_longs(kappa);
  try {
    check_stability(q, s);
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }
  return s;
}

inline void require_slope(int a, int b) {
  try {
    check_primitive(a, b);
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }
}

struct SuiteLine {
  bool pass = false;
  std::string text;
};

inline std::vector<std::function<SuiteLine()>> smalllength_jobs() {
  std::vector<std::function<SuiteLine()>> jobs;
  for (const char* name : {"subspace_1", "subspace_2", "subspace_3", "bipartite_2_2_central", "subspace_4_slope_1_2"}) {
    jobs.emplace_back([name]() {
      WallFixture f = load_wall_fixture(name);
      InitialData init = InitialData::plain(f.l1, f.l2);
      Scattering s = factorize(init, f.order);
      FixtureComparison c = compare_fixture(s, f);
      bool ok = c.pass && compose_and_verify(s, init);
      std::string text = std::string(name) + " order " + std::to_string(f.order);
      for (const auto& m : c.mismatches) text += "; " + m;
      return SuiteLine{ok, text};
    });
  }
  return jobs;
}

inline std::vector<std::function<SuiteLine()>> correspondence_jobs() {
  std::vector<std::function<SuiteLine()>> jobs;
  const int coprime[][4] = {{1, 3, 2, 3}, {2, 2, 1, 2}, {2, 2, 3, 4}, {2, 3, 1, 2}, {3, 2, 2, 3}, {3, 3, 1, 2}, {3, 3, 2, 3}, {3, 3, 3, 5}};
  for (const auto& c : coprime) {
    int l1 = c[0], l2 = c[1], a = c[2], b = c[3];
    jobs.emplace_back([=]() {
      CorrespondenceReport r = coprime_correspondence_check(l1, l2, a, b);
      std::ostringstream os;
      os << "coprime K(" << l1 << "," << l2 << ") slope (" << a << "," << b << "): sum N = " << r.gw_total
         << ", sum chi = " << r.chi_total;
      return SuiteLine{r.pass, os.str()};
    });
  }
  const int balanced[][4] = {{2, 1, 2, 1}, {2, 2, 3, 1}, {3, 3, 5, 1}, {3, 1, 2, 1}, {2, 1, 1, 2}, {3, 1, 1, 2}, {2, 1, 2, 2}};
  for (const auto& c : balanced) {
    int m = c[0], a = c[1], b = c[2], k = c[3];
    jobs.emplace_back([=]() {
      DivisibilityReport r = balanced_divisibility_check(m, a, b, k);
      std::ostringstream os;
      os << "balanced m=" << m << " slope (" << a << "," << b << ") level " << k << ": " << r.lhs << " = " << m
         << " * " << r.kronecker << " (" << provenance_name(r.kronecker_source) << ")";
      return SuiteLine{r.pass, os.str()};
    });
  }
  return jobs;
}

inline std::vector<std::function<SuiteLine()>> central_jobs() {
  std::vector<std::function<SuiteLine()>> jobs;
  const int cases[][3] = {{2, 2, 8}, {2, 3, 8}, {3, 3, 8}};
  for (const auto& c : cases) {
    int l1 = c[0], l2 = c[1], n = c[2];
    jobs.emplace_back([=]() {
      CentralSolution cs = central_system(l1, l2, n);
      Scattering s = factorize(InitialData::plain(l1, l2), n);
      GWTable gw = gw_from_wall(cs.f, 1, 1);
      bool ok = cs.f == s.wall(1, 1);
      for (int k = 1; k <= n / 2; ++k) ok = ok && gw.aggregated[k] == central_N(l1, l2, k);
      return SuiteLine{ok, "central slope K(" + std::to_string(l1) + "," + std::to_string(l2) + ") order " + std::to_string(n)};
    });
  }
  return jobs;
}

inline std::vector<std::function<SuiteLine()>> tree_jobs() {
  std::vector<std::function<SuiteLine()>> jobs;
  const int cases[][3] = {{2, 2, 1}, {2, 2, 2}, {3, 3, 2}, {3, 3, 3}, {3, 2, 2}, {3, 2, 3}, {2, 3, 3}, {4, 2, 3}};
  for (const auto& c : cases) {
    int l1 = c[0], l2 = c[1], d = c[2];
    jobs.emplace_back([=]() {
      TreeReport r = tree_report(l1, l2, d);
      std::ostringstream os;
      os << "trees K(" << l1 << "," << l2 << ") d=" << d << ": formula " << r.formula << ", enumeration "
         << r.enumeration << ", moduli " << r.quiver_sum;
      return SuiteLine{r.formula_verified && lagrange_coeff(l1, l2, (l1 - 1) * d + 1) ==
                                                  lagrange_coeff_series(l1, l2, (l1 - 1) * d + 1),
                       os.str()};
    });
  }
  return jobs;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tropical vertex factorization, quiver moduli and relative Gromov-Witten invariants"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));

  QuiverOptions qo;
  int order = 8, a = 0, b = 0, d = 0;
  std::string fixture, dim, theta, kappa, chi_file, suite = "all", smooth;
  bool from_factorization = false, direct = false;

  auto* factorize_cmd = app.add_subcommand("factorize", "ordered factorization of the initial two-wall product");
  qo.add_to(factorize_cmd);
  factorize_cmd->add_option("--order", order, "truncation order");
  factorize_cmd->add_option("--fixture", fixture, "compare against a fixture (name or path)");

  auto* gw_cmd = app.add_subcommand("gw", "relative invariants of one wall");
  gw_cmd->add_option("--l1", qo.l1)->required();
  gw_cmd->add_option("--l2", qo.l2)->required();
  gw_cmd->add_option("--a", a)->required();
  gw_cmd->add_option("--b", b)->required();
  gw_cmd->add_option("--order", order);
  gw_cmd->add_option("--smooth", smooth, "also report smooth-model Euler characteristics")
      ->check(CLI::IsMember({"back", "front"}));

  auto* euler_cmd = app.add_subcommand("euler", "Euler characteristic of a stable moduli space");
  auto* poincare_cmd = app.add_subcommand("poincare", "Poincare polynomial of a stable moduli space");
  for (auto* cmd : {euler_cmd, poincare_cmd}) {
    qo.add_to(cmd);
    cmd->add_option("--dim", dim, "dimension vector 'p1/p2', or 'sink,source' for --kronecker")->required();
    cmd->add_option("--theta", theta, "Theta per vertex, sinks first");
    cmd->add_option("--kappa", kappa, "kappa per vertex, sinks first");
  }

  auto* chi_cmd = app.add_subcommand("chi", "Euler characteristics along a ray");
  qo.add_to(chi_cmd);
  chi_cmd->add_option("--a", a)->required();
  chi_cmd->add_option("--b", b)->required();
  chi_cmd->add_option("--order", order);
  chi_cmd->add_flag("--from-factorization", from_factorization, "extract from the wall function (default)");
  chi_cmd->add_flag("--direct", direct, "use the HN recursion on level one");

  auto* solve_cmd = app.add_subcommand("solve-funceq", "solve the functional equations for one wall");
  solve_cmd->add_option("--l1", qo.l1)->required();
  solve_cmd->add_option("--l2", qo.l2)->required();
  solve_cmd->add_option("--a", a)->required();
  solve_cmd->add_option("--b", b)->required();
  solve_cmd->add_option("--order", order);
  solve_cmd->add_option("--chi", chi_file, "Euler characteristics as JSON (default: extracted)");

  auto* central_cmd = app.add_subcommand("central-slope", "the (1,1) wall through its closed system");
  central_cmd->add_option("--l1", qo.l1)->required();
  central_cmd->add_option("--l2", qo.l2)->required();
  central_cmd->add_option("--order", order);

  auto* bps_cmd = app.add_subcommand("bps", "integrality of a wall's invariants");
  bps_cmd->add_option("--l1", qo.l1)->required();
  bps_cmd->add_option("--l2", qo.l2)->required();
  bps_cmd->add_option("--a", a)->default_val(1);
  bps_cmd->add_option("--b", b)->default_val(1);
  bps_cmd->add_option("--order", order);

  auto* trees_cmd = app.add_subcommand("trees", "tree counts against Euler characteristics");
  trees_cmd->add_option("--l1", qo.l1)->required();
  trees_cmd->add_option("--l2", qo.l2)->required();
  trees_cmd->add_option("--d", d)->required();

  auto* verify_cmd = app.add_subcommand("verify", "run a built-in verification suite");
  verify_cmd->add_option("--suite", suite)->check(CLI::IsMember({"smalllength", "correspondence", "central", "trees", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    if (code == 0) return kOk;
    err << app.help();
    return kUsage;
  }

  bool text = format == "text";
  auto emit = [&](const json& j) { out << j.dump(2) << "\n"; };

  try {
    if (order < 1 || order > kMaxOrder) throw usage_error("--order out of range");

    if (*factorize_cmd) {
      std::optional<WallFixture> fx;
      if (!fixture.empty()) {
        fx = load_wall_fixture(fixture);
        if (qo.l1 == 0 && qo.l2 == 0 && qo.kronecker == 0 && !qo.is_levelled()) {
          qo.l1 = fx->l1;
          qo.l2 = fx->l2;
        }
        if (factorize_cmd->count("--order") == 0) order = fx->order;
      }
      InitialData init = qo.initial();
      Scattering s = factorize(init, order);
      if (!compose_and_verify(s, init)) throw consistency_error("recomposed product differs from the initial product");
      if (fx) {
        FixtureComparison c = compare_fixture(s, *fx);
        if (text) {
          out << (c.pass ? "PASS " : "FAIL ") << fx->name << "\n";
          for (const auto& m : c.mismatches) out << "  " << m << "\n";
        } else {
          emit(json{{"fixture", fx->name}, {"order", order}, {"pass", c.pass}, {"mismatches", c.mismatches}});
        }
        return c.pass ? kOk : kMathFailure;
      }
      if (text) {
        for (const auto& w : s.walls()) out << "(" << w.a << "," << w.b << "): " << w.f.str() << "\n";
      } else {
        emit(to_json(s));
      }
      return kOk;
    }

    if (*gw_cmd) {
      qo.require_plain();
      require_slope(a, b);
      Scattering s = factorize(InitialData::plain(qo.l1, qo.l2), order);
      TruncatedSeries f = s.wall(a, b);
      GWTable t = gw_from_wall(f, a, b);
      json j = to_json(t);
      if (!smooth.empty()) {
        json sm = json::array();
        for (const auto& [dv, c] : smooth_model_chi(f, a, b, smooth == "back" ? SmoothModel::Back : SmoothModel::Front))
          sm.push_back({{"p1", dv.p1}, {"p2", dv.p2}, {"chi", c}});
        j["smooth_model"] = {{"type", smooth}, {"chi", sm}};
      }
      if (text) {
        for (const auto& [k, n] : t.aggregated) out << "N[" << k << "] = " << n << "\n";
      } else {
        emit(j);
      }
      return kOk;
    }

    if (*euler_cmd || *poincare_cmd) {
      BipartiteQuiver q = qo.quiver();
      DimVector dv = parse_dim(dim, q);
      StabilitySpec spec = parse_stability(q, theta, kappa);
      QPolynomial p = poincare(q, spec, dv);
      if (*euler_cmd) {
        long chi = p.eval(Rational(1)).to_int64();
        out << chi << "\n";
      } else {
        json coeffs = json::array();
        for (const auto& c : p.coeffs()) coeffs.push_back(c.str());
        if (text) out << p.str() << "\n";
        else emit(coeffs);
      }
      return kOk;
    }

    if (*chi_cmd) {
      require_slope(a, b);
      if (direct && from_factorization) throw usage_error("--direct and --from-factorization are exclusive");
      BipartiteQuiver q = qo.quiver();
      ChiTable t;
      if (direct) {
        for (const auto& dv : enum_dimvecs(q.l1(), q.l2(), a, b)) t.set(dv, euler_stable(q, dv), Provenance::Direct);
      } else {
        InitialData init = qo.initial();
        if (qo.is_levelled()) throw usage_error("extraction needs unit levels");
        Scattering s = factorize(init, order);
        t = extract_chi(q, s.wall(a, b), a, b, order);
      }
      if (text) {
        for (const auto& [dv, e] : t.entries()) out << dv.str() << " " << e.chi << "\n";
      } else {
        emit(to_json(t));
      }
      return kOk;
    }

    if (*solve_cmd) {
      qo.require_plain();
      require_slope(a, b);
      BipartiteQuiver q = BipartiteQuiver::complete(qo.l1, qo.l2);
      Scattering s = factorize(InitialData::plain(qo.l1, qo.l2), order);
      ChiTable chi = chi_file.empty() ? extract_chi(q, s.wall(a, b), a, b, order) : chi_table_from_json(read_json_file(chi_file));
      RSystemSolution sol = solve_R_system(q, chi, a, b, order);
      int levels = order / (a + b);
      std::vector<Rational> agg(static_cast<std::size_t>(levels) + 1);
      for (int k = 1; k <= levels; ++k) agg[static_cast<std::size_t>(k)] = Rational(chi.total(k * a, k * b));
      std::vector<Rational> spec = solve_specialized(agg, specialized_exponent(qo.l1, qo.l2, a, b), levels);
      std::vector<Rational> diag = specialize_diagonal(sol.f, a, b);
      diag.resize(spec.size());
      bool matches = sol.f == s.wall(a, b);
      bool diag_ok = diag == spec;
      if (text) {
        out << "f = " << sol.f.str() << "\n";
        out << "sweeps: " << sol.sweeps << ", matches factorization: " << (matches ? "yes" : "no")
            << ", diagonal matches specialized equation: " << (diag_ok ? "yes" : "no") << "\n";
      } else {
        emit(json{{"f", to_json(sol.f)},
                  {"sweeps", sol.sweeps},
                  {"matches_factorization", matches},
                  {"diagonal", to_json(diag)},
                  {"specialized", to_json(spec)},
                  {"diagonal_matches_specialized", diag_ok}});
      }
      return matches && diag_ok ? kOk : kMathFailure;
    }

    if (*central_cmd) {
      qo.require_plain();
      CentralSolution cs = central_system(qo.l1, qo.l2, order);
      Scattering s = factorize(InitialData::plain(qo.l1, qo.l2), order);
      bool matches = cs.f == s.wall(1, 1);
      GWTable t = gw_from_wall(cs.f, 1, 1);
      json rows = json::array();
      bool closed_ok = true;
      for (int k = 1; k <= order / 2; ++k) {
        Rational n = t.aggregated.count(k) ? t.aggregated.at(k) : Rational();
        Rational c = central_N(qo.l1, qo.l2, k);
        closed_ok = closed_ok && n == c;
        rows.push_back({{"k", k}, {"N", n.str()}, {"closed_form", c.str()}});
      }
      if (text) {
        out << "f = " << cs.f.str() << "\n";
        for (const auto& r : rows)
          out << "N[" << r["k"].get<int>() << "] = " << r["N"].get<std::string>() << " (closed form "
              << r["closed_form"].get<std::string>() << ")\n";
        out << "matches factorization: " << (matches ? "yes" : "no") << "\n";
      } else {
        emit(json{{"f", to_json(cs.f)}, {"matches_factorization", matches}, {"N", rows}});
      }
      return matches && closed_ok ? kOk : kMathFailure;
    }

    if (*bps_cmd) {
      qo.require_plain();
      require_slope(a, b);
      TruncatedSeries f = (a == 1 && b == 1) ? central_system(qo.l1, qo.l2, order).f
                                             : factorize(InitialData::plain(qo.l1, qo.l2), order).wall(a, b);
      GWTable t = gw_from_wall(f, a, b);
      int levels = order / (a + b);
      std::vector<Rational> n(static_cast<std::size_t>(levels) + 1);
      for (int k = 1; k <= levels; ++k) n[static_cast<std::size_t>(k)] = t.aggregated.count(k) ? t.aggregated.at(k) : Rational();
      json j{{"a", a}, {"b", b}, {"N", to_json(n)}};
      bool ok = true;
      if (a == 1 && b == 1) {
        auto bps = bps_moebius(n, qo.l1 * qo.l2 - qo.l1 - qo.l2);
        for (int k = 1; k <= levels; ++k) ok = ok && bps[static_cast<std::size_t>(k)].is_integer() && bps[static_cast<std::size_t>(k)].sign() >= 0;
        j["moebius"] = to_json(bps);
      }
      if (qo.l1 == qo.l2) {
        long e = static_cast<long>(qo.l1) * a * b - static_cast<long>(a) * a - static_cast<long>(b) * b;
        int sign = e % 2 == 0 ? 1 : -1;
        std::vector<Rational> diag = specialize_diagonal(f, a, b);
        diag.resize(static_cast<std::size_t>(levels) + 1);
        auto dk = product_factorization(diag, sign);
        for (int k = 1; k <= levels; ++k) ok = ok && dk[static_cast<std::size_t>(k)].is_integer();
        j["product_sign"] = sign;
        j["product_exponents"] = to_json(dk);
      }
      j["integral"] = ok;
      if (text) {
        for (int k = 1; k <= levels; ++k) out << "N[" << k << "] = " << n[static_cast<std::size_t>(k)] << "\n";
        out << "integral: " << (ok ? "yes" : "no") << "\n";
      } else {
        emit(j);
      }
      return ok ? kOk : kMathFailure;
    }

    if (*trees_cmd) {
      if (qo.l1 < 1 || qo.l2 < 1 || d < 1) throw usage_error("--l1, --l2 and --d must be positive");
      TreeReport r = tree_report(qo.l1, qo.l2, d);
      const char* status = r.formula_verified ? "formula-verified" : "formula-unverified";
      if (text) {
        out << "formula " << r.formula << ", enumeration " << r.enumeration << ", moduli " << r.quiver_sum << " ("
            << status << ")\n";
      } else {
        emit(json{{"l1", r.l1},
                  {"l2", r.l2},
                  {"d", r.d},
                  {"formula", r.formula.str()},
                  {"enumeration", r.enumeration.str()},
                  {"moduli_sum", r.quiver_sum},
                  {"transposed_moduli_sum", r.transposed_sum},
                  {"status", status}});
      }
      return kOk;
    }

    if (*verify_cmd) {
      std::vector<std::function<SuiteLine()>> jobs;
      auto add = [&jobs](std::vector<std::function<SuiteLine()>> more) {
        for (auto& j : more) jobs.push_back(std::move(j));
      };
      if (suite == "smalllength" || suite == "all") add(smalllength_jobs());
      if (suite == "correspondence" || suite == "all") add(correspondence_jobs());
      if (suite == "central" || suite == "all") add(central_jobs());
      if (suite == "trees" || suite == "all") add(tree_jobs());
      std::vector<std::function<SuiteLine()>> guarded;
      for (auto& j : jobs)
        guarded.emplace_back([j]() {
          try {
            return j();
          } catch (const std::exception& e) {
            return SuiteLine{false, std::string("error: ") + e.what()};
          }
        });
      bool all = true;
      for (const auto& line : run_jobs(guarded)) {
        out << (line.pass ? "PASS " : "FAIL ") << line.text << "\n";
        all = all && line.pass;
      }
      return all ? kOk : kMathFailure;
    }
  } catch (const usage_error& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const consistency_error& e) {
    err << "consistency failure: " << e.what() << "\n";
    return kMathFailure;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kMathFailure;
  }
  return kUsage;
}

}  // namespace tvx::cli
