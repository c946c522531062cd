// flatorbit: command-line front end for the symbolic orbit machinery and the
// numeric Weyl checks. Exit codes: 0 pass, 1 failed checks, 2 parse error,
// 3 failed precondition, 4 resource limit.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "flatorbit/group_ops.hpp"
#include "flatorbit/heisenberg.hpp"
#include "flatorbit/invariant_ops.hpp"
#include "flatorbit/io.hpp"
#include "flatorbit/orbit.hpp"
#include "flatorbit/random.hpp"
#include "flatorbit/suite.hpp"
#include "flatorbit/weyl/checks.hpp"

using namespace flatorbit;

namespace {

enum Exit { kPass = 0, kFailed = 1, kParse = 2, kPrecondition = 3, kResource = 4 };

struct Report {
  std::string command;
  std::string digest;
  ordered_json checks = ordered_json::array();
  ordered_json result = ordered_json::object();
  std::vector<std::string> text;

  void check(const std::string& name, bool pass, const std::string& details = "") {
    checks.push_back({{"name", name}, {"status", pass ? "pass" : "fail"}, {"details", details}});
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (c["status"] != "pass") return false;
    return true;
  }
  int emit(bool json, int code) const {
    if (json) {
      ordered_json doc;
      doc["command"] = command;
      doc["inputs_digest"] = digest;
      doc["checks"] = checks;
      if (!result.empty()) doc["result"] = result;
      doc["exit_code"] = code;
      std::cout << doc.dump(2) << "\n";
    } else {
      for (const auto& l : text) std::cout << l << "\n";
      for (const auto& c : checks) {
        std::cout << (c["status"] == "pass" ? "[pass] " : "[FAIL] ") << c["name"].get<std::string>();
        auto d = c["details"].get<std::string>();
        if (!d.empty()) std::cout << ": " << d;
        std::cout << "\n";
      }
    }
    return code;
  }
};

/// Maps library errors onto the exit-code contract.
int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return kParse;
  if (dynamic_cast<const DegreeEscalationLimit*>(&e) || dynamic_cast<const OrderLimit*>(&e) ||
      dynamic_cast<const InversionFailure*>(&e))
    return kResource;
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const NotNilpotent*>(&e) ||
      dynamic_cast<const NonUnitCentralPairing*>(&e) || dynamic_cast<const NotFlat*>(&e) ||
      dynamic_cast<const CenterNotOneDimensional*>(&e) || dynamic_cast<const DimensionMismatch*>(&e) ||
      dynamic_cast<const GridMismatch*>(&e) || dynamic_cast<const QuadratureWindowTooSmall*>(&e))
    return kPrecondition;
  return kFailed;
}

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
  if (dynamic_cast<const NotNilpotent*>(&e)) return "NotNilpotent";
  if (dynamic_cast<const NonUnitCentralPairing*>(&e)) return "NonUnitCentralPairing";
  if (dynamic_cast<const NotFlat*>(&e)) return "NotFlat";
  if (dynamic_cast<const CenterNotOneDimensional*>(&e)) return "CenterNotOneDimensional";
  if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
  if (dynamic_cast<const DegreeEscalationLimit*>(&e)) return "DegreeEscalationLimit";
  if (dynamic_cast<const OrderLimit*>(&e)) return "OrderLimit";
  if (dynamic_cast<const InversionFailure*>(&e)) return "InversionFailure";
  if (dynamic_cast<const GridMismatch*>(&e)) return "GridMismatch";
  if (dynamic_cast<const QuadratureWindowTooSmall*>(&e)) return "QuadratureWindowTooSmall";
  return "Error";
}

int fail_with(Report& rep, bool json, const std::exception& e, int code) {
  rep.check("error", false, std::string(error_kind(e)) + ": " + e.what());
  if (!json) std::cerr << error_kind(e) << ": " << e.what() << "\n";
  return json ? rep.emit(true, code) : code;
}

struct Loaded {
  AlgebraSpec spec;
  std::string digest;
};

Loaded load(const std::string& path) {
  std::string text = read_text_file(path);
  return {parse_algebra_spec(text), fnv1a_digest(text)};
}

const RatVector& require_xi0(const AlgebraSpec& spec) {
  if (!spec.xi0) throw ValidationError("the algebra file has no \"xi0\"");
  return *spec.xi0;
}

RatVector parse_rational_list(const std::string& text, std::size_t dim) {
  RatVector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(Rational::parse(item));
  if (v.size() != dim)
    throw ParseError("expected " + std::to_string(dim) + " comma-separated rationals, got " + std::to_string(v.size()));
  return v;
}

ordered_json op_json(const DiffOp& op) {
  ordered_json coeffs = ordered_json::object();
  for (const auto& [alpha, coef] : op.terms()) {
    std::string key;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      for (unsigned r = 0; r < alpha[i]; ++r) key += (key.empty() ? "" : ",") + std::to_string(i + 1);
    coeffs[key.empty() ? "0" : key] = coef.str();
  }
  return {{"text", op.str()}, {"coeffs", coeffs}};
}

ordered_json basis_json(const OpBasis& b) {
  ordered_json a = ordered_json::array();
  for (const auto& op : b.ops) a.push_back(op_json(op));
  return a;
}

// ---- commands ---------------------------------------------------------------

int cmd_validate(const std::string& path, bool json) {
  Report rep{"validate"};
  try {
    auto [spec, digest] = load(path);
    rep.digest = digest;
    auto v = spec.algebra.validate();
    for (const auto& c : v.checks) rep.check(c.name, c.pass, c.details);
    rep.result["dim"] = spec.algebra.dim();
    rep.result["labels"] = spec.algebra.labels();
    if (v.step) rep.result["step"] = *v.step;
    rep.result["center_dim"] = v.center_dim;
    if (!v.ok() && !json) std::cerr << "ValidationError: " << v.failures() << "\n";
    return rep.emit(json, v.ok() ? kPass : kFailed);
  } catch (const ValidationError& e) {
    return fail_with(rep, json, e, kFailed);
  } catch (const std::exception& e) {
    return fail_with(rep, json, e, exit_code_for(e));
  }
}

int cmd_orbit_info(const std::string& path, bool json) {
  Report rep{"orbit-info"};
  try {
    auto [spec, digest] = load(path);
    rep.digest = digest;
    spec.algebra.require_valid();
    const RatVector& xi0 = require_xi0(spec);
    auto fl = is_flat(spec.algebra, xi0);
    rep.result["flat"] = fl.flat;
    rep.result["rank"] = fl.rank;
    rep.result["expected_rank"] = fl.expected_rank;
    rep.result["center_dim"] = fl.center_dim;
    rep.check("flat", fl.flat, "rank " + std::to_string(fl.rank) + " of " + std::to_string(fl.expected_rank));
    if (!fl.flat) throw NotFlat("orbit form has rank " + std::to_string(fl.rank) + ", expected " + std::to_string(fl.expected_rank));
    OrbitData orbit(spec.algebra, xi0, spec.orbit_options());
    rep.result["central_value"] = orbit.central_value().str();
    ordered_json om = ordered_json::array();
    for (std::size_t i = 0; i < orbit.dim(); ++i) {
      ordered_json row = ordered_json::array();
      for (std::size_t j = 0; j < orbit.dim(); ++j) row.push_back(orbit.omega()(i, j).str());
      om.push_back(row);
    }
    rep.result["omega"] = om;
    ordered_json chi = ordered_json::array(), inv = ordered_json::array(), gam = ordered_json::object();
    for (const auto& p : orbit.chi().components) chi.push_back(p.str());
    for (const auto& p : orbit.chi_inverse().components) inv.push_back(p.str());
    auto fields = orbit.gamma_fields();
    for (std::size_t j = 0; j < fields.size(); ++j) gam[spec.algebra.labels()[j + 1]] = fields[j].str();
    rep.result["chi"] = chi;
    rep.result["chi_inverse"] = inv;
    rep.result["gamma"] = gam;
    bool equi = true;
    for (const auto& r : orbit.equivariance_residual()) equi = equi && r.is_zero();
    rep.check("equivariance", equi);

    rep.text.push_back("orbit coordinates: " + [&] {
      std::string s;
      for (const auto& v : *orbit.eta_vars()) s += (s.empty() ? "" : ", ") + v;
      return s;
    }());
    for (std::size_t j = 0; j < orbit.dim(); ++j) rep.text.push_back("chi_" + std::to_string(j + 1) + " = " + chi[j].get<std::string>());
    for (std::size_t j = 0; j < fields.size(); ++j)
      rep.text.push_back("gamma(" + spec.algebra.labels()[j + 1] + ") = " + fields[j].str());
    return rep.emit(json, rep.all_pass() ? kPass : kFailed);
  } catch (const std::exception& e) {
    return fail_with(rep, json, e, exit_code_for(e));
  }
}

int cmd_invariant_ops(const std::string& path, const std::string& degree, const std::string& method, bool json) {
  Report rep{"invariant-ops"};
  try {
    auto [spec, digest] = load(path);
    rep.digest = digest;
    spec.algebra.require_valid();
    OrbitData orbit(spec.algebra, require_xi0(spec), spec.orbit_options());
    std::optional<unsigned> bound;
    if (degree != "auto") {
      try {
        bound = static_cast<unsigned>(std::stoul(degree));
      } catch (const std::exception&) {
        throw ParseError("--degree must be 'auto' or a non-negative integer");
      }
    }
    std::optional<OpBasis> shown;
    if (method == "commutant" || method == "both") {
      auto com = commutant_first_order(orbit, bound);
      rep.result["commutant"] = basis_json(com.first_order);
      rep.result["degree_bound"] = com.degree_bound;
      rep.result["zeroth_order_constants_only"] = com.zeroth_order_constants_only;
      rep.check("dimension_law", com.first_order.size() == orbit.dim() && com.zeroth_order_constants_only,
                std::to_string(com.first_order.size()) + " first-order operators for dim " + std::to_string(orbit.dim()));
      shown = com.first_order;
    }
    if (method == "pushforward" || method == "both") {
      auto push = invariant_ops_via_pushforward(orbit);
      rep.result["pushforward"] = basis_json(push.basis);
      rep.check("pushforward_commutes_with_gamma", push.commute_with_gamma);
      if (shown) rep.check("span_equal", span_equal(*shown, push.basis));
      else shown = push.basis;
    }
    if (!shown) throw ParseError("--method must be commutant, pushforward or both");
    if (spec.expected_invariant_ops) {
      std::vector<DiffOp> want;
      for (const auto& s : *spec.expected_invariant_ops) want.push_back(DiffOp::parse(s, orbit.eta_vars()));
      rep.check("golden", span_equal(*shown, OpBasis::canonical(orbit.eta_vars(), want)),
                std::to_string(want.size()) + " expected operators");
    }
    for (const auto& op : shown->ops) rep.text.push_back(op.str());
    return rep.emit(json, rep.all_pass() ? kPass : kFailed);
  } catch (const std::exception& e) {
    return fail_with(rep, json, e, exit_code_for(e));
  }
}

int cmd_bch(const std::string& path, const std::string& xs, const std::string& ys, bool symbolic, bool json) {
  Report rep{"bch"};
  try {
    auto [spec, digest] = load(path);
    rep.digest = digest;
    spec.algebra.require_valid();
    GroupOps G(spec.algebra);
    if (symbolic) {
      ordered_json comps = ordered_json::array();
      const auto& prod = G.symbolic_product();
      for (std::size_t k = 0; k < prod.components.size(); ++k) {
        comps.push_back(prod.components[k].str());
        rep.text.push_back(spec.algebra.labels()[k] + ": " + prod.components[k].str());
      }
      rep.result["product"] = comps;
    }
    if (!xs.empty() || !ys.empty()) {
      RatVector x = parse_rational_list(xs, G.dim()), y = parse_rational_list(ys, G.dim());
      RatVector z = G.product(x, y);
      rep.result["x"] = rational_vector_json(x);
      rep.result["y"] = rational_vector_json(y);
      rep.result["x_times_y"] = rational_vector_json(z);
      rep.text.push_back("X.Y = " + vector_str(z));
      bool assoc_inverse = G.product(z, GroupOps::inverse(y)) == x;
      rep.check("right_cancellation", assoc_inverse);
    }
    if (!symbolic && xs.empty() && ys.empty()) throw ParseError("give --x and --y, or --symbolic");
    return rep.emit(json, rep.all_pass() ? kPass : kFailed);
  } catch (const std::exception& e) {
    return fail_with(rep, json, e, exit_code_for(e));
  }
}

int cmd_heisenberg(unsigned m, const std::string& which, bool json) {
  Report rep{"heisenberg"};
  rep.digest = fnv1a_digest("heisenberg m=" + std::to_string(m) + " check=" + which);
  try {
    if (m == 0) throw ParseError("--m must be at least 1");
    auto model = build_semidirect(m);
    bool any = false;
    if (which == "fields" || which == "all") {
      any = true;
      auto r = field_golden_check(model);
      rep.check("fields", r.pass, r.pass ? "all fundamental vector fields match" : r.mismatches.front());
      rep.text.insert(rep.text.end(), r.lines.begin(), r.lines.end());
    }
    if (which == "generators" || which == "all") {
      any = true;
      auto r = invariant_golden_check(model);
      std::string d;
      for (const auto& l : r.golden.lines) d += (d.empty() ? "" : "; ") + l;
      rep.check("generators", r.golden.pass, d);
      rep.result["dimension"] = r.dimension;
    }
    if (which == "restriction" || which == "all") {
      any = true;
      auto res = starred_restriction(model);
      auto subvars = detail::make_vars(starred_vars(model));
      std::vector<DiffOp> want;
      for (const auto& s : starred_expected(m)) want.push_back(DiffOp::parse(s, subvars));
      bool eq = res.basis.size() == want.size() && span_equal(res.basis, OpBasis::canonical(subvars, want));
      rep.check("restriction", eq, std::to_string(res.basis.size()) + " operators on the starred coordinates");
      ordered_json items = ordered_json::array();
      for (const auto& [src, r] : res.items) {
        items.push_back({{"generator", src}, {"outcome", to_string(r.kind)}, {"restricted", r.kind == Restriction::Restricted ? r.op.str() : ""}});
        rep.text.push_back(src + "  ->  " + to_string(r.kind) + (r.kind == Restriction::Restricted ? ": " + r.op.str() : ""));
      }
      rep.result["restriction"] = items;
    }
    if (!any) throw ParseError("--check must be fields, generators, restriction or all");
    return rep.emit(json, rep.all_pass() ? kPass : kFailed);
  } catch (const std::exception& e) {
    return fail_with(rep, json, e, exit_code_for(e));
  }
}

int cmd_weyl_check(int n, double extent, const std::string& suite, bool json) {
  Report rep{"weyl-check"};
  rep.digest = fnv1a_digest("weyl n=" + std::to_string(n) + " suite=" + suite);
  try {
    weyl::Grid g(n, extent);
    std::vector<std::string> names = suite == "all" ? weyl::numeric_suite_names() : std::vector<std::string>{suite};
    ordered_json report = ordered_json::array();
    bool ok = true;
    for (const auto& name : names)
      for (const auto& c : weyl::run_numeric_suite(name, g, seed_from_env())) {
        ok = ok && c.pass;
        report.push_back({{"suite", c.suite}, {"test", c.test}, {"value", c.value}, {"tolerance", c.tolerance},
                          {"comparison", c.at_least ? ">=" : "<="}, {"pass", c.pass}});
      }
    if (json) {
      std::cout << report.dump(2) << "\n";
    } else {
      for (const auto& r : report) {
        std::ostringstream line;
        line << (r["pass"].get<bool>() ? "[pass] " : "[FAIL] ") << r["suite"].get<std::string>() << "/"
             << r["test"].get<std::string>() << " = " << r["value"].get<double>() << " "
             << r["comparison"].get<std::string>() << " " << r["tolerance"].get<double>();
        std::cout << line.str() << "\n";
      }
    }
    return ok ? kPass : kFailed;
  } catch (const std::exception& e) {
    return fail_with(rep, json, e, exit_code_for(e));
  }
}

int cmd_suite(const std::string& data, bool numeric, int n, bool json) {
  SuiteOptions opt;
  opt.data_dir = data;
  opt.numeric = numeric;
  opt.seed = seed_from_env();
  opt.grid_n = n;
  Report rep{"suite"};
  std::string inputs = "seed=" + std::to_string(opt.seed) + " n=" + std::to_string(n) + (numeric ? "" : " no-numeric");
  try {
    for (const auto& name : bundled_algebras()) inputs += read_text_file(data + "/" + name + ".json");
  } catch (const std::exception& e) {
    return fail_with(rep, json, e, exit_code_for(e));
  }
  rep.digest = fnv1a_digest(inputs);
  bool ok = true;
  auto results = run_acceptance(opt, [&](const Criterion& c) {
    if (json) return;
    std::printf("[%s] %2d %s (%.2f s)\n", c.status == Status::Pass ? "pass" : c.status == Status::Skip ? "skip" : "FAIL",
                c.id, c.title.c_str(), c.seconds);
    std::fflush(stdout);
  });
  for (const auto& c : results) {
    ok = ok && c.status != Status::Fail;
    std::string d;
    for (const auto& l : c.details) d += (d.empty() ? "" : "\n") + l;
    rep.checks.push_back({{"name", std::to_string(c.id) + " " + c.title}, {"status", to_string(c.status)}, {"details", d}});
  }
  int code = ok ? kPass : kFailed;
  if (json) rep.emit(true, code);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant operators on flat coadjoint orbits and grid Weyl calculus checks"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Machine-readable JSON report");

  std::string file;
  auto* validate = app.add_subcommand("validate", "Validate an algebra file");
  validate->add_option("file", file, "Algebra JSON")->required();
  validate->add_flag("--json", json);

  auto* orbit = app.add_subcommand("orbit-info", "Flatness, omega, chi and the fields gamma(X_j)");
  orbit->add_option("file", file, "Algebra JSON with xi0")->required();
  orbit->add_flag("--json", json);

  std::string degree = "auto", method = "commutant";
  auto* inv = app.add_subcommand("invariant-ops", "First-order invariant differential operators");
  inv->add_option("file", file, "Algebra JSON with xi0")->required();
  inv->add_option("--degree", degree, "Polynomial degree bound: auto or an integer");
  inv->add_option("--method", method, "commutant, pushforward or both")
      ->check(CLI::IsMember({"commutant", "pushforward", "both"}));
  inv->add_flag("--json", json);

  std::string xs, ys;
  bool symbolic = false;
  auto* bch = app.add_subcommand("bch", "Group product X.Y in exponential coordinates");
  bch->add_option("file", file, "Algebra JSON")->required();
  bch->add_option("--x", xs, "Comma-separated rational coordinates of X");
  bch->add_option("--y", ys, "Comma-separated rational coordinates of Y");
  bch->add_flag("--symbolic", symbolic, "Print the polynomial product law");
  bch->add_flag("--json", json);

  unsigned m = 1;
  std::string which = "all";
  auto* heis = app.add_subcommand("heisenberg", "Golden checks on the Heisenberg semidirect model");
  heis->add_option("--m", m, "Heisenberg rank m");
  heis->add_option("--check", which, "fields, generators, restriction or all")
      ->check(CLI::IsMember({"fields", "generators", "restriction", "all"}));
  heis->add_flag("--json", json);

  int n = 256;
  double extent = 16.0;
  std::string suite = "all";
  auto* weyl_cmd = app.add_subcommand("weyl-check", "Numeric Weyl calculus checks");
  weyl_cmd->add_option("--n", n, "Grid size (power of two)");
  weyl_cmd->add_option("--extent", extent, "Box length");
  weyl_cmd->add_option("--suite", suite, "quantize, pairing, covariance, convolution, seminorms or all")
      ->check(CLI::IsMember({"quantize", "pairing", "covariance", "convolution", "seminorms", "all"}));
  weyl_cmd->add_flag("--json", json);

  std::string data = FLATORBIT_DATA_DIR;
  bool no_numeric = false;
  auto* suite_cmd = app.add_subcommand("suite", "Run every acceptance criterion");
  suite_cmd->add_option("--data", data, "Directory with the bundled algebra files");
  suite_cmd->add_flag("--no-numeric", no_numeric, "Skip the numeric Weyl checks");
  suite_cmd->add_option("--n", n, "Grid size for the numeric checks");
  suite_cmd->add_flag("--all", "Run everything (the default)");
  suite_cmd->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  if (*validate) return cmd_validate(file, json);
  if (*orbit) return cmd_orbit_info(file, json);
  if (*inv) return cmd_invariant_ops(file, degree, method, json);
  if (*bch) return cmd_bch(file, xs, ys, symbolic, json);
  if (*heis) return cmd_heisenberg(m, which, json);
  if (*weyl_cmd) return cmd_weyl_check(n, extent, suite, json);
  if (*suite_cmd) return cmd_suite(data, !no_numeric, n, json);
  return kParse;
}
