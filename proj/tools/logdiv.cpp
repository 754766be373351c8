// logdiv: command-line front end for the logarithmic-divisor toolkit.
//
// Emits deterministic JSON reports (schema "logdiv-report/1"); exit codes:
//   0  report produced (including negative mathematical outcomes)
//   1  input error or corpus-harness violation
//   2  inconclusive (degree cap reached, divisor not recognized as free, ...)

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "logdiv/ilc.hpp"
#include "logdiv/parser.hpp"
#include "logdiv/spencer.hpp"

using json = nlohmann::ordered_json;
using namespace logdiv;

namespace {

constexpr const char* kSchema = "logdiv-report/1";

struct CommonOpts {
  std::string expr;
  std::string file;
  std::vector<std::string> vars;
  std::vector<int> weights;
  std::string json_out;
  double deadline_secs = 0.0;
  int degree_cap = 12;
};

Deadline make_deadline(const CommonOpts& o) {
  if (o.deadline_secs > 0.0) return Deadline::after_seconds(o.deadline_secs);
  return Deadline{};
}

std::string load_expression(const CommonOpts& o) {
  if (!o.expr.empty() && !o.file.empty())
    throw Error("give either an inline expression or --file, not both");
  if (!o.expr.empty()) return o.expr;
  if (o.file.empty()) throw Error("no input: give an expression or --file");
  std::ifstream in(o.file);
  if (!in) throw Error("cannot open input file: " + o.file);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DivisorInput load_divisor(const CommonOpts& o, std::string* text_out) {
  std::string text = load_expression(o);
  std::vector<std::string> vars =
      o.vars.empty() ? collect_variables(text) : o.vars;
  if (vars.empty()) throw Error("no variables in the input expression");
  auto ring = make_ring(vars);
  if (text_out) *text_out = text;
  return DivisorInput::make(parse_expression(text, ring));
}

SaitoBasis require_saito(const DivisorInput& d) {
  auto b = saito_basis(d, log_derivations(d));
  if (!b)
    throw Inconclusive("divisor not recognized as free: no Saito basis "
                       "certificate found");
  return *b;
}

json poly_list(const std::vector<Poly>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(p.to_string());
  return a;
}

json derivation_json(const LogDerivation& der) {
  json j;
  j["a"] = poly_list(der.a);
  j["alpha"] = der.alpha.to_string();
  return j;
}

json basis_json(const SaitoBasis& b) {
  json j;
  j["unit"] = b.unit.get_str();
  json rows = json::array();
  for (const auto& r : b.rows) rows.push_back(derivation_json(r));
  j["rows"] = rows;
  return j;
}

json envelope(const std::string& command, const DivisorInput* d,
              const std::string& text) {
  json j;
  j["schema"] = kSchema;
  j["command"] = command;
  json in;
  in["expression"] = text;
  if (d) {
    in["variables"] = d->ring->names();
    in["f"] = d->f.to_string();
  }
  j["input"] = in;
  return j;
}

void emit(const json& report, const CommonOpts& o) {
  std::string body = report.dump(2);
  body.push_back('\n');
  if (o.json_out.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(o.json_out);
    if (!out) throw Error("cannot write report: " + o.json_out);
    out << body;
    std::cerr << "report written to " << o.json_out << "\n";
  }
}

json flag_json(const std::optional<bool>& v) {
  if (!v) return nullptr;
  return *v;
}

int weighted_degree(const Poly& f, const std::vector<int>& w) {
  int m = 0;
  for (const auto& [e, c] : f.terms()) {
    int d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * w[i];
    m = std::max(m, d);
  }
  return m;
}

// ---------------- commands ----------------

json cmd_classify(const DivisorInput& d) {
  auto rep = classify(d);
  json r;
  r["free"] = rep.free;
  r["euler_homogeneous"] = rep.euler_homogeneous;
  r["quasi_homogeneous"] =
      rep.quasi_homogeneous ? json(*rep.quasi_homogeneous) : json(nullptr);
  r["koszul_free"] = flag_json(rep.koszul_free);
  r["linear_jacobian_type"] = flag_json(rep.linear_jacobian_type);
  r["differential_linear_type"] = flag_json(rep.differential_linear_type);
  r["global_test_caveat"] = rep.global_test_caveat;
  json prov = json::array();
  for (const auto& [flag, src] : rep.provenance) {
    json p;
    p["flag"] = flag;
    p["source"] = src;
    prov.push_back(p);
  }
  r["provenance"] = prov;
  if (rep.free) r["saito_basis"] = basis_json(require_saito(d));
  return r;
}

json cmd_logder(const DivisorInput& d) {
  json r;
  json ders = json::array();
  for (const auto& der : log_derivations(d)) ders.push_back(derivation_json(der));
  r["derivations"] = ders;
  return r;
}

json cmd_theta(const DivisorInput& d) {
  auto basis = require_saito(d);
  auto S = symbol_ring(d);
  json r;
  r["symbol_ring"] = S->names();
  r["saito_basis"] = basis_json(basis);
  r["generators"] = poly_list(theta_generators(d, basis));
  return r;
}

json cmd_rees_kernel(const DivisorInput& d) {
  auto S = symbol_ring(d);
  json r;
  r["symbol_ring"] = S->names();
  r["generators"] = poly_list(rees_kernel(d));
  return r;
}

json cmd_bfunction(const DivisorInput& d, const CommonOpts& o) {
  auto basis = require_saito(d);
  auto b = bfunction_via_theta(d, basis, o.degree_cap, make_deadline(o));
  json r;
  json coeffs = json::array();
  for (const auto& c : b.coeffs) coeffs.push_back(c.get_str());
  r["coefficients_ascending"] = coeffs;
  r["polynomial"] = bfunction_poly(b, make_ring({"s"})).to_string();
  json roots = json::array();
  for (const auto& [root, mult] : b.rational_roots) {
    json e;
    e["root"] = root.get_str();
    e["multiplicity"] = mult;
    roots.push_back(e);
  }
  r["rational_roots"] = roots;
  r["integer_roots"] = b.integer_roots;
  r["exact"] = b.exact;
  auto k0 = lct_threshold(b);
  r["lct_threshold"] = k0 ? json(*k0) : json(nullptr);
  r["certificate"] = b.certificate.to_string();
  r["functional_equation_verified"] =
      verify_functional_equation(d.f, b, b.certificate);
  return r;
}

struct SpencerOpts {
  std::string pair = "theta";
  std::string mode = "graded";
  int W = 4;
  int N = 3;
  int twist_m = 0;
  std::vector<int> specialize;
};

json cmd_spencer(const DivisorInput& d, const CommonOpts& o,
                 const SpencerOpts& so) {
  SpencerSpec spec;
  spec.d = d;
  spec.basis = require_saito(d);
  spec.W = so.W;
  spec.N = so.N;
  if (so.pair == "theta") spec.pair = SpencerPair::ThetaFs;
  else if (so.pair == "derlog") spec.pair = SpencerPair::DerLogS;
  else throw Error("unknown --pair (use theta or derlog)");

  std::vector<int> wts;
  if (so.mode == "graded") {
    spec.mode = TruncationMode::WeightGraded;
    if (!o.weights.empty()) {
      wts = o.weights;
    } else {
      auto w = is_quasi_homogeneous(d);
      if (!w)
        throw Inconclusive("divisor is not quasi-homogeneous; rerun with "
                           "--mode filtered");
      wts = *w;
    }
    spec.basis = homogeneous_saito_basis(d, spec.basis, wts);
  } else if (so.mode == "filtered") {
    spec.mode = TruncationMode::WeightFiltered;
    wts.assign(d.ring->size(), 1);
  } else {
    throw Error("unknown --mode (use graded or filtered)");
  }

  auto sf = structure_functions(d, spec.basis);
  auto e = trivial_ilc(d, spec.basis, 1);
  if (!check_integrability(d, spec.basis, e, sf))
    throw Error("internal: trivial connection failed integrability");
  if (so.twist_m != 0) {
    e = twist(d, spec.basis, e, so.twist_m);
    if (!check_integrability(d, spec.basis, e, sf))
      throw Error("internal: twisted connection failed integrability");
  }
  spec.e = e;
  spec.e_weights = {-so.twist_m * weighted_degree(d.f, wts)};

  auto tc = build_spencer(spec);
  auto table = tc.graded ? check_exactness(tc) : homology_evidence(tc);

  json r;
  r["pair"] = so.pair;
  r["mode"] = so.mode;
  r["honesty"] = tc.graded ? "exact-per-weight-component" : "evidence-only";
  r["W"] = spec.W;
  r["N"] = spec.N;
  r["twist"] = so.twist_m;
  r["x_weights"] = tc.weights;
  r["operator_weights"] = tc.zeta_weights;
  r["saito_basis"] = basis_json(spec.basis);
  json rows = json::array();
  for (const auto& [w, h] : table.rows) {
    json e2;
    e2["weight"] = w;
    e2["homology_dims"] = h;
    rows.push_back(e2);
  }
  r["homology"] = rows;
  r["exact_negative_degrees"] = table.exact_negative;
  r["exact_all_degrees"] = table.exact_all;
  if (tc.graded)
    r["graded_koszul_check"] = graded_koszul_check(d, spec.basis);

  if (!so.specialize.empty()) {
    json specs = json::array();
    for (int k : so.specialize) {
      auto rep = specialize_and_check(tc, k);
      json e2;
      e2["k"] = k;
      e2["all_kernels_equal"] = rep.all_equal;
      e2["all_segments_exact"] = rep.all_segment_exact;
      json comps = json::array();
      for (std::size_t i = 0; i < rep.kernel_equality.size(); ++i) {
        json c;
        c["weight"] = rep.kernel_equality[i].first;
        c["kernel_equality"] = rep.kernel_equality[i].second;
        c["segment_exact"] = rep.segment_exact[i].second;
        comps.push_back(c);
      }
      e2["components"] = comps;
      specs.push_back(e2);
    }
    r["specializations"] = specs;
  }
  return r;
}

json cmd_ilc_check(const DivisorInput& d, const std::string& ilc_path) {
  std::ifstream in(ilc_path);
  if (!in) throw Error("cannot open ILC file: " + ilc_path);
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& ex) {
    throw Error(std::string("bad ILC JSON: ") + ex.what());
  }
  if (!doc.contains("rank") || !doc.contains("matrices"))
    throw Error("ILC JSON needs fields: rank, matrices");
  int rank = doc["rank"].get<int>();
  if (rank < 1) throw Error("ILC rank must be >= 1");

  auto basis = require_saito(d);
  const std::size_t n = d.ring->size();
  const auto& mats = doc["matrices"];
  if (!mats.is_array() || mats.size() != n)
    throw Error("ILC JSON needs one matrix per Saito basis row (" +
                std::to_string(n) + ")");
  ILCData e;
  e.rank = rank;
  for (const auto& mj : mats) {
    if (!mj.is_array() || mj.size() != static_cast<std::size_t>(rank))
      throw Error("ILC matrix has wrong row count");
    PolyMatrix A(rank, std::vector<Poly>(rank, Poly(d.ring)));
    for (int i = 0; i < rank; ++i) {
      const auto& rowj = mj[i];
      if (!rowj.is_array() || rowj.size() != static_cast<std::size_t>(rank))
        throw Error("ILC matrix has wrong column count");
      for (int j = 0; j < rank; ++j)
        A[i][j] = parse_expression(rowj[j].get<std::string>(), d.ring);
    }
    e.matrices.push_back(std::move(A));
  }

  auto sf = structure_functions(d, basis);
  bool ok = check_integrability(d, basis, e, sf);
  bool sf_nonzero = false;
  for (const auto& ci : sf.c)
    for (const auto& cij : ci)
      for (const auto& c : cij) sf_nonzero = sf_nonzero || !c.is_zero();

  json r;
  r["rank"] = rank;
  r["saito_basis"] = basis_json(basis);
  r["structure_functions_nonzero"] = sf_nonzero;
  r["integrable"] = ok;
  return r;
}

// ---------------- corpus harness ----------------

struct CorpusItem {
  std::string name;
  std::string expr;
  std::vector<std::string> vars;
};

const std::vector<CorpusItem>& corpus() {
  static const std::vector<CorpusItem> items = {
      {"smooth-line", "x", {"x"}},
      {"smooth-parabola", "x + y^2", {"x", "y"}},
      {"normal-crossing", "x*y", {"x", "y"}},
      {"cusp", "x^2 - y^3", {"x", "y"}},
      {"two-lines", "x*(x+y)", {"x", "y"}},
      {"three-lines", "x*y*(x+y)", {"x", "y"}},
      {"four-lines", "x*y*(x+y)*(x-y)", {"x", "y"}},
      {"higher-cusp-25", "x^2 - y^5", {"x", "y"}},
      {"higher-cusp-34", "x^3 - y^4", {"x", "y"}},
      {"higher-cusp-35", "x^3 - y^5", {"x", "y"}},
      {"nonhomogeneous-quartic", "x1*x2*(x1+x2)*(x1+x2*x3)",
       {"x1", "x2", "x3"}},
      {"generic-4-planes", "x*y*z*(x+y+z)", {"x", "y", "z"}},
  };
  return items;
}

int run_corpus() {
  int failures = 0;
  auto fail = [&](const std::string& name, const std::string& what) {
    std::cout << "FAIL " << name << ": " << what << "\n";
    ++failures;
  };

  for (const auto& item : corpus()) {
    try {
      auto ring = make_ring(item.vars);
      auto d = DivisorInput::make(parse_expression(item.expr, ring));
      auto rep = classify(d);
      // Implication closure.
      if (rep.quasi_homogeneous && rep.free &&
          !(rep.linear_jacobian_type && *rep.linear_jacobian_type))
        fail(item.name, "quasi-homogeneous free divisor is not LJT");
      if (rep.linear_jacobian_type && *rep.linear_jacobian_type &&
          !(rep.koszul_free && *rep.koszul_free))
        fail(item.name, "LJT divisor is not Koszul free");
      if (rep.linear_jacobian_type && *rep.linear_jacobian_type &&
          !rep.euler_homogeneous)
        fail(item.name, "LJT divisor is not Euler homogeneous");
      std::cout << "ok " << item.name << ": free=" << rep.free
                << " qh=" << (rep.quasi_homogeneous ? 1 : 0)
                << " koszul="
                << (rep.koszul_free ? (*rep.koszul_free ? "1" : "0") : "-")
                << " ljt="
                << (rep.linear_jacobian_type
                        ? (*rep.linear_jacobian_type ? "1" : "0")
                        : "-")
                << "\n";
    } catch (const std::exception& ex) {
      fail(item.name, ex.what());
    }
  }

  // Pinned classifications.
  auto expect = [&](const std::string& expr,
                    const std::vector<std::string>& vars, bool free_,
                    bool koszul, bool ljt) {
    auto d = DivisorInput::make(parse_expression(expr, make_ring(vars)));
    auto rep = classify(d);
    bool ok = rep.free == free_ &&
              rep.koszul_free.value_or(false) == koszul &&
              rep.linear_jacobian_type.value_or(false) == ljt;
    if (!ok) fail(expr, "pinned classification mismatch");
    else std::cout << "ok pinned classification " << expr << "\n";
  };
  try {
    expect("x*y", {"x", "y"}, true, true, true);
    expect("x^2 - y^3", {"x", "y"}, true, true, true);
    expect("x1*x2*(x1+x2)*(x1+x2*x3)", {"x1", "x2", "x3"}, true, false,
           false);
    // The quartic still passes the symbol check of the theta operators.
    auto dq = DivisorInput::make(parse_expression(
        "x1*x2*(x1+x2)*(x1+x2*x3)", make_ring({"x1", "x2", "x3"})));
    auto bq = require_saito(dq);
    if (!graded_koszul_check(dq, bq))
      fail("quartic", "graded symbol check expected to pass");
    else std::cout << "ok quartic graded symbol check\n";
  } catch (const std::exception& ex) {
    fail("pinned classifications", ex.what());
  }

  // Pinned b-functions.
  auto expect_b = [&](const std::string& expr,
                      const std::vector<std::string>& vars,
                      const std::vector<std::string>& roots) {
    auto d = DivisorInput::make(parse_expression(expr, make_ring(vars)));
    auto b = bfunction_via_theta(d, require_saito(d));
    std::vector<std::string> got;
    for (const auto& [r, m] : b.rational_roots)
      for (int i = 0; i < m; ++i) got.push_back(r.get_str());
    bool ok = got == roots && b.exact &&
              verify_functional_equation(d.f, b, b.certificate) &&
              lct_threshold(b) == std::optional<long>(1);
    if (!ok) fail(expr, "pinned b-function mismatch");
    else std::cout << "ok pinned b-function " << expr << "\n";
  };
  try {
    expect_b("x", {"x"}, {"-1"});
    expect_b("x*y", {"x", "y"}, {"-1", "-1"});
    expect_b("x^2 - y^3", {"x", "y"}, {"-7/6", "-1", "-5/6"});
  } catch (const std::exception& ex) {
    fail("pinned b-functions", ex.what());
  }

  std::cout << (failures == 0 ? "corpus: all checks passed"
                              : "corpus: FAILURES") << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"logarithmic divisor toolkit"};
  app.require_subcommand(0, 1);

  bool corpus_mode = false;
  app.add_flag("--corpus", corpus_mode,
               "run the built-in example suite as an acceptance harness");

  CommonOpts common;
  SpencerOpts so;
  std::string ilc_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("expression", common.expr, "inline polynomial expression");
    sub->add_option("--file", common.file, "read the expression from a file");
    sub->add_option("--vars", common.vars,
                    "comma-separated variable names (default: inferred)")
        ->delimiter(',');
    sub->add_option("--weights", common.weights,
                    "comma-separated positive integer weights")
        ->delimiter(',');
    sub->add_option("--json", common.json_out, "write the JSON report here");
    sub->add_option("--deadline", common.deadline_secs,
                    "abort after this many seconds");
    sub->add_option("--degree-cap", common.degree_cap,
                    "degree cap for operator bases");
  };

  auto* c_classify = app.add_subcommand("classify", "full classification");
  auto* c_logder = app.add_subcommand("logder", "logarithmic derivations");
  auto* c_theta = app.add_subcommand("theta", "degree-one symbol generators");
  auto* c_rees =
      app.add_subcommand("rees-kernel", "kernel of the Rees surjection");
  auto* c_bfun = app.add_subcommand("bfunction", "Bernstein-Sato polynomial");
  auto* c_spencer =
      app.add_subcommand("spencer-verify", "truncated Spencer complexes");
  auto* c_ilc = app.add_subcommand("ilc-check", "connection integrability");
  for (auto* sub :
       {c_classify, c_logder, c_theta, c_rees, c_bfun, c_spencer, c_ilc})
    add_common(sub);
  c_spencer->add_option("--pair", so.pair, "theta | derlog");
  c_spencer->add_option("--mode", so.mode, "graded | filtered");
  c_spencer->add_option("--trunc-weight", so.W, "weight truncation bound");
  c_spencer->add_option("--order-bound", so.N, "operator order bound");
  c_spencer->add_option("--twist", so.twist_m, "use E = O(mD)");
  c_spencer->add_option("--specialize", so.specialize,
                        "also compare the s = -k specialization")
      ->delimiter(',');
  c_ilc->add_option("--ilc", ilc_path, "connection JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  if (corpus_mode) return run_corpus();
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 1;
  }
  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();

  std::string text;
  json report;
  try {
    DivisorInput d = load_divisor(common, &text);
    report = envelope(command, &d, text);
    json result;
    if (command == "classify") result = cmd_classify(d);
    else if (command == "logder") result = cmd_logder(d);
    else if (command == "theta") result = cmd_theta(d);
    else if (command == "rees-kernel") result = cmd_rees_kernel(d);
    else if (command == "bfunction") result = cmd_bfunction(d, common);
    else if (command == "spencer-verify") result = cmd_spencer(d, common, so);
    else if (command == "ilc-check") result = cmd_ilc_check(d, ilc_path);
    report["result"] = result;
    emit(report, common);
    return 0;
  } catch (const Inconclusive& ex) {
    report = envelope(command, nullptr, text);
    report["inconclusive"] = ex.what();
    emit(report, common);
    return 2;
  } catch (const std::exception& ex) {
    report = envelope(command, nullptr, text);
    report["error"] = ex.what();
    emit(report, common);
    return 1;
  }
}
