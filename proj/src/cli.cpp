#include "diagonalis/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "deciders_common.hpp"
#include "diagonalis/constructors.hpp"
#include "diagonalis/deciders.hpp"
#include "diagonalis/errors.hpp"
#include "diagonalis/json_io.hpp"
#include "diagonalis/oracle.hpp"
#include "diagonalis/spectra.hpp"

namespace diagonalis::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kInputs{"lambda", "d", "s", "spec", "points", "vertices", "matrix", "rays"};

struct Args {
  std::string command, target;
  std::map<std::string, std::string> raw;
  std::map<std::string, json> in;
  bool exact_flag = false, float_flag = false;
  bool exact = true;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::optional<std::uint64_t> budget, restarts, sweeps, coeff_bound, horizon, max_candidates;
  std::uint64_t trials = 100;
  std::string p, kind = "full", variant = "unitary", mode = "general", kernel = "0";

  const json& need(const std::string& name) const {
    auto it = in.find(name);
    if (it == in.end()) throw InputError("--" + name + " is required for " + command + " " + target);
    return it->second;
  }
  bool has(const std::string& name) const { return in.count(name) > 0; }

  std::vector<Real> reals(const std::string& n) const { return io::reals_from_json(need(n), exact); }
  std::vector<Complex> complexes(const std::string& n) const { return io::complexes_from_json(need(n), exact); }
  seq::SequenceSpec spec(const std::string& n) const { return io::spec_from_json(need(n), exact); }
  spectra::OperatorSpec op() const { return io::operator_from_json(need("spec"), exact); }
  Matrix matrix() const { return io::matrix_from_json(need("matrix")); }
};

/// A path to an existing file is read; otherwise the text is parsed as JSON, or kept as a JSON string.
json load(const std::string& text) {
  std::string body = text;
  std::error_code ec;
  if (std::filesystem::is_regular_file(text, ec)) {
    std::ifstream f(text);
    std::stringstream ss;
    ss << f.rdbuf();
    body = ss.str();
  }
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) {
    if (body != text) throw InputError("file " + text + " is not valid JSON");
    return json(text);
  }
  return j;
}

bool contains_float(const json& j) {
  if (j.is_number_float()) return true;
  if (j.is_structured())
    for (const auto& x : j)
      if (contains_float(x)) return true;
  return false;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json cplx_list(const std::vector<cplx>& v) {
  json a = json::array();
  for (auto z : v) a.push_back(cplx_json(z));
  return a;
}

std::vector<cplx> to_std(const std::vector<Complex>& v) {
  std::vector<cplx> out;
  for (const auto& z : v) out.push_back(z.to_std());
  return out;
}

major::PLevel plevel(const std::string& p) {
  if (p.empty()) throw InputError("--p is required");
  if (p == "inf" || p == "infinity") return major::PLevel::infinity();
  try {
    std::size_t used = 0;
    long long v = std::stoll(p, &used);
    if (used != p.size() || v < 0) throw InputError("");
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw InputError("--p must be a nonnegative integer or inf");
  }
}

int major_exit(major::Verdict v) {
  switch (v) {
    case major::Verdict::Holds: return 0;
    case major::Verdict::Fails: return 1;
    case major::Verdict::Unknown: return 2;
  }
  return 2;
}

using Result = std::pair<json, int>;

Result decided(const decide::Decision& d) { return {d.to_json(), decide::exit_code(d.verdict)}; }

Result run_majorization(const Args& a) {
  major::Options opt;
  if (a.horizon) opt.horizon = *a.horizon;
  if (a.tol) opt.tol = *a.tol;
  major::MajorizationVerdict v;
  if (a.kind == "finite") {
    v = major::majorize_finite(a.reals("d"), a.reals("lambda"), opt);
  } else {
    auto d = a.spec("d"), l = a.spec("lambda");
    if (a.kind == "weak") v = major::weak_majorize(d, l, opt);
    else if (a.kind == "full") v = major::majorize(d, l, opt);
    else if (a.kind == "l1") v = major::majorize_l1(d, l, opt);
    else if (a.kind == "p") v = major::p_majorize(d, l, plevel(a.p), opt);
    else if (a.kind == "approx-p") v = major::approx_p_majorize(d, l, plevel(a.p), opt);
    else throw InputError("--kind must be finite, weak, full, l1, p or approx-p");
  }
  json j = decide::detail::witness_json(v);
  j["kind"] = a.kind;
  j["mode"] = major::to_string(v.mode);
  return {j, major_exit(v.verdict)};
}

Result run_trace_set(const Args& a) {
  std::vector<decide::Ray> rays;
  for (const auto& r : a.need("rays")) {
    if (!r.is_object() || !r.contains("phase") || !r.contains("magnitudes"))
      throw InputError("each ray needs phase and magnitudes");
    rays.push_back({io::real_from_json(r.at("phase"), a.exact), io::spec_from_json(r.at("magnitudes"), a.exact)});
  }
  auto t = decide::classify_trace_set(rays, a.tol.value_or(1e-12));
  return {t.to_json(), 0};
}

Result run_decide(const Args& a) {
  decide::Options opt;
  if (a.tol) opt.tol = *a.tol;
  if (a.coeff_bound) opt.coeff_bound = *a.coeff_bound;
  if (a.horizon) opt.major.horizon = *a.horizon;
  if (a.max_candidates) opt.max_candidates = *a.max_candidates;
  const std::string& t = a.target;
  if (t == "majorization") return run_majorization(a);
  if (t == "ffh" || t == "trace-set") return run_trace_set(a);
  if (t == "schur-horn") return decided(decide::decide_schur_horn(a.reals("lambda"), a.reals("d"), opt));
  if (t == "gohberg-markus")
    return decided(decide::decide_gohberg_markus(a.spec("lambda"), a.spec("d"), opt));
  if (t == "kw")
    return decided(decide::decide_kw(a.spec("s"), io::count_from_json(load(a.kernel)), a.spec("d"), opt));
  if (t == "kadison") return decided(decide::decide_kadison(a.spec("d"), opt));
  if (t == "bownik-jasper") return decided(decide::decide_bownik_jasper(a.reals("points"), a.spec("d"), opt));
  if (t == "neumann") return decided(decide::decide_neumann_closure(a.op(), a.spec("d"), opt));
  if (t == "blaschke") {
    if (a.mode != "selfadjoint" && a.mode != "general") throw InputError("--mode must be selfadjoint or general");
    auto m = a.mode == "selfadjoint" ? decide::BlaschkeMode::Selfadjoint : decide::BlaschkeMode::General;
    return decided(decide::check_blaschke(a.op(), a.spec("d"), m, opt));
  }
  if (t == "three-point") return decided(decide::decide_three_point(a.op(), a.spec("d"), opt));
  if (t == "williams") return decided(decide::decide_williams_3x3(a.complexes("lambda"), a.complexes("d"), opt));
  if (t == "arveson") return decided(decide::check_arveson(a.complexes("vertices"), a.spec("d"), opt));
  if (t == "horn-unitary") {
    decide::HornVariant v;
    if (a.variant == "unitary") v = decide::HornVariant::Unitary;
    else if (a.variant == "orthogonal") v = decide::HornVariant::Orthogonal;
    else if (a.variant == "rotation") v = decide::HornVariant::Rotation;
    else throw InputError("--variant must be unitary, orthogonal or rotation");
    return decided(decide::decide_horn_unitary(a.complexes("d"), v, opt));
  }
  if (t == "jlw-unitary") return decided(decide::decide_jlw_unitary(a.spec("d"), opt));
  if (t == "thompson") return decided(decide::decide_thompson(a.reals("s"), a.complexes("d"), opt));
  if (t == "thompson-compact") return decided(decide::decide_thompson_compact(a.spec("s"), a.spec("d"), opt));
  if (t == "muller-tomilov-p") {
    double p = 0;
    try {
      p = std::stod(a.p);
    } catch (const std::exception&) {
      throw InputError("--p must be a number");
    }
    return decided(decide::check_mt_p_summable(a.op(), a.spec("d"), p, opt));
  }
  if (t == "fan") return decided(decide::check_fan_criterion(io::ordered_from_json(a.need("d"), a.exact), opt));
  throw InputError("unknown theorem: " + t);
}

std::vector<Real> measured_diag_real(const Matrix& m) {
  std::vector<Real> out;
  for (std::size_t i = 0; i < m.n(); ++i) out.push_back(Real(m(i, i).real()));
  return out;
}

std::vector<Complex> measured_diag(const Matrix& m) {
  std::vector<Complex> out;
  for (std::size_t i = 0; i < m.n(); ++i) out.push_back(Complex(m(i, i)));
  return out;
}

std::vector<Real> as_reals(const std::vector<double>& v) { return {v.begin(), v.end()}; }

/// Realization JSON plus a verification block that re-decides on the measured data.
json report(const construct::Realization& r, double tol, std::optional<decide::Decision> roundtrip) {
  json j = r.to_json();
  json v{{"tolerance", tol}, {"residuals", j["residuals"]}};
  if (roundtrip) v["roundtrip"] = roundtrip->to_json();
  j["verification"] = v;
  return j;
}

Result run_construct(const Args& a) {
  const double tol = a.tol.value_or(construct::kDefaultTol);
  const std::string& t = a.target;
  if (t == "schur-horn" || t == "projection") {
    auto r = t == "schur-horn" ? construct::construct_schur_horn(a.reals("lambda"), a.reals("d"), tol)
                               : construct::construct_projection_with_diagonal(a.reals("d"), tol);
    auto back = decide::decide_schur_horn(as_reals(spectra::hermitian_eigenvalues(r.matrix)),
                                          measured_diag_real(r.matrix));
    return {report(r, tol, back), 0};
  }
  if (t == "convex-decomposition") {
    json parts = json::array();
    for (const auto& p : construct::convex_decomposition(a.reals("lambda"), a.reals("d"), tol))
      parts.push_back({{"weight", p.weight}, {"perm", p.perm}});
    return {json{{"method", "birkhoff-caratheodory"}, {"parts", parts}}, 0};
  }
  if (t == "kadison-block") return {construct::construct_kadison_block(a.spec("d"), tol).to_json(), 0};
  if (t == "zero-diagonal") {
    Matrix m = a.matrix();
    auto r = construct::construct_zero_diagonal_basis(m, tol);
    return {report(r, tol, std::nullopt), 0};
  }
  if (t == "unitary") {
    auto r = construct::construct_unitary_with_diagonal(a.complexes("d"), tol);
    auto back = decide::decide_horn_unitary(measured_diag(r.matrix), decide::HornVariant::Unitary);
    return {report(r, tol, back), 0};
  }
  if (t == "thompson") {
    construct::SearchBudget b;
    b.seed = a.seed;
    if (a.budget) b.restarts = *a.budget;
    if (a.restarts) b.restarts = *a.restarts;
    if (a.sweeps) b.sweeps = *a.sweeps;
    auto out = construct::construct_thompson(a.reals("s"), a.complexes("d"), tol, b);
    json j = out.to_json();
    if (!out.realization) return {j, 2};
    const auto& m = out.realization->matrix;
    auto back = decide::decide_thompson(as_reals(spectra::singular_values(m)), measured_diag(m));
    j["realization"] = report(*out.realization, tol, back);
    return {j, 0};
  }
  if (t == "williams") {
    auto lambda = a.complexes("lambda");
    auto out = construct::construct_williams(lambda, a.complexes("d"), a.tol.value_or(1e-8));
    json j = out.to_json();
    if (!out.realization) return {j, 2};
    const Matrix& v = out.realization->matrix;
    Matrix image = v.adjoint() * Matrix::diagonal(to_std(lambda)) * v;
    auto back = decide::decide_williams_3x3(lambda, measured_diag(image));
    j["realization"] = report(*out.realization, a.tol.value_or(1e-8), back);
    return {j, 0};
  }
  throw InputError("unknown construct target: " + t);
}

double match_residual(std::vector<cplx> got, const std::vector<cplx>& want) {
  if (got.size() != want.size()) return INFINITY;
  double worst = 0;
  for (auto w : want) {
    auto it = std::min_element(got.begin(), got.end(), [&](cplx x, cplx y) { return std::abs(x - w) < std::abs(y - w); });
    worst = std::max(worst, std::abs(*it - w));
    got.erase(it);
  }
  return worst;
}

Result run_verify(const Args& a) {
  Matrix m = a.matrix();
  if (!m.square()) throw InputError("matrix must be square");
  const double tol = a.tol.value_or(1e-9);
  json checks = json::object();
  bool pass = true;
  auto add = [&](const char* name, double residual) {
    bool ok = residual <= tol;
    checks[name] = {{"residual", residual}, {"pass", ok}};
    pass = pass && ok;
  };
  if (a.has("lambda")) {
    std::vector<cplx> got;
    if (is_hermitian(m))
      for (double x : spectra::hermitian_eigenvalues(m)) got.push_back(x);
    else if (is_normal(m))
      got = normal_eigen(m).values;
    else
      throw UnsupportedError("eigenvalue claims are checked for normal matrices only");
    add("spectrum", match_residual(got, to_std(a.complexes("lambda"))));
  }
  if (a.has("s")) {
    auto s = a.reals("s");
    std::vector<cplx> want, got;
    for (const auto& x : s) want.push_back(x.to_double());
    for (double x : spectra::singular_values(m)) got.push_back(x);
    add("singular_values", match_residual(got, want));
  }
  if (a.has("d")) {
    auto d = a.complexes("d");
    if (d.size() != m.n()) throw InputError("d must have one entry per row");
    double r = 0;
    for (std::size_t i = 0; i < d.size(); ++i) r = std::max(r, std::abs(m(i, i) - d[i].to_std()));
    add("diagonal", r);
  }
  if (checks.empty()) throw InputError("verify needs at least one of --lambda, --s, --d");
  return {json{{"checks", checks}, {"pass", pass}, {"tolerance", tol}}, pass ? 0 : 1};
}

Result run_oracle(const Args& a) {
  Matrix m = a.matrix();
  if (a.target == "sample") {
    json diags = json::array();
    for (const auto& d : oracle::sample_diagonals(m, a.trials, a.seed)) diags.push_back(cplx_list(d));
    return {json{{"trials", a.trials}, {"seed", a.seed}, {"diagonals", diags}}, 0};
  }
  if (a.target == "search") {
    oracle::SearchBudget b;
    if (a.restarts) b.restarts = *a.restarts;
    if (a.sweeps) b.sweeps = *a.sweeps;
    if (a.budget) b.sweeps = std::max<std::uint64_t>(1, *a.budget / std::max<std::uint64_t>(1, b.restarts));
    auto r = oracle::search_membership(m, to_std(a.complexes("d")), a.tol.value_or(1e-9), b, a.seed);
    json j = r.to_json();
    j["seed"] = a.seed;
    return {j, r.found() ? 0 : 2};
  }
  throw InputError("oracle action must be sample or search");
}

Result run_range(const Args& a) {
  if (a.has("matrix")) {
    Matrix m = a.matrix();
    if (!m.square()) throw InputError("matrix must be square");
    json j{{"polygon", cplx_list(spectra::numerical_range_polygon(m))}};
    if (m.n() == 2) {
      cplx tr = m.trace(), det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
      cplx disc = std::sqrt(tr * tr / 4.0 - det);
      cplx f1 = tr / 2.0 + disc, f2 = tr / 2.0 - disc;
      double fro2 = std::pow(m.frobenius(), 2);
      double minor = std::sqrt(std::max(0.0, fro2 - std::norm(f1) - std::norm(f2))) / 2;
      j["ellipse"] = {{"center", cplx_json(tr / 2.0)},
                      {"foci", cplx_list({f1, f2})},
                      {"semi_major", std::hypot(minor, std::abs(f1 - f2) / 2)},
                      {"semi_minor", minor}};
    }
    return {j, 0};
  }
  auto summary = spectra::essential_summary(a.op());
  return {json{{"essential", io::to_json(summary)}}, 0};
}

json error_json(const std::string& type, const std::string& message) {
  return json{{"error", {{"type", type}, {"message", message}}}};
}

}  // namespace

json schema_document() {
  const json number_or_rational{{"oneOf", json::array({{{"type", "number"}},
                                                      {{"type", "string"}, {"pattern", "^-?[0-9]+(/[0-9]+)?$"}}})}};
  const json scalar{{"oneOf", json::array({number_or_rational,
                                          {{"type", "array"}, {"items", number_or_rational}, {"minItems", 2},
                                           {"maxItems", 2}},
                                          {{"type", "object"},
                                           {"properties", {{"re", number_or_rational}, {"im", number_or_rational}}}}})}};
  const json count{{"oneOf", json::array({{{"type", "integer"}, {"minimum", 0}}, {{"const", "inf"}}})}};
  const json stream{
      {"type", "object"},
      {"required", {"kind"}},
      {"properties",
       {{"kind", {{"enum", {"finite", "constant", "const", "geometric", "telescoping"}}}},
        {"values", {{"type", "array"}, {"items", scalar}}},
        {"value", scalar},
        {"count", count},
        {"first", scalar},
        {"ratio", number_or_rational},
        {"scale", scalar},
        {"start", {{"type", "integer"}, {"minimum", 1}}},
        {"shift", scalar}}}};
  const json sequence{
      {"oneOf",
       json::array({{{"type", "array"}, {"items", scalar}},
                    stream,
                    {{"type", "object"},
                     {"required", {"streams"}},
                     {"properties",
                      {{"field", {{"enum", {"real", "complex"}}}},
                       {"exact", {{"type", "boolean"}}},
                       {"streams", {{"type", "array"}, {"items", stream}}}}}}})}};
  const json matrix{{"oneOf", json::array({{{"type", "array"}, {"items", {{"type", "array"}, {"items", scalar}}}},
                                          {{"type", "object"},
                                           {"required", {"n", "entries"}},
                                           {"properties",
                                            {{"n", {{"type", "integer"}}},
                                             {"real", {{"type", "boolean"}}},
                                             {"entries", {{"type", "array"}, {"items", scalar}}}}}}})}};
  const json op{{"type", "object"},
                {"required", {"kind"}},
                {"properties",
                 {{"kind", {{"enum", {"matrix", "finite_spectrum", "diagonalizable"}}}},
                  {"matrix", matrix},
                  {"points",
                   {{"type", "array"},
                    {"items", {{"type", "object"}, {"properties", {{"value", scalar}, {"multiplicity", count}}}}}}},
                  {"eigs", sequence},
                  {"kernel_dim", count}}}};
  const json decision{{"type", "object"},
                      {"required", {"verdict", "theorem", "mode", "certificate"}},
                      {"properties",
                       {{"verdict",
                         {{"enum",
                           {"Yes", "YesModuloKernel", "No", "Unknown", "SufficientConditionHolds",
                            "NecessaryConditionFails", "ConditionFails"}}}},
                        {"theorem", {{"type", "string"}}},
                        {"mode", {{"enum", {"exact", "float"}}}},
                        {"certificate", {{"type", "object"}}},
                        {"reason", {{"type", "string"}}}}}};
  const json realization{{"type", "object"},
                         {"required", {"method", "kind", "matrix", "residuals"}},
                         {"properties",
                          {{"method", {{"type", "string"}}},
                           {"kind", {{"enum", {"matrix", "basis"}}}},
                           {"matrix", matrix},
                           {"residuals",
                            {{"type", "object"},
                             {"properties", {{"spectral", {{"type", "number"}}}, {"diagonal", {{"type", "number"}}}}}}},
                           {"verification", {{"type", "object"}}}}}};
  const json error{{"type", "object"},
                   {"required", {"error"}},
                   {"properties",
                    {{"error",
                      {{"type", "object"},
                       {"properties",
                        {{"type", {{"enum", {"input", "precondition", "unsupported", "convergence", "internal"}}}},
                         {"message", {{"type", "string"}}}}}}}}}};
  return json{{"$schema", "http://json-schema.org/draft-07/schema#"},
              {"title", "diagonalis"},
              {"version", 1},
              {"definitions",
               {{"scalar", scalar},
                {"count", count},
                {"stream", stream},
                {"sequence", sequence},
                {"matrix", matrix},
                {"operator", op},
                {"decision", decision},
                {"realization", realization},
                {"error", error}}},
              {"exit_codes", {{"0", "Yes or success"}, {"1", "No or precondition failed"},
                              {"2", "Unknown, condition fails, or not found"}, {"3", "malformed input"}}}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Decide, construct and verify diagonals of operators", "diagonalis"};
  app.require_subcommand(1);
  app.fallthrough();
  for (const auto& name : kInputs)
    app.add_option("--" + name, a.raw[name], name + " as inline JSON or a JSON file path");
  app.add_flag("--exact", a.exact_flag, "read every number exactly (decimals as exact decimals)");
  app.add_flag("--float", a.float_flag, "read every number as a double");
  app.add_option("--seed", a.seed, "seed for all randomness");
  app.add_option("--tol", a.tol, "tolerance");
  app.add_option("--budget", a.budget, "search budget (thompson: restarts; oracle search: total sweeps)");
  app.add_option("--restarts", a.restarts, "search restarts");
  app.add_option("--sweeps", a.sweeps, "sweeps per restart");
  app.add_option("--coeff-bound", a.coeff_bound, "coefficient bound for lattice searches");
  app.add_option("--horizon", a.horizon, "partial-sum horizon for majorization scans");
  app.add_option("--max-candidates", a.max_candidates, "candidate cap for the Bownik-Jasper search");
  app.add_option("--trials", a.trials, "oracle sample count");
  app.add_option("--p", a.p, "p level (integer or inf) or summability exponent");
  app.add_option("--kind", a.kind, "majorization kind: finite, weak, full, l1, p, approx-p");
  app.add_option("--variant", a.variant, "horn-unitary variant: unitary, orthogonal, rotation");
  app.add_option("--mode", a.mode, "blaschke mode: selfadjoint or general");
  app.add_option("--kernel", a.kernel, "kernel dimension (integer or inf)");

  auto* dec = app.add_subcommand("decide", "run a theorem decider");
  dec->add_option("theorem", a.target, "theorem tag")->required();
  auto* con = app.add_subcommand("construct", "build a realization");
  con->add_option("target", a.target, "construction target")->required();
  app.add_subcommand("verify", "check a matrix against claimed spectrum, singular values or diagonal");
  auto* ora = app.add_subcommand("oracle", "sample or search unitary orbits");
  ora->add_option("action", a.target, "sample or search")->required();
  app.add_subcommand("range", "numerical-range polygon of a matrix or essential hull of a spec");
  app.add_subcommand("schema", "print the JSON schemas");

  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    out << error_json("input", e.what()).dump(2) << "\n";
    return 3;
  }
  a.command = app.get_subcommands().front()->get_name();

  try {
    bool any_float = false;
    for (const auto& name : kInputs) {
      if (app.get_option("--" + name)->count() == 0) continue;
      a.in[name] = load(a.raw[name]);
      any_float = any_float || contains_float(a.in[name]);
    }
    if (a.exact_flag && a.float_flag) throw InputError("--exact and --float are mutually exclusive");
    a.exact = a.exact_flag || (!a.float_flag && !any_float);

    Result r;
    if (a.command == "decide") r = run_decide(a);
    else if (a.command == "construct") r = run_construct(a);
    else if (a.command == "verify") r = run_verify(a);
    else if (a.command == "oracle") r = run_oracle(a);
    else if (a.command == "range") r = run_range(a);
    else r = {schema_document(), 0};
    out << r.first.dump(2) << "\n";
    return r.second;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    out << error_json("input", e.what()).dump(2) << "\n";
    return 3;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    out << error_json("precondition", e.what()).dump(2) << "\n";
    return 1;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    out << error_json("unsupported", e.what()).dump(2) << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << "\n";
    out << error_json("convergence", e.what()).dump(2) << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << "\n";
    out << error_json("input", e.what()).dump(2) << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    out << error_json("internal", e.what()).dump(2) << "\n";
    return 3;
  }
}

}  // namespace diagonalis::cli
