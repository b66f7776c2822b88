#include "frobkit/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "frobkit/conjugate.hpp"
#include "frobkit/oracle.hpp"

namespace frobkit {

using nlohmann::json;

namespace {

const std::set<std::string> kSpecKeys{"name",     "rank",      "charge",   "degrees", "euler_constant_parts",
                                      "metric",   "potential", "variables"};

Rational rational_field(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) throw SpecError(where + ": expected a rational string such as \"2/3\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument&) {
    throw SpecError(where + ": '" + v.get<std::string>() + "' is not a rational");
  }
}

std::vector<Rational> rational_list(const json& v, const std::string& where, std::size_t size) {
  if (!v.is_array()) throw SpecError(where + ": expected a list");
  if (v.size() != size) throw SpecError(where + ": expected " + std::to_string(size) + " entries, got " + std::to_string(v.size()));
  std::vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational_field(v[i], where + "[" + std::to_string(i + 1) + "]"));
  return out;
}

bool identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

json strings(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

json expr_json(const RatExpr& e, const VarTable& vars) { return to_string(e, vars); }

json matrix_json(const Matrix& m, const VarTable& vars) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& e : row) r.push_back(to_string(e, vars));
    out.push_back(r);
  }
  return out;
}

json vector_json(const VectorField& v, const VarTable& vars) {
  json out = json::array();
  for (const auto& e : v) out.push_back(to_string(e, vars));
  return out;
}

json exprs_json(const std::vector<Expr>& v, const VarTable& vars) {
  json out = json::array();
  for (const auto& e : v) out.push_back(to_string(e, vars));
  return out;
}

json rational_matrix_json(const RationalMatrix& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(strings(row));
  return out;
}

class Builder {
 public:
  explicit Builder(std::string command) : command_(std::move(command)) {
    doc_["checks"] = json::object();
    doc_["values"] = json::object();
    doc_["notes"] = json::array();
  }

  void check(const std::string& prefix, const CheckResult& c, const VarTable& vars) {
    json e;
    if (!c.applicable) {
      e["status"] = "inapplicable";
    } else if (c.pass) {
      e["status"] = "pass";
    } else {
      e["status"] = c.claim ? "refuted" : "fail";
    }
    if (!c.detail.empty()) e["detail"] = c.detail;
    if (c.witness && !c.pass) e["witness"] = to_string(*c.witness, vars);
    doc_["checks"][prefix.empty() ? c.name : prefix + "." + c.name] = e;
  }
  void checks(const std::string& prefix, const std::vector<CheckResult>& cs, const VarTable& vars) {
    for (const auto& c : cs) check(prefix, c, vars);
  }
  void raw_check(const std::string& name, json e) { doc_["checks"][name] = std::move(e); }
  json& values() { return doc_["values"]; }
  void note(std::string text) { doc_["notes"].push_back(std::move(text)); }
  void inapplicable(const std::string& why) { inapplicable_ = why; }

  Report finish(const FrobeniusSpec& spec, const std::string& digest, const RunOptions& opt,
                std::chrono::steady_clock::time_point start) {
    if (!opt.only.empty()) {
      json kept = json::object();
      for (const auto& name : opt.only) {
        bool any = false;
        for (auto it = doc_["checks"].begin(); it != doc_["checks"].end(); ++it)
          if (it.key() == name || it.key().rfind(name + ".", 0) == 0) {
            kept[it.key()] = it.value();
            any = true;
          }
        if (!any && !inapplicable_) throw SpecError("unknown check name '" + name + "' for " + command_);
      }
      doc_["checks"] = kept;
    }
    Report r;
    r.command = command_;
    if (inapplicable_) {
      doc_["status"] = "inapplicable: " + *inapplicable_;
      r.exit_code = kInapplicable;
    } else {
      bool failed = false;
      for (const auto& [name, c] : doc_["checks"].items()) failed = failed || c["status"] == "fail";
      doc_["status"] = failed ? "fail" : "pass";
      r.exit_code = failed ? kFail : kPass;
    }
    doc_["command"] = command_;
    doc_["spec"] = spec_to_json(spec);
    doc_["meta"] = {{"version", kVersion}, {"digest", "sha256:" + digest}, {"seed", opt.seed}};
    if (opt.timing)
      doc_["meta"]["timing_ms"] =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    r.doc = std::move(doc_);
    return r;
  }

 private:
  std::string command_;
  json doc_;
  std::optional<std::string> inapplicable_;
};

json regularity_json(const RegularityTensor& reg, const VarTable& vars) {
  json out{{"R", matrix_json(reg.r, vars)},
           {"determinant", to_string(reg.determinant, vars)},
           {"regular", reg.regular}};
  if (!reg.diagonal.empty()) out["expected_diagonal"] = strings(reg.diagonal);
  return out;
}

json quasihomogeneity_json(const QuasihomogeneityReport& q, const VarTable& vars) {
  json out{{"strict", q.strict}, {"quadratic", q.quadratic}, {"residual", to_string(q.residual, vars)}};
  if (q.quadratic) {
    out["A"] = rational_matrix_json(q.a);
    out["B"] = strings(q.b);
    out["c"] = to_string(q.c);
  }
  return out;
}

CheckResult quasihomogeneity_result(const QuasihomogeneityReport& q) {
  CheckResult c{"quasihomogeneity", q.quadratic, "", std::nullopt};
  if (q.strict)
    c.detail = "E F = (3-d) F";
  else if (q.quadratic)
    c.detail = "E F = (3-d) F + quadratic anomaly";
  else {
    c.detail = "E F - (3-d) F is not a quadratic polynomial";
    c.witness = RatExpr(q.offending);
  }
  return c;
}

CheckResult wdvv_result(const WdvvResidual& w) {
  CheckResult c{"wdvv", true, "WDVV residual vanishes identically", std::nullopt};
  if (auto i = w.first_nonzero()) {
    const auto& [a, b, q, n] = *i;
    c.pass = false;
    c.detail = "first nonzero residual component (i,j,q,n) = (" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
               "," + std::to_string(q + 1) + "," + std::to_string(n + 1) + ")";
    c.witness = RatExpr(w(a, b, q, n));
  }
  return c;
}

// The charge -1 rank 2 pencil with degrees (2, 1) is described as regular in
// the literature it comes from, while R = diag(1, 0) is singular.
bool known_regularity_discrepancy(const FrobeniusSpec& spec, const RegularityTensor& reg) {
  return !reg.regular && spec.rank == 2 && spec.charge == -1 && spec.degrees == std::vector<Rational>{2, 1};
}

void add_regularity(Builder& b, const FrobeniusSpec& spec, const QfpmBundle& bundle) {
  RegularityTensor reg = regularity(spec, bundle);
  json r = regularity_json(reg, spec.variables);
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < spec.rank; ++i)
    if (spec.degrees[i] == spec.degrees[0] / 2) bad.push_back("d" + std::to_string(i + 1));
  if (!reg.regular) {
    std::string why = "R is singular";
    if (!bad.empty()) {
      why += " (";
      for (std::size_t i = 0; i < bad.size(); ++i) why += (i ? ", " : "") + bad[i] + " = d1/2";
      why += ")";
    }
    r["flag"] = why;
    b.note("regularity: " + why);
  }
  if (known_regularity_discrepancy(spec, reg)) {
    r["prose_discrepancy"] = true;
    b.note("regularity: this example is described as having a regular pencil in its source; the computed R is singular");
  }
  b.values()["regularity"] = r;
}

FrobeniusSpec renamed(FrobeniusSpec s, const std::string& prefix) {
  s.variables = VarTable::numbered(prefix, s.rank);
  return s;
}

void run_verify(Builder& b, const FrobeniusSpec& spec) {
  const VarTable& vars = spec.variables;
  CheckResult flat{"flat_metric", true, "d_r d_i d_j F equals the declared metric", std::nullopt};
  try {
    RationalMatrix pi = flat_metric_from_potential(spec.potential, spec.rank);
    if (pi != spec.metric) {
      flat.pass = false;
      flat.detail = "d_r d_i d_j F differs from the declared metric";
    }
    b.values()["flat_metric"] = rational_matrix_json(pi);
  } catch (const std::exception& e) {
    flat.pass = false;
    flat.detail = e.what();
  }
  b.check("", flat, vars);
  if (spec.antidiagonal_metric()) b.values()["standard_form"] = standard_form_defect(spec.potential, spec.rank).is_zero();

  b.check("", wdvv_result(wdvv_residual(spec.potential, spec.metric)), vars);

  QuasihomogeneityReport q = quasihomogeneity_check(spec.potential, spec.euler(), spec.charge);
  b.check("", quasihomogeneity_result(q), vars);
  b.values()["quasihomogeneity"] = quasihomogeneity_json(q, vars);

  DegreeDualityReport dd = degree_duality(spec);
  CheckResult dcheck{"degree_duality", dd.pass, "nonzero eta^{ij} implies d_i + d_j = 2 - d", std::nullopt};
  for (const auto& v : dd.violations) dcheck.detail += "; " + v;
  b.check("", dcheck, vars);

  QfpmBundle bundle = assemble_qfpm(spec);
  b.checks("qfpm", bundle.checks, vars.with("lambda"));
  b.values()["omega1"] = matrix_json(bundle.omega1.entries(), vars);
  b.values()["omega2"] = matrix_json(bundle.omega2.entries(), vars);
  b.values()["euler"] = vector_json(bundle.euler, vars);
  b.values()["identity"] = vector_json(bundle.identity, vars);
  b.values()["tau"] = expr_json(bundle.tau, vars);
  b.values()["tau_alternative"] = to_string(tau_alternative(spec.metric), vars);
  add_regularity(b, spec, bundle);
}

void run_pencil(Builder& b, const FrobeniusSpec& spec) {
  QfpmBundle bundle = assemble_qfpm(spec);
  for (const char* name : {"omega2_flat", "omega1_flat", "pencil_flat", "pencil_additive"})
    if (const CheckResult* c = bundle.find(name)) b.check("", *c, spec.variables.with("lambda"));
  b.values()["omega1"] = matrix_json(bundle.omega1.entries(), spec.variables);
  b.values()["omega2"] = matrix_json(bundle.omega2.entries(), spec.variables);
}

void run_conjugate(Builder& b, const FrobeniusSpec& spec) {
  const VarTable& vars = spec.variables;
  if (spec.charge == 1) {
    b.inapplicable("charge = 1");
    return;
  }
  QfpmBundle bundle = assemble_qfpm(spec);
  std::optional<ConjugationData> cd;
  try {
    cd = conjugate_pencil(bundle, spec.degrees);
  } catch (const IneligibleError& e) {
    b.inapplicable(e.what());
    return;
  }
  b.checks("pencil", cd->checks, vars);
  b.checks("conjugate_qfpm", cd->bundle.checks, vars.with("lambda"));
  json& v = b.values();
  v["f"] = expr_json(cd->f, vars);
  v["e_tilde"] = vector_json(cd->e_tilde, vars);
  v["omega1_tilde"] = matrix_json(cd->omega1_tilde.entries(), vars);
  v["tau_tilde"] = expr_json(cd->tau_tilde, vars);
  v["euler_tilde"] = vector_json(cd->euler_tilde, vars);
  v["charge_tilde"] = to_string(cd->degree_tilde);
  v["degrees_tilde"] = strings(cd->degrees_tilde);
  v["regularity"] = regularity_json(cd->regularity, vars);
  v["regularity_tilde"] = regularity_json(cd->regularity_tilde, vars);

  const VarTable svars = VarTable::numbered("s", spec.rank);
  try {
    TransformResult tr = conjugate_potential(spec, &*cd);
    b.checks("potential", tr.checks, svars);
    v["s_map"] = {{"forward", exprs_json(tr.map.forward(), vars)}, {"inverse", exprs_json(tr.map.inverse(), svars)}};
    v["conjugate_potential"] = to_string(tr.potential, svars);
    v["omega2_s"] = matrix_json(tr.metric.entries(), svars);
  } catch (const IneligibleError& e) {
    b.check("potential", CheckResult::inapplicable("conjugate_potential", e.what()), svars);
    b.note(std::string("conjugate coordinates: hypotheses not met (") + e.what() +
           "); the formal s-map and potential are shown for diagnosis only");
    try {
      CoordinateMap raw = conjugate_map_from_degrees(spec.degrees);
      v["s_map_formal"] = {{"forward", exprs_json(raw.forward(), vars)}, {"inverse", exprs_json(raw.inverse(), svars)}};
      v["conjugate_potential_formal"] =
          to_string(transformed_potential(spec, raw, Exponent(-4 / spec.degrees[0])), svars);
      v["omega2_s"] = matrix_json(pushforward(bundle.omega2.entries(), raw), svars);
    } catch (const std::exception& e2) {
      b.note(std::string("formal s-map unavailable: ") + e2.what());
    }
  }

  InvolutionReport inv = involution_check(spec);
  b.checks("involution", inv.checks, vars);
  v["pencil_sign"] = inv.pencil_sign;
  if (inv.pencil_sign < 0)
    b.note("conjugating the pencil twice returns (Omega2, -Omega1): e~~ = -e under the odd-root sign convention");

  try {
    EqualityReport eq = potential_equality_check(spec);
    b.checks("equality", eq.checks, svars);
    v["equality"] = {{"mode", eq.mode},
                     {"equal_to_inversion_potential", eq.equal},
                     {"equivalent_structure", eq.equivalent_structure},
                     {"inversion_potential", to_string(eq.inversion, svars)},
                     {"residual", to_string(eq.residual, svars)}};
  } catch (const IneligibleError& e) {
    b.check("equality", CheckResult::inapplicable("conjugate_equals_inversion", e.what()), svars);
  }
}

void run_invert(Builder& b, const FrobeniusSpec& spec) {
  const VarTable& vars = spec.variables;
  const VarTable zvars = VarTable::numbered("z", spec.rank);
  std::optional<TransformResult> tr;
  try {
    tr = inversion_symmetry(spec);
  } catch (const IneligibleError& e) {
    b.inapplicable(e.what());
    return;
  }
  b.checks("inversion", tr->checks, zvars);
  json& v = b.values();
  v["z_map"] = {{"forward", exprs_json(tr->map.forward(), vars)}, {"inverse", exprs_json(tr->map.inverse(), zvars)}};
  v["inversion_potential"] = to_string(tr->potential, zvars);
  v["charge_tilde"] = to_string(tr->target.charge);
  v["degrees_tilde"] = strings(tr->target.degrees);
  v["omega2_z"] = matrix_json(tr->metric.entries(), zvars);
  v["quasihomogeneity"] =
      quasihomogeneity_json(quasihomogeneity_check(tr->potential, tr->target.euler(), tr->target.charge), zvars);

  TransformResult twice = inversion_symmetry(renamed(tr->target, "t"));
  QuadraticComparison qc = equals_mod_quadratic(twice.potential, spec.potential);
  CheckResult dbl{"double_inversion", qc.equivalent,
                  qc.residual.is_zero() ? "inverting twice returns F exactly" : "inverting twice returns F up to a quadratic polynomial",
                  std::nullopt};
  if (!qc.equivalent) dbl.witness = RatExpr(qc.residual);
  b.check("", dbl, vars);
  if (!qc.residual.is_zero()) v["double_inversion_residual"] = to_string(qc.residual, vars);
  b.check("", {"degree_transform_involution", transform_degrees(transform_degrees(spec.degrees)) == spec.degrees,
               "applying the degree transform twice is the identity", std::nullopt},
          vars);
}

void run_oracle_command(Builder& b, const FrobeniusSpec& spec, const RunOptions& opt) {
  OracleRegistry reg = oracle_registry(spec);
  std::set<std::string> known;
  for (const auto& id : reg.identities) known.insert(id.name);
  for (const auto& s : reg.skipped) known.insert(s.name);
  for (const auto& n : opt.only)
    if (!known.count(n)) throw SpecError("unknown oracle identity '" + n + "'");
  OracleReport rep = run_oracle(spec, opt.samples, opt.seed, opt.only);
  for (const auto& c : rep.checks) {
    json e{{"status", !c.applicable ? "inapplicable" : c.pass ? "pass" : "fail"}, {"detail", c.detail}};
    if (c.applicable) {
      e["points"] = c.points;
      e["redraws"] = c.redraws;
      e["identity"] = c.what;
    }
    b.raw_check(c.name, e);
  }
  json pts = json::array();
  for (const auto& p : rep.points)
    pts.push_back({{"values", strings(p.point.values)},
                   {"rho", to_string(p.rho)},
                   {"log_x1", to_string(p.point.logval)},
                   {"log_minus_one", to_string(p.point.branchval)},
                   {"lambda", to_string(p.lambda)}});
  b.values()["points"] = pts;
  b.values()["root_order"] = rep.root_order;
  b.values()["samples"] = opt.samples;
}

void render_value(std::ostringstream& out, const std::string& key, const json& v, int indent) {
  const std::string pad(indent, ' ');
  if (v.is_string()) {
    out << pad << key << ": " << v.get<std::string>() << "\n";
  } else if (v.is_object()) {
    out << pad << key << ":\n";
    for (const auto& [k, x] : v.items()) render_value(out, k, x, indent + 2);
  } else if (v.is_array() && !v.empty() && v[0].is_array()) {
    out << pad << key << ":\n";
    for (const auto& row : v) {
      out << pad << "  [";
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? ", " : "") << (row[i].is_string() ? row[i].get<std::string>() : row[i].dump());
      out << "]\n";
    }
  } else if (v.is_array() && !v.empty() && v[0].is_object()) {
    out << pad << key << ": " << v.size() << " entries\n";
  } else if (v.is_array()) {
    out << pad << key << ": [";
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << (v[i].is_string() ? v[i].get<std::string>() : v[i].dump());
    out << "]\n";
  } else {
    out << pad << key << ": " << v.dump() << "\n";
  }
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return out.str();
}

FrobeniusSpec spec_from_json(const json& doc) {
  if (!doc.is_object()) throw SpecError("spec: expected an object");
  for (const auto& [key, value] : doc.items())
    if (!kSpecKeys.count(key)) throw SpecError("spec: unknown key '" + key + "'");
  for (const char* key : {"name", "rank", "charge", "degrees", "potential", "variables"})
    if (!doc.contains(key)) throw SpecError(std::string("spec: missing key '") + key + "'");

  FrobeniusSpec s;
  if (!doc["name"].is_string()) throw SpecError("name: expected a string");
  s.name = doc["name"].get<std::string>();
  if (!doc["rank"].is_number_integer()) throw SpecError("rank: expected an integer");
  const long rank = doc["rank"].get<long>();
  if (rank < 2) throw SpecError("rank: must be at least 2, got " + std::to_string(rank));
  if (rank >= static_cast<long>(kMaxVariables)) throw SpecError("rank: at most " + std::to_string(kMaxVariables - 1));
  s.rank = static_cast<std::size_t>(rank);
  s.charge = rational_field(doc["charge"], "charge");
  s.degrees = rational_list(doc["degrees"], "degrees", s.rank);
  if (s.degrees.back() != 1) throw SpecError("degrees: d_r must be 1, got " + to_string(s.degrees.back()));
  s.euler_constants = doc.contains("euler_constant_parts")
                          ? rational_list(doc["euler_constant_parts"], "euler_constant_parts", s.rank)
                          : std::vector<Rational>(s.rank, Rational(0));
  if (doc.contains("metric")) {
    const json& m = doc["metric"];
    if (!m.is_array() || m.size() != s.rank) throw SpecError("metric: expected a " + std::to_string(rank) + "x" + std::to_string(rank) + " matrix");
    for (std::size_t i = 0; i < s.rank; ++i) s.metric.push_back(rational_list(m[i], "metric[" + std::to_string(i + 1) + "]", s.rank));
    for (std::size_t i = 0; i < s.rank; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (s.metric[i][j] != s.metric[j][i]) throw SpecError("metric: not symmetric");
    try {
      (void)inverse(s.metric);
    } catch (const SingularMatrixError&) {
      throw SpecError("metric: singular");
    }
  } else {
    s.metric = antidiagonal(s.rank);
  }

  const json& vars = doc["variables"];
  if (!vars.is_array() || vars.size() != s.rank)
    throw SpecError("variables: expected " + std::to_string(rank) + " names");
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!v.is_string() || !identifier(v.get<std::string>()) || v.get<std::string>() == "log")
      throw SpecError("variables: invalid name " + v.dump());
    if (!seen.insert(v.get<std::string>()).second) throw SpecError("variables: duplicate name " + v.dump());
    s.variables.names.push_back(v.get<std::string>());
  }

  if (!doc["potential"].is_string()) throw SpecError("potential: expected an expression string");
  const std::string text = doc["potential"].get<std::string>();
  try {
    s.potential = parse_expr(text, s.variables);
  } catch (const ParseError& e) {
    std::size_t line = 1, col = e.column();
    for (std::size_t i = 0; i + 1 < e.column() && i < text.size(); ++i)
      if (text[i] == '\n') {
        ++line;
        col = e.column() - i - 1;
      }
    throw ParseError("potential (line " + std::to_string(line) + ", column " + std::to_string(col) + "): " + e.what(),
                     e.column());
  } catch (const DomainError& e) {
    throw SpecError(std::string("potential: ") + e.what());
  }
  return s;
}

json spec_to_json(const FrobeniusSpec& s) {
  json m = json::array();
  for (const auto& row : s.metric) m.push_back(strings(row));
  return {{"name", s.name},
          {"rank", s.rank},
          {"charge", to_string(s.charge)},
          {"degrees", strings(s.degrees)},
          {"euler_constant_parts", strings(s.euler_constants)},
          {"metric", m},
          {"potential", to_string(s.potential, s.variables)},
          {"variables", s.variables.names}};
}

FrobeniusSpec load_spec(const std::string& path, std::string* digest) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open spec file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  if (digest) *digest = sha256_hex(bytes);
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw SpecError(path + ": " + e.what());
  }
  return spec_from_json(doc);
}

Report run_command(const std::string& command, const FrobeniusSpec& spec, const std::string& digest,
                   const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Builder b(command);
  if (command == "verify")
    run_verify(b, spec);
  else if (command == "conjugate")
    run_conjugate(b, spec);
  else if (command == "invert")
    run_invert(b, spec);
  else if (command == "pencil")
    run_pencil(b, spec);
  else if (command == "oracle")
    run_oracle_command(b, spec, options);
  else
    throw SpecError("unknown command '" + command + "'");
  RunOptions effective = options;
  if (command == "oracle") effective.only.clear();  // already applied by the oracle itself
  return b.finish(spec, digest, effective, start);
}

std::string emit_json(const Report& report) { return report.doc.dump(2) + "\n"; }

std::string emit_text(const Report& report) {
  const json& d = report.doc;
  std::ostringstream out;
  out << "frobkit " << report.command << " " << d["spec"]["name"].get<std::string>() << ": "
      << d["status"].get<std::string>() << "\n";
  for (const auto& [name, c] : d["checks"].items()) {
    out << "  " << std::left << std::setw(13) << c["status"].get<std::string>() << name;
    if (c.contains("detail") && c["status"] != "pass") out << "  " << c["detail"].get<std::string>();
    if (c.contains("witness")) out << "\n      witness: " << c["witness"].get<std::string>();
    out << "\n";
  }
  if (!d["values"].empty()) {
    out << "values:\n";
    for (const auto& [k, v] : d["values"].items()) render_value(out, k, v, 2);
  }
  if (!d["notes"].empty()) {
    out << "notes:\n";
    for (const auto& n : d["notes"]) out << "  - " << n.get<std::string>() << "\n";
  }
  out << "meta: version " << d["meta"]["version"].get<std::string>() << ", " << d["meta"]["digest"].get<std::string>()
      << ", seed " << d["meta"]["seed"].dump() << "\n";
  return out.str();
}

}  // namespace frobkit
