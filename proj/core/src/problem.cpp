#include "pwforge/problem.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "pwforge/ambient.hpp"
#include "pwforge/bgg.hpp"
#include "pwforge/solvers.hpp"
#include "pwforge/walker.hpp"

namespace pwf {
namespace {

using Json = nlohmann::ordered_json;

// --------------------------------------------------------------------------
// Problem parsing.
// --------------------------------------------------------------------------

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ProblemError(where + ": " + what);
}

std::vector<int> parse_index_key(const std::string& key, int rank, int n,
                                 const std::string& where) {
  std::vector<int> idx;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      size_t used = 0;
      int v = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      idx.push_back(v);
    } catch (...) {
      fail(where, "bad index '" + part + "' in key '" + key + "'");
    }
  }
  if (int(idx.size()) != rank)
    fail(where, "key '" + key + "' needs " + std::to_string(rank) +
                    " comma-separated indices");
  for (int& v : idx) {
    if (v < 1 || v > n)
      fail(where, "index " + std::to_string(v) + " out of range 1.." +
                      std::to_string(n) + " in key '" + key + "'");
    --v;  // to 0-based
  }
  return idx;
}

Poly parse_component(const Json& value, const ChartPtr& chart,
                     const std::string& where) {
  if (!value.is_string()) fail(where, "component must be a polynomial string");
  Poly p;
  try {
    p = Poly::parse(value.get<std::string>());
  } catch (const std::exception& e) {
    fail(where, std::string("parse error: ") + e.what());
  }
  std::set<std::string> allowed(chart->vars.begin(), chart->vars.end());
  for (const auto& v : p.vars())
    if (p.depends_on(v) && !allowed.count(v))
      fail(where, "unknown variable '" + v + "'");
  return p;
}

// Fills a tensor from an index-keyed object, closing under the given
// symmetric index pair (or none).  Conflicting duplicate entries are
// schema errors.
TensorField parse_tensor(const Json& obj, const ChartPtr& chart,
                         std::vector<Variance> idx,
                         const std::vector<std::pair<int, int>>& sym_pairs,
                         const std::string& where) {
  TensorField T(chart, idx);
  if (obj.is_null()) return T;
  if (!obj.is_object()) fail(where, "expected an object of components");
  int rank = int(idx.size());
  std::map<std::vector<int>, Poly> seen;
  for (const auto& [key, value] : obj.items()) {
    auto mi = parse_index_key(key, rank, chart->dim(), where);
    Poly p = parse_component(value, chart, where + "." + key);
    std::vector<std::vector<int>> orbit = {mi};
    for (auto [a, b] : sym_pairs) {
      auto swapped = mi;
      std::swap(swapped[size_t(a)], swapped[size_t(b)]);
      orbit.push_back(swapped);
    }
    for (const auto& slot : orbit) {
      auto it = seen.find(slot);
      if (it != seen.end() && !(it->second - p).is_zero())
        fail(where, "conflicting values for key '" + key + "'");
      seen[slot] = p;
      T.at(slot) = p;
    }
  }
  return T;
}

// --------------------------------------------------------------------------
// Report serialization.
// --------------------------------------------------------------------------

std::string index_key(const std::vector<int>& mi) {
  std::string s;
  for (size_t k = 0; k < mi.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(mi[k] + 1);
  }
  return s;
}

// Nonzero components keyed "A,B,..." (1-based), in lexicographic index
// order.
Json tensor_json(const TensorField& T) {
  Json out = Json::object();
  if (T.rank() == 0) {
    out["value"] = T.at({}).str();
    return out;
  }
  std::vector<int> mi(size_t(T.rank()), 0);
  do {
    const Poly& p = T.at(mi);
    if (!p.is_zero()) out[index_key(mi)] = p.str();
  } while (next_multi_index(mi, T.dim()));
  return out;
}

// Vector field keyed by chart variable names.
Json vector_json(const TensorField& v) {
  Json out = Json::object();
  for (int a = 0; a < v.dim(); ++a)
    if (!v.at({a}).is_zero()) out[v.chart()->vars[size_t(a)]] = v.at({a}).str();
  return out;
}

Json conventions() {
  Json c = Json::object();
  c["curvature"] = "(D_A D_B - D_B D_A) xi^C = R_AB^C_R xi^R";
  c["ricci"] =
      "Ric_AB = R_RA^R_B; the induced metric satisfies "
      "Ric(g) = 2 * pullback(Ric(D))";
  c["phi"] = "g = g_std + Phi with Phi entering the x-x block at +1";
  c["epsilon"] = "eps_12 = +1";
  return c;
}

void render_text(const Json& j, int indent, std::ostream& os) {
  std::string pad(size_t(indent), ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || value.is_array()) {
        os << pad << key << ":\n";
        render_text(value, indent + 2, os);
      } else {
        os << pad << key << ": " << (value.is_string()
                                         ? value.get<std::string>()
                                         : value.dump())
           << "\n";
      }
    }
  } else if (j.is_array()) {
    int k = 0;
    for (const auto& item : j) {
      os << pad << "[" << k++ << "]\n";
      render_text(item, indent + 2, os);
    }
  } else {
    os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

Report finish(const std::string& task, const Problem& p, Json results) {
  Json root = Json::object();
  root["task"] = task;
  Json echo = Json::object();
  if (!p.name.empty()) echo["name"] = p.name;
  echo["dim"] = p.dim;
  echo["x_degree_cap"] = std::min(p.x_degree, max_degree_ceiling());
  root["problem"] = echo;
  root["conventions"] = conventions();
  root["results"] = std::move(results);
  Report rep;
  rep.json_text = root.dump(2) + "\n";
  std::ostringstream os;
  render_text(root, 0, os);
  rep.text = os.str();
  return rep;
}

int effective_cap(const Problem& p) {
  return std::min(p.x_degree, max_degree_ceiling());
}

// --------------------------------------------------------------------------
// Task implementations.
// --------------------------------------------------------------------------

Json task_curvature(const Problem& p) {
  auto pack = curvature_pack(p.connection);
  auto pw = build_pw(p.connection, p.phi);
  auto mc = metric_curvature(pw.g, pw.g_inv, pw.lc);
  Json base = Json::object();
  base["special"] = pack.special;
  base["ricci"] = tensor_json(pack.ricci);
  base["schouten"] = tensor_json(pack.schouten);
  base["weyl"] = tensor_json(pack.weyl);
  base["cotton"] = tensor_json(pack.cotton);
  base["projectively_flat"] =
      p.dim >= 3 ? pack.weyl.is_zero() : pack.cotton.is_zero();
  Json metric = Json::object();
  metric["scalar_curvature"] = mc.scal.str();
  metric["ricci"] = tensor_json(mc.ricci);
  metric["weyl_zero"] = mc.weyl_lower.is_zero();
  Json r = Json::object();
  r["base"] = base;
  r["metric"] = metric;
  return r;
}

Json task_flatness(const Problem& p) {
  auto rep = is_conformally_flat(p.connection, p.phi);
  auto pw = build_pw(p.connection, p.phi);
  auto mc = metric_curvature(pw.g, pw.g_inv, pw.lc);
  Json r = Json::object();
  r["projectively_flat"] = rep.projectively_flat;
  r["b2_vanishes"] = rep.b2_vanishes;
  r["conformally_flat"] = rep.conformally_flat();
  r["metric_weyl_zero"] = mc.weyl_lower.is_zero();
  return r;
}

Json task_einstein(const Problem& p) {
  int cap = effective_cap(p);
  auto res = einstein_scales_reduced(p.connection, p.phi, cap);
  auto pw = build_pw(p.connection, p.phi);
  Json basis = Json::array();
  for (const auto& s : res.basis) {
    Json e = Json::object();
    e["sigma"] = s.sigma.str();
    e["tau"] = s.tau.str();
    e["xi"] = vector_json(s.xi);
    e["scalar_curvature"] = einstein_scalar(pw, s).str();
    basis.push_back(e);
  }
  Json r = Json::object();
  r["dimension"] = res.dim();
  r["cap"] = res.cap;
  r["stabilized"] = res.stabilized;
  r["basis"] = basis;
  return r;
}

Json vector_basis_json(const VectorBasis& res) {
  Json basis = Json::array();
  for (const auto& v : res.basis) basis.push_back(vector_json(v));
  Json r = Json::object();
  r["dimension"] = res.dim();
  r["cap"] = res.cap;
  r["stabilized"] = res.stabilized;
  r["basis"] = basis;
  return r;
}

Json task_killing(const Problem& p) {
  auto pw = build_pw(p.connection, p.phi);
  return vector_basis_json(conformal_killing_direct(pw, effective_cap(p)));
}

Json task_affine(const Problem& p) {
  return vector_basis_json(affine_symmetries(p.connection, effective_cap(p)));
}

Json task_projective(const Problem& p) {
  return vector_basis_json(
      projective_symmetries(p.connection, effective_cap(p)));
}

// Kernel of the first operator of the one-form sequence by polynomial
// ansatz at the given cap.
std::vector<TensorField> oneform_kernel_at(const AffineConnection& conn,
                                           int cap) {
  CoeffPool pool;
  auto a = ansatz_tensor(pool, conn.chart, {Variance::Lower}, cap);
  LinearConditions lc(pool);
  lc.add(b1_oneform(conn, a));
  std::vector<TensorField> out;
  for (const auto& sol : lc.solve())
    out.push_back(substitute_coeffs(a, sol, pool));
  return out;
}

Json task_killing_forms(const Problem& p) {
  int cap = effective_cap(p);
  auto basis = oneform_kernel_at(p.connection, cap);
  bool stabilized =
      oneform_kernel_at(p.connection, cap + 1).size() == basis.size();
  Json arr = Json::array();
  for (const auto& f : basis) arr.push_back(vector_json(f));
  Json r = Json::object();
  r["dimension"] = int(basis.size());
  r["cap"] = cap;
  r["stabilized"] = stabilized;
  r["basis"] = arr;
  return r;
}

// Deterministic generator for the composition spot checks.
struct MiniRng {
  uint64_t state;
  explicit MiniRng(uint64_t seed)
      : state(seed * 6364136223846793005ull + 1442695040888963407ull) {}
  uint64_t next() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  }
  Rational coeff() {
    long num = long(next() % 7) - 3;
    long den = long(next() % 3) + 1;
    return Rational(num, den);
  }
};

Poly mini_poly(MiniRng& rng, const ChartPtr& chart, int deg) {
  Poly p;
  for (int t = 0; t < 3; ++t) {
    Poly mono(rng.coeff());
    int d = int(rng.next() % uint64_t(deg + 1));
    for (int k = 0; k < d; ++k)
      mono *= Poly(chart->vars[size_t(rng.next() % uint64_t(chart->dim()))]);
    p += mono;
  }
  return p;
}

TensorField mini_tensor(MiniRng& rng, const ChartPtr& chart,
                        std::vector<Variance> idx, int deg) {
  TensorField t(chart, std::move(idx));
  for (auto& c : t.components()) c = mini_poly(rng, chart, deg);
  return t;
}

Json task_bgg_verify(const Problem& p) {
  const auto& conn = p.connection;
  const auto& ch = conn.chart;
  auto pack = curvature_pack(conn);
  const int kInstances = 5;
  Json r = Json::object();
  bool all = true;
  auto record = [&](const std::string& name, bool ok) {
    Json s = Json::object();
    s["instances"] = kInstances;
    s["pass"] = ok;
    r[name] = s;
    all = all && ok;
  };

  bool ok = true;
  for (int k = 0; k < kInstances; ++k) {
    MiniRng rng(1000 + uint64_t(k));
    auto tau = TensorField::scalar(ch, mini_poly(rng, ch, 2));
    ok = ok && b2_scalar(conn, b1_scalar(conn, pack, tau)) ==
                   comp_scalar_rhs(conn, pack, tau);
  }
  record("scalar", ok);

  ok = true;
  for (int k = 0; k < kInstances; ++k) {
    MiniRng rng(2000 + uint64_t(k));
    auto phi = mini_tensor(rng, ch, {Variance::Lower}, 2);
    ok = ok && b2_twoform(conn, pack, b1_oneform(conn, phi)) ==
                   comp_oneform_rhs(conn, pack, phi);
  }
  record("one_form", ok);

  if (p.dim >= 3) {
    ok = true;
    for (int k = 0; k < kInstances; ++k) {
      MiniRng rng(3000 + uint64_t(k));
      auto xi = mini_tensor(rng, ch, {Variance::Upper}, 2);
      ok = ok &&
           b2_vector(conn, b1_vector(conn, xi)) == comp_vector_rhs(pack, xi);
    }
    record("vector", ok);
  }

  if (p.dim >= 4) {
    ok = true;
    for (int k = 0; k < kInstances; ++k) {
      MiniRng rng(4000 + uint64_t(k));
      auto w = mini_tensor(rng, ch, {Variance::Upper, Variance::Upper}, 2)
                   .alternate({0, 1});
      ok = ok && b2_bivector(conn, b1_bivector(conn, w)) ==
                     comp_bivector_rhs(pack, w);
    }
    record("bivector", ok);
  }

  ok = true;
  for (int k = 0; k < kInstances; ++k) {
    MiniRng rng(5000 + uint64_t(k));
    auto v = mini_tensor(rng, ch, {Variance::Upper}, 2);
    ok = ok && b2_adjoint(conn, b1_adjoint_modified(conn, pack, v)) ==
                   comp_adjoint_rhs(conn, pack, v);
  }
  record("adjoint", ok);

  r["all"] = all;
  return r;
}

AmbientMetric build_problem_ambient(const Problem& p) {
  if (!p.has_alpha) return build_ambient(p.connection, p.phi);
  if (p.dim != 2)
    throw ProblemError(
        "the extra-modified ambient family is defined for dim 2 only");
  return build_ambient_extra(p.connection, p.phi, p.alpha, p.c);
}

Json task_ambient(const Problem& p) {
  auto am = build_problem_ambient(p);
  auto rep = verify_ricci_flat(am);
  Json r = Json::object();
  r["family"] = p.has_alpha ? "extra" : "plain";
  r["ricci_flat"] = rep.flat;
  r["nonzero_components"] = rep.nonzero_components;
  if (!rep.flat) r["sample"] = rep.sample;
  return r;
}

Json task_logt(const Problem& p) {
  auto am = build_problem_ambient(p);
  Json r = Json::object();
  r["family"] = p.has_alpha ? "extra" : "plain";
  r["log_t_harmonic"] = check_log_t_harmonic(am);
  return r;
}

Json task_relations(const Problem& p) {
  auto rep = check_relations(build_pw(p.connection, p.phi));
  Json r = Json::object();
  r["riemann"] = rep.riemann;
  r["ricci"] = rep.ricci;
  r["weyl"] = rep.weyl;
  r["vertical"] = rep.vertical;
  r["all"] = rep.all();
  return r;
}

}  // namespace

int max_degree_ceiling() {
  const char* env = std::getenv("PWFORGE_MAX_DEGREE");
  if (env) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return int(v);
  }
  return 8;
}

Problem parse_problem(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const std::exception& e) {
    throw ProblemError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ProblemError("top level must be an object");

  static const std::set<std::string> known = {
      "name", "dim", "connection", "phi", "upsilon",
      "alpha", "c",  "caps",       "task"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!known.count(key)) fail("top level", "unknown field '" + key + "'");
  }

  Problem p;
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail("name", "must be a string");
    p.name = j["name"].get<std::string>();
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    fail("dim", "required integer");
  p.dim = j["dim"].get<int>();
  if (p.dim < 2 || p.dim > 6) fail("dim", "must be between 2 and 6");

  auto ch = base_chart(p.dim);
  TensorField gamma = parse_tensor(
      j.contains("connection") ? j["connection"] : nlohmann::json(), ch,
      {Variance::Lower, Variance::Upper, Variance::Lower}, {{0, 2}},
      "connection");
  AffineConnection conn{ch, gamma};
  conn.check();

  p.phi = parse_tensor(j.contains("phi") ? j["phi"] : nlohmann::json(), ch,
                       {Variance::Lower, Variance::Lower}, {{0, 1}}, "phi");

  if (j.contains("upsilon")) {
    p.has_upsilon = true;
    p.upsilon = parse_tensor(j["upsilon"], ch, {Variance::Lower}, {},
                             "upsilon");
    conn = projective_change(conn, p.upsilon);
  }
  p.connection = conn;

  if (j.contains("alpha")) {
    p.has_alpha = true;
    p.alpha = parse_component(j["alpha"], ch, "alpha");
  }
  if (j.contains("c")) {
    if (j["c"].is_number_integer())
      p.c = Rational(j["c"].get<long>());
    else if (j["c"].is_string()) {
      try {
        p.c = parse_rational(j["c"].get<std::string>());
      } catch (const std::exception& e) {
        fail("c", e.what());
      }
    } else
      fail("c", "must be an integer or a rational string");
  }

  if (j.contains("caps")) {
    if (!j["caps"].is_object()) fail("caps", "must be an object");
    for (const auto& [key, value] : j["caps"].items()) {
      if (key != "x_degree") fail("caps", "unknown field '" + key + "'");
      if (!value.is_number_integer() || value.get<int>() < 0)
        fail("caps.x_degree", "must be a non-negative integer");
      p.x_degree = value.get<int>();
    }
  }
  if (j.contains("task")) {
    if (!j["task"].is_string()) fail("task", "must be a string");
    p.task = j["task"].get<std::string>();
  }
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProblemError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_problem(ss.str());
  } catch (const ProblemError& e) {
    throw ProblemError(path + ": " + e.what());
  }
}

Report run(const std::string& task, const Problem& problem) {
  Json results;
  if (task == "curvature")
    results = task_curvature(problem);
  else if (task == "flatness")
    results = task_flatness(problem);
  else if (task == "einstein")
    results = task_einstein(problem);
  else if (task == "killing")
    results = task_killing(problem);
  else if (task == "affine-sym")
    results = task_affine(problem);
  else if (task == "proj-sym")
    results = task_projective(problem);
  else if (task == "killing-forms")
    results = task_killing_forms(problem);
  else if (task == "bgg-verify")
    results = task_bgg_verify(problem);
  else if (task == "ambient")
    results = task_ambient(problem);
  else if (task == "logt")
    results = task_logt(problem);
  else if (task == "relations")
    results = task_relations(problem);
  else
    throw ProblemError("unknown task '" + task + "'");
  return finish(task, problem, std::move(results));
}

}  // namespace pwf
