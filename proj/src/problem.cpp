#include "linrel/problem.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace linrel {

namespace {

using json = nlohmann::ordered_json;

struct Alias {
  const char* name;
  const char* alias;
};

constexpr Alias kCheckers[] = {
    {"oracle_mutually_adjoint", "oracle"},
    {"arens_inclusion", "arens"},
    {"arens_equality", "arens-eq"},
    {"arens_equality_under_inclusion", "arens-eq-incl"},
    {"gen_stone", "gen-stone"},
    {"surjective_pair", "surjective-pair"},
    {"selfadjoint_via_range", "selfadjoint-range"},
    {"stone_surjective_symmetric", "stone"},
    {"adjoint_identification", "adjoint-ident"},
    {"von_neumann_ranges", "von-neumann"},
    {"closedness_via_ranges", "closedness"},
    {"symmetric_adjoint_characterization", "symmetric-adjoint"},
    {"nieminen_criterion", "nieminen"},
    {"selfadjoint_nieminen", "nieminen-selfadjoint"},
    {"skewadjoint_nieminen", "nieminen-skew"},
    {"unitary_nieminen", "nieminen-unitary"},
};

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ProblemError(where, what);
}

std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) fail(where.empty() ? item.key() : where + "." + item.key(), "unknown key");
  }
}

Index read_count(const json& doc, const char* key) {
  if (!doc.contains(key)) fail(key, "missing");
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(key, "expected a nonnegative integer");
  return static_cast<Index>(v.get<long long>());
}

Scalar read_entry(const json& v, FieldTag field, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array()) {
    if (field == FieldTag::Real) fail(where, "complex entry in a real-field problem");
    if (v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      fail(where, "expected [re, im]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
  }
  fail(where, "expected a number or [re, im]");
}

// List of vectors of one fixed length, returned as columns.
Matrix read_vectors(const json& v, Index length, FieldTag field, const std::string& where) {
  if (!v.is_array()) fail(where, "expected a list of vectors");
  Matrix out(length, static_cast<Index>(v.size()));
  for (std::size_t j = 0; j < v.size(); ++j) {
    const std::string at = index_path(where, j);
    if (!v[j].is_array() || static_cast<Index>(v[j].size()) != length) {
      fail(at, "expected a vector of length " + std::to_string(length));
    }
    for (Index i = 0; i < length; ++i) {
      out(i, static_cast<Index>(j)) = read_entry(v[j][i], field, index_path(at, i));
    }
  }
  return out;
}

Matrix read_matrix(const json& v, Index rows, Index cols, FieldTag field, const std::string& where) {
  if (!v.is_array() || static_cast<Index>(v.size()) != rows) {
    fail(where, "expected " + std::to_string(rows) + " rows");
  }
  return read_vectors(v, cols, field, where).transpose();
}

RelationSpec read_relation(const json& v, Index domain_dim, Index codomain_dim, FieldTag field,
                           const std::string& where) {
  if (!v.is_object()) fail(where, "expected an object");
  if (!v.contains("kind") || !v.at("kind").is_string()) fail(where + ".kind", "missing");
  const std::string kind = v.at("kind").get<std::string>();
  RelationSpec spec;
  if (kind == "operator") {
    reject_unknown_keys(v, where, {"kind", "matrix", "domain_basis"});
    spec.kind = RelationSpec::Kind::Operator;
    if (!v.contains("matrix")) fail(where + ".matrix", "missing");
    spec.matrix = read_matrix(v.at("matrix"), codomain_dim, domain_dim, field, where + ".matrix");
    if (v.contains("domain_basis") && !v.at("domain_basis").is_null()) {
      spec.domain_basis =
          read_vectors(v.at("domain_basis"), domain_dim, field, where + ".domain_basis");
    }
  } else if (kind == "relation") {
    reject_unknown_keys(v, where, {"kind", "graph_spanners"});
    spec.kind = RelationSpec::Kind::Relation;
    if (!v.contains("graph_spanners")) fail(where + ".graph_spanners", "missing");
    spec.graph_spanners = read_vectors(v.at("graph_spanners"), domain_dim + codomain_dim, field,
                                       where + ".graph_spanners");
  } else {
    fail(where + ".kind", "expected \"operator\" or \"relation\"");
  }
  return spec;
}

json write_entry(Scalar z, FieldTag field) {
  if (field == FieldTag::Real || z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

json write_vectors(const Matrix& columns, FieldTag field) {
  json out = json::array();
  for (Index j = 0; j < columns.cols(); ++j) {
    json v = json::array();
    for (Index i = 0; i < columns.rows(); ++i) v.push_back(write_entry(columns(i, j), field));
    out.push_back(std::move(v));
  }
  return out;
}

json write_relation(const RelationSpec& spec, FieldTag field) {
  json out;
  if (spec.kind == RelationSpec::Kind::Operator) {
    out["kind"] = "operator";
    out["matrix"] = write_vectors(spec.matrix.transpose(), field);
    out["domain_basis"] = spec.domain_basis ? write_vectors(*spec.domain_basis, field) : json();
  } else {
    out["kind"] = "relation";
    out["graph_spanners"] = write_vectors(spec.graph_spanners, field);
  }
  return out;
}

double read_positive(const json& v, const std::string& where) {
  if (!v.is_number() || !(v.get<double>() > 0.0) || !std::isfinite(v.get<double>())) {
    fail(where, "expected a positive number");
  }
  return v.get<double>();
}

}  // namespace

ProblemError::ProblemError(std::string where, const std::string& what)
    : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}

RelationSpec RelationSpec::from_relation(const LinearRelation& r) {
  RelationSpec spec;
  spec.kind = Kind::Relation;
  spec.graph_spanners = r.graph().basis();
  return spec;
}

RelationSpec RelationSpec::from_matrix(const Matrix& a) {
  RelationSpec spec;
  spec.kind = Kind::Operator;
  spec.matrix = a;
  return spec;
}

LinearRelation RelationSpec::build(Index domain_dim, Index codomain_dim,
                                   const TolerancePolicy& tol) const {
  if (kind == Kind::Relation) return from_spanners(domain_dim, codomain_dim, graph_spanners, tol);
  OperatorSpec op{matrix, std::nullopt};
  if (domain_basis) op.domain = orthonormal_basis(*domain_basis, tol);
  return from_operator(op, tol);
}

LinearRelation Problem::build_s() const { return s.build(h_dim, k_dim, tol); }

LinearRelation Problem::build_t() const {
  if (!t) throw ProblemError("T", "this check needs T");
  return t->build(k_dim, h_dim, tol);
}

const std::vector<std::string>& checker_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const Alias& a : kCheckers) {
      v.emplace_back(a.name);
      v.emplace_back(a.alias);
    }
    return v;
  }();
  return ids;
}

std::string canonical_checker(const std::string& id) {
  for (const Alias& a : kCheckers) {
    if (id == a.name || id == a.alias) return a.name;
  }
  return {};
}

Problem parse_problem(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("", "expected a JSON object");
  reject_unknown_keys(doc, "", {"field", "h_dim", "k_dim", "S", "T", "checks", "tol", "meta"});

  Problem p;
  if (!doc.contains("field") || !doc.at("field").is_string()) fail("field", "missing");
  const std::string field = doc.at("field").get<std::string>();
  if (field == "real") {
    p.field = FieldTag::Real;
  } else if (field == "complex") {
    p.field = FieldTag::Complex;
  } else {
    fail("field", "expected \"real\" or \"complex\"");
  }
  p.h_dim = read_count(doc, "h_dim");
  p.k_dim = read_count(doc, "k_dim");

  if (!doc.contains("S")) fail("S", "missing");
  p.s = read_relation(doc.at("S"), p.h_dim, p.k_dim, p.field, "S");
  if (doc.contains("T") && !doc.at("T").is_null()) {
    p.t = read_relation(doc.at("T"), p.k_dim, p.h_dim, p.field, "T");
  }

  if (doc.contains("checks")) {
    const json& checks = doc.at("checks");
    if (!checks.is_array()) fail("checks", "expected a list of checker ids");
    for (std::size_t i = 0; i < checks.size(); ++i) {
      const std::string at = index_path("checks", i);
      if (!checks[i].is_string()) fail(at, "expected a string");
      const std::string id = checks[i].get<std::string>();
      if (canonical_checker(id).empty()) fail(at, "unknown checker id '" + id + "'");
      p.checks.push_back(id);
    }
  }

  if (doc.contains("tol")) {
    const json& tol = doc.at("tol");
    if (!tol.is_object()) fail("tol", "expected an object");
    reject_unknown_keys(tol, "tol", {"rank_rel_eps", "subspace_eq_tol"});
    if (tol.contains("rank_rel_eps")) {
      p.tol.rank_rel_eps = read_positive(tol.at("rank_rel_eps"), "tol.rank_rel_eps");
    }
    if (tol.contains("subspace_eq_tol")) {
      p.tol.subspace_eq_tol = read_positive(tol.at("subspace_eq_tol"), "tol.subspace_eq_tol");
    }
  }

  if (doc.contains("meta")) {
    const json& meta = doc.at("meta");
    if (!meta.is_object()) fail("meta", "expected an object");
    for (const auto& item : meta.items()) {
      if (!item.value().is_string()) fail("meta." + item.key(), "expected a string");
      p.meta[item.key()] = item.value().get<std::string>();
    }
  }
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("", "cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_problem(text.str());
}

std::string serialize_problem(const Problem& p) {
  json doc;
  doc["field"] = to_string(p.field);
  doc["h_dim"] = p.h_dim;
  doc["k_dim"] = p.k_dim;
  doc["S"] = write_relation(p.s, p.field);
  doc["T"] = p.t ? write_relation(*p.t, p.field) : json();
  doc["checks"] = p.checks;
  doc["tol"] = {{"rank_rel_eps", p.tol.rank_rel_eps}, {"subspace_eq_tol", p.tol.subspace_eq_tol}};
  if (!p.meta.empty()) {
    json meta = json::object();
    for (const auto& [k, v] : p.meta) meta[k] = v;
    doc["meta"] = std::move(meta);
  }
  return doc.dump(2) + "\n";
}

}  // namespace linrel
