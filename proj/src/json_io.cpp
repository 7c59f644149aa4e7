#include "pma/json_io.hpp"

#include <cstdint>
#include <iterator>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

namespace pma {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

const Json& field(const Json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string(what) + ": missing field \"" + key + "\"");
  return *it;
}

void check_object(const Json& j, const char* what) {
  if (!j.is_object()) fail(std::string(what) + ": expected a JSON object");
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const char* what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) fail(std::string(what) + ": unknown field \"" + it.key() + "\"");
  }
}

std::int64_t as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) fail(what + ": expected an integer");
  return j.get<std::int64_t>();
}

std::vector<std::int64_t> as_int_vec(const Json& j, const std::string& what) {
  if (!j.is_array()) fail(what + ": expected an array of integers");
  std::vector<std::int64_t> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_int(j[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

// "2,5" -> {1, 4}: 1-based strictly ascending indices within 1..rank.
std::vector<std::size_t> parse_key(const std::string& key, std::size_t arity, std::size_t rank,
                                   const std::string& what) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    std::size_t comma = key.find(',', pos);
    if (comma == std::string::npos) comma = key.size();
    const std::string tok = key.substr(pos, comma - pos);
    if (tok.empty() || tok.size() > 6 || tok.find_first_not_of("0123456789") != std::string::npos)
      fail(what + ": bad index key \"" + key + "\"");
    out.push_back(static_cast<std::size_t>(std::stoll(tok)));
    pos = comma + 1;
    if (comma == key.size()) break;
  }
  if (out.size() != arity) fail(what + ": key \"" + key + "\" needs " + std::to_string(arity) + " indices");
  for (std::size_t i = 0; i < arity; ++i) {
    if (out[i] < 1 || out[i] > rank) fail(what + ": index out of range in key \"" + key + "\"");
    if (i > 0 && out[i] <= out[i - 1]) fail(what + ": indices must ascend in key \"" + key + "\"");
  }
  for (std::size_t& v : out) v -= 1;
  return out;
}

std::string pair_key(std::size_t i, std::size_t j) {
  return std::to_string(i + 1) + "," + std::to_string(j + 1);
}

std::string triple_key(std::size_t i, std::size_t j, std::size_t k) {
  return std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1);
}

std::int64_t mod_pos(std::int64_t v, std::int64_t m) {
  const std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

std::vector<Phase> phase_vec(const Json& j, const std::string& what) {
  if (!j.is_array()) fail(what + ": expected an array of phases");
  std::vector<Phase> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(phase_from_json(j[i]));
  return out;
}

Json phase_vec_json(const std::vector<Phase>& v) {
  Json out = Json::array();
  for (const Phase& p : v) out.push_back(phase_json(p));
  return out;
}

void check_schema(const Json& doc, const char* what) {
  check_object(doc, what);
  const Json& s = field(doc, "schema", what);
  if (as_int(s, std::string(what) + ".schema") != schema_version)
    fail(std::string(what) + ": unsupported schema version");
}

Json strip_schema(const Json& doc) {
  Json payload = Json::object();
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (it.key() != "schema") payload[it.key()] = it.value();
  return payload;
}

Json with_schema(Json payload) {
  Json doc = Json::object();
  doc["schema"] = schema_version;
  for (auto it = payload.begin(); it != payload.end(); ++it) doc[it.key()] = std::move(it.value());
  return doc;
}

}  // namespace

Json phase_json(const Phase& p) { return Json{{"num", p.num}, {"den", p.den}}; }

Phase phase_from_json(const Json& j) {
  check_object(j, "phase");
  check_keys(j, {"num", "den"}, "phase");
  const std::int64_t num = as_int(field(j, "num", "phase"), "phase.num");
  const std::int64_t den = as_int(field(j, "den", "phase"), "phase.den");
  try {
    return make_phase(num, den);
  } catch (const std::invalid_argument& e) {
    fail(std::string("phase: ") + e.what());
  }
}

Json group_json(const FinAbGroup& G) {
  return Json{{"moduli", G.moduli}, {"invariant_factor", G.invariant_factor}};
}

FinAbGroup group_from_json(const Json& j) {
  check_object(j, "group");
  check_keys(j, {"moduli", "invariant_factor"}, "group");
  FinAbGroup G;
  try {
    G = make_group(as_int_vec(field(j, "moduli", "group"), "group.moduli"));
  } catch (const std::invalid_argument& e) {
    fail(std::string("group: ") + e.what());
  }
  if (auto it = j.find("invariant_factor"); it != j.end()) {
    if (!it->is_boolean()) fail("group.invariant_factor: expected a bool");
    if (it->get<bool>() != G.invariant_factor)
      fail("group.invariant_factor: flag contradicts the moduli");
  }
  return G;
}

Json elem_json(const GroupElem& a) { return Json{{"exp", a.exp}}; }

GroupElem elem_from_json(const Json& j, const FinAbGroup& G) {
  check_object(j, "element");
  check_keys(j, {"exp"}, "element");
  std::vector<std::int64_t> exp = as_int_vec(field(j, "exp", "element"), "element.exp");
  if (exp.size() != G.rank()) fail("element.exp: length does not match the group rank");
  return make_elem(G, std::move(exp));
}

Json spec_json(const CocycleSpec& a) {
  const std::size_t n = a.group.rank();
  Json ij = Json::object();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) ij[pair_key(i, j)] = a.a_ij[pair_index(n, i, j)];
  Json rst = Json::object();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        rst[triple_key(i, j, k)] = a.a_rst[triple_index(n, i, j, k)];
  return Json{{"moduli", a.group.moduli}, {"a_l", a.a_l}, {"a_ij", ij}, {"a_rst", rst}};
}

CocycleSpec spec_from_json(const Json& j) {
  check_object(j, "spec");
  check_keys(j, {"moduli", "a_l", "a_ij", "a_rst"}, "spec");
  FinAbGroup G;
  try {
    G = make_group(as_int_vec(field(j, "moduli", "spec"), "spec.moduli"));
  } catch (const std::invalid_argument& e) {
    fail(std::string("spec: ") + e.what());
  }
  const std::size_t n = G.rank();
  CocycleSpec a = zero_spec(G);
  if (auto it = j.find("a_l"); it != j.end()) {
    std::vector<std::int64_t> v = as_int_vec(*it, "spec.a_l");
    if (v.size() != n) fail("spec.a_l: length does not match the rank");
    for (std::size_t l = 0; l < n; ++l) a.a_l[l] = mod_pos(v[l], G.moduli[l]);
  }
  if (auto it = j.find("a_ij"); it != j.end()) {
    check_object(*it, "spec.a_ij");
    for (auto kv = it->begin(); kv != it->end(); ++kv) {
      const auto idx = parse_key(kv.key(), 2, n, "spec.a_ij");
      const std::int64_t g = std::gcd(G.moduli[idx[0]], G.moduli[idx[1]]);
      a.a_ij[pair_index(n, idx[0], idx[1])] = mod_pos(as_int(kv.value(), "spec.a_ij"), g);
    }
  }
  if (auto it = j.find("a_rst"); it != j.end()) {
    check_object(*it, "spec.a_rst");
    for (auto kv = it->begin(); kv != it->end(); ++kv) {
      const auto idx = parse_key(kv.key(), 3, n, "spec.a_rst");
      const std::int64_t g =
          std::gcd(G.moduli[idx[0]], std::gcd(G.moduli[idx[1]], G.moduli[idx[2]]));
      a.a_rst[triple_index(n, idx[0], idx[1], idx[2])] = mod_pos(as_int(kv.value(), "spec.a_rst"), g);
    }
  }
  return a;
}

Json kcochain_json(const KCochain3& f, const FinAbGroup& G) {
  const std::size_t n = G.rank();
  if (f.f_rrr.size() != n || f.f_rrs.size() != pair_count(n) || f.f_rss.size() != pair_count(n) ||
      f.f_rst.size() != triple_count(n))
    throw std::invalid_argument("kcochain tables do not match the group rank");
  return Json{{"f_rrr", phase_vec_json(f.f_rrr)},
              {"f_rrs", phase_vec_json(f.f_rrs)},
              {"f_rss", phase_vec_json(f.f_rss)},
              {"f_rst", phase_vec_json(f.f_rst)}};
}

KCochain3 kcochain_from_json(const Json& j, const FinAbGroup& G) {
  check_object(j, "kcochain");
  check_keys(j, {"f_rrr", "f_rrs", "f_rss", "f_rst"}, "kcochain");
  KCochain3 f;
  f.f_rrr = phase_vec(field(j, "f_rrr", "kcochain"), "kcochain.f_rrr");
  f.f_rrs = phase_vec(field(j, "f_rrs", "kcochain"), "kcochain.f_rrs");
  f.f_rss = phase_vec(field(j, "f_rss", "kcochain"), "kcochain.f_rss");
  f.f_rst = phase_vec(field(j, "f_rst", "kcochain"), "kcochain.f_rst");
  const std::size_t n = G.rank();
  if (f.f_rrr.size() != n || f.f_rrs.size() != pair_count(n) || f.f_rss.size() != pair_count(n) ||
      f.f_rst.size() != triple_count(n))
    fail("kcochain: table lengths do not match the group rank");
  return f;
}

Json diagram_json(const GeneralizedDynkinDiagram& D) {
  const std::size_t n = D.rank();
  Json tilde = Json::object();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) tilde[pair_key(i, j)] = phase_json(D.tilde(i, j));
  return Json{{"q_ii", phase_vec_json(D.q_ii)}, {"q_tilde", tilde}};
}

GeneralizedDynkinDiagram diagram_from_json(const Json& j) {
  check_object(j, "diagram");
  check_keys(j, {"q_ii", "q_tilde"}, "diagram");
  GeneralizedDynkinDiagram D;
  D.q_ii = phase_vec(field(j, "q_ii", "diagram"), "diagram.q_ii");
  if (D.q_ii.empty()) fail("diagram.q_ii: need at least one vertex");
  const std::size_t n = D.q_ii.size();
  D.q_tilde.assign(pair_count(n), Phase{});
  if (auto it = j.find("q_tilde"); it != j.end()) {
    check_object(*it, "diagram.q_tilde");
    for (auto kv = it->begin(); kv != it->end(); ++kv) {
      const auto idx = parse_key(kv.key(), 2, n, "diagram.q_tilde");
      D.q_tilde[pair_index(n, idx[0], idx[1])] = phase_from_json(kv.value());
    }
  }
  return D;
}

Json intmat_json(const IntMat& M) {
  Json out = Json::array();
  for (const auto& row : M) out.push_back(row);
  return out;
}

IntMat intmat_from_json(const Json& j) {
  if (!j.is_array()) fail("matrix: expected an array of rows");
  IntMat M;
  M.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    M.push_back(as_int_vec(j[i], "matrix[" + std::to_string(i) + "]"));
    if (M.back().size() != M.front().size()) fail("matrix: rows have unequal lengths");
  }
  return M;
}

Json datum_json(const RootDatum& D) {
  return Json{{"moduli", D.base.moduli},
              {"diagram", diagram_json(D.diagram)},
              {"S", intmat_json(D.S)},
              {"X", intmat_json(D.X)}};
}

RootDatum datum_from_json(const Json& j) {
  check_object(j, "datum");
  check_keys(j, {"moduli", "diagram", "S", "X"}, "datum");
  FinAbGroup base;
  try {
    base = make_group(as_int_vec(field(j, "moduli", "datum"), "datum.moduli"));
  } catch (const std::invalid_argument& e) {
    fail(std::string("datum: ") + e.what());
  }
  const GeneralizedDynkinDiagram diagram = diagram_from_json(field(j, "diagram", "datum"));
  const IntMat S = intmat_from_json(field(j, "S", "datum"));
  const IntMat X = intmat_from_json(field(j, "X", "datum"));
  return make_root_datum(base, diagram, S, X);
}

Json cochain3_json(const Cochain3& phi, std::int64_t budget) {
  const std::int64_t o = phi.group.order();
  if (o > budget / o / o) throw BudgetExceeded("cochain table exceeds the budget");
  Json values = Json::array();
  for (std::int64_t x = 0; x < o; ++x) {
    const GroupElem ex = elem_at(phi.group, x);
    for (std::int64_t y = 0; y < o; ++y) {
      const GroupElem ey = elem_at(phi.group, y);
      for (std::int64_t z = 0; z < o; ++z)
        values.push_back(phase_json(phi.eval(ex, ey, elem_at(phi.group, z))));
    }
  }
  return Json{{"moduli", phi.group.moduli}, {"values", std::move(values)}};
}

Cochain3 cochain3_from_json(const Json& j) {
  check_object(j, "table");
  check_keys(j, {"moduli", "values"}, "table");
  FinAbGroup G;
  try {
    G = make_group(as_int_vec(field(j, "moduli", "table"), "table.moduli"));
  } catch (const std::invalid_argument& e) {
    fail(std::string("table: ") + e.what());
  }
  const std::int64_t o = G.order();
  auto values = std::make_shared<std::vector<Phase>>(phase_vec(field(j, "values", "table"), "table.values"));
  if (std::ssize(*values) != o * o * o) fail("table.values: need exactly |G|^3 phases");
  Cochain3 phi;
  phi.group = G;
  phi.eval = [G, o, values](const GroupElem& x, const GroupElem& y, const GroupElem& z) {
    const std::int64_t ix = elem_index(G, make_elem(G, x.exp));
    const std::int64_t iy = elem_index(G, make_elem(G, y.exp));
    const std::int64_t iz = elem_index(G, make_elem(G, z.exp));
    return (*values)[static_cast<std::size_t>((ix * o + iy) * o + iz)];
  };
  return phi;
}

Json spec_document(const CocycleSpec& a) { return with_schema(spec_json(a)); }

CocycleSpec read_spec_document(const Json& doc) {
  check_schema(doc, "spec file");
  return spec_from_json(strip_schema(doc));
}

Json table_document(const Cochain3& phi, std::int64_t budget) {
  return with_schema(cochain3_json(phi, budget));
}

Cochain3 read_table_document(const Json& doc) {
  check_schema(doc, "table file");
  return cochain3_from_json(strip_schema(doc));
}

Json datum_document(const RootDatum& D) { return with_schema(datum_json(D)); }

RootDatum read_datum_document(const Json& doc) {
  check_schema(doc, "datum file");
  return datum_from_json(strip_schema(doc));
}

Json diagram_document(const GeneralizedDynkinDiagram& D) { return with_schema(diagram_json(D)); }

GeneralizedDynkinDiagram read_diagram_document(const Json& doc) {
  check_schema(doc, "diagram file");
  return diagram_from_json(strip_schema(doc));
}

Json cartan_document(const IntMat& C) { return with_schema(Json{{"cartan_matrix", intmat_json(C)}}); }

IntMat read_cartan_document(const Json& doc) {
  check_schema(doc, "cartan file");
  const Json payload = strip_schema(doc);
  check_keys(payload, {"cartan_matrix"}, "cartan file");
  return intmat_from_json(field(payload, "cartan_matrix", "cartan file"));
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace pma
