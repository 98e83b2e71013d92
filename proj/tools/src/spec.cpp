#include "solvint/cli/spec.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "solvint/errors.hpp"

namespace solvint::cli {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("spec: missing field '") + key + "'");
  return *it;
}

std::uint64_t unsigned_field(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_unsigned()) throw SchemaError(std::string("spec: field '") + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

void only_keys(const json& j, std::initializer_list<const char*> keys) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (auto k : keys) known = known || it.key() == k;
    if (!known) throw SchemaError("spec: unknown field '" + it.key() + "'");
  }
}

ffla::Matrix matrix_of(const json& m, std::uint32_t p, std::size_t k) {
  if (!m.is_array() || m.size() != k) throw SchemaError("spec: each H generator must be a k x k array");
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& r : m) {
    if (!r.is_array() || r.size() != k) throw SchemaError("spec: each H generator must be a k x k array");
    std::vector<std::int64_t> row;
    for (const auto& x : r) {
      if (!x.is_number_integer()) throw SchemaError("spec: matrix entries must be integers");
      row.push_back(x.get<std::int64_t>());
    }
    rows.push_back(std::move(row));
  }
  return ffla::Matrix::from_rows(p, rows);
}

}  // namespace

GroupSpec parse_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("spec: not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("spec: top level must be an object");
  GroupSpec s;
  const auto& kind = field(j, "kind");
  if (!kind.is_string()) throw SchemaError("spec: 'kind' must be a string");
  s.kind = kind.get<std::string>();
  if (auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) throw SchemaError("spec: 'name' must be a string");
    s.name = it->get<std::string>();
  }
  s.canonical = j.dump();

  if (s.kind == "sdp") {
    only_keys(j, {"kind", "name", "p", "k", "t", "h"});
    auto p = unsigned_field(j, "p"), k = unsigned_field(j, "k"), t = unsigned_field(j, "t");
    if (p < 2 || p >= (std::uint64_t{1} << 31)) throw SchemaError("spec: p out of range");
    if (k == 0 || t == 0 || k > 16 || t > 16) throw SchemaError("spec: k and t must lie in 1..16");
    const auto& h = field(j, "h");
    if (!h.is_array()) throw SchemaError("spec: 'h' must be an array of matrices");
    std::vector<ffla::Matrix> gens;
    for (const auto& m : h) gens.push_back(matrix_of(m, static_cast<std::uint32_t>(p), k));
    s.sdp = sdp::SdGroup::create(static_cast<std::uint32_t>(p), k, t, gens);
  } else if (s.kind == "tower") {
    only_keys(j, {"kind", "name", "n", "strict", "primes"});
    bool strict = false;
    if (auto it = j.find("strict"); it != j.end()) {
      if (!it->is_boolean()) throw SchemaError("spec: 'strict' must be a boolean");
      strict = it->get<bool>();
    }
    if (auto it = j.find("primes"); it != j.end()) {
      if (!it->is_array() || it->empty()) throw SchemaError("spec: 'primes' must be a nonempty array");
      tower::TowerPrimes tp;
      tp.strict = strict;
      for (const auto& p : *it) {
        if (!p.is_number_unsigned()) throw SchemaError("spec: primes must be positive integers");
        tp.primes.emplace_back(p.get<std::uint64_t>());
      }
      tp.n = tp.primes.size();
      if (j.contains("n") && unsigned_field(j, "n") != tp.n) throw SchemaError("spec: 'n' disagrees with 'primes'");
      if (!tower::is_valid(tp)) throw ValidationError("congruence", "primes violate the tower conditions");
      s.tower = tp;
    } else {
      auto n = unsigned_field(j, "n");
      if (n == 0 || n > 20) throw SchemaError("spec: n must lie in 1..20");
      s.tower = tower::find_primes(n, strict);
    }
  } else if (s.kind == "oracle-table") {
    only_keys(j, {"kind", "name", "table"});
    const auto& t = field(j, "table");
    if (!t.is_array() || t.empty()) throw SchemaError("spec: 'table' must be a nonempty array of rows");
    std::vector<std::vector<ElementId>> table;
    for (const auto& row : t) {
      if (!row.is_array()) throw SchemaError("spec: table rows must be arrays");
      std::vector<ElementId> r;
      for (const auto& x : row) {
        if (!x.is_number_unsigned()) throw SchemaError("spec: table entries must be element ids");
        r.push_back(x.get<ElementId>());
      }
      table.push_back(std::move(r));
    }
    s.table = std::make_shared<const groups::OracleGroup>(groups::OracleGroup::from_table(table, s.name));
  } else if (s.kind == "corpus") {
    only_keys(j, {"kind", "name", "set"});
    s.corpus_set = "solvable";
    if (auto it = j.find("set"); it != j.end()) {
      if (!it->is_string()) throw SchemaError("spec: 'set' must be a string");
      s.corpus_set = it->get<std::string>();
    }
    if (s.corpus_set != "solvable" && s.corpus_set != "primitive" && s.corpus_set != "sdp-pool")
      throw SchemaError("spec: unknown corpus set '" + s.corpus_set + "'");
  } else {
    throw SchemaError("spec: unknown kind '" + s.kind + "'");
  }
  return s;
}

GroupSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("spec: cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

std::shared_ptr<const groups::OracleGroup> oracle_of(const GroupSpec& spec, std::size_t order_cap) {
  if (spec.sdp) return std::make_shared<const groups::OracleGroup>(sdp::embed_as_oracle(*spec.sdp, order_cap));
  if (spec.tower)
    return std::make_shared<const groups::OracleGroup>(tower::TowerGroup::build(*spec.tower).oracle(order_cap));
  if (spec.table) {
    if (spec.table->order() > order_cap) throw ResourceCap("oracle table exceeds the order cap");
    return spec.table;
  }
  throw SchemaError("spec: this command needs a single group, not a corpus");
}

}  // namespace solvint::cli
