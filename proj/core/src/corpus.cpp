#include "solvint/corpus.hpp"

#include "solvint/matrix_group.hpp"
#include "solvint/tower.hpp"

namespace solvint::corpus {

namespace {

using ffla::Matrix;
using groups::OracleGroup;

Entry plain(std::string name, OracleGroup g) {
  return {name, std::make_shared<const OracleGroup>(std::move(g)), std::nullopt};
}

Entry primitive(std::string name, std::uint32_t p, std::size_t k, const std::vector<Matrix>& gens) {
  auto sd = sdp::SdGroup::create(p, k, 1, gens);
  auto g = sdp::embed_as_oracle(sd, groups::kDefaultOrderCap);
  return {name, std::make_shared<const OracleGroup>(std::move(g)), std::move(sd)};
}

Matrix m(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows) { return Matrix::from_rows(p, rows); }

// F_8 with basis 1, a, a^2 and a^3 = a + 1.
Matrix f8_mul_a() { return m(2, {{0, 1, 0}, {0, 0, 1}, {1, 1, 0}}); }
Matrix f8_frobenius() { return m(2, {{1, 0, 0}, {0, 0, 1}, {0, 1, 1}}); }
// F_9 = F_3[i]: multiplication by i and by 1 + i.
Matrix f9_mul_i() { return m(3, {{0, 1}, {2, 0}}); }
Matrix f9_mul_1i() { return m(3, {{1, 1}, {2, 1}}); }
Matrix q8_j() { return m(3, {{1, 1}, {1, 2}}); }

std::vector<Entry> primitives(bool with_large) {
  std::vector<Entry> out;
  out.push_back(primitive("S3", 3, 1, {m(3, {{2}})}));
  out.push_back(primitive("D10", 5, 1, {m(5, {{4}})}));
  out.push_back(primitive("F20", 5, 1, {m(5, {{2}})}));
  out.push_back(primitive("F21", 7, 1, {m(7, {{2}})}));
  out.push_back(primitive("F42", 7, 1, {m(7, {{3}})}));
  out.push_back(primitive("A4", 2, 2, {m(2, {{0, 1}, {1, 1}})}));
  out.push_back(primitive("S4", 2, 2, {m(2, {{0, 1}, {1, 1}}), m(2, {{0, 1}, {1, 0}})}));
  out.push_back(primitive("3^2:4", 3, 2, {f9_mul_i()}));
  out.push_back(primitive("3^2:8", 3, 2, {f9_mul_1i()}));
  out.push_back(primitive("3^2:Q8", 3, 2, {f9_mul_i(), q8_j()}));
  out.push_back(primitive("2^3:7", 2, 3, {f8_mul_a()}));
  out.push_back(primitive("2^3:7:3", 2, 3, {f8_mul_a(), f8_frobenius()}));
  if (with_large) out.push_back(primitive("3^2:SL(2,3)", 3, 2, {m(3, {{1, 1}, {0, 1}}), m(3, {{1, 0}, {1, 1}})}));
  return out;
}

}  // namespace

std::vector<Entry> solvable_corpus() {
  using namespace groups;
  auto prims = primitives(false);
  std::vector<Entry> out;
  out.push_back(plain("C2", cyclic_group(2)));
  out.push_back(plain("C6", cyclic_group(6)));
  out.push_back(plain("C4xC2", direct_product(cyclic_group(4), cyclic_group(2))));
  out.push_back(plain("C2xC2", direct_product(cyclic_group(2), cyclic_group(2))));
  out.push_back(plain("D8", dihedral_group(4)));
  out.push_back(plain("Q8", MatrixGroup::generate(3, 2, {f9_mul_i(), q8_j()}).oracle("Q8")));
  out.push_back(plain("C3xS3", direct_product(cyclic_group(3), cyclic_semidirect(3, 2, 2))));
  out.push_back(plain("D12", dihedral_group(6)));
  out.push_back(plain("Dic12", cyclic_semidirect(3, 4, 2, "Dic12")));
  out.push_back(plain("C3:C8", cyclic_semidirect(3, 8, 2, "C3:C8")));
  out.push_back(plain("SL(2,3)", MatrixGroup::generate(3, 2, {m(3, {{1, 1}, {0, 1}}), m(3, {{1, 0}, {1, 1}})}).oracle("SL(2,3)")));
  out.push_back(plain("C3xD8", direct_product(cyclic_group(3), dihedral_group(4))));
  out.push_back(plain("C2xA4", direct_product(cyclic_group(2), *prims[5].group)));
  out.push_back(plain("C2xS4", direct_product(cyclic_group(2), *prims[6].group)));
  out.push_back(plain("C2xF20", direct_product(cyclic_group(2), cyclic_semidirect(5, 4, 2))));
  out.push_back(plain("G_2", tower::TowerGroup::build(tower::find_primes(2, false)).oracle()));
  for (auto& e : prims) out.push_back(std::move(e));
  return out;
}

std::vector<Entry> primitive_corpus() { return primitives(true); }

bool has_nilpotent_derived_subgroup(const groups::OracleGroup& g) {
  return groups::is_nilpotent(g, groups::derived_subgroup(g, groups::whole_group(g)));
}

}  // namespace solvint::corpus
