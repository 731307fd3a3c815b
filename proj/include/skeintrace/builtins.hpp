#pragma once

#include "skeintrace/double.hpp"
#include "skeintrace/hopf.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace skeintrace {

// Group algebra k[G] from a multiplication table on {0..n-1} with 0 the
// identity. R = 1 (x) 1 and nu = 1.
template <class K>
HopfAlgebra<K> group_algebra(const std::string& name, const std::vector<std::vector<std::size_t>>& table,
                             const std::vector<std::string>& labels) {
  const std::size_t n = table.size();
  HopfAlgebra<K> H(name, n);
  H.set_labels(labels);
  Vec<K> unit(n), counit(n, K(1));
  unit[0] = K(1);
  H.set_unit(unit);
  H.set_counit(counit);
  Matrix<K> S(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      H.add_mult(a, b, table[a][b], K(1));
      if (table[a][b] == 0) S(b, a) = K(1);
    }
    H.add_comult(a, a, a, K(1));
  }
  H.set_antipode(S);
  Vec<K> R(n * n);
  R[0] = K(1);
  H.set_rmatrix(R);
  H.set_ribbon_hint(unit);
  return H;
}

template <class K>
HopfAlgebra<K> z2_group_algebra() {
  return group_algebra<K>("group_algebra(Z/2)", {{0, 1}, {1, 0}}, {"e", "s"});
}

template <class K>
HopfAlgebra<K> s3_group_algebra() {
  // permutations of {1,2,3} in lexicographic order of one-line notation
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const std::size_t n = perms.size();
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];  // (ab)(i) = a(b(i))
      table[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  const std::vector<std::string> labels{"e", "(23)", "(12)", "(123)", "(132)", "(13)"};
  return group_algebra<K>("group_algebra(S3)", table, labels);
}

// Sweedler's four-dimensional algebra on the basis 1, g, x, gx:
// g^2 = 1, x^2 = 0, xg = -gx, Delta x = x (x) 1 + g (x) x, S x = -gx.
template <class K>
HopfAlgebra<K> sweedler() {
  HopfAlgebra<K> H("sweedler", 4);
  H.set_labels({"1", "g", "x", "gx"});
  H.set_unit({K(1), K(), K(), K()});
  H.set_counit({K(1), K(1), K(), K()});
  const K one(1), mone(-1);
  for (std::size_t i = 0; i < 4; ++i) {
    H.add_mult(0, i, i, one);
    if (i) H.add_mult(i, 0, i, one);
  }
  H.add_mult(1, 1, 0, one);    // g g = 1
  H.add_mult(1, 2, 3, one);    // g x = gx
  H.add_mult(1, 3, 2, one);    // g gx = x
  H.add_mult(2, 1, 3, mone);   // x g = -gx
  H.add_mult(3, 1, 2, mone);   // gx g = -x
  H.add_comult(0, 0, 0, one);
  H.add_comult(1, 1, 1, one);
  H.add_comult(2, 2, 0, one);  // x (x) 1
  H.add_comult(2, 1, 2, one);  // g (x) x
  H.add_comult(3, 3, 1, one);  // gx (x) g
  H.add_comult(3, 0, 3, one);  // 1 (x) gx
  Matrix<K> S(4, 4);
  S(0, 0) = one;
  S(1, 1) = one;
  S(3, 2) = mone;  // S x = -gx
  S(2, 3) = one;   // S gx = x
  H.set_antipode(S);
  return H;
}

// Chooses the ribbon element of a quasitriangular algebra from the
// candidate search and stores it as the hint.
template <class K>
HopfAlgebra<K> with_derived_ribbon(HopfAlgebra<K> H) {
  if (!H.rmatrix()) return H;
  const auto found = derive_ribbon_elements(H, *H.rmatrix());
  if (!found.empty()) H.set_ribbon_hint(found.front().nu);
  return H;
}

template <class K>
HopfAlgebra<K> double_z2() {
  return with_derived_ribbon(drinfeld_double(z2_group_algebra<K>(), "double_z2"));
}

template <class K>
HopfAlgebra<K> double_sweedler() {
  return with_derived_ribbon(drinfeld_double(sweedler<K>(), "double_sweedler"));
}

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"group_algebra(Z/2)", "group_algebra(S3)", "sweedler", "double_sweedler",
                                              "double_z2"};
  return names;
}

template <class K>
HopfAlgebra<K> builtin(const std::string& name) {
  if (name == "group_algebra(Z/2)" || name == "z2") return z2_group_algebra<K>();
  if (name == "group_algebra(S3)" || name == "s3") return s3_group_algebra<K>();
  if (name == "sweedler") return sweedler<K>();
  if (name == "double_sweedler") return double_sweedler<K>();
  if (name == "double_z2") return double_z2<K>();
  throw std::invalid_argument("unknown builtin: " + name);
}

}  // namespace skeintrace
