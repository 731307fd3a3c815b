#pragma once

#include "skeintrace/hopf.hpp"

#include <string>
#include <vector>

namespace skeintrace {

// Characters H -> k with values in {-1, 0, 1}, found by brute force. Enough
// for the small pointed examples; larger inputs can pass grouplike hints.
template <class K>
std::vector<Vec<K>> small_characters(const HopfAlgebra<K>& H, std::size_t max_dim = 8) {
  const std::size_t n = H.dim();
  std::vector<Vec<K>> out;
  if (n > max_dim) return out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    Vec<K> chi(n);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      chi[i] = K(static_cast<int>(c % 3) - 1);
      c /= 3;
    }
    auto ev = [&](const Vec<K>& x) {
      K s;
      for (std::size_t i = 0; i < n; ++i) s += chi[i] * x[i];
      return s;
    };
    if (ev(H.unit()) != K(1)) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = 0; j < n && ok; ++j) {
        ok = ev(H.mul(H.basis(i), H.basis(j))) == chi[i] * chi[j];
      }
    }
    if (ok) out.push_back(std::move(chi));
  }
  return out;
}

// Drinfeld double D(H) on the basis e^p (x) b_a (index p*n + a), where e^p
// is the dual basis of H*. Conventions:
//   (f (x) a)(f' (x) b) = f . (a(1) -> f' <- S^{-1}(a(3))) (x) a(2) b
//     with (a -> f)(x) = f(x a), (f <- b)(x) = f(b x),
//     and H* multiplied by (f f')(x) = f(x(1)) f'(x(2));
//   Delta(f (x) a) = (f(2) (x) a(1)) (x) (f(1) (x) a(2));
//   S(f (x) a) = (eps (x) S(a)) (f o S^{-1} (x) 1);
//   R = sum_i (eps (x) b_i) (x) (e^i (x) 1).
template <class K>
HopfAlgebra<K> drinfeld_double(const HopfAlgebra<K>& H, const std::string& name = {}) {
  const std::size_t n = H.dim();
  const auto& Si = H.antipode_inverse();
  HopfAlgebra<K> D(name.empty() ? "D(" + H.name() + ")" : name, n * n, H.field_order());
  std::vector<std::string> labels;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t a = 0; a < n; ++a) labels.push_back("e^" + H.labels()[p] + "*" + H.labels()[a]);
  }
  D.set_labels(labels);

  // H* product e^p e^r = sum_t [coefficient of b_p(x)b_r in Delta b_t] e^t
  std::vector<SparseTerms<K>> dual_mult(n * n);
  for (std::size_t t = 0; t < n; ++t) {
    for (const auto& [ij, c] : H.comult_terms(t)) dual_mult[ij].emplace_back(t, c);
  }
  // structure constants of H in dense form for lookups
  auto prod = [&](std::size_t i, std::size_t j) { return H.mul(H.basis(i), H.basis(j)); };

  for (std::size_t a = 0; a < n; ++a) {
    const auto d3 = H.coproduct_leg(H.coproduct(H.basis(a)), 2, 0);
    for (std::size_t q = 0; q < n; ++q) {
      // left[r][j]: coefficient of e^r (x) b_j in sum (a(1) -> e^q <- S^{-1}a(3)) (x) a(2)
      std::vector<K> left(n * n);
      for (std::size_t I = 0; I < d3.size(); ++I) {
        if (d3[I].is_zero()) continue;
        const std::size_t i1 = I / (n * n), i2 = (I / n) % n, i3 = I % n;
        const auto s3 = H.antipode_inverse() * H.basis(i3);
        for (std::size_t r = 0; r < n; ++r) {
          // e^q(S^{-1}(a3) b_r a1)
          const auto v = H.mul(H.mul(s3, H.basis(r)), H.basis(i1));
          if (!v[q].is_zero()) left[r * n + i2] += d3[I] * v[q];
        }
      }
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t b = 0; b < n; ++b) {
          for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t j = 0; j < n; ++j) {
              const K& c = left[r * n + j];
              if (c.is_zero()) continue;
              const auto jb = prod(j, b);
              for (const auto& [t, ct] : dual_mult[p * n + r]) {
                for (std::size_t k = 0; k < n; ++k) {
                  if (!jb[k].is_zero()) D.add_mult(p * n + a, q * n + b, t * n + k, c * ct * jb[k]);
                }
              }
            }
          }
        }
      }
    }
  }

  // unit eps (x) 1, counit f(1) eps(a)
  Vec<K> unit(n * n), counit(n * n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t a = 0; a < n; ++a) {
      unit[p * n + a] = H.counit()[p] * H.unit()[a];
      counit[p * n + a] = H.unit()[p] * H.counit()[a];
    }
  }
  D.set_unit(unit);
  D.set_counit(counit);

  // Delta(e^p) = sum m_{ij}^p e^i (x) e^j ; use the opposite order
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& [p, m] : H.mult_terms(i, j)) {
        for (std::size_t a = 0; a < n; ++a) {
          for (const auto& [kl, c] : H.comult_terms(a)) {
            const std::size_t k = kl / n, l = kl % n;
            D.add_comult(p * n + a, j * n + k, i * n + l, m * c);
          }
        }
      }
    }
  }

  // antipode
  Matrix<K> S(n * n, n * n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t a = 0; a < n; ++a) {
      Vec<K> left(n * n), right(n * n);
      const auto sa = H.S(H.basis(a));
      for (std::size_t pe = 0; pe < n; ++pe) {
        for (std::size_t c = 0; c < n; ++c) left[pe * n + c] = H.counit()[pe] * sa[c];
      }
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) right[r * n + c] = Si(p, r) * H.unit()[c];
      }
      const auto v = D.mul(left, right);
      for (std::size_t i = 0; i < n * n; ++i) S(i, p * n + a) = v[i];
    }
  }
  D.set_antipode(S);

  Vec<K> R(n * n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t pe = 0; pe < n; ++pe) {
      if (H.counit()[pe].is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (H.unit()[c].is_zero()) continue;
        // (eps (x) b_i) has coefficient eps_pe at (pe, i); (e^i (x) 1) has unit_c at (i, c)
        R[(pe * n + i) * n * n + (i * n + c)] += H.counit()[pe] * H.unit()[c];
      }
    }
  }
  D.set_rmatrix(R);

  // grouplike hints chi (x) h
  for (const auto& chi : small_characters(H)) {
    for (std::size_t h = 0; h < n; ++h) {
      if (!is_grouplike(H, H.basis(h))) continue;
      Vec<K> g(n * n);
      for (std::size_t p = 0; p < n; ++p) g[p * n + h] = chi[p];
      D.add_grouplike_hint(std::move(g));
    }
  }
  return D;
}

}  // namespace skeintrace
