#pragma once

#include "skeintrace/coend.hpp"
#include "skeintrace/twist.hpp"

#include <string>
#include <vector>

namespace skeintrace {

// Open correlator of the annulus for the algebra a of a surface with one
// marked interval: a -> (h -> sum_i alpha_i(h . (v_i a))) with
// sum_i alpha_i (x) v_i the coevaluation 1 -> a* (x) a of the pivotal
// category, v_i = rho(p) e_i for the pivotal element p (g or g^-1). So
// the value at h is Tr(x -> h.((p.x) a)). Returned as a dim H x dim a
// matrix in the dual basis of H, which is the basis of F.
template <class K>
Matrix<K> annulus_correlator(const AlgebraObject<K>& A, const Vec<K>& pivot) {
  if (A.carrier.legs.size() != 1) throw std::invalid_argument("correlators need exactly one marked interval");
  if (!A.lambda) throw std::invalid_argument("correlator needs the Frobenius form");
  const auto& H = A.hopf();
  const std::size_t n = H.dim(), d = A.dim();
  const auto P = A.carrier.act(pivot);
  Matrix<K> C(n, d);
  for (std::size_t a = 0; a < d; ++a) {
    const auto RP = A.right_mult_matrix(A.basis(a)) * P;
    for (std::size_t k = 0; k < n; ++k) {
      const auto& rho = A.carrier.legs[0][k];
      K t;
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          if (!rho(i, j).is_zero() && !RP(j, i).is_zero()) t += rho(i, j) * RP(j, i);
        }
      }
      C(k, a) = t;
    }
  }
  return C;
}

struct CorrelatorReport {
  Report report;
  std::size_t twists_checked = 0;
};

// (a) the correlator intertwines the action on a with the coadjoint
// action on F; (b) it is invariant under every enabled twist of the
// annulus acting on F.
template <class K>
CorrelatorReport verify_correlator(const AlgebraObject<K>& A, const Matrix<K>& C, const Moduli<K>& F,
                                   const RibbonData<K>& rd, TwistConvention conv, std::uint64_t seed = 1) {
  CorrelatorReport out;
  const auto& H = A.hopf();
  std::string bad;
  for (std::size_t h = 0; h < H.dim() && bad.empty(); ++h) {
    if (F.algebra.carrier.legs[0][h] * C != C * A.carrier.legs[0][h]) bad = H.labels()[h];
  }
  out.report.add("intertwiner into F", bad.empty(), bad);
  bad.clear();
  std::vector<Curve> curves{{CurveKind::BoundaryParallel, 0}};
  for (std::size_t p = 0; p < F.model->npairs(); ++p) curves.push_back({CurveKind::PairCore, p});
  for (const auto& c : curves) {
    for (const auto& t : dehn_twists(*F.model, F.algebra, rd, conv, c, seed)) {
      if (!t.enabled) continue;
      ++out.twists_checked;
      if (t.map * C != C && bad.empty()) bad = std::string(to_string(t.formula)) + " twist";
    }
  }
  out.report.add("twist invariant", bad.empty(), bad);
  return out;
}

}  // namespace skeintrace
