#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "hardycover/covering.hpp"
#include "hardycover/errors.hpp"
#include "hardycover/linalg.hpp"
#include "hardycover/representation.hpp"
#include "hardycover/surface.hpp"

namespace hardycover {

/// chi2 = Ind chi1, an (n m)-dimensional representation whose images are
/// n x n grids of m x m blocks with one nonzero block per block row.
struct InducedRep {
  std::size_t n = 1;
  int m = 1;
  MatrixRep rep;
  /// block_perm[x](k) is the block column of the nonzero block in row k.
  std::vector<SheetPermutation> block_perm;

  Matrix block(int gen, std::size_t k, std::size_t j) const {
    const auto mm = static_cast<Eigen::Index>(m);
    return rep.images[static_cast<std::size_t>(gen)].block(static_cast<Eigen::Index>(k) * mm,
                                                           static_cast<Eigen::Index>(j) * mm, mm,
                                                           mm);
  }
};

/// Exactly one block with a nonzero entry in each block row and block column.
inline bool is_block_monomial(const Matrix& a, std::size_t n, int m) {
  const auto mm = static_cast<Eigen::Index>(m);
  std::vector<int> per_col(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    int per_row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto blk = a.block(static_cast<Eigen::Index>(k) * mm, static_cast<Eigen::Index>(j) * mm,
                               mm, mm);
      if ((blk.array() != Complex(0.0, 0.0)).any()) {
        ++per_row;
        ++per_col[j];
      }
    }
    if (per_row != 1) return false;
  }
  return std::all_of(per_col.begin(), per_col.end(), [](int c) { return c == 1; });
}

/// chi1 evaluated on a subgroup element given as an ambient word.
inline Matrix evaluate_subgroup(const CoveringAction& c, const Transversal& t,
                                const MatrixRep& chi1, const Word& ambient) {
  return evaluate_rep(chi1, schreier_rewrite(c, t, ambient));
}

/// [chi2(g)]_{k, sigma_g(k)} = chi1(g_k g g_{sigma_g(k)}^-1). chi1 is checked
/// against the rewritten relators first; an inconsistent chi1 is refused
/// with the failing relator named in the error.
inline InducedRep induce_representation(const CoveringAction& c, const Transversal& t,
                                        const MatrixRep& chi1, double tol = kExactTolerance) {
  Presentation sub;
  sub.generators = t.schreier_names;
  sub.relators = subgroup_relators(c, t);
  const RepReport report = check_representation(chi1, sub, tol);
  for (const auto& u : report.unitarity) {
    if (!u.pass()) throw representation_error("chi1 is not unitary: " + u.name);
  }
  if (const Residual* bad = report.first_failed_relator()) {
    throw representation_error("chi1 inconsistent: rewritten " + bad->name + " has residual " +
                               std::to_string(bad->value));
  }

  const std::size_t n = c.sheets();
  const int m = chi1.m;
  const auto mm = static_cast<Eigen::Index>(m);
  const Presentation& p = c.presentation();
  InducedRep out{n, m, {static_cast<int>(n) * m, {}}, {}};
  for (int x = 0; x < p.rank(); ++x) {
    Matrix img = Matrix::Zero(static_cast<Eigen::Index>(n) * mm, static_cast<Eigen::Index>(n) * mm);
    for (Sheet k = 0; k < n; ++k) {
      const auto f = factorize(c, t, k, p.generator(x));
      img.block(static_cast<Eigen::Index>(k) * mm, static_cast<Eigen::Index>(f.sheet) * mm, mm,
                mm) = evaluate_subgroup(c, t, chi1, f.h);
    }
    out.rep.images.push_back(std::move(img));
    out.block_perm.push_back(c.perm(x));
  }
  return out;
}

/// Pairing on the direct image: block (k, nu(k)) is G1 chi1(h_k) where
/// g_k^tau = h_k g_{nu(k)}.
inline Matrix build_G2(const CoveringAction& c, const Transversal& t, const MatrixRep& chi1,
                       const Matrix& g1) {
  if (!subgroup_is_tau_stable(c, t)) {
    throw covering_error("involution does not preserve the subgroup; the covering is not real");
  }
  const NuDecomposition nu = nu_decompose(c, t);
  const auto mm = static_cast<Eigen::Index>(chi1.m);
  const auto n = static_cast<Eigen::Index>(c.sheets());
  Matrix g2 = Matrix::Zero(n * mm, n * mm);
  for (Sheet k = 0; k < c.sheets(); ++k) {
    g2.block(static_cast<Eigen::Index>(k) * mm, static_cast<Eigen::Index>(nu.nu[k]) * mm, mm, mm) =
        g1 * evaluate_subgroup(c, t, chi1, nu.h[k]);
  }
  return g2;
}

/// J1 at the lifts g_k p of the base boundary point, indexed [component][sheet].
using J1Assignment = std::vector<std::vector<Matrix>>;

/// Generates the signature values J1(g_k p) for every boundary component of
/// the base surface. For each orbit of the component loop on sheets, the
/// orbit's first sheet r gets chi1(g_r^tau T g_r^-1)^* G1 (T the component's
/// monodromy word) and the value is carried around the orbit by
/// chi1(h)^* J(k) chi1(h) = J(j), g_k A = h g_j. Throws transport_error when
/// the orbit closes up on a different value, or when a lift is not fixed by
/// the involution.
inline J1Assignment lift_signatures(const CoveringAction& c, const Transversal& t,
                                    const MatrixRep& chi1, const Matrix& g1,
                                    const DoubledPresentation& p, double tol = kExactTolerance) {
  const std::size_t n = c.sheets();
  J1Assignment out(static_cast<std::size_t>(p.k), std::vector<Matrix>(n));
  for (int i = 0; i < p.k; ++i) {
    const Word loop = p.boundary_loop(i);
    const Word mono = p.boundary_monodromy(i);
    auto& values = out[static_cast<std::size_t>(i)];
    std::vector<bool> done(n, false);
    for (Sheet r = 0; r < n; ++r) {
      if (done[r]) continue;
      const Word lift_mono = apply_involution(p, t.reps[r]) * mono * invert(t.reps[r]);
      if (coset_of(c, lift_mono) != 0) {
        throw transport_error("lift of boundary component " + std::to_string(i) + " on sheet " +
                              std::to_string(r + 1) + " is not fixed by the involution");
      }
      values[r] = evaluate_subgroup(c, t, chi1, lift_mono).adjoint() * g1;
      done[r] = true;
      Sheet k = r;
      while (true) {
        const auto f = factorize(c, t, k, loop);
        const Matrix h = evaluate_subgroup(c, t, chi1, f.h);
        const Matrix next = h.adjoint() * values[k] * h;
        if (done[f.sheet]) {
          const double gap = max_abs(next - values[f.sheet]);
          if (gap >= tol) {
            throw transport_error("transport inconsistency on component " + std::to_string(i) +
                                  " at sheet " + std::to_string(f.sheet + 1) +
                                  " (gap " + std::to_string(gap) + ")");
          }
          break;
        }
        values[f.sheet] = next;
        done[f.sheet] = true;
        k = f.sheet;
      }
    }
  }
  return out;
}

/// [J2]_{kj} = J1(g_k p) delta_{kj}, one block-diagonal matrix per component.
inline std::vector<Matrix> build_J2_diagonal(const J1Assignment& lifts,
                                             double tol = kExactTolerance) {
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    const auto& values = lifts[i];
    if (values.empty()) throw signature_error("empty signature assignment");
    const auto mm = values.front().rows();
    const auto n = static_cast<Eigen::Index>(values.size());
    Matrix j2 = Matrix::Zero(n * mm, n * mm);
    for (Eigen::Index k = 0; k < n; ++k) {
      const Matrix& v = values[static_cast<std::size_t>(k)];
      if (v.rows() != mm || v.cols() != mm) throw signature_error("ragged signature assignment");
      if (signature_residual(v) >= tol) {
        throw signature_error("J1 at sheet " + std::to_string(k + 1) + " of component " +
                              std::to_string(i) + " is not a signature matrix");
      }
      j2.block(k * mm, k * mm, mm, mm) = v;
    }
    out.push_back(std::move(j2));
  }
  return out;
}

struct SymmetryReport {
  std::vector<Residual> checks;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Residual& r) { return r.pass(); });
  }
  double worst() const {
    double w = 0.0;
    for (const auto& r : checks) w = std::max(w, r.value);
    return w;
  }
};

/// Residuals of every symmetry condition on the direct image:
///  - G2 selfadjoint and chi2(T^tau)^* G2 chi2(T) = G2 for each generator;
///  - each J2 selfadjoint and involutive, fixed by its boundary loop;
///  - chi2(R)^* J2(R p) chi2(R) = J2(p) with J2(R p) = chi2(T_{Rp})^* G2;
///  - J2 from the diagonal lifts equals chi2(T_p)^* G2;
///  - T_{Rp} R = R^tau T_p in the image, T_{Rp} = R^tau T_p R^-1.
inline SymmetryReport verify_symmetry_conditions(const InducedRep& chi2, const Matrix& g2,
                                                 const std::vector<Matrix>& j2,
                                                 const DoubledPresentation& p,
                                                 double tol = kExactTolerance) {
  SymmetryReport out;
  const Presentation& grp = p.group;
  const MatrixRep& r = chi2.rep;
  if (static_cast<int>(j2.size()) != p.k) {
    throw signature_error("expected one J2 per boundary component");
  }
  out.checks.push_back({"G2 selfadjoint", selfadjoint_residual(g2), tol});
  for (const auto& s : tau_symmetry_residuals(r, grp, g2, tol)) {
    out.checks.push_back({"G2 " + s.name, s.value, tol});
  }
  for (int i = 0; i < p.k; ++i) {
    const std::string tag = " [component " + std::to_string(i) + "]";
    const Matrix& j = j2[static_cast<std::size_t>(i)];
    const Word mono = p.boundary_monodromy(i);
    const Matrix chi_mono = evaluate_rep(r, mono);
    out.checks.push_back({"J2 selfadjoint" + tag, selfadjoint_residual(j), tol});
    out.checks.push_back({"J2 involutive" + tag,
                          max_abs(j * j - Matrix::Identity(j.rows(), j.cols())), tol});
    const Matrix a = evaluate_rep(r, p.boundary_loop(i));
    out.checks.push_back({"J2 boundary loop" + tag, max_abs(a.adjoint() * j * a - j), tol});
    out.checks.push_back({"J2 diagonal vs pairing" + tag, max_abs(chi_mono.adjoint() * g2 - j), tol});
    double transport = 0.0;
    double monodromy = 0.0;
    for (int x = 0; x < grp.rank(); ++x) {
      const Word rw = grp.generator(x);
      const Word rtau = apply_involution(grp, rw);
      const Word moved = rtau * mono * invert(rw);
      const Matrix chi_moved = evaluate_rep(r, moved);
      const Matrix& chi_r = r.images[static_cast<std::size_t>(x)];
      const Matrix j_moved = chi_moved.adjoint() * g2;
      transport = std::max(transport, max_abs(chi_r.adjoint() * j_moved * chi_r - j));
      monodromy = std::max(monodromy,
                           max_abs(chi_moved * chi_r - evaluate_rep(r, rtau) * chi_mono));
    }
    out.checks.push_back({"J2 transport" + tag, transport, tol});
    out.checks.push_back({"monodromy identity" + tag, monodromy, tol});
  }
  return out;
}

/// chi1(s) = chi(s as an ambient word): the restriction of a representation
/// of the covered group to the subgroup.
inline MatrixRep restrict_to_subgroup(const MatrixRep& chi, const Transversal& t) {
  MatrixRep out{chi.m, {}};
  for (const Word& s : t.schreier_gens) out.images.push_back(evaluate_rep(chi, s));
  return out;
}

/// U^e for unitary U, negative exponents through the adjoint.
inline Matrix unitary_power(const Matrix& u, long e) {
  Matrix base = e < 0 ? Matrix(u.adjoint()) : u;
  Matrix out = Matrix::Identity(u.rows(), u.cols());
  for (long k = std::labs(e); k > 0; k >>= 1) {
    if (k & 1) out = out * base;
    base = base * base;
  }
  return out;
}

/// Basis {(a1, 0), (e, b2)} of a finite-index sublattice of Z^2, with
/// a1, b2 > 0 and 0 <= e < a1.
struct LatticeBasis {
  long a1 = 1;
  long e = 0;
  long b2 = 1;

  /// Coordinates (alpha, beta) of v = alpha (a1, 0) + beta (e, b2).
  std::pair<long, long> coordinates(long a, long b) const {
    if (b % b2 != 0) throw representation_error("vector outside the lattice");
    const long beta = b / b2;
    const long rest = a - beta * e;
    if (rest % a1 != 0) throw representation_error("vector outside the lattice");
    return {rest / a1, beta};
  }
};

inline LatticeBasis lattice_basis(const std::vector<std::pair<long, long>>& vectors) {
  std::pair<long, long> pivot{0, 0};
  long a1 = 0;
  for (auto v : vectors) {
    // Euclid on the second coordinate; the remainder lands on the first axis.
    while (v.second != 0) {
      const long q = pivot.second / v.second;
      pivot = {pivot.first - q * v.first, pivot.second - q * v.second};
      std::swap(pivot, v);
    }
    a1 = std::gcd(a1, v.first);
  }
  if (pivot.second < 0) pivot = {-pivot.first, -pivot.second};
  if (pivot.second == 0 || a1 == 0) throw representation_error("sublattice has infinite index");
  LatticeBasis basis{a1, ((pivot.first % a1) + a1) % a1, pivot.second};
  return basis;
}

/// Representation of a finite-index subgroup of Z^2 by commuting unitaries:
/// x1 and x2 are the images of the lattice basis vectors (a1, 0) and
/// (e, b2). `exponents` lists the (A, B) exponent sums of each subgroup
/// generator.
inline MatrixRep lattice_rep(const std::vector<std::pair<long, long>>& exponents,
                             const Matrix& x1, const Matrix& x2, double tol = kExactTolerance) {
  if (max_abs(x1 * x2 - x2 * x1) >= tol) {
    throw representation_error("lattice images must commute");
  }
  const LatticeBasis basis = lattice_basis(exponents);
  MatrixRep out{static_cast<int>(x1.rows()), {}};
  for (const auto& [a, b] : exponents) {
    const auto [alpha, beta] = basis.coordinates(a, b);
    out.images.push_back(unitary_power(x1, alpha) * unitary_power(x2, beta));
  }
  return out;
}

/// lattice_rep for a covering of the torus double(0, 2).
inline MatrixRep abelian_torus_rep(const CoveringAction& c, const Transversal& t,
                                   const Matrix& x1, const Matrix& x2,
                                   double tol = kExactTolerance) {
  if (c.presentation().rank() != 2) {
    throw representation_error("abelian_torus_rep needs a covering of the torus");
  }
  std::vector<std::pair<long, long>> exps;
  for (const Word& s : t.schreier_gens) {
    const auto sums = exponent_sums(s);
    exps.emplace_back(sums[0], sums[1]);
  }
  return lattice_rep(exps, x1, x2, tol);
}

}  // namespace hardycover
