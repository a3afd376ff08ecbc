#pragma once

// Coverings and representations shared by the unit and acceptance suites.

#include <cmath>
#include <random>
#include <vector>

#include "hardycover/covering.hpp"
#include "hardycover/induction.hpp"
#include "hardycover/representation.hpp"
#include "hardycover/surface.hpp"
#include "support/testing.hpp"

namespace testing_support {

using namespace hardycover;

/// Cyclic n-sheeted cover of the torus double(0, 2): A1 is an n-cycle, B1 acts
/// trivially.
struct TorusCover {
  DoubledPresentation p;
  CoveringAction c;
  Transversal t;
};

inline TorusCover torus_cover(std::size_t n) {
  DoubledPresentation p = double_group(0, 2);
  CoveringAction c = build_covering(p.group, {SheetPermutation::cycle(n),
                                              SheetPermutation::identity(n)});
  Transversal t = schreier_transversal(c);
  return {std::move(p), std::move(c), std::move(t)};
}

/// Commuting data on the torus subgroup: the image M of A1^n, the image V of
/// B1 and the two boundary signatures, with V = J0 J1 and M compatible with
/// both.
struct TorusData {
  Matrix m;
  Matrix j0;
  Matrix j1;
  Matrix v() const { return j0 * j1; }
};

/// M, J0, J1 simultaneously diagonal in a Haar-random basis.
inline TorusData random_torus_data(int m, std::mt19937_64& rng) {
  const Matrix w = haar_unitary(m, rng);
  return {w * diag_phases(random_phases(m, rng)) * w.adjoint(),
          w * diag_signs(random_signs(m, rng)) * w.adjoint(),
          w * diag_signs(random_signs(m, rng)) * w.adjoint()};
}

/// Scalar M with two unrelated signatures: J0 and J1 need not commute.
inline TorusData random_torus_data_scalar_monodromy(int m, std::mt19937_64& rng) {
  const double phase = random_phases(1, rng)[0];
  return {std::polar(1.0, phase) * Matrix::Identity(m, m), random_signature(m, rng),
          random_signature(m, rng)};
}

inline MatrixRep torus_chi1(const TorusCover& cov, const TorusData& d) {
  return abelian_torus_rep(cov.c, cov.t, d.m, d.v());
}

/// A representation of pi1(X) for (s, k) that is symmetric for the pairing
/// G = diag(1, .., 1, -1) (m >= 2): every image lies in U(m-1) + U(1), so it
/// commutes with G, and all boundary signatures equal G.
struct DoubleRep {
  DoubledPresentation p;
  MatrixRep chi;
  SignatureData sig;
};

inline Matrix block_unitary(int m, std::mt19937_64& rng) {
  Matrix u = Matrix::Zero(m, m);
  u.topLeftCorner(m - 1, m - 1) = haar_unitary(m - 1, rng);
  u(m - 1, m - 1) = std::polar(1.0, random_phases(1, rng)[0]);
  return u;
}

inline DoubleRep random_double_rep(int s, int k, int m, std::mt19937_64& rng) {
  DoubledPresentation p = double_group(s, k);
  const GroupPresentation sg = surface_group(s, k);
  Matrix g = Matrix::Identity(m, m);
  g(m - 1, m - 1) = -1.0;
  MatrixRep chi_s{m, std::vector<Matrix>(static_cast<std::size_t>(sg.group.rank()))};
  for (int x = 1; x < sg.group.rank(); ++x) {
    chi_s.images[static_cast<std::size_t>(x)] = block_unitary(m, rng);
  }
  // Solve the surface relation for A0.
  Word rest = sg.group.identity();
  for (const Letter& l : sg.relator()) {
    if (l.gen != 0) rest = rest * Word::generator(sg.group.rank(), l.gen, l.exp);
  }
  chi_s.images[0] = Matrix::Identity(m, m);
  chi_s.images[0] = evaluate_rep(chi_s, rest).adjoint();
  SignatureData sig{std::vector<Matrix>(static_cast<std::size_t>(k), g)};
  MatrixRep chi = extend_to_double(chi_s, sig, p);
  return {std::move(p), std::move(chi), std::move(sig)};
}

/// Real covering of double(s, k) built from permutations of the surface
/// generators: B_j act trivially, A''/B'' copy B'/A'.
inline CoveringAction real_covering(const DoubledPresentation& p,
                                    const std::vector<SheetPermutation>& boundary_a,
                                    const std::vector<SheetPermutation>& handle_a,
                                    const std::vector<SheetPermutation>& handle_b) {
  const std::size_t n = boundary_a.empty() ? handle_a.front().size() : boundary_a.front().size();
  std::vector<SheetPermutation> perms(static_cast<std::size_t>(p.group.rank()));
  auto set = [&](const std::string& name, const SheetPermutation& q) {
    perms[static_cast<std::size_t>(p.group.index_of(name))] = q;
  };
  for (int j = 1; j < p.k; ++j) {
    set(boundary_label('A', j), boundary_a[static_cast<std::size_t>(j - 1)]);
    set(boundary_label('B', j), SheetPermutation::identity(n));
  }
  for (int i = 1; i <= p.s; ++i) {
    set(handle_label('A', 1, i), handle_a[static_cast<std::size_t>(i - 1)]);
    set(handle_label('B', 1, i), handle_b[static_cast<std::size_t>(i - 1)]);
    set(handle_label('A', 2, i), handle_b[static_cast<std::size_t>(i - 1)]);
    set(handle_label('B', 2, i), handle_a[static_cast<std::size_t>(i - 1)]);
  }
  return build_covering(p.group, std::move(perms));
}

inline SheetPermutation transposition(std::size_t n, std::size_t a, std::size_t b) {
  SheetPermutation q = SheetPermutation::identity(n);
  std::swap(q.images[a], q.images[b]);
  return q;
}

/// Trace of the induced representation from the Frobenius formula, with chi
/// evaluated on ambient words: sum over sheets k fixed by w of
/// tr chi(g_k w g_k^-1).
template <class AmbientTrace>
Complex frobenius_trace(const std::vector<std::vector<std::size_t>>& perms, std::size_t n,
                        const std::vector<Word>& reps, const Word& w, AmbientTrace chi_trace) {
  Complex total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (walk(perms, k, w) == k) total += chi_trace(reps[k] * w * invert(reps[k]));
  }
  return total;
}

/// tr chi1 on the cyclic torus subgroup {(a, b) : n | a}, straight from the
/// exponent sums: chi1(a, b) = M^(a/n) V^b.
inline Complex cyclic_torus_trace(const TorusData& d, std::size_t n, const Word& h) {
  const auto sums = exponent_sums(h);
  const long a = sums[0];
  const long b = sums[1];
  const long nn = static_cast<long>(n);
  if (a % nn != 0) return std::nan("");
  return (unitary_power(d.m, a / nn) * unitary_power(d.v(), b)).trace();
}

/// Two-stage tower over the torus: the lower cyclic n1-cover, then the cyclic
/// n2-cover of its subgroup along the A1 direction.
struct Tower {
  TorusCover lower;
  Presentation h;
  CoveringAction upper;
  Transversal t_upper;
  CoveringAction composite;
  Transversal t_composite;
};

inline Tower torus_tower(std::size_t n1, std::size_t n2) {
  TorusCover lower = torus_cover(n1);
  Presentation h = subgroup_presentation(lower.c, lower.t);
  std::vector<SheetPermutation> perms;
  for (const Word& s : lower.t.schreier_gens) {
    const long a = exponent_sums(s)[0];
    perms.push_back(SheetPermutation::cycle(n2, a / static_cast<long>(n1)));
  }
  CoveringAction upper = build_covering(h, std::move(perms));
  Transversal t_upper = schreier_transversal(upper);
  CoveringAction composite = compose_coverings(lower.c, lower.t, upper);
  Transversal t_composite = schreier_transversal(composite);
  return {std::move(lower), std::move(h), std::move(upper), std::move(t_upper),
          std::move(composite), std::move(t_composite)};
}

/// Exponent sums in the torus of each upper Schreier generator.
inline std::vector<std::pair<long, long>> ambient_exponents(const Tower& tw) {
  std::vector<std::pair<long, long>> out;
  for (const Word& k : tw.t_upper.schreier_gens) {
    const Word ambient = expand_schreier(tw.lower.t, k, tw.lower.p.group.rank());
    const auto sums = exponent_sums(ambient);
    out.emplace_back(sums[0], sums[1]);
  }
  return out;
}

}  // namespace testing_support
