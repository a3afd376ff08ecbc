#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "hardycover/errors.hpp"
#include "hardycover/linalg.hpp"
#include "hardycover/presentation.hpp"
#include "hardycover/surface.hpp"
#include "hardycover/word.hpp"

namespace hardycover {

/// Default tolerance for identities that hold exactly by construction.
inline constexpr double kExactTolerance = 1e-12;
/// Default tolerance for products along long random words.
inline constexpr double kProductTolerance = 1e-10;

/// Unitary matrices of size m, one per generator of some presentation.
/// Used both for chi on pi1(S) or pi1(X) and for chi1 on Schreier generators.
struct MatrixRep {
  int m = 1;
  std::vector<Matrix> images;

  int rank() const { return static_cast<int>(images.size()); }
};

/// Product of generator images along w; inverse letters use the adjoint.
inline Matrix evaluate_rep(const MatrixRep& r, const Word& w) {
  if (w.rank() != r.rank()) {
    throw word_error("word of rank " + std::to_string(w.rank()) +
                     " evaluated in a representation on " + std::to_string(r.rank()) +
                     " generators");
  }
  Matrix out = Matrix::Identity(r.m, r.m);
  for (const Letter& l : w) {
    const Matrix& g = r.images[static_cast<std::size_t>(l.gen)];
    if (l.exp > 0) {
      out = out * g;
    } else {
      out = out * g.adjoint();
    }
  }
  return out;
}

struct RepReport {
  std::vector<Residual> unitarity;
  std::vector<Residual> relators;

  bool pass() const {
    auto ok = [](const Residual& r) { return r.pass(); };
    return std::all_of(unitarity.begin(), unitarity.end(), ok) &&
           std::all_of(relators.begin(), relators.end(), ok);
  }

  /// First failing relator residual, or nullptr.
  const Residual* first_failed_relator() const {
    for (const auto& r : relators) {
      if (!r.pass()) return &r;
    }
    return nullptr;
  }
};

/// Unitarity of each image and triviality of each relator. Never throws on a
/// failed check; the report carries the residuals.
inline RepReport check_representation(const MatrixRep& r, const Presentation& p,
                                      double tol = kExactTolerance) {
  RepReport report;
  if (r.rank() != p.rank()) {
    throw representation_error("representation has " + std::to_string(r.rank()) +
                               " images for " + std::to_string(p.rank()) + " generators");
  }
  for (int g = 0; g < r.rank(); ++g) {
    const Matrix& u = r.images[static_cast<std::size_t>(g)];
    const double res = (u.rows() == r.m && u.cols() == r.m) ? unitarity_residual(u) : 1e300;
    report.unitarity.push_back({"unitary " + p.generators[static_cast<std::size_t>(g)], res, tol});
  }
  for (const Word& rel : p.relators) {
    const double res = max_abs(evaluate_rep(r, rel) - Matrix::Identity(r.m, r.m));
    report.relators.push_back({"relator " + p.format(rel), res, tol});
  }
  return report;
}

/// Residuals of chi(T^tau)^* G chi(T) = G, one per generator T.
inline std::vector<Residual> tau_symmetry_residuals(const MatrixRep& r, const Presentation& p,
                                                    const Matrix& g,
                                                    double tol = kExactTolerance) {
  if (!p.tau) throw representation_error("presentation carries no involution");
  std::vector<Residual> out;
  for (int x = 0; x < p.rank(); ++x) {
    const Matrix lhs = evaluate_rep(r, (*p.tau)[static_cast<std::size_t>(x)]).adjoint() * g *
                       r.images[static_cast<std::size_t>(x)];
    out.push_back({"tau symmetry " + p.generators[static_cast<std::size_t>(x)],
                   max_abs(lhs - g), tol});
  }
  return out;
}

/// Boundary signature matrices J_0..J_{k-1}; J_0 doubles as the pairing G.
struct SignatureData {
  std::vector<Matrix> J;

  const Matrix& G() const { return J.front(); }
};

/// Each J_i selfadjoint and involutive, and chi(A_i)^* J_i chi(A_i) = J_i.
inline std::vector<Residual> signature_residuals(const MatrixRep& chi_s, const SignatureData& sig,
                                                 const GroupPresentation& s,
                                                 double tol = kExactTolerance) {
  if (static_cast<int>(sig.J.size()) != s.k) {
    throw signature_error("expected " + std::to_string(s.k) + " signature matrices, got " +
                          std::to_string(sig.J.size()));
  }
  std::vector<Residual> out;
  for (int i = 0; i < s.k; ++i) {
    const Matrix& j = sig.J[static_cast<std::size_t>(i)];
    if (j.rows() != chi_s.m || j.cols() != chi_s.m) {
      throw signature_error("signature matrix J" + std::to_string(i) + " has the wrong size");
    }
    out.push_back({"signature J" + std::to_string(i), signature_residual(j), tol});
    const Matrix& a = chi_s.images[static_cast<std::size_t>(i)];
    out.push_back({"compatibility A" + std::to_string(i), max_abs(a.adjoint() * j * a - j), tol});
  }
  return out;
}

/// Extends chi from pi1(S) to pi1(X) using chi(B_j) = G J_j,
/// chi(A''_i) = G chi(B'_i) G and chi(B''_i) = G chi(A'_i) G, then checks the
/// relator and chi(T^tau)^* G chi(T) = G on every generator. Throws
/// representation_error ("extension inconsistent") when a residual exceeds
/// tol.
inline MatrixRep extend_to_double(const MatrixRep& chi_s, const SignatureData& sig,
                                  const DoubledPresentation& p, double tol = kExactTolerance) {
  const GroupPresentation s = surface_group(p.s, p.k);
  if (chi_s.rank() != s.group.rank()) {
    throw representation_error("representation is not over pi1(S) for (s, k) = (" +
                               std::to_string(p.s) + ", " + std::to_string(p.k) + ")");
  }
  if (const auto rep = check_representation(chi_s, s.group, tol); !rep.pass()) {
    throw representation_error("not a representation of pi1(S): " +
                               (rep.first_failed_relator() ? rep.first_failed_relator()->name
                                                           : std::string("non-unitary image")));
  }
  for (const auto& r : signature_residuals(chi_s, sig, s, tol)) {
    if (!r.pass()) {
      throw signature_error(r.name + " fails (residual " + std::to_string(r.value) + ")");
    }
  }
  const Matrix& g = sig.G();
  MatrixRep out{chi_s.m, std::vector<Matrix>(static_cast<std::size_t>(p.group.rank()))};
  auto set = [&](const std::string& name, Matrix value) {
    out.images[static_cast<std::size_t>(p.group.index_of(name))] = std::move(value);
  };
  auto image = [&](const std::string& name) -> const Matrix& {
    return chi_s.images[static_cast<std::size_t>(s.group.index_of(name))];
  };
  for (int j = 1; j < p.k; ++j) {
    set(boundary_label('A', j), image(boundary_label('A', j)));
    set(boundary_label('B', j), g * sig.J[static_cast<std::size_t>(j)]);
  }
  for (int i = 1; i <= p.s; ++i) {
    const Matrix& a1 = image(handle_label('A', 1, i));
    const Matrix& b1 = image(handle_label('B', 1, i));
    set(handle_label('A', 1, i), a1);
    set(handle_label('B', 1, i), b1);
    set(handle_label('A', 2, i), g * b1 * g);
    set(handle_label('B', 2, i), g * a1 * g);
  }

  std::vector<Residual> checks = tau_symmetry_residuals(out, p.group, g, tol);
  const auto rep = check_representation(out, p.group, tol);
  checks.insert(checks.end(), rep.relators.begin(), rep.relators.end());
  std::string failures;
  for (const auto& r : checks) {
    if (!r.pass()) failures += " " + r.name + "=" + std::to_string(r.value) + ";";
  }
  if (!failures.empty()) throw representation_error("extension inconsistent:" + failures);
  return out;
}

/// Restriction of a representation of pi1(X) to the generators of pi1(S).
inline MatrixRep restrict_to_surface(const MatrixRep& chi_x, const DoubledPresentation& p) {
  const int rank = p.k + 2 * p.s;
  MatrixRep out{chi_x.m, {}};
  for (int g = 0; g < rank; ++g) {
    const Word w = surface_generator_in_double(p, g);
    if (w.size() == 1 && w[0].exp == 1) {
      out.images.push_back(chi_x.images[static_cast<std::size_t>(w[0].gen)]);
    } else {
      out.images.push_back(evaluate_rep(chi_x, w));
    }
  }
  return out;
}

}  // namespace hardycover
