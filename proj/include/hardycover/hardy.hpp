#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "hardycover/covering.hpp"
#include "hardycover/errors.hpp"
#include "hardycover/induction.hpp"
#include "hardycover/linalg.hpp"
#include "hardycover/representation.hpp"
#include "hardycover/surface.hpp"

namespace hardycover {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// The covering F(z) = z^n of the annulus A(rho2) = {rho1^n < |w| < 1} by
/// A(rho1). Boundary component 0 is the outer circle, component 1 the inner.
struct AnnulusCovering {
  double rho1 = 0.6;
  int n = 1;
  double rho2 = 0.6;
  /// sqrt(F'(z)) = sqrt(n) z^((n-1)/2) has a half-integer exponent for even n
  /// and is then tracked by continuity from the base angle.
  bool branch_tracked = false;
  double branch_base = 0.0;
};

inline AnnulusCovering make_annulus_cover(double rho1, int n) {
  if (!(rho1 > 0.0 && rho1 < 1.0)) {
    throw invalid_surface("inner radius must lie in (0, 1), got " + std::to_string(rho1));
  }
  if (n < 1) throw invalid_surface("sheet count must be >= 1");
  return {rho1, n, std::pow(rho1, n), n % 2 == 0, 0.0};
}

/// f(z) = diag(z^{c_j}) sum_{|d| <= D} a_d z^d, times sqrt(dz). Fractional
/// powers are evaluated by continuity in the angle, so the monodromy around
/// the core loop is diag(exp(2 pi i c_j)).
struct SectionSpec {
  int degree = 0;
  std::vector<double> exponents;
  std::vector<Vector> coeffs;  // coeffs[d + degree]

  int m() const { return static_cast<int>(exponents.size()); }

  Vector evaluate(double r, double theta) const {
    // Horner in z, then the z^-D shift.
    const Complex z = std::polar(r, theta);
    Vector out = coeffs.back();
    for (int e = 2 * degree - 1; e >= 0; --e) {
      out = out * z + coeffs[static_cast<std::size_t>(e)];
    }
    out *= std::polar(std::pow(r, -degree), -degree * theta);
    for (int j = 0; j < m(); ++j) {
      const double c = exponents[static_cast<std::size_t>(j)];
      out(j) *= std::polar(std::pow(r, c), c * theta);
    }
    return out;
  }

  static SectionSpec zero(int m, int degree, std::vector<double> exponents = {}) {
    if (exponents.empty()) exponents.assign(static_cast<std::size_t>(m), 0.0);
    SectionSpec s{degree, std::move(exponents), {}};
    s.coeffs.assign(static_cast<std::size_t>(2 * degree + 1), Vector::Zero(m));
    return s;
  }

  Vector& coeff(int d) { return coeffs[static_cast<std::size_t>(d + degree)]; }
};

struct Circle {
  int component = 0;
  double radius = 1.0;
};

/// Uniform samples theta_j = 2 pi j / N of a section on one boundary circle,
/// stored column-wise.
struct BoundarySection {
  int component = 0;
  double radius = 1.0;
  Matrix samples;
  bool branch_continuous = true;

  std::size_t size() const { return static_cast<std::size_t>(samples.cols()); }
};

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void check_sample_count(std::size_t n, int degree) {
  if (!is_power_of_two(n)) throw sampling_error("sample count must be a power of two");
  if (n < static_cast<std::size_t>(2 * degree + 2)) {
    throw sampling_error("undersampled: N = " + std::to_string(n) + " < 2D + 2 = " +
                         std::to_string(2 * degree + 2));
  }
}

inline BoundarySection sample_section(const SectionSpec& spec, const Circle& circle,
                                      std::size_t n) {
  check_sample_count(n, spec.degree);
  BoundarySection out{circle.component, circle.radius, Matrix(spec.m(), static_cast<Eigen::Index>(n)),
                      true};
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    out.samples.col(static_cast<Eigen::Index>(j)) = spec.evaluate(circle.radius, theta);
  }
  return out;
}

inline Circle base_circle(const AnnulusCovering& cov, int component) {
  return {component, component == 0 ? 1.0 : cov.rho1};
}

inline Circle image_circle(const AnnulusCovering& cov, int component) {
  return {component, component == 0 ? 1.0 : cov.rho2};
}

/// Direct image of a section of S1 sampled on a boundary circle of S2. Block
/// k holds f(z_k) / sqrt(F'(z_k)) with z_k = exp(2 pi i k / n) w^(1/n), which
/// is the preimage reached from z_0 along the k-th power of the core loop.
inline BoundarySection pushforward_section(const AnnulusCovering& cov, const SectionSpec& spec,
                                           int component, std::size_t n_samples,
                                           bool flip_branch = false) {
  check_sample_count(n_samples, spec.degree);
  const Circle circle = image_circle(cov, component);
  const int n = cov.n;
  const int m = spec.m();
  const double z_radius = std::pow(circle.radius, 1.0 / n);
  const double sign = flip_branch ? -1.0 : 1.0;
  BoundarySection out{component, circle.radius,
                      Matrix(static_cast<Eigen::Index>(n) * m, static_cast<Eigen::Index>(n_samples)),
                      true};
  for (std::size_t j = 0; j < n_samples; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(n_samples);
    for (int k = 0; k < n; ++k) {
      const double arg = (theta - cov.branch_base + kTwoPi * k) / n + cov.branch_base / n;
      const Complex root_fp = sign * std::sqrt(static_cast<double>(n)) *
                              std::polar(std::pow(z_radius, 0.5 * (n - 1)), 0.5 * (n - 1) * arg);
      out.samples.block(static_cast<Eigen::Index>(k) * m, static_cast<Eigen::Index>(j), m, 1) =
          spec.evaluate(z_radius, arg) / root_fp;
    }
  }
  return out;
}

/// Trapezoid quadrature of g^* J f |dz| over one circle.
inline Complex component_product(const BoundarySection& f, const BoundarySection& g,
                                 const Matrix& j) {
  if (f.size() != g.size() || f.samples.rows() != g.samples.rows()) {
    throw sampling_error("sections sampled on different grids");
  }
  if (f.radius != g.radius) throw sampling_error("sections sampled on different circles");
  if (j.rows() != f.samples.rows() || j.cols() != f.samples.rows()) {
    throw sampling_error("signature matrix of size " + std::to_string(j.rows()) +
                         " for sections of dimension " + std::to_string(f.samples.rows()));
  }
  Complex sum = 0.0;
  const Matrix jf = j * f.samples;
  for (Eigen::Index c = 0; c < jf.cols(); ++c) sum += g.samples.col(c).dot(jf.col(c));
  return sum * (kTwoPi * f.radius / static_cast<double>(f.size()));
}

/// [f, g] = sum over components of the integral of g^* J_i f |dz|.
inline Complex indefinite_inner_product(std::span<const BoundarySection> f,
                                        std::span<const BoundarySection> g,
                                        std::span<const Matrix> j) {
  if (f.size() != g.size() || f.size() != j.size()) {
    throw sampling_error("one boundary section and one signature matrix per component");
  }
  Complex total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) total += component_product(f[i], g[i], j[i]);
  return total;
}

struct HardyBound {
  double sup_total = 0.0;
  double sup_outer = 0.0;
  double sup_inner = 0.0;
  bool flagged = false;
};

/// Radii 1 - (1 - rho) 2^-j, j = 1..count, approaching the outer boundary.
inline std::vector<double> approach_grid(double rho, int count) {
  std::vector<double> out;
  for (int j = 1; j <= count; ++j) out.push_back(1.0 - (1.0 - rho) * std::ldexp(1.0, -j));
  return out;
}

/// Sup over r of the integrals of f^* f over |z| = r (near the outer circle)
/// and |z| = rho / r (near the inner circle). Flags the estimate when it
/// exceeds `flag_threshold`.
inline HardyBound hardy_bound_check(const SectionSpec& spec, double rho,
                                    std::span<const double> r_grid, std::size_t n = 256,
                                    double flag_threshold = 1e8) {
  HardyBound out;
  const Matrix id = Matrix::Identity(spec.m(), spec.m());
  for (double r : r_grid) {
    if (!(r > rho && r < 1.0)) throw sampling_error("radius grid must lie inside (rho, 1)");
    const auto outer = sample_section(spec, {0, r}, n);
    const auto inner = sample_section(spec, {1, rho / r}, n);
    const double a = component_product(outer, outer, id).real();
    const double b = component_product(inner, inner, id).real();
    out.sup_outer = std::max(out.sup_outer, a);
    out.sup_inner = std::max(out.sup_inner, b);
    out.sup_total = std::max(out.sup_total, a + b);
  }
  out.flagged = out.sup_total > flag_threshold;
  return out;
}

/// Flat unitary line/vector bundle on the annulus with diagonal monodromy
/// diag(exp(i alpha_j)) around the core loop and boundary signatures J0
/// (outer) and J1 (inner).
struct AnnulusBundle {
  std::vector<double> alpha;
  SignatureData sig;

  int m() const { return static_cast<int>(alpha.size()); }

  Matrix core_monodromy() const {
    Matrix mono = Matrix::Zero(m(), m());
    for (int j = 0; j < m(); ++j) mono(j, j) = std::polar(1.0, alpha[static_cast<std::size_t>(j)]);
    return mono;
  }

  std::vector<double> exponents() const {
    std::vector<double> c;
    for (double a : alpha) c.push_back(a / kTwoPi);
    return c;
  }
};

/// Everything the base bundle induces on the quotient annulus: the cyclic
/// covering of the torus double, chi1 on its Schreier generators, chi2, G2
/// and the per-component J2.
struct InducedAnnulusData {
  DoubledPresentation torus;
  CoveringAction covering;
  Transversal transversal;
  MatrixRep chi1;
  InducedRep chi2;
  Matrix g2;
  std::vector<Matrix> j2;
  SymmetryReport symmetry;
};

inline void check_annulus_bundle(const AnnulusBundle& b, double tol = kExactTolerance) {
  if (b.m() < 1) throw signature_error("bundle rank must be positive");
  if (b.sig.J.size() != 2) throw signature_error("the annulus has two boundary components");
  const Matrix mono = b.core_monodromy();
  for (std::size_t i = 0; i < 2; ++i) {
    const Matrix& j = b.sig.J[i];
    if (j.rows() != b.m() || j.cols() != b.m()) {
      throw signature_error("J" + std::to_string(i) + " has the wrong size");
    }
    if (signature_residual(j) >= tol) {
      throw signature_error("J" + std::to_string(i) + " is not a signature matrix");
    }
    if (max_abs(mono.adjoint() * j * mono - j) >= tol) {
      throw signature_error("J" + std::to_string(i) + " is incompatible with the monodromy");
    }
  }
}

/// Runs the algebraic side for F(z) = z^n: perm(A1) = n-cycle, perm(B1) = id,
/// chi1(A1^n) = core monodromy, chi1(B1) = J0 J1, G1 = J0.
inline InducedAnnulusData induce_annulus_bundle(const AnnulusCovering& cov,
                                                const AnnulusBundle& bundle,
                                                double tol = kExactTolerance) {
  check_annulus_bundle(bundle, tol);
  DoubledPresentation torus = double_group(0, 2);
  CoveringAction c = build_covering(
      torus.group, {SheetPermutation::cycle(static_cast<std::size_t>(cov.n)),
                    SheetPermutation::identity(static_cast<std::size_t>(cov.n))});
  Transversal t = schreier_transversal(c);
  const Matrix& g1 = bundle.sig.J[0];
  MatrixRep chi1 = abelian_torus_rep(c, t, bundle.core_monodromy(), g1 * bundle.sig.J[1], tol);
  InducedRep chi2 = induce_representation(c, t, chi1, tol);
  Matrix g2 = build_G2(c, t, chi1, g1);
  std::vector<Matrix> j2 = build_J2_diagonal(lift_signatures(c, t, chi1, g1, torus, tol), tol);
  SymmetryReport sym = verify_symmetry_conditions(chi2, g2, j2, torus, tol);
  return {std::move(torus), std::move(c), std::move(t), std::move(chi1),
          std::move(chi2),  std::move(g2), std::move(j2), std::move(sym)};
}

struct IsometryResult {
  Complex base = 0.0;       // [f1, h1] on S1
  Complex quotient = 0.0;   // [f2, h2] on S2
  double residual = 0.0;
  Complex base_components[2]{};
  Complex quotient_components[2]{};
};

inline void check_section_matches(const SectionSpec& s, const AnnulusBundle& b) {
  if (s.m() != b.m()) throw signature_error("section rank differs from bundle rank");
  const auto c = b.exponents();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (std::abs(s.exponents[j] - c[j]) > 1e-15) {
      throw signature_error("section multiplier does not match the bundle monodromy");
    }
  }
}

/// |[f2, h2]_{J2} - [f1, h1]_{J1}| for the direct image under F(z) = z^n,
/// with J2 taken from an already induced bundle.
inline IsometryResult isometry_residual(const AnnulusCovering& cov, const SectionSpec& f,
                                        const SectionSpec& h, const AnnulusBundle& bundle,
                                        const std::vector<Matrix>& j2, std::size_t n_samples) {
  check_section_matches(f, bundle);
  check_section_matches(h, bundle);
  IsometryResult out;
  for (int i = 0; i < 2; ++i) {
    const Circle c1 = base_circle(cov, i);
    out.base_components[i] = component_product(sample_section(f, c1, n_samples),
                                               sample_section(h, c1, n_samples),
                                               bundle.sig.J[static_cast<std::size_t>(i)]);
    out.quotient_components[i] =
        component_product(pushforward_section(cov, f, i, n_samples),
                          pushforward_section(cov, h, i, n_samples),
                          j2[static_cast<std::size_t>(i)]);
    out.base += out.base_components[i];
    out.quotient += out.quotient_components[i];
  }
  out.residual = std::abs(out.quotient - out.base);
  return out;
}

/// Full check: validates the signature data, induces chi2, G2, J2 for the
/// cyclic covering and compares the two inner products.
inline IsometryResult verify_isometry(const AnnulusCovering& cov, const SectionSpec& f,
                                      const SectionSpec& h, const AnnulusBundle& bundle,
                                      std::size_t n_samples) {
  const InducedAnnulusData data = induce_annulus_bundle(cov, bundle);
  return isometry_residual(cov, f, h, bundle, data.j2, n_samples);
}

}  // namespace hardycover
