#pragma once

// Rank-2 tensors on C^2 (x) C^2 written in the basis {tau0, tau1, tau2, sigma},
// the symmetric/antisymmetric projectors, the Minkowski-type product on the
// symmetric part and the SL(2,C) action C -> Gamma^T C Gamma.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace mpsgs {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Vector3 = Eigen::Vector3cd;
using Vector4 = Eigen::Vector4cd;

inline constexpr double kDefaultRankTol = 1e-10;
inline constexpr double kSl2DetTol = 1e-12;

/// Coefficients (v0, v1, v2, u) of C = v0 tau0 + v1 tau1 + v2 tau2 + u sigma.
struct PauliQuartet {
  Complex v0{};
  Complex v1{};
  Complex v2{};
  Complex u{};

  static PauliQuartet from_coeffs(const Vector4& c) { return {c(0), c(1), c(2), c(3)}; }
  Vector4 coeffs() const { return Vector4(v0, v1, v2, u); }
  /// The symmetric coordinates (v0, v1, v2).
  Vector3 v() const { return Vector3(v0, v1, v2); }
  static PauliQuartet symmetric(const Vector3& v) { return {v(0), v(1), v(2), Complex{}}; }

  double norm() const { return coeffs().norm(); }
  bool is_finite() const;

  friend PauliQuartet operator+(const PauliQuartet& a, const PauliQuartet& b) {
    return {a.v0 + b.v0, a.v1 + b.v1, a.v2 + b.v2, a.u + b.u};
  }
  friend PauliQuartet operator-(const PauliQuartet& a, const PauliQuartet& b) {
    return {a.v0 - b.v0, a.v1 - b.v1, a.v2 - b.v2, a.u - b.u};
  }
  friend PauliQuartet operator*(Complex s, const PauliQuartet& a) {
    return {s * a.v0, s * a.v1, s * a.v2, s * a.u};
  }
  friend bool operator==(const PauliQuartet&, const PauliQuartet&) = default;
};

namespace pauli {
inline const PauliQuartet tau0{1.0, 0.0, 0.0, 0.0};
inline const PauliQuartet tau1{0.0, 1.0, 0.0, 0.0};
inline const PauliQuartet tau2{0.0, 0.0, 1.0, 0.0};
inline const PauliQuartet sigma{0.0, 0.0, 0.0, 1.0};
}  // namespace pauli

Matrix2 to_matrix(const PauliQuartet& q);
PauliQuartet quartet_from_matrix(const Matrix2& c);

/// (P C)_{ab} = C_{ba}: keeps v, negates u.
PauliQuartet permute(const PauliQuartet& q);

enum class Parity { Symmetric, Antisymmetric };

/// Pi^+ (Symmetric) zeroes u, Pi^- (Antisymmetric) zeroes v.
PauliQuartet project(const PauliQuartet& q, Parity parity);

/// -a0 b0 + a1 b1 + a2 b2 on the symmetric coordinates (bilinear, no conjugation).
Complex minkowski(const PauliQuartet& a, const PauliQuartet& b);
Complex minkowski(const Vector3& a, const Vector3& b);

/// tr(C1 sigma^{-1} C2 sigma^{-1}) in closed form: 2[u1 u2 + a.b].
Complex trace_form(const PauliQuartet& a, const PauliQuartet& b);
/// Same quantity by explicit 2x2 matrix products.
Complex trace_form_direct(const PauliQuartet& a, const PauliQuartet& b);

/// A 2x2 complex matrix with unit determinant.
class SL2 {
 public:
  /// Throws ValidationError unless |det(m) - 1| <= tol and m is finite.
  explicit SL2(const Matrix2& m, double tol = kSl2DetTol);

  static SL2 identity() { return SL2(Matrix2::Identity()); }
  /// Rescales m by the principal square root of its determinant.
  static SL2 normalized(const Matrix2& m);

  const Matrix2& matrix() const { return m_; }
  SL2 inverse() const;
  /// Action of (a * b) equals acting with a first, then b.
  friend SL2 operator*(const SL2& a, const SL2& b) { return normalized(a.m_ * b.m_); }

 private:
  Matrix2 m_;
};

/// Op_Gamma C = Gamma^T C Gamma.
PauliQuartet sl2_act(const SL2& g, const PauliQuartet& q);

/// Linear subspace of span{tau0, tau1, tau2, sigma}.
///
/// The basis is validated for linear independence and stored in reduced
/// row-echelon form, so two CSpace values describing the same span carry
/// (numerically) the same basis.
class CSpace {
 public:
  CSpace() = default;
  explicit CSpace(const std::vector<PauliQuartet>& basis, double rank_tol = kDefaultRankTol);

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<PauliQuartet>& basis() const { return basis_; }
  /// dim() x 4 coefficient matrix, one basis element per row.
  Eigen::MatrixXcd coefficient_matrix() const;
  double rank_tol() const { return rank_tol_; }

  /// Euclidean distance of q (as a coefficient 4-vector) from this span.
  double distance(const PauliQuartet& q) const;

 private:
  std::vector<PauliQuartet> basis_;
  double rank_tol_ = kDefaultRankTol;
};

/// Numerical rank of the rows of m relative to the largest singular value.
/// Throws DegenerateInputError if a singular value ratio lies in
/// [rank_tol, 10 * rank_tol).
int numerical_rank(const Eigen::MatrixXcd& m, double rank_tol);

CSpace sl2_act_space(const SL2& g, const CSpace& v);

/// Same dimension, and every basis vector of a lies within tol * |b| of span(b).
bool span_equal(const CSpace& a, const CSpace& b, double tol = 1e-8);

}  // namespace mpsgs
