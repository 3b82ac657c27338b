#include "mpsgs/pauli_space.hpp"

#include <algorithm>
#include <cmath>

#include "mpsgs/errors.hpp"

namespace mpsgs {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// sigma^{-1} = -sigma
Matrix2 sigma_inverse() {
  Matrix2 s;
  s << 0.0, -1.0, 1.0, 0.0;
  return s;
}

}  // namespace

bool PauliQuartet::is_finite() const { return finite(v0) && finite(v1) && finite(v2) && finite(u); }

Matrix2 to_matrix(const PauliQuartet& q) {
  Matrix2 c;
  c << q.v0 + q.v1, q.v2 + q.u, q.v2 - q.u, q.v0 - q.v1;
  return c;
}

PauliQuartet quartet_from_matrix(const Matrix2& c) {
  return {(c(0, 0) + c(1, 1)) / 2.0, (c(0, 0) - c(1, 1)) / 2.0, (c(0, 1) + c(1, 0)) / 2.0,
          (c(0, 1) - c(1, 0)) / 2.0};
}

PauliQuartet permute(const PauliQuartet& q) { return {q.v0, q.v1, q.v2, -q.u}; }

PauliQuartet project(const PauliQuartet& q, Parity parity) {
  if (parity == Parity::Symmetric) return {q.v0, q.v1, q.v2, Complex{}};
  return {Complex{}, Complex{}, Complex{}, q.u};
}

Complex minkowski(const Vector3& a, const Vector3& b) {
  return -a(0) * b(0) + a(1) * b(1) + a(2) * b(2);
}

Complex minkowski(const PauliQuartet& a, const PauliQuartet& b) { return minkowski(a.v(), b.v()); }

Complex trace_form(const PauliQuartet& a, const PauliQuartet& b) {
  // sigma^{-1} C sigma^{-1} flips the sign of the symmetric part only, so the
  // antisymmetric contribution enters with +u1 u2.
  return 2.0 * (a.u * b.u + minkowski(a, b));
}

Complex trace_form_direct(const PauliQuartet& a, const PauliQuartet& b) {
  const Matrix2 si = sigma_inverse();
  return (to_matrix(a) * si * to_matrix(b) * si).trace();
}

SL2::SL2(const Matrix2& m, double tol) : m_(m) {
  if (!m.allFinite()) throw ValidationError("SL2: matrix has non-finite entries");
  const double defect = std::abs(m.determinant() - 1.0);
  if (!(defect <= tol)) {
    throw ValidationError("SL2: |det - 1| = " + std::to_string(defect) + " exceeds tolerance");
  }
}

SL2 SL2::normalized(const Matrix2& m) {
  if (!m.allFinite()) throw ValidationError("SL2: matrix has non-finite entries");
  const Complex det = m.determinant();
  const double scale = m.cwiseAbs2().sum();
  if (std::abs(det) <= 1e-14 * scale || scale == 0.0) {
    throw ValidationError("SL2: matrix is singular");
  }
  return SL2(m / std::sqrt(det), 1e-10);
}

SL2 SL2::inverse() const {
  Matrix2 inv;
  inv << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
  return SL2(inv, 1e-10);
}

PauliQuartet sl2_act(const SL2& g, const PauliQuartet& q) {
  const Matrix2& m = g.matrix();
  return quartet_from_matrix(m.transpose() * to_matrix(q) * m);
}

int numerical_rank(const Eigen::MatrixXcd& m, double rank_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  if (smax == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double ratio = s(i) / smax;
    if (ratio >= 10.0 * rank_tol) {
      ++rank;
    } else if (ratio >= rank_tol) {
      throw DegenerateInputError("rank decision is ambiguous: singular value ratio " +
                                 std::to_string(ratio) + " lies in [rank_tol, 10*rank_tol)");
    }
  }
  return rank;
}

CSpace::CSpace(const std::vector<PauliQuartet>& basis, double rank_tol) : rank_tol_(rank_tol) {
  if (basis.size() > 4) throw ValidationError("CSpace: more than 4 basis elements");
  const auto k = static_cast<Eigen::Index>(basis.size());
  if (k == 0) return;

  Eigen::MatrixXcd a(k, 4);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!basis[i].is_finite()) throw ValidationError("CSpace: non-finite basis element");
    const double n = basis[i].norm();
    if (n == 0.0) throw ValidationError("CSpace: zero basis element");
    a.row(i) = basis[i].coeffs().transpose() / n;
  }
  if (numerical_rank(a, rank_tol) != k) {
    throw ValidationError("CSpace: basis is linearly dependent");
  }

  // Row-reduce with partial pivoting down each column.
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < 4 && row < k; ++col) {
    Eigen::Index piv = row;
    for (Eigen::Index r = row + 1; r < k; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    }
    if (std::abs(a(piv, col)) <= rank_tol) continue;
    a.row(row).swap(a.row(piv));
    a.row(row) /= a(row, col);
    for (Eigen::Index r = 0; r < k; ++r) {
      if (r != row) a.row(r) -= a(r, col) * a.row(row);
    }
    a(row, col) = 1.0;
    ++row;
  }
  if (row != k) throw DegenerateInputError("CSpace: row reduction lost rank");

  basis_.reserve(basis.size());
  for (Eigen::Index i = 0; i < k; ++i) basis_.push_back(PauliQuartet::from_coeffs(a.row(i).transpose()));
}

Eigen::MatrixXcd CSpace::coefficient_matrix() const {
  Eigen::MatrixXcd a(dim(), 4);
  for (int i = 0; i < dim(); ++i) a.row(i) = basis_[i].coeffs().transpose();
  return a;
}

double CSpace::distance(const PauliQuartet& q) const {
  const Vector4 x = q.coeffs();
  if (dim() == 0) return x.norm();
  const Eigen::MatrixXcd cols = coefficient_matrix().transpose();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(cols);
  const Eigen::MatrixXcd qthin = qr.householderQ() * Eigen::MatrixXcd::Identity(4, dim());
  return (x - qthin * (qthin.adjoint() * x)).norm();
}

CSpace sl2_act_space(const SL2& g, const CSpace& v) {
  std::vector<PauliQuartet> image;
  image.reserve(v.basis().size());
  for (const auto& q : v.basis()) image.push_back(sl2_act(g, q));
  return CSpace(image, v.rank_tol());
}

bool span_equal(const CSpace& a, const CSpace& b, double tol) {
  if (a.dim() != b.dim()) return false;
  for (const auto& q : a.basis()) {
    if (b.distance(q) > tol * q.norm()) return false;
  }
  return true;
}

}  // namespace mpsgs
