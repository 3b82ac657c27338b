#include "mpsgs/hamiltonian.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "mpsgs/errors.hpp"

namespace mpsgs {

namespace {

using ops::kron;

std::string fmt_complex(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << "," << z.imag() << ")";
  return os.str();
}

std::string describe(const FamilyParams& p) {
  std::ostringstream os;
  os.precision(17);
  os << to_string(p.family);
  const FamilyUsage use = family_usage(p.family);
  if (use.g) os << " g=" << p.g;
  if (use.g123) os << " g1=" << p.g1 << " g2=" << p.g2 << " g3=" << fmt_complex(p.g3);
  if (use.nu) os << " nu=" << fmt_complex(p.nu) << " nu'=" << fmt_complex(p.nu_prime);
  if (use.lambda3) os << " lambda3";
  return os.str();
}

void require_hermitian_psd(const Eigen::MatrixXcd& m, double herm_tol, double psd_tol, const char* what) {
  if (!m.allFinite()) throw ValidationError(std::string(what) + ": non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (defect > herm_tol * scale) {
    throw ValidationError(std::string(what) + ": not Hermitian (defect " + std::to_string(defect) + ")");
  }
  const Eigen::MatrixXcd herm = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError(std::string(what) + ": eigensolver failed");
  const auto& ev = es.eigenvalues();
  const double top = std::max(1.0, ev.cwiseAbs().maxCoeff());
  if (ev(0) < -psd_tol * top) {
    throw ValidationError(std::string(what) + ": not positive semi-definite (min eigenvalue " +
                          std::to_string(ev(0)) + ")");
  }
}

Matrix2 two_by_two(Complex a, Complex b, Complex c, Complex d) {
  Matrix2 m;
  m << a, b, c, d;
  return m;
}

// Covector nu' e^0 (x) e^1 - nu e^1 (x) e^0.
PauliQuartet ratio_tensor(Complex nu, Complex nu_prime) {
  return quartet_from_matrix(two_by_two(0.0, nu_prime, -nu, 0.0));
}

Eigen::MatrixXcd pair_coupling(const FamilyParams& p) {
  Eigen::MatrixXcd l(2, 2);
  l << p.g1, p.g3, std::conj(p.g3), p.g2;
  return l;
}

}  // namespace

int max_sites() {
  if (const char* env = std::getenv("MPS_MAX_SITES")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 31) return static_cast<int>(v);
  }
  return kDefaultMaxSites;
}

namespace ops {
Matrix2 id() { return Matrix2::Identity(); }
Matrix2 sigma1() { return two_by_two(0.0, 1.0, 1.0, 0.0); }
Matrix2 sigma3() { return two_by_two(1.0, 0.0, 0.0, -1.0); }
Matrix2 sigma_plus() { return two_by_two(0.0, 1.0, 0.0, 0.0); }
Matrix2 sigma_minus() { return two_by_two(0.0, 0.0, 1.0, 0.0); }

LocalMatrix kron(const Matrix2& a, const Matrix2& b) {
  LocalMatrix k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return k;
}
}  // namespace ops

EBasis::EBasis(std::vector<PauliQuartet> tensors) : tensors_(std::move(tensors)) {
  if (tensors_.empty()) throw ValidationError("EBasis: empty basis");
  CSpace check(tensors_);  // throws on dependence
  (void)check;
}

Eigen::Vector4cd EBasis::flattened(int a) const {
  const Matrix2 m = to_matrix(tensors_.at(static_cast<std::size_t>(a)));
  return Eigen::Vector4cd(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
}

CouplingMatrix::CouplingMatrix(Eigen::MatrixXcd lambda) : lambda_(std::move(lambda)) {
  if (lambda_.rows() != lambda_.cols() || lambda_.rows() == 0) {
    throw ValidationError("CouplingMatrix: must be square and non-empty");
  }
  require_hermitian_psd(lambda_, 1e-12, 1e-10, "CouplingMatrix");
}

LocalHamiltonian::LocalHamiltonian(const LocalMatrix& h, std::string provenance)
    : h_(h), provenance_(std::move(provenance)) {
  require_hermitian_psd(h_, 1e-12, 1e-10, "LocalHamiltonian");
}

std::string_view to_string(Family f) {
  static constexpr std::array<std::string_view, 9> names = {"F105", "F107", "F108", "F109", "F111",
                                                            "F112", "F116", "F117", "F59"};
  return names[static_cast<std::size_t>(f)];
}

Family family_from_string(std::string_view name) {
  for (Family f : kAllFamilies) {
    if (to_string(f) == name) return f;
  }
  throw ValidationError("unknown family '" + std::string(name) + "'");
}

FamilyUsage family_usage(Family f) {
  switch (f) {
    case Family::F105: return {.g = true, .nu = true};
    case Family::F107:
    case Family::F108: return {.g = true};
    case Family::F109:
    case Family::F111:
    case Family::F117: return {.g123 = true};
    case Family::F112:
    case Family::F116: return {.g123 = true, .nu = true};
    case Family::F59: return {.lambda3 = true};
  }
  return {};
}

void FamilyParams::validate() const {
  const FamilyUsage use = family_usage(family);
  const std::string name(to_string(family));
  if (use.g && !(std::isfinite(g) && g > 0.0)) throw ValidationError(name + ": g must be > 0");
  if (use.g123) {
    if (!(std::isfinite(g1) && g1 >= 0.0)) throw ValidationError(name + ": g1 must be >= 0");
    if (!(std::isfinite(g2) && g2 >= 0.0)) throw ValidationError(name + ": g2 must be >= 0");
    if (!(std::isfinite(g3.real()) && std::isfinite(g3.imag()))) throw ValidationError(name + ": g3 not finite");
    const double slack = 1e-12 * std::max(1.0, g1 * g2);
    if (g1 * g2 - std::norm(g3) < -slack) throw ValidationError(name + ": requires g1 g2 >= |g3|^2");
  }
  if (use.nu) {
    const bool finite = std::isfinite(nu.real()) && std::isfinite(nu.imag()) &&
                        std::isfinite(nu_prime.real()) && std::isfinite(nu_prime.imag());
    if (!finite) throw ValidationError(name + ": nu, nu' not finite");
    if (nu == Complex{} && nu_prime == Complex{}) throw ValidationError(name + ": nu and nu' both zero");
  }
  if (use.lambda3) {
    if (!lambda3) throw ValidationError(name + ": lambda3 is required");
    CouplingMatrix check{Eigen::MatrixXcd(*lambda3)};
    (void)check;
  }
}

LocalHamiltonian local_from_espace(const EBasis& e, const CouplingMatrix& lambda) {
  if (lambda.matrix().rows() != e.size()) throw ValidationError("local_from_espace: dimension mismatch");
  LocalMatrix h = LocalMatrix::Zero();
  for (int a = 0; a < e.size(); ++a) {
    const Eigen::Vector4cd ea = e.flattened(a).conjugate();
    for (int b = 0; b < e.size(); ++b) {
      h += lambda.matrix()(a, b) * ea * e.flattened(b).transpose();
    }
  }
  return LocalHamiltonian(h, "espace");
}

LocalHamiltonian build_family(const FamilyParams& p) {
  p.validate();
  const Matrix2 I = ops::id(), Z = ops::sigma3(), X = ops::sigma1();
  const Matrix2 sp = ops::sigma_plus(), sm = ops::sigma_minus();
  const LocalMatrix II = kron(I, I), ZZ = kron(Z, Z), ZI = kron(Z, I), IZ = kron(I, Z);
  const LocalMatrix pm = kron(sp, sm), mp = kron(sm, sp);

  const Complex nu = p.nu, nup = p.nu_prime;
  const Complex cnu = std::conj(nu), cnup = std::conj(nup);
  const double s = std::norm(nu) + std::norm(nup);
  const double d = std::norm(nup) - std::norm(nu);
  const Complex g3 = p.g3, cg3 = std::conj(p.g3);
  const double g1 = p.g1, g2 = p.g2;

  LocalMatrix h;
  switch (p.family) {
    case Family::F105:
      h = p.g * (s / 4.0 * (II - ZZ) + d / 4.0 * (ZI - IZ) - cnup * nu * pm - nup * cnu * mp);
      break;
    case Family::F107:
      h = p.g * kron(I + Z, I + Z);
      break;
    case Family::F108:
      h = p.g * (1.5 * II + IZ + ZI + 0.5 * ZZ + kron(I + Z, X) - kron(X, I + Z) - mp - pm);
      break;
    case Family::F109:
      h = (g1 + g2) / 4.0 * (II - ZZ) + (g1 - g2) / 4.0 * (ZI - IZ) + g3 * pm + cg3 * mp;
      break;
    case Family::F111: {
      const Matrix2 proj = (I + Z) / 2.0;
      const Matrix2 y = g3 * sp + cg3 * sm;
      h = (g1 + 2.0 * g2) / 4.0 * II + g1 / 4.0 * (ZI + IZ) + (g1 - 2.0 * g2) / 4.0 * ZZ - g2 * (pm + mp) +
          kron(proj, y) - kron(y, proj);
      break;
    }
    case Family::F112:
      // g1 multiplies sigma+sigma+ + sigma-sigma-: E^1 = e^0e^0 + e^1e^1 couples e0e0 with e1e1.
      h = (2.0 * g1 + g2 * s) / 4.0 * II + (2.0 * g1 - g2 * s) / 4.0 * ZZ + g1 * (kron(sp, sp) + kron(sm, sm)) -
          g2 * cnup * nu * pm - g2 * nup * cnu * mp + g2 * d / 4.0 * (ZI - IZ) +
          g3 / 2.0 *
              (kron(I, nup * sp - nu * sm) + kron(nup * sm - nu * sp, I) + kron(Z, nup * sp + nu * sm) -
               kron(nup * sm + nu * sp, Z)) +
          cg3 / 2.0 *
              (kron(I, cnup * sm - cnu * sp) + kron(cnup * sp - cnu * sm, I) + kron(Z, cnup * sm + cnu * sp) -
               kron(cnup * sp + cnu * sm, Z));
      break;
    case Family::F116:
      // g1 e0e0 projector: g1/4 (II + ZI + IZ + ZZ)
      h = (g1 + g2 * s) / 4.0 * II + (g1 - g2 * s) / 4.0 * ZZ + g1 / 4.0 * (ZI + IZ) -
          g2 * (cnup * nu * pm + nup * cnu * mp) + g2 * d / 4.0 * (ZI - IZ) +
          g3 / 2.0 * (nup * kron(I, sp) - nu * kron(sp, I) + nup * kron(Z, sp) - nu * kron(sp, Z)) +
          cg3 / 2.0 * (cnup * kron(I, sm) - cnu * kron(sm, I) + cnup * kron(Z, sm) - cnu * kron(sm, Z));
      break;
    case Family::F117: {
      const Matrix2 y = g3 * sp + cg3 * sm;
      h = (3.0 * g1 + g2) / 2.0 * II + (g1 - g2) / 2.0 * ZZ + (g1 - g2) * (pm + mp) +
          g1 * (kron(Z, X) + kron(X, Z)) + g1 * (kron(Z + X, I) + kron(I, Z + X)) + kron(Z, y) - kron(y, Z) +
          (cg3 - g3) * (pm - mp) + kron(I, y) - kron(y, I) + (g3 + cg3) / 2.0 * (ZI - IZ);
      break;
    }
    case Family::F59:
      h = LocalMatrix::Zero();
      h.topLeftCorner<3, 3>() = *p.lambda3;
      break;
  }
  return LocalHamiltonian(h, describe(p));
}

EBasis family_ebasis(const FamilyParams& p) {
  const auto q = [](Complex a, Complex b, Complex c, Complex d) { return quartet_from_matrix(two_by_two(a, b, c, d)); };
  switch (p.family) {
    case Family::F105: return EBasis({ratio_tensor(p.nu, p.nu_prime)});
    case Family::F107: return EBasis({q(2.0, 0.0, 0.0, 0.0)});
    case Family::F108: return EBasis({q(2.0, 1.0, -1.0, 0.0)});
    case Family::F109: return EBasis({q(0.0, 1.0, 0.0, 0.0), q(0.0, 0.0, 1.0, 0.0)});
    case Family::F111: return EBasis({q(1.0, 0.0, 0.0, 0.0), q(0.0, 1.0, -1.0, 0.0)});
    case Family::F112: return EBasis({q(1.0, 0.0, 0.0, 1.0), ratio_tensor(p.nu, p.nu_prime)});
    case Family::F116: return EBasis({q(1.0, 0.0, 0.0, 0.0), ratio_tensor(p.nu, p.nu_prime)});
    case Family::F117: return EBasis({q(2.0, 1.0, 1.0, 0.0), q(0.0, 1.0, -1.0, 0.0)});
    case Family::F59:
      return EBasis({q(1.0, 0.0, 0.0, 0.0), q(0.0, 1.0, 0.0, 0.0), q(0.0, 0.0, 1.0, 0.0)});
  }
  throw ValidationError("unknown family");
}

CouplingMatrix family_coupling(const FamilyParams& p) {
  p.validate();
  switch (p.family) {
    case Family::F105:
    case Family::F107:
    case Family::F108: return CouplingMatrix(Eigen::MatrixXcd::Constant(1, 1, p.g));
    case Family::F59: return CouplingMatrix(Eigen::MatrixXcd(*p.lambda3));
    default: return CouplingMatrix(pair_coupling(p));
  }
}

FullHamiltonian full_chain(const LocalHamiltonian& h, int n_sites, std::optional<int> n_max) {
  const int limit = n_max.value_or(max_sites());
  if (n_sites < 2 || n_sites > limit) {
    throw ValidationError("full_chain: n_sites=" + std::to_string(n_sites) + " outside [2, " +
                          std::to_string(limit) + "]");
  }
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const LocalMatrix& loc = h.matrix();
  for (int bond = 0; bond + 1 < n_sites; ++bond) {
    const Eigen::Index low = Eigen::Index{1} << (n_sites - 2 - bond);
    const Eigen::Index high = Eigen::Index{1} << bond;
    for (Eigen::Index hi = 0; hi < high; ++hi) {
      for (Eigen::Index lo = 0; lo < low; ++lo) {
        const Eigen::Index base = hi * 4 * low + lo;
        for (int c = 0; c < 4; ++c)
          for (int r = 0; r < 4; ++r) m(base + r * low, base + c * low) += loc(r, c);
      }
    }
  }
  return FullHamiltonian(n_sites, std::move(m));
}

Eigen::VectorXcd apply_chain(const LocalMatrix& h, const Eigen::VectorXcd& psi, int n_sites) {
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  if (n_sites < 2 || psi.size() != dim) throw ValidationError("apply_chain: dimension mismatch");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  for (int bond = 0; bond + 1 < n_sites; ++bond) {
    const Eigen::Index low = Eigen::Index{1} << (n_sites - 2 - bond);
    const Eigen::Index high = Eigen::Index{1} << bond;
    for (Eigen::Index hi = 0; hi < high; ++hi) {
      for (Eigen::Index lo = 0; lo < low; ++lo) {
        const Eigen::Index base = hi * 4 * low + lo;
        Eigen::Vector4cd x;
        for (int c = 0; c < 4; ++c) x(c) = psi(base + c * low);
        const Eigen::Vector4cd y = h * x;
        for (int r = 0; r < 4; ++r) out(base + r * low) += y(r);
      }
    }
  }
  return out;
}

LocalHamiltonian conjugate_local(const LocalHamiltonian& h, const SL2& g) {
  const LocalMatrix gg = kron(g.matrix(), g.matrix());
  const LocalMatrix out = gg.adjoint() * h.matrix() * gg;
  // Rounding in the product can leave an O(eps) anti-Hermitian part.
  return LocalHamiltonian((out + out.adjoint()) / 2.0, h.provenance() + " conjugated");
}

Eigen::MatrixXcd site_power(const Matrix2& g, int n_sites) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int i = 0; i < n_sites; ++i) {
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) next.block(a * out.rows(), b * out.cols(), out.rows(), out.cols()) = g(a, b) * out;
    out = std::move(next);
  }
  return out;
}

}  // namespace mpsgs
