#include "mpsgs/classifier.hpp"

#include <array>
#include <cmath>

#include "mpsgs/errors.hpp"

namespace mpsgs {

namespace {

using pauli::sigma;
using pauli::tau0;
using pauli::tau1;
using pauli::tau2;

const PauliQuartet kNull = tau0 + tau1;         // tau0 + tau1 = diag(2, 0)
const PauliQuartet kNullDual = tau1 - tau0;     // diag(0, -2); kNull . kNullDual = 2

Matrix2 symmetric_matrix(const Vector3& v) {
  Matrix2 s;
  s << v(0) + v(1), v(2), v(2), v(0) - v(1);
  return s;
}

bool is_null(const Vector3& v, double tol) { return std::abs(minkowski(v, v)) <= tol * v.squaredNorm(); }

// Gamma0 fixes tau0 and sigma, negates tau1 and tau2.
SL2 flip() {
  Matrix2 m;
  m << 0.0, 1.0, -1.0, 0.0;
  return SL2(m);
}

// Maps tau2 to tau1.
SL2 tau2_to_tau1() {
  Matrix2 m;
  m << 1.0, -1.0, 1.0, 1.0;
  return SL2(m / std::sqrt(2.0));
}

// Boost along (tau0, tau2): tau0 +- tau2 -> e^{+-2t}(tau0 +- tau2), tau1 fixed.
SL2 boost(Complex e_t) {
  const Complex c = (e_t + 1.0 / e_t) / 2.0;
  const Complex s = (e_t - 1.0 / e_t) / 2.0;
  Matrix2 m;
  m << c, s, s, c;
  return SL2::normalized(m);
}

Complex canonical_sign(Complex mu) {
  const double tol = 1e-12 * std::max(1.0, std::abs(mu));
  if (mu.real() < -tol || (std::abs(mu.real()) <= tol && mu.imag() < -tol)) return -mu;
  return mu;
}

// Raises the index with the (-, +, +) metric; cross products of eta-vectors
// give Minkowski-normal directions.
Vector3 eta(const Vector3& v) { return Vector3(-v(0), v(1), v(2)); }

// Bilinear cross product. Eigen's cross() conjugates for complex scalars,
// which would make the result Hermitian-orthogonal instead of bilinear-
// orthogonal.
Vector3 cross(const Vector3& a, const Vector3& b) {
  return Vector3(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0));
}

// Minkowski-normal direction of span{a, b}.
Vector3 minkowski_normal(const Vector3& a, const Vector3& b) { return cross(eta(a), eta(b)); }

struct Analysis {
  int dim = 0;
  int p = 0;
  bool sigma_in = false;
  std::vector<Vector3> vplus;  // orthonormal basis of V+
};

Analysis analyze(const CSpace& v, double rank_tol) {
  Analysis a;
  a.dim = v.dim();
  if (a.dim == 0) return a;
  const Eigen::MatrixXcd full = v.coefficient_matrix();
  const Eigen::MatrixXcd sym = full.leftCols(3);

  Eigen::JacobiSVD<Eigen::MatrixXcd> full_svd(full);
  const double scale = full_svd.singularValues()(0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sym, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double ratio = s(i) / scale;
    if (ratio >= 10.0 * rank_tol) {
      ++a.p;
    } else if (ratio >= rank_tol) {
      throw DegenerateInputError("classify: ambiguous dimension of the symmetric projection");
    }
  }
  if (a.dim - a.p > 1) throw DegenerateInputError("classify: symmetric projection lost more than one dimension");
  a.sigma_in = (a.dim - a.p) == 1;
  for (int j = 0; j < a.p; ++j) a.vplus.push_back(svd.matrixV().col(j).conjugate());
  return a;
}

// Symmetric coordinates and u of Op_g applied to each basis element of v.
std::vector<PauliQuartet> act_all(const SL2& g, const CSpace& v) {
  std::vector<PauliQuartet> out;
  for (const auto& q : v.basis()) out.push_back(sl2_act(g, q));
  return out;
}

Vector3 solve_w(const std::vector<PauliQuartet>& elems) {
  const auto k = static_cast<Eigen::Index>(elems.size());
  Eigen::MatrixXcd m(k, 3);
  Eigen::VectorXcd rhs(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    m.row(i) = eta(elems[i].v()).transpose();
    rhs(i) = elems[i].u;
  }
  const Vector3 w = m.completeOrthogonalDecomposition().solve(rhs);
  const double resid = (m * w - rhs).norm();
  if (resid > 1e-10 * std::max(1.0, rhs.norm())) {
    throw NumericalError("u = w . v is inconsistent (residual " + std::to_string(resid) + ")");
  }
  return w;
}

void require_symmetric_nonzero(const PauliQuartet& s, double tol, const char* who) {
  if (!s.is_finite()) throw ValidationError(std::string(who) + ": non-finite input");
  const double n = s.v().norm();
  if (n == 0.0) throw ValidationError(std::string(who) + ": zero input");
  if (std::abs(s.u) > tol * n) throw ValidationError(std::string(who) + ": input is not symmetric");
}

}  // namespace

bool case_has_modulus(CaseId id) {
  return id == CaseId::C50 || id == CaseId::C55 || id == CaseId::C57 || id == CaseId::C60;
}

std::string_view to_string(CaseId id) {
  static constexpr std::array<std::string_view, 15> names = {"C48", "C49", "C50", "C51", "C52",
                                                             "C53", "C54", "C55", "C56", "C57",
                                                             "C58", "C59", "C60", "C61", "C62"};
  return names[static_cast<std::size_t>(id)];
}

CaseId case_from_string(std::string_view name) {
  for (CaseId id : kAllCases) {
    if (to_string(id) == name) return id;
  }
  throw ValidationError("unknown case id '" + std::string(name) + "'");
}

CanonicalForm::CanonicalForm(CaseId id, std::optional<Complex> mu) : id_(id), mu_(mu) {
  if (case_has_modulus(id) && !mu) {
    throw ValidationError(std::string(to_string(id)) + " requires a modulus mu");
  }
  if (!case_has_modulus(id) && mu) {
    throw ValidationError(std::string(to_string(id)) + " takes no modulus");
  }
  if (mu && !(std::isfinite(mu->real()) && std::isfinite(mu->imag()))) {
    throw ValidationError("mu must be finite");
  }
}

CSpace canonical_space(const CanonicalForm& form) {
  const Complex mu = form.mu().value_or(Complex{});
  const PauliQuartet t2mu = tau2 + mu * sigma;
  switch (form.case_id()) {
    case CaseId::C48: return CSpace();
    case CaseId::C49: return CSpace({sigma});
    case CaseId::C50: return CSpace({t2mu});
    case CaseId::C51: return CSpace({tau2, sigma});
    case CaseId::C52: return CSpace({kNull});
    case CaseId::C53: return CSpace({kNull + sigma});
    case CaseId::C54: return CSpace({kNull, sigma});
    case CaseId::C55: return CSpace({tau0, t2mu});
    case CaseId::C56: return CSpace({tau0 + sigma, tau2 + sigma});
    case CaseId::C57: return CSpace({kNull, t2mu});
    case CaseId::C58: return CSpace({kNull + sigma, tau2});
    case CaseId::C59: return CSpace({kNull, tau2, sigma});
    case CaseId::C60: return CSpace({tau0, tau1, t2mu});
    case CaseId::C61: return CSpace({tau0 + sigma, tau1 + sigma, tau2});
    case CaseId::C62: return CSpace({tau0, tau1, tau2, sigma});
  }
  throw ValidationError("unknown case");
}

RankProfile symmetric_rank_profile(const CSpace& v) {
  const Analysis a = analyze(v, v.rank_tol());
  RankProfile out;
  out.dim_vplus = a.p;
  out.sigma_in_v = a.sigma_in;
  if (!a.sigma_in) {
    out.w = a.dim == 0 ? PauliQuartet{} : PauliQuartet::symmetric(solve_w(v.basis()));
  }
  return out;
}

SL2 normalize_null(const PauliQuartet& s, double tol) {
  require_symmetric_nonzero(s, tol, "normalize_null");
  if (!is_null(s.v(), tol)) throw ValidationError("normalize_null: input is not null");
  // s = x x^T for a null symmetric matrix.
  const Matrix2 m = symmetric_matrix(s.v());
  Complex x0, x1;
  if (std::abs(m(0, 0)) >= std::abs(m(1, 1))) {
    x0 = std::sqrt(m(0, 0));
    x1 = m(0, 1) / x0;
  } else {
    x1 = std::sqrt(m(1, 1));
    x0 = m(0, 1) / x1;
  }
  const double n = std::sqrt(std::norm(x0) + std::norm(x1));
  // Gamma^T x = (|x|, 0); rows of Gamma^T are orthonormal.
  Matrix2 gt;
  gt << std::conj(x0), std::conj(x1), -x1, x0;
  return SL2::normalized(gt.transpose() / n);
}

SL2 normalize_nonnull(const PauliQuartet& s, double tol) {
  require_symmetric_nonzero(s, tol, "normalize_nonnull");
  if (is_null(s.v(), tol)) throw ValidationError("normalize_nonnull: input is null");
  const Matrix2 m = symmetric_matrix(s.v());
  const double scale = m.cwiseAbs().maxCoeff();
  const Complex a = m(0, 0), b = m(0, 1), c = m(1, 1);
  if (std::abs(a) <= 1e-14 * scale && std::abs(c) <= 1e-14 * scale) return SL2::identity();

  // The two isotropic directions of x^T m x, as columns of Gamma.
  const Complex d = std::sqrt(b * b - a * c);
  const Complex q = std::abs(b + d) >= std::abs(b - d) ? -(b + d) : -(b - d);
  Eigen::Vector2cd n1, n2;
  if (std::abs(a) >= std::abs(c)) {
    // a t^2 + 2 b t + c = 0 with x = (t, 1)
    n1 << q / a, 1.0;
    n2 << c / q, 1.0;
  } else {
    // c t^2 + 2 b t + a = 0 with x = (1, t)
    n1 << 1.0, q / c;
    n2 << 1.0, a / q;
  }
  Matrix2 g;
  g.col(0) = n1.normalized();
  g.col(1) = n2.normalized();
  return SL2::normalized(g);
}

PauliQuartet normal_complement(const CSpace& vplus) {
  if (vplus.dim() != 2) throw ValidationError("normal_complement: expected a two-dimensional space");
  for (const auto& q : vplus.basis()) {
    if (std::abs(q.u) > 1e-10 * q.norm()) {
      throw ValidationError("normal_complement: space is not purely symmetric");
    }
  }
  const Vector3 w = minkowski_normal(vplus.basis()[0].v(), vplus.basis()[1].v());
  const double n = w.norm();
  if (n <= 1e-12) throw NumericalError("normal_complement: symmetric parts are dependent");
  return PauliQuartet::symmetric(w / n);
}

ClassificationResult classify(const CSpace& v, const ClassifierOptions& opts) {
  const Analysis a = analyze(v, opts.rank_tol);
  SL2 gamma = SL2::identity();
  std::optional<CanonicalForm> form;

  if (a.p == 0) {
    form = CanonicalForm(a.dim == 0 ? CaseId::C48 : CaseId::C49);
  } else if (a.p == 1) {
    const PauliQuartet s = PauliQuartet::symmetric(a.vplus[0]);
    const bool null = is_null(s.v(), opts.null_tol);
    if (a.sigma_in) {
      gamma = null ? normalize_null(s, opts.null_tol) : normalize_nonnull(s, opts.null_tol);
      form = CanonicalForm(null ? CaseId::C54 : CaseId::C51);
    } else {
      const PauliQuartet e = v.basis()[0];
      const double vn = e.v().norm();
      if (null) {
        gamma = normalize_null(PauliQuartet::symmetric(e.v()), opts.null_tol);
        const PauliQuartet img = sl2_act(gamma, e);  // lambda (tau0 + tau1) + u sigma
        if (std::abs(e.u) <= opts.zero_tol * vn) {
          form = CanonicalForm(CaseId::C52);
        } else {
          // diag(r, 1/r) scales tau0 + tau1 by r^2 and fixes sigma
          const Complex r = std::sqrt(img.u / img.v0);
          Matrix2 m;
          m << r, 0.0, 0.0, 1.0 / r;
          gamma = gamma * SL2::normalized(m);
          form = CanonicalForm(CaseId::C53);
        }
      } else {
        gamma = normalize_nonnull(PauliQuartet::symmetric(e.v()), opts.null_tol);
        const PauliQuartet img = sl2_act(gamma, e);  // lambda tau2 + u sigma
        Complex mu = img.u / img.v2;
        if (canonical_sign(mu) != mu) {
          gamma = gamma * flip();
          mu = -mu;
        }
        form = CanonicalForm(CaseId::C50, mu);
      }
    }
  } else if (a.p == 2) {
    const Vector3 normal = minkowski_normal(a.vplus[0], a.vplus[1]).normalized();
    if (is_null(normal, opts.null_tol)) {
      // V+ -> span{tau0 + tau1, tau2}
      gamma = normalize_null(PauliQuartet::symmetric(normal), opts.null_tol);
      if (a.sigma_in) {
        form = CanonicalForm(CaseId::C59);
      } else {
        const auto elems = act_all(gamma, v);
        // w = alpha (tau1 - tau0) + beta tau2 modulo tau0 + tau1
        Eigen::Matrix2cd m;
        Eigen::Vector2cd rhs;
        for (int i = 0; i < 2; ++i) {
          m(i, 0) = minkowski(elems[i].v(), kNullDual.v());  // = 2 x_i
          m(i, 1) = elems[i].v2;
          rhs(i) = elems[i].u;
        }
        const Eigen::Vector2cd sol = m.fullPivLu().solve(rhs);
        const Complex alpha = sol(0), beta = sol(1);
        if (std::abs(alpha) <= opts.zero_tol) {
          form = CanonicalForm(CaseId::C57, beta);
        } else {
          // [[p,0],[q,1/p]]: alpha -> alpha/p^2, beta -> beta - 2 alpha q/p
          const Complex p = std::sqrt(2.0 * alpha);
          const Complex q = beta * p / (2.0 * alpha);
          Matrix2 l;
          l << p, 0.0, q, 1.0 / p;
          gamma = gamma * SL2::normalized(l);
          form = CanonicalForm(CaseId::C58);
        }
      }
    } else {
      // V+ -> span{tau0, tau2}
      gamma = normalize_nonnull(PauliQuartet::symmetric(normal), opts.null_tol) * tau2_to_tau1();
      if (a.sigma_in) {
        throw ValidationError(
            "classify: V is equivalent to span{tau0, tau2, sigma}, which is not among the fifteen "
            "canonical forms");
      }
      const auto elems = act_all(gamma, v);
      Eigen::Matrix2cd m;
      Eigen::Vector2cd rhs;
      for (int i = 0; i < 2; ++i) {
        m(i, 0) = -elems[i].v0;
        m(i, 1) = elems[i].v2;
        rhs(i) = elems[i].u;
      }
      const Eigen::Vector2cd sol = m.fullPivLu().solve(rhs);
      const Complex w0 = sol(0), w2 = sol(1);  // w = w0 tau0 + w2 tau2
      const Complex plus = (w0 + w2) / 2.0;    // coefficient of tau0 + tau2
      const Complex minus = (w0 - w2) / 2.0;   // coefficient of tau0 - tau2
      const Vector3 w(w0, 0.0, w2);
      if (w.norm() <= opts.zero_tol) {
        form = CanonicalForm(CaseId::C55, Complex{});
      } else if (is_null(w, opts.null_tol)) {
        // target w = tau2 - tau0
        Complex coeff = minus;
        if (std::abs(minus) < std::abs(plus)) {
          gamma = gamma * flip();
          coeff = plus;
        }
        gamma = gamma * boost(std::sqrt(-coeff));
        form = CanonicalForm(CaseId::C56);
      } else {
        const Complex mu = canonical_sign(std::sqrt(w2 * w2 - w0 * w0));
        gamma = gamma * boost(std::sqrt(mu / (2.0 * plus)));
        form = CanonicalForm(CaseId::C55, mu);
      }
    }
  } else {
    if (a.sigma_in) {
      form = CanonicalForm(CaseId::C62);
    } else {
      const Vector3 w = solve_w(v.basis());
      if (w.norm() <= opts.zero_tol) {
        form = CanonicalForm(CaseId::C60, Complex{});
      } else if (is_null(w, opts.null_tol)) {
        // target w = tau1 - tau0 = diag(0, -2)
        gamma = normalize_null(PauliQuartet::symmetric(w), opts.null_tol);
        const Complex k = to_matrix(sl2_act(gamma, PauliQuartet::symmetric(w)))(0, 0);
        const Complex r = std::sqrt(-2.0 / k);
        Matrix2 m;
        m << 0.0, r, -1.0 / r, 0.0;
        gamma = gamma * SL2::normalized(m);
        form = CanonicalForm(CaseId::C61);
      } else {
        const Complex mu = canonical_sign(std::sqrt(minkowski(w, w)));
        gamma = normalize_nonnull(PauliQuartet::symmetric(w), opts.null_tol);
        const Complex lambda = sl2_act(gamma, PauliQuartet::symmetric(w)).v2;
        if (std::abs(lambda + mu) < std::abs(lambda - mu)) gamma = gamma * flip();
        form = CanonicalForm(CaseId::C60, mu);
      }
    }
  }

  CSpace canonical = canonical_space(*form);
  if (!span_equal(sl2_act_space(gamma, v), canonical, opts.certify_tol)) {
    throw NumericalError("classify: witness failed to certify for case " +
                         std::string(to_string(form->case_id())));
  }
  return ClassificationResult{*form, gamma, std::move(canonical)};
}

NullStructure InvariantSignature::structure() const {
  switch (dim_vplus) {
    case 0: return NullStructure::None;
    case 1: return gram_rank == 1 ? NullStructure::NonNull : NullStructure::Null;
    case 2: return gram_rank == 2 ? NullStructure::NonNull : NullStructure::Degenerate;
    default: return NullStructure::Full;
  }
}

std::string_view to_string(NullStructure s) {
  switch (s) {
    case NullStructure::None: return "none";
    case NullStructure::Null: return "null";
    case NullStructure::NonNull: return "nonnull";
    case NullStructure::Degenerate: return "degenerate";
    case NullStructure::Full: return "full";
  }
  return "unknown";
}

InvariantSignature invariant_signature(const CSpace& v, double rank_tol) {
  const Analysis a = analyze(v, rank_tol);
  InvariantSignature sig;
  sig.dim = a.dim;
  sig.dim_vplus = a.p;
  sig.sigma_in_v = a.sigma_in;
  if (a.p > 0) {
    Eigen::MatrixXcd gram(a.p, a.p);
    for (int i = 0; i < a.p; ++i)
      for (int j = 0; j < a.p; ++j) gram(i, j) = minkowski(a.vplus[i], a.vplus[j]);
    // The basis is orthonormal, so the Gram entries are O(1) and an absolute
    // threshold is appropriate.
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(gram);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
      if (svd.singularValues()(i) > 1e-8) ++sig.gram_rank;
    }
  }
  sig.gram_nullity = a.p - sig.gram_rank;
  return sig;
}

}  // namespace mpsgs
