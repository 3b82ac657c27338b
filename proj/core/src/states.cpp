#include "mpsgs/states.hpp"

#include <bit>
#include <cmath>

#include "mpsgs/errors.hpp"

namespace mpsgs {

namespace {

void require_sites(int n_sites, const char* what) {
  if (n_sites < 1 || n_sites > kMaxStateSites) {
    throw ValidationError(std::string(what) + ": n_sites=" + std::to_string(n_sites) + " outside [1, " +
                          std::to_string(kMaxStateSites) + "]");
  }
}

Eigen::Index dimension(int n_sites) { return Eigen::Index{1} << n_sites; }

// Exact for unit roots such as -1 and i, unlike std::pow(complex, int).
Complex int_power(Complex z, long e) {
  if (e < 0) return int_power(1.0 / z, -e);
  Complex out{1.0, 0.0};
  while (e > 0) {
    if (e & 1) out *= z;
    z *= z;
    e >>= 1;
  }
  return out;
}

int zeros_of_index(std::size_t idx, int n_sites) { return n_sites - std::popcount(idx); }

// Exponent sum_l (i_l - l) read directly off the bits, site 1 = MSB.
long zeta_exponent(std::size_t idx, int n_sites) {
  long e = 0;
  long seen = 0;
  for (int pos = 1; pos <= n_sites; ++pos) {
    const bool one = (idx >> (n_sites - pos)) & 1U;
    if (!one) {
      ++seen;
      e += pos - seen;
    }
  }
  return e;
}

Eigen::MatrixXcd unit(int d, int r, int c) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  m(r, c) = 1.0;
  return m;
}

Eigen::MatrixXcd ramp(int d, int offset) {
  Eigen::VectorXcd diag(d);
  for (int i = 0; i < d; ++i) diag(i) = static_cast<double>((i + offset) % d + 1);
  return diag.asDiagonal();
}

MPSSpec spec_of(Eigen::MatrixXcd a0, Eigen::MatrixXcd a1) { return MPSSpec{std::move(a0), std::move(a1)}; }

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

RatioParams ratio_from_mu(Complex mu) { return {mu - 1.0, mu + 1.0}; }

PauliQuartet ratio_tensor(const RatioParams& r) {
  Matrix2 m;
  m << 0.0, r.nu_prime, -r.nu, 0.0;
  return quartet_from_matrix(m);
}

bool near(Complex a, Complex b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

// nu' A0 A1 = nu A1 A0 with a clock-shift pair when nu/nu' is a root of unity,
// otherwise the (A0, 0) solution.
MPSSpec commutation_pair(const RatioParams& r, int d) {
  if (r.nu_prime == Complex{} || r.nu == Complex{}) return spec_of(ramp(d, 0), Eigen::MatrixXcd::Zero(d, d));
  const Complex q = r.nu / r.nu_prime;
  const auto m = root_order(q);
  if (!m) return spec_of(ramp(d, 0), Eigen::MatrixXcd::Zero(d, d));
  if (*m == 1) return spec_of(ramp(d, 0), ramp(d, 1));
  if (d % *m != 0) {
    throw ValidationError("representation: bond_dim " + std::to_string(d) + " is not a multiple of the root order " +
                          std::to_string(*m));
  }
  // U V = q V U with U = diag(q^j), V e_j = e_{j+1}.
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(*m, *m);
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(*m, *m);
  for (int j = 0; j < *m; ++j) {
    u(j, j) = int_power(q, j);
    v((j + 1) % *m, j) = 1.0;
  }
  const int copies = d / *m;
  return spec_of(kron(ramp(copies, 0), u), kron(Eigen::MatrixXcd::Identity(copies, copies), v));
}

// prefix[depth] is the ordered product of the first `depth` matrices of the
// string whose leading bits are `idx`.
void contract_prefixes(const MPSSpec& spec, int n_sites, int depth, std::size_t idx,
                       std::vector<Eigen::MatrixXcd>& prefix, Eigen::VectorXcd& raw) {
  const auto here = static_cast<std::size_t>(depth);
  for (int bit = 0; bit < 2; ++bit) {
    const std::size_t next = (idx << 1) | static_cast<std::size_t>(bit);
    prefix[here + 1].noalias() = prefix[here] * (bit == 0 ? spec.a0 : spec.a1);
    if (depth + 1 == n_sites) {
      raw(static_cast<Eigen::Index>(next)) = prefix[here + 1].trace();
    } else {
      contract_prefixes(spec, n_sites, depth + 1, next, prefix, raw);
    }
  }
}

}  // namespace

BasisString::BasisString(std::vector<int> alphas) : alphas_(std::move(alphas)) {
  if (alphas_.empty()) throw ValidationError("BasisString: empty");
  for (int a : alphas_) {
    if (a != 0 && a != 1) throw ValidationError("BasisString: entries must be 0 or 1");
  }
}

BasisString BasisString::parse(const std::string& s) {
  std::vector<int> a;
  a.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw ValidationError("BasisString: invalid character in '" + s + "'");
    a.push_back(c - '0');
  }
  return BasisString(std::move(a));
}

BasisString BasisString::from_index(std::size_t index, int n_sites) {
  if (n_sites < 1 || n_sites > 62 || (index >> n_sites) != 0) throw ValidationError("BasisString: index out of range");
  std::vector<int> a(static_cast<std::size_t>(n_sites));
  for (int i = 0; i < n_sites; ++i) a[static_cast<std::size_t>(i)] = static_cast<int>((index >> (n_sites - 1 - i)) & 1U);
  return BasisString(std::move(a));
}

std::size_t BasisString::index() const {
  std::size_t idx = 0;
  for (int a : alphas_) idx = (idx << 1) | static_cast<std::size_t>(a);
  return idx;
}

std::string BasisString::str() const {
  std::string s;
  for (int a : alphas_) s.push_back(static_cast<char>('0' + a));
  return s;
}

int BasisString::count_zeros() const {
  int z = 0;
  for (int a : alphas_) z += a == 0;
  return z;
}

StateVector::StateVector(int n_sites, Eigen::VectorXcd amplitudes) : n_sites_(n_sites), amps_(std::move(amplitudes)) {
  require_sites(n_sites, "StateVector");
  if (amps_.size() != dimension(n_sites)) throw ValidationError("StateVector: length must be 2^n_sites");
  if (!amps_.allFinite()) throw ValidationError("StateVector: non-finite amplitude");
}

bool StateVector::is_normalized() const { return std::abs(norm() - 1.0) <= 1e-12; }

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw NumericalError("cannot normalize the zero vector");
  return StateVector(n_sites_, amps_ / n);
}

void MPSSpec::validate() const {
  if (a0.rows() < 1 || a0.rows() != a0.cols() || a1.rows() != a1.cols() || a0.rows() != a1.rows()) {
    throw ValidationError("MPSSpec: A0 and A1 must be square with equal dimension >= 1");
  }
  if (!a0.allFinite() || !a1.allFinite()) throw ValidationError("MPSSpec: non-finite entries");
}

StateVector product_state(int symbol, int n_sites) {
  require_sites(n_sites, "product_state");
  if (symbol != 0 && symbol != 1) throw ValidationError("product_state: symbol must be 0 or 1");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dimension(n_sites));
  v(symbol == 0 ? 0 : dimension(n_sites) - 1) = 1.0;
  return StateVector(n_sites, std::move(v));
}

Complex zeta_weight(const BasisString& s, Complex ratio) {
  if (ratio == Complex{}) throw ValidationError("zeta_weight: ratio must be nonzero");
  return int_power(ratio, zeta_exponent(s.index(), s.size()));
}

std::optional<int> root_order(Complex ratio, int max_order, double tol) {
  if (!(std::abs(std::abs(ratio) - 1.0) <= 1e-9)) return std::nullopt;
  Complex p = ratio;
  for (int m = 1; m <= max_order; ++m) {
    if (std::abs(p - 1.0) <= tol) return m;
    p *= ratio;
  }
  return std::nullopt;
}

StateVector psi_k(int n_sites, int m, int k, Complex ratio) {
  require_sites(n_sites, "psi_k");
  const auto order = root_order(ratio);
  if (!order || *order != m) {
    throw ValidationError("psi_k: m=" + std::to_string(m) + " is not the smallest M with ratio^M = 1");
  }
  if (n_sites % m != 0) throw ValidationError("psi_k: n_sites must be a multiple of m");
  if (k < 0 || k * m > n_sites) throw ValidationError("psi_k: requires 0 <= k*m <= n_sites");
  const int zeros = k * m;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dimension(n_sites));
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(v.size()); ++idx) {
    if (zeros_of_index(idx, n_sites) == zeros) v(static_cast<Eigen::Index>(idx)) = int_power(ratio, zeta_exponent(idx, n_sites));
  }
  return StateVector(n_sites, std::move(v));
}

std::vector<BasisString> hardcore_states(int n_sites) {
  require_sites(n_sites, "hardcore_states");
  std::vector<BasisString> out;
  const std::size_t dim = std::size_t{1} << n_sites;
  const std::size_t mask = dim - 1;
  for (std::size_t idx = 0; idx < dim; ++idx) {
    const std::size_t zeros = ~idx & mask;
    if ((zeros & (zeros >> 1)) == 0) out.push_back(BasisString::from_index(idx, n_sites));
  }
  return out;
}

StateVector psi_prime(int n_sites, Complex ratio) {
  require_sites(n_sites, "psi_prime");
  if (n_sites % 2 != 0) throw ValidationError("psi_prime: n_sites must be even");
  if (!near(ratio, -1.0)) throw ValidationError("psi_prime: requires nu'/nu = -1");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dimension(n_sites));
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(v.size()); ++idx) {
    const int z = zeros_of_index(idx, n_sites);
    if (z % 2 != 0) continue;
    const double sign = (z / 2) % 2 == 0 ? 1.0 : -1.0;
    v(static_cast<Eigen::Index>(idx)) = sign * int_power(ratio, zeta_exponent(idx, n_sites));
  }
  return StateVector(n_sites, std::move(v));
}

StateVector psi_parity(int n_sites, ZeroParity parity, bool include_single_zero) {
  require_sites(n_sites, "psi_parity");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dimension(n_sites));
  const int offset = parity == ZeroParity::Odd ? 1 : 0;
  const int k_min = parity == ZeroParity::Odd && !include_single_zero ? 1 : 0;
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(v.size()); ++idx) {
    const int z = zeros_of_index(idx, n_sites);
    if ((z - offset) % 2 != 0 || z < offset) continue;
    const int k = (z - offset) / 2;
    if (k < k_min) continue;
    v(static_cast<Eigen::Index>(idx)) = k % 2 == 0 ? 1.0 : -1.0;
  }
  return StateVector(n_sites, std::move(v));
}

StateVector Contraction::state() const {
  if (zero_norm) return StateVector(n_sites, raw);
  return StateVector(n_sites, raw / std::sqrt(z));
}

Contraction mps_contract(const MPSSpec& spec, int n_sites, double zero_tol) {
  spec.validate();
  require_sites(n_sites, "mps_contract");
  const Eigen::Index d = spec.bond_dim();
  if (static_cast<double>(d) * d * static_cast<double>(dimension(n_sites)) > 4e9) {
    throw ValidationError("mps_contract: D^2 2^N exceeds the work budget");
  }
  Contraction out;
  out.n_sites = n_sites;
  out.raw = Eigen::VectorXcd::Zero(dimension(n_sites));

  std::vector<Eigen::MatrixXcd> prefix(static_cast<std::size_t>(n_sites) + 1);
  prefix[0] = Eigen::MatrixXcd::Identity(d, d);
  contract_prefixes(spec, n_sites, 0, 0, prefix, out.raw);

  out.z = transfer_norm(spec, n_sites);
  const double scale = std::pow(spec.a0.squaredNorm() + spec.a1.squaredNorm(), n_sites);
  out.zero_norm = !(out.z > zero_tol * scale);
  return out;
}

Eigen::MatrixXcd transfer_matrix(const MPSSpec& spec) {
  spec.validate();
  return kron(spec.a0.conjugate(), spec.a0) + kron(spec.a1.conjugate(), spec.a1);
}

double transfer_norm(const MPSSpec& spec, int n_sites) {
  if (n_sites < 1) throw ValidationError("transfer_norm: n_sites must be >= 1");
  const Eigen::MatrixXcd t = transfer_matrix(spec);
  Eigen::MatrixXcd p = t;
  for (int i = 1; i < n_sites; ++i) p = p * t;
  return p.trace().real();
}

CSpace constraint_space(const CanonicalForm& form, const std::optional<RatioParams>& params) {
  if (!params) return canonical_space(form);
  const PauliQuartet r = ratio_tensor(*params);
  switch (form.case_id()) {
    case CaseId::C50: return CSpace({r});
    case CaseId::C55: return CSpace({pauli::tau0, r});
    case CaseId::C57: return CSpace({pauli::tau0 + pauli::tau1, r});
    default: throw ValidationError("constraint_space: ratio params apply only to C50, C55, C57");
  }
}

MPSSpec representation_for_case(const CanonicalForm& form, int bond_dim, const std::optional<RatioParams>& params) {
  if (bond_dim < 1) throw ValidationError("representation: bond_dim must be >= 1");
  const int d = bond_dim;
  const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(d, d);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  if (params && form.case_id() != CaseId::C50 && form.case_id() != CaseId::C55 && form.case_id() != CaseId::C57) {
    throw ValidationError("representation: ratio params apply only to C50, C55, C57");
  }
  const RatioParams ratio = params.value_or(ratio_from_mu(form.mu().value_or(Complex{})));

  switch (form.case_id()) {
    case CaseId::C48:
    case CaseId::C49:
      return spec_of(ramp(d, 0), ramp(d, 1));
    case CaseId::C50:
      return commutation_pair(ratio, d);
    case CaseId::C51: {
      if (d == 1) return spec_of(id, zero);
      Eigen::MatrixXcd a0 = zero, a1 = zero;
      for (int i = 0; i < d; ++i) (i % 2 == 0 ? a0 : a1)(i, i) = static_cast<double>(i / 2 + 1);
      return spec_of(a0, a1);
    }
    case CaseId::C52:
      if (d == 1) return spec_of(zero, id);
      return spec_of(unit(d, 0, 1), id + unit(d, 1, 0));
    case CaseId::C53:
    case CaseId::C54:
      if (d == 1) return spec_of(zero, id);
      return spec_of(unit(d, 0, 1), id + unit(d, 0, 1));
    case CaseId::C55: {
      if (ratio.nu == Complex{}) throw ValidationError("representation: C55 requires nu != 0");
      const Complex r = ratio.nu_prime / ratio.nu;
      if (near(r, 1.0)) return spec_of(ramp(d, 0), Complex(0.0, 1.0) * ramp(d, 0));
      if (near(r, -1.0)) {
        if (d % 2 != 0) throw ValidationError("representation: C55 anticommuting pair needs even bond_dim");
        Matrix2 s3, s1;
        s3 << 1.0, 0.0, 0.0, -1.0;
        s1 << 0.0, 1.0, 1.0, 0.0;
        const Eigen::MatrixXcd scale = ramp(d / 2, 0);
        return spec_of(kron(scale, s3), kron(scale, Complex(0.0, 1.0) * Eigen::MatrixXcd(s1)));
      }
      throw ValidationError("representation: C55 admits a nonzero pair only for nu'/nu = +-1");
    }
    case CaseId::C57: {
      if (d == 1) return spec_of(zero, id);
      Eigen::MatrixXcd a1 = zero;
      a1(0, 0) = ratio.nu_prime;
      a1(1, 1) = ratio.nu;
      return spec_of(unit(d, 0, 1), a1);
    }
    case CaseId::C58:
    case CaseId::C59:
      return spec_of(zero, id);
    case CaseId::C56:
    case CaseId::C60:
    case CaseId::C61:
    case CaseId::C62:
      break;
  }
  throw ValidationError("representation: case " + std::string(to_string(form.case_id())) +
                        " has no nonzero matrix product representation");
}

double constraint_residual(const CSpace& v, const MPSSpec& spec) {
  spec.validate();
  const Eigen::MatrixXcd p00 = spec.a0 * spec.a0, p01 = spec.a0 * spec.a1;
  const Eigen::MatrixXcd p10 = spec.a1 * spec.a0, p11 = spec.a1 * spec.a1;
  const double scale = std::max(1.0, spec.a0.norm() * spec.a1.norm());
  double worst = 0.0;
  for (const auto& q : v.basis()) {
    const Matrix2 c = to_matrix(q);
    const Eigen::MatrixXcd r = c(0, 0) * p00 + c(0, 1) * p01 + c(1, 0) * p10 + c(1, 1) * p11;
    worst = std::max(worst, r.norm() / scale);
  }
  return worst;
}

StateVector transform_state(const StateVector& psi, const SL2& g) {
  const Matrix2 inv = g.inverse().matrix();
  const int n = psi.n_sites();
  Eigen::VectorXcd v = psi.amplitudes();
  for (int site = 0; site < n; ++site) {
    const Eigen::Index stride = Eigen::Index{1} << (n - 1 - site);
    for (Eigen::Index base = 0; base < v.size(); base += 2 * stride) {
      for (Eigen::Index off = 0; off < stride; ++off) {
        const Complex x0 = v(base + off), x1 = v(base + off + stride);
        v(base + off) = inv(0, 0) * x0 + inv(0, 1) * x1;
        v(base + off + stride) = inv(1, 0) * x0 + inv(1, 1) * x1;
      }
    }
  }
  return StateVector(n, std::move(v));
}

}  // namespace mpsgs
