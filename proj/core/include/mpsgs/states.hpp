#pragma once

// Catalogued zero-energy states as dense vectors over basis strings, matrix
// product contraction, transfer matrices and explicit (A0, A1) pairs for the
// canonical cases that admit them.
//
// Catalogued states are returned unnormalized so integer amplitudes stay
// exact; call StateVector::normalized() when a unit vector is needed.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mpsgs/classifier.hpp"
#include "mpsgs/pauli_space.hpp"

namespace mpsgs {

inline constexpr int kMaxStateSites = 24;

class BasisString {
 public:
  /// Throws ValidationError unless non-empty with every entry in {0, 1}.
  explicit BasisString(std::vector<int> alphas);
  /// "0101" -> (0, 1, 0, 1)
  static BasisString parse(const std::string& s);
  /// Site 1 is the most significant bit.
  static BasisString from_index(std::size_t index, int n_sites);

  int size() const { return static_cast<int>(alphas_.size()); }
  int operator[](int i) const { return alphas_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& alphas() const { return alphas_; }
  std::size_t index() const;
  std::string str() const;
  int count_zeros() const;

  friend bool operator==(const BasisString&, const BasisString&) = default;

 private:
  std::vector<int> alphas_;
};

class StateVector {
 public:
  /// amplitudes.size() must equal 2^n_sites; entries must be finite.
  StateVector(int n_sites, Eigen::VectorXcd amplitudes);

  int n_sites() const { return n_sites_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  double norm() const { return amps_.norm(); }
  /// 2-norm equal to 1 within 1e-12.
  bool is_normalized() const;
  /// Throws NumericalError for the zero vector.
  StateVector normalized() const;
  Complex amplitude(const BasisString& s) const { return amps_(static_cast<Eigen::Index>(s.index())); }

 private:
  int n_sites_;
  Eigen::VectorXcd amps_;
};

struct MPSSpec {
  Eigen::MatrixXcd a0;
  Eigen::MatrixXcd a1;

  /// Square, equal dimension D >= 1, finite.
  void validate() const;
  int bond_dim() const { return static_cast<int>(a0.rows()); }
};

StateVector product_state(int symbol, int n_sites);

/// ratio^(sum_l (i_l - l)) where i_l is the 1-based position of the l-th zero.
Complex zeta_weight(const BasisString& s, Complex ratio);

/// Smallest M in [1, max_order] with |ratio^M - 1| <= tol, if any.
std::optional<int> root_order(Complex ratio, int max_order = 64, double tol = 1e-12);

/// Sum of zeta_weight over strings with exactly k*m zeros. Requires m to be
/// the order of ratio, n % m == 0 and 0 <= k*m <= n.
StateVector psi_k(int n_sites, int m, int k, Complex ratio);

/// Strings with no two adjacent zeros, in lexicographic order.
std::vector<BasisString> hardcore_states(int n_sites);

/// sum_k (-1)^k zeta over strings with 2k zeros; n even, ratio = -1.
StateVector psi_prime(int n_sites, Complex ratio);

enum class ZeroParity { Odd, Even };

/// (-1)^k over strings with 2k+1 (odd) or 2k (even) zeros, no zeta factor.
/// The odd sum starts at k = 1 unless include_single_zero is set.
StateVector psi_parity(int n_sites, ZeroParity parity, bool include_single_zero = false);

struct Contraction {
  /// tr(A^a1 ... A^aN) for every string.
  Eigen::VectorXcd raw;
  /// tr(transfer^N); equals the squared norm of raw.
  double z = 0.0;
  bool zero_norm = false;
  int n_sites = 0;

  /// raw / sqrt(z), or raw itself when zero_norm.
  StateVector state() const;
};

/// zero_norm is set when z <= zero_tol * (|A0|_F^2 + |A1|_F^2)^N, the
/// scale of the rounding error in z.
Contraction mps_contract(const MPSSpec& spec, int n_sites, double zero_tol = 1e-12);

/// conj(A0) (x) A0 + conj(A1) (x) A1
Eigen::MatrixXcd transfer_matrix(const MPSSpec& spec);

/// tr(transfer_matrix(spec)^n_sites), real part.
double transfer_norm(const MPSSpec& spec, int n_sites);

/// Explicit ratio nu'/nu selecting the branch nu' A0 A1 = nu A1 A0.
struct RatioParams {
  Complex nu;
  Complex nu_prime;
};

/// Constraint space actually imposed on (A0, A1). Without params this is
/// canonical_space(form); with params the C50/C55/C57 tensor
/// tau2 + mu sigma is replaced by nu' e^0e^1 - nu e^1e^0.
CSpace constraint_space(const CanonicalForm& form, const std::optional<RatioParams>& params = std::nullopt);

/// Fixed constructive (A0, A1) pair of size `bond_dim` satisfying
/// constraint_space(form, params). Throws ValidationError for C56, C60, C61,
/// C62 and for C55 unless the ratio is +-1.
MPSSpec representation_for_case(const CanonicalForm& form, int bond_dim,
                                const std::optional<RatioParams>& params = std::nullopt);

/// max over basis tensors C of |C_ab A^a A^b|_F / max(1, |A0|_F |A1|_F).
double constraint_residual(const CSpace& v, const MPSSpec& spec);

/// Applies Gamma^{-1} on every site.
StateVector transform_state(const StateVector& psi, const SL2& g);

}  // namespace mpsgs
