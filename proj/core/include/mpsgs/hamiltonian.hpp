#pragma once

// Two-site Hamiltonians h = Lambda_ab E^a^dagger E^b, the closed-form
// families with matrix product ground states, and the open-chain sum
// H = sum_i id^(i-1) (x) h (x) id^(N-i-1).
//
// Site ordering: site 1 is the leftmost tensor factor and the most
// significant bit of a computational basis index; the two-site basis is
// {e0e0, e0e1, e1e0, e1e1}.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mpsgs/pauli_space.hpp"

namespace mpsgs {

using LocalMatrix = Eigen::Matrix4cd;

inline constexpr int kDefaultMaxSites = 14;

/// Hamiltonian size guard: MPS_MAX_SITES when set to a positive integer,
/// otherwise kDefaultMaxSites.
int max_sites();

namespace ops {
Matrix2 id();
Matrix2 sigma1();
Matrix2 sigma3();
/// e0 e^1
Matrix2 sigma_plus();
/// e1 e^0
Matrix2 sigma_minus();
LocalMatrix kron(const Matrix2& a, const Matrix2& b);
}  // namespace ops

/// Linearly independent rank-2 tensors E^a; E^a_{ab} is the (a, b) entry of
/// to_matrix(tensor).
class EBasis {
 public:
  explicit EBasis(std::vector<PauliQuartet> tensors);

  int size() const { return static_cast<int>(tensors_.size()); }
  const std::vector<PauliQuartet>& tensors() const { return tensors_; }
  /// E^a as a covector on the two-site basis.
  Eigen::Vector4cd flattened(int a) const;

 private:
  std::vector<PauliQuartet> tensors_;
};

/// Hermitian positive semi-definite coupling matrix.
class CouplingMatrix {
 public:
  explicit CouplingMatrix(Eigen::MatrixXcd lambda);
  const Eigen::MatrixXcd& matrix() const { return lambda_; }

 private:
  Eigen::MatrixXcd lambda_;
};

class LocalHamiltonian {
 public:
  /// Throws ValidationError unless h is Hermitian (1e-12 relative) and PSD
  /// (smallest eigenvalue >= -1e-10 relative).
  LocalHamiltonian(const LocalMatrix& h, std::string provenance);

  const LocalMatrix& matrix() const { return h_; }
  const std::string& provenance() const { return provenance_; }

 private:
  LocalMatrix h_;
  std::string provenance_;
};

enum class Family { F105, F107, F108, F109, F111, F112, F116, F117, F59 };

inline constexpr Family kAllFamilies[] = {Family::F105, Family::F107, Family::F108,
                                          Family::F109, Family::F111, Family::F112,
                                          Family::F116, Family::F117, Family::F59};

std::string_view to_string(Family f);
Family family_from_string(std::string_view name);

/// Which of the scalar parameters a family reads.
struct FamilyUsage {
  bool g = false;
  bool g123 = false;
  bool nu = false;
  bool lambda3 = false;
};
FamilyUsage family_usage(Family f);

struct FamilyParams {
  Family family = Family::F105;
  double g = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  Complex g3{};
  Complex nu{};
  Complex nu_prime{};
  std::optional<Eigen::Matrix3cd> lambda3;

  /// g > 0; g1, g2 >= 0 with g1 g2 >= |g3|^2; (nu, nu') not both zero;
  /// lambda3 Hermitian PSD. Only the parameters the family uses are checked.
  void validate() const;
};

LocalHamiltonian local_from_espace(const EBasis& e, const CouplingMatrix& lambda);

/// Closed-form Pauli expansion of the family's local Hamiltonian.
LocalHamiltonian build_family(const FamilyParams& p);

/// The E-basis and coupling matrix whose local_from_espace reproduces
/// build_family(p).
EBasis family_ebasis(const FamilyParams& p);
CouplingMatrix family_coupling(const FamilyParams& p);

class FullHamiltonian {
 public:
  FullHamiltonian(int n_sites, Eigen::MatrixXcd matrix) : n_sites_(n_sites), matrix_(std::move(matrix)) {}
  int n_sites() const { return n_sites_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

 private:
  int n_sites_;
  Eigen::MatrixXcd matrix_;
};

/// Dense open-chain Hamiltonian; requires 2 <= n_sites <= n_max
/// (n_max defaults to max_sites()).
FullHamiltonian full_chain(const LocalHamiltonian& h, int n_sites, std::optional<int> n_max = std::nullopt);

/// H psi without forming H.
Eigen::VectorXcd apply_chain(const LocalMatrix& h, const Eigen::VectorXcd& psi, int n_sites);

/// (Gamma^dagger (x) Gamma^dagger) h (Gamma (x) Gamma).
LocalHamiltonian conjugate_local(const LocalHamiltonian& h, const SL2& g);

/// g (x) g (x) ... (x) g, n_sites factors.
Eigen::MatrixXcd site_power(const Matrix2& g, int n_sites);

}  // namespace mpsgs
