#pragma once

// Dense exact diagonalization and zero-energy checks for chain Hamiltonians.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mpsgs/classifier.hpp"
#include "mpsgs/hamiltonian.hpp"
#include "mpsgs/states.hpp"

namespace mpsgs {

struct SpectrumOptions {
  /// Number of lowest eigenvalues to report.
  int k = 16;
  /// Kernel threshold relative to max(1, spectral norm).
  double kernel_tol = 1e-9;
  /// Eigenvalues within this factor of the threshold (either side) make the
  /// kernel count ambiguous.
  double gap_factor = 1e3;
};

struct SpectrumReport {
  int n_sites = 0;
  double ground_energy = 0.0;
  int kernel_dim = 0;
  /// Ascending.
  std::vector<double> lowest;
  std::map<std::string, double> residuals;
  std::optional<std::string> warning;
};

/// Throws NumericalError if the eigensolver fails.
SpectrumReport spectrum(const FullHamiltonian& h, const SpectrumOptions& opts = {});

/// |H psi| / (|psi| max(1, |H|_F)). Throws ValidationError on a dimension
/// mismatch or a zero vector.
double check_zero_member(const FullHamiltonian& h, const StateVector& psi);

/// check_zero_member of transform_state(psi, g) against
/// full_chain(conjugate_local(h, g), n_sites).
double covariance_check(const LocalHamiltonian& h, const StateVector& psi, const SL2& g, int n_sites);

/// Informational spectrum for the cases without a matrix product ground
/// state. The local term is local_from_espace over the canonical basis with
/// coupling `lambda` (identity when absent). Requires n_sites <= 10.
SpectrumReport no_mps_case_report(const CanonicalForm& form, int n_sites,
                                  const std::optional<Eigen::MatrixXcd>& lambda = std::nullopt,
                                  const SpectrumOptions& opts = {});

struct LabeledState {
  std::string label;
  StateVector state;
};

struct CatalogOptions {
  /// Start the odd-parity sum at k = 0 instead of the literal k = 1.
  bool odd_from_zero = false;
};

/// Every state the family is claimed to annihilate at this chain length and
/// these parameters, unnormalized.
std::vector<LabeledState> catalogued_states(const FamilyParams& p, int n_sites, const CatalogOptions& opts = {});

struct ClaimCheck {
  std::string label;
  /// Empty when the state is the zero vector.
  std::optional<double> residual;
  bool pass = false;
};

struct VerifyReport {
  SpectrumReport spectrum;
  std::vector<ClaimCheck> claims;
  /// Rank (tolerance 1e-8) of the catalogued states that passed.
  int independent_states = 0;

  bool kernel_covers_states() const { return spectrum.kernel_dim >= independent_states; }
  bool all_pass() const;
};

VerifyReport verify_family(const FamilyParams& p, int n_sites, double tol = 1e-9, const SpectrumOptions& opts = {},
                           const CatalogOptions& catalog = {});

/// Numerical rank of the stacked (normalized) states.
int state_rank(const std::vector<StateVector>& states, double tol = 1e-8);

}  // namespace mpsgs
