#pragma once

// Reduction of a constraint space V to one of the fifteen SL(2,C)-inequivalent
// canonical forms C48..C62, together with a witness Gamma such that
// Op_Gamma V is the canonical space.

#include <optional>
#include <string>
#include <string_view>

#include "mpsgs/pauli_space.hpp"

namespace mpsgs {

enum class CaseId { C48, C49, C50, C51, C52, C53, C54, C55, C56, C57, C58, C59, C60, C61, C62 };

inline constexpr CaseId kAllCases[] = {CaseId::C48, CaseId::C49, CaseId::C50, CaseId::C51, CaseId::C52,
                                       CaseId::C53, CaseId::C54, CaseId::C55, CaseId::C56, CaseId::C57,
                                       CaseId::C58, CaseId::C59, CaseId::C60, CaseId::C61, CaseId::C62};

/// True for the cases written with "tau2 + mu sigma".
bool case_has_modulus(CaseId id);
std::string_view to_string(CaseId id);
/// Accepts "C48".."C62"; throws ValidationError otherwise.
CaseId case_from_string(std::string_view name);

class CanonicalForm {
 public:
  /// Throws ValidationError if mu is missing for a modulus case or supplied
  /// for a case without one.
  CanonicalForm(CaseId id, std::optional<Complex> mu = std::nullopt);

  CaseId case_id() const { return id_; }
  const std::optional<Complex>& mu() const { return mu_; }

 private:
  CaseId id_;
  std::optional<Complex> mu_;
};

/// The literal basis of the canonical space, e.g. C51 -> {tau2, sigma}.
CSpace canonical_space(const CanonicalForm& form);

struct RankProfile {
  int dim_vplus = 0;
  bool sigma_in_v = false;
  /// Minimum-norm solution of u = w . v over the basis of V when sigma is not
  /// in V; empty when u is arbitrary.
  std::optional<PauliQuartet> w;
};

RankProfile symmetric_rank_profile(const CSpace& v);

/// For a nonzero null symmetric s, a unitary Gamma with Op_Gamma s a nonzero
/// multiple of tau0 + tau1.
SL2 normalize_null(const PauliQuartet& s, double tol = 1e-8);

/// For a non-null symmetric s, Gamma with Op_Gamma s a multiple of tau2.
SL2 normalize_nonnull(const PauliQuartet& s, double tol = 1e-8);

/// Minkowski-normal direction of a two-dimensional symmetric space.
PauliQuartet normal_complement(const CSpace& vplus);

struct ClassifierOptions {
  double rank_tol = kDefaultRankTol;
  /// Relative threshold below which a Minkowski square counts as null.
  double null_tol = 1e-8;
  /// Threshold below which a (dimensionless) w coefficient counts as zero.
  double zero_tol = 1e-8;
  /// span_equal tolerance used to certify the witness.
  double certify_tol = 1e-8;
};

struct ClassificationResult {
  CanonicalForm form;
  SL2 gamma;
  CSpace canonical;
};

/// Throws ValidationError for span{tau0, tau2, sigma}-type inputs (an orbit
/// the fifteen forms do not cover) and NumericalError if the witness fails
/// to certify.
ClassificationResult classify(const CSpace& v, const ClassifierOptions& opts = {});

enum class NullStructure { None, Null, NonNull, Degenerate, Full };

/// Orbit invariants computed without normalizing: dim V, dim V+, rank and
/// nullity of the Minkowski Gram matrix on V+, and sigma membership.
struct InvariantSignature {
  int dim = 0;
  int dim_vplus = 0;
  int gram_rank = 0;
  int gram_nullity = 0;
  bool sigma_in_v = false;

  /// dim V+ = 1: Null/NonNull; dim V+ = 2: Degenerate (null normal) or
  /// NonNull; dim V+ = 3: Full; dim V+ = 0: None.
  NullStructure structure() const;
  friend bool operator==(const InvariantSignature&, const InvariantSignature&) = default;
};

std::string_view to_string(NullStructure s);

InvariantSignature invariant_signature(const CSpace& v, double rank_tol = kDefaultRankTol);

}  // namespace mpsgs
