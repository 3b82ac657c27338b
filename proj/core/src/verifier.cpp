#include "mpsgs/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mpsgs/errors.hpp"

namespace mpsgs {

namespace {

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

bool same_ratio(Complex nu_prime, Complex nu, double sign) {
  return std::abs(nu_prime - sign * nu) <= 1e-12 * std::max(std::abs(nu), std::abs(nu_prime));
}

}  // namespace

SpectrumReport spectrum(const FullHamiltonian& h, const SpectrumOptions& opts) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("spectrum: Hermitian eigensolver did not converge");
  const Eigen::VectorXd& ev = es.eigenvalues();  // ascending

  SpectrumReport r;
  r.n_sites = h.n_sites();
  r.ground_energy = ev(0);
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  const double threshold = opts.kernel_tol * scale;
  int kernel = 0;
  while (kernel < ev.size() && ev(kernel) <= threshold) ++kernel;
  r.kernel_dim = kernel;

  const int k = std::clamp(opts.k, 0, static_cast<int>(ev.size()));
  r.lowest.assign(ev.data(), ev.data() + k);

  std::vector<std::string> issues;
  if (kernel > 0 && ev(kernel - 1) > threshold / opts.gap_factor) {
    issues.push_back("largest kernel eigenvalue " + sci(ev(kernel - 1)) + " is within the gap factor of the threshold");
  }
  if (kernel < ev.size() && ev(kernel) < threshold * opts.gap_factor) {
    issues.push_back("smallest nonzero eigenvalue " + sci(ev(kernel)) + " is within the gap factor of the threshold");
  }
  if (ev(0) < -threshold) issues.push_back("ground energy " + sci(ev(0)) + " is negative beyond tolerance");
  if (!issues.empty()) {
    std::string w = "ambiguous kernel count: ";
    for (std::size_t i = 0; i < issues.size(); ++i) w += (i ? "; " : "") + issues[i];
    r.warning = w;
  }
  return r;
}

double check_zero_member(const FullHamiltonian& h, const StateVector& psi) {
  if (psi.n_sites() != h.n_sites()) throw ValidationError("check_zero_member: site count mismatch");
  const double n = psi.norm();
  if (n == 0.0) throw ValidationError("check_zero_member: zero state vector");
  const Eigen::VectorXcd hpsi = h.matrix() * psi.amplitudes();
  return hpsi.norm() / (n * std::max(1.0, h.matrix().norm()));
}

double covariance_check(const LocalHamiltonian& h, const StateVector& psi, const SL2& g, int n_sites) {
  const FullHamiltonian hg = full_chain(conjugate_local(h, g), n_sites);
  return check_zero_member(hg, transform_state(psi, g));
}

SpectrumReport no_mps_case_report(const CanonicalForm& form, int n_sites, const std::optional<Eigen::MatrixXcd>& lambda,
                                  const SpectrumOptions& opts) {
  switch (form.case_id()) {
    case CaseId::C56:
    case CaseId::C60:
    case CaseId::C61:
    case CaseId::C62: break;
    default: throw ValidationError("no_mps_case_report: case has a matrix product ground state");
  }
  if (n_sites < 2 || n_sites > 10) throw ValidationError("no_mps_case_report: n_sites must be in [2, 10]");
  const CSpace v = canonical_space(form);
  const EBasis e(v.basis());
  const Eigen::MatrixXcd l = lambda.value_or(Eigen::MatrixXcd::Identity(e.size(), e.size()));
  const LocalHamiltonian h = local_from_espace(e, CouplingMatrix(l));
  return spectrum(full_chain(h, n_sites, 10), opts);
}

std::vector<LabeledState> catalogued_states(const FamilyParams& p, int n_sites, const CatalogOptions& opts) {
  p.validate();
  std::vector<LabeledState> out;
  const auto add = [&](std::string label, StateVector s) { out.push_back({std::move(label), std::move(s)}); };
  const auto add_products = [&](bool zero, bool one) {
    if (zero) add("psi0", product_state(0, n_sites));
    if (one) add("psi1", product_state(1, n_sites));
  };

  switch (p.family) {
    case Family::F105: {
      add_products(true, true);
      if (p.nu == Complex{}) break;
      const Complex ratio = p.nu_prime / p.nu;
      const auto m = root_order(ratio);
      if (!m || n_sites % *m != 0) break;
      for (int k = 0; k * *m <= n_sites; ++k) add("psi_k[" + std::to_string(k) + "]", psi_k(n_sites, *m, k, ratio));
      break;
    }
    case Family::F107:
      for (const auto& s : hardcore_states(n_sites)) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_sites);
        v(static_cast<Eigen::Index>(s.index())) = 1.0;
        add("hardcore[" + s.str() + "]", StateVector(n_sites, std::move(v)));
      }
      break;
    case Family::F109:
      add_products(true, true);
      break;
    case Family::F112:
      add_products(true, true);
      if (same_ratio(p.nu_prime, p.nu, -1.0) && n_sites % 2 == 0) {
        add("psi_prime", psi_prime(n_sites, -1.0));
      } else if (same_ratio(p.nu_prime, p.nu, 1.0)) {
        add("psi_odd", psi_parity(n_sites, ZeroParity::Odd, opts.odd_from_zero));
        add("psi_even", psi_parity(n_sites, ZeroParity::Even));
      }
      break;
    case Family::F108:
    case Family::F111:
    case Family::F116:
    case Family::F117:
    case Family::F59:
      add_products(false, true);
      break;
  }
  return out;
}

bool VerifyReport::all_pass() const {
  return kernel_covers_states() && std::all_of(claims.begin(), claims.end(), [](const ClaimCheck& c) { return c.pass; });
}

VerifyReport verify_family(const FamilyParams& p, int n_sites, double tol, const SpectrumOptions& opts,
                           const CatalogOptions& catalog) {
  const FullHamiltonian h = full_chain(build_family(p), n_sites);
  VerifyReport r;
  r.spectrum = spectrum(h, opts);
  std::vector<StateVector> passing;
  for (const auto& [label, state] : catalogued_states(p, n_sites, catalog)) {
    ClaimCheck c;
    c.label = label;
    if (state.norm() > 0.0) {
      c.residual = check_zero_member(h, state);
      c.pass = *c.residual <= tol;
      r.spectrum.residuals[label] = *c.residual;
      if (c.pass) passing.push_back(state);
    }
    r.claims.push_back(std::move(c));
  }
  r.independent_states = state_rank(passing);
  return r;
}

int state_rank(const std::vector<StateVector>& states, double tol) {
  if (states.empty()) return 0;
  Eigen::MatrixXcd m(states.front().amplitudes().size(), static_cast<Eigen::Index>(states.size()));
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].amplitudes().size() != m.rows()) throw ValidationError("state_rank: size mismatch");
    m.col(static_cast<Eigen::Index>(i)) = states[i].normalized().amplitudes();
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) > tol * s(0);
  return rank;
}

}  // namespace mpsgs
