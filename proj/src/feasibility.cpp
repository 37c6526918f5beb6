#include "upb/feasibility.hpp"

#include <cmath>
#include <stdexcept>

namespace upb {

PovmPair PovmPair::from_element(const ComplexMatrix& e) {
  if (e.rows() != e.cols()) throw std::invalid_argument("povm: element not square");
  return {e, ComplexMatrix::Identity(e.rows(), e.cols()) - e};
}

std::string to_string(FeasibilityStatus status) {
  switch (status) {
    case FeasibilityStatus::Feasible: return "FEASIBLE";
    case FeasibilityStatus::InfeasibleEvidence: return "INFEASIBLE_EVIDENCE";
    case FeasibilityStatus::Undetermined: return "UNDETERMINED";
  }
  return "UNKNOWN";
}

PovmValidation validate_povm(const PovmPair& pair, const DimVec& dims,
                             const Bipartition& cut, double tol) {
  if (pair.element.rows() != pair.element.cols() ||
      pair.element.rows() != pair.complement.rows() ||
      pair.complement.rows() != pair.complement.cols() ||
      pair.element.rows() != dims.total())
    throw std::invalid_argument("validate_povm: dimension mismatch");

  PovmValidation report;
  report.min_eig_element = min_eigenvalue(pair.element);
  report.min_eig_complement = min_eigenvalue(pair.complement);
  report.completeness_gap =
      (pair.element + pair.complement -
       ComplexMatrix::Identity(dims.total(), dims.total()))
          .norm();
  report.valid = report.min_eig_element >= -tol && report.min_eig_complement >= -tol &&
                 report.completeness_gap <= 1e-12;
  report.min_pt_eig_element = is_ppt(pair.element, dims, cut, tol).min_pt_eigenvalue;
  report.min_pt_eig_complement =
      is_ppt(pair.complement, dims, cut, tol).min_pt_eigenvalue;
  report.ppt = report.min_pt_eig_element >= -tol && report.min_pt_eig_complement >= -tol;
  return report;
}

namespace {

ComplexMatrix hermitize(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

// Frobenius projection onto the PSD cone: clamp negative eigenvalues.
ComplexMatrix project_psd(const ComplexMatrix& m) {
  const EigenResult eig = hermitian_eig(hermitize(m));
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    if (eig.eigenvalues[k] <= 0.0) continue;
    out += eig.eigenvalues[k] * eig.eigenvectors.col(k) * eig.eigenvectors.col(k).adjoint();
  }
  return out;
}

// Clamp the spectrum into [0, 1]; used to round a candidate witness.
ComplexMatrix round_effect(const ComplexMatrix& m) {
  const EigenResult eig = hermitian_eig(hermitize(m));
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    const double clamped = std::min(1.0, std::max(0.0, eig.eigenvalues[k]));
    if (clamped == 0.0) continue;
    out += clamped * eig.eigenvectors.col(k) * eig.eigenvectors.col(k).adjoint();
  }
  return out;
}

// Snap the spectrum to {0, 1}: candidate generator for projector-valued
// witnesses, which tangent cone intersections only approach sublinearly.
ComplexMatrix snap_effect(const ComplexMatrix& m) {
  const EigenResult eig = hermitian_eig(hermitize(m));
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    if (eig.eigenvalues[k] < 0.5) continue;
    out += eig.eigenvectors.col(k) * eig.eigenvectors.col(k).adjoint();
  }
  return out;
}

double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a * b).trace().real();
}

}  // namespace

FeasibilityResult ppt_povm_two_state(const DensityOperator& rho_target,
                                     const DensityOperator& rho_other,
                                     const Bipartition& cut, int budget, double tol) {
  if (rho_target.dims() != rho_other.dims())
    throw std::invalid_argument("ppt_povm_two_state: dims mismatch");
  const DimVec dims = rho_target.dims();
  cut.validate(dims);
  if (std::abs(real_trace_product(rho_target.matrix(), rho_other.matrix())) > 1e-10)
    throw std::invalid_argument("ppt_povm_two_state: states are not orthogonal");

  const long n = dims.total();
  const ComplexMatrix identity = ComplexMatrix::Identity(n, n);
  const ComplexMatrix target = rho_target.matrix();

  // Orthogonality to rho_other together with E >= 0 confines E to the
  // support complement; encoded as the constraint E <= complement projector.
  const ComplexMatrix pi_complement = identity - support(rho_other).projector();

  // The same forcing works on the target side: Tr(rho_target E) = 1 with
  // E <= I pins E to the identity on the target support, i.e.
  // E = P_t + Q E Q. Using this affine closure instead of the bare trace
  // hyperplane removes a tangency that stalls the alternating projections.
  const ComplexMatrix p_target = support(rho_target).projector();
  const ComplexMatrix q_target = identity - p_target;
  auto project_forced = [&](const ComplexMatrix& m) -> ComplexMatrix {
    return p_target + q_target * m * q_target;
  };

  auto pt = [&](const ComplexMatrix& m) {
    return partial_transpose(m, dims, cut.side_a);
  };

  auto violations = [&](const ComplexMatrix& e) -> ResidualRow {
    const double v_psd = std::max(0.0, -min_eigenvalue(hermitize(e)));
    const double v_pt = std::max(0.0, -min_eigenvalue(pt(hermitize(e))));
    const double v_cap = std::max(0.0, -min_eigenvalue(hermitize(pi_complement - e)));
    const double v_trace = std::max(std::abs(real_trace_product(target, e) - 1.0),
                                    (e - project_forced(e)).norm());
    return {v_psd, v_pt, v_cap, v_trace};
  };

  FeasibilityResult result;

  // Start at the target support projector: for instances where it is already
  // a PPT effect (the bundle's P' and classical-like pairs) the first cycle
  // terminates with that exact witness.
  ComplexMatrix e = p_target;
  ComplexMatrix p1 = ComplexMatrix::Zero(n, n);
  ComplexMatrix p2 = ComplexMatrix::Zero(n, n);
  ComplexMatrix p3 = ComplexMatrix::Zero(n, n);
  ComplexMatrix p4 = ComplexMatrix::Zero(n, n);

  for (int cycle = 1; cycle <= budget; ++cycle) {
    ComplexMatrix y = e + p1;
    e = project_psd(y);
    p1 = y - e;

    y = e + p2;
    e = pt(project_psd(pt(y)));
    p2 = y - e;

    y = e + p3;
    e = pi_complement - project_psd(pi_complement - y);
    p3 = y - e;

    // Objective of the cone-block iterate (target constraint relaxed).
    result.best_objective =
        std::max(result.best_objective, real_trace_product(target, e));

    y = e + p4;
    e = project_forced(y);
    p4 = y - e;

    result.iterations = cycle;
    const ResidualRow res = violations(e);
    result.residual_log.push_back(res);
    const double worst = std::max(std::max(res[0], res[1]), std::max(res[2], res[3]));

    // Witness attempts: a candidate is accepted only if it re-validates from
    // scratch, so trying early (on the snap schedule) stays sound.
    const bool attempt = worst < tol || (worst < 1e-2 && cycle % 25 == 0);
    if (attempt) {
      for (const ComplexMatrix& candidate_matrix : {round_effect(e), snap_effect(e)}) {
        const PovmPair candidate = PovmPair::from_element(candidate_matrix);
        const PovmValidation check = validate_povm(candidate, dims, cut, 1e-8);
        const double hit = real_trace_product(target, candidate_matrix);
        const double leak = real_trace_product(rho_other.matrix(), candidate_matrix);
        if (check.valid && check.ppt && hit >= 1.0 - 1e-8 && std::abs(leak) <= 1e-8) {
          result.status = FeasibilityStatus::Feasible;
          result.witness = candidate;
          result.best_objective = std::max(result.best_objective, hit);
          return result;
        }
      }
    }
  }

  result.status = result.best_objective <= 1.0 - 1e-3
                      ? FeasibilityStatus::InfeasibleEvidence
                      : FeasibilityStatus::Undetermined;
  return result;
}

Certificate structural_infeasibility_cupb(const CupbBundle& bundle) {
  Certificate cert;
  cert.kind = CertificateKind::PptUncompletable;

  // Any effect with Tr(rho1 E) = 0 is confined to the complement of rho1's
  // support; that complement is the five-dimensional one of the basis.
  const Subspace rho1_support = support(bundle.rho1);
  cert.checks.push_back({"rho1_support_dimension",
                         static_cast<double>(rho1_support.dimension()), 0.0,
                         rho1_support.dimension() == 20});
  const Subspace basis_span = bundle.cupb.span();
  const double span_gap = (rho1_support.projector() - basis_span.projector()).norm();
  cert.checks.push_back({"rho1_support_equals_span_gap", span_gap, 1e-9, span_gap < 1e-9});

  // Perfect detection of rho3 forces <chi|E|chi> = 1.
  const double chi_weight =
      (bundle.rho3.matrix() * bundle.chi.projector()).trace().real();
  cert.checks.push_back({"rho3_chi_weight", chi_weight, 1e-10,
                         std::abs(chi_weight - 1.0) < 1e-10});

  // The structural part of the ppt-uncompletability certificate shows every
  // PPT operator inside the complement has zero weight on chi.
  const Certificate unc =
      verify_ppt_uncompletable(basis_span, bundle.rho1, bundle.rho2);
  for (const char* name :
       {"structural_projection_rank1_gap", "structural_chi_pt_min_eig"}) {
    const CertificateCheck* check = unc.find(name);
    if (check == nullptr)
      throw std::logic_error("structural_infeasibility_cupb: missing structural check");
    cert.checks.push_back(*check);
  }
  cert.checks.push_back({"uncompletability_proven",
                         unc.status == CertificateStatus::Proven ? 1.0 : 0.0, 0.0,
                         unc.status == CertificateStatus::Proven});

  cert.status = cert.all_pass() ? CertificateStatus::Proven : CertificateStatus::Undetermined;
  return cert;
}

}  // namespace upb
