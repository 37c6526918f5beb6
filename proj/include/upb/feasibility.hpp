#pragma once

#include <array>
#include <optional>
#include <vector>

#include "upb/constructions.hpp"
#include "upb/states.hpp"
#include "upb/verify.hpp"

namespace upb {

// Two-outcome measurement {E, I - E}.
struct PovmPair {
  ComplexMatrix element;
  ComplexMatrix complement;

  static PovmPair from_element(const ComplexMatrix& e);
};

struct PovmValidation {
  bool valid = false;  // both effects PSD (within 1e-9) and summing to I (within 1e-12)
  bool ppt = false;    // both effects PPT across the cut
  double min_eig_element = 0.0;
  double min_eig_complement = 0.0;
  double completeness_gap = 0.0;
  double min_pt_eig_element = 0.0;
  double min_pt_eig_complement = 0.0;
};

PovmValidation validate_povm(const PovmPair& pair, const DimVec& dims,
                             const Bipartition& cut, double tol = 1e-9);

enum class FeasibilityStatus { Feasible, InfeasibleEvidence, Undetermined };

std::string to_string(FeasibilityStatus status);

// Per-cycle constraint violations: [psd, pt_psd, below_complement, target_trace].
using ResidualRow = std::array<double, 4>;

struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::Undetermined;
  std::optional<PovmPair> witness;
  double best_objective = 0.0;  // best Tr(rho_target E) seen on the cone iterates
  std::vector<ResidualRow> residual_log;
  int iterations = 0;
};

// Searches for a PPT effect E with 0 <= E <= I, Tr(rho_other E) = 0 and
// Tr(rho_target E) = 1 by Dykstra cycles over the PSD cone, the PT-PSD cone,
// {E <= P_complement} (which encodes the orthogonality to rho_other), and the
// unit-trace-on-target hyperplane. FEASIBLE results carry a rounded witness
// that re-validates from scratch; the infeasibility verdict is evidence only.
FeasibilityResult ppt_povm_two_state(const DensityOperator& rho_target,
                                     const DensityOperator& rho_other,
                                     const Bipartition& cut, int budget = 10000,
                                     double tol = 1e-9);

// Exact infeasibility verdict for the pair {rho1, rho3} of the 5x5 bundle:
// any effect orthogonal to rho1 lives in the 5-dimensional complement,
// perfect detection of rho3 needs weight on chi, and the ppt-uncompletability
// structural check rules that out for every PPT operator there.
Certificate structural_infeasibility_cupb(const CupbBundle& bundle);

}  // namespace upb
