#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "upb/constructions.hpp"
#include "upb/states.hpp"

namespace upb {

enum class CertificateKind {
  ProductBasis,
  Upb,
  EntangledSubspace,
  PptUncompletable,
  BipartitionPptNecessity,
};

// PROVEN is reserved for verdicts whose deciding checks are deterministic
// numerics; anything decided by a heuristic (seesaw, feasibility iteration)
// caps at NUMERICAL_EVIDENCE.
enum class CertificateStatus { Proven, NumericalEvidence, Undetermined };

struct CertificateCheck {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Certificate {
  CertificateKind kind;
  std::vector<CertificateCheck> checks;
  CertificateStatus status = CertificateStatus::Undetermined;

  bool all_pass() const;
  const CertificateCheck* find(const std::string& name) const;
};

std::string to_string(CertificateKind kind);
std::string to_string(CertificateStatus status);

struct SeesawOptions {
  int restarts = 200;
  int max_iters = 500;
  std::uint64_t seed = 0;
  double convergence_gain = 1e-12;
};

struct SeesawResult {
  double best_overlap = 0.0;
  std::vector<ComplexVector> best_factors;  // one per local party
  int restarts = 0;
  int iterations_used = 0;
  bool converged = false;
  std::vector<double> objective_log;  // winning restart, one entry per sweep

  ProductState best_product_state() const { return ProductState(best_factors); }
  bool log_is_monotone(double slack = 1e-12) const;
};

// Alternating local-eigenvector ascent on <a(x)b| P |a(x)b> over product
// states across `cut`. Restarts draw Haar-random factors from sub-seeds
// derived from (seed, restart index), so runs are reproducible and restarts
// order-independent.
SeesawResult seesaw_max_product_overlap(const Subspace& sub, const Bipartition& cut,
                                        int restarts, int max_iters,
                                        std::uint64_t seed,
                                        double convergence_gain = 1e-12);

// Same ascent over fully product states |a1(x)a2(x)...>, one factor per
// subsystem, updated cyclically.
SeesawResult seesaw_max_product_overlap_fully_separated(const Subspace& sub,
                                                        int restarts, int max_iters,
                                                        std::uint64_t seed,
                                                        double convergence_gain = 1e-12);

// Checks that `basis` really is a linearly independent set of product states
// spanning `expected_span`, with a consistent orthogonality flag.
Certificate verify_product_basis(const ProductBasis& basis, const Subspace& expected_span);

// Certifies unextendibility of a verified product basis. One-dimensional
// complements get the analytic Schmidt-rank branch (PROVEN); otherwise the
// complement is probed by seesaw (NUMERICAL_EVIDENCE at best).
Certificate verify_upb(const ProductBasis& basis, const SeesawOptions& opts = {});

// ppt-uncompletability of `sub` per the definition: a full-support PPT
// witness on sub, a PPT witness strictly inside the complement, and (for the
// 5x5 bundle shape) the local-projection argument showing no PPT operator in
// the complement reaches the ladder vector chi. Other shapes fall back to the
// witness checks with the structural part UNDETERMINED.
Certificate verify_ppt_uncompletable(const Subspace& sub,
                                     const DensityOperator& full_support_ppt_witness,
                                     const DensityOperator& complement_ppt_witness,
                                     double tol = 1e-9);

// Adds the structural complement-entanglement check from a PROVEN
// ppt-uncompletability certificate to a UPB certificate and lifts its status.
Certificate upgrade_upb_with_structural(Certificate upb, const Certificate& uncompletable);

// Necessary condition for bipartition-wise perfect discrimination of a
// two-state orthogonal ensemble with complementary supports: both support
// projectors must be PPT across every bipartition.
Certificate check_bipartition_ppt_necessity(const DensityOperator& sigma1, const DensityOperator& sigma2,
                        double tol = 1e-9);

// Proper bipartitions in canonical order: side A sorted, shortest first, then
// lexicographic; each unordered cut listed once.
std::vector<Bipartition> enumerate_bipartitions(const DimVec& dims);

}  // namespace upb
