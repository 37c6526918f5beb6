#pragma once

#include <optional>
#include <vector>

#include "upb/linalg.hpp"

namespace upb {

// Index set of the subsystems on the A side of a cut. Proper and nonempty
// with respect to the DimVec it is used against.
struct Bipartition {
  std::vector<int> side_a;

  Bipartition() = default;
  explicit Bipartition(std::vector<int> a);

  std::vector<int> side_b(const DimVec& dims) const;
  void validate(const DimVec& dims) const;

  bool operator==(const Bipartition& other) const { return side_a == other.side_a; }
};

class PureState {
 public:
  // Requires ||amplitudes|| = 1 within 1e-12.
  PureState(DimVec dims, ComplexVector amplitudes);

  // Normalizes the input first; rejects the zero vector.
  static PureState normalized(DimVec dims, ComplexVector amplitudes);

  const DimVec& dims() const { return dims_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  ComplexMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  DimVec dims_;
  ComplexVector amplitudes_;
};

class DensityOperator {
 public:
  // Requires Hermitian within 1e-10, eigenvalues >= -1e-9, unit trace within 1e-10.
  DensityOperator(DimVec dims, ComplexMatrix matrix);

  static DensityOperator from_pure(const PureState& psi);

  const DimVec& dims() const { return dims_; }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  DimVec dims_;
  ComplexMatrix matrix_;
};

// Product state stored as one normalized factor per subsystem, phase-fixed so
// the first nonzero entry of every factor is real positive.
class ProductState {
 public:
  explicit ProductState(std::vector<ComplexVector> factors);

  const std::vector<ComplexVector>& factors() const { return factors_; }
  DimVec dims() const;
  ComplexVector composite() const;

 private:
  std::vector<ComplexVector> factors_;
};

class Subspace {
 public:
  // `basis` must have orthonormal columns within 1e-10.
  Subspace(DimVec dims, ComplexMatrix basis);

  const DimVec& dims() const { return dims_; }
  const ComplexMatrix& basis() const { return basis_; }
  int dimension() const { return static_cast<int>(basis_.cols()); }
  ComplexMatrix projector() const { return basis_ * basis_.adjoint(); }

 private:
  DimVec dims_;
  ComplexMatrix basis_;
};

// Orthogonal ensemble; states are promoted to rank-1 density operators so the
// discrimination code has a single input type. Equiprobable by convention.
class Ensemble {
 public:
  explicit Ensemble(std::vector<DensityOperator> states);
  const std::vector<DensityOperator>& states() const { return states_; }

 private:
  std::vector<DensityOperator> states_;
};

struct SchmidtResult {
  RealVector coefficients;    // nonnegative, descending; squares sum to 1
  ComplexMatrix left_vectors;  // full local basis for the A side, columns
  ComplexMatrix right_vectors; // full local basis for the B side, columns
  int rank;                    // count of coefficients > 1e-8

  // psi = sum_k coefficients[k] * left.col(k) (x) right.col(k)
};

SchmidtResult schmidt_decompose(const PureState& psi, const Bipartition& cut);

enum class PurityVerdict { SeparableGuaranteed, Inconclusive };

struct PurityCheck {
  double purity;
  PurityVerdict verdict;
};

// Purity bound test for bipartite states: purity <= 1/(d1*d2 - 1) certifies
// separability.
PurityCheck purity_check(const DensityOperator& rho);

struct PptResult {
  bool verdict;
  double min_pt_eigenvalue;
};

PptResult is_ppt(const ComplexMatrix& op, const DimVec& dims, const Bipartition& cut,
                 double tol = 1e-9);

Subspace orthogonal_complement(const Subspace& sub);
Subspace orthogonal_complement(const PureState& psi);

// Span of the eigenvectors with eigenvalue above tol (relative to the
// largest eigenvalue).
Subspace support(const DensityOperator& rho, double tol = kRankTol);

// Tensor product with subsystems regrouped so every A-side part precedes
// every B-side part; the result is a bipartite object over (prod dA, prod dB).
PureState tensor_regroup(const PureState& a, const PureState& b, const Bipartition& cut);
DensityOperator tensor_regroup(const DensityOperator& a, const DensityOperator& b,
                               const Bipartition& cut);

}  // namespace upb
