#pragma once

#include <Eigen/Dense>
#include <complex>
#include <initializer_list>
#include <vector>

namespace upb {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Default relative rank cutoff: the constructions handled here are exact up
// to normalization, so spectral gaps are many orders above this.
inline constexpr double kRankTol = 1e-8;

// Ordered subsystem dimensions of a composite space. The composite index is
// mixed-radix with the first subsystem most significant: |i>|j> -> i*d2 + j.
// Basis labels are zero-based throughout.
class DimVec {
 public:
  DimVec() = default;
  DimVec(std::initializer_list<int> dims);
  explicit DimVec(std::vector<int> dims);

  int size() const { return static_cast<int>(dims_.size()); }
  int operator[](int k) const { return dims_[k]; }
  long total() const;
  const std::vector<int>& dims() const { return dims_; }

  bool operator==(const DimVec& other) const { return dims_ == other.dims_; }
  bool operator!=(const DimVec& other) const { return !(*this == other); }

  std::vector<int> decode(long index) const;
  long encode(const std::vector<int>& digits) const;

 private:
  std::vector<int> dims_;
};

struct EigenResult {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // orthonormal columns, paired with eigenvalues
};

struct SvdResult {
  RealVector singular_values; // nonnegative, descending
  ComplexMatrix left;         // orthonormal columns (full)
  ComplexMatrix right;        // orthonormal columns (full)

  int rank(double tol = kRankTol) const;
};

// Kronecker product with the first factor most significant.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

// Transpose applied to the subsystems listed in `part` only.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const DimVec& dims,
                                const std::vector<int>& part);

// Trace over every subsystem not listed in `keep`.
ComplexMatrix partial_trace(const ComplexMatrix& m, const DimVec& dims,
                            const std::vector<int>& keep);

// Reorders subsystems; perm[new_position] = old_position.
ComplexVector permute_subsystems(const ComplexVector& v, const DimVec& dims,
                                 const std::vector<int>& perm);
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const DimVec& dims,
                                 const std::vector<int>& perm);

// Full spectrum of a Hermitian matrix, eigenvalues ascending. The input is
// symmetrized before the solve; deviations beyond 1e-10 (relative) throw.
EigenResult hermitian_eig(const ComplexMatrix& m);

double min_eigenvalue(const ComplexMatrix& hermitian);

SvdResult svd(const ComplexMatrix& m);

// Orthonormal basis of span(vectors) by modified Gram-Schmidt with pivoting
// on the largest residual norm. Column count equals the numerical rank at
// `tol` (relative to the largest input norm).
ComplexMatrix orthonormalize(const std::vector<ComplexVector>& vectors,
                             double tol = kRankTol);

}  // namespace upb
