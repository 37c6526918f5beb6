#include "upb/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace upb {

Bipartition::Bipartition(std::vector<int> a) : side_a(std::move(a)) {
  std::sort(side_a.begin(), side_a.end());
  side_a.erase(std::unique(side_a.begin(), side_a.end()), side_a.end());
  if (side_a.empty()) throw std::invalid_argument("bipartition: empty A side");
}

void Bipartition::validate(const DimVec& dims) const {
  if (side_a.empty() || static_cast<int>(side_a.size()) >= dims.size())
    throw std::invalid_argument("bipartition: side A must be proper and nonempty");
  for (int k : side_a)
    if (k < 0 || k >= dims.size())
      throw std::invalid_argument("bipartition: subsystem index out of range");
}

std::vector<int> Bipartition::side_b(const DimVec& dims) const {
  std::vector<int> b;
  for (int k = 0; k < dims.size(); ++k)
    if (!std::binary_search(side_a.begin(), side_a.end(), k)) b.push_back(k);
  return b;
}

PureState::PureState(DimVec dims, ComplexVector amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != dims_.total())
    throw std::invalid_argument("pure state: amplitude count does not match dims");
  if (!amplitudes_.allFinite())
    throw std::invalid_argument("pure state: non-finite amplitude");
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("pure state: not normalized");
}

PureState PureState::normalized(DimVec dims, ComplexVector amplitudes) {
  const double n = amplitudes.norm();
  if (n == 0.0) throw std::invalid_argument("pure state: zero vector");
  return PureState(std::move(dims), amplitudes / n);
}

DensityOperator::DensityOperator(DimVec dims, ComplexMatrix matrix)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != dims_.total())
    throw std::invalid_argument("density operator: dimension mismatch");
  if (!matrix_.allFinite())
    throw std::invalid_argument("density operator: non-finite entry");
  const double scale = std::max(1.0, matrix_.norm());
  if ((matrix_ - matrix_.adjoint()).norm() > 1e-10 * scale)
    throw std::invalid_argument("density operator: not Hermitian");
  if (std::abs(matrix_.trace().real() - 1.0) > 1e-10 ||
      std::abs(matrix_.trace().imag()) > 1e-10)
    throw std::invalid_argument("density operator: trace is not 1");
  const EigenResult eig = hermitian_eig(matrix_);
  if (eig.eigenvalues[0] < -1e-9)
    throw std::invalid_argument("density operator: not positive semidefinite");
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
  return DensityOperator(psi.dims(), psi.projector());
}

namespace {

ComplexVector canonical_phase(ComplexVector v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > 1e-12) {
      // Already real positive: leave the bits untouched.
      if (v[i].imag() != 0.0 || v[i].real() <= 0.0) v *= std::conj(v[i]) / a;
      break;
    }
  }
  return v;
}

}  // namespace

ProductState::ProductState(std::vector<ComplexVector> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("product state: no factors");
  for (auto& f : factors_) {
    const double n = f.norm();
    if (n == 0.0) throw std::invalid_argument("product state: zero factor");
    if (std::abs(n - 1.0) > 1e-12) f /= n;
    f = canonical_phase(std::move(f));
  }
}

DimVec ProductState::dims() const {
  std::vector<int> d;
  for (const auto& f : factors_) d.push_back(static_cast<int>(f.size()));
  return DimVec(d);
}

ComplexVector ProductState::composite() const {
  ComplexVector v = factors_[0];
  for (size_t k = 1; k < factors_.size(); ++k) v = kron(v, factors_[k]);
  return v;
}

Subspace::Subspace(DimVec dims, ComplexMatrix basis)
    : dims_(std::move(dims)), basis_(std::move(basis)) {
  if (basis_.rows() != dims_.total())
    throw std::invalid_argument("subspace: basis rows do not match dims");
  if (basis_.cols() < 1 || basis_.cols() > basis_.rows())
    throw std::invalid_argument("subspace: bad basis column count");
  const ComplexMatrix gram = basis_.adjoint() * basis_;
  const ComplexMatrix eye = ComplexMatrix::Identity(basis_.cols(), basis_.cols());
  if ((gram - eye).norm() > 1e-10)
    throw std::invalid_argument("subspace: basis columns not orthonormal");
}

Ensemble::Ensemble(std::vector<DensityOperator> states) : states_(std::move(states)) {
  if (states_.size() < 2) throw std::invalid_argument("ensemble: need at least two states");
  for (size_t i = 0; i < states_.size(); ++i)
    for (size_t j = i + 1; j < states_.size(); ++j) {
      if (states_[i].dims() != states_[j].dims())
        throw std::invalid_argument("ensemble: mixed dims");
      const double overlap =
          (states_[i].matrix() * states_[j].matrix()).trace().real();
      if (std::abs(overlap) > 1e-10)
        throw std::invalid_argument("ensemble: supports not orthogonal");
    }
}

namespace {

// Flattens psi across the cut into the (prod dA) x (prod dB) amplitude matrix,
// A side most significant.
ComplexMatrix amplitude_matrix(const PureState& psi, const Bipartition& cut) {
  cut.validate(psi.dims());
  const std::vector<int> b = cut.side_b(psi.dims());
  std::vector<int> perm = cut.side_a;
  perm.insert(perm.end(), b.begin(), b.end());
  const ComplexVector reordered = permute_subsystems(psi.amplitudes(), psi.dims(), perm);
  long da = 1, db = 1;
  for (int k : cut.side_a) da *= psi.dims()[k];
  for (int k : b) db *= psi.dims()[k];
  ComplexMatrix m(da, db);
  for (long i = 0; i < da; ++i)
    for (long j = 0; j < db; ++j) m(i, j) = reordered[i * db + j];
  return m;
}

}  // namespace

SchmidtResult schmidt_decompose(const PureState& psi, const Bipartition& cut) {
  const ComplexMatrix m = amplitude_matrix(psi, cut);
  const SvdResult s = svd(m);
  // psi = sum_k s_k U.col(k) (x) conj(V.col(k)); conjugate so the reported
  // right vectors reconstruct psi by a plain Kronecker product.
  return {s.singular_values, s.left, s.right.conjugate(), s.rank(1e-8)};
}

PurityCheck purity_check(const DensityOperator& rho) {
  if (rho.dims().size() != 2)
    throw std::invalid_argument("purity_check: state must be bipartite");
  const double purity = (rho.matrix() * rho.matrix()).trace().real();
  const double bound = 1.0 / static_cast<double>(rho.dims().total() - 1);
  const PurityVerdict verdict = purity <= bound + 1e-12
                                    ? PurityVerdict::SeparableGuaranteed
                                    : PurityVerdict::Inconclusive;
  return {purity, verdict};
}

PptResult is_ppt(const ComplexMatrix& op, const DimVec& dims, const Bipartition& cut,
                 double tol) {
  cut.validate(dims);
  const ComplexMatrix pt = partial_transpose(op, dims, cut.side_a);
  const double min_eig = min_eigenvalue(pt);
  return {min_eig >= -tol, min_eig};
}

Subspace orthogonal_complement(const Subspace& sub) {
  const long n = sub.dims().total();
  const int k = sub.dimension();
  if (k >= n) throw std::invalid_argument("orthogonal_complement: input spans whole space");
  // Trailing left singular vectors of the basis matrix span the complement.
  const SvdResult s = svd(sub.basis());
  return Subspace(sub.dims(), s.left.rightCols(n - k));
}

Subspace orthogonal_complement(const PureState& psi) {
  ComplexMatrix basis(psi.amplitudes().size(), 1);
  basis.col(0) = psi.amplitudes();
  return orthogonal_complement(Subspace(psi.dims(), basis));
}

Subspace support(const DensityOperator& rho, double tol) {
  const EigenResult eig = hermitian_eig(rho.matrix());
  const long n = eig.eigenvalues.size();
  const double cutoff = tol * eig.eigenvalues[n - 1];
  int first = 0;
  while (first < n && eig.eigenvalues[first] <= cutoff) ++first;
  if (first == n) throw std::invalid_argument("support: operator is numerically zero");
  return Subspace(rho.dims(), eig.eigenvectors.rightCols(n - first));
}

namespace {

// Permutation taking [a-subsystems..., b-subsystems...] to
// [a.A..., b.A..., a.B..., b.B...], plus the regrouped two-part dims.
struct RegroupPlan {
  std::vector<int> perm;
  DimVec combined;
  DimVec bipartite;
};

RegroupPlan regroup_plan(const DimVec& da, const DimVec& db, const Bipartition& cut) {
  cut.validate(da);
  cut.validate(db);
  const int ka = da.size();
  std::vector<int> combined_dims = da.dims();
  combined_dims.insert(combined_dims.end(), db.dims().begin(), db.dims().end());
  const DimVec combined(combined_dims);

  std::vector<int> perm;
  long prod_a = 1, prod_b = 1;
  for (int k : cut.side_a) { perm.push_back(k); prod_a *= da[k]; }
  for (int k : cut.side_a) { perm.push_back(ka + k); prod_a *= db[k]; }
  for (int k : cut.side_b(da)) { perm.push_back(k); prod_b *= da[k]; }
  for (int k : cut.side_b(db)) { perm.push_back(ka + k); prod_b *= db[k]; }
  return {perm, combined, DimVec{static_cast<int>(prod_a), static_cast<int>(prod_b)}};
}

}  // namespace

PureState tensor_regroup(const PureState& a, const PureState& b, const Bipartition& cut) {
  if (a.dims().size() != b.dims().size())
    throw std::invalid_argument("tensor_regroup: incompatible dims");
  const RegroupPlan plan = regroup_plan(a.dims(), b.dims(), cut);
  const ComplexVector joint = kron(a.amplitudes(), b.amplitudes());
  const ComplexVector regrouped = permute_subsystems(joint, plan.combined, plan.perm);
  return PureState(plan.bipartite, regrouped);
}

DensityOperator tensor_regroup(const DensityOperator& a, const DensityOperator& b,
                               const Bipartition& cut) {
  if (a.dims().size() != b.dims().size())
    throw std::invalid_argument("tensor_regroup: incompatible dims");
  const RegroupPlan plan = regroup_plan(a.dims(), b.dims(), cut);
  const ComplexMatrix joint = kron(a.matrix(), b.matrix());
  const ComplexMatrix regrouped = permute_subsystems(joint, plan.combined, plan.perm);
  return DensityOperator(plan.bipartite, regrouped);
}

}  // namespace upb
