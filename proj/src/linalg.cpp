#include "upb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace upb {

DimVec::DimVec(std::initializer_list<int> dims) : dims_(dims) {
  for (int d : dims_)
    if (d < 2) throw std::invalid_argument("subsystem dimensions must be >= 2");
}

DimVec::DimVec(std::vector<int> dims) : dims_(std::move(dims)) {
  for (int d : dims_)
    if (d < 2) throw std::invalid_argument("subsystem dimensions must be >= 2");
}

long DimVec::total() const {
  long t = 1;
  for (int d : dims_) t *= d;
  return t;
}

std::vector<int> DimVec::decode(long index) const {
  std::vector<int> digits(dims_.size());
  for (int k = size() - 1; k >= 0; --k) {
    digits[k] = static_cast<int>(index % dims_[k]);
    index /= dims_[k];
  }
  return digits;
}

long DimVec::encode(const std::vector<int>& digits) const {
  long index = 0;
  for (int k = 0; k < size(); ++k) index = index * dims_[k] + digits[k];
  return index;
}

int SvdResult::rank(double tol) const {
  if (singular_values.size() == 0) return 0;
  const double cutoff = tol * singular_values[0];
  int r = 0;
  while (r < singular_values.size() && singular_values[r] > cutoff) ++r;
  return r;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

namespace {

void check_square(const ComplexMatrix& m, const DimVec& dims) {
  if (m.rows() != m.cols() || m.rows() != dims.total())
    throw std::invalid_argument("matrix dimension does not match subsystem dims");
}

}  // namespace

ComplexMatrix partial_transpose(const ComplexMatrix& m, const DimVec& dims,
                                const std::vector<int>& part) {
  check_square(m, dims);
  for (int p : part)
    if (p < 0 || p >= dims.size())
      throw std::invalid_argument("partial_transpose: subsystem index out of range");
  const long n = dims.total();
  ComplexMatrix out(n, n);
  for (long r = 0; r < n; ++r) {
    std::vector<int> rd = dims.decode(r);
    for (long c = 0; c < n; ++c) {
      std::vector<int> cd = dims.decode(c);
      for (int p : part) std::swap(rd[p], cd[p]);
      out(dims.encode(rd), dims.encode(cd)) = m(r, c);
      for (int p : part) std::swap(rd[p], cd[p]);  // restore
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const DimVec& dims,
                            const std::vector<int>& keep) {
  check_square(m, dims);
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  for (int p : kept)
    if (p < 0 || p >= dims.size())
      throw std::invalid_argument("partial_trace: subsystem index out of range");

  std::vector<int> traced;
  for (int k = 0; k < dims.size(); ++k)
    if (!std::binary_search(kept.begin(), kept.end(), k)) traced.push_back(k);

  long keep_dim = 1, traced_dim = 1;
  std::vector<int> keep_dims, traced_dims;
  for (int k : kept) { keep_dims.push_back(dims[k]); keep_dim *= dims[k]; }
  for (int k : traced) { traced_dims.push_back(dims[k]); traced_dim *= dims[k]; }

  const DimVec keep_dv = keep_dims.empty() ? DimVec{} : DimVec(keep_dims);
  const DimVec traced_dv = traced_dims.empty() ? DimVec{} : DimVec(traced_dims);

  auto full_index = [&](const std::vector<int>& kd, const std::vector<int>& td) {
    std::vector<int> digits(dims.size());
    for (size_t i = 0; i < kept.size(); ++i) digits[kept[i]] = kd[i];
    for (size_t i = 0; i < traced.size(); ++i) digits[traced[i]] = td[i];
    return dims.encode(digits);
  };

  ComplexMatrix out = ComplexMatrix::Zero(keep_dim, keep_dim);
  for (long a = 0; a < keep_dim; ++a) {
    const std::vector<int> ad = keep_dims.empty() ? std::vector<int>{} : keep_dv.decode(a);
    for (long b = 0; b < keep_dim; ++b) {
      const std::vector<int> bd = keep_dims.empty() ? std::vector<int>{} : keep_dv.decode(b);
      Complex sum = 0.0;
      for (long g = 0; g < traced_dim; ++g) {
        const std::vector<int> gd = traced_dims.empty() ? std::vector<int>{} : traced_dv.decode(g);
        sum += m(full_index(ad, gd), full_index(bd, gd));
      }
      out(a, b) = sum;
    }
  }
  return out;
}

ComplexVector permute_subsystems(const ComplexVector& v, const DimVec& dims,
                                 const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != dims.size() || v.size() != dims.total())
    throw std::invalid_argument("permute_subsystems: size mismatch");
  std::vector<int> new_dims(perm.size());
  for (size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims[perm[k]];
  const DimVec out_dims(new_dims);
  ComplexVector out(v.size());
  for (long i = 0; i < v.size(); ++i) {
    const std::vector<int> digits = dims.decode(i);
    std::vector<int> nd(perm.size());
    for (size_t k = 0; k < perm.size(); ++k) nd[k] = digits[perm[k]];
    out[out_dims.encode(nd)] = v[i];
  }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const DimVec& dims,
                                 const std::vector<int>& perm) {
  check_square(m, dims);
  std::vector<int> new_dims(perm.size());
  for (size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims[perm[k]];
  const DimVec out_dims(new_dims);
  const long n = dims.total();
  std::vector<long> map(n);
  for (long i = 0; i < n; ++i) {
    const std::vector<int> digits = dims.decode(i);
    std::vector<int> nd(perm.size());
    for (size_t k = 0; k < perm.size(); ++k) nd[k] = digits[perm[k]];
    map[i] = out_dims.encode(nd);
  }
  ComplexMatrix out(n, n);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) out(map[r], map[c]) = m(r, c);
  return out;
}

EigenResult hermitian_eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eig: matrix not square");
  const double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > 1e-10 * scale)
    throw std::invalid_argument("hermitian_eig: matrix not Hermitian within tolerance");
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  return hermitian_eig(hermitian).eigenvalues[0];
}

SvdResult svd(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {solver.singularValues(), solver.matrixU(), solver.matrixV()};
}

ComplexMatrix orthonormalize(const std::vector<ComplexVector>& vectors, double tol) {
  if (vectors.empty()) throw std::invalid_argument("orthonormalize: empty input");
  const Eigen::Index dim = vectors[0].size();
  double max_norm = 0.0;
  for (const auto& v : vectors) {
    if (v.size() != dim) throw std::invalid_argument("orthonormalize: mixed dimensions");
    max_norm = std::max(max_norm, v.norm());
  }
  if (max_norm == 0.0) throw std::invalid_argument("orthonormalize: all vectors zero");

  std::vector<ComplexVector> residual = vectors;
  std::vector<bool> used(vectors.size(), false);
  std::vector<ComplexVector> basis;
  const double cutoff = tol * max_norm;

  while (basis.size() < static_cast<size_t>(dim)) {
    // Pivot: remaining vector with the largest residual norm (ties keep the
    // earliest index, so the result is deterministic).
    int pivot = -1;
    double best = cutoff;
    for (size_t i = 0; i < residual.size(); ++i) {
      if (used[i]) continue;
      const double n = residual[i].norm();
      if (n > best) { best = n; pivot = static_cast<int>(i); }
    }
    if (pivot < 0) break;
    used[pivot] = true;
    ComplexVector q = residual[pivot] / residual[pivot].norm();
    basis.push_back(q);
    for (size_t i = 0; i < residual.size(); ++i) {
      if (used[i]) continue;
      residual[i] -= q * q.dot(residual[i]);
    }
  }

  ComplexMatrix out(dim, static_cast<Eigen::Index>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = basis[j];
  return out;
}

}  // namespace upb
