#include "upb/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "upb/rng.hpp"

namespace upb {

bool Certificate::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const CertificateCheck* Certificate::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::ProductBasis: return "PRODUCT_BASIS";
    case CertificateKind::Upb: return "UPB";
    case CertificateKind::EntangledSubspace: return "ENTANGLED_SUBSPACE";
    case CertificateKind::PptUncompletable: return "PPT_UNCOMPLETABLE";
    case CertificateKind::BipartitionPptNecessity: return "BIPARTITION_PPT_NECESSITY";
  }
  return "UNKNOWN";
}

std::string to_string(CertificateStatus status) {
  switch (status) {
    case CertificateStatus::Proven: return "PROVEN";
    case CertificateStatus::NumericalEvidence: return "NUMERICAL_EVIDENCE";
    case CertificateStatus::Undetermined: return "UNDETERMINED";
  }
  return "UNKNOWN";
}

bool SeesawResult::log_is_monotone(double slack) const {
  for (size_t i = 1; i < objective_log.size(); ++i)
    if (objective_log[i] < objective_log[i - 1] - slack) return false;
  return true;
}

namespace {

bool abs_lex_greater(const ComplexVector& a, const ComplexVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double x = std::abs(a[i]);
    const double y = std::abs(b[i]);
    if (x != y) return x > y;
  }
  return false;
}

ComplexVector fix_phase(ComplexVector v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > 1e-12) {
      v *= std::conj(v[i]) / a;
      break;
    }
  }
  return v;
}

// Top eigenvector; degenerate top eigenvalues (within 1e-12) are broken by
// picking the candidate whose absolute-value entries are lexicographically
// largest, which keeps runs reproducible.
ComplexVector top_eigenvector(const ComplexMatrix& hermitian, double* value) {
  const EigenResult eig = hermitian_eig(hermitian);
  const Eigen::Index n = eig.eigenvalues.size();
  const double top = eig.eigenvalues[n - 1];
  Eigen::Index pick = n - 1;
  for (Eigen::Index i = n - 2; i >= 0 && eig.eigenvalues[i] >= top - 1e-12; --i)
    if (abs_lex_greater(eig.eigenvectors.col(i), eig.eigenvectors.col(pick))) pick = i;
  *value = eig.eigenvalues[pick];
  return fix_phase(eig.eigenvectors.col(pick));
}

// Matrix whose column x is (left (x) e_x (x) right).
ComplexMatrix slot_map(const ComplexVector& left, int slot_dim, const ComplexVector& right) {
  const Eigen::Index nl = left.size();
  const Eigen::Index nr = right.size();
  ComplexMatrix map = ComplexMatrix::Zero(nl * slot_dim * nr, slot_dim);
  for (Eigen::Index l = 0; l < nl; ++l)
    for (int x = 0; x < slot_dim; ++x)
      for (Eigen::Index r = 0; r < nr; ++r)
        map((l * slot_dim + x) * nr + r, x) = left[l] * right[r];
  return map;
}

ComplexVector kron_chain(const std::vector<ComplexVector>& factors, size_t begin,
                         size_t end) {
  ComplexVector out(1);
  out[0] = 1.0;
  for (size_t k = begin; k < end; ++k) out = kron(out, factors[k]);
  return out;
}

SeesawResult seesaw_core(const ComplexMatrix& projector, const std::vector<int>& local_dims,
                         int restarts, int max_iters, std::uint64_t seed,
                         double convergence_gain) {
  if (restarts < 1) throw std::invalid_argument("seesaw: need at least one restart");
  const size_t parties = local_dims.size();

  SeesawResult best;
  best.restarts = restarts;
  best.best_overlap = -1.0;

  for (int restart = 0; restart < restarts; ++restart) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(restart)));
    std::vector<ComplexVector> factors;
    for (int d : local_dims) factors.push_back(rng.haar_vector(d));

    std::vector<double> log;
    double previous = -1.0;
    bool converged = false;
    int sweeps = 0;
    for (int iter = 0; iter < max_iters; ++iter) {
      double objective = 0.0;
      for (size_t j = 0; j < parties; ++j) {
        const ComplexVector left = kron_chain(factors, 0, j);
        const ComplexVector right = kron_chain(factors, j + 1, parties);
        const ComplexMatrix map = slot_map(left, local_dims[j], right);
        const ComplexMatrix local = map.adjoint() * projector * map;
        factors[j] = top_eigenvector(local, &objective);
      }
      sweeps = iter + 1;
      log.push_back(objective);
      if (previous >= 0.0 && objective - previous < convergence_gain) {
        converged = true;
        break;
      }
      previous = objective;
    }

    const double overlap = log.empty() ? 0.0 : log.back();
    if (overlap > best.best_overlap) {
      best.best_overlap = overlap;
      best.best_factors = factors;
      best.iterations_used = sweeps;
      best.converged = converged;
      best.objective_log = std::move(log);
    }
  }
  for (auto& f : best.best_factors) f = fix_phase(f);
  return best;
}

}  // namespace

SeesawResult seesaw_max_product_overlap(const Subspace& sub, const Bipartition& cut,
                                        int restarts, int max_iters, std::uint64_t seed,
                                        double convergence_gain) {
  cut.validate(sub.dims());
  // Regroup so the A side is most significant, then flatten to two parties.
  std::vector<int> perm = cut.side_a;
  const std::vector<int> b_side = cut.side_b(sub.dims());
  perm.insert(perm.end(), b_side.begin(), b_side.end());
  const ComplexMatrix projector =
      permute_subsystems(sub.projector(), sub.dims(), perm);
  int da = 1, db = 1;
  for (int k : cut.side_a) da *= sub.dims()[k];
  for (int k : b_side) db *= sub.dims()[k];
  return seesaw_core(projector, {da, db}, restarts, max_iters, seed, convergence_gain);
}

SeesawResult seesaw_max_product_overlap_fully_separated(const Subspace& sub, int restarts,
                                                        int max_iters, std::uint64_t seed,
                                                        double convergence_gain) {
  return seesaw_core(sub.projector(), sub.dims().dims(), restarts, max_iters, seed,
                     convergence_gain);
}

namespace {

double second_schmidt_coefficient(const PureState& psi) {
  double worst = 0.0;
  for (int k = 0; k < psi.dims().size(); ++k) {
    if (psi.dims().size() == 2 && k == 1) break;  // single cut for bipartite
    const SchmidtResult s = schmidt_decompose(psi, Bipartition({k}));
    if (s.coefficients.size() > 1) worst = std::max(worst, s.coefficients[1]);
  }
  return worst;
}

double max_offdiagonal_overlap(const ProductBasis& basis) {
  double worst = 0.0;
  const ComplexMatrix stacked = basis.stacked();
  for (int i = 0; i < basis.cardinality(); ++i)
    for (int j = i + 1; j < basis.cardinality(); ++j)
      worst = std::max(worst, std::abs(stacked.col(i).dot(stacked.col(j))));
  return worst;
}

}  // namespace

Certificate verify_product_basis(const ProductBasis& basis, const Subspace& expected_span) {
  if (basis.dims != expected_span.dims())
    throw std::invalid_argument("verify_product_basis: dims mismatch");
  Certificate cert;
  cert.kind = CertificateKind::ProductBasis;

  cert.checks.push_back(
      {"cardinality", static_cast<double>(basis.cardinality()), 0.0, basis.cardinality() >= 1});

  // (a) every state is product: second Schmidt coefficient across each
  // single-subsystem cut stays below 1e-8.
  double worst_second = 0.0;
  for (const auto& s : basis.states) {
    const PureState psi(basis.dims, s.composite());
    worst_second = std::max(worst_second, second_schmidt_coefficient(psi));
  }
  cert.checks.push_back({"product_second_schmidt", worst_second, 1e-8, worst_second < 1e-8});

  // (b) linear independence.
  const int rank = svd(basis.stacked()).rank();
  cert.checks.push_back({"stacked_rank", static_cast<double>(rank), 0.0,
                         rank == basis.cardinality()});

  // (c) span equality with the expected subspace.
  const double span_gap =
      (basis.span().projector() - expected_span.projector()).norm();
  cert.checks.push_back({"span_projector_gap", span_gap, 1e-9, span_gap < 1e-9});

  // (d) orthogonality flag consistency.
  const double offdiag = max_offdiagonal_overlap(basis);
  const bool flag_ok = basis.orthogonal ? offdiag < 1e-10 : offdiag > 1e-10;
  cert.checks.push_back({"orthogonality_flag", offdiag, 1e-10, flag_ok});

  cert.status = cert.all_pass() ? CertificateStatus::Proven : CertificateStatus::Undetermined;
  return cert;
}

Certificate verify_upb(const ProductBasis& basis, const SeesawOptions& opts) {
  const Subspace own_span = basis.span();
  const Certificate pre = verify_product_basis(basis, own_span);
  if (!pre.all_pass())
    throw std::invalid_argument("verify_upb: input fails the product-basis checks");
  if (own_span.dimension() >= own_span.dims().total() || basis.claimed_complement_dim == 0)
    throw std::invalid_argument("verify_upb: basis spans the whole space, not a UPB");

  Certificate cert;
  cert.kind = CertificateKind::Upb;
  cert.checks = pre.checks;

  const Subspace complement = orthogonal_complement(own_span);
  const int comp_dim = complement.dimension();
  cert.checks.push_back({"complement_dimension", static_cast<double>(comp_dim), 0.0,
                         comp_dim == basis.claimed_complement_dim});

  if (comp_dim == 1) {
    // Analytic branch: a one-dimensional complement contains a product state
    // iff its spanning vector is product.
    const PureState spanning(basis.dims, complement.basis().col(0));
    const double second = second_schmidt_coefficient(spanning);
    cert.checks.push_back({"complement_entangled_schmidt", second, 1e-8, second > 1e-8});
    cert.status = cert.all_pass() ? CertificateStatus::Proven : CertificateStatus::Undetermined;
    return cert;
  }

  const SeesawResult seesaw =
      basis.dims.size() == 2
          ? seesaw_max_product_overlap(complement, Bipartition({0}), opts.restarts,
                                       opts.max_iters, opts.seed, opts.convergence_gain)
          : seesaw_max_product_overlap_fully_separated(complement, opts.restarts,
                                                       opts.max_iters, opts.seed,
                                                       opts.convergence_gain);
  const bool gap_ok = seesaw.best_overlap <= 1.0 - 1e-4;
  cert.checks.push_back({"seesaw_best_overlap", seesaw.best_overlap, 1e-4, gap_ok});
  cert.status = (cert.all_pass() && gap_ok) ? CertificateStatus::NumericalEvidence
                                            : CertificateStatus::Undetermined;
  return cert;
}

Certificate verify_ppt_uncompletable(const Subspace& sub,
                                     const DensityOperator& full_support_ppt_witness,
                                     const DensityOperator& complement_ppt_witness,
                                     double tol) {
  const DimVec dims = sub.dims();
  if (full_support_ppt_witness.dims() != dims || complement_ppt_witness.dims() != dims)
    throw std::invalid_argument("verify_ppt_uncompletable: dims mismatch");
  const Bipartition cut({0});

  Certificate cert;
  cert.kind = CertificateKind::PptUncompletable;

  // (a) full-support witness: PPT and supported on exactly `sub`.
  const PptResult full_ppt = is_ppt(full_support_ppt_witness.matrix(), dims, cut, tol);
  cert.checks.push_back(
      {"witness_full_ppt_min_eig", full_ppt.min_pt_eigenvalue, tol, full_ppt.verdict});
  const Subspace full_support = support(full_support_ppt_witness);
  const double support_gap = (full_support.projector() - sub.projector()).norm();
  cert.checks.push_back({"witness_full_support_gap", support_gap, 1e-9, support_gap < 1e-9});

  // (b) complement witness: PPT, supported strictly inside the complement.
  const Subspace complement = orthogonal_complement(sub);
  const PptResult comp_ppt = is_ppt(complement_ppt_witness.matrix(), dims, cut, tol);
  cert.checks.push_back(
      {"witness_comp_ppt_min_eig", comp_ppt.min_pt_eigenvalue, tol, comp_ppt.verdict});
  const Subspace comp_support = support(complement_ppt_witness);
  const double containment =
      (complement.projector() * comp_support.projector() - comp_support.projector()).norm();
  cert.checks.push_back({"witness_comp_containment_gap", containment, 1e-9,
                         containment < 1e-9});
  const int slack = complement.dimension() - comp_support.dimension();
  cert.checks.push_back({"witness_comp_strictly_inside", static_cast<double>(slack), 0.0,
                         slack > 0});

  // (c) structural argument for the 5x5 bundle shape: projecting the
  // complement locally onto levels {3,4} leaves exactly the chi line, and chi
  // is NPT, so no PPT operator in the complement can touch chi. Local
  // projections preserve PPT, hence no PPT operator has full support there.
  const bool instance_shape = dims == DimVec{5, 5};
  if (instance_shape) {
    ComplexMatrix p2 = ComplexMatrix::Zero(5, 5);
    p2(3, 3) = 1.0;
    p2(4, 4) = 1.0;
    const ComplexMatrix local = kron(p2, ComplexMatrix::Identity(5, 5));
    const ComplexMatrix projected = local * complement.projector() * local;

    ComplexVector chi = ComplexVector::Zero(25);
    chi[3 * 5 + 3] = 1.0 / std::sqrt(2.0);
    chi[4 * 5 + 4] = -1.0 / std::sqrt(2.0);
    const ComplexMatrix chi_proj = chi * chi.adjoint();

    const double projection_gap = (projected - chi_proj).norm();
    cert.checks.push_back({"structural_projection_rank1_gap", projection_gap, 1e-10,
                           projection_gap < 1e-10});
    const double chi_min_pt = is_ppt(chi_proj, dims, cut, tol).min_pt_eigenvalue;
    cert.checks.push_back({"structural_chi_pt_min_eig", chi_min_pt, 1e-9,
                           std::abs(chi_min_pt + 0.5) < 1e-9});
    cert.status =
        cert.all_pass() ? CertificateStatus::Proven : CertificateStatus::Undetermined;
  } else {
    cert.status = CertificateStatus::Undetermined;
  }
  return cert;
}

Certificate upgrade_upb_with_structural(Certificate upb, const Certificate& uncompletable) {
  const CertificateCheck* rank1 = uncompletable.find("structural_projection_rank1_gap");
  const CertificateCheck* chi_npt = uncompletable.find("structural_chi_pt_min_eig");
  const bool structural_ok = uncompletable.status == CertificateStatus::Proven &&
                             rank1 != nullptr && rank1->pass &&
                             chi_npt != nullptr && chi_npt->pass;
  upb.checks.push_back({"complement_entangled_structural",
                        structural_ok ? 1.0 : 0.0, 0.0, structural_ok});
  if (structural_ok && upb.all_pass()) upb.status = CertificateStatus::Proven;
  return upb;
}

std::vector<Bipartition> enumerate_bipartitions(const DimVec& dims) {
  const int k = dims.size();
  if (k < 2) throw std::invalid_argument("enumerate_bipartitions: need >= 2 subsystems");
  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 1; mask + 1 < (1u << k); ++mask) {
    std::vector<int> a;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) a.push_back(i);
    subsets.push_back(std::move(a));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  auto order_key = [](const std::vector<int>& s) {
    return std::pair<size_t, std::vector<int>>(s.size(), s);
  };
  std::vector<Bipartition> cuts;
  for (const auto& a : subsets) {
    std::vector<int> b;
    for (int i = 0; i < k; ++i)
      if (!std::binary_search(a.begin(), a.end(), i)) b.push_back(i);
    if (order_key(a) <= order_key(b)) cuts.emplace_back(a);
  }
  return cuts;
}

Certificate check_bipartition_ppt_necessity(const DensityOperator& sigma1, const DensityOperator& sigma2,
                        double tol) {
  if (sigma1.dims() != sigma2.dims())
    throw std::invalid_argument("check_bipartition_ppt_necessity: dims mismatch");
  const DimVec dims = sigma1.dims();

  Certificate cert;
  cert.kind = CertificateKind::BipartitionPptNecessity;

  const ComplexMatrix pi1 = support(sigma1).projector();
  const ComplexMatrix pi2 = support(sigma2).projector();
  const long n = dims.total();

  const double completeness =
      (pi1 + pi2 - ComplexMatrix::Identity(n, n)).norm();
  cert.checks.push_back({"support_completeness", completeness, 1e-10, completeness < 1e-10});

  const double t11 = (sigma1.matrix() * pi1).trace().real();
  const double t12 = (sigma1.matrix() * pi2).trace().real();
  const double t21 = (sigma2.matrix() * pi1).trace().real();
  const double t22 = (sigma2.matrix() * pi2).trace().real();
  cert.checks.push_back({"tr_sigma1_pi1", t11, 1e-10, std::abs(t11 - 1.0) < 1e-10});
  cert.checks.push_back({"tr_sigma1_pi2", t12, 1e-10, std::abs(t12) < 1e-10});
  cert.checks.push_back({"tr_sigma2_pi1", t21, 1e-10, std::abs(t21) < 1e-10});
  cert.checks.push_back({"tr_sigma2_pi2", t22, 1e-10, std::abs(t22 - 1.0) < 1e-10});

  for (const Bipartition& cut : enumerate_bipartitions(dims)) {
    std::ostringstream name;
    name << "cut_";
    for (size_t i = 0; i < cut.side_a.size(); ++i) {
      if (i) name << ",";
      name << cut.side_a[i];
    }
    const PptResult r1 = is_ppt(pi1, dims, cut, tol);
    const PptResult r2 = is_ppt(pi2, dims, cut, tol);
    cert.checks.push_back(
        {"pt_pi1_" + name.str(), r1.min_pt_eigenvalue, tol, r1.verdict});
    cert.checks.push_back(
        {"pt_pi2_" + name.str(), r2.min_pt_eigenvalue, tol, r2.verdict});
  }

  cert.status = cert.all_pass() ? CertificateStatus::Proven : CertificateStatus::Undetermined;
  return cert;
}

}  // namespace upb
