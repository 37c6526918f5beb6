#include "upb/constructions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace upb {

namespace {

ComplexVector basis_vector(int dim, int index) {
  ComplexVector v = ComplexVector::Zero(dim);
  v[index] = 1.0;
  return v;
}

std::string format_scale(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

ComplexMatrix ProductBasis::stacked() const {
  ComplexMatrix m(dims.total(), cardinality());
  for (int k = 0; k < cardinality(); ++k) m.col(k) = states[k].composite();
  return m;
}

Subspace ProductBasis::span(double tol) const {
  std::vector<ComplexVector> vecs;
  vecs.reserve(states.size());
  for (const auto& s : states) vecs.push_back(s.composite());
  return Subspace(dims, orthonormalize(vecs, tol));
}

ProductBasis build_complement_nupb(const PureState& psi) {
  if (psi.dims().size() != 2)
    throw std::invalid_argument("build_complement_nupb: state must be bipartite");
  const int d1 = psi.dims()[0];
  const int d2 = psi.dims()[1];
  const Bipartition cut({0});
  const SchmidtResult schmidt = schmidt_decompose(psi, cut);
  const int r = schmidt.rank;
  if (r < 2)
    throw std::invalid_argument("build_complement_nupb: input is a product state");

  // Work with labels in the Schmidt local bases, then rotate back through the
  // local unitaries. Label x on side A is column x of schmidt.left_vectors.
  const ComplexMatrix& ua = schmidt.left_vectors;
  const ComplexMatrix& ub = schmidt.right_vectors;
  const RealVector& a = schmidt.coefficients;

  ProductBasis basis;
  basis.dims = psi.dims();
  basis.orthogonal = false;
  basis.claimed_complement_dim = 1;

  auto emit = [&](const ComplexVector& fa, const ComplexVector& fb) {
    basis.states.emplace_back(std::vector<ComplexVector>{ua * fa, ub * fb});
  };

  // One three-state block per label i = 1..r-1, pairing it with label 0:
  //   (a_i|0> - a_0|i>)(|0'> + |i'>),  |0>|i'>,  |i>|0'>.
  for (int i = 1; i < r; ++i) {
    ComplexVector fa = a[i] * basis_vector(d1, 0) - a[0] * basis_vector(d1, i);
    const double na = fa.norm();
    ComplexVector fb = basis_vector(d2, 0) + basis_vector(d2, i);
    const double nb = fb.norm();
    basis.meta["normalization_" + std::to_string(basis.states.size())] =
        format_scale(na * nb);
    emit(fa / na, fb / nb);
    emit(basis_vector(d1, 0), basis_vector(d2, i));
    emit(basis_vector(d1, i), basis_vector(d2, 0));
  }

  // Off-diagonal label pairs inside the Schmidt block.
  for (int i1 = 1; i1 < r; ++i1)
    for (int i2 = 1; i2 < r; ++i2)
      if (i1 != i2) emit(basis_vector(d1, i1), basis_vector(d2, i2));

  // Everything touching a label beyond the Schmidt rank.
  for (int j1 = 0; j1 < d1; ++j1)
    for (int j2 = 0; j2 < d2; ++j2)
      if (j1 >= r || j2 >= r) emit(basis_vector(d1, j1), basis_vector(d2, j2));

  return basis;
}

NptSubspaceBundle build_npt_nupb_2x3() {
  const DimVec dims{2, 3};
  auto ket2 = [&](int x) { return basis_vector(2, x); };
  auto ket3 = [&](int x) { return basis_vector(3, x); };

  ProductBasis nupb;
  nupb.dims = dims;
  nupb.orthogonal = false;
  nupb.claimed_complement_dim = 2;
  nupb.states.emplace_back(
      std::vector<ComplexVector>{ket2(0) + ket2(1), ket3(0) + ket3(1) + ket3(2)});
  nupb.states.emplace_back(
      std::vector<ComplexVector>{ket2(0) - ket2(1), ket3(0) - ket3(1) + ket3(2)});
  nupb.states.emplace_back(std::vector<ComplexVector>{ket2(0), ket3(0)});
  nupb.states.emplace_back(std::vector<ComplexVector>{ket2(1), ket3(2)});
  nupb.meta["normalization_0"] = format_scale(std::sqrt(6.0));
  nupb.meta["normalization_1"] = format_scale(std::sqrt(6.0));

  // |0>|1> - |1>|0| and |0>|2> - |1>|1>, normalized; they are orthogonal.
  ComplexMatrix basis = ComplexMatrix::Zero(6, 2);
  basis(1, 0) = 1.0 / std::sqrt(2.0);   // |01>
  basis(3, 0) = -1.0 / std::sqrt(2.0);  // |10>
  basis(2, 1) = 1.0 / std::sqrt(2.0);   // |02>
  basis(4, 1) = -1.0 / std::sqrt(2.0);  // |11>
  return {nupb, Subspace(dims, basis)};
}

ProductBasis build_tiles_upb() {
  auto ket = [&](int x) { return basis_vector(3, x); };
  ProductBasis tiles;
  tiles.dims = DimVec{3, 3};
  tiles.orthogonal = true;
  tiles.claimed_complement_dim = 4;
  tiles.states.emplace_back(std::vector<ComplexVector>{ket(0), ket(0) - ket(1)});
  tiles.states.emplace_back(std::vector<ComplexVector>{ket(0) - ket(1), ket(2)});
  tiles.states.emplace_back(std::vector<ComplexVector>{ket(2), ket(1) - ket(2)});
  tiles.states.emplace_back(std::vector<ComplexVector>{ket(1) - ket(2), ket(0)});
  tiles.states.emplace_back(
      std::vector<ComplexVector>{ket(0) + ket(1) + ket(2), ket(0) + ket(1) + ket(2)});
  for (int k = 0; k < 4; ++k)
    tiles.meta["normalization_" + std::to_string(k)] = format_scale(std::sqrt(2.0));
  tiles.meta["normalization_4"] = format_scale(3.0);
  return tiles;
}

DensityOperator bound_entangled_from_oupb(const ProductBasis& oupb) {
  if (!oupb.orthogonal)
    throw std::invalid_argument("bound_entangled_from_oupb: basis is not orthogonal");
  const long total = oupb.dims.total();
  const int card = oupb.cardinality();
  if (card >= total)
    throw std::invalid_argument("bound_entangled_from_oupb: basis spans whole space");
  ComplexMatrix proj = ComplexMatrix::Zero(total, total);
  for (const auto& s : oupb.states) {
    const ComplexVector v = s.composite();
    proj += v * v.adjoint();
  }
  const ComplexMatrix complement =
      ComplexMatrix::Identity(total, total) - proj;
  return DensityOperator(oupb.dims, complement / static_cast<double>(total - card));
}

namespace {

Subspace block_subspace(const DimVec& dims, const std::vector<int>& rows_a,
                        const std::vector<int>& rows_b) {
  ComplexMatrix basis = ComplexMatrix::Zero(
      dims.total(), static_cast<long>(rows_a.size() * rows_b.size()));
  int col = 0;
  for (int i : rows_a)
    for (int j : rows_b) basis(static_cast<long>(i) * dims[1] + j, col++) = 1.0;
  return Subspace(dims, basis);
}

// Re-expresses a product state on C3 (x) C3 as one on C5 (x) C5 supported on
// the first three levels of each side.
ProductState embed_3to5(const ProductState& s) {
  std::vector<ComplexVector> factors;
  for (const auto& f : s.factors()) {
    ComplexVector g = ComplexVector::Zero(5);
    g.head(3) = f;
    factors.push_back(g);
  }
  return ProductState(factors);
}

}  // namespace

CupbBundle build_cupb_bundle() {
  const DimVec dims{5, 5};
  const long n = dims.total();
  auto ket = [&](int x) { return basis_vector(5, x); };

  ProductBasis cupb;
  cupb.dims = dims;
  cupb.orthogonal = false;
  cupb.claimed_complement_dim = 5;

  // Tiles inside the {0,1,2} x {0,1,2} block.
  const ProductBasis tiles = build_tiles_upb();
  for (const auto& s : tiles.states) cupb.states.push_back(embed_3to5(s));

  // Computational product bases of the {3,4} x {0,1,2} and {0,1,2} x {3,4} blocks.
  for (int i : {3, 4})
    for (int j : {0, 1, 2})
      cupb.states.emplace_back(std::vector<ComplexVector>{ket(i), ket(j)});
  for (int i : {0, 1, 2})
    for (int j : {3, 4})
      cupb.states.emplace_back(std::vector<ComplexVector>{ket(i), ket(j)});

  // Maximum-cardinality nonorthogonal set inside the {3,4} x {3,4} block.
  cupb.states.emplace_back(
      std::vector<ComplexVector>{ket(3) + ket(4), ket(3) + ket(4)});
  cupb.states.emplace_back(std::vector<ComplexVector>{ket(3), ket(4)});
  cupb.states.emplace_back(std::vector<ComplexVector>{ket(4), ket(3)});
  cupb.meta["normalization_17"] = format_scale(2.0);

  // rho1: uniform mixture of the 20 product projectors.
  ComplexMatrix rho1 = ComplexMatrix::Zero(n, n);
  for (const auto& s : cupb.states) {
    const ComplexVector v = s.composite();
    rho1 += v * v.adjoint();
  }
  rho1 /= static_cast<double>(cupb.cardinality());

  // rho2: Tiles bound entangled state, embedded in the 5x5 space.
  const DensityOperator tiles_be = bound_entangled_from_oupb(tiles);
  ComplexMatrix rho2 = ComplexMatrix::Zero(n, n);
  for (int r1 = 0; r1 < 3; ++r1)
    for (int c1 = 0; c1 < 3; ++c1)
      for (int r2 = 0; r2 < 3; ++r2)
        for (int c2 = 0; c2 < 3; ++c2)
          rho2(r1 * 5 + c1, r2 * 5 + c2) = tiles_be.matrix()(r1 * 3 + c1, r2 * 3 + c2);

  // chi and rho3.
  ComplexVector chi_vec = ComplexVector::Zero(n);
  chi_vec[3 * 5 + 3] = 1.0 / std::sqrt(2.0);
  chi_vec[4 * 5 + 4] = -1.0 / std::sqrt(2.0);
  const PureState chi(dims, chi_vec);

  CupbBundle bundle{
      std::move(cupb),
      DensityOperator(dims, rho1),
      DensityOperator(dims, rho2),
      DensityOperator::from_pure(chi),
      4.0 * rho2,
      chi,
      block_subspace(dims, {0, 1, 2}, {0, 1, 2}),
      block_subspace(dims, {3, 4}, {0, 1, 2}),
      block_subspace(dims, {0, 1, 2}, {3, 4}),
      block_subspace(dims, {3, 4}, {3, 4}),
  };
  return bundle;
}

ThreeQubitBundle build_three_qubit_bundle() {
  const DimVec dims{2, 2, 2};
  const ComplexVector zero = basis_vector(2, 0);
  const ComplexVector one = basis_vector(2, 1);
  const ComplexVector plus = zero + one;
  const ComplexVector minus = zero - one;

  ProductBasis shifts;
  shifts.dims = dims;
  shifts.orthogonal = true;
  shifts.claimed_complement_dim = 4;
  shifts.states.emplace_back(std::vector<ComplexVector>{zero, zero, zero});
  shifts.states.emplace_back(std::vector<ComplexVector>{one, plus, minus});
  shifts.states.emplace_back(std::vector<ComplexVector>{plus, minus, one});
  shifts.states.emplace_back(std::vector<ComplexVector>{minus, one, plus});
  for (int k = 1; k < 4; ++k)
    shifts.meta["normalization_" + std::to_string(k)] = format_scale(2.0);

  ComplexMatrix sigma1 = ComplexMatrix::Zero(8, 8);
  for (const auto& s : shifts.states) {
    const ComplexVector v = s.composite();
    sigma1 += v * v.adjoint();
  }
  sigma1 /= 4.0;

  const DensityOperator sigma2 = bound_entangled_from_oupb(shifts);
  return {std::move(shifts), DensityOperator(dims, sigma1), sigma2};
}

}  // namespace upb
