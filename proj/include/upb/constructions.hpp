#pragma once

#include <map>
#include <string>
#include <vector>

#include "upb/states.hpp"

namespace upb {

// Ordered list of product states spanning a subspace, with cardinality and
// complement bookkeeping. `orthogonal` flags a pairwise-orthogonal set.
struct ProductBasis {
  DimVec dims;
  std::vector<ProductState> states;
  bool orthogonal = false;
  int claimed_complement_dim = 0;
  std::map<std::string, std::string> meta;

  int cardinality() const { return static_cast<int>(states.size()); }

  // Composite state vectors as columns, in listed order.
  ComplexMatrix stacked() const;

  // Orthonormal span of the states.
  Subspace span(double tol = kRankTol) const;
};

// Product states spanning the orthogonal complement of an entangled bipartite
// pure state. Exactly d1*d2 - 1 states, linearly independent, each orthogonal
// to psi. Works in the Schmidt local bases and rotates back, so arbitrary
// entangled inputs are accepted. Schmidt rank 1 inputs are rejected.
ProductBasis build_complement_nupb(const PureState& psi);

struct NptSubspaceBundle {
  ProductBasis nupb;      // 4 product states in C2 (x) C3
  Subspace npt_subspace;  // 2-dimensional, every state has nonpositive PT
};

NptSubspaceBundle build_npt_nupb_2x3();

// The five-state orthogonal Tiles basis in C3 (x) C3.
ProductBasis build_tiles_upb();

// Normalized projector onto the complement of an orthogonal product basis:
// (I - P_span) / (D - cardinality). Positive under partial transposition of
// any subsystem subset because the complement projector of an orthogonal
// product set is again a sum of orthogonal product projectors after PT.
DensityOperator bound_entangled_from_oupb(const ProductBasis& oupb);

// Everything derived from the 20-state basis in C5 (x) C5: the four block
// subspaces, the basis itself, the three ensemble states, the rank-4
// measurement projector, and the ladder vector chi = (|33> - |44>)/sqrt(2).
struct CupbBundle {
  ProductBasis cupb;
  DensityOperator rho1;  // uniform mixture of the 20 product projectors
  DensityOperator rho2;  // Tiles bound entangled state embedded in the 5x5 space
  DensityOperator rho3;  // projector onto chi
  ComplexMatrix p_prime; // support projector of rho2 (rank 4)
  PureState chi;
  Subspace s1, s2, s3, s4;
};

CupbBundle build_cupb_bundle();

// Three-qubit Shifts basis with the separable/bound-entangled state pair it
// seeds: sigma1 mixes the four product projectors, sigma2 is the normalized
// complement projector.
struct ThreeQubitBundle {
  ProductBasis oupb;
  DensityOperator sigma1;
  DensityOperator sigma2;
};

ThreeQubitBundle build_three_qubit_bundle();

}  // namespace upb
