#include <doctest.h>

#include "test_support.hpp"
#include "upb/feasibility.hpp"

using namespace upb;
using upb::testing::bell_state;
using upb::testing::ket;

TEST_CASE("validate_povm on the bundle projector, a Bell pair, and the identity") {
  const CupbBundle bundle = build_cupb_bundle();
  const Bipartition cut({0});

  const PovmValidation pp =
      validate_povm(PovmPair::from_element(bundle.p_prime), DimVec{5, 5}, cut);
  CHECK(pp.valid);
  CHECK(pp.ppt);
  CHECK(pp.min_pt_eig_element >= -1e-10);
  CHECK(pp.min_pt_eig_complement >= -1e-10);

  const PovmValidation bell =
      validate_povm(PovmPair::from_element(bell_state().projector()), DimVec{2, 2}, cut);
  CHECK(bell.valid);
  CHECK_FALSE(bell.ppt);
  CHECK(bell.min_pt_eig_element == doctest::Approx(-0.5).epsilon(1e-9));

  const PovmValidation trivial = validate_povm(
      PovmPair::from_element(ComplexMatrix::Identity(4, 4)), DimVec{2, 2}, cut);
  CHECK(trivial.valid);
  CHECK(trivial.ppt);
}

TEST_CASE("solver confirms the feasible bundle direction with the projector witness") {
  const CupbBundle bundle = build_cupb_bundle();
  const FeasibilityResult r =
      ppt_povm_two_state(bundle.rho2, bundle.rho1, Bipartition({0}), 10000);
  CHECK(r.status == FeasibilityStatus::Feasible);
  REQUIRE(r.witness.has_value());
  CHECK((r.witness->element - bundle.p_prime).norm() < 1e-8);
  CHECK(r.iterations == 1);
}

TEST_CASE("solver reports evidence of infeasibility for the chi direction") {
  const CupbBundle bundle = build_cupb_bundle();
  const FeasibilityResult r =
      ppt_povm_two_state(bundle.rho3, bundle.rho1, Bipartition({0}), 1500);
  CHECK(r.status == FeasibilityStatus::InfeasibleEvidence);
  CHECK(r.best_objective <= 1.0 - 1e-3);
  CHECK(r.iterations == 1500);
  CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("solver is exact on a classical-like pair") {
  const DimVec dims{2, 2};
  const DensityOperator zero =
      DensityOperator::from_pure(PureState(dims, kron(ket(2, 0), ket(2, 0))));
  const DensityOperator one =
      DensityOperator::from_pure(PureState(dims, kron(ket(2, 1), ket(2, 1))));
  const FeasibilityResult r = ppt_povm_two_state(zero, one, Bipartition({0}));
  CHECK(r.status == FeasibilityStatus::Feasible);
  REQUIRE(r.witness.has_value());
  CHECK((r.witness->element - zero.matrix()).norm() < 1e-10);
}

TEST_CASE("solver iterates to a PPT witness when the start is NPT") {
  // Target: Bell projector. Other: |01><01|. The start E = |Bell><Bell| is
  // not PPT, but the diagonal completion of the complement is, so the run
  // must move and still end FEASIBLE.
  const DimVec dims{2, 2};
  const DensityOperator target = DensityOperator::from_pure(bell_state());
  const DensityOperator other =
      DensityOperator::from_pure(PureState(dims, kron(ket(2, 0), ket(2, 1))));
  const FeasibilityResult r = ppt_povm_two_state(target, other, Bipartition({0}));
  CHECK(r.status == FeasibilityStatus::Feasible);
  REQUIRE(r.witness.has_value());
  CHECK(r.iterations > 1);

  const PovmValidation check =
      validate_povm(*r.witness, dims, Bipartition({0}), 1e-8);
  CHECK(check.valid);
  CHECK(check.ppt);
  CHECK((target.matrix() * r.witness->element).trace().real() >= 1.0 - 1e-8);
  CHECK(std::abs((other.matrix() * r.witness->element).trace().real()) <= 1e-8);
}

TEST_CASE("solver rejects non-orthogonal inputs") {
  const DimVec dims{2, 2};
  const DensityOperator a = DensityOperator::from_pure(bell_state());
  CHECK_THROWS_AS(ppt_povm_two_state(a, a, Bipartition({0})), std::invalid_argument);
}

TEST_CASE("solver runs are deterministic and settle monotonically") {
  const CupbBundle bundle = build_cupb_bundle();
  const FeasibilityResult a =
      ppt_povm_two_state(bundle.rho3, bundle.rho1, Bipartition({0}), 400);
  const FeasibilityResult b =
      ppt_povm_two_state(bundle.rho3, bundle.rho1, Bipartition({0}), 400);
  REQUIRE(a.residual_log.size() == b.residual_log.size());
  for (size_t k = 0; k < a.residual_log.size(); ++k)
    for (int j = 0; j < 4; ++j) CHECK(a.residual_log[k][j] == b.residual_log[k][j]);

  // Worst violation per cycle is nonincreasing once the transient passes.
  auto worst = [](const ResidualRow& r) {
    return std::max(std::max(r[0], r[1]), std::max(r[2], r[3]));
  };
  for (size_t k = 10; k + 1 < a.residual_log.size(); ++k)
    CHECK(worst(a.residual_log[k + 1]) <= worst(a.residual_log[k]) + 1e-12);
}

TEST_CASE("structural infeasibility certificate is proven and agrees with the solver") {
  const CupbBundle bundle = build_cupb_bundle();
  const Certificate cert = structural_infeasibility_cupb(bundle);
  CHECK(cert.status == CertificateStatus::Proven);
  CHECK(cert.all_pass());
  CHECK(cert.find("rho1_support_dimension")->value == doctest::Approx(20.0));

  const FeasibilityResult solver =
      ppt_povm_two_state(bundle.rho3, bundle.rho1, Bipartition({0}), 1500);
  CHECK(solver.status != FeasibilityStatus::Feasible);

  // Swapping rho3 for rho2 flips the verdict.
  const FeasibilityResult swapped =
      ppt_povm_two_state(bundle.rho2, bundle.rho1, Bipartition({0}), 1500);
  CHECK(swapped.status == FeasibilityStatus::Feasible);
}
