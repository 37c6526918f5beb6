#include <doctest.h>

#include "test_support.hpp"
#include "upb/verify.hpp"

using namespace upb;
using upb::testing::bell_state;
using upb::testing::ket;

TEST_CASE("verify_product_basis accepts the closed-form sets") {
  const PureState bell = bell_state();
  const ProductBasis triple = build_complement_nupb(bell);
  const Certificate cert = verify_product_basis(triple, orthogonal_complement(bell));
  CHECK(cert.all_pass());
  CHECK(cert.status == CertificateStatus::Proven);
  CHECK(cert.find("cardinality")->value == doctest::Approx(3.0));

  const ProductBasis tiles = build_tiles_upb();
  const Certificate tiles_cert = verify_product_basis(tiles, tiles.span());
  CHECK(tiles_cert.all_pass());
  CHECK(tiles_cert.find("orthogonality_flag")->pass);
}

TEST_CASE("verify_product_basis flags duplicated states as rank-deficient") {
  ProductBasis dup = build_tiles_upb();
  dup.states.push_back(dup.states[0]);
  const Certificate cert = verify_product_basis(dup, dup.span());
  CHECK_FALSE(cert.find("stacked_rank")->pass);
  CHECK(cert.status != CertificateStatus::Proven);
}

TEST_CASE("seesaw finds the Bell overlap and saturates on product spans") {
  const PureState bell = bell_state();
  ComplexMatrix line(4, 1);
  line.col(0) = bell.amplitudes();
  const Subspace bell_line(bell.dims(), line);
  const SeesawResult r =
      seesaw_max_product_overlap(bell_line, Bipartition({0}), 20, 200, 7);
  CHECK(r.best_overlap == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r.converged);
  CHECK(r.log_is_monotone());

  ComplexMatrix prod(4, 1);
  prod.col(0) = kron(ket(2, 0), ket(2, 0));
  const SeesawResult p = seesaw_max_product_overlap(
      Subspace(DimVec{2, 2}, prod), Bipartition({0}), 5, 100, 7);
  CHECK(p.best_overlap == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("seesaw on one-dimensional spans equals the top Schmidt weight") {
  Rng rng(41);
  const Bipartition cut({0});
  for (int trial = 0; trial < 100; ++trial) {
    const PureState psi = upb::testing::random_pure(rng, DimVec{3, 3});
    ComplexMatrix line(9, 1);
    line.col(0) = psi.amplitudes();
    const SeesawResult r = seesaw_max_product_overlap(
        Subspace(psi.dims(), line), cut, 12, 300, 1000 + trial);
    const double top = schmidt_decompose(psi, cut).coefficients[0];
    CHECK(std::abs(r.best_overlap - top * top) < 1e-8);
    CHECK(r.log_is_monotone());
  }
}

TEST_CASE("seesaw runs are reproducible for a fixed seed") {
  const ProductBasis tiles = build_tiles_upb();
  const Subspace complement = orthogonal_complement(tiles.span());
  const SeesawResult a =
      seesaw_max_product_overlap(complement, Bipartition({0}), 25, 200, 5);
  const SeesawResult b =
      seesaw_max_product_overlap(complement, Bipartition({0}), 25, 200, 5);
  CHECK(a.best_overlap == b.best_overlap);
  CHECK(a.iterations_used == b.iterations_used);
  CHECK(a.objective_log == b.objective_log);
  for (size_t k = 0; k < a.best_factors.size(); ++k)
    CHECK((a.best_factors[k] - b.best_factors[k]).norm() == 0.0);
}

TEST_CASE("verify_upb: analytic branch, seesaw branch, and rejection") {
  Rng rng(42);
  const PureState psi = upb::testing::random_entangled_pure(rng, 2, 3, 2);
  const Certificate analytic = verify_upb(build_complement_nupb(psi));
  CHECK(analytic.status == CertificateStatus::Proven);
  CHECK(analytic.find("complement_entangled_schmidt") != nullptr);

  SeesawOptions opts;
  opts.restarts = 60;
  opts.seed = 3;
  const Certificate tiles_cert = verify_upb(build_tiles_upb(), opts);
  CHECK(tiles_cert.status == CertificateStatus::NumericalEvidence);
  CHECK(tiles_cert.find("seesaw_best_overlap")->value < 1.0 - 1e-3);

  // A full-space product basis is not a UPB at all.
  ProductBasis full;
  full.dims = DimVec{2, 2};
  full.orthogonal = true;
  full.claimed_complement_dim = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      full.states.emplace_back(std::vector<ComplexVector>{ket(2, i), ket(2, j)});
  CHECK_THROWS_AS(verify_upb(full), std::invalid_argument);
}

TEST_CASE("verify_upb certifies every random complement construction") {
  Rng rng(43);
  for (const auto& [d1, d2] : std::vector<std::pair<int, int>>{
           {2, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 5}, {5, 5}}) {
    const PureState psi =
        upb::testing::random_entangled_pure(rng, d1, d2, std::min(d1, d2));
    const ProductBasis basis = build_complement_nupb(psi);
    const Certificate pb = verify_product_basis(basis, orthogonal_complement(psi));
    CHECK(pb.status == CertificateStatus::Proven);
    const Certificate cert = verify_upb(basis);
    CHECK(cert.status == CertificateStatus::Proven);
  }
}

TEST_CASE("ppt-uncompletability of the 5x5 bundle is proven structurally") {
  const CupbBundle bundle = build_cupb_bundle();
  const Certificate cert =
      verify_ppt_uncompletable(bundle.cupb.span(), bundle.rho1, bundle.rho2);
  CHECK(cert.status == CertificateStatus::Proven);
  CHECK(cert.find("structural_projection_rank1_gap")->value < 1e-10);
  CHECK(cert.find("structural_chi_pt_min_eig")->value ==
        doctest::Approx(-0.5).epsilon(1e-9));

  SeesawOptions opts;
  opts.restarts = 40;
  opts.seed = 11;
  Certificate upb_cert = verify_upb(bundle.cupb, opts);
  CHECK(upb_cert.status == CertificateStatus::NumericalEvidence);
  upb_cert = upgrade_upb_with_structural(upb_cert, cert);
  CHECK(upb_cert.status == CertificateStatus::Proven);
}

TEST_CASE("ppt-uncompletability falls back to UNDETERMINED off the bundle shape") {
  // Tiles in 3x3: the complement witness has full complement support, so the
  // strictness check fails, and no structural branch exists for this shape.
  const ProductBasis tiles = build_tiles_upb();
  ComplexMatrix mix = ComplexMatrix::Zero(9, 9);
  for (const auto& s : tiles.states) {
    const ComplexVector v = s.composite();
    mix += 0.2 * v * v.adjoint();
  }
  const DensityOperator witness_full(tiles.dims, mix);
  const DensityOperator witness_comp = bound_entangled_from_oupb(tiles);
  const Certificate cert =
      verify_ppt_uncompletable(tiles.span(), witness_full, witness_comp);
  CHECK(cert.status == CertificateStatus::Undetermined);
  CHECK_FALSE(cert.find("witness_comp_strictly_inside")->pass);
  CHECK(cert.find("structural_projection_rank1_gap") == nullptr);
}

TEST_CASE("local projections preserve PPT on random separable inputs") {
  Rng rng(44);
  const DimVec dims{5, 5};
  ComplexMatrix p2 = ComplexMatrix::Zero(5, 5);
  p2(3, 3) = 1.0;
  p2(4, 4) = 1.0;
  const ComplexMatrix local = kron(p2, ComplexMatrix::Identity(5, 5));
  for (int trial = 0; trial < 10; ++trial) {
    const DensityOperator sep = upb::testing::random_separable_density(rng, dims, 8);
    const ComplexMatrix projected = local * sep.matrix() * local;
    CHECK(min_eigenvalue(partial_transpose(projected, dims, {1})) >= -1e-9);
  }
}

TEST_CASE("ppt-necessity check passes the three-qubit bundle and fails a GHZ swap") {
  const ThreeQubitBundle bundle = build_three_qubit_bundle();
  const Certificate good = check_bipartition_ppt_necessity(bundle.sigma1, bundle.sigma2);
  CHECK(good.status == CertificateStatus::Proven);
  CHECK(good.find("support_completeness")->value < 1e-12);
  int ppt_rows = 0;
  for (const auto& c : good.checks)
    if (c.name.rfind("pt_pi", 0) == 0) {
      ++ppt_rows;
      CHECK(c.value >= -1e-10);
    }
  CHECK(ppt_rows == 6);

  ComplexVector ghz = ComplexVector::Zero(8);
  ghz[0] = 1.0 / std::sqrt(2.0);
  ghz[7] = 1.0 / std::sqrt(2.0);
  const DensityOperator ghz_state =
      DensityOperator::from_pure(PureState(DimVec{2, 2, 2}, ghz));
  const Certificate bad = check_bipartition_ppt_necessity(bundle.sigma1, ghz_state);
  CHECK(bad.status != CertificateStatus::Proven);
  CHECK_FALSE(bad.find("support_completeness")->pass);
  // The GHZ projector is NPT across the 2x4 cut {0}|{1,2}.
  CHECK_FALSE(bad.find("pt_pi2_cut_0")->pass);
  CHECK(bad.find("pt_pi2_cut_0")->value == doctest::Approx(-0.5).epsilon(1e-9));
}

TEST_CASE("bipartition enumeration is canonical and duplicate-free") {
  const std::vector<Bipartition> cuts3 = enumerate_bipartitions(DimVec{2, 2, 2});
  REQUIRE(cuts3.size() == 3);
  CHECK(cuts3[0].side_a == std::vector<int>{0});
  CHECK(cuts3[1].side_a == std::vector<int>{1});
  CHECK(cuts3[2].side_a == std::vector<int>{2});

  const std::vector<Bipartition> cuts2 = enumerate_bipartitions(DimVec{2, 3});
  REQUIRE(cuts2.size() == 1);
  CHECK(cuts2[0].side_a == std::vector<int>{0});

  const std::vector<Bipartition> cuts4 = enumerate_bipartitions(DimVec{2, 2, 2, 2});
  REQUIRE(cuts4.size() == 7);  // 4 singletons + 3 balanced pairs
  CHECK(cuts4[4].side_a == std::vector<int>{0, 1});
  CHECK(cuts4[5].side_a == std::vector<int>{0, 2});
  CHECK(cuts4[6].side_a == std::vector<int>{0, 3});
}
