// upblab: build unextendible-product-basis objects and verify their
// properties — spans, unextendibility, PPT structure, PPT-POVM
// distinguishability, and many-copy indistinguishability certificates.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "upb/discrimination.hpp"
#include "upb/feasibility.hpp"
#include "upb/rng.hpp"
#include "upb/serialization.hpp"

namespace {

using namespace upb;

struct GlobalOptions {
  std::uint64_t seed = 0;
  int restarts = 200;
  double tol = 1e-9;
  bool json = false;

  SeesawOptions seesaw() const {
    SeesawOptions opts;
    opts.restarts = restarts;
    opts.seed = seed;
    return opts;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int emit(const RunReport& report, const GlobalOptions& global) {
  if (global.json)
    std::cout << report.to_json().dump(2) << "\n";
  else
    std::cout << report.to_text();
  return report.exit_code();
}

Certificate povm_certificate(const PovmValidation& validation, double tr_target,
                             double tr_other) {
  Certificate cert;
  cert.kind = CertificateKind::PptUncompletable;
  cert.checks.push_back({"min_eig_element", validation.min_eig_element, 1e-9,
                         validation.min_eig_element >= -1e-9});
  cert.checks.push_back({"min_eig_complement", validation.min_eig_complement, 1e-9,
                         validation.min_eig_complement >= -1e-9});
  cert.checks.push_back({"completeness_gap", validation.completeness_gap, 1e-12,
                         validation.completeness_gap <= 1e-12});
  cert.checks.push_back({"min_pt_eig_element", validation.min_pt_eig_element, 1e-10,
                         validation.min_pt_eig_element >= -1e-10});
  cert.checks.push_back({"min_pt_eig_complement", validation.min_pt_eig_complement,
                         1e-10, validation.min_pt_eig_complement >= -1e-10});
  cert.checks.push_back({"tr_rho2_p_prime", tr_target, 1e-12,
                         std::abs(tr_target - 1.0) < 1e-12});
  cert.checks.push_back({"tr_rho1_p_prime", tr_other, 1e-12, std::abs(tr_other) < 1e-12});
  cert.status = cert.all_pass() ? CertificateStatus::Proven
                                : CertificateStatus::Undetermined;
  return cert;
}

int run_demo_cupb(const GlobalOptions& global) {
  RunReport report;
  report.command = "demo cupb";
  const CupbBundle bundle = build_cupb_bundle();

  const Certificate uncompletable =
      verify_ppt_uncompletable(bundle.cupb.span(), bundle.rho1, bundle.rho2, global.tol);
  Certificate upb_cert = verify_upb(bundle.cupb, global.seesaw());
  upb_cert = upgrade_upb_with_structural(upb_cert, uncompletable);
  report.certificates.emplace_back("cupb_basis", upb_cert);
  report.certificates.emplace_back("cupb_ppt_uncompletable", uncompletable);

  const PovmPair p_prime_pair = PovmPair::from_element(bundle.p_prime);
  const PovmValidation validation =
      validate_povm(p_prime_pair, DimVec{5, 5}, Bipartition({0}), global.tol);
  const double tr2 = (bundle.rho2.matrix() * bundle.p_prime).trace().real();
  const double tr1 = (bundle.rho1.matrix() * bundle.p_prime).trace().real();
  report.certificates.emplace_back("povm_p_prime", povm_certificate(validation, tr2, tr1));

  // Feasible direction: {rho1, rho2} split by {P', I - P'}.
  const FeasibilityResult feasible =
      ppt_povm_two_state(bundle.rho2, bundle.rho1, Bipartition({0}), 10000, global.tol);
  Certificate feasible_cert;
  feasible_cert.kind = CertificateKind::PptUncompletable;
  feasible_cert.checks.push_back({"solver_feasible",
                                  feasible.status == FeasibilityStatus::Feasible ? 1.0 : 0.0,
                                  0.0, feasible.status == FeasibilityStatus::Feasible});
  if (feasible.witness.has_value()) {
    const double witness_gap = (feasible.witness->element - bundle.p_prime).norm();
    feasible_cert.checks.push_back(
        {"witness_matches_p_prime_gap", witness_gap, 1e-8, witness_gap < 1e-8});
  }
  feasible_cert.checks.push_back({"solver_cycles",
                                  static_cast<double>(feasible.iterations), 0.0,
                                  feasible.iterations <= 10000});
  feasible_cert.status = feasible_cert.all_pass() ? CertificateStatus::Proven
                                                  : CertificateStatus::Undetermined;
  report.certificates.emplace_back("povm_feasible_rho2_vs_rho1", feasible_cert);

  // Infeasible direction: structural proof, with the solver run as agreement.
  Certificate infeasible_cert = structural_infeasibility_cupb(bundle);
  const FeasibilityResult infeasible =
      ppt_povm_two_state(bundle.rho3, bundle.rho1, Bipartition({0}), 10000, global.tol);
  infeasible_cert.checks.push_back(
      {"solver_agreement_not_feasible",
       infeasible.status == FeasibilityStatus::Feasible ? 0.0 : 1.0, 0.0,
       infeasible.status != FeasibilityStatus::Feasible});
  infeasible_cert.checks.push_back({"solver_best_objective", infeasible.best_objective,
                                    1e-3, infeasible.best_objective <= 1.0 - 1e-3});
  if (!infeasible_cert.all_pass())
    infeasible_cert.status = CertificateStatus::Undetermined;
  report.certificates.emplace_back("povm_infeasible_rho3_vs_rho1", infeasible_cert);

  report.notes.push_back("ensembles {rho1,rho2} and {rho1,rho3} are both many-copy "
                         "LOCC-indistinguishable; only the first is PPT-POVM "
                         "distinguishable (single copy)");
  return emit(report, global);
}

int run_demo_three_qubit(const GlobalOptions& global) {
  RunReport report;
  report.command = "demo three-qubit";
  const ThreeQubitBundle bundle = build_three_qubit_bundle();
  const ThreeQubitReport tq = three_qubit_report(bundle, global.seesaw());

  report.certificates.emplace_back("full_separation_many_copy",
                                   tq.full_separation_certificate);
  report.certificates.emplace_back("bipartition_ppt_necessity", tq.ppt_necessity_certificate);

  Certificate table;
  table.kind = CertificateKind::BipartitionPptNecessity;
  for (const auto& row : tq.ppt_table)
    table.checks.push_back({row.label + "_pt_min_eig_cut_" + row.cut,
                            row.min_pt_eigenvalue, global.tol, row.ppt});
  table.status = table.all_pass() ? CertificateStatus::Proven
                                  : CertificateStatus::Undetermined;
  report.certificates.emplace_back("bipartition_ppt_table", table);

  report.notes.push_back(std::string("fragile_indistinguishability: ") +
                         (tq.fragile_indistinguishability ? "true" : "false"));
  report.notes.push_back("bipartite_distinguishability: " +
                         tq.bipartite_distinguishability);
  return emit(report, global);
}

int run_demo_npt(const GlobalOptions& global) {
  RunReport report;
  report.command = "demo npt-2x3";
  const NptSubspaceBundle bundle = build_npt_nupb_2x3();

  const Subspace expected = orthogonal_complement(bundle.npt_subspace);
  report.certificates.emplace_back("npt_2x3_basis",
                                   verify_product_basis(bundle.nupb, expected));

  // Sampled NPT certificate for the complement subspace.
  Rng rng(global.seed);
  double worst = -1.0;
  const int samples = 1000;
  for (int trial = 0; trial < samples; ++trial) {
    ComplexVector v = rng.complex_normal() * bundle.npt_subspace.basis().col(0) +
                      rng.complex_normal() * bundle.npt_subspace.basis().col(1);
    v /= v.norm();
    const ComplexMatrix proj = v * v.adjoint();
    worst = std::max(worst,
                     is_ppt(proj, bundle.nupb.dims, Bipartition({0})).min_pt_eigenvalue);
  }
  Certificate npt;
  npt.kind = CertificateKind::EntangledSubspace;
  npt.checks.push_back({"samples", static_cast<double>(samples), 0.0, true});
  npt.checks.push_back({"max_min_pt_eigenvalue", worst, 1e-3, worst < -1e-3});
  npt.status = npt.all_pass() ? CertificateStatus::NumericalEvidence
                              : CertificateStatus::Undetermined;
  report.certificates.emplace_back("npt_subspace_sampling", npt);
  return emit(report, global);
}

int run_nupb_build(const std::vector<int>& dims_arg, const std::string& schmidt_arg,
                   const std::string& out_path) {
  if (dims_arg.size() != 2)
    throw InputInvariantError("--dims expects exactly two subsystem dimensions");
  const int d1 = dims_arg[0], d2 = dims_arg[1];

  std::vector<double> coeffs;
  std::stringstream ss(schmidt_arg);
  std::string piece;
  while (std::getline(ss, piece, ','))
    coeffs.push_back(parse_double(piece, "--schmidt"));
  if (coeffs.empty() || static_cast<int>(coeffs.size()) > std::min(d1, d2))
    throw InputInvariantError("--schmidt expects 1..min(d1,d2) coefficients");

  double norm2 = 0.0;
  for (double a : coeffs) {
    if (a < 0.0) throw InputInvariantError("--schmidt coefficients must be nonnegative");
    norm2 += a * a;
  }
  if (std::abs(norm2 - 1.0) > 1e-6)
    throw InputInvariantError("--schmidt squares sum to " + format_double(norm2) +
                              "; must be within 1e-6 of 1");
  const double scale = std::sqrt(norm2);

  ComplexVector amps = ComplexVector::Zero(static_cast<long>(d1) * d2);
  for (size_t i = 0; i < coeffs.size(); ++i)
    amps[static_cast<long>(i) * d2 + static_cast<long>(i)] = coeffs[i] / scale;
  const PureState psi(DimVec{d1, d2}, amps);

  const ProductBasis basis = build_complement_nupb(psi);
  const StateFile file = StateFile::from(basis);
  if (out_path.empty()) {
    std::cout << serialize_state_file(file);
  } else {
    save_state_file(file, out_path);
    std::cout << "wrote " << out_path << " (cardinality " << basis.cardinality()
              << ", complement dimension " << basis.claimed_complement_dim << ")\n";
  }
  return 0;
}

int run_nupb_verify(const GlobalOptions& global, const std::string& path) {
  RunReport report;
  report.command = "nupb verify";
  const std::string bytes = slurp(path);
  report.inputs[path] = digest(bytes);
  const StateFile file = parse_state_file(bytes);
  if (file.kind != StateFile::Kind::ProductBasis)
    throw InputInvariantError("'" + path + "' is not a product_basis file");
  const ProductBasis& basis = *file.product_basis;

  report.certificates.emplace_back("product_basis",
                                   verify_product_basis(basis, basis.span()));
  report.certificates.emplace_back("upb", verify_upb(basis, global.seesaw()));
  return emit(report, global);
}

int run_certify_many_copy(const GlobalOptions& global, const std::string& psi_path,
                          const std::string& rho_path, int copies) {
  RunReport report;
  report.command = "certify many-copy";
  const std::string psi_bytes = slurp(psi_path);
  const std::string rho_bytes = slurp(rho_path);
  report.inputs[psi_path] = digest(psi_bytes);
  report.inputs[rho_path] = digest(rho_bytes);

  const StateFile psi_file = parse_state_file(psi_bytes);
  const StateFile rho_file = parse_state_file(rho_bytes);
  if (psi_file.kind != StateFile::Kind::Pure)
    throw InputInvariantError("--psi must point to a pure state file");
  if (rho_file.kind != StateFile::Kind::Density)
    throw InputInvariantError("--rho must point to a density file");

  const ManyCopyCertificate mc =
      many_copy_certificate(*psi_file.pure, *rho_file.density, copies, global.seesaw());
  const char* names[] = {"nupb_span", "complement_entangled", "two_copy_spot_check"};
  for (size_t k = 0; k < mc.chain.size(); ++k)
    report.certificates.emplace_back(names[std::min<size_t>(k, 2)], mc.chain[k]);
  report.notes.push_back(std::string("verdict: ") + to_string(mc.verdict));
  report.notes.push_back("copies_checked: " + std::to_string(mc.copies_checked));
  return emit(report, global);
}

int run_check_ppt(const GlobalOptions& global, const std::string& path,
                  const std::string& cut_arg) {
  RunReport report;
  report.command = "check ppt";
  const std::string bytes = slurp(path);
  report.inputs[path] = digest(bytes);
  const StateFile file = parse_state_file(bytes);
  if (file.kind != StateFile::Kind::Density)
    throw InputInvariantError("'" + path + "' is not a density file");

  std::vector<int> side;
  std::stringstream ss(cut_arg);
  std::string piece;
  while (std::getline(ss, piece, ','))
    side.push_back(static_cast<int>(parse_double(piece, "--cut")));
  const Bipartition cut(side);

  const PptResult r =
      is_ppt(file.density->matrix(), file.density->dims(), cut, global.tol);
  Certificate cert;
  cert.kind = CertificateKind::BipartitionPptNecessity;
  cert.checks.push_back({"min_pt_eigenvalue", r.min_pt_eigenvalue, global.tol, r.verdict});
  cert.status = r.verdict ? CertificateStatus::Proven : CertificateStatus::Undetermined;
  report.certificates.emplace_back("ppt", cert);
  return emit(report, global);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unextendible product bases, PPT structure, and local "
               "discrimination certificates"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOptions global;
  if (const char* env_seed = std::getenv("UPBLAB_SEED"))
    global.seed = std::strtoull(env_seed, nullptr, 10);
  app.add_option("--seed", global.seed, "random seed (default: UPBLAB_SEED or 0)");
  app.add_option("--restarts", global.restarts, "seesaw restarts")->check(CLI::PositiveNumber);
  app.add_option("--tol", global.tol, "PPT / feasibility tolerance");
  app.add_flag("--json", global.json, "machine-readable report");

  // nupb build | verify
  CLI::App* nupb = app.add_subcommand("nupb", "construct and verify product bases");
  nupb->require_subcommand(1);
  CLI::App* build = nupb->add_subcommand(
      "build", "product basis spanning the complement of a Schmidt-form state");
  std::vector<int> dims_arg;
  std::string schmidt_arg, out_path;
  build->add_option("--dims", dims_arg, "subsystem dimensions d1 d2")->expected(2)->required();
  build->add_option("--schmidt", schmidt_arg, "comma-separated Schmidt coefficients")
      ->required();
  build->add_option("--out", out_path, "output file (default: stdout)");

  CLI::App* verify = nupb->add_subcommand("verify", "verify a product_basis file");
  std::string verify_path;
  verify->add_option("file", verify_path, "product_basis JSON file")->required();

  // demo cupb | three-qubit | npt-2x3
  CLI::App* demo = app.add_subcommand("demo", "run the built-in constructions");
  demo->require_subcommand(1);
  CLI::App* demo_cupb = demo->add_subcommand("cupb", "20-state basis in C5xC5 and its ensembles");
  CLI::App* demo_tq = demo->add_subcommand("three-qubit", "Shifts basis ensemble report");
  CLI::App* demo_npt = demo->add_subcommand("npt-2x3", "4-state basis with an NPT complement");

  // certify many-copy
  CLI::App* certify = app.add_subcommand("certify", "discrimination certificates");
  certify->require_subcommand(1);
  CLI::App* many_copy = certify->add_subcommand("many-copy",
                                                "many-copy indistinguishability");
  std::string psi_path, rho_path;
  int copies = 1;
  many_copy->add_option("--psi", psi_path, "pure state file")->required();
  many_copy->add_option("--rho", rho_path, "density file")->required();
  many_copy->add_option("--copies", copies, "number of copies n")->required();

  // check ppt
  CLI::App* check = app.add_subcommand("check", "single-operator checks");
  check->require_subcommand(1);
  CLI::App* check_ppt = check->add_subcommand("ppt", "partial-transpose positivity");
  std::string ppt_path, cut_arg = "0";
  check_ppt->add_option("file", ppt_path, "density JSON file")->required();
  check_ppt->add_option("--cut", cut_arg, "comma-separated A-side subsystem indices");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (build->parsed()) return run_nupb_build(dims_arg, schmidt_arg, out_path);
    if (verify->parsed()) return run_nupb_verify(global, verify_path);
    if (demo_cupb->parsed()) return run_demo_cupb(global);
    if (demo_tq->parsed()) return run_demo_three_qubit(global);
    if (demo_npt->parsed()) return run_demo_npt(global);
    if (many_copy->parsed())
      return run_certify_many_copy(global, psi_path, rho_path, copies);
    if (check_ppt->parsed()) return run_check_ppt(global, ppt_path, cut_arg);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InputInvariantError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
