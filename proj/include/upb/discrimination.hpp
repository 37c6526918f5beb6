#pragma once

#include <optional>
#include <string>
#include <vector>

#include "upb/constructions.hpp"
#include "upb/states.hpp"
#include "upb/verify.hpp"

namespace upb {

enum class ManyCopyVerdict { IndistinguishableManyCopy, Undetermined };

std::string to_string(ManyCopyVerdict verdict);

// Verdict chain for the ensemble {psi, rho} with rho supported on the full
// complement of psi. The n-copy claim rests on the closure of this basis
// family under tensor products together with the single-copy certificates;
// no (d1 d2)^n-dimensional object is ever built. For n >= 2 at small
// dimensions a seesaw spot check on the two-copy regrouped complement is
// appended as corroboration.
struct ManyCopyCertificate {
  PureState psi;
  DensityOperator rho;
  int copies_checked;
  std::vector<Certificate> chain;
  ManyCopyVerdict verdict;
};

ManyCopyCertificate many_copy_certificate(const PureState& psi, const DensityOperator& rho,
                                          int n, const SeesawOptions& opts = {});

// First bipartition (canonical order) across which psi has Schmidt rank >= 2;
// empty for fully product states. Requires at least three subsystems.
std::optional<Bipartition> find_entangled_bipartition(const PureState& psi);

struct PptTableRow {
  std::string label;     // operator: "sigma2", "pi1", "pi2"
  std::string cut;       // e.g. "0|1,2"
  double min_pt_eigenvalue;
  bool ppt;
};

struct ThreeQubitReport {
  Certificate full_separation_certificate;  // many-copy chain for full separation
  Certificate ppt_necessity_certificate;            // support projectors PPT per bipartition
  std::vector<PptTableRow> ppt_table;       // sigma2 and both projectors per cut
  bool fragile_indistinguishability;        // indistinguishable fully separated,
                                            // PPT necessities met in every cut
  std::string bipartite_distinguishability; // "PAPER-CITED": no explicit cOPB is built
};

ThreeQubitReport three_qubit_report(const ThreeQubitBundle& bundle,
                                    const SeesawOptions& opts = {});

}  // namespace upb
