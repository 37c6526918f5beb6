#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "upb/constructions.hpp"
#include "upb/states.hpp"
#include "upb/verify.hpp"

namespace upb {

using OrderedJson = nlohmann::ordered_json;

// Malformed JSON or wrong document structure; the message carries a
// line/column or a JSON path. Maps to exit code 1 in the CLI.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally valid input whose numbers violate a state invariant
// (normalization, hermiticity, positivity). Maps to exit code 4.
struct InputInvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Canonical decimal form used everywhere on disk: 17 significant digits,
// enough to reproduce any 64-bit float exactly.
std::string format_double(double x);
double parse_double(const std::string& s, const std::string& path);

std::uint64_t fnv1a64(std::string_view bytes);
std::string digest(std::string_view bytes);  // "fnv1a64:<hex>"

// On-disk state container. Exactly one payload is engaged, matching `kind`.
struct StateFile {
  enum class Kind { Pure, Density, ProductBasis, Subspace };

  Kind kind;
  std::optional<PureState> pure;
  std::optional<DensityOperator> density;
  std::optional<ProductBasis> product_basis;
  std::optional<Subspace> subspace;
  std::map<std::string, std::string> meta;

  static StateFile from(const PureState& s, std::map<std::string, std::string> meta = {});
  static StateFile from(const DensityOperator& s,
                        std::map<std::string, std::string> meta = {});
  static StateFile from(const ProductBasis& s);
  static StateFile from(const Subspace& s, std::map<std::string, std::string> meta = {});
};

std::string serialize_state_file(const StateFile& file);
StateFile parse_state_file(const std::string& text);

StateFile load_state_file(const std::string& path);
void save_state_file(const StateFile& file, const std::string& path);

OrderedJson certificate_to_json(const Certificate& cert);

// Worst-status exit code semantics: 0 all proven / feasible as expected,
// 2 numerical evidence, 3 undetermined, 4 failed checks, 1 usage or IO.
int certificate_exit_severity(const Certificate& cert);

struct RunReport {
  std::string command;
  std::map<std::string, std::string> inputs;  // label -> digest
  std::vector<std::pair<std::string, Certificate>> certificates;  // named
  std::vector<std::string> notes;

  int exit_code() const;
  OrderedJson to_json() const;
  std::string to_text() const;
};

}  // namespace upb
