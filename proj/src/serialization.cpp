#include "upb/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace upb {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& s, const std::string& path) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ParseError(path + ": not a decimal number: '" + s + "'");
  if (!std::isfinite(value))
    throw InputInvariantError(path + ": non-finite value");
  return value;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string digest(std::string_view bytes) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

namespace {

using Json = nlohmann::ordered_json;

Json complex_to_json(const Complex& z) {
  return Json::array({format_double(z.real()), format_double(z.imag())});
}

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

Json matrix_rows_to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

std::string kind_to_string(StateFile::Kind kind) {
  switch (kind) {
    case StateFile::Kind::Pure: return "pure";
    case StateFile::Kind::Density: return "density";
    case StateFile::Kind::ProductBasis: return "product_basis";
    case StateFile::Kind::Subspace: return "subspace";
  }
  return "unknown";
}

const Json& require(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + ": missing key '" + key + "'");
  return *it;
}

const Json& require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  return j;
}

Complex json_to_complex(const Json& j, const std::string& path) {
  require_array(j, path);
  if (j.size() != 2) throw ParseError(path + ": expected a [re, im] pair");
  auto part = [&](int k) -> double {
    const std::string part_path = path + "[" + std::to_string(k) + "]";
    if (j[k].is_string()) return parse_double(j[k].get<std::string>(), part_path);
    if (j[k].is_number()) return j[k].get<double>();
    throw ParseError(part_path + ": expected a decimal string");
  };
  return {part(0), part(1)};
}

ComplexVector json_to_vector(const Json& j, const std::string& path) {
  require_array(j, path);
  ComplexVector v(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = json_to_complex(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

ComplexMatrix json_to_matrix_rows(const Json& j, const std::string& path) {
  require_array(j, path);
  if (j.empty()) throw ParseError(path + ": empty matrix");
  const size_t rows = j.size();
  const size_t cols = require_array(j[0], path + "[0]").size();
  ComplexMatrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    require_array(j[r], row_path);
    if (j[r].size() != cols) throw ParseError(row_path + ": ragged matrix row");
    for (size_t c = 0; c < cols; ++c)
      m(r, c) = json_to_complex(j[r][c], row_path + "[" + std::to_string(c) + "]");
  }
  return m;
}

std::pair<int, int> line_and_column(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') { ++line; col = 1; }
    else ++col;
  }
  return {line, col};
}

// Pure amplitude files may be written by hand; anything within 1e-6 of unit
// norm is renormalized, mirroring the CLI's Schmidt-coefficient rule.
PureState pure_from_amplitudes(DimVec dims, ComplexVector amps) {
  const double norm = amps.norm();
  if (std::abs(norm - 1.0) > 1e-6)
    throw InputInvariantError("$.data: amplitude norm " + format_double(norm) +
                              " deviates from 1 by more than 1e-6");
  // Keep the stored bits when the file is already normalized.
  if (std::abs(norm - 1.0) > 1e-12) amps /= norm;
  return PureState(std::move(dims), std::move(amps));
}

}  // namespace

StateFile StateFile::from(const PureState& s, std::map<std::string, std::string> meta) {
  StateFile f;
  f.kind = Kind::Pure;
  f.pure = s;
  f.meta = std::move(meta);
  return f;
}

StateFile StateFile::from(const DensityOperator& s, std::map<std::string, std::string> meta) {
  StateFile f;
  f.kind = Kind::Density;
  f.density = s;
  f.meta = std::move(meta);
  return f;
}

StateFile StateFile::from(const ProductBasis& s) {
  StateFile f;
  f.kind = Kind::ProductBasis;
  f.product_basis = s;
  f.meta = s.meta;
  f.meta["orthogonal"] = s.orthogonal ? "true" : "false";
  f.meta["claimed_complement_dim"] = std::to_string(s.claimed_complement_dim);
  return f;
}

StateFile StateFile::from(const Subspace& s, std::map<std::string, std::string> meta) {
  StateFile f;
  f.kind = Kind::Subspace;
  f.subspace = s;
  f.meta = std::move(meta);
  return f;
}

std::string serialize_state_file(const StateFile& file) {
  Json j;
  j["kind"] = kind_to_string(file.kind);

  Json dims = Json::array();
  Json data;
  switch (file.kind) {
    case StateFile::Kind::Pure: {
      for (int d : file.pure->dims().dims()) dims.push_back(d);
      data = vector_to_json(file.pure->amplitudes());
      break;
    }
    case StateFile::Kind::Density: {
      for (int d : file.density->dims().dims()) dims.push_back(d);
      data = matrix_rows_to_json(file.density->matrix());
      break;
    }
    case StateFile::Kind::ProductBasis: {
      for (int d : file.product_basis->dims.dims()) dims.push_back(d);
      data = Json::array();
      for (const auto& state : file.product_basis->states) {
        Json factors = Json::array();
        for (const auto& f : state.factors()) factors.push_back(vector_to_json(f));
        data.push_back(std::move(factors));
      }
      break;
    }
    case StateFile::Kind::Subspace: {
      for (int d : file.subspace->dims().dims()) dims.push_back(d);
      // Basis columns serialized one per row.
      data = matrix_rows_to_json(file.subspace->basis().transpose());
      break;
    }
  }
  j["dims"] = std::move(dims);
  j["data"] = std::move(data);
  Json meta = Json::object();
  for (const auto& [k, v] : file.meta) meta[k] = v;
  j["meta"] = std::move(meta);
  return j.dump(2) + "\n";
}

StateFile parse_state_file(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                     ": " + e.what());
  }

  const Json& kind_json = require(j, "kind", "$");
  if (!kind_json.is_string()) throw ParseError("$.kind: expected a string");
  const std::string kind = kind_json.get<std::string>();

  const Json& dims_json = require_array(require(j, "dims", "$"), "$.dims");
  std::vector<int> dims_list;
  for (size_t i = 0; i < dims_json.size(); ++i) {
    if (!dims_json[i].is_number_integer())
      throw ParseError("$.dims[" + std::to_string(i) + "]: expected an integer");
    dims_list.push_back(dims_json[i].get<int>());
  }
  DimVec dims;
  try {
    dims = DimVec(dims_list);
  } catch (const std::invalid_argument& e) {
    throw InputInvariantError(std::string("$.dims: ") + e.what());
  }

  std::map<std::string, std::string> meta;
  if (j.contains("meta")) {
    const Json& meta_json = j["meta"];
    if (!meta_json.is_object()) throw ParseError("$.meta: expected an object");
    for (auto it = meta_json.begin(); it != meta_json.end(); ++it) {
      if (!it.value().is_string())
        throw ParseError("$.meta." + it.key() + ": expected a string");
      meta[it.key()] = it.value().get<std::string>();
    }
  }

  const Json& data = require(j, "data", "$");
  StateFile out;
  out.meta = meta;
  try {
    if (kind == "pure") {
      out.kind = StateFile::Kind::Pure;
      ComplexVector v = json_to_vector(data, "$.data");
      if (v.size() != dims.total())
        throw InputInvariantError("$.data: amplitude count does not match dims");
      out.pure = pure_from_amplitudes(dims, std::move(v));
    } else if (kind == "density") {
      out.kind = StateFile::Kind::Density;
      ComplexMatrix m = json_to_matrix_rows(data, "$.data");
      out.density = DensityOperator(dims, std::move(m));
    } else if (kind == "subspace") {
      out.kind = StateFile::Kind::Subspace;
      const ComplexMatrix rows = json_to_matrix_rows(data, "$.data");
      out.subspace = Subspace(dims, rows.transpose());
    } else if (kind == "product_basis") {
      out.kind = StateFile::Kind::ProductBasis;
      ProductBasis basis;
      basis.dims = dims;
      require_array(data, "$.data");
      for (size_t s = 0; s < data.size(); ++s) {
        const std::string state_path = "$.data[" + std::to_string(s) + "]";
        require_array(data[s], state_path);
        if (data[s].size() != static_cast<size_t>(dims.size()))
          throw ParseError(state_path + ": factor count does not match dims");
        std::vector<ComplexVector> factors;
        for (size_t f = 0; f < data[s].size(); ++f) {
          ComplexVector factor =
              json_to_vector(data[s][f], state_path + "[" + std::to_string(f) + "]");
          if (factor.size() != dims[static_cast<int>(f)])
            throw InputInvariantError(state_path + "[" + std::to_string(f) +
                                      "]: factor length does not match dims");
          factors.push_back(std::move(factor));
        }
        basis.states.emplace_back(std::move(factors));
      }
      basis.meta = meta;
      basis.meta.erase("orthogonal");
      basis.meta.erase("claimed_complement_dim");
      auto it = meta.find("orthogonal");
      basis.orthogonal = it != meta.end() && it->second == "true";
      it = meta.find("claimed_complement_dim");
      basis.claimed_complement_dim =
          it != meta.end()
              ? std::stoi(it->second)
              : static_cast<int>(dims.total()) - basis.cardinality();
      out.product_basis = std::move(basis);
    } else {
      throw ParseError("$.kind: unknown kind '" + kind + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw InputInvariantError(std::string("$.data: ") + e.what());
  }
  return out;
}

StateFile load_state_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_state_file(buffer.str());
}

void save_state_file(const StateFile& file, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << serialize_state_file(file);
}

OrderedJson certificate_to_json(const Certificate& cert) {
  Json j;
  j["kind"] = to_string(cert.kind);
  j["status"] = to_string(cert.status);
  j["all_checks_pass"] = cert.all_pass();
  Json checks = Json::array();
  for (const auto& c : cert.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["value"] = format_double(c.value);
    cj["tolerance"] = format_double(c.tolerance);
    cj["pass"] = c.pass;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return j;
}

int certificate_exit_severity(const Certificate& cert) {
  if (!cert.all_pass()) return 4;
  switch (cert.status) {
    case CertificateStatus::Proven: return 0;
    case CertificateStatus::NumericalEvidence: return 2;
    case CertificateStatus::Undetermined: return 3;
  }
  return 4;
}

int RunReport::exit_code() const {
  int worst = 0;
  for (const auto& [name, cert] : certificates)
    worst = std::max(worst, certificate_exit_severity(cert));
  return worst;
}

OrderedJson RunReport::to_json() const {
  Json j;
  j["command"] = command;
  Json in = Json::object();
  for (const auto& [k, v] : inputs) in[k] = v;
  j["inputs"] = std::move(in);
  Json certs = Json::array();
  for (const auto& [name, cert] : certificates) {
    Json entry = certificate_to_json(cert);
    entry["name"] = name;
    certs.push_back(std::move(entry));
  }
  j["certificates"] = std::move(certs);
  if (!notes.empty()) {
    Json ns = Json::array();
    for (const auto& n : notes) ns.push_back(n);
    j["notes"] = std::move(ns);
  }
  j["exit_code"] = exit_code();
  return j;
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << "== " << command << " ==\n";
  for (const auto& [label, d] : inputs) os << "input " << label << ": " << d << "\n";
  for (const auto& [name, cert] : certificates) {
    os << "[" << to_string(cert.status) << "] " << name << " ("
       << to_string(cert.kind) << ")\n";
    for (const auto& c : cert.checks) {
      os << "  " << (c.pass ? "ok  " : "FAIL") << "  " << c.name << " = "
         << format_double(c.value);
      if (c.tolerance != 0.0) os << "  (tol " << format_double(c.tolerance) << ")";
      os << "\n";
    }
  }
  for (const auto& n : notes) os << "note: " << n << "\n";
  os << "exit " << exit_code() << "\n";
  return os.str();
}

}  // namespace upb
