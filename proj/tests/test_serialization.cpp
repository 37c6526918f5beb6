#include <doctest.h>

#include "test_support.hpp"
#include "upb/serialization.hpp"

using namespace upb;
using upb::testing::bell_state;

namespace {

void check_round_trip(const StateFile& file) {
  const std::string once = serialize_state_file(file);
  const StateFile reparsed = parse_state_file(once);
  const std::string twice = serialize_state_file(reparsed);
  CHECK(once == twice);
}

}  // namespace

TEST_CASE("decimal formatting round-trips doubles exactly") {
  Rng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const double x = (rng.uniform() - 0.5) * std::pow(10.0, rng.uniform() * 20 - 10);
    const std::string s = format_double(x);
    CHECK(parse_double(s, "$") == x);
  }
  CHECK(parse_double(format_double(1.0 / 3.0), "$") == 1.0 / 3.0);
  CHECK_THROWS_AS(parse_double("1.2.3", "$"), ParseError);
}

TEST_CASE("state files of every kind survive serialize-parse-serialize") {
  check_round_trip(StateFile::from(bell_state(), {{"name", "bell"}}));

  const ProductBasis tiles = build_tiles_upb();
  check_round_trip(StateFile::from(tiles));
  check_round_trip(StateFile::from(bound_entangled_from_oupb(tiles)));
  check_round_trip(StateFile::from(orthogonal_complement(bell_state())));

  Rng rng(62);
  check_round_trip(StateFile::from(upb::testing::random_entangled_pure(rng, 3, 4, 3)));
  check_round_trip(StateFile::from(upb::testing::random_density(rng, DimVec{2, 3}, 4)));
}

TEST_CASE("product basis files preserve flags and metadata") {
  const ProductBasis tiles = build_tiles_upb();
  const StateFile file = StateFile::from(tiles);
  const StateFile reparsed = parse_state_file(serialize_state_file(file));
  REQUIRE(reparsed.product_basis.has_value());
  CHECK(reparsed.product_basis->orthogonal);
  CHECK(reparsed.product_basis->claimed_complement_dim == 4);
  CHECK(reparsed.product_basis->cardinality() == 5);
  CHECK(reparsed.product_basis->meta.at("normalization_4") == "3");
}

TEST_CASE("parse errors carry line and path diagnostics") {
  try {
    parse_state_file("{\n  \"kind\": \"pure\",\n  bad\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  try {
    parse_state_file(R"({"kind": "pure", "dims": [2, 2]})");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("$") != std::string::npos);
    CHECK(std::string(e.what()).find("data") != std::string::npos);
  }

  try {
    parse_state_file(
        R"({"kind": "pure", "dims": [2], "data": [["1", "0"], ["oops", "0"]]})");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("$.data[1]") != std::string::npos);
  }
}

TEST_CASE("invariant violations are distinguished from parse errors") {
  // Norm off by more than 1e-6.
  CHECK_THROWS_AS(
      parse_state_file(
          R"({"kind": "pure", "dims": [2], "data": [["0.8", "0"], ["0.7", "0"]]})"),
      InputInvariantError);
  // Norm within 1e-6 is renormalized.
  const StateFile ok = parse_state_file(
      R"({"kind": "pure", "dims": [2], "data": [["0.70710678", "0"], ["0.70710678", "0"]]})");
  CHECK(std::abs(ok.pure->amplitudes().norm() - 1.0) < 1e-12);

  // Density matrix with the wrong trace.
  CHECK_THROWS_AS(
      parse_state_file(
          R"({"kind": "density", "dims": [2],
              "data": [[["1", "0"], ["0", "0"]], [["0", "0"], ["0.5", "0"]]]})"),
      InputInvariantError);
}

TEST_CASE("digests are stable") {
  CHECK(digest("") == "fnv1a64:cbf29ce484222325");
  CHECK(digest("upb") == digest("upb"));
  CHECK(digest("upb") != digest("ubp"));
}

TEST_CASE("certificates and run reports serialize with exit codes") {
  Certificate cert;
  cert.kind = CertificateKind::Upb;
  cert.checks.push_back({"cardinality", 5.0, 0.0, true});
  cert.status = CertificateStatus::NumericalEvidence;

  const OrderedJson j = certificate_to_json(cert);
  CHECK(j["kind"] == "UPB");
  CHECK(j["status"] == "NUMERICAL_EVIDENCE");
  CHECK(j["checks"][0]["name"] == "cardinality");

  RunReport report;
  report.command = "demo tiles";
  report.certificates.emplace_back("tiles", cert);
  CHECK(report.exit_code() == 2);

  Certificate failed = cert;
  failed.checks.push_back({"broken", 1.0, 0.0, false});
  report.certificates.emplace_back("broken", failed);
  CHECK(report.exit_code() == 4);
  CHECK(report.to_json()["exit_code"] == 4);

  Certificate proven;
  proven.kind = CertificateKind::ProductBasis;
  proven.checks.push_back({"ok", 0.0, 0.0, true});
  proven.status = CertificateStatus::Proven;
  RunReport clean;
  clean.command = "demo clean";
  clean.certificates.emplace_back("fine", proven);
  CHECK(clean.exit_code() == 0);
}
