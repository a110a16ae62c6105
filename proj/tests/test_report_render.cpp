#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include <json.hpp>

#include "riskq/cli.hpp"
#include "testutil.hpp"

using riskq::RiskModel;
using riskq::SecurityProperty;
namespace cli = riskq::cli;
namespace engine = riskq::engine;

TEST_CASE("json report round-trips through a generic parser") {
  RiskModel model = testutil::load_fixture();
  engine::RiskReport report = engine::assess(model);
  std::string text = cli::render_report_json(report, model.asset.id);

  nlohmann::json j = nlohmann::json::parse(text);  // independent parser
  CHECK(j["asset"] == "confidential-file");
  CHECK(j["currency"] == "USD");
  CHECK(j["combination_mode"] == "total_probability");
  REQUIRE(j["properties"].size() == 1);
  const auto& p = j["properties"][0];
  CHECK(p["property"] == "confidentiality");
  CHECK(p["violation_probability"].get<double>() ==
        report.properties[0].violation_probability);
  CHECK(p["expected_loss"] == "4800.00");
  CHECK(p["risk"] == "1842.24");
  CHECK(p["event_probabilities"].size() == 2);
  CHECK(p["event_probabilities"][0]["event"] == "A11");
  CHECK(j["total_risk"] == "1842.24");

  // probabilities serialize as finite JSON numbers, never NaN/Infinity
  CHECK(text.find("nan") == std::string::npos);
  CHECK(text.find("inf") == std::string::npos);
}

TEST_CASE("markdown and csv reports") {
  RiskModel model = testutil::load_fixture();
  engine::RiskReport report = engine::assess(model);

  std::string md = cli::render_report_markdown(report, model.asset.name);
  CHECK(md.find("# Risk report: Confidential file on a local workstation") == 0);
  CHECK(md.find("## Confidentiality") != std::string::npos);
  CHECK(md.find("| A11 |") != std::string::npos);
  CHECK(md.find("Total risk: 1842.24 USD") != std::string::npos);

  std::string csv = cli::render_report_csv(report);
  CHECK(csv.rfind("property,violation_probability,expected_loss,risk\r\n", 0) == 0);
  CHECK(csv.find("confidentiality,0.38") != std::string::npos);
  CHECK(csv.find(",4800.00,1842.24\r\n") != std::string::npos);
  CHECK(csv.find("total,,,1842.24\r\n") != std::string::npos);
}

TEST_CASE("cmd_validate exit codes") {
  std::ostringstream out, err;
  SECTION("clean fixture") {
    int rc = cli::cmd_validate(testutil::fixture_path(), out, err);
    CHECK(rc == cli::kExitOk);
    CHECK(out.str().find("warning:") != std::string::npos);
    CHECK(out.str().find("error:") == std::string::npos);
  }
  SECTION("malformed file") {
    int rc = cli::cmd_validate(testutil::testdata_path("malformed.riskq.json"), out, err);
    CHECK(rc == cli::kExitParse);
    CHECK(err.str().find("malformed.riskq.json:4:") != std::string::npos);
  }
  SECTION("prior sum violation") {
    int rc = cli::cmd_validate(testutil::testdata_path("priors-sum.riskq.json"), out, err);
    CHECK(rc == cli::kExitSemantic);
    CHECK(out.str().find("priors sum 1.3 > 1") != std::string::npos);
    CHECK(out.str().find("\"E1\"") != std::string::npos);
  }
  SECTION("missing file") {
    int rc = cli::cmd_validate(testutil::testdata_path("nope.riskq.json"), out, err);
    CHECK(rc == cli::kExitParse);
  }
}

TEST_CASE("cmd_assess property filter") {
  std::ostringstream out, err;
  SECTION("present property") {
    int rc = cli::cmd_assess(testutil::fixture_path(), cli::ReportFormat::Json,
                             SecurityProperty::Confidentiality, out, err);
    CHECK(rc == cli::kExitOk);
    CHECK(nlohmann::json::parse(out.str())["properties"].size() == 1);
  }
  SECTION("absent property") {
    int rc = cli::cmd_assess(testutil::fixture_path(), cli::ReportFormat::Json,
                             SecurityProperty::Integrity, out, err);
    CHECK(rc == cli::kExitSemantic);
    CHECK(out.str().empty());
    CHECK(err.str().find("integrity") != std::string::npos);
  }
  SECTION("markdown renders a section per property") {
    int rc = cli::cmd_assess(testutil::fixture_path(), cli::ReportFormat::Markdown,
                             std::nullopt, out, err);
    CHECK(rc == cli::kExitOk);
    CHECK(out.str().find("## Confidentiality") != std::string::npos);
  }
}

TEST_CASE("cmd_band prints both readings") {
  std::ostringstream out, err;
  int rc = cli::cmd_band(testutil::fixture_path(), std::nullopt, out, err);
  CHECK(rc == cli::kExitOk);
  std::string text = out.str();
  CHECK(text.find("confidentiality") != std::string::npos);
  CHECK(text.find("qualitative risk:  Medium") != std::string::npos);
  CHECK(text.find("quantitative risk: 1842.24 USD") != std::string::npos);
  CHECK(text.find("consistent:        yes") != std::string::npos);
}

TEST_CASE("cmd_band accepts a scale file") {
  std::ostringstream out, err;
  int rc = cli::cmd_band(testutil::fixture_path(),
                         std::string(RISKQ_MODELS_DIR) + "/example-bands.json", out, err);
  CHECK(rc == cli::kExitOk);
  CHECK(out.str().find("Medium") != std::string::npos);
}

TEST_CASE("cmd_diagram and cmd_table write artifacts") {
  std::ostringstream out, err;
  SECTION("diagram to stdout") {
    int rc = cli::cmd_diagram(testutil::fixture_path(),
                              SecurityProperty::Confidentiality, std::nullopt, out, err);
    CHECK(rc == cli::kExitOk);
    CHECK(out.str().rfind("digraph ", 0) == 0);
  }
  SECTION("missing property") {
    int rc = cli::cmd_diagram(testutil::fixture_path(), SecurityProperty::Availability,
                              std::nullopt, out, err);
    CHECK(rc == cli::kExitSemantic);
    CHECK(out.str().empty());
  }
  SECTION("table csv") {
    int rc = cli::cmd_table(testutil::fixture_path(), SecurityProperty::Confidentiality,
                            riskq::diagram::TableFormat::Csv, std::nullopt, out, err);
    CHECK(rc == cli::kExitOk);
    CHECK(out.str().rfind("event,hypothesis,cause,conditional_probability\r\n", 0) == 0);
  }
}

TEST_CASE("cmd_mc_check statistical gate") {
  std::ostringstream out, err;
  int rc = cli::cmd_mc_check(testutil::fixture_path(), 50000, 8, 4.0, out, err);
  CHECK(rc == cli::kExitOk);
  CHECK(out.str().find("mc-check: pass") != std::string::npos);

  // an absurdly tight sigma turns the same run into a failure, exit 3
  std::ostringstream out2, err2;
  int rc2 = cli::cmd_mc_check(testutil::fixture_path(), 50000, 8, 1e-9, out2, err2);
  CHECK(rc2 == cli::kExitCheckFailed);
  CHECK(out2.str().find("mc-check: FAIL") != std::string::npos);
}
