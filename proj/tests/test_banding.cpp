#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "riskq/banding.hpp"

using riskq::OutOfRangeError;
using riskq::ParseError;
using riskq::SecurityProperty;
namespace banding = riskq::banding;
using banding::Band;
using banding::BandLabel;

namespace {

riskq::engine::RiskReport report_with(double p, double expected_loss, double risk) {
  riskq::engine::RiskReport report;
  riskq::engine::PropertyResult pr;
  pr.property = SecurityProperty::Confidentiality;
  pr.violation_probability = p;
  pr.expected_loss = expected_loss;
  pr.risk = risk;
  report.properties.push_back(pr);
  report.total_risk = risk;
  report.currency = "USD";
  return report;
}

}  // namespace

TEST_CASE("rank and label are a bijection") {
  for (int rank = 1; rank <= 5; ++rank) {
    Band b = banding::band_from_rank(rank);
    CHECK(b.rank() == rank);
    CHECK(banding::band_from_rank(b.rank()) == b);
  }
  CHECK_THROWS_AS(banding::band_from_rank(0), OutOfRangeError);
  CHECK_THROWS_AS(banding::band_from_rank(6), OutOfRangeError);
}

TEST_CASE("frequency banding") {
  CHECK(banding::frequency_band(0.3).label == BandLabel::Low);
  CHECK(banding::frequency_band(0.0).label == BandLabel::VeryLow);
  CHECK(banding::frequency_band(0.09999).label == BandLabel::VeryLow);
  CHECK(banding::frequency_band(0.1).label == BandLabel::Low);
  CHECK(banding::frequency_band(1.0).label == BandLabel::Low);

  CHECK_THROWS_AS(banding::frequency_band(-0.01), OutOfRangeError);
  CHECK_THROWS_AS(banding::frequency_band(1.01), OutOfRangeError);
  CHECK_THROWS_AS(banding::frequency_band(std::nan("")), OutOfRangeError);
}

TEST_CASE("magnitude banding on the decade ladder") {
  CHECK(banding::magnitude_band(4800.0).label == BandLabel::Medium);
  CHECK(banding::magnitude_band(0.0).label == BandLabel::VeryLow);
  CHECK(banding::magnitude_band(99.99).label == BandLabel::VeryLow);
  CHECK(banding::magnitude_band(100.0).label == BandLabel::Low);
  CHECK(banding::magnitude_band(1000.0).label == BandLabel::Medium);
  CHECK(banding::magnitude_band(10000.0).label == BandLabel::High);
  CHECK(banding::magnitude_band(100000.0).label == BandLabel::VeryHigh);
  CHECK(banding::magnitude_band(5e9).label == BandLabel::VeryHigh);

  CHECK_THROWS_AS(banding::magnitude_band(-1.0), OutOfRangeError);
}

TEST_CASE("qualitative risk matrix") {
  auto band = [](BandLabel l) { return Band{l}; };
  CHECK(banding::qualitative_risk(band(BandLabel::Low), band(BandLabel::Medium)).label ==
        BandLabel::Medium);
  CHECK(banding::qualitative_risk(band(BandLabel::VeryLow), band(BandLabel::VeryLow)).label ==
        BandLabel::VeryLow);
  CHECK(banding::qualitative_risk(band(BandLabel::VeryHigh), band(BandLabel::Low)).label ==
        BandLabel::High);
  CHECK(banding::qualitative_risk(band(BandLabel::Low), band(BandLabel::VeryLow)).label ==
        BandLabel::Low);

  for (int f = 1; f <= 5; ++f) {
    for (int m = 1; m <= 5; ++m) {
      Band a = banding::qualitative_risk(banding::band_from_rank(f),
                                         banding::band_from_rank(m));
      Band b = banding::qualitative_risk(banding::band_from_rank(m),
                                         banding::band_from_rank(f));
      CHECK(a == b);  // symmetric
      CHECK(a.rank() >= std::min(f, m));
      CHECK(a.rank() <= std::max(f, m));
      if (m < 5) {
        Band up = banding::qualitative_risk(banding::band_from_rank(f),
                                            banding::band_from_rank(m + 1));
        CHECK(up.rank() >= a.rank());  // monotone
      }
    }
  }
}

TEST_CASE("banding functions are monotone step functions") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 2000; ++i) {
    double a = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double b = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    if (a > b) std::swap(a, b);
    CHECK(banding::frequency_band(a).rank() <= banding::frequency_band(b).rank());

    double la = std::uniform_real_distribution<double>(0.0, 2e5)(rng);
    double lb = std::uniform_real_distribution<double>(0.0, 2e5)(rng);
    if (la > lb) std::swap(la, lb);
    CHECK(banding::magnitude_band(la).rank() <= banding::magnitude_band(lb).rank());
  }
}

TEST_CASE("the anchor cell holds exactly") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 5000; ++i) {
    double p = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
    double e = std::uniform_real_distribution<double>(1000.0, 10000.0)(rng);
    if (e >= 10000.0) continue;
    Band f = banding::frequency_band(p);
    Band m = banding::magnitude_band(e);
    REQUIRE(f.label == BandLabel::Low);
    REQUIRE(m.label == BandLabel::Medium);
    REQUIRE(banding::qualitative_risk(f, m).label == BandLabel::Medium);
  }
}

TEST_CASE("comparison against the qualitative reading") {
  SECTION("worked example") {
    auto cmp = banding::compare(report_with(0.23962, 4800.0, 1150.18),
                                SecurityProperty::Confidentiality);
    CHECK(cmp.frequency_band.label == BandLabel::Low);
    CHECK(cmp.magnitude_band.label == BandLabel::Medium);
    CHECK(cmp.qualitative_risk.label == BandLabel::Medium);
    CHECK(cmp.quantitative_risk == 1150.18);
    CHECK(cmp.consistent);
  }
  SECTION("null model") {
    auto cmp = banding::compare(report_with(0.0, 0.0, 0.0),
                                SecurityProperty::Confidentiality);
    CHECK(cmp.frequency_band.label == BandLabel::VeryLow);
    CHECK(cmp.magnitude_band.label == BandLabel::VeryLow);
    CHECK(cmp.qualitative_risk.label == BandLabel::VeryLow);
    CHECK(cmp.consistent);
  }
  SECTION("small loss") {
    auto cmp = banding::compare(report_with(0.5, 50.0, 25.0),
                                SecurityProperty::Confidentiality);
    CHECK(cmp.frequency_band.label == BandLabel::Low);
    CHECK(cmp.magnitude_band.label == BandLabel::VeryLow);
    CHECK(cmp.qualitative_risk.label == BandLabel::Low);
    CHECK(cmp.consistent);
  }
  SECTION("missing property") {
    CHECK_THROWS_AS(banding::compare(report_with(0.5, 50.0, 25.0),
                                     SecurityProperty::Integrity),
                    riskq::MissingPropertyError);
  }
}

TEST_CASE("band scale configuration") {
  SECTION("custom cuts change the ladder") {
    auto scale = banding::parse_band_scale(R"({
      "schema_version": "1.0",
      "frequency_cuts": [0.01, 0.25, 0.5, 0.75],
      "magnitude_cuts": [10]
    })");
    CHECK(banding::frequency_band(0.3, scale).label == BandLabel::Medium);
    CHECK(banding::frequency_band(0.8, scale).label == BandLabel::VeryHigh);
    CHECK(banding::magnitude_band(5.0, scale).label == BandLabel::VeryLow);
    CHECK(banding::magnitude_band(50.0, scale).label == BandLabel::Low);
  }
  SECTION("defaults apply when a ladder is omitted") {
    auto scale = banding::parse_band_scale(R"({"schema_version": "1.0"})");
    CHECK(scale.frequency_cuts == banding::default_scale().frequency_cuts);
    CHECK(scale.magnitude_cuts == banding::default_scale().magnitude_cuts);
  }
  SECTION("rejects bad documents") {
    CHECK_THROWS_AS(banding::parse_band_scale("{}"), ParseError);
    CHECK_THROWS_AS(banding::parse_band_scale(R"({"schema_version": "1.0", "x": 1})"),
                    ParseError);
    CHECK_THROWS_AS(
        banding::parse_band_scale(
            R"({"schema_version": "1.0", "magnitude_cuts": [10, 5]})"),
        ParseError);
    CHECK_THROWS_AS(
        banding::parse_band_scale(
            R"({"schema_version": "1.0", "magnitude_cuts": []})"),
        ParseError);
    CHECK_THROWS_AS(
        banding::parse_band_scale(
            R"({"schema_version": "1.0", "frequency_cuts": [1, 2, 3, 4, 5]})"),
        ParseError);
    CHECK_THROWS_AS(
        banding::parse_band_scale(
            R"({"schema_version": "1.0", "magnitude_cuts": [-1]})"),
        ParseError);
  }
}
