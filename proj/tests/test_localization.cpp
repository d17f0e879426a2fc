#include <catch2/catch_amalgamated.hpp>

#include "ava/localization.hpp"
#include "ava/stats.hpp"
#include "helpers.hpp"

using helpers::gt;
using helpers::gt_stream;

TEST_CASE("precision, recall, F at two-decimal display rounding", "[localization]") {
  SECTION("strict classifier") {
    const auto r = ava::make_prf(100, 24, 51);
    REQUIRE(ava::round2(r.precision) == 0.81);
    REQUIRE(ava::round2(r.recall) == 0.66);
    REQUIRE(ava::round2(r.f1) == 0.73);
  }
  SECTION("stronger classifier") {
    const auto r = ava::make_prf(110, 14, 51);
    REQUIRE(ava::round2(r.precision) == 0.89);
    REQUIRE(ava::round2(r.recall) == 0.68);
    REQUIRE(ava::round2(r.f1) == 0.77);
  }
  SECTION("empty stream is vacuous, not perfect") {
    const auto r = ava::prf({});
    REQUIRE(r.tp == 0);
    REQUIRE(r.precision == 0.0);
    REQUIRE(r.recall == 0.0);
    REQUIRE(r.f1 == 0.0);
    REQUIRE(r.vacuous);
  }
  SECTION("prf sums across frames") {
    ava::FrameMatch a, b;
    a.frame = 1;
    a.tp = {{"g", "e", 0.9}};
    a.fp = {"x"};
    b.frame = 2;
    b.fn = {"g"};
    const auto r = ava::prf({a, b});
    REQUIRE(r.tp == 1);
    REQUIRE(r.fp == 1);
    REQUIRE(r.fn == 1);
  }
}

TEST_CASE("F lies between precision and recall", "[localization][property]") {
  ava::SplitMix64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const auto tp = rng.uniform_int(0, 50);
    const auto fp = rng.uniform_int(0, 50);
    const auto fn = rng.uniform_int(0, 50);
    const auto r = ava::make_prf(tp, fp, fn);
    const double lo = std::min(r.precision, r.recall);
    const double hi = std::max(r.precision, r.recall);
    REQUIRE(r.f1 >= lo - 1e-12);
    REQUIRE(r.f1 <= hi + 1e-12);
    if (r.precision == r.recall) REQUIRE(r.f1 == Catch::Approx(r.precision));
  }
}

TEST_CASE("distance bands split at the median box area", "[localization]") {
  const auto m = helpers::meta(10, 30);
  ava::EvalConfig cfg;

  SECTION("median value itself is close") {
    auto s = gt_stream(m, {gt(1, "a", ava::BBox(0, 0, 10, 10)), gt(1, "b", ava::BBox(0, 0, 10, 20)),
                           gt(1, "c", ava::BBox(0, 0, 10, 30))});
    const auto bands = ava::distance_bands(s, cfg);
    REQUIRE(bands.p50_area == 200.0);
    REQUIRE(bands.band.at({1, "a"}) == ava::DistanceBand::Far);
    REQUIRE(bands.band.at({1, "b"}) == ava::DistanceBand::Close);
    REQUIRE(bands.band.at({1, "c"}) == ava::DistanceBand::Close);
  }

  SECTION("all equal areas are all close") {
    auto s = gt_stream(m, {gt(1, "a", ava::BBox(0, 0, 5, 5)), gt(2, "a", ava::BBox(3, 3, 5, 5))});
    const auto bands = ava::distance_bands(s, cfg);
    for (const auto& [key, band] : bands.band) REQUIRE(band == ava::DistanceBand::Close);
  }

  SECTION("areas 1..1000 put 501 records close") {
    std::vector<ava::GtRecord> recs;
    for (int i = 1; i <= 1000; ++i) {
      recs.push_back(gt(1, "p" + std::to_string(i), ava::BBox(0, 0, 1, i)));
    }
    const auto bands = ava::distance_bands(gt_stream(helpers::meta(1, 30), recs), cfg);
    std::size_t close = 0;
    for (const auto& [key, band] : bands.band) {
      if (band == ava::DistanceBand::Close) ++close;
    }
    REQUIRE(bands.p50_area == 500.0);
    REQUIRE(close == 501);
  }

  SECTION("no records") {
    REQUIRE_THROWS_AS(ava::distance_bands(gt_stream(m, {}), cfg), ava::EmptyGt);
  }
}

TEST_CASE("stratified recall attributes tp and fn to the GT stratum", "[localization]") {
  const auto m = helpers::meta(10, 30);
  ava::EvalConfig cfg;

  SECTION("all close and matched; far stays absent") {
    auto s = gt_stream(m, {gt(1, "a", ava::BBox(0, 0, 10, 10))});
    const auto bands = ava::distance_bands(s, cfg);
    ava::FrameMatch fm;
    fm.frame = 1;
    fm.tp = {{"a", "e", 1.0}};
    const auto strat = ava::stratified_recall({fm}, s, bands);
    REQUIRE(strat.close.present());
    REQUIRE(strat.close.recall() == 1.0);
    REQUIRE_FALSE(strat.far.present());
  }

  SECTION("half-matched far stratum") {
    std::vector<ava::GtRecord> recs;
    std::vector<ava::FrameMatch> matches;
    // 10 small boxes on frames 1..10, 5 matched; 11 big anchors keep the
    // lower-interpolated median on the big area, so the smalls land far
    for (int f = 1; f <= 10; ++f) {
      recs.push_back(gt(f, "small", ava::BBox(0, 0, 2, 2)));
      recs.push_back(gt(f, "big", ava::BBox(0, 0, 50, 50)));
      ava::FrameMatch fm;
      fm.frame = f;
      fm.tp.push_back({"big", "eb", 1.0});
      if (f == 1) {
        recs.push_back(gt(f, "big2", ava::BBox(60, 0, 50, 50)));
        fm.tp.push_back({"big2", "eb2", 1.0});
      }
      if (f <= 5) fm.tp.push_back({"small", "es", 1.0});
      else fm.fn.push_back("small");
      matches.push_back(fm);
    }
    auto s = gt_stream(m, recs);
    const auto bands = ava::distance_bands(s, cfg);
    REQUIRE(bands.p50_area == 2500.0);
    const auto strat = ava::stratified_recall(matches, s, bands);
    REQUIRE(strat.far.tp == 5);
    REQUIRE(strat.far.fn == 5);
    REQUIRE(strat.far.recall() == 0.5);
    REQUIRE(strat.close.recall() == 1.0);
  }

  SECTION("never-matched heavy occlusion scores zero") {
    auto s = gt_stream(m, {gt(1, "h", ava::BBox(0, 0, 10, 10), true, ava::Occlusion::Heavy),
                           gt(1, "n", ava::BBox(20, 0, 10, 10))});
    const auto bands = ava::distance_bands(s, cfg);
    ava::FrameMatch fm;
    fm.frame = 1;
    fm.tp = {{"n", "e", 1.0}};
    fm.fn = {"h"};
    const auto strat = ava::stratified_recall({fm}, s, bands);
    REQUIRE(strat.occ_heavy.present());
    REQUIRE(strat.occ_heavy.recall() == 0.0);
    REQUIRE(strat.occ_none.recall() == 1.0);
    REQUIRE_FALSE(strat.occ_partial.present());
  }
}

TEST_CASE("strata partition the ground truth", "[localization][property]") {
  ava::SplitMix64 rng(99);
  const auto m = helpers::meta(50, 30);
  ava::EvalConfig cfg;

  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ava::GtRecord> recs;
    std::vector<ava::FrameMatch> matches;
    const auto frames = rng.uniform_int(1, 20);
    for (int f = 1; f <= frames; ++f) {
      ava::FrameMatch fm;
      fm.frame = f;
      const auto n = rng.uniform_int(0, 4);
      for (std::int64_t i = 0; i < n; ++i) {
        const auto occ = static_cast<ava::Occlusion>(rng.uniform_int(0, 2));
        const std::string id = "p" + std::to_string(i);
        recs.push_back(gt(f, id, helpers::random_box(rng), true, occ));
        if (rng.bernoulli(0.6)) fm.tp.push_back({id, "e" + id, 1.0});
        else fm.fn.push_back(id);
      }
      matches.push_back(fm);
    }
    if (recs.empty()) continue;
    auto s = gt_stream(m, recs);
    const auto bands = ava::distance_bands(s, cfg);
    const auto strat = ava::stratified_recall(matches, s, bands);

    const auto total = static_cast<std::int64_t>(recs.size());
    REQUIRE(strat.close.tp + strat.close.fn + strat.far.tp + strat.far.fn == total);
    REQUIRE(strat.occ_none.tp + strat.occ_none.fn + strat.occ_partial.tp + strat.occ_partial.fn +
                strat.occ_heavy.tp + strat.occ_heavy.fn ==
            total);

    // recall of the union is the record-weighted mean of stratum recalls
    const auto matched = strat.close.tp + strat.far.tp;
    if (total > 0) {
      const double weighted = (strat.close.recall() * (strat.close.tp + strat.close.fn) +
                               strat.far.recall() * (strat.far.tp + strat.far.fn)) /
                              static_cast<double>(total);
      REQUIRE(weighted == Catch::Approx(static_cast<double>(matched) / total));
    }
  }
}
