#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "ava/ingest.hpp"
#include "helpers.hpp"

using helpers::est;
using helpers::est_stream;
using helpers::gt;
using helpers::gt_stream;

TEST_CASE("key-frame densification fills gaps with linear boxes", "[ingest]") {
  const auto m = helpers::meta(100, 30);
  ava::EvalConfig cfg;

  SECTION("intermediate frames get lerped coordinates") {
    auto s = gt_stream(m, {gt(1, "a", ava::BBox(0, 0, 10, 10)), gt(4, "a", ava::BBox(30, 0, 10, 10))});
    const auto out = ava::interpolate_keyframes(s, cfg);
    REQUIRE(out.records.size() == 4);
    REQUIRE(out.records[1].frame == 2);
    REQUIRE(out.records[1].person_box->x == Catch::Approx(10.0));
    REQUIRE(out.records[2].person_box->x == Catch::Approx(20.0));
  }

  SECTION("categorical fields copied from the earlier key-frame") {
    auto a = gt(1, "a", ava::BBox(0, 0, 10, 10), true, ava::Occlusion::Partial, 40, ava::Gender::Female);
    auto b = gt(3, "a", ava::BBox(2, 0, 10, 10), false, ava::Occlusion::Heavy, 40, ava::Gender::Female);
    const auto out = ava::interpolate_keyframes(gt_stream(m, {a, b}), cfg);
    REQUIRE(out.records.size() == 3);
    REQUIRE(out.records[1].ots == true);
    REQUIRE(out.records[1].occlusion == ava::Occlusion::Partial);
    REQUIRE(out.records[1].age_years == 40);
  }

  SECTION("gaps beyond the re-entry threshold are left open") {
    // 10 s at 30 fps = 300 frames; a 301-frame gap is a disappearance
    const auto m2 = helpers::meta(400, 30);
    auto s = gt_stream(m2, {gt(1, "a", ava::BBox(0, 0, 10, 10)), gt(302, "a", ava::BBox(5, 0, 10, 10))});
    const auto out = ava::interpolate_keyframes(s, cfg);
    REQUIRE(out.records.size() == 2);
  }

  SECTION("threshold-sized gap is still interpolated") {
    const auto m2 = helpers::meta(400, 30);
    auto s = gt_stream(m2, {gt(1, "a", ava::BBox(0, 0, 10, 10)), gt(301, "a", ava::BBox(5, 0, 10, 10))});
    const auto out = ava::interpolate_keyframes(s, cfg);
    REQUIRE(out.records.size() == 301);
  }

  SECTION("no records outside an identity's annotated span") {
    auto s = gt_stream(m, {gt(10, "a", ava::BBox(0, 0, 10, 10)), gt(12, "a", ava::BBox(2, 0, 10, 10)),
                           gt(5, "b", ava::BBox(0, 0, 10, 10))});
    const auto out = ava::interpolate_keyframes(s, cfg);
    for (const auto& r : out.records) {
      if (r.person_id == "a") {
        REQUIRE(r.frame >= 10);
        REQUIRE(r.frame <= 12);
      } else {
        REQUIRE(r.frame == 5);
      }
    }
  }
}

TEST_CASE("ignore areas drop records by own-area overlap", "[ingest]") {
  auto m = helpers::meta(10, 30);
  m.ignore_regions = {ava::BBox(0, 0, 100, 100)};
  ava::EvalConfig cfg;

  auto inside = gt(1, "in", ava::BBox(10, 10, 20, 20));
  auto outside = gt(1, "out", ava::BBox(500, 500, 20, 20));
  // exactly half the box area inside the region: inclusive threshold drops it
  auto boundary = gt(1, "edge", ava::BBox(90, 0, 20, 20));
  auto below = gt(1, "keep", ava::BBox(91, 0, 20, 20));  // 9/20 inside

  std::size_t gdrop = 0, edrop = 0;
  auto [g, e] = ava::apply_ignore_areas(gt_stream(m, {inside, outside, boundary, below}),
                                        est_stream(m, {est(1, "x", ava::BBox(10, 10, 20, 20)),
                                                       est(1, "y", ava::BBox(500, 500, 20, 20))}),
                                        m, cfg, &gdrop, &edrop);
  std::set<std::string> kept;
  for (const auto& r : g.records) kept.insert(r.person_id);
  REQUIRE(kept == std::set<std::string>{"out", "keep"});
  REQUIRE(gdrop == 2);
  REQUIRE(e.records.size() == 1);
  REQUIRE(e.records[0].est_id == "y");
  REQUIRE(edrop == 1);

  SECTION("idempotent") {
    auto [g2, e2] = ava::apply_ignore_areas(g, e, m, cfg);
    REQUIRE(g2.records.size() == g.records.size());
    REQUIRE(e2.records.size() == e.records.size());
  }

  SECTION("no regions means identity") {
    auto m2 = helpers::meta(10, 30);
    auto [g2, e2] =
        ava::apply_ignore_areas(gt_stream(m2, {inside}), est_stream(m2, {}), m2, cfg, &gdrop, &edrop);
    REQUIRE(g2.records.size() == 1);
    REQUIRE(gdrop == 0);
  }
}

TEST_CASE("re-entry splits mint new identities after long absences", "[ingest]") {
  const auto m = helpers::meta(2000, 30);  // threshold: 300 frames
  ava::EvalConfig cfg;
  const ava::BBox b(0, 0, 10, 10);

  SECTION("gap beyond threshold splits, boundary gap does not") {
    auto s = gt_stream(m, {gt(1, "a", b), gt(301, "a", b), gt(700, "a", b)});
    std::size_t splits = 0;
    const auto out = ava::split_reentries(s, m, cfg, &splits);
    REQUIRE(splits == 1);  // 301->700 gap is 399 > 300; 1->301 gap is exactly 300
    REQUIRE(out.records[0].person_id == "a");
    REQUIRE(out.records[1].person_id == "a");
    REQUIRE(out.records[2].person_id == "a#2");
  }

  SECTION("each further re-entry increments the ordinal") {
    auto s = gt_stream(m, {gt(1, "a", b), gt(400, "a", b), gt(900, "a", b)});
    const auto out = ava::split_reentries(s, m, cfg);
    REQUIRE(out.records[1].person_id == "a#2");
    REQUIRE(out.records[2].person_id == "a#3");
  }

  SECTION("frame and box content survive unchanged") {
    auto s = gt_stream(m, {gt(1, "a", b), gt(500, "a", ava::BBox(5, 5, 8, 8))});
    const auto out = ava::split_reentries(s, m, cfg);
    REQUIRE(out.records.size() == 2);
    REQUIRE(out.records[1].frame == 500);
    REQUIRE(out.records[1].person_box->w == 8.0);
  }
}

TEST_CASE("decimation keeps a deterministic stride", "[ingest]") {
  SECTION("target equal to native keeps everything") {
    REQUIRE(ava::decimate(5, 30, 30) == std::vector<int>{1, 2, 3, 4, 5});
  }
  SECTION("half rate keeps odd frames") {
    REQUIRE(ava::decimate(6, 30, 15) == std::vector<int>{1, 3, 5});
  }
  SECTION("60 frames at 1 fps from 30 fps") {
    REQUIRE(ava::decimate(60, 30, 1) == std::vector<int>{1, 31});
  }
  SECTION("fractional target rounds the stride") {
    REQUIRE(ava::decimate(9, 30, 7.5) == std::vector<int>{1, 5, 9});
  }
  SECTION("target above native is a configuration error") {
    REQUIRE_THROWS_AS(ava::decimate(10, 30, 31), ava::ConfigError);
    REQUIRE_THROWS_AS(ava::decimate(10, 30, 0), ava::ConfigError);
  }
}

TEST_CASE("frame restriction and attention filter", "[ingest]") {
  const auto m = helpers::meta(10, 30);
  const ava::BBox b(0, 0, 10, 10);
  auto s = gt_stream(m, {gt(1, "a", b), gt(2, "a", b, false), gt(3, "b", b)});

  const auto ots = ava::filter_ots(s);
  REQUIRE(ots.records.size() == 2);

  const auto restricted = ava::restrict_to_frames(s, {1, 3});
  REQUIRE(restricted.records.size() == 2);
  REQUIRE(restricted.records[0].frame == 1);
  REQUIRE(restricted.records[1].frame == 3);

  REQUIRE(ava::all_frames(3) == std::vector<int>{1, 2, 3});
}
