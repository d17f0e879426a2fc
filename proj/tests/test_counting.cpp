#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "ava/counting.hpp"
#include "helpers.hpp"

using helpers::est;
using helpers::est_stream;
using helpers::gt;
using helpers::gt_stream;

namespace {

ava::CountSeries series(std::vector<int> n_gt_ots, std::vector<int> n_gt_all,
                        std::vector<int> n_est) {
  ava::CountSeries s;
  s.n_gt_ots = std::move(n_gt_ots);
  s.n_gt_all = std::move(n_gt_all);
  s.n_est = std::move(n_est);
  return s;
}

ava::IdentityPresence everywhere(int n_ids, int n_kept, const char* prefix) {
  ava::IdentityPresence p;
  for (int i = 0; i < n_ids; ++i) {
    std::vector<int> all(static_cast<std::size_t>(n_kept));
    for (int t = 1; t <= n_kept; ++t) all[static_cast<std::size_t>(t) - 1] = t;
    p[prefix + std::to_string(i)] = std::move(all);
  }
  return p;
}

}  // namespace

TEST_CASE("per-frame count errors", "[counting]") {
  SECTION("perfect detector scores zero") {
    REQUIRE(ava::moe(series({3, 3}, {5, 5}, {3, 3})) == 0.0);
  }
  SECTION("absolute errors average, signs do not cancel") {
    REQUIRE(ava::moe(series({2, 2}, {2, 2}, {0, 4})) == 2.0);
  }
  SECTION("attentive and everyone baselines differ on the same frame") {
    const auto m = helpers::meta(1, 30);
    std::vector<ava::GtRecord> recs;
    for (int i = 0; i < 5; ++i) {
      recs.push_back(gt(1, "p" + std::to_string(i), ava::BBox(i * 20.0, 0, 10, 10), i < 3));
    }
    auto all = gt_stream(m, recs);
    auto ots = ava::filter_ots(all);
    auto e = est_stream(m, {est(1, "a", ava::BBox(0, 0, 10, 10)), est(1, "b", ava::BBox(20, 0, 10, 10)),
                            est(1, "c", ava::BBox(40, 0, 10, 10))});
    const auto s = ava::build_count_series(ots, all, e, {1});
    REQUIRE(ava::moe(s) == 0.0);
    REQUIRE(ava::mpe(s) == 2.0);
  }
  SECTION("fractional mean") {
    REQUIRE(ava::mpe(series({0, 0}, {1, 3}, {1, 0})) == 1.5);
  }
  SECTION("no kept frames") {
    REQUIRE_THROWS_AS(ava::moe(series({}, {}, {})), ava::EmptySeries);
  }
}

TEST_CASE("per-frame counts ignore identity labels", "[counting]") {
  const auto m = helpers::meta(2, 30);
  auto g = gt_stream(m, {gt(1, "a", ava::BBox(0, 0, 10, 10)), gt(2, "a", ava::BBox(0, 0, 10, 10))});
  auto e1 = est_stream(m, {est(1, "x", ava::BBox(0, 0, 10, 10)), est(2, "x", ava::BBox(0, 0, 10, 10))});
  auto e2 = est_stream(m, {est(1, "x", ava::BBox(0, 0, 10, 10)), est(2, "y", ava::BBox(0, 0, 10, 10))});
  const auto kept = std::vector<int>{1, 2};
  const auto s1 = ava::build_count_series(g, g, e1, kept);
  const auto s2 = ava::build_count_series(g, g, e2, kept);
  REQUIRE(ava::moe(s1) == ava::moe(s2));
  REQUIRE(ava::mpe(s1) == ava::mpe(s2));
  // but the whole-video unique count does see the relabel
  const auto gp = ava::build_gt_presence(g, kept);
  REQUIRE(ava::coe(gp, ava::build_est_presence(e1, kept)) == 0.0);
  REQUIRE(ava::coe(gp, ava::build_est_presence(e2, kept)) == 1.0);
}

TEST_CASE("whole-video unique-count error", "[counting]") {
  SECTION("bijective tracking scores zero") {
    const auto p = everywhere(4, 10, "p");
    const auto q = everywhere(4, 10, "q");
    REQUIRE(ava::coe(p, q) == 0.0);
  }
  SECTION("overcount is relative to the GT total") {
    REQUIRE(ava::coe(everywhere(10, 5, "p"), everywhere(25, 5, "q")) == 1.5);
  }
  SECTION("empty GT divides by one, not zero") {
    REQUIRE(ava::coe({}, everywhere(3, 5, "q")) == 3.0);
    REQUIRE(ava::coe({}, {}) == 0.0);
  }
  SECTION("everyone-baseline variant is the same formula") {
    REQUIRE(ava::cpe(everywhere(2, 5, "p"), everywhere(3, 5, "q")) == 0.5);
  }
}

TEST_CASE("windowed unique-count error over sliding windows", "[counting]") {
  SECTION("perfect tracker scores zero at every duration") {
    const auto p = everywhere(3, 100, "p");
    const auto q = everywhere(3, 100, "q");
    const auto rows = ava::tcoe(p, q, {1.0, 2.0, 3.0}, 10.0, 100);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
      REQUIRE_FALSE(r.skipped);
      REQUIRE(r.mean == 0.0);
      REQUIRE(r.stddev == 0.0);
      REQUIRE(r.segment_count == 100 - r.window_frames);
    }
  }

  SECTION("fresh-label-per-frame tracker errs by exactly the window length") {
    const int n_kept = 50, D = 10;
    const auto g = everywhere(1, n_kept, "p");
    ava::IdentityPresence e;
    for (int t = 1; t <= n_kept; ++t) e["f" + std::to_string(t)] = {t};
    const auto errs = ava::tcoe_errors(g, e, D, n_kept);
    REQUIRE(static_cast<int>(errs.size()) == n_kept - D);
    // each window holds D+1 est labels against 1 GT identity
    for (const auto v : errs) REQUIRE(v == D);
  }

  SECTION("the full-span window reproduces the whole-video unique error") {
    ava::SplitMix64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const int n_kept = static_cast<int>(rng.uniform_int(2, 60));
      const auto g = helpers::random_presence(rng, 4, n_kept, "p");
      const auto e = helpers::random_presence(rng, 6, n_kept, "q");
      const auto errs = ava::tcoe_errors(g, e, n_kept - 1, n_kept);
      REQUIRE(errs.size() == 1);
      const auto direct = std::abs(static_cast<std::int64_t>(e.size()) -
                                   static_cast<std::int64_t>(g.size()));
      REQUIRE(errs[0] == direct);
      const double n_gt = static_cast<double>(g.size());
      REQUIRE(static_cast<double>(errs[0]) ==
              Catch::Approx(ava::coe(g, e) * std::max(n_gt, 1.0)));
    }
  }

  SECTION("durations that do not fit are skipped, not zeroed") {
    const auto p = everywhere(1, 30, "p");
    const auto rows = ava::tcoe(p, p, {0.5, 1.0, 0.01, 100.0}, 30.0, 30);
    REQUIRE(rows[0].window_frames == 15);
    REQUIRE_FALSE(rows[0].skipped);
    REQUIRE(rows[0].segment_count == 15);
    REQUIRE(rows[1].window_frames == 30);  // needs 31 kept frames
    REQUIRE(rows[1].skipped);
    REQUIRE(rows[2].window_frames == 0);  // rounds below one frame
    REQUIRE(rows[2].skipped);
    REQUIRE(rows[3].skipped);  // far longer than the span
  }
}

TEST_CASE("windowed unique counts match a per-window set rebuild", "[counting][property]") {
  ava::SplitMix64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const int n_kept = static_cast<int>(rng.uniform_int(5, 200));
    const auto g = helpers::random_presence(rng, static_cast<int>(rng.uniform_int(1, 10)), n_kept, "p");
    const auto e = helpers::random_presence(rng, static_cast<int>(rng.uniform_int(1, 12)), n_kept, "q");
    const int D = static_cast<int>(rng.uniform_int(1, n_kept - 1));
    const auto fast = ava::tcoe_errors(g, e, D, n_kept);
    const auto slow = ava::tcoe_oracle(g, e, D, n_kept);
    REQUIRE(fast == slow);
  }
}
