#pragma once

// Shared fixtures: seeded case generators and independent reference
// implementations the fast paths are checked against.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ava/ava.hpp"

namespace helpers {

inline ava::VideoMeta meta(int frames = 100, double fps = 30.0, int w = 1920, int h = 1080) {
  ava::VideoMeta m;
  m.name = "v";
  m.frame_count = frames;
  m.fps = fps;
  m.width = w;
  m.height = h;
  return m;
}

inline ava::GtRecord gt(int frame, const std::string& id, ava::BBox box, bool ots = true,
                        ava::Occlusion occ = ava::Occlusion::None,
                        std::optional<int> age = std::nullopt,
                        std::optional<ava::Gender> gender = std::nullopt) {
  ava::GtRecord r;
  r.frame = frame;
  r.person_id = id;
  r.person_box = box;
  r.face_box = box;
  r.ots = ots;
  r.occlusion = occ;
  r.age_years = age;
  r.gender = gender;
  return r;
}

inline ava::EstRecord est(int frame, const std::string& id, ava::BBox box) {
  ava::EstRecord r;
  r.frame = frame;
  r.est_id = id;
  r.box = box;
  return r;
}

inline ava::GtStream gt_stream(const ava::VideoMeta& m, std::vector<ava::GtRecord> records) {
  ava::GtStream s;
  s.meta = m;
  s.records = std::move(records);
  return s;
}

inline ava::EstStream est_stream(const ava::VideoMeta& m, std::vector<ava::EstRecord> records) {
  ava::EstStream s;
  s.video = m.name;
  s.records = std::move(records);
  return s;
}

// Greedy matching re-derived from the rule statement: rescan every remaining
// candidate for the maximum each round instead of sorting once.
struct OracleBox {
  std::string id;
  ava::BBox box;
};

inline std::vector<ava::TpPair> greedy_rescan(const std::vector<OracleBox>& gt,
                                              const std::vector<OracleBox>& est, double threshold) {
  std::set<std::size_t> gt_free, est_free;
  for (std::size_t i = 0; i < gt.size(); ++i) gt_free.insert(i);
  for (std::size_t i = 0; i < est.size(); ++i) est_free.insert(i);
  std::vector<ava::TpPair> tp;
  for (;;) {
    double best = -1.0;
    std::size_t bg = 0, be = 0;
    bool found = false;
    for (const std::size_t gi : gt_free) {
      for (const std::size_t ei : est_free) {
        const double v = ava::iou(gt[gi].box, est[ei].box);
        if (v < threshold) continue;
        const bool better =
            v > best ||
            (v == best && (gt[gi].id < gt[bg].id ||
                           (gt[gi].id == gt[bg].id && est[ei].id < est[be].id)));
        if (!found || better) {
          best = v;
          bg = gi;
          be = ei;
          found = true;
        }
      }
    }
    if (!found) break;
    tp.push_back({gt[bg].id, est[be].id, best});
    gt_free.erase(bg);
    est_free.erase(be);
  }
  return tp;
}

// Percentile re-derived by repeated minimum extraction, no sorting.
inline double percentile_by_selection(std::vector<double> values, double q) {
  const auto n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(q / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  double out = 0.0;
  for (std::size_t k = 0; k < rank; ++k) {
    const auto it = std::min_element(values.begin(), values.end());
    out = *it;
    values.erase(it);
  }
  return out;
}

// Random axis-aligned boxes in a compact arena so overlaps are common.
inline ava::BBox random_box(ava::SplitMix64& rng, double arena = 100.0) {
  const double w = rng.uniform(5.0, arena / 2.0);
  const double h = rng.uniform(5.0, arena / 2.0);
  const double x = rng.uniform(0.0, arena - w);
  const double y = rng.uniform(0.0, arena - h);
  return ava::BBox(x, y, w, h);
}

// Random per-identity presence built from a few closed intervals.
inline ava::IdentityPresence random_presence(ava::SplitMix64& rng, int n_ids, int n_kept,
                                             const char* prefix) {
  ava::IdentityPresence p;
  for (int i = 0; i < n_ids; ++i) {
    std::set<int> frames;
    const auto n_intervals = rng.uniform_int(1, 5);
    for (std::int64_t k = 0; k < n_intervals; ++k) {
      const auto start = rng.uniform_int(1, n_kept);
      const auto len = rng.uniform_int(1, std::max<std::int64_t>(1, n_kept / 4));
      for (std::int64_t t = start; t < start + len && t <= n_kept; ++t) {
        frames.insert(static_cast<int>(t));
      }
    }
    if (frames.empty()) continue;
    p[prefix + std::to_string(i)] = std::vector<int>(frames.begin(), frames.end());
  }
  return p;
}

}  // namespace helpers
