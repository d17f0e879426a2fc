#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ava/errors.hpp"
#include "ava/geometry.hpp"
#include "ava/types.hpp"

namespace ava {

/// Validated ground-truth annotations for one video, ordered by
/// (frame, person_id) with unique keys.
struct GtStream {
  VideoMeta meta;
  std::vector<GtRecord> records;
};

/// Algorithm estimations for one video, ordered by (frame, est_id) with
/// unique keys.
struct EstStream {
  std::string video;
  std::vector<EstRecord> records;
};

namespace detail {

inline void sort_gt(std::vector<GtRecord>& records) {
  std::sort(records.begin(), records.end(), [](const GtRecord& a, const GtRecord& b) {
    return std::tie(a.frame, a.person_id) < std::tie(b.frame, b.person_id);
  });
}

inline void sort_est(std::vector<EstRecord>& records) {
  std::sort(records.begin(), records.end(), [](const EstRecord& a, const EstRecord& b) {
    return std::tie(a.frame, a.est_id) < std::tie(b.frame, b.est_id);
  });
}

}  // namespace detail

/// Frame-index gap above which two sightings of the same identity count as
/// distinct presences (strictly greater than; a gap of exactly the threshold
/// is continuous presence).
inline int reentry_gap_frames(const VideoMeta& meta, const EvalConfig& cfg) {
  return static_cast<int>(std::lround(cfg.reentry_gap_s * meta.fps));
}

/// Densifies key-frame annotations: for every identity and every pair of
/// consecutive annotated frames not separated by more than the re-entry gap,
/// inserts one record per intermediate frame with linearly interpolated box
/// coordinates. Categorical fields (ots, occlusion, age, gender) are copied
/// from the earlier key-frame. Never creates records outside an identity's
/// annotated span.
inline GtStream interpolate_keyframes(const GtStream& gt, const EvalConfig& cfg) {
  const int max_gap = reentry_gap_frames(gt.meta, cfg);

  std::map<std::string, std::vector<const GtRecord*>> by_id;
  for (const auto& r : gt.records) by_id[r.person_id].push_back(&r);

  auto lerp_box = [](const BBox& a, const BBox& b, double alpha) {
    return BBox(a.x + (b.x - a.x) * alpha, a.y + (b.y - a.y) * alpha,
                a.w + (b.w - a.w) * alpha, a.h + (b.h - a.h) * alpha);
  };

  GtStream out;
  out.meta = gt.meta;
  for (const auto& [id, recs] : by_id) {
    for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
      const GtRecord& a = *recs[i];
      const GtRecord& b = *recs[i + 1];
      out.records.push_back(a);
      const int gap = b.frame - a.frame;
      if (gap <= 1 || gap > max_gap) continue;
      for (int f = a.frame + 1; f < b.frame; ++f) {
        const double alpha = static_cast<double>(f - a.frame) / gap;
        GtRecord mid = a;  // categorical fields held from the earlier key-frame
        mid.frame = f;
        mid.person_box.reset();
        mid.face_box.reset();
        if (a.person_box && b.person_box) mid.person_box = lerp_box(*a.person_box, *b.person_box, alpha);
        if (a.face_box && b.face_box) mid.face_box = lerp_box(*a.face_box, *b.face_box, alpha);
        if (!mid.person_box && !mid.face_box) {
          // endpoints carry disjoint box kinds; hold the earlier frame's boxes
          mid.person_box = a.person_box;
          mid.face_box = a.face_box;
        }
        out.records.push_back(std::move(mid));
      }
    }
    if (!recs.empty()) out.records.push_back(*recs.back());
  }
  detail::sort_gt(out.records);
  return out;
}

/// Ratio of the box's own area lying inside any single ignore region.
inline double ignore_overlap(const BBox& box, const std::vector<BBox>& regions) {
  double best = 0;
  for (const auto& r : regions) best = std::max(best, intersection_area(box, r) / area(box));
  return best;
}

/// Drops every ground-truth and estimation record whose evaluation box lies
/// inside an ignore region by at least cfg.ignore_overlap_ratio of its own
/// area (inclusive). Surviving records are unchanged; the operation is
/// idempotent. The number of dropped records is reported via the out
/// parameters when non-null.
inline std::pair<GtStream, EstStream> apply_ignore_areas(const GtStream& gt, const EstStream& est,
                                                         const VideoMeta& meta, const EvalConfig& cfg,
                                                         std::size_t* gt_dropped = nullptr,
                                                         std::size_t* est_dropped = nullptr) {
  GtStream gt_out;
  gt_out.meta = gt.meta;
  EstStream est_out;
  est_out.video = est.video;
  if (meta.ignore_regions.empty()) {
    gt_out.records = gt.records;
    est_out.records = est.records;
    if (gt_dropped) *gt_dropped = 0;
    if (est_dropped) *est_dropped = 0;
    return {std::move(gt_out), std::move(est_out)};
  }

  std::size_t gdrop = 0, edrop = 0;
  for (const auto& r : gt.records) {
    const BBox* box = eval_box(r, cfg.target);
    if (box && ignore_overlap(*box, meta.ignore_regions) >= cfg.ignore_overlap_ratio) {
      ++gdrop;
      continue;
    }
    gt_out.records.push_back(r);
  }
  for (const auto& r : est.records) {
    if (ignore_overlap(r.box, meta.ignore_regions) >= cfg.ignore_overlap_ratio) {
      ++edrop;
      continue;
    }
    est_out.records.push_back(r);
  }
  if (gt_dropped) *gt_dropped = gdrop;
  if (est_dropped) *est_dropped = edrop;
  return {std::move(gt_out), std::move(est_out)};
}

/// Splits ground-truth identities at presence gaps longer than the re-entry
/// threshold: a person absent for more than reentry_gap_s is counted as a new
/// unique person from their next sighting on. The first presence keeps the
/// original identity; later ones get "<id>#<ordinal>" starting at 2. Only
/// identities change; the multiset of (frame, box) pairs is preserved.
/// Estimation identities are never split: trackers own their id management.
inline GtStream split_reentries(const GtStream& gt, const VideoMeta& meta, const EvalConfig& cfg,
                                std::size_t* splits = nullptr) {
  const int max_gap = reentry_gap_frames(meta, cfg);

  std::map<std::string, std::vector<GtRecord>> by_id;
  for (const auto& r : gt.records) by_id[r.person_id].push_back(r);

  std::size_t split_count = 0;
  GtStream out;
  out.meta = gt.meta;
  for (auto& [id, recs] : by_id) {
    int ordinal = 1;
    int prev_frame = recs.front().frame;
    for (auto& r : recs) {
      if (r.frame - prev_frame > max_gap) {
        ++ordinal;
        ++split_count;
      }
      prev_frame = r.frame;
      if (ordinal > 1) r.person_id = id + "#" + std::to_string(ordinal);
      out.records.push_back(std::move(r));
    }
  }
  detail::sort_gt(out.records);
  if (splits) *splits = split_count;
  return out;
}

/// Retains only records of people with opportunity to see.
inline GtStream filter_ots(const GtStream& gt) {
  GtStream out;
  out.meta = gt.meta;
  for (const auto& r : gt.records) {
    if (r.ots) out.records.push_back(r);
  }
  return out;
}

/// Deterministic frame subsampling simulating a lower input frame rate:
/// stride = round(fps / target_fps), keeping frames t with (t-1) % stride == 0.
/// Dropped frames take part in neither inference nor evaluation downstream.
inline std::vector<int> decimate(int frame_count, double fps, double target_fps) {
  if (!(target_fps > 0)) throw ConfigError("target_fps must be > 0");
  if (target_fps > fps) {
    throw ConfigError("target_fps " + std::to_string(target_fps) + " exceeds video rate " +
                      std::to_string(fps));
  }
  const int stride = static_cast<int>(std::lround(fps / target_fps));
  std::vector<int> kept;
  for (int t = 1; t <= frame_count; t += stride) kept.push_back(t);
  return kept;
}

/// All frames 1..T, the no-decimation kept set.
inline std::vector<int> all_frames(int frame_count) {
  std::vector<int> kept(static_cast<std::size_t>(frame_count));
  for (int t = 1; t <= frame_count; ++t) kept[static_cast<std::size_t>(t - 1)] = t;
  return kept;
}

/// Restricts a stream to the kept-frame set (kept must be sorted).
inline GtStream restrict_to_frames(const GtStream& gt, const std::vector<int>& kept) {
  GtStream out;
  out.meta = gt.meta;
  for (const auto& r : gt.records) {
    if (std::binary_search(kept.begin(), kept.end(), r.frame)) out.records.push_back(r);
  }
  return out;
}

inline EstStream restrict_to_frames(const EstStream& est, const std::vector<int>& kept) {
  EstStream out;
  out.video = est.video;
  for (const auto& r : est.records) {
    if (std::binary_search(kept.begin(), kept.end(), r.frame)) out.records.push_back(r);
  }
  return out;
}

}  // namespace ava
