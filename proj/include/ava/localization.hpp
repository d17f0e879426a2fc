#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ava/errors.hpp"
#include "ava/geometry.hpp"
#include "ava/ingest.hpp"
#include "ava/matching.hpp"
#include "ava/stats.hpp"
#include "ava/types.hpp"

namespace ava {

/// Detection-level counts plus the derived ratios. When a denominator is
/// zero the ratio is reported as 0 and `vacuous` is set, so "no data" stays
/// distinguishable from "all wrong".
struct PrfResult {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool vacuous = false;
};

inline PrfResult make_prf(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
  PrfResult r;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  if (tp + fp > 0) r.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn > 0) r.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  if (r.precision + r.recall > 0.0) {
    r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  }
  r.vacuous = (tp + fp == 0) || (tp + fn == 0);
  return r;
}

inline PrfResult prf(const std::vector<FrameMatch>& matches) {
  std::int64_t tp = 0, fp = 0, fn = 0;
  for (const auto& m : matches) {
    tp += static_cast<std::int64_t>(m.tp.size());
    fp += static_cast<std::int64_t>(m.fp.size());
    fn += static_cast<std::int64_t>(m.fn.size());
  }
  return make_prf(tp, fp, fn);
}

/// Close/Far assignment per (frame, id), split at the median target-box area
/// of the stream. A record is Close iff its area >= the median.
struct DistanceBands {
  double p50_area = 0.0;
  std::map<std::pair<int, std::string>, DistanceBand> band;
};

inline DistanceBands distance_bands(const GtStream& gt, const EvalConfig& cfg) {
  if (gt.records.empty()) throw EmptyGt("no records to band by distance");
  std::vector<double> areas;
  areas.reserve(gt.records.size());
  for (const auto& r : gt.records) {
    const BBox* b = target_box(r, cfg.target);
    if (!b) {
      throw TargetMissing("GT id '" + r.person_id + "' at frame " + std::to_string(r.frame) +
                          " has no target box for distance banding");
    }
    areas.push_back(area(*b));
  }
  DistanceBands out;
  out.p50_area = percentile_lower(areas, 50.0);
  for (std::size_t i = 0; i < gt.records.size(); ++i) {
    const auto& r = gt.records[i];
    out.band[{r.frame, r.person_id}] =
        areas[i] >= out.p50_area ? DistanceBand::Close : DistanceBand::Far;
  }
  return out;
}

/// Recall for one stratum; absent (nullopt at the report level) when the
/// stratum holds no GT records.
struct StratumRecall {
  std::int64_t tp = 0;
  std::int64_t fn = 0;
  double recall() const {
    return tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  }
  bool present() const { return tp + fn > 0; }
};

struct StratifiedRecall {
  StratumRecall close;
  StratumRecall far;
  StratumRecall occ_none;
  StratumRecall occ_partial;
  StratumRecall occ_heavy;
  double p50_area = 0.0;
};

/// Per-stratum recall over the matched stream. FP boxes carry no stratum, so
/// only tp/fn are attributed; `gt` must be the same stream the matches came
/// from.
inline StratifiedRecall stratified_recall(const std::vector<FrameMatch>& matches,
                                          const GtStream& gt, const DistanceBands& bands) {
  std::map<std::pair<int, std::string>, const GtRecord*> by_key;
  for (const auto& r : gt.records) by_key[{r.frame, r.person_id}] = &r;

  StratifiedRecall out;
  out.p50_area = bands.p50_area;
  auto tally = [&](int frame, const std::string& gt_id, bool matched) {
    const auto it = by_key.find({frame, gt_id});
    if (it == by_key.end()) return;  // match stream from a different population
    const GtRecord& r = *it->second;
    auto bump = [&](StratumRecall& s) {
      if (matched) ++s.tp;
      else ++s.fn;
    };
    const auto bit = bands.band.find({frame, gt_id});
    if (bit != bands.band.end()) bump(bit->second == DistanceBand::Close ? out.close : out.far);
    switch (r.occlusion) {
      case Occlusion::None: bump(out.occ_none); break;
      case Occlusion::Partial: bump(out.occ_partial); break;
      case Occlusion::Heavy: bump(out.occ_heavy); break;
    }
  };
  for (const auto& m : matches) {
    for (const auto& pair : m.tp) tally(m.frame, pair.gt_id, true);
    for (const auto& id : m.fn) tally(m.frame, id, false);
  }
  return out;
}

}  // namespace ava
