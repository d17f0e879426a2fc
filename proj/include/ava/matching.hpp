#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "ava/errors.hpp"
#include "ava/geometry.hpp"
#include "ava/ingest.hpp"
#include "ava/types.hpp"

namespace ava {

struct TpPair {
  std::string gt_id;
  std::string est_id;
  double iou = 0.0;
  bool operator==(const TpPair& o) const {
    return gt_id == o.gt_id && est_id == o.est_id && iou == o.iou;
  }
};

/// One-to-one matching outcome for a single frame. Every GT id lands in
/// exactly one of tp/fn; every estimation id in exactly one of tp/fp/neutral.
struct FrameMatch {
  int frame = 0;
  std::vector<TpPair> tp;
  std::vector<std::string> fp;       // unmatched estimation ids
  std::vector<std::string> fn;       // unmatched GT ids
  std::vector<std::string> neutral;  // estimations excused for overlapping excluded GT
};

namespace detail {

struct Candidate {
  double iou;
  std::size_t gi;
  std::size_t ei;
};

// Candidates sorted by iou descending, ties by (gt_id, est_id) ascending, so
// the accepted set is a deterministic function of the input.
inline void sort_candidates(std::vector<Candidate>& cands, const std::vector<const GtRecord*>& gt,
                            const std::vector<const EstRecord*>& est) {
  std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
    if (a.iou != b.iou) return a.iou > b.iou;
    const auto& ga = gt[a.gi]->person_id;
    const auto& gb = gt[b.gi]->person_id;
    if (ga != gb) return ga < gb;
    return est[a.ei]->est_id < est[b.ei]->est_id;
  });
}

// Maximum-sum assignment over the candidate graph (Hungarian on potentials).
// Rows are GT boxes, columns estimations; ineligible pairs carry -1 so a row
// prefers staying unmatched (the dummy column, weight 0) over taking one.
inline std::vector<int> max_sum_assignment(std::size_t n_gt, std::size_t n_est,
                                           const std::vector<std::vector<double>>& weight) {
  const std::size_t n = std::max(n_gt, n_est);
  const double NEG = -1.0;
  auto w = [&](std::size_t r, std::size_t c) -> double {
    if (r < n_gt && c < n_est) return weight[r][c];
    return 0.0;  // dummy row/column: unmatched
  };
  // Jonker-Volgenant style shortest augmenting paths on cost = -weight.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, n), way(n + 1, n);
  for (std::size_t i = 0; i < n; ++i) {
    p[n] = i;
    std::size_t j0 = n;
    std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = std::numeric_limits<double>::infinity();
      std::size_t j1 = n;
      for (std::size_t j = 0; j < n; ++j) {
        if (used[j]) continue;
        const double cost = -(w(i0, j) < 0.0 ? NEG : w(i0, j));
        const double cur = cost - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != n);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != n);
  }
  std::vector<int> match(n_gt, -1);
  for (std::size_t j = 0; j < n; ++j) {
    if (p[j] < n_gt && j < n_est && weight[p[j]][j] >= 0.0) match[p[j]] = static_cast<int>(j);
  }
  return match;
}

}  // namespace detail

/// Matches one frame's GT records against its estimations at cfg.iou_threshold.
/// Greedy: highest-IOU candidate pair first, both sides consumed on accept.
inline FrameMatch match_frame(const std::vector<const GtRecord*>& gt,
                              const std::vector<const EstRecord*>& est, const EvalConfig& cfg) {
  FrameMatch out;
  if (!gt.empty()) out.frame = gt.front()->frame;
  else if (!est.empty()) out.frame = est.front()->frame;

  std::vector<const BBox*> gt_boxes(gt.size());
  for (std::size_t i = 0; i < gt.size(); ++i) {
    gt_boxes[i] = target_box(*gt[i], cfg.target);
    if (!gt_boxes[i]) {
      throw TargetMissing("GT id '" + gt[i]->person_id + "' at frame " +
                          std::to_string(gt[i]->frame) + " has no " +
                          (cfg.target == Target::Face ? std::string("face") : std::string("person")) +
                          " box");
    }
  }

  std::vector<char> gt_used(gt.size(), 0), est_used(est.size(), 0);

  if (cfg.matcher == Matcher::MaxSum && !gt.empty() && !est.empty()) {
    std::vector<std::vector<double>> weight(gt.size(), std::vector<double>(est.size(), -1.0));
    for (std::size_t gi = 0; gi < gt.size(); ++gi) {
      for (std::size_t ei = 0; ei < est.size(); ++ei) {
        const double v = iou(*gt_boxes[gi], est[ei]->box);
        if (v >= cfg.iou_threshold) weight[gi][ei] = v;
      }
    }
    const auto assign = detail::max_sum_assignment(gt.size(), est.size(), weight);
    std::vector<detail::Candidate> accepted;
    for (std::size_t gi = 0; gi < gt.size(); ++gi) {
      if (assign[gi] >= 0) {
        const auto ei = static_cast<std::size_t>(assign[gi]);
        accepted.push_back({weight[gi][ei], gi, ei});
      }
    }
    detail::sort_candidates(accepted, gt, est);
    for (const auto& c : accepted) {
      gt_used[c.gi] = 1;
      est_used[c.ei] = 1;
      out.tp.push_back({gt[c.gi]->person_id, est[c.ei]->est_id, c.iou});
    }
  } else {
    std::vector<detail::Candidate> cands;
    for (std::size_t gi = 0; gi < gt.size(); ++gi) {
      for (std::size_t ei = 0; ei < est.size(); ++ei) {
        const double v = iou(*gt_boxes[gi], est[ei]->box);
        if (v >= cfg.iou_threshold) cands.push_back({v, gi, ei});
      }
    }
    detail::sort_candidates(cands, gt, est);
    for (const auto& c : cands) {
      if (gt_used[c.gi] || est_used[c.ei]) continue;
      gt_used[c.gi] = 1;
      est_used[c.ei] = 1;
      out.tp.push_back({gt[c.gi]->person_id, est[c.ei]->est_id, c.iou});
    }
  }

  for (std::size_t gi = 0; gi < gt.size(); ++gi) {
    if (!gt_used[gi]) out.fn.push_back(gt[gi]->person_id);
  }
  for (std::size_t ei = 0; ei < est.size(); ++ei) {
    if (!est_used[ei]) out.fp.push_back(est[ei]->est_id);
  }
  return out;
}

/// Matches every kept frame of a video. `excluded_gt`, when given, holds GT
/// records outside the scored population (e.g. not looking at the signage);
/// an unmatched estimation overlapping one at threshold is moved to neutral
/// rather than counted as fp.
inline std::vector<FrameMatch> match_video(const GtStream& gt, const EstStream& est,
                                           const EvalConfig& cfg, const std::vector<int>& kept_frames,
                                           const GtStream* excluded_gt = nullptr) {
  std::map<int, std::vector<const GtRecord*>> gt_by_frame;
  for (const auto& r : gt.records) gt_by_frame[r.frame].push_back(&r);
  std::map<int, std::vector<const EstRecord*>> est_by_frame;
  for (const auto& r : est.records) est_by_frame[r.frame].push_back(&r);
  std::map<int, std::vector<const GtRecord*>> excl_by_frame;
  if (excluded_gt && cfg.neutral_fp_vs_non_ots) {
    for (const auto& r : excluded_gt->records) excl_by_frame[r.frame].push_back(&r);
  }

  static const std::vector<const GtRecord*> no_gt;
  static const std::vector<const EstRecord*> no_est;

  std::vector<FrameMatch> out;
  out.reserve(kept_frames.size());
  for (const int frame : kept_frames) {
    const auto git = gt_by_frame.find(frame);
    const auto eit = est_by_frame.find(frame);
    FrameMatch m = match_frame(git != gt_by_frame.end() ? git->second : no_gt,
                               eit != est_by_frame.end() ? eit->second : no_est, cfg);
    m.frame = frame;

    const auto xit = excl_by_frame.find(frame);
    if (xit != excl_by_frame.end() && !m.fp.empty() && eit != est_by_frame.end()) {
      std::map<std::string, const BBox*> est_box;
      for (const auto* e : eit->second) est_box[e->est_id] = &e->box;
      std::vector<std::string> fp_kept;
      for (const auto& id : m.fp) {
        bool excused = false;
        for (const auto* x : xit->second) {
          const BBox* xb = eval_box(*x, cfg.target);
          if (xb && iou(*xb, *est_box.at(id)) >= cfg.iou_threshold) {
            excused = true;
            break;
          }
        }
        if (excused) m.neutral.push_back(id);
        else fp_kept.push_back(id);
      }
      m.fp = std::move(fp_kept);
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace ava
