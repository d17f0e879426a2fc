#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ava/errors.hpp"
#include "ava/ingest.hpp"
#include "ava/stats.hpp"
#include "ava/types.hpp"

namespace ava {

/// Per-kept-frame counts, index-aligned with the kept-frame list.
struct CountSeries {
  std::vector<int> n_gt_ots;
  std::vector<int> n_gt_all;
  std::vector<int> n_est;
};

/// Per identity, the sorted 1-based positions (into the kept-frame list)
/// where it appears.
using IdentityPresence = std::map<std::string, std::vector<int>>;

namespace detail {

inline std::map<int, int> frame_positions(const std::vector<int>& kept_frames) {
  std::map<int, int> pos;
  for (std::size_t i = 0; i < kept_frames.size(); ++i) pos[kept_frames[i]] = static_cast<int>(i + 1);
  return pos;
}

}  // namespace detail

inline CountSeries build_count_series(const GtStream& gt_ots, const GtStream& gt_all,
                                      const EstStream& est, const std::vector<int>& kept_frames) {
  const auto pos = detail::frame_positions(kept_frames);
  CountSeries s;
  s.n_gt_ots.assign(kept_frames.size(), 0);
  s.n_gt_all.assign(kept_frames.size(), 0);
  s.n_est.assign(kept_frames.size(), 0);
  for (const auto& r : gt_ots.records) {
    const auto it = pos.find(r.frame);
    if (it != pos.end()) ++s.n_gt_ots[it->second - 1];
  }
  for (const auto& r : gt_all.records) {
    const auto it = pos.find(r.frame);
    if (it != pos.end()) ++s.n_gt_all[it->second - 1];
  }
  for (const auto& r : est.records) {
    const auto it = pos.find(r.frame);
    if (it != pos.end()) ++s.n_est[it->second - 1];
  }
  return s;
}

inline IdentityPresence build_gt_presence(const GtStream& gt, const std::vector<int>& kept_frames) {
  const auto pos = detail::frame_positions(kept_frames);
  IdentityPresence p;
  for (const auto& r : gt.records) {
    const auto it = pos.find(r.frame);
    if (it != pos.end()) p[r.person_id].push_back(it->second);
  }
  for (auto& [id, v] : p) std::sort(v.begin(), v.end());
  return p;
}

inline IdentityPresence build_est_presence(const EstStream& est, const std::vector<int>& kept_frames) {
  const auto pos = detail::frame_positions(kept_frames);
  IdentityPresence p;
  for (const auto& r : est.records) {
    const auto it = pos.find(r.frame);
    if (it != pos.end()) p[r.est_id].push_back(it->second);
  }
  for (auto& [id, v] : p) std::sort(v.begin(), v.end());
  return p;
}

namespace detail {

inline double mean_abs_diff(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.empty()) throw EmptySeries("no kept frames to count over");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum / static_cast<double>(a.size());
}

}  // namespace detail

/// Mean absolute per-frame error between estimated and attentive-GT counts.
inline double moe(const CountSeries& s) { return detail::mean_abs_diff(s.n_est, s.n_gt_ots); }

/// Same, against everyone annotated regardless of attention.
inline double mpe(const CountSeries& s) { return detail::mean_abs_diff(s.n_est, s.n_gt_all); }

/// Relative error of whole-video unique-identity counts.
inline double coe(const IdentityPresence& gt, const IdentityPresence& est) {
  const auto n_gt = static_cast<double>(gt.size());
  const auto n_est = static_cast<double>(est.size());
  return std::abs(n_est - n_gt) / std::max(n_gt, 1.0);
}

inline double cpe(const IdentityPresence& gt_all, const IdentityPresence& est) {
  return coe(gt_all, est);
}

/// Unique-count error per D-frame sliding window (windows span positions
/// [t, t+D], D+1 kept frames, stride 1).
struct TcoeResult {
  double duration_s = 0.0;
  int window_frames = 0;  // D
  std::int64_t segment_count = 0;
  double mean = 0.0;
  double stddev = 0.0;
  bool skipped = false;  // duration does not fit in the kept-frame span
};

namespace detail {

// Unique identities per window start: each presence position p makes the
// identity visible from starts [p-D, p]; per-identity interval merge feeds a
// +-1 difference array over starts, prefix-summed once.
inline std::vector<std::int64_t> unique_per_start(const IdentityPresence& presence, int D,
                                                  std::int64_t n_starts) {
  std::vector<std::int64_t> diff(static_cast<std::size_t>(n_starts) + 2, 0);
  for (const auto& [id, positions] : presence) {
    std::int64_t lo = 0, hi = -1;  // current merged [lo, hi], empty at start
    auto flush = [&]() {
      const std::int64_t a = std::max<std::int64_t>(lo, 1);
      const std::int64_t b = std::min<std::int64_t>(hi, n_starts);
      if (a <= b) {
        ++diff[static_cast<std::size_t>(a)];
        --diff[static_cast<std::size_t>(b) + 1];
      }
    };
    for (const int p : positions) {
      if (hi < 0) {
        lo = p - D;
        hi = p;
      } else if (p - D <= hi + 1) {
        hi = p;
      } else {
        flush();
        lo = p - D;
        hi = p;
      }
    }
    if (hi >= 0) flush();
  }
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n_starts), 0);
  std::int64_t run = 0;
  for (std::int64_t t = 1; t <= n_starts; ++t) {
    run += diff[static_cast<std::size_t>(t)];
    counts[static_cast<std::size_t>(t) - 1] = run;
  }
  return counts;
}

}  // namespace detail

/// Per-window |unique est - unique GT| for a single window length D, over all
/// starts {1..T'-D}. Requires D < T'.
inline std::vector<std::int64_t> tcoe_errors(const IdentityPresence& gt,
                                             const IdentityPresence& est, int D,
                                             std::int64_t n_kept) {
  const std::int64_t n_starts = n_kept - D;
  const auto g = detail::unique_per_start(gt, D, n_starts);
  const auto e = detail::unique_per_start(est, D, n_starts);
  std::vector<std::int64_t> err(static_cast<std::size_t>(n_starts), 0);
  for (std::size_t t = 0; t < err.size(); ++t) err[t] = std::abs(e[t] - g[t]);
  return err;
}

/// From-scratch reference: rebuilds each window's identity sets individually.
inline std::vector<std::int64_t> tcoe_oracle(const IdentityPresence& gt,
                                             const IdentityPresence& est, int D,
                                             std::int64_t n_kept) {
  auto ids_at = [&](const IdentityPresence& p) {
    std::vector<std::vector<int>> at(static_cast<std::size_t>(n_kept) + 1);
    int next = 0;
    for (const auto& [id, positions] : p) {
      for (const int pos : positions) at[static_cast<std::size_t>(pos)].push_back(next);
      ++next;
    }
    return at;
  };
  const auto gt_at = ids_at(gt);
  const auto est_at = ids_at(est);
  std::vector<std::int64_t> err;
  for (std::int64_t t = 1; t + D <= n_kept; ++t) {
    std::set<int> g, e;
    for (std::int64_t pos = t; pos <= t + D; ++pos) {
      for (const int id : gt_at[static_cast<std::size_t>(pos)]) g.insert(id);
      for (const int id : est_at[static_cast<std::size_t>(pos)]) e.insert(id);
    }
    err.push_back(std::abs(static_cast<std::int64_t>(e.size()) - static_cast<std::int64_t>(g.size())));
  }
  return err;
}

/// Evaluates every configured duration at the effective frame rate. A
/// duration whose window does not fit (D >= T' or D < 1) comes back skipped.
inline std::vector<TcoeResult> tcoe(const IdentityPresence& gt, const IdentityPresence& est,
                                    const std::vector<double>& durations_s, double effective_fps,
                                    std::int64_t n_kept) {
  std::vector<TcoeResult> out;
  for (const double dur : durations_s) {
    TcoeResult r;
    r.duration_s = dur;
    r.window_frames = static_cast<int>(std::lround(dur * effective_fps));
    if (r.window_frames < 1 || r.window_frames >= n_kept) {
      r.skipped = true;
      out.push_back(r);
      continue;
    }
    const auto errs = tcoe_errors(gt, est, r.window_frames, n_kept);
    r.segment_count = static_cast<std::int64_t>(errs.size());
    std::vector<double> as_double(errs.begin(), errs.end());
    r.mean = mean(as_double);
    r.stddev = stddev_pop(as_double);
    out.push_back(r);
  }
  return out;
}

}  // namespace ava
