#pragma once

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ava/attributes.hpp"
#include "ava/counting.hpp"
#include "ava/errors.hpp"
#include "ava/ingest.hpp"
#include "ava/io.hpp"
#include "ava/localization.hpp"
#include "ava/matching.hpp"
#include "ava/stats.hpp"
#include "ava/types.hpp"

namespace ava {

struct VideoInput {
  std::string gt_path;
  std::string est_path;
  std::string meta_path;
};

/// Everything measured on one video. Matches and window dumps ride along for
/// optional CSV export but stay out of the JSON report.
struct VideoReport {
  std::string video;
  int frames = 0;
  double fps = 0.0;
  double effective_fps = 0.0;
  std::int64_t kept_frames = 0;

  PrfResult loc;
  bool has_gt = false;  // scored population nonempty; strata absent otherwise
  StratifiedRecall strat;
  std::int64_t neutral_est = 0;

  double moe = 0.0;
  double mpe = 0.0;
  double coe = 0.0;
  double cpe = 0.0;
  std::int64_t unique_gt = 0;
  std::int64_t unique_gt_all = 0;
  std::int64_t unique_est = 0;
  std::vector<TcoeResult> tcoe;

  AgeCounts age;
  std::map<AgeClass, PrfResult> age_prf;
  GenderCounts gender;
  std::map<Gender, PrfResult> gender_prf;

  struct AttributeStratum {
    std::string name;
    std::map<AgeClass, PrfResult> age;
    std::map<Gender, PrfResult> gender;
  };
  std::vector<AttributeStratum> attr_strata;

  std::size_t gt_dropped_ignore = 0;
  std::size_t est_dropped_ignore = 0;
  std::size_t reentry_splits = 0;

  std::vector<FrameMatch> matches;
  std::vector<int> kept_list;
  // per non-skipped duration: (result, per-window errors), filled on request
  std::vector<std::pair<TcoeResult, std::vector<std::int64_t>>> tcoe_windows;
};

/// Full pipeline on parsed streams: densify key-frames, drop ignore-area
/// records, split re-entries, then score matching, counting, and attributes
/// on the kept frames. Attention-scoped metrics see only attentive GT.
inline VideoReport evaluate_streams(const VideoMeta& meta, const GtStream& gt, const EstStream& est,
                                    const EvalConfig& cfg, bool keep_windows = false) {
  cfg.validate();
  meta.validate();

  VideoReport rep;
  rep.video = meta.name;
  rep.frames = meta.frame_count;
  rep.fps = meta.fps;
  rep.effective_fps = cfg.target_fps.value_or(meta.fps);

  const GtStream densified = interpolate_keyframes(gt, cfg);
  auto [gt_vis, est_vis] =
      apply_ignore_areas(densified, est, meta, cfg, &rep.gt_dropped_ignore, &rep.est_dropped_ignore);
  const GtStream gt_split = split_reentries(gt_vis, meta, cfg, &rep.reentry_splits);

  const std::vector<int> kept = cfg.target_fps ? decimate(meta.frame_count, meta.fps, *cfg.target_fps)
                                               : all_frames(meta.frame_count);
  rep.kept_frames = static_cast<std::int64_t>(kept.size());
  rep.kept_list = kept;

  const GtStream gt_all = restrict_to_frames(gt_split, kept);
  const GtStream gt_ots = filter_ots(gt_all);
  const EstStream est_kept = restrict_to_frames(est_vis, kept);
  GtStream gt_excluded;
  gt_excluded.meta = gt_all.meta;
  for (const auto& r : gt_all.records) {
    if (!r.ots) gt_excluded.records.push_back(r);
  }

  rep.matches = match_video(gt_ots, est_kept, cfg, kept, &gt_excluded);
  for (const auto& m : rep.matches) rep.neutral_est += static_cast<std::int64_t>(m.neutral.size());

  rep.loc = prf(rep.matches);
  rep.has_gt = !gt_ots.records.empty();
  DistanceBands bands;
  if (rep.has_gt) {
    bands = distance_bands(gt_ots, cfg);
    rep.strat = stratified_recall(rep.matches, gt_ots, bands);
  }

  const CountSeries series = build_count_series(gt_ots, gt_all, est_kept, kept);
  rep.moe = ava::moe(series);
  rep.mpe = ava::mpe(series);
  const IdentityPresence gt_presence = build_gt_presence(gt_ots, kept);
  const IdentityPresence gt_all_presence = build_gt_presence(gt_all, kept);
  const IdentityPresence est_presence = build_est_presence(est_kept, kept);
  rep.unique_gt = static_cast<std::int64_t>(gt_presence.size());
  rep.unique_gt_all = static_cast<std::int64_t>(gt_all_presence.size());
  rep.unique_est = static_cast<std::int64_t>(est_presence.size());
  rep.coe = ava::coe(gt_presence, est_presence);
  rep.cpe = ava::cpe(gt_all_presence, est_presence);
  rep.tcoe = ava::tcoe(gt_presence, est_presence, cfg.segment_durations_s, rep.effective_fps,
                       rep.kept_frames);
  if (keep_windows) {
    for (const auto& t : rep.tcoe) {
      if (t.skipped) continue;
      rep.tcoe_windows.push_back(
          {t, tcoe_errors(gt_presence, est_presence, t.window_frames, rep.kept_frames)});
    }
  }

  const std::vector<MatchedPair> pairs = build_matched_pairs(rep.matches, gt_ots, est_kept);
  rep.age = score_age(pairs, cfg);
  rep.age_prf = per_class_prf(rep.age);
  rep.gender = score_gender(pairs);
  rep.gender_prf = per_class_prf(rep.gender);

  struct StratumDef {
    const char* name;
    std::function<bool(const MatchedPair&)> in;
  };
  const std::vector<StratumDef> defs = {
      {"close",
       [&](const MatchedPair& p) {
         const auto it = bands.band.find({p.gt->frame, p.gt->person_id});
         return it != bands.band.end() && it->second == DistanceBand::Close;
       }},
      {"far",
       [&](const MatchedPair& p) {
         const auto it = bands.band.find({p.gt->frame, p.gt->person_id});
         return it != bands.band.end() && it->second == DistanceBand::Far;
       }},
      {"occ_none", [](const MatchedPair& p) { return p.gt->occlusion == Occlusion::None; }},
      {"occ_partial", [](const MatchedPair& p) { return p.gt->occlusion == Occlusion::Partial; }},
      {"occ_heavy", [](const MatchedPair& p) { return p.gt->occlusion == Occlusion::Heavy; }},
  };
  for (const auto& def : defs) {
    std::vector<MatchedPair> subset;
    for (const auto& p : pairs) {
      if (def.in(p)) subset.push_back(p);
    }
    VideoReport::AttributeStratum s;
    s.name = def.name;
    s.age = per_class_prf(score_age(subset, cfg));
    s.gender = per_class_prf(score_gender(subset));
    rep.attr_strata.push_back(std::move(s));
  }
  return rep;
}

inline VideoReport evaluate_video(const std::string& gt_path, const std::string& est_path,
                                  const std::string& meta_path, const EvalConfig& cfg,
                                  bool keep_windows = false) {
  const VideoMeta meta = parse_video_meta(meta_path);
  const GtStream gt = parse_gt(gt_path, meta);
  const EstStream est = parse_est(est_path, meta);
  return evaluate_streams(meta, gt, est, cfg, keep_windows);
}

/// Evaluates many videos on up to `jobs` threads. Output order and content
/// are independent of the thread count: results land by input index, then
/// sort by video name.
inline std::vector<VideoReport> evaluate_videos(const std::vector<VideoInput>& inputs,
                                                const EvalConfig& cfg, int jobs,
                                                bool keep_windows = false) {
  if (inputs.empty()) throw EmptyInput("no videos to evaluate");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");

  std::vector<VideoReport> reports(inputs.size());
  std::vector<std::exception_ptr> errors(inputs.size());
  std::atomic<std::size_t> next{0};
  const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), inputs.size());

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= inputs.size()) return;
      try {
        reports[i] =
            evaluate_video(inputs[i].gt_path, inputs[i].est_path, inputs[i].meta_path, cfg, keep_windows);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::stable_sort(reports.begin(), reports.end(),
                   [](const VideoReport& a, const VideoReport& b) { return a.video < b.video; });
  return reports;
}

namespace detail {

inline std::string duration_label(double s) {
  char buf[32];
  if (s == static_cast<double>(static_cast<long long>(s))) {
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(s));
  } else {
    std::snprintf(buf, sizeof(buf), "%g", s);
  }
  return buf;
}

}  // namespace detail

/// Per-video metric values flattened to (name, value) with absent strata and
/// skipped durations as nullopt. The key set drives the overall aggregation.
inline std::vector<std::pair<std::string, std::optional<double>>> flatten_metrics(
    const VideoReport& r) {
  std::vector<std::pair<std::string, std::optional<double>>> out;
  auto put = [&](const std::string& k, std::optional<double> v) { out.emplace_back(k, v); };
  auto stratum = [&](const StratumRecall& s) -> std::optional<double> {
    if (!r.has_gt || !s.present()) return std::nullopt;
    return s.recall();
  };
  put("precision", r.loc.precision);
  put("recall", r.loc.recall);
  put("f1", r.loc.f1);
  put("recall_close", stratum(r.strat.close));
  put("recall_far", stratum(r.strat.far));
  put("recall_occ_none", stratum(r.strat.occ_none));
  put("recall_occ_partial", stratum(r.strat.occ_partial));
  put("recall_occ_heavy", stratum(r.strat.occ_heavy));
  put("moe", r.moe);
  put("mpe", r.mpe);
  put("coe", r.coe);
  put("cpe", r.cpe);
  for (const auto& t : r.tcoe) {
    const std::string label = detail::duration_label(t.duration_s);
    put("tcoe_mean_" + label + "s", t.skipped ? std::nullopt : std::optional<double>(t.mean));
    put("tcoe_std_" + label + "s", t.skipped ? std::nullopt : std::optional<double>(t.stddev));
  }
  for (const AgeClass c : {AgeClass::A0_18, AgeClass::A19_34, AgeClass::A35_65, AgeClass::A65plus}) {
    const auto it = r.age_prf.find(c);
    const std::string label = to_string(c);
    put("age_precision_" + label,
        it == r.age_prf.end() ? std::nullopt : std::optional<double>(it->second.precision));
    put("age_recall_" + label,
        it == r.age_prf.end() ? std::nullopt : std::optional<double>(it->second.recall));
    put("age_f1_" + label,
        it == r.age_prf.end() ? std::nullopt : std::optional<double>(it->second.f1));
  }
  for (const Gender g : {Gender::Male, Gender::Female}) {
    const auto it = r.gender_prf.find(g);
    const std::string label = to_string(g);
    put("gender_precision_" + label,
        it == r.gender_prf.end() ? std::nullopt : std::optional<double>(it->second.precision));
    put("gender_recall_" + label,
        it == r.gender_prf.end() ? std::nullopt : std::optional<double>(it->second.recall));
    put("gender_f1_" + label,
        it == r.gender_prf.end() ? std::nullopt : std::optional<double>(it->second.f1));
  }
  return out;
}

struct AggregateStat {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double p25 = 0.0;
  double p50 = 0.0;
  double p75 = 0.0;
  double max = 0.0;
};

/// Cross-video mean, population std, and five-number summary per metric,
/// computed over the videos where that metric is present.
inline std::vector<std::pair<std::string, AggregateStat>> aggregate(
    const std::vector<VideoReport>& reports) {
  if (reports.empty()) throw EmptyInput("no reports to aggregate");
  std::vector<std::string> keys;
  std::map<std::string, std::vector<double>> values;
  for (const auto& rep : reports) {
    for (const auto& [k, v] : flatten_metrics(rep)) {
      if (values.find(k) == values.end()) {
        keys.push_back(k);
        values[k] = {};
      }
      if (v) values[k].push_back(*v);
    }
  }
  std::vector<std::pair<std::string, AggregateStat>> out;
  for (const auto& k : keys) {
    const auto& vs = values[k];
    if (vs.empty()) continue;
    AggregateStat s;
    s.count = vs.size();
    s.mean = mean(vs);
    s.stddev = stddev_pop(vs);
    s.min = *std::min_element(vs.begin(), vs.end());
    s.p25 = percentile_lower(vs, 25.0);
    s.p50 = percentile_lower(vs, 50.0);
    s.p75 = percentile_lower(vs, 75.0);
    s.max = *std::max_element(vs.begin(), vs.end());
    out.emplace_back(k, s);
  }
  return out;
}

inline ordered_json prf_to_json(const PrfResult& p) {
  ordered_json j;
  j["tp"] = p.tp;
  j["fp"] = p.fp;
  j["fn"] = p.fn;
  j["precision"] = p.precision;
  j["recall"] = p.recall;
  j["f1"] = p.f1;
  j["vacuous"] = p.vacuous;
  return j;
}

inline ordered_json video_report_to_json(const VideoReport& r) {
  ordered_json j;
  j["video"] = r.video;
  j["frames"] = r.frames;
  j["fps"] = r.fps;
  j["effective_fps"] = r.effective_fps;
  j["kept_frames"] = r.kept_frames;
  j["audit"] = {{"gt_dropped_ignore", r.gt_dropped_ignore},
                {"est_dropped_ignore", r.est_dropped_ignore},
                {"reentry_splits", r.reentry_splits},
                {"neutral_est", r.neutral_est}};

  ordered_json loc = prf_to_json(r.loc);
  loc["p50_area"] = r.has_gt ? ordered_json(r.strat.p50_area) : ordered_json(nullptr);
  auto stratum = [&](const StratumRecall& s) -> ordered_json {
    if (!r.has_gt || !s.present()) return nullptr;
    ordered_json o;
    o["tp"] = s.tp;
    o["fn"] = s.fn;
    o["recall"] = s.recall();
    return o;
  };
  loc["recall_close"] = stratum(r.strat.close);
  loc["recall_far"] = stratum(r.strat.far);
  loc["recall_occ_none"] = stratum(r.strat.occ_none);
  loc["recall_occ_partial"] = stratum(r.strat.occ_partial);
  loc["recall_occ_heavy"] = stratum(r.strat.occ_heavy);
  j["localization"] = std::move(loc);

  ordered_json counting;
  counting["moe"] = r.moe;
  counting["mpe"] = r.mpe;
  counting["coe"] = r.coe;
  counting["cpe"] = r.cpe;
  counting["unique_gt"] = r.unique_gt;
  counting["unique_gt_all"] = r.unique_gt_all;
  counting["unique_est"] = r.unique_est;
  ordered_json tcoe_arr = ordered_json::array();
  for (const auto& t : r.tcoe) {
    ordered_json o;
    o["duration_s"] = t.duration_s;
    o["window_frames"] = t.window_frames;
    o["skipped"] = t.skipped;
    if (!t.skipped) {
      o["segments"] = t.segment_count;
      o["mean"] = t.mean;
      o["std"] = t.stddev;
    }
    tcoe_arr.push_back(std::move(o));
  }
  counting["tcoe"] = std::move(tcoe_arr);
  j["counting"] = std::move(counting);

  auto classes_to_json = [](const auto& prf_map) {
    ordered_json o = ordered_json::object();
    for (const auto& [cls, res] : prf_map) o[to_string(cls)] = prf_to_json(res);
    return o;
  };
  j["age"] = {{"unknown", r.age.unknown_count},
              {"skipped", r.age.skipped},
              {"classes", classes_to_json(r.age_prf)}};
  j["gender"] = {{"unknown", r.gender.unknown_count},
                 {"skipped", r.gender.skipped},
                 {"classes", classes_to_json(r.gender_prf)}};

  ordered_json strata = ordered_json::object();
  for (const auto& s : r.attr_strata) {
    if (s.age.empty() && s.gender.empty()) continue;
    ordered_json o;
    ordered_json age_f1 = ordered_json::object();
    for (const auto& [cls, res] : s.age) age_f1[to_string(cls)] = res.f1;
    ordered_json gender_f1 = ordered_json::object();
    for (const auto& [cls, res] : s.gender) gender_f1[to_string(cls)] = res.f1;
    o["age_f1"] = std::move(age_f1);
    o["gender_f1"] = std::move(gender_f1);
    strata[s.name] = std::move(o);
  }
  j["attribute_strata"] = std::move(strata);
  return j;
}

inline ordered_json report_to_json(const std::vector<VideoReport>& reports) {
  ordered_json j;
  j["schema_version"] = 1;
  ordered_json videos = ordered_json::array();
  for (const auto& r : reports) videos.push_back(video_report_to_json(r));
  j["videos"] = std::move(videos);
  ordered_json overall;
  overall["videos"] = reports.size();
  ordered_json metrics = ordered_json::object();
  for (const auto& [k, s] : aggregate(reports)) {
    ordered_json o;
    o["count"] = s.count;
    o["mean"] = s.mean;
    o["std"] = s.stddev;
    o["min"] = s.min;
    o["p25"] = s.p25;
    o["p50"] = s.p50;
    o["p75"] = s.p75;
    o["max"] = s.max;
    metrics[k] = std::move(o);
  }
  overall["metrics"] = std::move(metrics);
  j["overall"] = std::move(overall);
  return j;
}

namespace detail {

inline std::string csv_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

inline std::string csv_cell(const ordered_json& j) {
  if (j.is_null()) return "";
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number()) return csv_num(j.get<double>());
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  return j.get<std::string>();
}

// Looks up a dotted path, returning null when any hop is absent.
inline ordered_json json_at(const ordered_json& j, const std::string& dotted) {
  const ordered_json* cur = &j;
  std::size_t pos = 0;
  while (pos <= dotted.size()) {
    const std::size_t dot = dotted.find('.', pos);
    const std::string key = dotted.substr(pos, dot == std::string::npos ? dot : dot - pos);
    if (!cur->is_object() || !cur->contains(key)) return nullptr;
    cur = &(*cur)[key];
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return *cur;
}

inline void append_overall_rows(std::string& out, const ordered_json& report,
                                const std::vector<std::string>& metric_keys) {
  const ordered_json metrics = json_at(report, "overall.metrics");
  std::string mean_row = "overall_mean";
  std::string std_row = "overall_std";
  for (const auto& key : metric_keys) {
    mean_row += ',';
    std_row += ',';
    if (!key.empty() && metrics.is_object() && metrics.contains(key)) {
      mean_row += csv_cell(metrics[key]["mean"]);
      std_row += csv_cell(metrics[key]["std"]);
    }
  }
  out += mean_row + "\n" + std_row + "\n";
}

}  // namespace detail

/// Plot-ready CSVs rendered from the JSON report, so a saved report.json
/// re-renders to identical tables.
inline std::string localization_csv(const ordered_json& report) {
  const std::vector<std::pair<std::string, std::string>> cols = {
      {"precision", "localization.precision"},
      {"recall", "localization.recall"},
      {"f1", "localization.f1"},
      {"recall_close", "localization.recall_close.recall"},
      {"recall_far", "localization.recall_far.recall"},
      {"recall_occ_none", "localization.recall_occ_none.recall"},
      {"recall_occ_partial", "localization.recall_occ_partial.recall"},
      {"recall_occ_heavy", "localization.recall_occ_heavy.recall"},
      {"p50_area", "localization.p50_area"},
  };
  std::string out = "video";
  for (const auto& c : cols) out += "," + c.first;
  out += "\n";
  for (const auto& v : report["videos"]) {
    out += detail::csv_cell(v["video"]);
    for (const auto& c : cols) out += "," + detail::csv_cell(detail::json_at(v, c.second));
    out += "\n";
  }
  std::vector<std::string> agg_keys;
  for (const auto& c : cols) agg_keys.push_back(c.first == "p50_area" ? "" : c.first);
  detail::append_overall_rows(out, report, agg_keys);
  return out;
}

inline std::string counting_csv(const ordered_json& report) {
  std::vector<std::string> tcoe_labels;
  if (!report["videos"].empty()) {
    for (const auto& t : report["videos"][0]["counting"]["tcoe"]) {
      tcoe_labels.push_back(detail::duration_label(t["duration_s"].get<double>()));
    }
  }
  std::string out = "video,moe,mpe,coe,cpe,unique_gt,unique_est";
  for (const auto& l : tcoe_labels) out += ",tcoe_mean_" + l + "s,tcoe_std_" + l + "s";
  out += "\n";
  for (const auto& v : report["videos"]) {
    out += detail::csv_cell(v["video"]);
    for (const char* k : {"moe", "mpe", "coe", "cpe", "unique_gt", "unique_est"}) {
      out += "," + detail::csv_cell(v["counting"][k]);
    }
    for (const auto& t : v["counting"]["tcoe"]) {
      if (t["skipped"].get<bool>()) {
        out += ",,";
      } else {
        out += "," + detail::csv_cell(t["mean"]) + "," + detail::csv_cell(t["std"]);
      }
    }
    out += "\n";
  }
  std::vector<std::string> agg_keys = {"moe", "mpe", "coe", "cpe", "", ""};
  for (const auto& l : tcoe_labels) {
    agg_keys.push_back("tcoe_mean_" + l + "s");
    agg_keys.push_back("tcoe_std_" + l + "s");
  }
  detail::append_overall_rows(out, report, agg_keys);
  return out;
}

namespace detail {

inline std::string attribute_csv(const ordered_json& report, const std::string& block,
                                 const std::vector<std::string>& class_labels,
                                 const std::string& agg_prefix) {
  std::string out = "video";
  for (const auto& c : class_labels) {
    out += ",precision_" + c + ",recall_" + c + ",f1_" + c;
  }
  out += ",unknown,skipped\n";
  for (const auto& v : report["videos"]) {
    out += csv_cell(v["video"]);
    for (const auto& c : class_labels) {
      const ordered_json cls = json_at(v, block + ".classes." + c);
      if (cls.is_null()) {
        out += ",,,";
      } else {
        out += "," + csv_cell(cls["precision"]) + "," + csv_cell(cls["recall"]) + "," +
               csv_cell(cls["f1"]);
      }
    }
    out += "," + csv_cell(json_at(v, block + ".unknown")) + "," +
           csv_cell(json_at(v, block + ".skipped")) + "\n";
  }
  std::vector<std::string> agg_keys;
  for (const auto& c : class_labels) {
    agg_keys.push_back(agg_prefix + "_precision_" + c);
    agg_keys.push_back(agg_prefix + "_recall_" + c);
    agg_keys.push_back(agg_prefix + "_f1_" + c);
  }
  agg_keys.push_back("");
  agg_keys.push_back("");
  append_overall_rows(out, report, agg_keys);
  return out;
}

}  // namespace detail

inline std::string age_csv(const ordered_json& report) {
  return detail::attribute_csv(report, "age", {"0-18", "19-34", "35-65", "65+"}, "age");
}

inline std::string gender_csv(const ordered_json& report) {
  return detail::attribute_csv(report, "gender", {"male", "female"}, "gender");
}

inline std::string tcoe_windows_csv(const std::vector<VideoReport>& reports) {
  std::string out = "video,start_frame,duration_s,window_frames,error\n";
  for (const auto& r : reports) {
    for (const auto& [res, errs] : r.tcoe_windows) {
      for (std::size_t t = 0; t < errs.size(); ++t) {
        out += r.video + "," + std::to_string(r.kept_list[t]) + "," +
               detail::duration_label(res.duration_s) + "," + std::to_string(res.window_frames) +
               "," + std::to_string(errs[t]) + "\n";
      }
    }
  }
  return out;
}

/// One evaluation per requested frame rate; rates above the native one are
/// reported as skipped rather than failing the sweep.
struct SweepRow {
  double fps = 0.0;
  bool skipped = false;
  std::string note;
  VideoReport report;
};

inline std::vector<SweepRow> run_fps_sweep(const VideoMeta& meta, const GtStream& gt,
                                           const EstStream& est, const EvalConfig& cfg,
                                           const std::vector<double>& fps_list) {
  std::vector<SweepRow> rows;
  for (const double fps : fps_list) {
    SweepRow row;
    row.fps = fps;
    if (!(fps > 0) || fps > meta.fps) {
      row.skipped = true;
      row.note = !(fps > 0) ? "rate must be > 0" : "rate exceeds native " + detail::csv_num(meta.fps);
      rows.push_back(std::move(row));
      continue;
    }
    EvalConfig sub = cfg;
    sub.target_fps = fps;
    row.report = evaluate_streams(meta, gt, est, sub);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows,
                             const std::vector<double>& durations) {
  std::string out = "video,fps,kept_frames,skipped,moe,mpe,coe,cpe";
  for (const double d : durations) out += ",tcoe_mean_" + detail::duration_label(d) + "s";
  out += ",note\n";
  for (const auto& row : rows) {
    if (row.skipped) {
      out += "," + detail::csv_num(row.fps) + ",,true";
      for (std::size_t i = 0; i < 4 + durations.size(); ++i) out += ",";
      out += row.note + "\n";
      continue;
    }
    const auto& r = row.report;
    out += r.video + "," + detail::csv_num(row.fps) + "," + std::to_string(r.kept_frames) +
           ",false," + detail::csv_num(r.moe) + "," + detail::csv_num(r.mpe) + "," +
           detail::csv_num(r.coe) + "," + detail::csv_num(r.cpe);
    for (const auto& t : r.tcoe) {
      out += ",";
      if (!t.skipped) out += detail::csv_num(t.mean);
    }
    out += ",\n";
  }
  return out;
}

}  // namespace ava
