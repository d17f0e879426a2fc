#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ava/attributes.hpp"
#include "ava/errors.hpp"
#include "ava/io.hpp"
#include "ava/rng.hpp"
#include "ava/types.hpp"

namespace ava {

/// Controllable scene generator. Every knob has an analytic consequence on
/// the metrics, so expectations in tests are computable, not eyeballed.
struct SynthSpec {
  std::uint64_t seed = 1;
  std::string name = "synth";
  int frames = 300;
  double fps = 30.0;
  int width = 1920;
  int height = 1080;
  int n_identities = 1;

  // entry frame: fixed value, or uniform over [entry_lo, entry_hi]
  bool entry_fixed = false;
  int entry_value = 1;
  int entry_lo = 1;
  int entry_hi = 1;

  // dwell: full = present from entry to the last frame
  bool dwell_full = true;
  double dwell_min_s = 5.0;
  double dwell_max_s = 30.0;

  double ots_prob = 1.0;
  double miss_prob = 0.0;
  double fp_rate = 0.0;
  double id_switch_prob = 0.0;
  double jitter_px = 0.0;
  Target target = Target::Face;

  int age_min = 10;
  int age_max = 80;
  double gender_female_prob = 0.5;

  double age_error_prob = 0.0;
  double age_unknown_prob = 0.0;
  double gender_error_prob = 0.0;
  double gender_unknown_prob = 0.0;

  int box_min_px = 40;
  int box_max_px = 200;
  double box_speed_px = 3.0;

  std::vector<BBox> ignore;

  void validate() const {
    auto prob = [](double p, const char* what) {
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(what) + " must be in [0,1]");
    };
    if (frames < 1) throw ConfigError("frames must be >= 1");
    if (fps <= 0.0) throw ConfigError("fps must be > 0");
    if (width < 1 || height < 1) throw ConfigError("width/height must be >= 1");
    if (n_identities < 0) throw ConfigError("n_identities must be >= 0");
    prob(ots_prob, "ots_prob");
    prob(miss_prob, "miss_prob");
    prob(id_switch_prob, "id_switch_prob");
    prob(age_error_prob, "age_error_prob");
    prob(age_unknown_prob, "age_unknown_prob");
    prob(gender_error_prob, "gender_error_prob");
    prob(gender_unknown_prob, "gender_unknown_prob");
    prob(gender_female_prob, "gender_female_prob");
    if (fp_rate < 0.0) throw ConfigError("fp_rate must be >= 0");
    if (jitter_px < 0.0) throw ConfigError("jitter_px must be >= 0");
    if (age_min < 0 || age_max < age_min) throw ConfigError("age range invalid");
    if (box_min_px < 2 || box_max_px < box_min_px) throw ConfigError("box size range invalid");
    if (box_max_px > width || box_max_px > height) throw ConfigError("box size exceeds image");
    if (entry_fixed) {
      if (entry_value < 1 || entry_value > frames) throw ConfigError("entry out of range");
    } else {
      if (entry_lo < 1 || entry_hi > frames || entry_lo > entry_hi) {
        throw ConfigError("entry range invalid");
      }
    }
    if (!dwell_full && (dwell_min_s <= 0.0 || dwell_max_s < dwell_min_s)) {
      throw ConfigError("dwell range invalid");
    }
  }
};

inline SynthSpec parse_synth_spec(const std::string& path) {
  json j = json::parse(detail::read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ConfigError("'" + path + "' is not a JSON object");
  SynthSpec s;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "seed") s.seed = value.get<std::uint64_t>();
      else if (key == "name") s.name = value.get<std::string>();
      else if (key == "frames") s.frames = value.get<int>();
      else if (key == "fps") s.fps = value.get<double>();
      else if (key == "width") s.width = value.get<int>();
      else if (key == "height") s.height = value.get<int>();
      else if (key == "n_identities") s.n_identities = value.get<int>();
      else if (key == "entry") {
        if (value.contains("fixed")) {
          s.entry_fixed = true;
          s.entry_value = value["fixed"].get<int>();
        } else if (value.contains("uniform")) {
          s.entry_fixed = false;
          s.entry_lo = value["uniform"][0].get<int>();
          s.entry_hi = value["uniform"][1].get<int>();
        } else {
          throw ConfigError("entry must be {\"fixed\": f} or {\"uniform\": [lo, hi]}");
        }
      } else if (key == "dwell") {
        if (value.is_string() && value.get<std::string>() == "full") {
          s.dwell_full = true;
        } else if (value.is_object() && value.contains("uniform_s")) {
          s.dwell_full = false;
          s.dwell_min_s = value["uniform_s"][0].get<double>();
          s.dwell_max_s = value["uniform_s"][1].get<double>();
        } else {
          throw ConfigError("dwell must be \"full\" or {\"uniform_s\": [min, max]}");
        }
      } else if (key == "ots_prob") s.ots_prob = value.get<double>();
      else if (key == "miss_prob") s.miss_prob = value.get<double>();
      else if (key == "fp_rate") s.fp_rate = value.get<double>();
      else if (key == "id_switch_prob") s.id_switch_prob = value.get<double>();
      else if (key == "jitter_px") s.jitter_px = value.get<double>();
      else if (key == "target") {
        const auto t = value.get<std::string>();
        if (t == "face") s.target = Target::Face;
        else if (t == "person") s.target = Target::Person;
        else throw ConfigError("target must be 'face' or 'person'");
      } else if (key == "age") {
        s.age_min = value.at("min").get<int>();
        s.age_max = value.at("max").get<int>();
      } else if (key == "gender_female_prob") s.gender_female_prob = value.get<double>();
      else if (key == "attr") {
        for (const auto& [ak, av] : value.items()) {
          if (ak == "age_error_prob") s.age_error_prob = av.get<double>();
          else if (ak == "age_unknown_prob") s.age_unknown_prob = av.get<double>();
          else if (ak == "gender_error_prob") s.gender_error_prob = av.get<double>();
          else if (ak == "gender_unknown_prob") s.gender_unknown_prob = av.get<double>();
          else throw ConfigError("unknown attr key '" + ak + "'");
        }
      } else if (key == "box") {
        for (const auto& [bk, bv] : value.items()) {
          if (bk == "min_px") s.box_min_px = bv.get<int>();
          else if (bk == "max_px") s.box_max_px = bv.get<int>();
          else if (bk == "speed_px") s.box_speed_px = bv.get<double>();
          else throw ConfigError("unknown box key '" + bk + "'");
        }
      } else if (key == "ignore") {
        for (const auto& b : value) {
          s.ignore.push_back(BBox(b[0].get<double>(), b[1].get<double>(), b[2].get<double>(),
                                  b[3].get<double>()));
        }
      } else {
        throw ConfigError("unknown spec key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
  s.validate();
  return s;
}

struct SynthResult {
  VideoMeta meta;
  GtStream gt;
  EstStream est;
};

namespace detail {

struct SynthIdentity {
  int entry = 1;
  int last = 1;
  bool ots = true;
  int age = 0;
  Gender gender = Gender::Male;
  double w = 0, h = 0, x0 = 0, y0 = 0, vx = 0, vy = 0;
  int switch_count = 0;
};

inline BBox face_of(const BBox& person) {
  const double fw = std::max(1.0, person.w * 0.4);
  const double fh = std::max(1.0, person.h * 0.25);
  return BBox(person.x + (person.w - fw) / 2.0, person.y, fw, fh);
}

inline std::string padded(const char* prefix, int n) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%03d", prefix, n);
  return buf;
}

}  // namespace detail

/// Generates one scene. Draw order is fixed so a seed pins the byte-exact
/// output: per identity (entry, dwell, ots, age, gender, w, h, x, y, vx, vy),
/// then per frame, per present attentive identity (miss, dx, dy, switch,
/// age-unknown, age-error, wrong-class pick, gender-unknown, gender-error),
/// then the frame's spurious boxes (count, then w, h, x, y each).
inline SynthResult generate(const SynthSpec& spec) {
  spec.validate();
  SplitMix64 rng(spec.seed);

  SynthResult out;
  out.meta.name = spec.name;
  out.meta.frame_count = spec.frames;
  out.meta.fps = spec.fps;
  out.meta.width = spec.width;
  out.meta.height = spec.height;
  out.meta.ignore_regions = spec.ignore;
  out.meta.validate();
  out.est.video = spec.name;

  std::vector<detail::SynthIdentity> ids(static_cast<std::size_t>(spec.n_identities));
  for (auto& p : ids) {
    p.entry = spec.entry_fixed ? spec.entry_value
                               : static_cast<int>(rng.uniform_int(spec.entry_lo, spec.entry_hi));
    if (spec.dwell_full) {
      p.last = spec.frames;
    } else {
      const double dwell_s = rng.uniform(spec.dwell_min_s, spec.dwell_max_s);
      const int dwell_frames = std::max(1, static_cast<int>(std::lround(dwell_s * spec.fps)));
      p.last = std::min(spec.frames, p.entry + dwell_frames - 1);
    }
    p.ots = rng.bernoulli(spec.ots_prob);
    p.age = static_cast<int>(rng.uniform_int(spec.age_min, spec.age_max));
    p.gender = rng.bernoulli(spec.gender_female_prob) ? Gender::Female : Gender::Male;
    p.w = static_cast<double>(rng.uniform_int(spec.box_min_px, spec.box_max_px));
    p.h = static_cast<double>(rng.uniform_int(spec.box_min_px, spec.box_max_px));
    p.x0 = rng.uniform(0.0, spec.width - p.w);
    p.y0 = rng.uniform(0.0, spec.height - p.h);
    p.vx = rng.uniform(-spec.box_speed_px, spec.box_speed_px);
    p.vy = rng.uniform(-spec.box_speed_px, spec.box_speed_px);
  }

  auto person_box_at = [&](const detail::SynthIdentity& p, int frame) {
    const double k = static_cast<double>(frame - p.entry);
    const double x = std::clamp(p.x0 + p.vx * k, 0.0, static_cast<double>(spec.width) - p.w);
    const double y = std::clamp(p.y0 + p.vy * k, 0.0, static_cast<double>(spec.height) - p.h);
    return BBox(x, y, p.w, p.h);
  };

  for (int i = 0; i < spec.n_identities; ++i) {
    const auto& p = ids[static_cast<std::size_t>(i)];
    for (int t = p.entry; t <= p.last; ++t) {
      GtRecord r;
      r.frame = t;
      r.person_id = detail::padded("p", i + 1);
      r.person_box = person_box_at(p, t);
      r.face_box = detail::face_of(*r.person_box);
      r.ots = p.ots;
      r.occlusion = Occlusion::None;
      r.age_years = p.age;
      r.gender = p.gender;
      out.gt.records.push_back(std::move(r));
    }
  }
  detail::sort_gt(out.gt.records);

  static constexpr int kClassCenter[4] = {9, 26, 50, 75};  // deep inside each range
  int fp_counter = 0;
  for (int t = 1; t <= spec.frames; ++t) {
    for (int i = 0; i < spec.n_identities; ++i) {
      auto& p = ids[static_cast<std::size_t>(i)];
      if (t < p.entry || t > p.last || !p.ots) continue;
      if (rng.bernoulli(spec.miss_prob)) continue;
      const double dx = rng.uniform(-spec.jitter_px, spec.jitter_px);
      const double dy = rng.uniform(-spec.jitter_px, spec.jitter_px);
      if (rng.bernoulli(spec.id_switch_prob)) ++p.switch_count;
      const bool age_unknown = rng.bernoulli(spec.age_unknown_prob);
      const bool age_error = rng.bernoulli(spec.age_error_prob);
      const auto wrong_pick = rng.uniform_int(0, 2);
      const bool gender_unknown = rng.bernoulli(spec.gender_unknown_prob);
      const bool gender_error = rng.bernoulli(spec.gender_error_prob);

      const BBox person = person_box_at(p, t);
      const BBox base = spec.target == Target::Face ? detail::face_of(person) : person;

      EstRecord e;
      e.frame = t;
      e.est_id = p.switch_count == 0
                     ? detail::padded("t", i + 1)
                     : detail::padded("t", i + 1) + "x" + std::to_string(p.switch_count);
      e.box = BBox(std::max(0.0, base.x + dx), std::max(0.0, base.y + dy), base.w, base.h);
      if (age_unknown) {
        e.age = AgeEstimate::age_class(AgeClass::Unknown);
      } else if (age_error) {
        const int actual = static_cast<int>(age_class_of(p.age));
        int k = static_cast<int>(wrong_pick);
        if (k >= actual) ++k;  // pick among the three other classes
        e.age = AgeEstimate::years(kClassCenter[k]);
      } else {
        e.age = AgeEstimate::years(p.age);
      }
      if (gender_unknown) {
        e.gender = Gender::Unknown;
      } else if (gender_error) {
        e.gender = p.gender == Gender::Male ? Gender::Female : Gender::Male;
      } else {
        e.gender = p.gender;
      }
      out.est.records.push_back(std::move(e));
    }
    const int n_fp = rng.poisson(spec.fp_rate);
    for (int k = 0; k < n_fp; ++k) {
      const double w = static_cast<double>(rng.uniform_int(spec.box_min_px, spec.box_max_px));
      const double h = static_cast<double>(rng.uniform_int(spec.box_min_px, spec.box_max_px));
      const double x = rng.uniform(0.0, spec.width - w);
      const double y = rng.uniform(0.0, spec.height - h);
      EstRecord e;
      e.frame = t;
      e.est_id = "f" + std::to_string(++fp_counter);
      e.box = BBox(x, y, w, h);
      out.est.records.push_back(std::move(e));
    }
  }
  detail::sort_est(out.est.records);
  return out;
}

/// Writes <name>.meta.json / <name>.gt.jsonl / <name>.est.jsonl into out_dir.
struct SynthPaths {
  std::string meta;
  std::string gt;
  std::string est;
};

inline SynthPaths write_synth(const SynthResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  SynthPaths paths;
  paths.meta = (fs::path(out_dir) / (result.meta.name + ".meta.json")).string();
  paths.gt = (fs::path(out_dir) / (result.meta.name + ".gt.jsonl")).string();
  paths.est = (fs::path(out_dir) / (result.meta.name + ".est.jsonl")).string();
  write_text_file(paths.meta, meta_to_json(result.meta));
  write_text_file(paths.gt, gt_to_jsonl(result.gt));
  write_text_file(paths.est, est_to_jsonl(result.est));
  return paths;
}

}  // namespace ava
