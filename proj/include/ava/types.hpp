#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ava/errors.hpp"
#include "ava/geometry.hpp"

namespace ava {

enum class Occlusion { None, Partial, Heavy };

enum class Gender { Male, Female, Unknown };

enum class AgeClass { A0_18, A19_34, A35_65, A65plus, Unknown };

enum class Target { Face, Person };

enum class DistanceBand { Close, Far };

enum class Matcher { Greedy, MaxSum };

inline const char* to_string(Occlusion o) {
  switch (o) {
    case Occlusion::None: return "none";
    case Occlusion::Partial: return "partial";
    default: return "heavy";
  }
}

inline const char* to_string(Gender g) {
  switch (g) {
    case Gender::Male: return "male";
    case Gender::Female: return "female";
    default: return "unknown";
  }
}

inline const char* to_string(AgeClass c) {
  switch (c) {
    case AgeClass::A0_18: return "0-18";
    case AgeClass::A19_34: return "19-34";
    case AgeClass::A35_65: return "35-65";
    case AgeClass::A65plus: return "65+";
    default: return "unknown";
  }
}

/// Either an age in years or one of the audience-analytics age classes.
/// Exactly one representation is populated.
class AgeEstimate {
public:
  static AgeEstimate years(int y) {
    if (y < 0) throw InputError("age years must be >= 0");
    AgeEstimate e;
    e.years_ = y;
    return e;
  }

  static AgeEstimate age_class(AgeClass c) {
    AgeEstimate e;
    e.class_ = c;
    return e;
  }

  bool is_years() const { return years_.has_value(); }
  bool is_unknown() const { return class_.has_value() && *class_ == AgeClass::Unknown; }
  int years_value() const { return *years_; }
  AgeClass class_value() const { return *class_; }

  bool operator==(const AgeEstimate& o) const { return years_ == o.years_ && class_ == o.class_; }

private:
  AgeEstimate() = default;
  std::optional<int> years_;
  std::optional<AgeClass> class_;
};

/// Per-video input description. Frame indices elsewhere are 1-based and live
/// in [1, frame_count].
struct VideoMeta {
  std::string name;
  int frame_count = 0;
  double fps = 0;
  int width = 0;
  int height = 0;
  std::vector<BBox> ignore_regions;

  void validate() const {
    if (frame_count < 1) throw InputError("video '" + name + "': frame count must be >= 1");
    if (!(fps > 0)) throw InputError("video '" + name + "': fps must be > 0");
    if (width < 1 || height < 1) throw InputError("video '" + name + "': invalid resolution");
    for (const auto& r : ignore_regions) {
      if (r.x < 0 || r.y < 0 || r.right() > width || r.bottom() > height) {
        throw InputError("video '" + name + "': ignore region outside image bounds");
      }
    }
  }
};

/// One annotated person at one frame.
struct GtRecord {
  int frame = 0;
  std::string person_id;
  std::optional<BBox> person_box;
  std::optional<BBox> face_box;
  bool ots = false;
  Occlusion occlusion = Occlusion::None;
  std::optional<int> age_years;
  std::optional<Gender> gender;  // Male or Female when annotated
};

/// One algorithm output at one frame.
struct EstRecord {
  int frame = 0;
  std::string est_id;
  BBox box;
  std::optional<AgeEstimate> age;
  std::optional<Gender> gender;
};

/// Evaluation parameters. Defaults follow the benchmark protocol; every field
/// can be overridden from a JSON config file.
struct EvalConfig {
  double iou_threshold = 0.5;
  Target target = Target::Face;
  std::vector<double> segment_durations_s = {10, 20, 30, 60, 90, 120};
  double reentry_gap_s = 10;
  double ignore_overlap_ratio = 0.5;
  int age_overlap_years = 2;
  std::optional<double> target_fps;
  Matcher matcher = Matcher::Greedy;
  // Estimations overlapping a ground-truth person without opportunity-to-see
  // are discarded from the false positives rather than penalized.
  bool neutral_fp_vs_non_ots = true;

  void validate() const {
    if (!(iou_threshold > 0 && iou_threshold <= 1)) {
      throw ConfigError("iou_threshold must be in (0, 1]");
    }
    for (double d : segment_durations_s) {
      if (!(d > 0)) throw ConfigError("segment durations must be > 0");
    }
    if (!(reentry_gap_s > 0)) throw ConfigError("reentry_gap_s must be > 0");
    if (!(ignore_overlap_ratio > 0 && ignore_overlap_ratio <= 1)) {
      throw ConfigError("ignore_overlap_ratio must be in (0, 1]");
    }
    if (age_overlap_years < 0) throw ConfigError("age_overlap_years must be >= 0");
    if (target_fps && !(*target_fps > 0)) throw ConfigError("target_fps must be > 0");
  }
};

/// Box used for matching and ignore-area filtering: the configured target box
/// when present, otherwise whichever box the record carries.
inline const BBox* eval_box(const GtRecord& r, Target target) {
  if (target == Target::Face) {
    if (r.face_box) return &*r.face_box;
    if (r.person_box) return &*r.person_box;
  } else {
    if (r.person_box) return &*r.person_box;
    if (r.face_box) return &*r.face_box;
  }
  return nullptr;
}

/// Target box only, nullptr when the record lacks it.
inline const BBox* target_box(const GtRecord& r, Target target) {
  if (target == Target::Face) return r.face_box ? &*r.face_box : nullptr;
  return r.person_box ? &*r.person_box : nullptr;
}

}  // namespace ava
