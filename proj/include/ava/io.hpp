#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ava/errors.hpp"
#include "ava/ingest.hpp"
#include "ava/types.hpp"

namespace ava {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline BBox parse_box_array(const json& j, std::size_t line, const std::string& field) {
  if (!j.is_array() || j.size() != 4) throw SchemaError(line, field, "expected [x, y, w, h]");
  for (const auto& v : j) {
    if (!v.is_number()) throw SchemaError(line, field, "box entries must be numbers");
  }
  try {
    return BBox(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>());
  } catch (const InputError& e) {
    throw SchemaError(line, field, e.what());
  }
}

inline json parse_line(const std::string& text, std::size_t line) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw SchemaError(line, "-", "not a JSON object");
  return j;
}

inline Gender parse_gender(const std::string& s, std::size_t line, bool allow_unknown) {
  if (s == "male") return Gender::Male;
  if (s == "female") return Gender::Female;
  if (allow_unknown && s == "unknown") return Gender::Unknown;
  throw SchemaError(line, "gender", "unrecognized value '" + s + "'");
}

inline Occlusion parse_occlusion(const std::string& s, std::size_t line) {
  if (s == "none") return Occlusion::None;
  if (s == "partial") return Occlusion::Partial;
  if (s == "heavy") return Occlusion::Heavy;
  throw SchemaError(line, "occlusion", "unrecognized value '" + s + "'");
}

inline AgeClass parse_age_class(const std::string& s, std::size_t line) {
  if (s == "0-18") return AgeClass::A0_18;
  if (s == "19-34") return AgeClass::A19_34;
  if (s == "35-65") return AgeClass::A35_65;
  if (s == "65+") return AgeClass::A65plus;
  if (s == "unknown") return AgeClass::Unknown;
  throw SchemaError(line, "age_class", "unrecognized value '" + s + "'");
}

inline int parse_frame(const json& j, std::size_t line, int frame_count) {
  if (!j.contains("frame") || !j["frame"].is_number_integer()) {
    throw SchemaError(line, "frame", "required integer");
  }
  const int frame = j["frame"].get<int>();
  if (frame < 1 || frame > frame_count) throw RangeError(line, frame, frame_count);
  return frame;
}

// Minimal CSV splitting with double-quote escaping; fields are trimmed of
// the quotes only, inner whitespace is preserved.
inline std::vector<std::string> split_csv_line(const std::string& s) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < s.size() && s[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

// Maps a CSV row to the JSON object shape shared with the JSON Lines reader,
// so both formats flow through identical validation.
inline json csv_row_to_json(const std::vector<std::string>& header,
                            const std::vector<std::string>& row, std::size_t line) {
  if (row.size() != header.size()) {
    throw SchemaError(line, "-", "expected " + std::to_string(header.size()) + " fields, got " +
                                     std::to_string(row.size()));
  }
  json j = json::object();
  auto box_slot = [&](const std::string& prefix) -> json& {
    const std::string key = prefix == "person" ? "person_box" : prefix == "face" ? "face_box" : "box";
    if (!j.contains(key)) j[key] = json::array({nullptr, nullptr, nullptr, nullptr});
    return j[key];
  };
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string& col = header[i];
    const std::string& val = row[i];
    if (val.empty()) continue;
    auto num = [&]() -> double {
      try {
        std::size_t pos = 0;
        const double d = std::stod(val, &pos);
        if (pos != val.size()) throw std::invalid_argument(val);
        return d;
      } catch (const std::exception&) {
        throw SchemaError(line, col, "not a number: '" + val + "'");
      }
    };
    if (col == "frame" || col == "age" || col == "age_years") {
      j[col] = static_cast<int>(num());
    } else if (col == "id") {
      j[col] = val;
    } else if (col == "ots") {
      if (val == "true" || val == "1") j[col] = true;
      else if (val == "false" || val == "0") j[col] = false;
      else throw SchemaError(line, col, "expected true/false");
    } else if (col == "occlusion" || col == "gender" || col == "age_class") {
      j[col] = val;
    } else if (col.size() > 2 && col[col.size() - 2] == '_' &&
               (col.back() == 'x' || col.back() == 'y' || col.back() == 'w' || col.back() == 'h')) {
      const std::string prefix = col.substr(0, col.size() - 2);
      const int slot = col.back() == 'x' ? 0 : col.back() == 'y' ? 1 : col.back() == 'w' ? 2 : 3;
      box_slot(prefix)[slot] = num();
    } else if (col == "x" || col == "y" || col == "w" || col == "h") {
      const int slot = col == "x" ? 0 : col == "y" ? 1 : col == "w" ? 2 : 3;
      box_slot("")[slot] = num();
    } else {
      throw SchemaError(line, col, "unrecognized column");
    }
  }
  // a partially filled box is a schema violation; a fully empty one is absent
  for (const char* key : {"person_box", "face_box", "box"}) {
    if (!j.contains(key)) continue;
    const auto& arr = j[key];
    const auto nulls = std::count_if(arr.begin(), arr.end(), [](const json& v) { return v.is_null(); });
    if (nulls == 4) j.erase(key);
    else if (nulls != 0) throw SchemaError(line, key, "incomplete box coordinates");
  }
  return j;
}

inline bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

template <typename PerObject>
void for_each_record_object(const std::string& path, const PerObject& fn) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string line_text;
  std::size_t line_no = 0;
  if (has_suffix(path, ".csv")) {
    std::vector<std::string> header;
    while (std::getline(in, line_text)) {
      ++line_no;
      if (line_text.empty() || line_text == "\r") continue;
      auto fields = split_csv_line(line_text);
      if (header.empty()) {
        header = std::move(fields);
        continue;
      }
      fn(csv_row_to_json(header, fields, line_no), line_no);
    }
    return;
  }
  while (std::getline(in, line_text)) {
    ++line_no;
    if (line_text.empty() || line_text == "\r") continue;
    fn(parse_line(line_text, line_no), line_no);
  }
}

}  // namespace detail

/// Ground-truth reader. Accepts JSON Lines (one object per line) or, when the
/// path ends in .csv, a headered CSV with identical semantics.
inline GtStream parse_gt(const std::string& path, const VideoMeta& meta) {
  meta.validate();
  GtStream stream;
  stream.meta = meta;
  std::set<std::pair<int, std::string>> seen;

  detail::for_each_record_object(path, [&](const json& j, std::size_t line) {
    GtRecord r;
    r.frame = detail::parse_frame(j, line, meta.frame_count);
    if (!j.contains("id") || !j["id"].is_string()) throw SchemaError(line, "id", "required string");
    r.person_id = j["id"].get<std::string>();
    if (j.contains("person_box") && !j["person_box"].is_null()) {
      r.person_box = detail::parse_box_array(j["person_box"], line, "person_box");
    }
    if (j.contains("face_box") && !j["face_box"].is_null()) {
      r.face_box = detail::parse_box_array(j["face_box"], line, "face_box");
    }
    if (!r.person_box && !r.face_box) {
      throw SchemaError(line, "person_box", "at least one of person_box/face_box required");
    }
    if (!j.contains("ots") || !j["ots"].is_boolean()) throw SchemaError(line, "ots", "required boolean");
    r.ots = j["ots"].get<bool>();
    if (!j.contains("occlusion") || !j["occlusion"].is_string()) {
      throw SchemaError(line, "occlusion", "required string");
    }
    r.occlusion = detail::parse_occlusion(j["occlusion"].get<std::string>(), line);
    if (j.contains("age") && !j["age"].is_null()) {
      if (!j["age"].is_number_integer() || j["age"].get<int>() < 0) {
        throw SchemaError(line, "age", "expected integer >= 0");
      }
      r.age_years = j["age"].get<int>();
    }
    if (j.contains("gender") && !j["gender"].is_null()) {
      if (!j["gender"].is_string()) throw SchemaError(line, "gender", "expected string");
      r.gender = detail::parse_gender(j["gender"].get<std::string>(), line, /*allow_unknown=*/false);
    }
    if (!seen.insert({r.frame, r.person_id}).second) {
      throw SchemaError(line, "id", "duplicate (frame, id) pair");
    }
    stream.records.push_back(std::move(r));
  });

  detail::sort_gt(stream.records);
  return stream;
}

/// Estimation reader; same formats as parse_gt. An empty file is a valid,
/// empty stream.
inline EstStream parse_est(const std::string& path, const VideoMeta& meta) {
  meta.validate();
  EstStream stream;
  stream.video = meta.name;
  std::set<std::pair<int, std::string>> seen;

  detail::for_each_record_object(path, [&](const json& j, std::size_t line) {
    EstRecord r;
    r.frame = detail::parse_frame(j, line, meta.frame_count);
    if (!j.contains("id") || !j["id"].is_string()) throw SchemaError(line, "id", "required string");
    r.est_id = j["id"].get<std::string>();
    if (!j.contains("box")) throw SchemaError(line, "box", "required [x, y, w, h]");
    r.box = detail::parse_box_array(j["box"], line, "box");
    const bool has_years = j.contains("age_years") && !j["age_years"].is_null();
    const bool has_class = j.contains("age_class") && !j["age_class"].is_null();
    if (has_years && has_class) {
      throw SchemaError(line, "age_years", "age_years and age_class are mutually exclusive");
    }
    if (has_years) {
      if (!j["age_years"].is_number_integer() || j["age_years"].get<int>() < 0) {
        throw SchemaError(line, "age_years", "expected integer >= 0");
      }
      r.age = AgeEstimate::years(j["age_years"].get<int>());
    } else if (has_class) {
      if (!j["age_class"].is_string()) throw SchemaError(line, "age_class", "expected string");
      r.age = AgeEstimate::age_class(detail::parse_age_class(j["age_class"].get<std::string>(), line));
    }
    if (j.contains("gender") && !j["gender"].is_null()) {
      if (!j["gender"].is_string()) throw SchemaError(line, "gender", "expected string");
      r.gender = detail::parse_gender(j["gender"].get<std::string>(), line, /*allow_unknown=*/true);
    }
    if (!seen.insert({r.frame, r.est_id}).second) {
      throw SchemaError(line, "id", "duplicate (frame, id) pair");
    }
    stream.records.push_back(std::move(r));
  });

  detail::sort_est(stream.records);
  return stream;
}

/// Video meta reader: {"name", "frames", "fps", "width", "height", "ignore"}.
inline VideoMeta parse_video_meta(const std::string& path) {
  json j = json::parse(detail::read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw IoError("'" + path + "' is not a JSON object");
  VideoMeta meta;
  try {
    meta.name = j.at("name").get<std::string>();
    meta.frame_count = j.at("frames").get<int>();
    meta.fps = j.at("fps").get<double>();
    meta.width = j.at("width").get<int>();
    meta.height = j.at("height").get<int>();
    if (j.contains("ignore")) {
      for (const auto& b : j.at("ignore")) {
        meta.ignore_regions.push_back(detail::parse_box_array(b, 0, "ignore"));
      }
    }
  } catch (const json::exception& e) {
    throw IoError("'" + path + "': " + e.what());
  }
  meta.validate();
  return meta;
}

/// Evaluation config reader. Absent keys keep their defaults; unknown keys
/// are rejected to catch typos.
inline EvalConfig parse_config(const std::string& path) {
  json j = json::parse(detail::read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ConfigError("'" + path + "' is not a JSON object");
  EvalConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "iou_threshold") cfg.iou_threshold = value.get<double>();
      else if (key == "target") {
        const auto s = value.get<std::string>();
        if (s == "face") cfg.target = Target::Face;
        else if (s == "person") cfg.target = Target::Person;
        else throw ConfigError("target must be 'face' or 'person'");
      } else if (key == "segment_durations_s") {
        cfg.segment_durations_s = value.get<std::vector<double>>();
      } else if (key == "reentry_gap_s") cfg.reentry_gap_s = value.get<double>();
      else if (key == "ignore_overlap_ratio") cfg.ignore_overlap_ratio = value.get<double>();
      else if (key == "age_overlap_years") cfg.age_overlap_years = value.get<int>();
      else if (key == "target_fps") {
        if (!value.is_null()) cfg.target_fps = value.get<double>();
      } else if (key == "matcher") {
        const auto s = value.get<std::string>();
        if (s == "greedy") cfg.matcher = Matcher::Greedy;
        else if (s == "maxsum") cfg.matcher = Matcher::MaxSum;
        else throw ConfigError("matcher must be 'greedy' or 'maxsum'");
      } else if (key == "neutral_fp_vs_non_ots") {
        cfg.neutral_fp_vs_non_ots = value.get<bool>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
  cfg.validate();
  return cfg;
}

inline ordered_json box_to_json(const BBox& b) { return ordered_json::array({b.x, b.y, b.w, b.h}); }

inline ordered_json gt_record_to_json(const GtRecord& r) {
  ordered_json j;
  j["frame"] = r.frame;
  j["id"] = r.person_id;
  if (r.person_box) j["person_box"] = box_to_json(*r.person_box);
  if (r.face_box) j["face_box"] = box_to_json(*r.face_box);
  j["ots"] = r.ots;
  j["occlusion"] = to_string(r.occlusion);
  if (r.age_years) j["age"] = *r.age_years;
  if (r.gender) j["gender"] = to_string(*r.gender);
  return j;
}

inline ordered_json est_record_to_json(const EstRecord& r) {
  ordered_json j;
  j["frame"] = r.frame;
  j["id"] = r.est_id;
  j["box"] = box_to_json(r.box);
  if (r.age) {
    if (r.age->is_years()) j["age_years"] = r.age->years_value();
    else j["age_class"] = to_string(r.age->class_value());
  }
  if (r.gender) j["gender"] = to_string(*r.gender);
  return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  if (!out) throw IoError("write failed for '" + path + "'");
}

inline std::string gt_to_jsonl(const GtStream& gt) {
  std::string out;
  for (const auto& r : gt.records) {
    out += gt_record_to_json(r).dump();
    out += '\n';
  }
  return out;
}

inline std::string est_to_jsonl(const EstStream& est) {
  std::string out;
  for (const auto& r : est.records) {
    out += est_record_to_json(r).dump();
    out += '\n';
  }
  return out;
}

inline std::string meta_to_json(const VideoMeta& meta) {
  ordered_json j;
  j["name"] = meta.name;
  j["frames"] = meta.frame_count;
  j["fps"] = meta.fps;
  j["width"] = meta.width;
  j["height"] = meta.height;
  j["ignore"] = ordered_json::array();
  for (const auto& r : meta.ignore_regions) j["ignore"].push_back(box_to_json(r));
  return j.dump(2) + "\n";
}

}  // namespace ava
