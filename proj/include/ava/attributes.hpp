#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ava/ingest.hpp"
#include "ava/localization.hpp"
#include "ava/matching.hpp"
#include "ava/types.hpp"

namespace ava {

inline AgeClass age_class_of(int years) {
  if (years <= 18) return AgeClass::A0_18;
  if (years <= 34) return AgeClass::A19_34;
  if (years <= 65) return AgeClass::A35_65;
  return AgeClass::A65plus;
}

/// Year-valued estimates are lenient at interior class boundaries: the class
/// range stretches by overlap_years on each side that adjoins another class.
/// Class-valued estimates require exact equality.
inline bool age_matches(const AgeEstimate& estimate, AgeClass actual, int overlap_years) {
  if (!estimate.is_years()) return estimate.class_value() == actual;
  const int y = estimate.years_value();
  switch (actual) {
    case AgeClass::A0_18: return y <= 18 + overlap_years;
    case AgeClass::A19_34: return y >= 19 - overlap_years && y <= 34 + overlap_years;
    case AgeClass::A35_65: return y >= 35 - overlap_years && y <= 65 + overlap_years;
    case AgeClass::A65plus: return y >= 66 - overlap_years;
    case AgeClass::Unknown: return false;
  }
  return false;
}

struct Tally {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
};

/// Confusion tallies per class. Unknown estimates land in unknown_count and
/// touch no tally; pairs whose GT side lacks the attribute land in skipped.
template <typename Class>
struct ClassCounts {
  std::map<Class, Tally> per_class;
  std::int64_t unknown_count = 0;
  std::int64_t skipped = 0;
};

using AgeCounts = ClassCounts<AgeClass>;
using GenderCounts = ClassCounts<Gender>;

struct MatchedPair {
  const GtRecord* gt;
  const EstRecord* est;
};

/// Resolves FrameMatch tp id pairs back to their records.
inline std::vector<MatchedPair> build_matched_pairs(const std::vector<FrameMatch>& matches,
                                                    const GtStream& gt, const EstStream& est) {
  std::map<std::pair<int, std::string>, const GtRecord*> gt_by_key;
  for (const auto& r : gt.records) gt_by_key[{r.frame, r.person_id}] = &r;
  std::map<std::pair<int, std::string>, const EstRecord*> est_by_key;
  for (const auto& r : est.records) est_by_key[{r.frame, r.est_id}] = &r;

  std::vector<MatchedPair> pairs;
  for (const auto& m : matches) {
    for (const auto& tp : m.tp) {
      const auto g = gt_by_key.find({m.frame, tp.gt_id});
      const auto e = est_by_key.find({m.frame, tp.est_id});
      if (g != gt_by_key.end() && e != est_by_key.end()) pairs.push_back({g->second, e->second});
    }
  }
  return pairs;
}

/// Each matched pair is one sample. Correct estimate: tp(actual class).
/// Wrong estimate: fn(actual class) plus fp(class of the estimate).
inline AgeCounts score_age(const std::vector<MatchedPair>& pairs, const EvalConfig& cfg) {
  AgeCounts counts;
  for (const auto& p : pairs) {
    if (!p.gt->age_years) {
      ++counts.skipped;
      continue;
    }
    const AgeClass actual = age_class_of(*p.gt->age_years);
    if (!p.est->age || p.est->age->is_unknown()) {
      ++counts.unknown_count;
      continue;
    }
    if (age_matches(*p.est->age, actual, cfg.age_overlap_years)) {
      ++counts.per_class[actual].tp;
    } else {
      ++counts.per_class[actual].fn;
      const AgeClass estimated =
          p.est->age->is_years() ? age_class_of(p.est->age->years_value()) : p.est->age->class_value();
      ++counts.per_class[estimated].fp;
    }
  }
  return counts;
}

inline GenderCounts score_gender(const std::vector<MatchedPair>& pairs) {
  GenderCounts counts;
  for (const auto& p : pairs) {
    if (!p.gt->gender) {
      ++counts.skipped;
      continue;
    }
    if (!p.est->gender || *p.est->gender == Gender::Unknown) {
      ++counts.unknown_count;
      continue;
    }
    if (*p.est->gender == *p.gt->gender) {
      ++counts.per_class[*p.gt->gender].tp;
    } else {
      ++counts.per_class[*p.gt->gender].fn;
      ++counts.per_class[*p.est->gender].fp;
    }
  }
  return counts;
}

template <typename Class>
std::map<Class, PrfResult> per_class_prf(const ClassCounts<Class>& counts) {
  std::map<Class, PrfResult> out;
  for (const auto& [cls, tally] : counts.per_class) {
    out[cls] = make_prf(tally.tp, tally.fp, tally.fn);
  }
  return out;
}

}  // namespace ava
