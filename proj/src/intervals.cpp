#include "erc/intervals.hpp"

#include <algorithm>
#include <stdexcept>

#include "erc/checkers.hpp"

namespace erc {

namespace {

void sort_unique(std::vector<Time>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

IntervalFamily make_family(std::vector<Interval> intervals, FamilyTag tag) {
  std::erase_if(intervals, [](const Interval& iv) { return iv.t1 >= iv.t2; });
  std::sort(intervals.begin(), intervals.end());
  intervals.erase(std::unique(intervals.begin(), intervals.end()), intervals.end());
  return IntervalFamily{std::move(intervals), tag};
}

}  // namespace

std::string to_string(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::baptiste: return "baptiste";
    case FamilyTag::table1: return "table1";
    case FamilyTag::brute: return "brute";
  }
  return "unknown";
}

std::vector<Time> o1_set(const CuspInstance& inst) {
  std::vector<Time> out;
  out.reserve(3 * inst.size());
  for (const auto& a : inst.activities) {
    out.push_back(a.s_min);
    out.push_back(a.s_max);
    out.push_back(a.e_min);
  }
  sort_unique(out);
  return out;
}

std::vector<Time> o2_set(const CuspInstance& inst) {
  std::vector<Time> out;
  out.reserve(3 * inst.size());
  for (const auto& a : inst.activities) {
    out.push_back(a.e_max);
    out.push_back(a.s_max);
    out.push_back(a.e_min);
  }
  sort_unique(out);
  return out;
}

std::vector<Time> ot_set(const CuspInstance& inst, Time t) {
  std::vector<Time> out;
  out.reserve(inst.size());
  for (const auto& a : inst.activities) out.push_back(a.s_min + a.e_max - t);
  sort_unique(out);
  return out;
}

IntervalFamily baptiste_intervals(const CuspInstance& inst) {
  const auto o1 = o1_set(inst);
  const auto o2 = o2_set(inst);
  std::vector<Interval> out;
  out.reserve(o1.size() * o2.size() + (o1.size() + o2.size()) * inst.size());
  for (Time t1 : o1) {
    for (Time t2 : o2) out.push_back({t1, t2});
    for (const auto& a : inst.activities) out.push_back({t1, a.s_min + a.e_max - t1});
  }
  for (Time t2 : o2)
    for (const auto& a : inst.activities) out.push_back({a.s_min + a.e_max - t2, t2});
  return make_family(std::move(out), FamilyTag::baptiste);
}

char to_char(PairRow row) { return static_cast<char>('A' + static_cast<int>(row)); }

std::vector<PairInterval> pair_intervals(const Activity& i, const Activity& j, RowEEndpoint row_e) {
  const Time esi = i.s_min, lsi = i.s_max, eei = i.e_min, lei = i.e_max;
  const Time esj = j.s_min, lsj = j.s_max, eej = j.e_min, lej = j.e_max;

  std::vector<PairInterval> out;
  out.reserve(8);
  auto emit = [&](PairRow row, Time t1, Time t2) {
    if (t1 < t2) out.push_back({row, {t1, t2}});
  };

  if (esi <= esj && lej >= lei) emit(PairRow::A, esi, lej);
  if (esi >= esj && esi <= eej && esi <= lsj && esj + lej - esi >= lei) emit(PairRow::B, esi, esj + lej - esi);
  if (esi >= esj && esi <= eej && eej >= lei) emit(PairRow::C, esi, eej);
  if (lsi <= esj && esj <= lej && lej <= eei) emit(PairRow::D, lsi, lej);
  if (lsi >= esj && lsi <= eej && lsi <= lsj && esj + lej <= lsi + eei && esj + lej >= 2 * lsi) {
    const Time t1_term = row_e == RowEEndpoint::corrected ? lsi : esi;
    emit(PairRow::E, lsi, esj + lej - t1_term);
  }
  if (lsj <= lsi && lsi <= eej && eej <= eei) emit(PairRow::F, lsi, eej);
  if (lej <= lei && lej >= lsi && lej >= eei && esi + lei <= lsj + eej) emit(PairRow::G, esi + lei - lej, lej);
  if (eej <= lei && eej >= lsi && eej >= eei && esi + lei <= esj + lej && esi + lei <= 2 * eej)
    emit(PairRow::H, esi + lei - eej, eej);
  return out;
}

IntervalFamily table1_intervals(const CuspInstance& inst, RowEEndpoint row_e, bool with_mirror) {
  std::vector<Interval> out;
  for (const auto& i : inst.activities)
    for (const auto& j : inst.activities)
      for (const auto& pi : pair_intervals(i, j, row_e)) out.push_back(pi.interval);

  if (with_mirror) {
    const CuspInstance mirrored = mirror_instance(inst);
    const Time pivot = inst.horizon.lo + inst.horizon.hi;
    for (const auto& i : mirrored.activities)
      for (const auto& j : mirrored.activities)
        for (const auto& pi : pair_intervals(i, j, row_e))
          out.push_back({pivot - pi.interval.t2, pivot - pi.interval.t1});
  }
  return make_family(std::move(out), FamilyTag::table1);
}

InflectionProfile inflection_profile(const Activity& a, Time t1) {
  InflectionProfile prof;
  prof.activity = a.id;
  prof.t1 = t1;
  prof.delta = std::max<Time>(0, t1 - a.s_min);

  if (t1 <= a.s_min) {
    // Flat at 0 until s_max, ramps to p at e_max.
    prof.soi = a.s_max;
    prof.doi = a.e_max;
  } else if (t1 >= a.e_min) {
    return prof;
  } else if (t1 < a.s_max) {
    // Ramps from s_max, capped at p - delta.
    prof.soi = a.s_max;
    prof.doi = a.s_min + a.e_max - t1;
  } else {
    // t1 sits inside the mandatory part: grows right away until e_min.
    prof.initially_on = true;
    prof.doi = a.e_min;
  }
  if (prof.soi && prof.doi && *prof.soi == *prof.doi) {
    prof.soi.reset();
    prof.doi.reset();
  }
  return prof;
}

DiscreteSlopes discrete_slopes(const Activity& a, Time t1, Time t2) {
  if (t1 >= t2 - 1) throw std::invalid_argument("discrete_slopes requires t1 < t2 - 1");
  const Time here = min_intersection(a, t1, t2);
  return {here - min_intersection(a, t1, t2 - 1), min_intersection(a, t1, t2 + 1) - here};
}

}  // namespace erc
