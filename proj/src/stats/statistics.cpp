#include "stats/statistics.hpp"

#include <cstdio>

namespace gridecon {

void StatStore::record(const std::string& label, SimTime time, double value) {
  records_.push_back(StatRecord{label, time, value});
  Series& s = by_label_[label];
  if (s.label.empty()) s.label = label;
  s.points.emplace_back(time, value);
  s.summary.add(value);
}

namespace {
std::vector<std::string> split_segments(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t dot = s.find('.', start);
    if (dot == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, dot - start));
    start = dot + 1;
  }
  return out;
}
}  // namespace

bool label_matches(const std::string& pattern, const std::string& label) {
  const auto p = split_segments(pattern);
  const auto l = split_segments(label);
  if (p.size() != l.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != "*" && p[i] != l[i]) return false;
  }
  return true;
}

std::vector<StatStore::Series> StatStore::query(const std::string& pattern) const {
  std::vector<Series> out;
  for (const auto& [label, series] : by_label_) {
    if (label_matches(pattern, label)) out.push_back(series);
  }
  return out;
}

const Accumulator* StatStore::accumulator(const std::string& label) const {
  auto it = by_label_.find(label);
  return it == by_label_.end() ? nullptr : &it->second.summary;
}

void StatStore::dump(std::ostream& os) const {
  char buf[192];
  for (const auto& r : records_) {
    std::snprintf(buf, sizeof buf, "%s\t%.12g\t%.12g\n", r.label.c_str(), r.time,
                  r.value);
    os << buf;
  }
  for (const auto& [label, series] : by_label_) {
    const Accumulator& a = series.summary;
    std::snprintf(buf, sizeof buf,
                  "# %s\tcount=%ld\tmean=%.12g\tstd=%.12g\tmin=%.12g\tmax=%.12g\n",
                  label.c_str(), a.count, a.empty() ? 0.0 : a.mean(), a.stddev(),
                  a.empty() ? 0.0 : a.min, a.empty() ? 0.0 : a.max);
    os << buf;
  }
}

void StatisticsEntity::handle(const Event& ev) {
  if (ev.tag == tags::RECORD_STATISTICS) {
    const auto rec = std::any_cast<StatRecord>(ev.payload);
    store_->record(rec.label, rec.time, rec.value);
  }
}

}  // namespace gridecon
