#pragma once

#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "core/kernel.hpp"
#include "stats/accumulator.hpp"

namespace gridecon {

// A timestamped measurement filed under a dot-separated category label,
// e.g. "U0.USER.BudgetUtilization".
struct StatRecord {
  std::string label;
  SimTime time = 0.0;
  double value = 0.0;
};

// Append-only store of statistics reported by entities during a run, with a
// per-label accumulator maintained alongside the raw series.
class StatStore {
 public:
  void record(const std::string& label, SimTime time, double value);

  struct Series {
    std::string label;
    std::vector<std::pair<SimTime, double>> points;  // record order
    Accumulator summary;
  };

  // Pattern is a dot-separated label where '*' matches exactly one segment.
  // Unknown labels yield an empty result.
  std::vector<Series> query(const std::string& pattern) const;

  const std::vector<StatRecord>& records() const { return records_; }
  const Accumulator* accumulator(const std::string& label) const;

  // Tab-separated dump: one line per record, then a summary block per label.
  void dump(std::ostream& os) const;

 private:
  std::vector<StatRecord> records_;
  std::map<std::string, Series> by_label_;
};

bool label_matches(const std::string& pattern, const std::string& label);

// Entity wrapper so other entities can report via RECORD_STATISTICS events.
class StatisticsEntity : public Entity {
 public:
  explicit StatisticsEntity(StatStore& store) : store_(&store) {}
  void handle(const Event& ev) override;

 private:
  StatStore* store_;
};

}  // namespace gridecon
