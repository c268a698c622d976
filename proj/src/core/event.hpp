#pragma once

#include <any>
#include <cstdint>

namespace gridecon {

using SimTime = double;
using EntityId = int;
using EventSeq = std::uint64_t;

// Command codes carried by events between entities.
namespace tags {
inline constexpr int END_OF_SIMULATION = -1;
inline constexpr int INSIGNIFICANT = 0;
inline constexpr int EXPERIMENT = 1;                // user -> broker
inline constexpr int REGISTER_RESOURCE = 2;         // resource -> GIS
inline constexpr int RESOURCE_LIST = 3;             // broker <-> GIS
inline constexpr int RESOURCE_CHARACTERISTICS = 4;  // broker <-> resource
inline constexpr int RESOURCE_DYNAMICS = 5;         // broker <-> resource
inline constexpr int GRIDLET_SUBMIT = 6;            // broker -> resource
inline constexpr int GRIDLET_RETURN = 7;            // resource -> broker
inline constexpr int GRIDLET_STATUS = 8;            // broker <-> resource
inline constexpr int RECORD_STATISTICS = 9;         // entity -> statistics
inline constexpr int GRIDLET_CANCEL = 10;           // broker -> resource

// Entity-internal command codes.
inline constexpr int COMPLETION_FORECAST = 20;  // resource self-event
inline constexpr int SCHEDULE_TICK = 21;        // broker self-event
inline constexpr int EXPERIMENT_DONE = 22;      // broker -> user
inline constexpr int USER_DONE = 23;            // user -> shutdown coordinator
}  // namespace tags

inline constexpr double kDefaultBaudRate = 9600.0;

struct Event {
  SimTime fire_time = 0.0;
  EventSeq seq = 0;  // insertion counter; total order tie-break at equal fire_time
  EntityId source = -1;
  EntityId dest = -1;
  int tag = tags::INSIGNIFICANT;
  std::any payload;

  bool internal() const { return source == dest; }
};

// A self-scheduled forecast is superseded whenever the entity schedules a
// newer one; only the event whose seq matches the entity's most recent
// forecast seq is acted upon. Returns true if `observed` should be discarded.
inline bool cancel_stale(EventSeq expected_seq, const Event& observed) {
  return observed.seq != expected_seq;
}

}  // namespace gridecon
