#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/event.hpp"

namespace gridecon {

class Kernel;

class SimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EntityHandle {
  EntityId id = -1;
  std::string name;
};

// Base class for everything that receives events. Entities are owned by the
// caller and must outlive the kernel run.
class Entity {
 public:
  virtual ~Entity() = default;
  virtual void handle(const Event& ev) = 0;

  EntityId id() const { return id_; }
  const std::string& name() const { return name_; }
  Kernel& kernel() const { return *kernel_; }

 private:
  friend class Kernel;
  Kernel* kernel_ = nullptr;
  EntityId id_ = -1;
  std::string name_;
};

// Single-loop event calendar. Events are delivered in (fire_time, seq) order,
// seq being the insertion counter, so two runs with identical inputs produce
// identical traces. All entity handlers run interleaved on this one loop.
class Kernel {
 public:
  static constexpr EntityId kBroadcast = -1;

  EntityHandle register_entity(const std::string& name, Entity& entity);

  // Enqueues an event firing at now + delay. Returns its seq.
  EventSeq schedule(EntityId source, EntityId dest, SimTime delay, int tag,
                    std::any payload = {});

  // Processes the calendar until it is empty or an END_OF_SIMULATION
  // broadcast is delivered. Returns the final simulated time.
  SimTime run();

  SimTime now() const { return now_; }
  bool started() const { return started_; }
  std::size_t entity_count() const { return entities_.size(); }

  Entity* find_entity(EntityId id) const;
  EntityId lookup(const std::string& name) const;  // -1 when absent

  // One line per delivered event: fire_time seq source dest tag.
  void set_trace_sink(std::function<void(const Event&)> sink) { trace_ = std::move(sink); }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.fire_time != b.fire_time) return a.fire_time > b.fire_time;
      return a.seq > b.seq;
    }
  };

  void dispatch(const Event& ev);
  void deliver_broadcast(const Event& ev);

  std::vector<Entity*> entities_;
  std::unordered_map<std::string, EntityId> names_;
  std::priority_queue<Event, std::vector<Event>, Later> calendar_;
  EventSeq next_seq_ = 0;
  SimTime now_ = 0.0;
  bool started_ = false;
  std::function<void(const Event&)> trace_;
};

// Formats a delivered-event trace record; used by the optional trace output
// and by determinism tests that hash the trace.
std::string format_trace_line(const Event& ev);

}  // namespace gridecon
