#include "core/kernel.hpp"

#include <cstdio>

namespace gridecon {

EntityHandle Kernel::register_entity(const std::string& name, Entity& entity) {
  if (started_) throw SimError("register_entity: simulation already started");
  if (names_.count(name)) throw SimError("register_entity: duplicate name '" + name + "'");
  EntityId id = static_cast<EntityId>(entities_.size());
  entity.kernel_ = this;
  entity.id_ = id;
  entity.name_ = name;
  entities_.push_back(&entity);
  names_.emplace(name, id);
  return EntityHandle{id, name};
}

EventSeq Kernel::schedule(EntityId source, EntityId dest, SimTime delay, int tag,
                          std::any payload) {
  if (delay < 0.0) throw SimError("schedule: negative delay");
  if (dest != kBroadcast &&
      (dest < 0 || dest >= static_cast<EntityId>(entities_.size()))) {
    throw SimError("schedule: unknown destination id " + std::to_string(dest));
  }
  Event ev;
  ev.fire_time = now_ + delay;
  ev.seq = next_seq_++;
  ev.source = source;
  ev.dest = dest;
  ev.tag = tag;
  ev.payload = std::move(payload);
  calendar_.push(std::move(ev));
  return next_seq_ - 1;
}

SimTime Kernel::run() {
  if (entities_.empty()) throw SimError("run: no entities registered");
  started_ = true;
  while (!calendar_.empty()) {
    Event ev = calendar_.top();
    calendar_.pop();
    now_ = ev.fire_time;
    if (trace_) trace_(ev);
    if (ev.tag == tags::END_OF_SIMULATION && ev.dest == kBroadcast) {
      deliver_broadcast(ev);
      break;
    }
    dispatch(ev);
  }
  return now_;
}

void Kernel::dispatch(const Event& ev) {
  Entity* e = find_entity(ev.dest);
  if (e == nullptr) throw SimError("dispatch: event for unknown entity");
  try {
    e->handle(ev);
  } catch (const std::exception& ex) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "handler failure at t=%.9g (seq=%llu src=%d dest=%d tag=%d): ",
                  ev.fire_time, static_cast<unsigned long long>(ev.seq), ev.source,
                  ev.dest, ev.tag);
    throw SimError(std::string(buf) + ex.what());
  }
}

void Kernel::deliver_broadcast(const Event& ev) {
  // Shutdown sweeps user-facing entities before the core services they
  // depend on: reverse registration order (core entities register first).
  for (auto it = entities_.rbegin(); it != entities_.rend(); ++it) {
    Event copy = ev;
    copy.dest = (*it)->id();
    dispatch(copy);
  }
}

Entity* Kernel::find_entity(EntityId id) const {
  if (id < 0 || id >= static_cast<EntityId>(entities_.size())) return nullptr;
  return entities_[id];
}

EntityId Kernel::lookup(const std::string& name) const {
  auto it = names_.find(name);
  return it == names_.end() ? -1 : it->second;
}

std::string format_trace_line(const Event& ev) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.12g\t%llu\t%d\t%d\t%d\n", ev.fire_time,
                static_cast<unsigned long long>(ev.seq), ev.source, ev.dest, ev.tag);
  return buf;
}

}  // namespace gridecon
