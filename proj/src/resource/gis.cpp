#include "resource/gis.hpp"

namespace gridecon {

void GisRegistry::register_resource(EntityId id, GisContact contact) {
  for (auto& e : entries_) {
    if (e.resource_id == id) {
      e = std::move(contact);
      return;
    }
  }
  entries_.push_back(std::move(contact));
}

std::vector<EntityId> GisRegistry::list() const {
  std::vector<EntityId> ids;
  ids.reserve(entries_.size());
  for (const auto& e : entries_) ids.push_back(e.resource_id);
  return ids;
}

void GridInformationService::handle(const Event& ev) {
  switch (ev.tag) {
    case tags::REGISTER_RESOURCE:
      registry_.register_resource(ev.source,
                                  std::any_cast<GisContact>(ev.payload));
      break;
    case tags::RESOURCE_LIST:
      kernel().schedule(id(), ev.source, 0.0, tags::RESOURCE_LIST, registry_.list());
      break;
    case tags::END_OF_SIMULATION:
      break;
    default:
      break;
  }
}

}  // namespace gridecon
