#pragma once

#include <string>
#include <vector>

#include "core/kernel.hpp"

namespace gridecon {

struct GisContact {
  EntityId resource_id = -1;
  std::string name;
};

// Registry of resources available in the grid, kept in registration order.
// Re-registering an id updates its contact record in place.
class GisRegistry {
 public:
  void register_resource(EntityId id, GisContact contact);
  std::vector<EntityId> list() const;
  const std::vector<GisContact>& entries() const { return entries_; }

 private:
  std::vector<GisContact> entries_;
};

// Directory entity: resources register with REGISTER_RESOURCE, brokers
// discover via RESOURCE_LIST round trips.
class GridInformationService : public Entity {
 public:
  void handle(const Event& ev) override;
  const GisRegistry& registry() const { return registry_; }

 private:
  GisRegistry registry_;
};

}  // namespace gridecon
