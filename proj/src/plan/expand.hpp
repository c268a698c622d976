#pragma once

#include <map>
#include <string>
#include <vector>

#include "plan/plan.hpp"

namespace gridecon::plan {

// One generated job: a value for every declared parameter (declaration
// order) plus the pseudo-parameters jobname, OS, and HOME that never appear
// in the plan itself.
struct JobBinding {
  long job_index = 0;
  std::vector<std::pair<std::string, std::string>> values;
  std::map<std::string, std::string> pseudo;

  const std::string* lookup(const std::string& name) const;
};

struct UnknownOverride : std::runtime_error {
  explicit UnknownOverride(const std::string& name)
      : std::runtime_error("override references undeclared parameter '" + name + "'") {}
};

struct UnboundMarker : std::runtime_error {
  UnboundMarker(const std::string& name, std::size_t position)
      : std::runtime_error("unbound substitution marker '" + name + "' at offset " +
                           std::to_string(position)),
        name(name),
        position(position) {}
  std::string name;
  std::size_t position;
};

// Value selections that replace a parameter's declared value set; supplying
// several values for one name expands the cross product.
using Overrides = std::map<std::string, std::vector<std::string>>;

// Cross product of all parameter value sets, row-major with the last declared
// parameter varying fastest. jobname is the decimal job index.
std::vector<JobBinding> generate_jobs(const PlanAst& ast, const Overrides& overrides = {});

// Replaces $name / ${name} markers with bound values; '$$' yields a literal
// dollar. Unbraced names take the longest identifier match.
std::string substitute(std::string_view tmpl, const JobBinding& binding);

}  // namespace gridecon::plan
