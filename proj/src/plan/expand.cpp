#include "plan/expand.hpp"

#include <cctype>

namespace gridecon::plan {

const std::string* JobBinding::lookup(const std::string& name) const {
  for (const auto& [n, v] : values)
    if (n == name) return &v;
  auto it = pseudo.find(name);
  return it == pseudo.end() ? nullptr : &it->second;
}

std::vector<JobBinding> generate_jobs(const PlanAst& ast, const Overrides& overrides) {
  for (const auto& [name, vals] : overrides) {
    bool declared = false;
    for (const auto& p : ast.parameters) declared = declared || p.name == name;
    if (!declared) throw UnknownOverride(name);
    if (vals.empty()) throw UnknownOverride(name);
  }

  std::vector<std::vector<std::string>> value_sets;
  value_sets.reserve(ast.parameters.size());
  for (const auto& p : ast.parameters) {
    auto it = overrides.find(p.name);
    value_sets.push_back(it != overrides.end() ? it->second : p.values());
  }

  long total = 1;
  for (const auto& vs : value_sets) total *= static_cast<long>(vs.size());

  std::vector<JobBinding> jobs;
  jobs.reserve(static_cast<std::size_t>(total));
  for (long index = 0; index < total; ++index) {
    JobBinding b;
    b.job_index = index;
    long rest = index;
    // row-major: last parameter varies fastest
    std::vector<std::size_t> digit(value_sets.size(), 0);
    for (std::size_t k = value_sets.size(); k-- > 0;) {
      const long n = static_cast<long>(value_sets[k].size());
      digit[k] = static_cast<std::size_t>(rest % n);
      rest /= n;
    }
    for (std::size_t k = 0; k < value_sets.size(); ++k)
      b.values.emplace_back(ast.parameters[k].name, value_sets[k][digit[k]]);
    b.pseudo["jobname"] = std::to_string(index);
    b.pseudo["OS"] = "linux";
    b.pseudo["HOME"] = "/home/user";
    jobs.push_back(std::move(b));
  }
  return jobs;
}

namespace {
bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
}  // namespace

std::string substitute(std::string_view tmpl, const JobBinding& binding) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    char c = tmpl[i];
    if (c != '$') {
      out.push_back(c);
      ++i;
      continue;
    }
    if (i + 1 < tmpl.size() && tmpl[i + 1] == '$') {
      out.push_back('$');
      i += 2;
      continue;
    }
    if (i + 1 < tmpl.size() && tmpl[i + 1] == '{') {
      std::size_t close = tmpl.find('}', i + 2);
      if (close == std::string_view::npos) {
        out.push_back('$');
        ++i;
        continue;
      }
      std::string name(tmpl.substr(i + 2, close - i - 2));
      const std::string* v = binding.lookup(name);
      if (v == nullptr) throw UnboundMarker(name, i);
      out += *v;
      i = close + 1;
      continue;
    }
    if (i + 1 < tmpl.size() && ident_start(tmpl[i + 1])) {
      std::size_t end = i + 1;
      while (end < tmpl.size() && ident_char(tmpl[end])) ++end;
      std::string name(tmpl.substr(i + 1, end - i - 1));
      const std::string* v = binding.lookup(name);
      if (v == nullptr) throw UnboundMarker(name, i);
      out += *v;
      i = end;
      continue;
    }
    out.push_back('$');  // lone dollar before non-identifier
    ++i;
  }
  return out;
}

}  // namespace gridecon::plan
