// Plan-file tool: validates a parameter-sweep plan or expands it into its
// job binding table.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "plan/expand.hpp"
#include "plan/plan.hpp"

using namespace gridecon::plan;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open plan file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Overrides parse_sets(const std::vector<std::string>& sets) {
  Overrides overrides;
  for (const auto& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("--set expects name=value, got '" + s + "'");
    overrides[s.substr(0, eq)].push_back(s.substr(eq + 1));
  }
  return overrides;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parameter sweep plan tool"};
  app.require_subcommand(1);

  std::string expand_path;
  std::vector<std::string> sets;
  auto* expand = app.add_subcommand("expand", "print the job binding table");
  expand->add_option("file", expand_path, "plan file")->required();
  expand->add_option("--set", sets, "override a parameter value (repeatable)");

  std::string check_path;
  auto* check = app.add_subcommand("check", "validate a plan file");
  check->add_option("file", check_path, "plan file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      const PlanAst ast = parse_plan(slurp(check_path));
      long jobs = 1;
      for (const auto& p : ast.parameters) jobs *= p.value_count();
      std::printf("ok: %zu parameters, %zu tasks, %ld jobs\n", ast.parameters.size(),
                  ast.tasks.size(), jobs);
      return 0;
    }

    const PlanAst ast = parse_plan(slurp(expand_path));
    const auto bindings = generate_jobs(ast, parse_sets(sets));
    std::string header;
    for (const auto& p : ast.parameters) {
      if (!header.empty()) header += "\t";
      header += p.name;
    }
    std::printf("%s\n", header.c_str());
    for (const auto& b : bindings) {
      std::string row;
      for (const auto& [name, value] : b.values) {
        if (!row.empty()) row += "\t";
        row += value;
      }
      std::printf("%s\n", row.c_str());
    }
    return 0;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
}
