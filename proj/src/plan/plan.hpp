#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gridecon::plan {

struct PlanParseError : std::runtime_error {
  PlanParseError(int line, int col, const std::string& message)
      : std::runtime_error("plan:" + std::to_string(line) + ":" + std::to_string(col) +
                           ": " + message),
        line(line),
        col(col) {}
  int line;
  int col;
};

using Literal = std::variant<long, double, std::string>;

std::string literal_text(const Literal& v);

struct RangeValues {
  long from = 0;
  long to = 0;
  long step = 1;
  bool operator==(const RangeValues&) const = default;
};

struct ParameterDecl {
  enum class Kind { Range, Default, SelectOneof };

  std::string name;
  std::optional<std::string> label;
  Kind kind = Kind::Default;
  RangeValues range;                 // Kind::Range
  Literal default_value;             // Kind::Default / Kind::SelectOneof
  std::vector<std::string> options;  // Kind::SelectOneof

  bool operator==(const ParameterDecl&) const = default;

  // Number of values this parameter contributes to the cross product.
  long value_count() const;
  std::vector<std::string> values() const;
};

enum class CommandKind { Copy, Substitute, Execute };

struct TaskCommand {
  CommandKind kind = CommandKind::Execute;
  bool on_node = false;  // "node:" prefixed command
  std::vector<std::string> args;
  bool operator==(const TaskCommand&) const = default;
};

struct TaskScript {
  std::string name;
  std::vector<TaskCommand> commands;
  bool operator==(const TaskScript&) const = default;
};

struct PlanAst {
  std::vector<ParameterDecl> parameters;
  std::vector<TaskScript> tasks;
  bool operator==(const PlanAst&) const = default;
};

// Parses the declarative sweep language: parameter declarations (integer
// range/default, float default, text default/select oneof) and task blocks of
// copy/substitute/execute commands. '#' comments run to end of line.
PlanAst parse_plan(std::string_view text);

// Canonical pretty-printer; parse(unparse(ast)) == ast.
std::string unparse(const PlanAst& ast);

}  // namespace gridecon::plan
