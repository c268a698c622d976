#include "plan/plan.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <set>
#include <sstream>

namespace gridecon::plan {

namespace {

enum class TokKind { Word, String, Semi, Newline, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
        continue;
      }
      if (c == '\n') {
        tok_ = Token{TokKind::Newline, "\n", line_, col_};
        bump();
        return;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
        continue;
      }
      if (c == ';') {
        tok_ = Token{TokKind::Semi, ";", line_, col_};
        bump();
        return;
      }
      if (c == '"') {
        int l = line_, co = col_;
        bump();
        std::string s;
        while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
          s.push_back(src_[pos_]);
          bump();
        }
        if (pos_ >= src_.size() || src_[pos_] != '"')
          throw PlanParseError(l, co, "unterminated string");
        bump();
        tok_ = Token{TokKind::String, std::move(s), l, co};
        return;
      }
      int l = line_, co = col_;
      std::string w;
      while (pos_ < src_.size()) {
        char d = src_[pos_];
        if (std::isspace(static_cast<unsigned char>(d)) || d == ';' || d == '#' ||
            d == '"')
          break;
        w.push_back(d);
        bump();
      }
      tok_ = Token{TokKind::Word, std::move(w), l, co};
      return;
    }
    tok_ = Token{TokKind::End, "", line_, col_};
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

long parse_long(const Token& t) {
  long v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc{} || p != t.text.data() + t.text.size())
    throw PlanParseError(t.line, t.col, "expected integer, got '" + t.text + "'");
  return v;
}

double parse_double(const Token& t) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc{} || p != t.text.data() + t.text.size())
    throw PlanParseError(t.line, t.col, "expected number, got '" + t.text + "'");
  return v;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  PlanAst parse() {
    PlanAst ast;
    std::set<std::string> seen;
    for (;;) {
      skip_newlines();
      if (lex_.peek().kind == TokKind::End) break;
      Token t = expect_word("'parameter' or 'task'");
      if (t.text == "parameter") {
        ParameterDecl decl = parse_parameter(t);
        if (!seen.insert(decl.name).second)
          throw PlanParseError(t.line, t.col, "duplicate parameter '" + decl.name + "'");
        ast.parameters.push_back(std::move(decl));
      } else if (t.text == "task") {
        ast.tasks.push_back(parse_task());
      } else {
        throw PlanParseError(t.line, t.col,
                             "expected 'parameter' or 'task', got '" + t.text + "'");
      }
    }
    return ast;
  }

 private:
  void skip_newlines() {
    while (lex_.peek().kind == TokKind::Newline) lex_.take();
  }

  // Declarations may span lines; newlines are insignificant inside them.
  Token next_in_decl() {
    skip_newlines();
    return lex_.take();
  }

  Token expect_word(const std::string& what) {
    skip_newlines();
    Token t = lex_.take();
    if (t.kind != TokKind::Word)
      throw PlanParseError(t.line, t.col, "expected " + what);
    return t;
  }

  Token expect_keyword(const std::string& kw) {
    Token t = next_in_decl();
    if (t.kind != TokKind::Word || t.text != kw)
      throw PlanParseError(t.line, t.col, "expected '" + kw + "', got '" + t.text + "'");
    return t;
  }

  Token expect_string() {
    Token t = next_in_decl();
    if (t.kind != TokKind::String)
      throw PlanParseError(t.line, t.col, "expected quoted string");
    return t;
  }

  ParameterDecl parse_parameter(const Token& kw) {
    ParameterDecl decl;
    Token name = next_in_decl();
    if (name.kind != TokKind::Word || !is_identifier(name.text))
      throw PlanParseError(name.line, name.col, "expected parameter name");
    decl.name = name.text;

    Token t = next_in_decl();
    if (t.kind == TokKind::Word && t.text == "label") {
      decl.label = expect_string().text;
      t = next_in_decl();
    }
    if (t.kind != TokKind::Word)
      throw PlanParseError(t.line, t.col, "expected parameter type");

    if (t.text == "integer") {
      Token form = next_in_decl();
      if (form.kind == TokKind::Word && form.text == "range") {
        expect_keyword("from");
        decl.range.from = parse_long(next_in_decl());
        expect_keyword("to");
        decl.range.to = parse_long(next_in_decl());
        expect_keyword("step");
        Token step = next_in_decl();
        decl.range.step = parse_long(step);
        decl.kind = ParameterDecl::Kind::Range;
        if (decl.range.step == 0)
          throw PlanParseError(step.line, step.col, "range step must be non-zero");
        if ((decl.range.to - decl.range.from) / decl.range.step < 0)
          throw PlanParseError(step.line, step.col,
                               "range never reaches 'to' with this step");
      } else if (form.kind == TokKind::Word && form.text == "default") {
        decl.kind = ParameterDecl::Kind::Default;
        decl.default_value = parse_long(next_in_decl());
      } else {
        throw PlanParseError(form.line, form.col,
                             "expected 'range' or 'default' after 'integer'");
      }
    } else if (t.text == "float") {
      Token form = next_in_decl();
      if (form.kind == TokKind::Word && form.text == "range")
        throw PlanParseError(form.line, form.col,
                             "float parameters support 'default' only");
      if (form.kind != TokKind::Word || form.text != "default")
        throw PlanParseError(form.line, form.col, "expected 'default' after 'float'");
      decl.kind = ParameterDecl::Kind::Default;
      decl.default_value = parse_double(next_in_decl());
    } else if (t.text == "text") {
      Token form = next_in_decl();
      if (form.kind == TokKind::Word && form.text == "default") {
        decl.kind = ParameterDecl::Kind::Default;
        decl.default_value = expect_string().text;
      } else if (form.kind == TokKind::Word && form.text == "select") {
        expect_keyword("oneof");
        decl.kind = ParameterDecl::Kind::SelectOneof;
        while (true) {
          Token v = next_in_decl();
          if (v.kind == TokKind::Word && v.text == "default") {
            decl.default_value = expect_string().text;
            break;
          }
          if (v.kind != TokKind::String)
            throw PlanParseError(v.line, v.col,
                                 "expected option string or 'default'");
          decl.options.push_back(v.text);
        }
        if (decl.options.empty())
          throw PlanParseError(t.line, t.col, "'select oneof' needs options");
      } else {
        throw PlanParseError(form.line, form.col,
                             "expected 'default' or 'select' after 'text'");
      }
    } else {
      throw PlanParseError(t.line, t.col, "unknown parameter type '" + t.text + "'");
    }

    Token semi = next_in_decl();
    if (semi.kind != TokKind::Semi)
      throw PlanParseError(semi.line, semi.col,
                           "expected ';' at end of parameter declaration");
    (void)kw;
    return decl;
  }

  // Task bodies are line oriented: one command per line until 'endtask'.
  TaskScript parse_task() {
    TaskScript task;
    Token name = lex_.take();
    if (name.kind != TokKind::Word || !is_identifier(name.text))
      throw PlanParseError(name.line, name.col, "expected task name");
    task.name = name.text;

    for (;;) {
      skip_newlines();
      Token t = lex_.take();
      if (t.kind == TokKind::End)
        throw PlanParseError(t.line, t.col, "missing 'endtask'");
      if (t.kind == TokKind::Word && t.text == "endtask") break;
      task.commands.push_back(parse_command(t));
    }
    return task;
  }

  TaskCommand parse_command(Token first) {
    if (first.kind != TokKind::Word)
      throw PlanParseError(first.line, first.col, "expected command");
    TaskCommand cmd;
    std::string verb = first.text;
    if (verb.rfind("node:", 0) == 0) {
      cmd.on_node = true;
      verb = verb.substr(5);
    }
    if (verb == "copy")
      cmd.kind = CommandKind::Copy;
    else if (verb == "substitute")
      cmd.kind = CommandKind::Substitute;
    else if (verb == "execute")
      cmd.kind = CommandKind::Execute;
    else
      throw PlanParseError(first.line, first.col, "unknown command '" + first.text + "'");

    while (lex_.peek().kind == TokKind::Word || lex_.peek().kind == TokKind::String) {
      cmd.args.push_back(lex_.take().text);
    }
    const std::size_t n = cmd.args.size();
    if (cmd.kind == CommandKind::Execute ? n < 1 : n != 2)
      throw PlanParseError(first.line, first.col,
                           cmd.kind == CommandKind::Execute
                               ? "'execute' needs at least one argument"
                               : "'" + verb + "' needs exactly two arguments");
    return cmd;
  }

  Lexer lex_;
};

}  // namespace

std::string literal_text(const Literal& v) {
  if (std::holds_alternative<long>(v)) return std::to_string(std::get<long>(v));
  if (std::holds_alternative<double>(v)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(v));
    double back = 0.0;
    std::sscanf(buf, "%lg", &back);
    if (back == std::get<double>(v)) {
      // shorten when a lower precision round-trips
      for (int prec = 1; prec < 17; ++prec) {
        char test[64];
        std::snprintf(test, sizeof test, "%.*g", prec, std::get<double>(v));
        std::sscanf(test, "%lg", &back);
        if (back == std::get<double>(v)) return test;
      }
    }
    return buf;
  }
  return std::get<std::string>(v);
}

long ParameterDecl::value_count() const {
  switch (kind) {
    case Kind::Range: return (range.to - range.from) / range.step + 1;
    case Kind::Default: return 1;
    case Kind::SelectOneof: return 1;
  }
  return 1;
}

std::vector<std::string> ParameterDecl::values() const {
  std::vector<std::string> out;
  if (kind == Kind::Range) {
    for (long v = range.from; range.step > 0 ? v <= range.to : v >= range.to;
         v += range.step)
      out.push_back(std::to_string(v));
  } else {
    out.push_back(literal_text(default_value));
  }
  return out;
}

PlanAst parse_plan(std::string_view text) { return Parser(text).parse(); }

std::string unparse(const PlanAst& ast) {
  std::ostringstream os;
  for (const auto& p : ast.parameters) {
    os << "parameter " << p.name;
    if (p.label) os << " label \"" << *p.label << "\"";
    switch (p.kind) {
      case ParameterDecl::Kind::Range:
        os << " integer range from " << p.range.from << " to " << p.range.to
           << " step " << p.range.step;
        break;
      case ParameterDecl::Kind::Default:
        if (std::holds_alternative<long>(p.default_value))
          os << " integer default " << std::get<long>(p.default_value);
        else if (std::holds_alternative<double>(p.default_value))
          os << " float default " << literal_text(p.default_value);
        else
          os << " text default \"" << std::get<std::string>(p.default_value) << "\"";
        break;
      case ParameterDecl::Kind::SelectOneof:
        os << " text select oneof";
        for (const auto& o : p.options) os << " \"" << o << "\"";
        os << " default \"" << std::get<std::string>(p.default_value) << "\"";
        break;
    }
    os << ";\n";
  }
  for (const auto& t : ast.tasks) {
    os << "task " << t.name << "\n";
    for (const auto& c : t.commands) {
      os << "    ";
      if (c.on_node) os << "node:";
      switch (c.kind) {
        case CommandKind::Copy: os << "copy"; break;
        case CommandKind::Substitute: os << "substitute"; break;
        case CommandKind::Execute: os << "execute"; break;
      }
      for (const auto& a : c.args) os << " " << a;
      os << "\n";
    }
    os << "endtask\n";
  }
  return os.str();
}

}  // namespace gridecon::plan
