#include <doctest.h>

#include "plan/expand.hpp"
#include "plan/plan.hpp"

using namespace gridecon::plan;

namespace {

// Sweep of a two-parameter compute job: one range parameter of 165 values.
const char* kAnglePlan = R"(#Parameters Declaration
parameter angle_degree integer range from 1 to 165 step 1;
parameter time_base_value integer default 5;

#Task Definition
task main
    #Copy necessary executables depending on node type
    copy calc.$OS node:calc
    #Execute program with parameter values on remote node
    node:execute ./calc $angle_degree $time_base_value
    #Copy results file to use home node with jobname as extension
    copy node:output ./output.$jobname
endtask
)";

// Molecule screening sweep: many single-valued parameters and one
// 2000-value range.
const char* kScreeningPlan = R"(
parameter database_name label "database_name" text select oneof "aldrich"
"maybridge" "maybridge_300" "asinex_egc" "asinex_epc" "asinex_pre"
"available_chemicals_directory" "inter_bioscreen_s" "inter_bioscreen_n"
"national_cancer_institute" "IGF_HITS" "aldrich_300" "molecular_science_500"
"APP" "ECE" default "aldrich_300";
parameter CDB_SERVER text default "data.host.example";
parameter CDB_PORT_NO text default "5001";
parameter score_ligand text default "yes";
parameter minimize_ligand text default "yes";
parameter multiple_ligands text default "no";
parameter random_seed integer default 7;
parameter anchor_search text default "no";
parameter torsion_drive text default "yes";
parameter clash_overlap float default 0.5;
parameter conformation_cutoff_factor integer default 5;
parameter torsion_minimize text default "yes";
parameter match_receptor_sites text default "no";
parameter maximum_cycles integer default 1;
parameter receptor_site_file text default "ece.sph";
parameter score_grid_prefix text default "ece";
parameter ligand_number integer range from 1 to 2000 step 1;

task nodestart
  copy ./parameter/vdw.defn node:.
  copy ./parameter/chem.defn node:.
endtask
task main
  node:substitute dock_base dock_run
  node:execute sh ./get_molecule_fetch
  copy node:dock_out ./results/dock_out.$jobname
endtask
)";

}  // namespace

TEST_CASE("the angle sweep parses to 2 parameters and one 3-command task") {
  PlanAst ast = parse_plan(kAnglePlan);
  REQUIRE(ast.parameters.size() == 2);
  CHECK(ast.parameters[0].name == "angle_degree");
  CHECK(ast.parameters[0].kind == ParameterDecl::Kind::Range);
  CHECK(ast.parameters[0].range.from == 1);
  CHECK(ast.parameters[0].range.to == 165);
  CHECK(ast.parameters[0].range.step == 1);
  CHECK(ast.parameters[1].name == "time_base_value");
  CHECK(ast.parameters[1].kind == ParameterDecl::Kind::Default);
  CHECK(std::get<long>(ast.parameters[1].default_value) == 5);

  REQUIRE(ast.tasks.size() == 1);
  CHECK(ast.tasks[0].name == "main");
  REQUIRE(ast.tasks[0].commands.size() == 3);
  CHECK(ast.tasks[0].commands[0].kind == CommandKind::Copy);
  CHECK_FALSE(ast.tasks[0].commands[0].on_node);
  CHECK(ast.tasks[0].commands[0].args ==
        std::vector<std::string>{"calc.$OS", "node:calc"});
  CHECK(ast.tasks[0].commands[1].kind == CommandKind::Execute);
  CHECK(ast.tasks[0].commands[1].on_node);
  CHECK(ast.tasks[0].commands[2].kind == CommandKind::Copy);
}

TEST_CASE("empty input gives an empty plan") {
  PlanAst ast = parse_plan("");
  CHECK(ast.parameters.empty());
  CHECK(ast.tasks.empty());
  PlanAst comments = parse_plan("# nothing here\n\n# at all\n");
  CHECK(comments.parameters.empty());
}

TEST_CASE("range with step 0 is rejected as bad-range") {
  CHECK_THROWS_AS(parse_plan("parameter x integer range from 1 to 5 step 0;"),
                  PlanParseError);
  CHECK_THROWS_AS(parse_plan("parameter x integer range from 5 to 1 step 1;"),
                  PlanParseError);
  // a descending range with a negative step is fine
  PlanAst ok = parse_plan("parameter x integer range from 5 to 1 step -2;");
  CHECK(ok.parameters[0].values() == std::vector<std::string>{"5", "3", "1"});
}

TEST_CASE("duplicate parameters and unknown constructs carry line/col") {
  try {
    parse_plan("parameter a integer default 1;\nparameter a integer default 2;");
    FAIL("expected duplicate error");
  } catch (const PlanParseError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
  }
  try {
    parse_plan("widget a;\n");
    FAIL("expected syntax error");
  } catch (const PlanParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.col == 1);
  }
  CHECK_THROWS_AS(parse_plan("parameter f float range from 1 to 2 step 1;"),
                  PlanParseError);
  CHECK_THROWS_AS(parse_plan("task t\n  frobnicate a b\nendtask"), PlanParseError);
  CHECK_THROWS_AS(parse_plan("task t\n  copy a\nendtask"), PlanParseError);
}

TEST_CASE("the screening plan parses with select-oneof and float defaults") {
  PlanAst ast = parse_plan(kScreeningPlan);
  REQUIRE(ast.parameters.size() == 17);
  CHECK(ast.parameters[0].kind == ParameterDecl::Kind::SelectOneof);
  CHECK(ast.parameters[0].options.size() == 15);
  CHECK(std::get<std::string>(ast.parameters[0].default_value) == "aldrich_300");
  CHECK(ast.parameters[0].label.value() == "database_name");
  CHECK(std::get<double>(ast.parameters[9].default_value) == doctest::Approx(0.5));
  REQUIRE(ast.tasks.size() == 2);
  CHECK(ast.tasks[0].name == "nodestart");
  CHECK(ast.tasks[1].name == "main");
  CHECK(ast.tasks[1].commands[0].kind == CommandKind::Substitute);
}

TEST_CASE("the angle sweep expands to 165 bindings") {
  PlanAst ast = parse_plan(kAnglePlan);
  auto jobs = generate_jobs(ast);
  CHECK(jobs.size() == 165);
  CHECK(jobs[0].values[0].second == "1");
  CHECK(jobs[0].values[1].second == "5");
  CHECK(jobs[164].values[0].second == "165");
  CHECK(jobs[12].pseudo.at("jobname") == "12");
}

TEST_CASE("the screening plan expands to 2000 bindings") {
  PlanAst ast = parse_plan(kScreeningPlan);
  auto jobs = generate_jobs(ast);
  CHECK(jobs.size() == 2000);
  const std::string* ln = jobs[4].lookup("ligand_number");
  REQUIRE(ln != nullptr);
  CHECK(*ln == "5");
}

TEST_CASE("overriding a select-oneof with several values multiplies the product") {
  PlanAst ast = parse_plan(
      "parameter r integer range from 1 to 3 step 1;\n"
      "parameter s text select oneof \"a\" \"b\" default \"a\";\n");
  CHECK(generate_jobs(ast).size() == 3);
  Overrides ov{{"s", {"a", "b"}}};
  auto jobs = generate_jobs(ast, ov);
  CHECK(jobs.size() == 6);
  // row-major: the last declared parameter varies fastest
  CHECK(jobs[0].values[0].second == "1");
  CHECK(jobs[0].values[1].second == "a");
  CHECK(jobs[1].values[0].second == "1");
  CHECK(jobs[1].values[1].second == "b");
  CHECK(jobs[2].values[0].second == "2");

  CHECK_THROWS_AS(generate_jobs(ast, Overrides{{"nope", {"1"}}}), UnknownOverride);
}

TEST_CASE("binding counts multiply per-parameter value counts") {
  PlanAst ast = parse_plan(
      "parameter a integer range from 0 to 9 step 1;\n"
      "parameter b integer range from 2 to 10 step 2;\n"
      "parameter c text default \"z\";\n");
  long expect = 10 * 5 * 1;
  auto jobs = generate_jobs(ast);
  CHECK(static_cast<long>(jobs.size()) == expect);
  // pairwise distinct
  for (std::size_t i = 1; i < jobs.size(); ++i)
    CHECK(jobs[i].values != jobs[i - 1].values);
}

TEST_CASE("substitution replaces markers, escapes dollars, reports unbound names") {
  PlanAst ast = parse_plan("parameter ligand_number integer range from 5 to 5 step 1;");
  auto jobs = generate_jobs(ast);
  REQUIRE(jobs.size() == 1);
  const JobBinding& b = jobs[0];

  CHECK(substitute("${ligand_number}.mol2", b) == "5.mol2");
  CHECK(substitute("no markers at all", b) == "no markers at all");
  CHECK(substitute("cost is $$5", b) == "cost is $5");
  CHECK(substitute("./output.$jobname", b) == "./output.0");
  CHECK(substitute("$ligand_number$ligand_number", b) == "55");
  // longest identifier match wins for the unbraced form
  CHECK_THROWS_AS(substitute("$ligand_numbers", b), UnboundMarker);
  try {
    substitute("x ${missing} y", b);
    FAIL("expected unbound marker");
  } catch (const UnboundMarker& e) {
    CHECK(e.name == "missing");
    CHECK(e.position == 2);
  }
}

TEST_CASE("substitute is total over generated bindings for the plan's own tasks") {
  PlanAst ast = parse_plan(kAnglePlan);
  auto jobs = generate_jobs(ast);
  for (const auto& task : ast.tasks)
    for (const auto& cmd : task.commands)
      for (const auto& arg : cmd.args)
        for (const auto& b : {jobs.front(), jobs.back()})
          CHECK_NOTHROW(substitute(arg, b));
}

TEST_CASE("parse-unparse-parse is a fixpoint on the AST") {
  for (const char* text : {kAnglePlan, kScreeningPlan}) {
    PlanAst once = parse_plan(text);
    PlanAst twice = parse_plan(unparse(once));
    CHECK(once == twice);
  }
}
