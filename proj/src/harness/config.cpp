#include "harness/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace gridecon {

ResourceCharacteristics ResourceSpecConfig::characteristics() const {
  auto rc = make_characteristics(machines, pes, mips, policy, price, timezone);
  return rc;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& v, int line, const std::string& key) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": " + key +
                      ": expected a number, got '" + v + "'");
  }
}

long parse_integer(const std::string& v, int line, const std::string& key) {
  long out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw ConfigError("line " + std::to_string(line) + ": " + key +
                      ": expected an integer, got '" + v + "'");
  return out;
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError("line " + std::to_string(line) + ": " + key +
                    ": expected true/false, got '" + v + "'");
}

// A grid value: "from:to:step", a comma list, or a single number.
std::vector<double> parse_grid(const std::string& v, int line, const std::string& key) {
  std::vector<double> out;
  if (v.find(':') != std::string::npos) {
    std::istringstream is(v);
    std::string a, b, c;
    std::getline(is, a, ':');
    std::getline(is, b, ':');
    std::getline(is, c);
    double from = parse_number(trim(a), line, key);
    double to = parse_number(trim(b), line, key);
    double step = parse_number(trim(c), line, key);
    if (step <= 0.0)
      throw ConfigError("line " + std::to_string(line) + ": " + key +
                        ": grid step must be positive");
    for (double x = from; x <= to + 1e-9 * step; x += step) out.push_back(x);
    return out;
  }
  std::istringstream is(v);
  std::string item;
  while (std::getline(is, item, ',')) out.push_back(parse_number(trim(item), line, key));
  return out;
}

Strategy parse_strategy(const std::string& v, int line) {
  if (v == "cost") return Strategy::Cost;
  if (v == "time") return Strategy::Time;
  if (v == "cost-time") return Strategy::CostTime;
  if (v == "conservative-time") return Strategy::ConservativeTime;
  throw ConfigError("line " + std::to_string(line) +
                    ": strategy: unknown strategy '" + v + "'");
}

}  // namespace

SweepConfig parse_config(const std::string& text) {
  SweepConfig cfg;
  cfg.seeds.clear();
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  std::string section;
  ResourceSpecConfig* res = nullptr;

  while (std::getline(is, raw)) {
    ++line;
    std::string s = raw;
    if (auto pos = s.find('#'); pos != std::string::npos) s = s.substr(0, pos);
    s = trim(s);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']')
        throw ConfigError("line " + std::to_string(line) + ": malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section == "resource") {
        cfg.resources.emplace_back();
        res = &cfg.resources.back();
      } else if (section != "application" && section != "sweep") {
        throw ConfigError("line " + std::to_string(line) + ": unknown section [" +
                          section + "]");
      }
      continue;
    }

    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    const std::string where = "[" + section + "]." + key;

    if (section == "resource") {
      if (res == nullptr)
        throw ConfigError("line " + std::to_string(line) + ": key outside a section");
      if (key == "name") res->name = value;
      else if (key == "machines") res->machines = static_cast<int>(parse_integer(value, line, where));
      else if (key == "pes") res->pes = static_cast<int>(parse_integer(value, line, where));
      else if (key == "mips") res->mips = parse_number(value, line, where);
      else if (key == "price") res->price = parse_number(value, line, where);
      else if (key == "policy") {
        if (value == "time-shared") res->policy = AllocationPolicy::TimeShared;
        else if (value == "space-shared") res->policy = AllocationPolicy::SpaceShared;
        else
          throw ConfigError("line " + std::to_string(line) + ": " + where +
                            ": expected time-shared or space-shared");
      }
      else if (key == "timezone") res->timezone = parse_number(value, line, where);
      else if (key == "peak_load") res->peak_load = parse_number(value, line, where);
      else if (key == "offpeak_load") res->offpeak_load = parse_number(value, line, where);
      else if (key == "weekend_load") res->weekend_load = parse_number(value, line, where);
      else
        throw ConfigError("line " + std::to_string(line) + ": unknown key " + where);
    } else if (section == "application") {
      auto& app = cfg.application;
      if (key == "count") app.count = static_cast<int>(parse_integer(value, line, where));
      else if (key == "base_mi") app.base_mi = parse_number(value, line, where);
      else if (key == "variation") app.variation = parse_number(value, line, where);
      else if (key == "input_bytes") app.input_bytes = parse_number(value, line, where);
      else if (key == "output_bytes") app.output_bytes = parse_number(value, line, where);
      else if (key == "plan") app.plan_path = value;
      else if (key == "per_job_mi") app.per_job_mi = parse_number(value, line, where);
      else
        throw ConfigError("line " + std::to_string(line) + ": unknown key " + where);
    } else if (section == "sweep") {
      if (key == "strategy") cfg.strategy = parse_strategy(value, line);
      else if (key == "deadline") {
        cfg.deadlines = parse_grid(value, line, where);
        cfg.deadline_is_factor = false;
      } else if (key == "d_factor") {
        cfg.deadlines = parse_grid(value, line, where);
        cfg.deadline_is_factor = true;
      } else if (key == "budget") {
        cfg.budgets = parse_grid(value, line, where);
        cfg.budget_is_factor = false;
      } else if (key == "b_factor") {
        cfg.budgets = parse_grid(value, line, where);
        cfg.budget_is_factor = true;
      } else if (key == "users") {
        cfg.users = static_cast<int>(parse_integer(value, line, where));
      } else if (key == "seeds") {
        cfg.seeds.clear();
        std::istringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ','))
          cfg.seeds.push_back(
              static_cast<std::uint64_t>(parse_integer(trim(item), line, where)));
      } else if (key == "network") {
        if (value == "none") {
          cfg.network_mode = NetworkMode::None;
        } else {
          cfg.network_mode = NetworkMode::Baud;
          cfg.baud_rate = parse_number(value, line, where);
        }
      } else if (key == "cancel_at_deadline") {
        cfg.cancel_at_deadline = parse_bool(value, line, where);
      } else if (key == "stagger") {
        cfg.stagger = parse_number(value, line, where);
      } else {
        throw ConfigError("line " + std::to_string(line) + ": unknown key " + where);
      }
    } else {
      throw ConfigError("line " + std::to_string(line) + ": key outside a section");
    }
  }

  if (cfg.seeds.empty()) cfg.seeds.push_back(1);
  cfg.validate();
  return cfg;
}

void SweepConfig::validate() const {
  if (resources.empty()) throw ConfigError("config: resources list is missing or empty");
  std::set<std::string> names;
  for (const auto& r : resources) {
    const std::string where = "[resource] '" + r.name + "'";
    if (r.name.empty()) throw ConfigError("config: resource without a name");
    if (!names.insert(r.name).second)
      throw ConfigError("config: duplicate resource name '" + r.name + "'");
    if (r.machines < 1 || r.pes < 1) throw ConfigError(where + ": needs >= 1 machine and PE");
    if (r.mips <= 0.0) throw ConfigError(where + ": mips must be positive");
    if (r.price < 0.0) throw ConfigError(where + ": price must be non-negative");
    for (double l : {r.peak_load, r.offpeak_load, r.weekend_load})
      if (l < 0.0 || l >= 1.0) throw ConfigError(where + ": loads must lie in [0,1)");
  }
  if (application.count < 1) throw ConfigError("config: [application].count must be >= 1");
  if (application.base_mi <= 0.0)
    throw ConfigError("config: [application].base_mi must be positive");
  if (application.variation < 0.0 || application.variation > 1.0)
    throw ConfigError("config: [application].variation must lie in [0,1]");
  if (deadlines.empty()) throw ConfigError("config: [sweep].deadline grid is empty");
  if (budgets.empty()) throw ConfigError("config: [sweep].budget grid is empty");
  if (users < 1) throw ConfigError("config: [sweep].users must be >= 1");
  if (seeds.empty()) throw ConfigError("config: [sweep].seeds is empty");
  if (stagger < 0.0) throw ConfigError("config: [sweep].stagger must be >= 0");
}

SweepConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

namespace {

std::string wwg_text(int r4_price) {
  struct Row {
    const char* name;
    int pes;
    int mips;
    int price;
    const char* policy;
  };
  // WWG testbed rows; R4's price distinguishes the two tables.
  const Row rows[] = {
      {"R0", 4, 515, 8, "time-shared"},   {"R1", 4, 377, 4, "time-shared"},
      {"R2", 4, 377, 3, "time-shared"},   {"R3", 2, 377, 3, "time-shared"},
      {"R4", 2, 380, 0, "time-shared"},   {"R5", 6, 410, 5, "time-shared"},
      {"R6", 16, 410, 5, "time-shared"},  {"R7", 16, 410, 4, "space-shared"},
      {"R8", 2, 380, 1, "time-shared"},   {"R9", 4, 410, 6, "time-shared"},
      {"R10", 8, 377, 3, "time-shared"},
  };
  std::ostringstream os;
  for (const auto& r : rows) {
    os << "[resource]\n";
    os << "name = " << r.name << "\n";
    os << "pes = " << r.pes << "\n";
    os << "mips = " << r.mips << "\n";
    os << "price = " << (std::string(r.name) == "R4" ? r4_price : r.price) << "\n";
    os << "policy = " << r.policy << "\n\n";
  }
  os << "[application]\n"
        "count = 200\n"
        "base_mi = 10000\n"
        "variation = 0.10\n\n"
        "[sweep]\n"
        "strategy = cost\n"
        "deadline = 100:3600:500\n"
        "budget = 5000:22000:1000\n"
        "users = 1\n"
        "seeds = 1,2,3,4,5\n"
        "network = none\n";
  return os.str();
}

std::string testqueues_text() {
  std::ostringstream os;
  for (int i = 0; i < 10; ++i) {
    os << "[resource]\n";
    os << "name = Q" << i << "\n";
    os << "pes = 1\n";
    os << "mips = 1\n";
    os << "price = " << (10 + 2 * i) << "\n";
    os << "policy = space-shared\n\n";
  }
  os << "[application]\n"
        "count = 100\n"
        "base_mi = 90\n"
        "variation = 0\n\n"
        "[sweep]\n"
        "strategy = cost\n"
        "deadline = 990,1980,2970\n"
        "budget = 126000,171000,252000\n"
        "users = 1\n"
        "seeds = 1\n"
        "network = none\n";
  return os.str();
}

}  // namespace

std::string preset_text(const std::string& name) {
  if (name == "wwg-table-6.2") return wwg_text(2);
  if (name == "wwg-table-6.3") return wwg_text(1);
  if (name == "testqueues-4.6") return testqueues_text();
  throw ConfigError("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"wwg-table-6.2", "wwg-table-6.3", "testqueues-4.6"};
}

}  // namespace gridecon
