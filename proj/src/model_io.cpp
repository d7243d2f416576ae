#include "pasim/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace pasim {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

ParseError::ParseError(const std::string& message, int line, int column, std::string path)
    : std::runtime_error(message), line_(line), column_(column), path_(std::move(path)) {}

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what, 0, 0, path);
}

/// Cursor over one JSON object that rejects keys outside the schema.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path, std::initializer_list<const char*> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) schema_error(path_, "expected an object");
    for (const auto& [key, value] : j_.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) schema_error(path_ + "." + key, "unknown key");
    }
  }

  bool has(const char* key) const { return j_.contains(key); }
  std::string child(const char* key) const { return path_ + "." + key; }

  const Json& at(const char* key) const {
    if (!j_.contains(key)) schema_error(child(key), "missing required key");
    return j_.at(key);
  }

  double number(const char* key) const {
    const Json& v = at(key);
    if (!v.is_number()) schema_error(child(key), "expected a number");
    return v.get<double>();
  }
  double number_or(const char* key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  int integer(const char* key) const {
    const Json& v = at(key);
    if (!v.is_number_integer()) schema_error(child(key), "expected an integer");
    return v.get<int>();
  }
  int integer_or(const char* key, int fallback) const { return has(key) ? integer(key) : fallback; }

  std::string string(const char* key) const {
    const Json& v = at(key);
    if (!v.is_string()) schema_error(child(key), "expected a string");
    return v.get<std::string>();
  }

  bool boolean_or(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    const Json& v = at(key);
    if (!v.is_boolean()) schema_error(child(key), "expected a boolean");
    return v.get<bool>();
  }

  const Json& array(const char* key) const {
    const Json& v = at(key);
    if (!v.is_array()) schema_error(child(key), "expected an array");
    return v;
  }

  std::vector<std::string> strings(const char* key) const {
    std::vector<std::string> out;
    const Json& v = array(key);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string()) schema_error(child(key) + "[" + std::to_string(i) + "]", "expected a string");
      out.push_back(v[i].get<std::string>());
    }
    return out;
  }

 private:
  const Json& j_;
  std::string path_;
};

std::string indexed(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

Law read_law(const ObjectReader& r, const char* key) {
  if (!r.has(key)) return Law::kExponential;
  const std::string s = r.string(key);
  if (s == "exponential") return Law::kExponential;
  if (s == "deterministic") return Law::kDeterministic;
  schema_error(r.child(key), "expected \"exponential\" or \"deterministic\"");
}

FailureModeSpec read_mode(const Json& j, const std::string& path) {
  ObjectReader r(j, path,
                 {"kind", "failure_rate", "repair_rate", "capacity_loss_before_repair",
                  "capacity_loss_during_repair", "failure_law", "repair_law"});
  FailureModeSpec m;
  const std::string kind = r.string("kind");
  if (kind == "degraded") {
    m.kind = ModeKind::kDegraded;
  } else if (kind == "critical") {
    m.kind = ModeKind::kCritical;
  } else {
    schema_error(r.child("kind"), "expected \"degraded\" or \"critical\"");
  }
  m.failure_rate = r.number("failure_rate");
  m.repair_rate = r.number("repair_rate");
  m.capacity_loss_before_repair = r.number_or("capacity_loss_before_repair", 1.0);
  m.capacity_loss_during_repair = r.number_or("capacity_loss_during_repair", 1.0);
  m.failure_law = read_law(r, "failure_law");
  m.repair_law = read_law(r, "repair_law");
  return m;
}

EquipmentSpec read_equipment(const Json& j, const std::string& path) {
  ObjectReader r(j, path,
                 {"id", "role", "standby_group", "demand_failure_prob", "modes", "crew",
                  "spare_pool", "out_of_service"});
  EquipmentSpec e;
  e.id = r.string("id");
  const std::string role = r.has("role") ? r.string("role") : "active";
  if (role == "active") {
    e.role = Role::kActive;
  } else if (role == "passive-standby") {
    e.role = Role::kPassiveStandby;
  } else {
    schema_error(r.child("role"), "expected \"active\" or \"passive-standby\"");
  }
  if (r.has("standby_group")) e.standby_group = r.string("standby_group");
  if (r.has("demand_failure_prob")) e.demand_failure_prob = r.number("demand_failure_prob");
  const Json& modes = r.array("modes");
  for (std::size_t i = 0; i < modes.size(); ++i) {
    e.modes.push_back(read_mode(modes[i], indexed(r.child("modes"), i)));
  }
  e.crew = r.string("crew");
  if (r.has("spare_pool")) e.spare_pool = r.string("spare_pool");
  e.out_of_service = r.boolean_or("out_of_service", false);
  return e;
}

std::vector<Stage> read_stages(const Json& j, const std::string& path);

Stage read_stage(const Json& j, const std::string& path) {
  if (j.is_string()) return Stage::single(j.get<std::string>());
  ObjectReader outer(j, path, {"parallel"});
  const std::string ppath = outer.child("parallel");
  ObjectReader r(outer.at("parallel"), ppath, {"required_active_branches", "branches"});
  ParallelBlock block;
  block.required_active_branches = r.integer("required_active_branches");
  const Json& branches = r.array("branches");
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const std::string bpath = indexed(r.child("branches"), i);
    ObjectReader br(branches[i], bpath, {"capacity", "stages"});
    Branch b;
    b.capacity = br.number("capacity");
    b.stages = read_stages(br.array("stages"), br.child("stages"));
    block.branches.push_back(std::move(b));
  }
  return Stage::parallel(std::move(block));
}

std::vector<Stage> read_stages(const Json& j, const std::string& path) {
  std::vector<Stage> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_stage(j[i], indexed(path, i)));
  return out;
}

template <typename T, typename Fn>
std::vector<T> read_list(const ObjectReader& r, const char* key, Fn fn) {
  std::vector<T> out;
  if (!r.has(key)) return out;
  const Json& arr = r.array(key);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(fn(arr[i], indexed(r.child(key), i)));
  return out;
}

Model from_json(const Json& j) {
  ObjectReader r(j, "$",
                 {"horizon_hours", "network", "equipment", "ccf_groups", "crews", "spare_pools",
                  "pm_tasks", "shutdowns", "subsystems"});
  Model m;
  m.horizon_hours = r.number("horizon_hours");
  {
    ObjectReader nr(r.at("network"), r.child("network"), {"stages"});
    m.network.stages = read_stages(nr.array("stages"), nr.child("stages"));
  }
  m.equipment = read_list<EquipmentSpec>(r, "equipment", read_equipment);
  m.ccf_groups = read_list<CcfGroup>(r, "ccf_groups", [](const Json& g, const std::string& p) {
    ObjectReader gr(g, p, {"id", "members", "beta", "mode_kind"});
    if (gr.has("mode_kind") && gr.string("mode_kind") != "critical") {
      schema_error(gr.child("mode_kind"), "common-cause groups apply to the critical mode only");
    }
    return CcfGroup{gr.string("id"), gr.strings("members"), gr.number("beta")};
  });
  m.crews = read_list<Crew>(r, "crews", [](const Json& c, const std::string& p) {
    ObjectReader cr(c, p, {"id", "size", "mobilization_hours"});
    return Crew{cr.string("id"), cr.integer_or("size", 1), cr.number_or("mobilization_hours", 0.0)};
  });
  m.spare_pools = read_list<SparePool>(r, "spare_pools", [](const Json& s, const std::string& p) {
    ObjectReader sr(s, p,
                    {"id", "initial_stock", "restock_to", "reorder_threshold", "lead_time_hours",
                     "policy", "interval_hours"});
    SparePool pool;
    pool.id = sr.string("id");
    pool.initial_stock = sr.integer("initial_stock");
    pool.restock_to = sr.integer("restock_to");
    pool.reorder_threshold = sr.integer("reorder_threshold");
    pool.lead_time_hours = sr.number("lead_time_hours");
    const std::string policy = sr.has("policy") ? sr.string("policy") : "on-demand";
    if (policy == "on-demand") {
      pool.policy = RestockPolicy::kOnDemand;
      if (sr.has("interval_hours")) {
        schema_error(sr.child("interval_hours"), "only valid with the periodic policy");
      }
    } else if (policy == "periodic") {
      pool.policy = RestockPolicy::kPeriodic;
      pool.interval_hours = sr.number("interval_hours");
    } else {
      schema_error(sr.child("policy"), "expected \"on-demand\" or \"periodic\"");
    }
    return pool;
  });
  m.pm_tasks = read_list<PmTask>(r, "pm_tasks", [](const Json& t, const std::string& p) {
    ObjectReader tr(t, p,
                    {"equipment", "interval_hours", "duration_hours", "capacity_loss",
                     "align_with_shutdown"});
    return PmTask{tr.string("equipment"), tr.number("interval_hours"), tr.number("duration_hours"),
                  tr.number_or("capacity_loss", 1.0), tr.boolean_or("align_with_shutdown", false)};
  });
  m.shutdowns = read_list<ShutdownSchedule>(r, "shutdowns", [](const Json& s, const std::string& p) {
    ObjectReader sr(s, p, {"interval_hours", "duration_hours", "capacity_loss"});
    return ShutdownSchedule{sr.number("interval_hours"), sr.number("duration_hours"),
                            sr.number_or("capacity_loss", 1.0)};
  });
  m.subsystems = read_list<Subsystem>(r, "subsystems", [](const Json& s, const std::string& p) {
    ObjectReader sr(s, p, {"name", "members"});
    return Subsystem{sr.string("name"), sr.strings("members")};
  });
  return m;
}

const char* law_name(Law law) {
  return law == Law::kExponential ? "exponential" : "deterministic";
}

OrderedJson stages_json(const std::vector<Stage>& stages) {
  OrderedJson out = OrderedJson::array();
  for (const auto& s : stages) {
    if (s.is_single()) {
      out.push_back(s.equipment_id());
      continue;
    }
    OrderedJson branches = OrderedJson::array();
    for (const auto& b : s.block().branches) {
      OrderedJson bj;
      bj["capacity"] = b.capacity;
      bj["stages"] = stages_json(b.stages);
      branches.push_back(std::move(bj));
    }
    OrderedJson block;
    block["required_active_branches"] = s.block().required_active_branches;
    block["branches"] = std::move(branches);
    OrderedJson wrapper;
    wrapper["parallel"] = std::move(block);
    out.push_back(std::move(wrapper));
  }
  return out;
}

OrderedJson to_json(const Model& m) {
  OrderedJson j;
  j["horizon_hours"] = m.horizon_hours;
  j["network"]["stages"] = stages_json(m.network.stages);

  OrderedJson equipment = OrderedJson::array();
  for (const auto& e : m.equipment) {
    OrderedJson ej;
    ej["id"] = e.id;
    ej["role"] = e.role == Role::kActive ? "active" : "passive-standby";
    if (e.standby_group) ej["standby_group"] = *e.standby_group;
    if (e.demand_failure_prob) ej["demand_failure_prob"] = *e.demand_failure_prob;
    OrderedJson modes = OrderedJson::array();
    for (const auto& md : e.modes) {
      OrderedJson mj;
      mj["kind"] = to_string(md.kind);
      mj["failure_rate"] = md.failure_rate;
      mj["repair_rate"] = md.repair_rate;
      mj["capacity_loss_before_repair"] = md.capacity_loss_before_repair;
      mj["capacity_loss_during_repair"] = md.capacity_loss_during_repair;
      if (md.failure_law != Law::kExponential) mj["failure_law"] = law_name(md.failure_law);
      if (md.repair_law != Law::kExponential) mj["repair_law"] = law_name(md.repair_law);
      modes.push_back(std::move(mj));
    }
    ej["modes"] = std::move(modes);
    ej["crew"] = e.crew;
    if (e.spare_pool) ej["spare_pool"] = *e.spare_pool;
    if (e.out_of_service) ej["out_of_service"] = true;
    equipment.push_back(std::move(ej));
  }
  j["equipment"] = std::move(equipment);

  j["ccf_groups"] = OrderedJson::array();
  for (const auto& g : m.ccf_groups) {
    OrderedJson gj;
    gj["id"] = g.id;
    gj["members"] = g.member_ids;
    gj["beta"] = g.beta;
    j["ccf_groups"].push_back(std::move(gj));
  }
  j["crews"] = OrderedJson::array();
  for (const auto& c : m.crews) {
    OrderedJson cj;
    cj["id"] = c.id;
    cj["size"] = c.size;
    cj["mobilization_hours"] = c.mobilization_hours;
    j["crews"].push_back(std::move(cj));
  }
  j["spare_pools"] = OrderedJson::array();
  for (const auto& p : m.spare_pools) {
    OrderedJson pj;
    pj["id"] = p.id;
    pj["initial_stock"] = p.initial_stock;
    pj["restock_to"] = p.restock_to;
    pj["reorder_threshold"] = p.reorder_threshold;
    pj["lead_time_hours"] = p.lead_time_hours;
    pj["policy"] = p.policy == RestockPolicy::kOnDemand ? "on-demand" : "periodic";
    if (p.policy == RestockPolicy::kPeriodic) pj["interval_hours"] = p.interval_hours;
    j["spare_pools"].push_back(std::move(pj));
  }
  j["pm_tasks"] = OrderedJson::array();
  for (const auto& t : m.pm_tasks) {
    OrderedJson tj;
    tj["equipment"] = t.equipment_id;
    tj["interval_hours"] = t.interval_hours;
    tj["duration_hours"] = t.duration_hours;
    tj["capacity_loss"] = t.capacity_loss;
    tj["align_with_shutdown"] = t.align_with_shutdown;
    j["pm_tasks"].push_back(std::move(tj));
  }
  j["shutdowns"] = OrderedJson::array();
  for (const auto& s : m.shutdowns) {
    OrderedJson sj;
    sj["interval_hours"] = s.interval_hours;
    sj["duration_hours"] = s.duration_hours;
    sj["capacity_loss"] = s.capacity_loss;
    j["shutdowns"].push_back(std::move(sj));
  }
  if (!m.subsystems.empty()) {
    j["subsystems"] = OrderedJson::array();
    for (const auto& s : m.subsystems) {
      OrderedJson sj;
      sj["name"] = s.name;
      sj["members"] = s.member_ids;
      j["subsystems"].push_back(std::move(sj));
    }
  }
  return j;
}

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

Model parse_model(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // nlohmann reports the byte index just past the offending character.
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, column] = line_column(text, at);
    throw ParseError("syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(column),
                     line, column, "");
  }
  try {
    return from_json(j);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("schema error: ") + e.what(), 0, 0, "$");
  }
}

Model load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str());
}

std::string serialize_model(const Model& model) { return to_json(model).dump(2) + "\n"; }

std::string model_digest(const Model& model) {
  const std::string text = to_json(model).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace pasim
