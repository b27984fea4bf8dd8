#include "softsched/io.hpp"

#include <algorithm>
#include <initializer_list>
#include <limits>

#include "json.hpp"

namespace softsched {

using Json = nlohmann::ordered_json;

namespace {

std::string child(const std::string& path, std::string_view key) { return path + "/" + std::string(key); }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

[[noreturn]] void schema(const std::string& where, const std::string& message) {
  throw InstanceError(ErrorCode::kSchema, where.empty() ? "/" : where, message);
}

void require_object(const Json& j, const std::string& path, std::initializer_list<std::string_view> required,
                    std::initializer_list<std::string_view> optional = {}) {
  if (!j.is_object()) schema(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    const bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                       std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) schema(child(path, key), "unknown field '" + key + "'");
  }
  for (const auto key : required)
    if (!j.contains(std::string(key))) schema(child(path, key), "missing field");
}

const Json& array_at(const Json& j, std::string_view key, const std::string& path) {
  const auto& a = j.at(std::string(key));
  if (!a.is_array()) schema(child(path, key), "expected an array");
  return a;
}

std::int64_t integer(const Json& j, const std::string& path, std::int64_t lo = std::numeric_limits<std::int64_t>::min(),
                     std::int64_t hi = std::numeric_limits<std::int64_t>::max()) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(hi))
    throw InstanceError(ErrorCode::kInvalidValue, path, "value out of range");
  const auto v = j.get<std::int64_t>();
  if (v < lo || v > hi) throw InstanceError(ErrorCode::kInvalidValue, path, "value out of range");
  return v;
}

std::uint64_t natural(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  if (!j.is_number_unsigned()) throw InstanceError(ErrorCode::kInvalidValue, path, "expected a value >= 0");
  return j.get<std::uint64_t>();
}

std::vector<std::uint64_t> naturals(const Json& j, std::string_view key, const std::string& path) {
  const auto& a = array_at(j, key, path);
  std::vector<std::uint64_t> out;
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(natural(a[k], child(child(path, key), k)));
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const auto end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InstanceError(ErrorCode::kSyntax, "line " + std::to_string(line) + ", column " + std::to_string(column),
                        e.what());
  }
}

void check_format(const Json& j) {
  const auto v = integer(j.at("format"), "/format");
  if (v != kFormatVersion) throw InstanceError(ErrorCode::kInvalidValue, "/format", "unsupported format version");
}

constexpr std::int64_t kMaxSlot = std::numeric_limits<TimeSlot>::max();
constexpr std::int64_t kMaxInt = std::numeric_limits<int>::max();

}  // namespace

Instance parse_instance(std::string_view text) {
  const Json root = parse_json(text);
  require_object(root, "", {"format", "horizon", "activities", "soft_disjunctive", "resources"});
  check_format(root);
  const auto horizon = static_cast<TimeSlot>(integer(root.at("horizon"), "/horizon", 1, kMaxSlot));

  std::vector<ActivitySpec> activities;
  const auto& acts = array_at(root, "activities", "");
  for (std::size_t k = 0; k < acts.size(); ++k) {
    const auto path = child("/activities", k);
    const auto& a = acts[k];
    require_object(a, path, {"id", "duration", "enrollment", "domain"});
    ActivitySpec spec;
    spec.id = static_cast<ActivityId>(integer(a.at("id"), child(path, "id"), 0, kMaxSlot));
    spec.duration = static_cast<int>(integer(a.at("duration"), child(path, "duration"), 1, kMaxInt));
    spec.enrollment = natural(a.at("enrollment"), child(path, "enrollment"));
    const auto& dom = array_at(a, "domain", path);
    for (std::size_t v = 0; v < dom.size(); ++v) {
      const auto vpath = child(child(path, "domain"), v);
      if (!dom[v].is_array() || dom[v].size() != 2) schema(vpath, "expected [slot, initial_cost]");
      spec.domain.push_back({static_cast<TimeSlot>(integer(dom[v][0], child(vpath, 0), 0, kMaxSlot)),
                             natural(dom[v][1], child(vpath, 1))});
    }
    activities.push_back(std::move(spec));
  }

  std::vector<SoftPair> pairs;
  const auto& soft = array_at(root, "soft_disjunctive", "");
  for (std::size_t k = 0; k < soft.size(); ++k) {
    const auto path = child("/soft_disjunctive", k);
    const auto& p = soft[k];
    require_object(p, path, {"a", "b", "weight"});
    pairs.push_back({static_cast<ActivityId>(integer(p.at("a"), child(path, "a"), 0, kMaxSlot)),
                     static_cast<ActivityId>(integer(p.at("b"), child(path, "b"), 0, kMaxSlot)),
                     natural(p.at("weight"), child(path, "weight"))});
  }

  std::vector<Resource> resources;
  const auto& res = array_at(root, "resources", "");
  for (std::size_t k = 0; k < res.size(); ++k) {
    const auto path = child("/resources", k);
    const auto& r = res[k];
    require_object(r, path, {"name", "members", "t_min", "t_max", "cap_min", "cap_max", "cap_exp"});
    Resource out;
    if (!r.at("name").is_string()) schema(child(path, "name"), "expected a string");
    out.name = r.at("name").get<std::string>();
    const auto& members = array_at(r, "members", path);
    for (std::size_t m = 0; m < members.size(); ++m) {
      const auto mpath = child(child(path, "members"), m);
      if (members[m].is_object()) {
        require_object(members[m], mpath, {"id", "demand"});
        out.members.push_back({static_cast<ActivityId>(integer(members[m].at("id"), child(mpath, "id"), 0, kMaxSlot)),
                               static_cast<int>(integer(members[m].at("demand"), child(mpath, "demand"), 1, kMaxInt))});
      } else {
        out.members.push_back({static_cast<ActivityId>(integer(members[m], mpath, 0, kMaxSlot)), 1});
      }
    }
    out.t_min = static_cast<TimeSlot>(integer(r.at("t_min"), child(path, "t_min"), 0, kMaxSlot));
    out.t_max = static_cast<TimeSlot>(integer(r.at("t_max"), child(path, "t_max"), 0, kMaxSlot));
    out.cap_min = naturals(r, "cap_min", path);
    out.cap_max = naturals(r, "cap_max", path);
    out.cap_exp = naturals(r, "cap_exp", path);
    resources.push_back(std::move(out));
  }
  return Instance(horizon, std::move(activities), std::move(pairs), std::move(resources));
}

std::string serialize_instance(const Instance& instance) {
  Json root;
  root["format"] = kFormatVersion;
  root["horizon"] = instance.horizon();
  Json acts = Json::array();
  for (const auto& a : instance.activities()) {
    Json dom = Json::array();
    for (const auto& e : a.domain) dom.push_back(Json::array({e.slot, e.cost}));
    acts.push_back({{"id", a.id}, {"duration", a.duration}, {"enrollment", a.enrollment}, {"domain", std::move(dom)}});
  }
  root["activities"] = std::move(acts);
  Json soft = Json::array();
  for (const auto& p : instance.pairs()) soft.push_back({{"a", p.a}, {"b", p.b}, {"weight", p.weight}});
  root["soft_disjunctive"] = std::move(soft);
  Json res = Json::array();
  for (const auto& r : instance.resources()) {
    Json members = Json::array();
    for (const auto& m : r.members) {
      if (m.demand == 1)
        members.push_back(m.activity);
      else
        members.push_back({{"id", m.activity}, {"demand", m.demand}});
    }
    res.push_back({{"name", r.name},
                   {"members", std::move(members)},
                   {"t_min", r.t_min},
                   {"t_max", r.t_max},
                   {"cap_min", r.cap_min},
                   {"cap_max", r.cap_max},
                   {"cap_exp", r.cap_exp}});
  }
  root["resources"] = std::move(res);
  return root.dump() + "\n";
}

std::string serialize_solution(const SolutionFile& solution, bool include_elapsed) {
  Json root;
  root["format"] = kFormatVersion;
  root["status"] = solution.status;
  root["optimal"] = solution.optimal;
  root["cost"] = solution.cost;
  Json assignment = Json::array();
  for (std::size_t i = 0; i < solution.assignment.size(); ++i)
    assignment.push_back({{"id", i}, {"start", solution.assignment[i]}});
  root["assignment"] = std::move(assignment);
  if (solution.breakdown) {
    const auto& b = *solution.breakdown;
    Json jb;
    jb["initial_cost_sum"] = b.initial_cost_sum;
    jb["violation_sum"] = b.violation_sum;
    jb["per_activity_u"] = b.per_activity_u;
    if (b.fuzzy) {
      jb["fuzzy"] = to_double(*b.fuzzy);
      jb["fuzzy_exact"] = to_string(*b.fuzzy);
    } else {
      jb["fuzzy"] = nullptr;
      jb["fuzzy_exact"] = nullptr;
    }
    jb["violated_pct_enrollment"] = b.violated_pct_enrollment;
    jb["violated_pct_initial"] = b.violated_pct_initial;
    root["breakdown"] = std::move(jb);
  } else {
    root["breakdown"] = nullptr;
  }
  Json stats;
  stats["nodes"] = solution.stats.nodes;
  stats["leaves"] = solution.stats.leaves;
  stats["incumbents"] = solution.stats.incumbents;
  if (include_elapsed) stats["elapsed"] = solution.stats.elapsed_seconds;
  root["stats"] = std::move(stats);
  return root.dump(2) + "\n";
}

namespace {

Rational parse_rational(const std::string& s, const std::string& where) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw InstanceError(ErrorCode::kInvalidValue, where, "bad rational '" + s + "'");
  }
}

}  // namespace

SolutionFile parse_solution(std::string_view text) {
  const Json root = parse_json(text);
  require_object(root, "", {"format", "status", "optimal", "cost", "assignment", "breakdown", "stats"});
  check_format(root);
  SolutionFile f;
  if (!root.at("status").is_string()) schema("/status", "expected a string");
  f.status = root.at("status").get<std::string>();
  if (!root.at("optimal").is_boolean()) schema("/optimal", "expected a boolean");
  f.optimal = root.at("optimal").get<bool>();
  f.cost = natural(root.at("cost"), "/cost");
  const auto& assignment = array_at(root, "assignment", "");
  for (std::size_t k = 0; k < assignment.size(); ++k) {
    const auto path = child("/assignment", k);
    require_object(assignment[k], path, {"id", "start"});
    const auto id = integer(assignment[k].at("id"), child(path, "id"), 0, kMaxSlot);
    if (static_cast<std::size_t>(id) != k) throw InstanceError(ErrorCode::kSchema, path, "ids must be listed in order");
    f.assignment.push_back(static_cast<TimeSlot>(integer(assignment[k].at("start"), child(path, "start"), 0, kMaxSlot)));
  }
  const auto& jb = root.at("breakdown");
  if (!jb.is_null()) {
    require_object(jb, "/breakdown",
                   {"initial_cost_sum", "violation_sum", "per_activity_u", "fuzzy", "fuzzy_exact",
                    "violated_pct_enrollment", "violated_pct_initial"});
    Breakdown b;
    b.initial_cost_sum = natural(jb.at("initial_cost_sum"), "/breakdown/initial_cost_sum");
    b.violation_sum = natural(jb.at("violation_sum"), "/breakdown/violation_sum");
    b.per_activity_u = naturals(jb, "per_activity_u", "/breakdown");
    if (!jb.at("fuzzy_exact").is_null()) {
      if (!jb.at("fuzzy_exact").is_string()) schema("/breakdown/fuzzy_exact", "expected a string");
      b.fuzzy = parse_rational(jb.at("fuzzy_exact").get<std::string>(), "/breakdown/fuzzy_exact");
    }
    for (const char* key : {"violated_pct_enrollment", "violated_pct_initial"})
      if (!jb.at(key).is_number()) schema(child("/breakdown", key), "expected a number");
    b.violated_pct_enrollment = jb.at("violated_pct_enrollment").get<double>();
    b.violated_pct_initial = jb.at("violated_pct_initial").get<double>();
    f.breakdown = std::move(b);
  }
  const auto& js = root.at("stats");
  require_object(js, "/stats", {"nodes", "leaves", "incumbents"}, {"elapsed"});
  f.stats.nodes = natural(js.at("nodes"), "/stats/nodes");
  f.stats.leaves = natural(js.at("leaves"), "/stats/leaves");
  f.stats.incumbents = natural(js.at("incumbents"), "/stats/incumbents");
  if (js.contains("elapsed")) {
    if (!js.at("elapsed").is_number()) schema("/stats/elapsed", "expected a number");
    f.stats.elapsed_seconds = js.at("elapsed").get<double>();
  }
  return f;
}

std::string incumbent_record(const Incumbent& incumbent) {
  Json j;
  j["cost"] = incumbent.cost;
  j["elapsed"] = incumbent.elapsed_seconds;
  j["nodes"] = incumbent.nodes;
  return j.dump();
}

}  // namespace softsched
