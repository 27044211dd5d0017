#include "codedswitch/json_io.hpp"

#include <fstream>
#include <sstream>

namespace codedswitch {

namespace {

ordered_json set_to_json(const MuSet& s) {
  ordered_json a = ordered_json::array();
  for (int m : s) a.push_back(m);
  return a;
}

MuSet set_from_json(const ordered_json& j) {
  if (!j.is_array()) throw SwitchError(ErrorCode::ParseError, "expected an array of MU indices");
  std::vector<int> v;
  v.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw SwitchError(ErrorCode::ParseError, "MU index must be an integer");
    v.push_back(x.get<int>());
  }
  return MuSet(std::move(v));
}

int get_int(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw SwitchError(ErrorCode::ParseError, std::string("missing integer field '") + key + "'");
  }
  return j.at(key).get<int>();
}

}  // namespace

ordered_json to_json(const Instance& inst) {
  ordered_json j;
  j["N"] = inst.N;
  j["k"] = inst.k;
  j["n"] = inst.n;
  j["placement"] = std::string(to_string(inst.placement));
  ordered_json packets = ordered_json::array();
  for (const auto& s : inst.packets) packets.push_back(set_to_json(s));
  j["packets"] = std::move(packets);
  return j;
}

Instance instance_from_json(const ordered_json& j) {
  Instance inst;
  inst.N = get_int(j, "N");
  inst.k = get_int(j, "k");
  inst.n = get_int(j, "n");
  inst.placement = j.contains("placement") ? placement_from_string(j.at("placement").get<std::string>())
                                           : PlacementTag::custom;
  if (!j.contains("packets") || !j.at("packets").is_array()) {
    throw SwitchError(ErrorCode::ParseError, "missing 'packets' array");
  }
  for (const auto& p : j.at("packets")) inst.packets.push_back(set_from_json(p));
  return inst;
}

ordered_json to_json(const Solution& sol, const Instance& inst) {
  ordered_json j;
  j["N"] = inst.N;
  j["k"] = inst.k;
  j["n"] = inst.n;
  ordered_json as = ordered_json::array();
  for (const auto& a : sol.assignments()) as.push_back(a ? set_to_json(*a) : ordered_json(nullptr));
  j["assignments"] = std::move(as);
  j["l_star"] = sol.l_star();
  j["rho"] = boost::rational_cast<double>(sol.rho());
  return j;
}

Solution solution_from_json(const ordered_json& j) {
  const int N = get_int(j, "N");
  const int k = get_int(j, "k");
  if (!j.contains("assignments") || !j.at("assignments").is_array()) {
    throw SwitchError(ErrorCode::ParseError, "missing 'assignments' array");
  }
  std::vector<std::optional<MuSet>> as;
  for (const auto& a : j.at("assignments")) {
    if (a.is_null()) {
      as.emplace_back(std::nullopt);
    } else {
      as.emplace_back(set_from_json(a));
    }
  }
  Solution derived(as, k, N);
  if (!j.contains("l_star") && !j.contains("rho")) return derived;

  const int l_star = j.contains("l_star") ? get_int(j, "l_star") : derived.l_star();
  Rational rho(static_cast<std::int64_t>(l_star) * k, N);
  if (j.contains("rho") && j.at("rho").get<double>() != boost::rational_cast<double>(rho)) {
    rho = Rational(-1);  // inconsistent with l_star; validate_solution reports RhoMismatch
  }
  return Solution::with_claims(std::move(as), l_star, rho);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

ordered_json read_json_file(const std::string& path) {
  try {
    return ordered_json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw SwitchError(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const ordered_json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace codedswitch
