#include "edge3c/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace edge3c {

namespace {

using nlohmann::json;

json delay_to_json(double v) {
  if (v == kInf) return json("inf");
  return json(v);
}

double delay_from_json(const json& j, const char* field) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    throw std::runtime_error(std::string("bad delay bound string in ") + field);
  }
  return j.get<double>();
}

json bits_to_json(const std::vector<uint8_t>& v) {
  json arr = json::array();
  for (uint8_t b : v) arr.push_back(static_cast<int>(b));
  return arr;
}

std::vector<uint8_t> bits_from_json(const json& j) {
  std::vector<uint8_t> v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(static_cast<uint8_t>(e.get<int>()));
  return v;
}

const char* type_name(TaskType t) {
  switch (t) {
    case TaskType::downloading: return "downloading";
    case TaskType::content_sharing: return "content_sharing";
    case TaskType::data_analysis: return "data_analysis";
    default: return "none";
  }
}

TaskType type_from_name(const std::string& s) {
  if (s == "downloading") return TaskType::downloading;
  if (s == "content_sharing") return TaskType::content_sharing;
  if (s == "data_analysis") return TaskType::data_analysis;
  if (s == "none") return TaskType::none;
  throw std::runtime_error("unknown task type \"" + s + "\"");
}

template <typename T>
std::vector<T> ints_from_json(const json& j) {
  std::vector<T> v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(e.get<T>());
  return v;
}

} // namespace

std::string scenario_to_json(const Scenario& sc, int indent) {
  json doc;
  doc["contents"] = json::array();
  for (const Content& c : sc.contents)
    doc["contents"].push_back({{"id", c.id}, {"size", c.size}});

  doc["devices"] = json::array();
  for (const Device& d : sc.devices)
    doc["devices"].push_back({{"id", d.id},
                              {"own_tasks", d.own_tasks},
                              {"down_cap", d.down_cap},
                              {"cpu_cap", d.cpu_cap},
                              {"up_cap", d.up_cap},
                              {"cache", bits_to_json(d.cache)},
                              {"c_down", d.c_down},
                              {"c_cpu", d.c_cpu},
                              {"c_up", d.c_up}});

  doc["tasks"] = json::array();
  for (const Task& t : sc.tasks) {
    json jt = {{"id", t.id},
               {"owner", t.owner},
               {"input", bits_to_json(t.input)},
               {"cpu_demand", t.cpu_demand},
               {"upload", bits_to_json(t.upload)},
               {"cache_out", bits_to_json(t.cache_out)},
               {"delay_down", delay_to_json(t.delay_down)},
               {"delay_cpu", delay_to_json(t.delay_cpu)},
               {"delay_up", delay_to_json(t.delay_up)}};
    if (t.type != TaskType::none) jt["type"] = type_name(t.type);
    doc["tasks"].push_back(std::move(jt));
  }

  doc["edges"] = json::array();
  for (const Edge& e : sc.graph.edges)
    doc["edges"].push_back(
        {{"from", e.from}, {"to", e.to}, {"cap", e.cap}, {"cost", e.cost}});

  return doc.dump(indent);
}

Scenario scenario_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& ex) {
    throw std::runtime_error(std::string("scenario JSON parse error: ") + ex.what());
  }
  try {
    Scenario sc;
    for (const auto& j : doc.at("contents"))
      sc.contents.push_back({j.at("id").get<int>(), j.at("size").get<double>()});
    for (const auto& j : doc.at("devices")) {
      Device d;
      d.id = j.at("id").get<int>();
      d.own_tasks = ints_from_json<int>(j.at("own_tasks"));
      d.down_cap = j.at("down_cap").get<double>();
      d.cpu_cap = j.at("cpu_cap").get<double>();
      d.up_cap = j.at("up_cap").get<double>();
      d.cache = bits_from_json(j.at("cache"));
      d.c_down = j.at("c_down").get<double>();
      d.c_cpu = j.at("c_cpu").get<double>();
      d.c_up = j.at("c_up").get<double>();
      sc.devices.push_back(std::move(d));
    }
    for (const auto& j : doc.at("tasks")) {
      Task t;
      t.id = j.at("id").get<int>();
      t.owner = j.at("owner").get<int>();
      t.input = bits_from_json(j.at("input"));
      t.cpu_demand = j.at("cpu_demand").get<double>();
      t.upload = bits_from_json(j.at("upload"));
      t.cache_out = bits_from_json(j.at("cache_out"));
      t.delay_down = delay_from_json(j.at("delay_down"), "delay_down");
      t.delay_cpu = delay_from_json(j.at("delay_cpu"), "delay_cpu");
      t.delay_up = delay_from_json(j.at("delay_up"), "delay_up");
      if (j.contains("type")) t.type = type_from_name(j.at("type").get<std::string>());
      sc.tasks.push_back(std::move(t));
    }
    for (const auto& j : doc.at("edges"))
      sc.graph.edges.push_back({j.at("from").get<int>(), j.at("to").get<int>(),
                                j.at("cap").get<double>(), j.at("cost").get<double>()});
    return sc;
  } catch (const json::exception& ex) {
    throw std::runtime_error(std::string("scenario JSON shape error: ") + ex.what());
  }
}

std::string assignment_to_json(const Assignment& a, int indent) {
  json doc = {{"S", a.S}, {"K", a.K}, {"N", a.N}, {"E", a.E},
              {"x_in", a.x_in},   {"x_down", a.x_down}, {"x_up", a.x_up},
              {"x_cpu", a.x_cpu}, {"z_in", a.z_in},     {"z_up", a.z_up},
              {"z_ca", a.z_ca}};
  return doc.dump(indent);
}

Assignment assignment_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    Assignment a;
    a.S = doc.at("S").get<int>();
    a.K = doc.at("K").get<int>();
    a.N = doc.at("N").get<int>();
    a.E = doc.at("E").get<int>();
    a.x_in = bits_from_json(doc.at("x_in"));
    a.x_down = bits_from_json(doc.at("x_down"));
    a.x_up = bits_from_json(doc.at("x_up"));
    a.x_cpu = bits_from_json(doc.at("x_cpu"));
    a.z_in = ints_from_json<int32_t>(doc.at("z_in"));
    a.z_up = ints_from_json<int32_t>(doc.at("z_up"));
    a.z_ca = ints_from_json<int32_t>(doc.at("z_ca"));
    return a;
  } catch (const json::exception& ex) {
    throw std::runtime_error(std::string("assignment JSON error: ") + ex.what());
  }
}

void save_scenario(const Scenario& sc, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << scenario_to_json(sc) << '\n';
}

Scenario load_scenario(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return scenario_from_json(ss.str());
}

} // namespace edge3c
