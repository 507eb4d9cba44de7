#pragma once

// JSON serialization of scenarios and assignments. A scenario is a single
// document with arrays "contents", "devices", "tasks", "edges"; infinite
// delay bounds are encoded as the string "inf". parse(serialize(s)) == s.

#include <string>

#include "edge3c/model.hpp"

namespace edge3c {

std::string scenario_to_json(const Scenario& sc, int indent = 2);
// Throws std::runtime_error with a descriptive message on malformed input.
Scenario scenario_from_json(const std::string& text);

std::string assignment_to_json(const Assignment& a, int indent = 2);
Assignment assignment_from_json(const std::string& text);

// File helpers (throw std::runtime_error on I/O failure).
void save_scenario(const Scenario& sc, const std::string& path);
Scenario load_scenario(const std::string& path);

} // namespace edge3c
