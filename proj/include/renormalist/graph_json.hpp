#pragma once

#include <fstream>

#include "json.hpp"
#include "renormalist/graph_power.hpp"

namespace renormalist {

inline LabelledGraph graph_from_json(const nlohmann::json& j) {
  LabelledGraph g;
  g.vertex_count = j.at("vertices").get<int>();
  g.s_norm = Rational::parse(j.at("s_norm").get<std::string>());
  if (j.contains("vstar"))
    for (const auto& v : j.at("vstar")) g.vstar.push_back(v.get<int>());
  for (const auto& je : j.at("edges")) {
    LabelledGraph::Edge e;
    e.from = je.at("from").get<int>();
    e.to = je.at("to").get<int>();
    e.a = Rational::parse(je.at("a").get<std::string>());
    e.r = je.value("r", 0);
    g.edges.push_back(e);
  }
  return g;
}

inline LabelledGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph: " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  return graph_from_json(j);
}

}  // namespace renormalist
