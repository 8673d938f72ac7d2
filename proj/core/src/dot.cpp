#include "ludics/dot.hpp"

#include <sstream>

namespace ludics {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string forest_to_dot(const LocForest& f, const AjSeq* highlight) {
  std::ostringstream out;
  out << "digraph design {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=plaintext, fontname=\"monospace\"];\n";
  out << "  edge [dir=none];\n";

  // Map highlighted actions to their visit order.
  std::map<std::string, int> order;
  if (highlight) {
    int daimon_seen = 0;
    for (size_t i = 0; i < highlight->size(); ++i) {
      const LocAction& a = (*highlight)[i];
      std::string key = a.proper() ? render_action(a) : "#" + std::to_string(daimon_seen++);
      order.emplace(key, (int)i + 1);
    }
  }

  int daimon_index = 0;
  for (size_t i = 0; i < f.nodes.size(); ++i) {
    const LocAction& a = f.nodes[i].act;
    std::string label = render_action(a);
    std::string key = a.proper() ? label : "#" + std::to_string(daimon_index++);
    out << "  n" << i << " [label=\"" << escape(label);
    auto it = order.find(key);
    if (it != order.end()) {
      out << " (" << it->second << ")\", fontcolor=red";
    } else {
      out << "\"";
    }
    out << "];\n";
  }
  for (size_t i = 0; i < f.nodes.size(); ++i) {
    if (f.nodes[i].parent >= 0) out << "  n" << i << " -> n" << f.nodes[i].parent << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string design_to_dot(const DesignPtr& d, const AjSeq* highlight) {
  LocForest f = locate(d);
  return forest_to_dot(f, highlight);
}

}  // namespace ludics
