#pragma once

#include <string>

#include "ludics/locate.hpp"

namespace ludics {

// Graphviz rendering of a located forest, children drawn above parents.
// When a path is given, its actions are numbered and highlighted.
std::string forest_to_dot(const LocForest& f, const AjSeq* highlight = nullptr);

std::string design_to_dot(const DesignPtr& d, const AjSeq* highlight = nullptr);

}  // namespace ludics
