#pragma once

#include <memory>

#include "ludics/design.hpp"

namespace ludics {

// Data patterns: X | a | A (+) B | A (*) B | mu X. A
struct DataPattern;
using PatternPtr = std::shared_ptr<const DataPattern>;

struct PVar { Var name; };
struct PName { Name name; };
struct PPlus { PatternPtr left, right; };
struct PTensor { PatternPtr left, right; };
struct PMu { Var var; PatternPtr body; };

struct DataPattern {
  std::variant<PVar, PName, PPlus, PTensor, PMu> node;
};

PatternPtr pvar(Var name);
PatternPtr pname(const Name& name);  // rejects reserved names
PatternPtr pplus(PatternPtr l, PatternPtr r);
PatternPtr ptensor(PatternPtr l, PatternPtr r);
PatternPtr pmu(Var var, PatternPtr body);

std::set<Var> pattern_free_vars(const PatternPtr& p);
std::string render_pattern(const PatternPtr& p);

// Grammar: pat ::= NAME | VAR | pat "(+)" pat | pat "(*)" pat | "mu" VAR "." pat
// Variables are single uppercase-initial identifiers; names lowercase.
PatternPtr parse_pattern(const std::string& text);

bool pattern_mu_free(const PatternPtr& p);

// Syntactic sufficient condition for steadiness.
bool is_steady(const PatternPtr& p);

}  // namespace ludics
