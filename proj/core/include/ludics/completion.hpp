#pragma once

#include "ludics/action.hpp"
#include "ludics/design.hpp"

namespace ludics {

// The design maximal for the observational ordering admitting s as a path:
// skeleton of s where every name-branch not taken by s maps to Daimon and
// every unexplored argument slot is the full sum of Daimon bodies.
DesignPtr completion(const AjSeq& s, const Signature& sig);

// The bare skeleton of s: unexplored positions stay Omega.
DesignPtr skeleton(const AjSeq& s, const Signature& sig);

}  // namespace ludics
