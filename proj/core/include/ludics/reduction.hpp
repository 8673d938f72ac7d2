#pragma once

#include <functional>
#include <optional>

#include "ludics/design.hpp"

namespace ludics {

inline constexpr long kDefaultFuel = 10000;

enum class NormStatus { Converged, DivergedOmega, FuelExhausted };

struct NormalizeOutcome {
  DesignPtr result;
  NormStatus status;
  long steps = 0;
};

// One head-cut reduction step; nullopt when the design has no head cut.
std::optional<DesignPtr> step(const DesignPtr& p);

// Big-step normal form, with optional per-step tracing of the head redex.
NormalizeOutcome normalize(const DesignPtr& d, long fuel = kDefaultFuel,
                           const std::function<void(const DesignPtr&)>& trace = {});

// p atomic positive, n atomic negative; true iff p[n/x0] normalizes to Daimon.
bool is_orthogonal(const DesignPtr& p, const DesignPtr& n, long fuel = kDefaultFuel);

}  // namespace ludics
