#pragma once

#include <optional>

#include "ludics/action.hpp"

namespace ludics {

// Alternation-respecting interleavings of two paths of the same polarity.
// Positive paths must share their first action (up to address renaming);
// nullopt when the operation is undefined (polarity mismatch, differing
// first positive actions). Actions common to both sides are unified modulo
// renaming of addresses and consumed once.
std::optional<PathSet> shuffle(const AjSeq& s, const AjSeq& t, size_t max_len);

std::optional<PathSet> anti_shuffle(const AjSeq& s, const AjSeq& t, size_t max_len);

// Pointwise over sets, skipping undefined pairs; results canonicalized.
PathSet set_shuffle(const PathSet& S, const PathSet& T, size_t max_len);
PathSet set_anti_shuffle(const PathSet& S, const PathSet& T, size_t max_len);

// True when every defined pairwise shuffle of members stays inside `V`;
// `witness` (when given) receives the first offending path.
bool shuffle_stable(const PathSet& V, size_t max_len, AjSeq* witness = nullptr);
bool anti_shuffle_stable(const PathSet& V, size_t max_len, AjSeq* witness = nullptr);

}  // namespace ludics
