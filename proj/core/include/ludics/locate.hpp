#pragma once

#include "ludics/action.hpp"
#include "ludics/design.hpp"

namespace ludics {

// Tree-of-located-actions form of a cut-free design (read bottom-up).
struct LocNode {
  LocAction act;
  int parent = -1;
  std::vector<int> children;
};

struct LocForest {
  std::vector<LocNode> nodes;
  std::vector<int> roots;

  // Root-to-node action chain.
  AjSeq chain(int node) const;
};

// Deterministic tree representation; root negative actions get `root_address`
// (x0 by default), fresh addresses z0, z1, ... are assigned depth-first.
LocForest locate(const DesignPtr& d, const Var& root_address = kX0);

// All root-to-node chains (the views of the design), the empty view included.
std::vector<AjSeq> views_of_design(const LocForest& f);

bool is_path_of(const AjSeq& s, const DesignPtr& d);

// Matches the actions of s onto forest nodes (modulo renaming of addresses),
// verifying that every prefix view is a branch; nullopt when s does not
// embed. Distinct sum branches may reuse an address, so matching backtracks.
std::optional<std::vector<int>> embed_path(const AjSeq& s, const LocForest& f);

// All paths of a cut-free design with length <= max_len, canonicalized.
PathSet paths_of(const DesignPtr& d, size_t max_len);

// Brute-force oracle: filters all interleavings of tree actions by is_path_of.
PathSet paths_of_bruteforce(const DesignPtr& d, size_t max_len);

}  // namespace ludics
