#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bap/sets.hpp"
#include "bap/vec.hpp"

namespace bap {

// Raised for malformed or inconsistent problem data (parse errors, invalid
// sets, infeasible known solutions, missing fields).
struct problem_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One constraint C_i = A_i x B_i of the product-space formulation.
struct ProductConstraint {
  SetSpec a_side;
  SetSpec b_side;
  bool operator==(const ProductConstraint&) const = default;
};

inline bool operator==(const Pair& a, const Pair& b) {
  return a.x == b.x && a.y == b.y;
}

struct Problem {
  std::size_t dimension = 0;
  std::vector<ProductConstraint> constraints;
  std::optional<Pair> known_solution;

  std::size_t m() const { return constraints.size(); }
  const SetSpec& A(std::size_t i) const { return constraints[i].a_side; }
  const SetSpec& B(std::size_t i) const { return constraints[i].b_side; }

  bool operator==(const Problem&) const = default;
};

// 0-based cyclic access: element i of an m-list, wrapping around.
inline std::size_t cyclic_index(std::size_t i, std::size_t m) { return i % m; }

// Throws problem_error on violation: m >= 1, all sets valid and of the
// problem dimension, known_solution (if any) feasible to 1e-9 per side.
void validate_problem(const Problem& p);

// JSON: { "dimension": n, "A": [setspec...], "B": [setspec...],
//         "known_solution": {"x": [...], "y": [...]} }  (last field optional)
// setspec: {"type":"halfspace","normal":[...],"offset":r}
//        | {"type":"box","lower":[...],"upper":[...]}   (null = unbounded)
//        | {"type":"ball","center":[...],"radius":r}
//        | {"type":"paired","first":<halfspace>,"second":<halfspace>}
// Unequal A/B lengths are padded with unbounded boxes.
Problem parse_problem(const std::string& json_text);
std::string serialize_problem(const Problem& p);
Problem load_problem(const std::string& path);

// n=2, m=4 halfspace systems with known solution ((-6,-5),(4,5)).
Problem builtin_toy();
// m=n; A_i = {x_i >= 5}, B_i = {x_i <= -5}; solution ((5,...),(-5,...)).
Problem builtin_boxes(std::size_t n);

// Merge halfspace constraints i,j into PairedHalfspaces on both sides.
// Pairs come first in their given order, unpaired constraints follow in
// original order. Throws std::invalid_argument on bad indices or non-halfspace
// targets.
Problem apply_pairing(const Problem& p,
                      const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

}  // namespace bap
