#pragma once

#include <variant>

#include "bap/vec.hpp"

namespace bap {

// {w : <normal, w> <= offset}
struct Halfspace {
  Vec normal;
  double offset = 0.0;
  bool operator==(const Halfspace&) const = default;
};

// Componentwise [lower_j, upper_j]; -inf/+inf entries mean unbounded.
struct Box {
  Vec lower;
  Vec upper;
  bool operator==(const Box&) const = default;
};

struct Ball {
  Vec center;
  double radius = 1.0;
  bool operator==(const Ball&) const = default;
};

// Intersection of two halfspaces with a closed-form projector; counts as two
// unit operations wherever a plain set counts as one.
struct PairedHalfspaces {
  Halfspace first;
  Halfspace second;
  bool operator==(const PairedHalfspaces&) const = default;
};

using SetSpec = std::variant<Halfspace, Box, Ball, PairedHalfspaces>;

std::size_t set_dim(const SetSpec& s);
long long unit_cost(const SetSpec& s);

// Throws std::invalid_argument on malformed sets (zero normal, inverted box
// bounds, nonpositive ball radius, empty paired intersection, NaN data).
// A nonzero expected_dim additionally requires the set to live in that
// dimension.
void validate_set(const SetSpec& s, std::size_t expected_dim = 0);

Vec project(const SetSpec& s, const Vec& w);
double distance(const SetSpec& s, const Vec& w);

// All-unbounded box: projection is the identity. Used to pad unequal
// constraint lists.
Box whole_space(std::size_t n);
bool is_whole_space(const SetSpec& s);

}  // namespace bap
