#include "collatz/map.hpp"

#include <stdexcept>
#include <string>

namespace collatz {

std::string_view to_string(MapVariant v) {
  return v == MapVariant::Star ? "star" : "standard";
}

MapVariant parse_variant(std::string_view text) {
  if (text == "standard") return MapVariant::Standard;
  if (text == "star") return MapVariant::Star;
  throw std::invalid_argument("unknown map variant '" + std::string(text) + "'");
}

Nat col(const Nat& x) {
  if (x.is_zero()) throw DomainError("the Collatz map is defined on positive integers only");
  return x.is_even() ? x.half() : x.triple_plus_one();
}

Nat col_star(const Nat& x) {
  if (x.is_one()) return x;
  return col(x);
}

Nat apply_map(const Nat& x, MapVariant variant) {
  return variant == MapVariant::Star ? col_star(x) : col(x);
}

}  // namespace collatz
