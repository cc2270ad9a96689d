#pragma once

#include <string_view>

#include "collatz/nat.hpp"

namespace collatz {

/// Which map drives a trajectory. `Star` differs from `Standard` only at 1,
/// which it fixes instead of sending to 4.
enum class MapVariant { Standard, Star };

std::string_view to_string(MapVariant v);
/// Accepts "standard" or "star"; throws std::invalid_argument otherwise.
MapVariant parse_variant(std::string_view text);

/// x/2 for even x, 3x+1 for odd x. Throws DomainError for 0.
Nat col(const Nat& x);

/// Same as `col` except that 1 maps to itself.
Nat col_star(const Nat& x);

/// One application of the selected map.
Nat apply_map(const Nat& x, MapVariant variant);

}  // namespace collatz
