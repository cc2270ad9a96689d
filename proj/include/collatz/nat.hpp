#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace collatz {

__extension__ using u128 = unsigned __int128;
using BigInt = boost::multiprecision::cpp_int;

/// Raised when an operation receives a value outside its domain
/// (zero as a trajectory start, a zero modulus, an out-of-range residue).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Nonnegative integer of unbounded magnitude.
///
/// Values live in an unsigned 128-bit word while they fit. Any operation
/// that would overflow escalates to an arbitrary-precision representation,
/// and results that fit again are demoted back. A value created with
/// `Nat::unbounded` is pinned to the arbitrary-precision representation and
/// so is everything computed from it; this exists so the two code paths can
/// be compared against each other.
class Nat {
 public:
  constexpr Nat() noexcept = default;
  constexpr Nat(std::uint64_t v) noexcept : small_(v) {}  // NOLINT(google-explicit-constructor)

  Nat(const Nat& other);
  Nat(Nat&&) noexcept = default;
  Nat& operator=(const Nat& other);
  Nat& operator=(Nat&&) noexcept = default;
  ~Nat() = default;

  static Nat from_u128(u128 v) noexcept;
  static Nat from_big(const BigInt& v);
  /// Parses a nonempty string of decimal digits.
  static Nat parse(std::string_view decimal);
  /// Copy of `v` pinned to the arbitrary-precision representation.
  static Nat unbounded(const Nat& v);

  [[nodiscard]] bool is_unbounded() const noexcept { return big_ != nullptr; }
  [[nodiscard]] bool is_pinned() const noexcept { return pinned_; }
  [[nodiscard]] bool is_zero() const noexcept;
  [[nodiscard]] bool is_one() const noexcept;
  [[nodiscard]] bool is_even() const noexcept;

  [[nodiscard]] std::optional<u128> to_u128() const;
  [[nodiscard]] std::optional<std::uint64_t> to_u64() const;
  [[nodiscard]] BigInt to_big() const;

  /// Remainder modulo a nonzero machine word.
  [[nodiscard]] std::uint64_t mod(std::uint64_t m) const;

  [[nodiscard]] Nat half() const;
  [[nodiscard]] Nat triple_plus_one() const;

  Nat operator+(std::uint64_t rhs) const;
  /// Throws std::underflow_error when rhs exceeds the value.
  Nat operator-(std::uint64_t rhs) const;
  Nat operator*(std::uint64_t rhs) const;
  /// Truncating division by a nonzero machine word.
  Nat operator/(std::uint64_t rhs) const;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Nat& a, const Nat& b);
  friend std::strong_ordering operator<=>(const Nat& a, const Nat& b);

 private:
  static Nat normalized(BigInt v, bool pinned);

  u128 small_ = 0;
  // Non-null iff the value is held in arbitrary precision.
  std::unique_ptr<BigInt> big_;
  bool pinned_ = false;
};

std::ostream& operator<<(std::ostream& os, const Nat& n);

/// Decimal rendering of an unsigned 128-bit word.
std::string u128_to_string(u128 v);

}  // namespace collatz
