#include "collatz/nat.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

namespace collatz {
namespace {

constexpr u128 kU128Max = ~static_cast<u128>(0);

BigInt big_from_u128(u128 v) {
  BigInt out = static_cast<std::uint64_t>(v >> 64);
  out <<= 64;
  out |= static_cast<std::uint64_t>(v);
  return out;
}

bool fits_u128(const BigInt& v) { return v.is_zero() || boost::multiprecision::msb(v) < 128; }

u128 big_to_u128(const BigInt& v) {
  const BigInt mask = (BigInt(1) << 64) - 1;
  const auto lo = static_cast<std::uint64_t>(v & mask);
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  return (static_cast<u128>(hi) << 64) | lo;
}

}  // namespace

Nat::Nat(const Nat& other)
    : small_(other.small_),
      big_(other.big_ ? std::make_unique<BigInt>(*other.big_) : nullptr),
      pinned_(other.pinned_) {}

Nat& Nat::operator=(const Nat& other) {
  if (this != &other) {
    small_ = other.small_;
    big_ = other.big_ ? std::make_unique<BigInt>(*other.big_) : nullptr;
    pinned_ = other.pinned_;
  }
  return *this;
}

Nat Nat::from_u128(u128 v) noexcept {
  Nat n;
  n.small_ = v;
  return n;
}

Nat Nat::from_big(const BigInt& v) {
  if (v < 0) throw DomainError("Nat cannot hold a negative value");
  return normalized(v, false);
}

Nat Nat::parse(std::string_view decimal) {
  if (decimal.empty() ||
      !std::all_of(decimal.begin(), decimal.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("not a decimal natural number: '" + std::string(decimal) + "'");
  }
  u128 acc = 0;
  for (std::size_t i = 0; i < decimal.size(); ++i) {
    const auto digit = static_cast<unsigned>(decimal[i] - '0');
    if (acc > (kU128Max - digit) / 10) {
      return normalized(BigInt(std::string(decimal)), false);
    }
    acc = acc * 10 + digit;
  }
  return from_u128(acc);
}

Nat Nat::unbounded(const Nat& v) {
  Nat n;
  n.big_ = std::make_unique<BigInt>(v.to_big());
  n.pinned_ = true;
  return n;
}

Nat Nat::normalized(BigInt v, bool pinned) {
  Nat n;
  if (!pinned && fits_u128(v)) {
    n.small_ = big_to_u128(v);
  } else {
    n.big_ = std::make_unique<BigInt>(std::move(v));
    n.pinned_ = pinned;
  }
  return n;
}

bool Nat::is_zero() const noexcept { return big_ ? big_->is_zero() : small_ == 0; }

bool Nat::is_one() const noexcept { return big_ ? *big_ == 1 : small_ == 1; }

bool Nat::is_even() const noexcept {
  return big_ ? !boost::multiprecision::bit_test(*big_, 0) : (small_ & 1) == 0;
}

std::optional<u128> Nat::to_u128() const {
  if (!big_) return small_;
  if (fits_u128(*big_)) return big_to_u128(*big_);
  return std::nullopt;
}

std::optional<std::uint64_t> Nat::to_u64() const {
  const auto wide = to_u128();
  if (!wide || *wide > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return static_cast<std::uint64_t>(*wide);
}

BigInt Nat::to_big() const { return big_ ? *big_ : big_from_u128(small_); }

std::uint64_t Nat::mod(std::uint64_t m) const {
  if (m == 0) throw DomainError("modulus must be nonzero");
  if (big_) return static_cast<std::uint64_t>(*big_ % m);
  return static_cast<std::uint64_t>(small_ % m);
}

Nat Nat::half() const {
  if (big_) return normalized(*big_ >> 1, pinned_);
  return from_u128(small_ >> 1);
}

Nat Nat::triple_plus_one() const {
  if (big_) return normalized(*big_ * 3 + 1, pinned_);
  if (small_ > (kU128Max - 1) / 3) return normalized(big_from_u128(small_) * 3 + 1, false);
  return from_u128(small_ * 3 + 1);
}

Nat Nat::operator+(std::uint64_t rhs) const {
  if (big_) return normalized(*big_ + rhs, pinned_);
  if (small_ > kU128Max - rhs) return normalized(big_from_u128(small_) + rhs, false);
  return from_u128(small_ + rhs);
}

Nat Nat::operator-(std::uint64_t rhs) const {
  if (*this < Nat(rhs)) throw std::underflow_error("Nat subtraction below zero");
  if (big_) return normalized(*big_ - rhs, pinned_);
  return from_u128(small_ - rhs);
}

Nat Nat::operator*(std::uint64_t rhs) const {
  if (big_) return normalized(*big_ * rhs, pinned_);
  if (rhs != 0 && small_ > kU128Max / rhs) return normalized(big_from_u128(small_) * rhs, false);
  return from_u128(small_ * rhs);
}

Nat Nat::operator/(std::uint64_t rhs) const {
  if (rhs == 0) throw DomainError("division by zero");
  if (big_) return normalized(*big_ / rhs, pinned_);
  return from_u128(small_ / rhs);
}

std::string Nat::to_string() const { return big_ ? big_->str() : u128_to_string(small_); }

bool operator==(const Nat& a, const Nat& b) {
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  return a.to_big() == b.to_big();
}

std::strong_ordering operator<=>(const Nat& a, const Nat& b) {
  if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
  const int c = a.to_big().compare(b.to_big());
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Nat& n) { return os << n.to_string(); }

std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace collatz
