#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace social {

/// Dense node id of the loaded graph, 0..n-1.
using NodeId = std::uint32_t;
/// Index of a node inside a hypergraph model's ball.
using LocalId = std::uint32_t;
/// Net weights, motif counts and volumes.
using Weight = std::uint64_t;
/// Flow capacities. Signed so residual arithmetic never wraps.
using Capacity = std::int64_t;

inline constexpr NodeId kInvalidNode = std::numeric_limits<NodeId>::max();

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UndefinedConductance : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnsupportedExpansion : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact non-negative ratio. Comparisons cross-multiply in 128 bits, so two
/// ratios compare equal iff they denote the same rational number.
struct Ratio {
  Weight num = 0;
  Weight den = 1;

  constexpr Ratio() = default;
  constexpr Ratio(Weight n, Weight d) : num(n), den(d) {}

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  Ratio reduced() const {
    if (num == 0) return {0, 1};
    const Weight g = std::gcd(num, den);
    return {num / g, den / g};
  }

  friend bool operator==(const Ratio& a, const Ratio& b) {
    using U = unsigned __int128;
    return static_cast<U>(a.num) * b.den == static_cast<U>(b.num) * a.den;
  }

  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    using U = unsigned __int128;
    const U lhs = static_cast<U>(a.num) * b.den;
    const U rhs = static_cast<U>(b.num) * a.den;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Ratio& r) {
    return os << r.num << '/' << r.den;
  }
};

namespace detail {

inline Capacity checked_mul(Capacity a, Capacity b) {
  Capacity out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("capacity overflow");
  return out;
}

inline Capacity checked_add(Capacity a, Capacity b) {
  Capacity out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("capacity overflow");
  return out;
}

inline Capacity to_capacity(Weight w) {
  if (w > static_cast<Weight>(std::numeric_limits<Capacity>::max())) {
    throw std::overflow_error("capacity overflow");
  }
  return static_cast<Capacity>(w);
}

}  // namespace detail

}  // namespace social
