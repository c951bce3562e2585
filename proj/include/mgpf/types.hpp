#pragma once

/* Shared scalar types for the multi-goal path finding library.
 *
 * Costs are fixed-point integers: a cardinal grid step is 1000, a diagonal
 * step 1414 (floor of 1000*sqrt(2)).  Integer costs keep every comparison
 * exact, which the acceptance-order (Kruskal) arguments rely on.
 */

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mgpf {

using Cost = std::int64_t;
using NodeId = std::int32_t;

inline constexpr NodeId kNoNode = -1;
inline constexpr Cost kCardinalCost = 1000;
inline constexpr Cost kDiagonalCost = 1414;

// Large enough to act as +inf, small enough that sums of up to four
// "infinite" terms cannot overflow an int64.
inline constexpr Cost kInfCost = std::numeric_limits<Cost>::max() / 8;

inline bool is_finite(Cost c) { return c < kInfCost; }

// Thrown on malformed map / edge-list / solution text.  Carries the 1-based
// line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Thrown when an instance's terminals are not mutually reachable: the solvers
// only detect this after every open set exhausts.
class UnsolvableError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact rational, used for the heuristic weight w in [0,1] and for the
// a-posteriori approximation ratio.  Always kept normalized (gcd 1, den > 0).
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Fraction() = default;
  Fraction(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("fraction with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Fraction& a, const Fraction& b) {
    return !(a == b);
  }
  // den values here are small (bounded by cost magnitudes), so the cross
  // products fit in __int128 comfortably.
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return static_cast<__int128>(a.num) * b.den <
           static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Fraction& a, const Fraction& b) {
    return !(b < a);
  }

  double to_double() const { return static_cast<double>(num) / den; }

  std::string to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  // Accepts "p/q", a plain integer, or a decimal like "0.25".
  static Fraction parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty fraction");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
      std::int64_t n = std::stoll(text.substr(0, slash));
      std::int64_t d = std::stoll(text.substr(slash + 1));
      return Fraction(n, d);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
      std::string digits = text.substr(dot + 1);
      if (digits.empty() || digits.size() > 9)
        throw std::invalid_argument("unparsable decimal: " + text);
      std::int64_t den = 1;
      for (std::size_t i = 0; i < digits.size(); ++i) den *= 10;
      std::int64_t whole = dot == 0 ? 0 : std::stoll(text.substr(0, dot));
      bool neg = !text.empty() && text[0] == '-';
      std::int64_t frac = std::stoll(digits);
      std::int64_t num = whole * den + (neg ? -frac : frac);
      return Fraction(num, den);
    }
    return Fraction(std::stoll(text), 1);
  }
};

}  // namespace mgpf
