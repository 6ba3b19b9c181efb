#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace dirac_atlas {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws ValidationError.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" rendering ("p" when q = 1).
std::string to_string(const Rational& r);

/// True when the denominator is a power of two.
bool is_dyadic(const Rational& r);

bool is_integer(const Rational& r);

/// Exact weight vector. Coordinates are in the fundamental-weight basis
/// (dual to the simple coroots), so integral weights have integer entries
/// and spin shifts have denominator 2.
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::size_t dim) : coords_(dim, Rational(0)) {}
  explicit Weight(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  Weight(std::initializer_list<long> ints);

  static Weight zero(std::size_t dim) { return Weight(dim); }

  std::size_t dim() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_dyadic() const;
  bool is_integral() const;

  Weight& operator+=(const Weight& other);
  Weight& operator-=(const Weight& other);
  Weight& operator*=(const Rational& c);

  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(Weight a, const Rational& c) { return a *= c; }
  friend Weight operator*(const Rational& c, Weight a) { return a *= c; }
  Weight operator-() const;

  friend bool operator==(const Weight& a, const Weight& b);
  // Lexicographic; used for deterministic container ordering only.
  friend bool operator<(const Weight& a, const Weight& b);

  /// "(1,1/2,0)"
  std::string str() const;
  /// Parses "1,1/2,0" (parentheses optional).
  static Weight parse(std::string_view text);

 private:
  std::vector<Rational> coords_;
};

/// Graded lexicographic order: coordinate sum ascending, then lexicographic
/// descending. Total and deterministic.
bool graded_lex_less(const Weight& a, const Weight& b);

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Exact inverse by Gauss-Jordan elimination. Throws ValidationError if singular.
RationalMatrix invert(const RationalMatrix& m);

/// Solves m x = rhs exactly (m square, nonsingular).
std::vector<Rational> solve(const RationalMatrix& m, const std::vector<Rational>& rhs);

}  // namespace dirac_atlas
