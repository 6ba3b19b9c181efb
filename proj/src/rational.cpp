#include "dirac_atlas/rational.hpp"

#include <algorithm>
#include <cctype>

#include "dirac_atlas/error.hpp"

namespace dirac_atlas {

namespace {

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer_text(num) || !valid_integer_text(den) || den.front() == '-' || den.front() == '+') {
    throw ValidationError("not a rational number: '" + std::string(text) + "'");
  }
  if (num.front() == '+') num.remove_prefix(1);
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

bool is_dyadic(const Rational& r) {
  mpz_class d = r.get_den();
  return mpz_popcount(d.get_mpz_t()) == 1;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

Weight::Weight(std::initializer_list<long> ints) {
  coords_.reserve(ints.size());
  for (long v : ints) coords_.emplace_back(v);
}

bool Weight::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

bool Weight::is_dyadic() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return dirac_atlas::is_dyadic(c); });
}

bool Weight::is_integral() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return is_integer(c); });
}

Weight& Weight::operator+=(const Weight& other) {
  if (other.dim() != dim()) throw ValidationError("weight dimension mismatch");
  for (std::size_t i = 0; i < dim(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& other) {
  if (other.dim() != dim()) throw ValidationError("weight dimension mismatch");
  for (std::size_t i = 0; i < dim(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Weight& Weight::operator*=(const Rational& c) {
  for (auto& x : coords_) x *= c;
  return *this;
}

Weight Weight::operator-() const {
  Weight out(*this);
  for (auto& x : out.coords_) x = -x;
  return out;
}

bool operator==(const Weight& a, const Weight& b) { return a.coords_ == b.coords_; }

bool operator<(const Weight& a, const Weight& b) {
  return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(), b.coords_.end());
}

std::string Weight::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ',';
    out += to_string(coords_[i]);
  }
  return out + ")";
}

Weight Weight::parse(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '(') text.remove_prefix(1);
  if (!text.empty() && text.back() == ')') text.remove_suffix(1);
  std::vector<Rational> coords;
  while (true) {
    auto comma = text.find(',');
    coords.push_back(parse_rational(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return Weight(std::move(coords));
}

bool graded_lex_less(const Weight& a, const Weight& b) {
  Rational sa = 0, sb = 0;
  for (const auto& c : a.coords()) sa += c;
  for (const auto& c : b.coords()) sb += c;
  if (sa != sb) return sa < sb;
  return b < a;
}

RationalMatrix invert(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a = m;
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw ValidationError("singular matrix");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

std::vector<Rational> solve(const RationalMatrix& m, const std::vector<Rational>& rhs) {
  RationalMatrix inv = invert(m);
  std::vector<Rational> x(rhs.size(), Rational(0));
  for (std::size_t i = 0; i < inv.size(); ++i)
    for (std::size_t j = 0; j < rhs.size(); ++j) x[i] += inv[i][j] * rhs[j];
  return x;
}

}  // namespace dirac_atlas
