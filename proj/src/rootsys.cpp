#include "dirac_atlas/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>

#include "dirac_atlas/error.hpp"

namespace dirac_atlas::rootsys {

namespace {

char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

// Squared lengths of the simple roots of one factor, long roots normalized to 2.
std::vector<Rational> squared_lengths(const SimpleFactor& f) {
  std::vector<Rational> d(f.rank, Rational(2));
  switch (f.family) {
    case Family::B: d[f.rank - 1] = 1; break;
    case Family::C:
      for (int i = 0; i + 1 < f.rank; ++i) d[i] = 1;
      break;
    case Family::F: d[2] = 1; d[3] = 1; break;
    case Family::G: d[0] = Rational(2, 3); break;
    default: break;
  }
  return d;
}

std::vector<std::vector<int>> factor_cartan(const SimpleFactor& f) {
  const int n = f.rank;
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
  switch (f.family) {
    case Family::A:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case Family::B:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 2][n - 1] = -2;
      break;
    case Family::C:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 1][n - 2] = -2;
      break;
    case Family::D:
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case Family::E:
      link(0, 2);
      link(1, 3);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
      break;
    case Family::F:
      link(0, 1);
      link(1, 2);
      link(2, 3);
      a[1][2] = -2;
      break;
    case Family::G:
      link(0, 1);
      a[1][0] = -3;
      break;
  }
  return a;
}

std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

int CartanType::rank() const {
  int r = 0;
  for (const auto& f : factors) r += f.rank;
  return r;
}

std::string CartanType::str() const {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += 'x';
    out += family_letter(factors[i].family);
    out += std::to_string(factors[i].rank);
  }
  return out;
}

CartanType CartanType::parse(std::string_view text) {
  CartanType type;
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ValidationError("empty Cartan type");
  std::size_t pos = 0;
  while (pos < s.size()) {
    char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(s[pos])));
    if (letter < 'A' || letter > 'G') throw ValidationError("bad Cartan family in '" + std::string(text) + "'");
    ++pos;
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos || pos - start > 3) throw ValidationError("bad rank in Cartan type '" + std::string(text) + "'");
    int rank = std::stoi(s.substr(start, pos - start));
    type.factors.push_back({static_cast<Family>(letter - 'A'), rank});
    if (pos < s.size()) {
      if (s[pos] != 'x' && s[pos] != 'X' && s[pos] != '*')
        throw ValidationError("bad separator in Cartan type '" + std::string(text) + "'");
      ++pos;
      if (pos == s.size()) throw ValidationError("trailing separator in Cartan type");
    }
  }
  validate(type);
  return type;
}

void validate(const CartanType& type) {
  for (const auto& f : type.factors) {
    const int r = f.rank;
    bool ok = false;
    switch (f.family) {
      case Family::A: ok = r >= 1; break;
      case Family::B: ok = r >= 2; break;
      case Family::C: ok = r >= 2; break;
      case Family::D: ok = r >= 4; break;
      case Family::E: ok = r >= 6 && r <= 8; break;
      case Family::F: ok = r == 4; break;
      case Family::G: ok = r == 2; break;
    }
    if (!ok) {
      throw ValidationError(std::string("invalid rank ") + std::to_string(r) + " for family " + family_letter(f.family));
    }
  }
}

std::vector<std::vector<int>> cartan_matrix(const CartanType& type) {
  validate(type);
  const int n = type.rank();
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  int offset = 0;
  for (const auto& f : type.factors) {
    auto block = factor_cartan(f);
    for (int i = 0; i < f.rank; ++i)
      for (int j = 0; j < f.rank; ++j) a[offset + i][offset + j] = block[i][j];
    offset += f.rank;
  }
  return a;
}

RootSystem::RootSystem(CartanType cartan, RationalMatrix form, std::vector<Weight> simple_roots,
                       std::vector<Weight> positive_roots)
    : cartan_(std::move(cartan)), form_(std::move(form)), simple_(std::move(simple_roots)) {
  const std::size_t n = form_.size();
  for (const auto& row : form_)
    if (row.size() != n) throw ValidationError("bilinear form is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (form_[i][j] != form_[j][i]) throw ValidationError("bilinear form is not symmetric");
  for (const auto& w : simple_)
    if (w.dim() != n) throw ValidationError("simple root has wrong dimension");

  const std::size_t r = simple_.size();
  if (r > 0) {
    RationalMatrix gram(r, std::vector<Rational>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) gram[i][j] = inner(simple_[i], simple_[j], *this);
    simple_gram_inverse_ = invert(gram);
  }

  std::vector<std::pair<std::vector<long>, Weight>> entries;
  for (auto& w : positive_roots) {
    if (w.dim() != n) throw ValidationError("positive root has wrong dimension");
    auto c = simple_coordinates(w);
    std::vector<long> ints;
    for (const auto& x : c) {
      if (!is_integer(x) || x < 0) throw ValidationError("positive root " + w.str() + " is not a nonnegative integer combination of simple roots");
      ints.push_back(x.get_num().get_si());
    }
    entries.emplace_back(std::move(ints), std::move(w));
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    long ha = std::accumulate(a.first.begin(), a.first.end(), 0L);
    long hb = std::accumulate(b.first.begin(), b.first.end(), 0L);
    if (ha != hb) return ha < hb;
    return b.first < a.first;
  });
  rho_ = Weight(n);
  for (auto& [c, w] : entries) {
    if (index_.count(w)) throw ValidationError("duplicate positive root " + w.str());
    index_.emplace(w, positive_.size());
    rho_ += w;
    coefficients_.push_back(std::move(c));
    positive_.push_back(std::move(w));
  }
  rho_ *= Rational(1, 2);
  for (const auto& s : simple_)
    if (!index_.count(s)) throw ValidationError("simple root " + s.str() + " missing from positive roots");
}

std::vector<Rational> RootSystem::simple_coordinates(const Weight& w) const {
  const std::size_t r = simple_.size();
  std::vector<Rational> rhs(r), c(r, Rational(0));
  for (std::size_t j = 0; j < r; ++j) rhs[j] = inner(w, simple_[j], *this);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) c[i] += simple_gram_inverse_[i][j] * rhs[j];
  Weight back(ambient_dim());
  for (std::size_t i = 0; i < r; ++i) back += simple_[i] * c[i];
  if (!(back == w)) throw ValidationError(w.str() + " is not in the span of the simple roots");
  return c;
}

std::size_t RootSystem::find_positive(const Weight& w) const {
  auto it = index_.find(w);
  return it == index_.end() ? npos : it->second;
}

bool RootSystem::is_root(const Weight& w) const { return find_positive(w) != npos || find_positive(-w) != npos; }

RootSystem RootSystem::with_scaled_form(const Rational& factor) const {
  if (factor <= 0) throw ValidationError("form scale must be positive");
  RationalMatrix f = form_;
  for (auto& row : f)
    for (auto& x : row) x *= factor;
  return RootSystem(cartan_, std::move(f), simple_, positive_);
}

RootSystem build_root_system(const CartanType& type) {
  if (type.empty()) throw ValidationError("empty Cartan type (zero algebra) has no root system");
  const auto a = cartan_matrix(type);
  const std::size_t n = a.size();

  std::vector<Rational> d;
  for (const auto& f : type.factors) {
    auto part = squared_lengths(f);
    d.insert(d.end(), part.begin(), part.end());
  }
  RationalMatrix am(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) am[i][j] = a[i][j];
  // A F = diag(d)/2, from (alpha_i, omega_j) = delta_ij (alpha_j, alpha_j)/2.
  RationalMatrix ainv = invert(am);
  RationalMatrix form(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) form[i][j] = ainv[i][j] * d[j] / 2;

  // Closure by alpha-strings in simple-root coefficients.
  std::set<std::vector<long>> known;
  std::vector<std::vector<long>> level;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<long> e(n, 0);
    e[i] = 1;
    known.insert(e);
    level.push_back(e);
  }
  while (!level.empty()) {
    std::vector<std::vector<long>> next;
    for (const auto& beta : level) {
      for (std::size_t i = 0; i < n; ++i) {
        bool is_simple_i = beta[i] == 1 && std::accumulate(beta.begin(), beta.end(), 0L) == 1;
        if (is_simple_i) continue;
        long pairing = 0;
        for (std::size_t j = 0; j < n; ++j) pairing += beta[j] * a[j][i];
        long p = 0;
        auto down = beta;
        while (true) {
          down[i] -= 1;
          if (down[i] < 0 || !known.count(down)) break;
          ++p;
        }
        if (p - pairing > 0) {
          auto up = beta;
          up[i] += 1;
          if (known.insert(up).second) next.push_back(up);
        }
      }
    }
    level = std::move(next);
  }

  std::vector<Weight> simple;
  for (std::size_t i = 0; i < n; ++i) {
    Weight w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = a[i][j];
    simple.push_back(std::move(w));
  }
  std::vector<Weight> positive;
  for (const auto& c : known) {
    Weight w(n);
    for (std::size_t i = 0; i < n; ++i) w += simple[i] * Rational(c[i]);
    positive.push_back(std::move(w));
  }
  return RootSystem(type, std::move(form), std::move(simple), std::move(positive));
}

namespace {

// Connected components of the Dynkin diagram, labelled by rank, number of
// positive roots and the count of short simple roots.
CartanType identify_type(const RootSystem& rs) {
  const std::size_t n = rs.rank();
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      const auto i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j)
        if (comp[j] < 0 && inner(rs.simple_roots()[i], rs.simple_roots()[j], rs) != 0) {
          comp[j] = ncomp;
          stack.push_back(j);
        }
    }
    ++ncomp;
  }
  CartanType type;
  for (int c = 0; c < ncomp; ++c) {
    int r = 0;
    Rational longest = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (comp[i] == c) {
        ++r;
        longest = std::max(longest, inner(rs.simple_roots()[i], rs.simple_roots()[i], rs));
      }
    int short_simple = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (comp[i] == c && inner(rs.simple_roots()[i], rs.simple_roots()[i], rs) < longest) ++short_simple;
    long roots = 0;
    for (std::size_t k = 0; k < rs.positive_roots().size(); ++k) {
      const auto& coeff = rs.root_coefficients(k);
      for (std::size_t i = 0; i < n; ++i)
        if (coeff[i] != 0) {
          roots += comp[i] == c;
          break;
        }
    }
    Family f;
    if (short_simple == 0) {
      if (roots == r * (r + 1) / 2) f = Family::A;
      else if (roots == r * (r - 1)) f = Family::D;
      else if (r >= 6 && r <= 8) f = Family::E;
      else throw std::logic_error("unrecognized simply-laced component");
    } else if (r == 2 && roots == 6) {
      f = Family::G;
    } else if (r == 4 && roots == 24) {
      f = Family::F;
    } else if (roots == r * r) {
      f = short_simple == 1 ? Family::B : Family::C;
    } else {
      throw std::logic_error("unrecognized component");
    }
    type.factors.push_back({f, r});
  }
  return type;
}

}  // namespace

RootSystem subsystem(const RootSystem& ambient, const std::vector<std::size_t>& positive_indices) {
  std::set<std::size_t> chosen(positive_indices.begin(), positive_indices.end());
  for (auto i : chosen)
    if (i >= ambient.positive_roots().size()) throw ValidationError("root index out of range");

  std::vector<Weight> members;
  for (auto i : chosen) members.push_back(ambient.positive_roots()[i]);

  // Closedness over +/- members.
  std::vector<Weight> signed_members;
  for (const auto& m : members) {
    signed_members.push_back(m);
    signed_members.push_back(-m);
  }
  auto in_subset = [&](const Weight& w) {
    auto i = ambient.find_positive(w);
    if (i == RootSystem::npos) i = ambient.find_positive(-w);
    return i != RootSystem::npos && chosen.count(i);
  };
  for (const auto& x : signed_members)
    for (const auto& y : signed_members) {
      Weight s = x + y;
      if (ambient.is_root(s) && !in_subset(s))
        throw ValidationError("root subset is not closed: " + x.str() + " + " + y.str() + " is a root outside it");
    }

  std::set<Weight> member_set(members.begin(), members.end());
  std::vector<Weight> simple;
  for (const auto& m : members) {
    bool decomposable = false;
    for (const auto& x : members) {
      if (member_set.count(m - x)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simple.push_back(m);
  }
  std::sort(simple.begin(), simple.end(), [&](const Weight& x, const Weight& y) {
    return ambient.find_positive(x) < ambient.find_positive(y);
  });
  RootSystem untyped(CartanType{}, ambient.form(), simple, members);
  return RootSystem(identify_type(untyped), ambient.form(), std::move(simple), std::move(members));
}

Rational inner(const Weight& a, const Weight& b, const RootSystem& rs) {
  const auto& f = rs.form();
  if (a.dim() != f.size() || b.dim() != f.size()) throw ValidationError("weight dimension does not match the root system");
  Rational s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (a[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < f.size(); ++j)
      if (b[j] != 0) row += f[i][j] * b[j];
    s += a[i] * row;
  }
  return s;
}

Rational coroot_pairing(const Weight& w, const Weight& alpha, const RootSystem& rs) {
  return 2 * inner(w, alpha, rs) / inner(alpha, alpha, rs);
}

bool is_regular(const Weight& lambda, const RootSystem& rs) {
  for (const auto& a : rs.positive_roots())
    if (inner(lambda, a, rs) == 0) return false;
  return true;
}

bool is_dominant(const Weight& mu, const RootSystem& rs) {
  for (const auto& a : rs.simple_roots())
    if (inner(mu, a, rs) < 0) return false;
  return true;
}

bool is_integral(const Weight& mu, const RootSystem& rs) {
  for (const auto& a : rs.simple_roots())
    if (!is_integer(coroot_pairing(mu, a, rs))) return false;
  return true;
}

Weight reflect(const Weight& x, const Weight& alpha, const RootSystem& rs) {
  return x - alpha * coroot_pairing(x, alpha, rs);
}

Weight dominant_conjugate(const Weight& w, const RootSystem& rs, std::vector<std::size_t>* word) {
  Weight x = w;
  const auto simple = rs.simple_roots();
  while (true) {
    std::size_t i = 0;
    for (; i < simple.size(); ++i)
      if (inner(x, simple[i], rs) < 0) break;
    if (i == simple.size()) return x;
    x = reflect(x, simple[i], rs);
    if (word) word->push_back(i);
  }
}

std::vector<Weight> weyl_orbit_bfs(const Weight& w, const RootSystem& rs) {
  std::vector<Weight> order{w};
  std::set<Weight> seen{w};
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const auto& a : rs.simple_roots()) {
      Weight y = reflect(order[head], a, rs);
      if (seen.insert(y).second) order.push_back(std::move(y));
    }
  }
  return order;
}

std::set<Weight> weyl_orbit(const Weight& w, const RootSystem& rs) {
  std::set<Weight> seen{w};
  std::deque<Weight> queue{w};
  while (!queue.empty()) {
    Weight x = std::move(queue.front());
    queue.pop_front();
    for (const auto& a : rs.simple_roots()) {
      Weight y = reflect(x, a, rs);
      if (seen.insert(y).second) queue.push_back(std::move(y));
    }
  }
  return seen;
}

std::uint64_t weyl_group_order_formula(const CartanType& type) {
  std::uint64_t order = 1;
  for (const auto& f : type.factors) {
    const int n = f.rank;
    switch (f.family) {
      case Family::A: order *= factorial(n + 1); break;
      case Family::B:
      case Family::C: order *= (std::uint64_t{1} << n) * factorial(n); break;
      case Family::D: order *= (std::uint64_t{1} << (n - 1)) * factorial(n); break;
      case Family::E: order *= n == 6 ? 51840ULL : n == 7 ? 2903040ULL : 696729600ULL; break;
      case Family::F: order *= 1152; break;
      case Family::G: order *= 12; break;
    }
  }
  return order;
}

std::uint64_t weyl_group_order(const RootSystem& rs) {
  if (!rs.cartan().empty()) {
    auto predicted = weyl_group_order_formula(rs.cartan());
    if (predicted > kMaxBruteForceWeylOrder) return predicted;
  }
  // rho is regular, so its orbit is a regular W-set.
  std::set<Weight> seen{rs.rho()};
  std::deque<Weight> queue{rs.rho()};
  while (!queue.empty()) {
    Weight x = std::move(queue.front());
    queue.pop_front();
    for (const auto& a : rs.simple_roots()) {
      Weight y = reflect(x, a, rs);
      if (seen.insert(y).second) {
        if (seen.size() > kMaxBruteForceWeylOrder) throw ValidationError("Weyl group too large for brute force");
        queue.push_back(std::move(y));
      }
    }
  }
  return seen.size();
}

nlohmann::json to_json(const Weight& w) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : w.coords()) arr.push_back(to_string(c));
  return arr;
}

Weight weight_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Weight::parse(j.get<std::string>());
  if (!j.is_array()) throw ValidationError("weight must be an array or a string");
  std::vector<Rational> coords;
  for (const auto& x : j) {
    if (x.is_string()) coords.push_back(parse_rational(x.get<std::string>()));
    else if (x.is_number_integer()) coords.emplace_back(x.get<long>());
    else throw ValidationError("weight coordinates must be integers or \"p/q\" strings");
  }
  return Weight(std::move(coords));
}

nlohmann::json to_json(const RootSystem& rs) {
  nlohmann::json j;
  j["cartan"] = rs.cartan().str();
  j["simple_roots"] = nlohmann::json::array();
  for (const auto& w : rs.simple_roots()) j["simple_roots"].push_back(to_json(w));
  j["positive_roots"] = nlohmann::json::array();
  for (const auto& w : rs.positive_roots()) j["positive_roots"].push_back(to_json(w));
  j["form"] = nlohmann::json::array();
  for (const auto& row : rs.form()) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& x : row) r.push_back(to_string(x));
    j["form"].push_back(std::move(r));
  }
  j["rho"] = to_json(rs.rho());
  return j;
}

}  // namespace dirac_atlas::rootsys
