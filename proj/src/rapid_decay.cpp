#include "dirac_atlas/rapid_decay.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>
#include <sstream>
#include <unordered_map>

#include "dirac_atlas/error.hpp"

namespace dirac_atlas::rapid_decay {

namespace {

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (int x : e) {
      h ^= static_cast<std::uint32_t>(x);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t saturating_add(std::size_t a, double b) {
  const double total = static_cast<double>(a) + b;
  return total > static_cast<double>(kMaxBallSize) ? kMaxBallSize + 1 : static_cast<std::size_t>(total);
}

void sort_by_length(const MarkedGroup& g, std::vector<Element>& elems) {
  std::sort(elems.begin(), elems.end(), [&](const Element& a, const Element& b) {
    const int la = g.length(a), lb = g.length(b);
    if (la != lb) return la < lb;
    return a < b;
  });
}

}  // namespace

MarkedGroup MarkedGroup::free_group(int k) {
  if (k < 1 || k > 26) throw ValidationError("free group rank must be in 1..26");
  MarkedGroup g;
  g.kind_ = GroupKind::Free;
  g.rank_ = k;
  g.name_ = "f" + std::to_string(k);
  return g;
}

MarkedGroup MarkedGroup::lattice(int d) {
  if (d < 1 || d > 8) throw ValidationError("lattice dimension must be in 1..8");
  MarkedGroup g;
  g.kind_ = GroupKind::Lattice;
  g.rank_ = d;
  g.name_ = d == 1 ? "z" : "z^" + std::to_string(d);
  return g;
}

MarkedGroup MarkedGroup::finite(ktheory::FiniteGroup table, std::vector<int> generators) {
  const int n = static_cast<int>(table.order());
  if (generators.empty())
    for (int x = 0; x < n; ++x)
      if (x != table.identity) generators.push_back(x);
  for (int s : generators)
    if (s < 0 || s >= n) throw ValidationError("generator index out of range");
  std::vector<int> len(n, -1);
  len[table.identity] = 0;
  std::queue<int> q;
  q.push(table.identity);
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    for (int s : generators)
      for (int t : {s, table.inverse[s]}) {
        const int y = table.mul(x, t);
        if (len[y] < 0) {
          len[y] = len[x] + 1;
          q.push(y);
        }
      }
  }
  if (std::find(len.begin(), len.end(), -1) != len.end()) throw ValidationError("generators do not generate the group");
  MarkedGroup g;
  g.kind_ = GroupKind::Finite;
  g.rank_ = 1;
  g.name_ = "finite:" + table.name;
  g.table_ = std::move(table);
  g.finite_length_ = std::move(len);
  return g;
}

MarkedGroup MarkedGroup::from_name(const std::string& raw) {
  std::string name;
  for (char c : raw) name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  auto digits = [&](std::size_t from) -> std::optional<int> {
    if (name.size() <= from || name.size() - from > 2) return std::nullopt;
    for (std::size_t i = from; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
    return std::stoi(name.substr(from));
  };
  if (name == "z") return lattice(1);
  if (name.rfind("z^", 0) == 0)
    if (auto d = digits(2)) return lattice(*d);
  if (name[0] == 'f')
    if (auto k = digits(1)) return free_group(*k);
  if (name.rfind("finite:", 0) == 0) return finite(ktheory::group_from_name(raw.substr(7)));
  throw ValidationError("unknown marked group '" + raw + "' (expected z, z^d, f<k> or finite:<name>)");
}

Element MarkedGroup::identity() const {
  switch (kind_) {
    case GroupKind::Free: return {};
    case GroupKind::Lattice: return Element(rank_, 0);
    case GroupKind::Finite: return {table_->identity};
  }
  return {};
}

void MarkedGroup::check(const Element& a) const {
  switch (kind_) {
    case GroupKind::Free:
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0 || std::abs(a[i]) > rank_) throw ValidationError("free-group letter out of range");
        if (i && a[i] == -a[i - 1]) throw ValidationError("free-group word is not reduced");
      }
      return;
    case GroupKind::Lattice:
      if (static_cast<int>(a.size()) != rank_) throw ValidationError("lattice vector has the wrong dimension");
      return;
    case GroupKind::Finite:
      if (a.size() != 1 || a[0] < 0 || a[0] >= static_cast<int>(table_->order()))
        throw ValidationError("finite-group element out of range");
      return;
  }
}

Element MarkedGroup::multiply(const Element& a, const Element& b) const {
  switch (kind_) {
    case GroupKind::Free: {
      Element out = a;
      for (int x : b) {
        if (!out.empty() && out.back() == -x) out.pop_back();
        else out.push_back(x);
      }
      return out;
    }
    case GroupKind::Lattice: {
      Element out(rank_);
      for (int i = 0; i < rank_; ++i) out[i] = a[i] + b[i];
      return out;
    }
    case GroupKind::Finite: return {table_->mul(a[0], b[0])};
  }
  return {};
}

Element MarkedGroup::inverse(const Element& a) const {
  switch (kind_) {
    case GroupKind::Free: {
      Element out(a.rbegin(), a.rend());
      for (int& x : out) x = -x;
      return out;
    }
    case GroupKind::Lattice: {
      Element out = a;
      for (int& x : out) x = -x;
      return out;
    }
    case GroupKind::Finite: return {table_->inverse[a[0]]};
  }
  return {};
}

int MarkedGroup::length(const Element& a) const {
  switch (kind_) {
    case GroupKind::Free: return static_cast<int>(a.size());
    case GroupKind::Lattice: {
      int l = 0;
      for (int x : a) l += std::abs(x);
      return l;
    }
    case GroupKind::Finite: return finite_length_[a[0]];
  }
  return 0;
}

std::size_t MarkedGroup::ball_size(int r) const {
  if (r < 0) return 0;
  switch (kind_) {
    case GroupKind::Free: {
      std::size_t total = 1;
      double sphere = 2.0 * rank_;
      for (int l = 1; l <= r && total <= kMaxBallSize; ++l) {
        total = saturating_add(total, sphere);
        sphere *= 2.0 * rank_ - 1.0;
      }
      return total;
    }
    case GroupKind::Lattice: {
      // sum_j 2^j C(d, j) C(r, j)
      double total = 0.0, cd = 1.0, cr = 1.0, pow2 = 1.0;
      for (int j = 0; j <= std::min(rank_, r); ++j) {
        total += pow2 * cd * cr;
        cd = cd * (rank_ - j) / (j + 1);
        cr = cr * (r - j) / (j + 1);
        pow2 *= 2.0;
      }
      return saturating_add(0, total);
    }
    case GroupKind::Finite:
      return static_cast<std::size_t>(
          std::count_if(finite_length_.begin(), finite_length_.end(), [&](int l) { return l <= r; }));
  }
  return 0;
}

std::vector<Element> MarkedGroup::ball(int r) const {
  if (r < 0) throw ValidationError("ball radius must be >= 0");
  const std::size_t size = ball_size(r);
  if (size > kMaxBallSize)
    throw ValidationError("ball of radius " + std::to_string(r) + " in " + name_ + " exceeds " +
                          std::to_string(kMaxBallSize) + " elements");
  std::vector<Element> out;
  out.reserve(size);
  switch (kind_) {
    case GroupKind::Free: {
      out.push_back({});
      std::size_t begin = 0;
      for (int l = 1; l <= r; ++l) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
          for (int x = -rank_; x <= rank_; ++x) {
            if (x == 0 || (!out[i].empty() && out[i].back() == -x)) continue;
            Element w = out[i];
            w.push_back(x);
            out.push_back(std::move(w));
          }
        begin = end;
      }
      break;
    }
    case GroupKind::Lattice: {
      Element v(rank_, 0);
      std::function<void(int, int)> rec = [&](int i, int budget) {
        if (i == rank_) {
          out.push_back(v);
          return;
        }
        for (int x = -budget; x <= budget; ++x) {
          v[i] = x;
          rec(i + 1, budget - std::abs(x));
        }
        v[i] = 0;
      };
      rec(0, r);
      break;
    }
    case GroupKind::Finite:
      for (int x = 0; x < static_cast<int>(table_->order()); ++x)
        if (finite_length_[x] <= r) out.push_back({x});
      break;
  }
  sort_by_length(*this, out);
  return out;
}

std::vector<Element> MarkedGroup::sphere(int r) const {
  std::vector<Element> out;
  for (auto& e : ball(r))
    if (length(e) == r) out.push_back(std::move(e));
  return out;
}

std::string MarkedGroup::format(const Element& a) const {
  switch (kind_) {
    case GroupKind::Free: {
      if (a.empty()) return "1";
      std::string s;
      for (int x : a) s.push_back(static_cast<char>(x > 0 ? 'a' + x - 1 : 'A' - x - 1));
      return s;
    }
    case GroupKind::Lattice: {
      std::string s = "(";
      for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
      return s + ")";
    }
    case GroupKind::Finite: return std::to_string(a[0]);
  }
  return {};
}

Element MarkedGroup::parse_word(const std::string& word) const {
  if (kind_ != GroupKind::Free) throw ValidationError("words are only defined for free groups");
  Element out;
  if (word.empty() || word == "1") return out;
  for (char c : word) {
    int x = 0;
    if (c >= 'a' && c <= 'z') x = c - 'a' + 1;
    else if (c >= 'A' && c <= 'Z') x = -(c - 'A' + 1);
    else throw ValidationError(std::string("bad letter '") + c + "' in word '" + word + "'");
    if (std::abs(x) > rank_) throw ValidationError("letter '" + std::string(1, c) + "' exceeds the free-group rank");
    out = multiply(out, {x});
  }
  return out;
}

GroupFunction delta(const Element& g, Complex c) { return {{g, c}}; }

void prune(GroupFunction& f) {
  for (auto it = f.begin(); it != f.end();) {
    if (it->second == Complex(0)) it = f.erase(it);
    else ++it;
  }
}

GroupFunction convolve(const MarkedGroup& g, const GroupFunction& f, const GroupFunction& h) {
  GroupFunction out;
  for (const auto& [y, a] : f)
    for (const auto& [z, b] : h) out[g.multiply(y, z)] += a * b;
  prune(out);
  return out;
}

double l1_norm(const GroupFunction& f) {
  double s = 0.0;
  for (const auto& [x, c] : f) s += std::abs(c);
  return s;
}

double hs_norm(const MarkedGroup& g, const GroupFunction& f, double s) {
  if (s < 0) throw ValidationError("Sobolev exponent must be >= 0");
  double sum = 0.0;
  for (const auto& [x, c] : f) {
    const double w = std::pow(1.0 + g.length(x), s) * std::abs(c);
    sum += w * w;
  }
  return std::sqrt(sum);
}

int support_radius(const MarkedGroup& g, const GroupFunction& f) {
  int r = 0;
  for (const auto& [x, c] : f)
    if (c != Complex(0)) r = std::max(r, g.length(x));
  return r;
}

namespace {

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
using Vector = Eigen::VectorXcd;

struct Compression {
  std::vector<Element> ball;
  std::unordered_map<Element, Eigen::Index, ElementHash> index;
  SparseMatrix m;
  SparseMatrix mt;
};

Compression compress(const MarkedGroup& g, const GroupFunction& f, int radius) {
  for (const auto& [x, c] : f) g.check(x);
  const int supp = support_radius(g, f);
  if (radius < supp)
    throw ValidationError("radius " + std::to_string(radius) + " is smaller than the support radius " +
                          std::to_string(supp));
  Compression c;
  c.ball = g.ball(radius);
  const auto n = static_cast<Eigen::Index>(c.ball.size());
  c.index.reserve(c.ball.size());
  for (Eigen::Index i = 0; i < n; ++i) c.index.emplace(c.ball[i], i);
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (Eigen::Index z = 0; z < n; ++z)
    for (const auto& [y, a] : f) {
      if (a == Complex(0)) continue;
      auto it = c.index.find(g.multiply(y, c.ball[z]));
      if (it != c.index.end()) triplets.emplace_back(it->second, z, a);
    }
  c.m.resize(n, n);
  c.m.setFromTriplets(triplets.begin(), triplets.end());
  c.mt = c.m.adjoint();
  return c;
}

Vector start_vector(const Compression& c, std::uint64_t seed) {
  Vector v(static_cast<Eigen::Index>(c.ball.size()));
  for (std::size_t i = 0; i < c.ball.size(); ++i) {
    const std::uint64_t h = splitmix64(seed ^ ElementHash{}(c.ball[i]));
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(h >> 11) * 0x1.0p-53;
    const double mag = 0.5 + 0.5 * static_cast<double>(splitmix64(h) >> 11) * 0x1.0p-53;
    v(static_cast<Eigen::Index>(i)) = std::polar(mag, phase);
  }
  return v;
}

ReducedNormEstimate power_iterate(const Compression& c, Vector& v, int radius, double upper,
                                  const PowerIterationOptions& opts) {
  ReducedNormEstimate e;
  e.radius = radius;
  e.ball_size = c.ball.size();
  e.upper = upper;
  if (c.m.nonZeros() == 0) return e;
  double nv = v.norm();
  if (nv == 0.0) throw std::logic_error("power iteration started from the zero vector");
  v /= nv;
  double best = 0.0, at_checkpoint = 0.0;
  std::size_t next_checkpoint = 2;
  for (std::size_t k = 1; k <= opts.max_iterations; ++k) {
    Vector w = c.m * v;
    best = std::max(best, w.norm());
    v = c.mt * w;
    nv = v.norm();
    e.iterations = k;
    e.lower = best;
    if (nv == 0.0) return e;
    v /= nv;
    if (k == next_checkpoint) {
      if (best - at_checkpoint <= opts.tolerance * best) return e;
      at_checkpoint = best;
      next_checkpoint *= 2;
    } else if (k == 1) {
      at_checkpoint = best;
    }
  }
  std::ostringstream msg;
  msg << "power iteration did not settle after " << opts.max_iterations << " iterations (lower bound so far "
      << best << ")";
  throw NumericalAmbiguity(msg.str());
}

}  // namespace

ReducedNormEstimate reduced_norm_truncated(const MarkedGroup& g, const GroupFunction& f, int radius,
                                           const PowerIterationOptions& opts) {
  Compression c = compress(g, f, radius);
  Vector v = start_vector(c, opts.seed);
  return power_iterate(c, v, radius, l1_norm(f), opts);
}

std::vector<ReducedNormEstimate> reduced_norm_profile(const MarkedGroup& g, const GroupFunction& f,
                                                      const std::vector<int>& radii,
                                                      const PowerIterationOptions& opts) {
  if (!std::is_sorted(radii.begin(), radii.end())) throw ValidationError("profile radii must be ascending");
  std::vector<ReducedNormEstimate> out;
  std::optional<Compression> prev;
  Vector prev_v;
  for (int r : radii) {
    Compression c = compress(g, f, r);
    Vector v;
    if (prev) {
      // Extension by zero keeps ||M v|| >= the previous bound.
      v = Vector::Zero(static_cast<Eigen::Index>(c.ball.size()));
      for (std::size_t i = 0; i < prev->ball.size(); ++i) v(c.index.at(prev->ball[i])) = prev_v(static_cast<Eigen::Index>(i));
      if (v.norm() == 0.0) v = start_vector(c, opts.seed);
    } else {
      v = start_vector(c, opts.seed);
    }
    auto e = power_iterate(c, v, r, l1_norm(f), opts);
    if (!out.empty()) e.lower = std::max(e.lower, out.back().lower);
    out.push_back(e);
    prev = std::move(c);
    prev_v = std::move(v);
  }
  return out;
}

FourierBracket fourier_sup_norm(const MarkedGroup& g, const GroupFunction& f, std::size_t grid) {
  if (g.kind() != GroupKind::Lattice || g.rank() > 2)
    throw ValidationError("the Fourier oracle is available for Z and Z^2 only");
  if (grid < 4) throw ValidationError("Fourier grid too small");
  const int d = g.rank();
  std::vector<std::pair<Element, Complex>> terms(f.begin(), f.end());
  double lipschitz = 0.0;
  for (const auto& [n, c] : terms) lipschitz += std::abs(c) * g.length(n);
  auto value = [&](const std::vector<double>& theta) {
    Complex s = 0.0;
    for (const auto& [n, c] : terms) {
      double phase = 0.0;
      for (int i = 0; i < d; ++i) phase += n[i] * theta[i];
      s += c * std::polar(1.0, phase);
    }
    return std::abs(s);
  };

  struct Box {
    double bound;
    double half;
    std::vector<double> center;
    bool operator<(const Box& o) const { return bound < o.bound; }
  };
  const std::size_t per_axis =
      d == 1 ? grid : std::max<std::size_t>(4, static_cast<std::size_t>(std::sqrt(static_cast<double>(grid))));
  const double step = 2.0 * std::numbers::pi / static_cast<double>(per_axis);
  FourierBracket out{0.0, 0.0, {}};
  std::priority_queue<Box> queue;
  auto push = [&](std::vector<double> center, double half) {
    const double v = value(center);
    if (v > out.lower) {
      out.lower = v;
      out.argmax = center;
    }
    queue.push({v + lipschitz * half, half, std::move(center)});
  };
  if (d == 1) {
    for (std::size_t i = 0; i < per_axis; ++i) push({(static_cast<double>(i) + 0.5) * step}, step / 2);
  } else {
    for (std::size_t i = 0; i < per_axis; ++i)
      for (std::size_t j = 0; j < per_axis; ++j)
        push({(static_cast<double>(i) + 0.5) * step, (static_cast<double>(j) + 0.5) * step}, step / 2);
  }
  constexpr std::size_t kMaxRefinements = 400'000;
  for (std::size_t it = 0; it < kMaxRefinements && !queue.empty(); ++it) {
    Box top = queue.top();
    if (top.bound <= out.lower + 1e-13 * std::max(1.0, out.lower)) break;
    queue.pop();
    const double h = top.half / 2;
    if (d == 1) {
      push({top.center[0] - h}, h);
      push({top.center[0] + h}, h);
    } else {
      for (double dx : {-h, h})
        for (double dy : {-h, h}) push({top.center[0] + dx, top.center[1] + dy}, h);
    }
  }
  out.upper = queue.empty() ? out.lower : std::max(out.lower, queue.top().bound);
  return out;
}

GroupFunction schur_multiply(const std::function<Complex(const Element&)>& c, const GroupFunction& f) {
  GroupFunction out;
  for (const auto& [x, a] : f) out[x] = c(x) * a;
  prune(out);
  return out;
}

std::function<Complex(const Element&)> ball_indicator(const MarkedGroup& g, int r) {
  return [g, r](const Element& x) { return g.length(x) <= r ? Complex(1.0) : Complex(0.0); };
}

std::function<Complex(const Element&)> sobolev_weight(const MarkedGroup& g, double s) {
  return [g, s](const Element& x) { return Complex(std::pow(1.0 + g.length(x), -s)); };
}

NormSpec NormSpec::parse(const std::string& text) {
  NormSpec n;
  auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (head == "l1" && arg.empty()) {
      n.kind = Kind::L1;
      return n;
    }
    if (head == "hs" && !arg.empty()) {
      n.kind = Kind::Hs;
      n.s = std::stod(arg);
      if (n.s < 0) throw ValidationError("hs exponent must be >= 0");
      return n;
    }
    if (head == "red" && !arg.empty()) {
      n.kind = Kind::ReducedTruncated;
      n.radius = std::stoi(arg);
      return n;
    }
  } catch (const std::logic_error&) {
  }
  throw ValidationError("unknown norm '" + text + "' (expected l1, hs:<s> or red:<radius>)");
}

std::string NormSpec::str() const {
  std::ostringstream s;
  switch (kind) {
    case Kind::L1: return "l1";
    case Kind::Hs: s << "hs:" << this->s; return s.str();
    case Kind::ReducedTruncated: return "red:" + std::to_string(radius);
  }
  return "?";
}

double evaluate(const NormSpec& norm, const MarkedGroup& g, const GroupFunction& f) {
  switch (norm.kind) {
    case NormSpec::Kind::L1: return l1_norm(f);
    case NormSpec::Kind::Hs: return hs_norm(g, f, norm.s);
    case NormSpec::Kind::ReducedTruncated: return reduced_norm_truncated(g, f, norm.radius, norm.power).lower;
  }
  return 0.0;
}

UnconditionalityReport unconditionality_probe(const NormSpec& norm, const MarkedGroup& g, const GroupFunction& f,
                                              std::size_t trials, std::uint64_t seed, PhaseMode mode) {
  if (trials < 1) throw ValidationError("trials must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::bernoulli_distribution flip(0.5);
  UnconditionalityReport r;
  r.norm = norm.str();
  r.trials = trials;
  r.base = evaluate(norm, g, f);
  r.witness = f;
  r.witness_value = r.base;
  for (std::size_t t = 0; t < trials; ++t) {
    GroupFunction h;
    for (const auto& [x, c] : f)
      h[x] = c * (mode == PhaseMode::Unimodular ? std::polar(1.0, angle(rng)) : Complex(flip(rng) ? -1.0 : 1.0));
    const double v = evaluate(norm, g, h);
    const double dev = std::abs(v - r.base);
    if (dev > r.max_deviation) {
      r.max_deviation = dev;
      r.witness = std::move(h);
      r.witness_value = v;
    }
  }
  return r;
}

GroupFunction random_function(const MarkedGroup& g, int support_radius, std::size_t max_support, std::uint64_t seed,
                              bool sphere) {
  if (max_support < 1) throw ValidationError("max_support must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  auto pool = sphere ? g.sphere(support_radius) : g.ball(support_radius);
  if (pool.empty()) throw ValidationError("empty support pool");
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(std::min(pool.size(), max_support));
  GroupFunction f;
  for (const auto& x : pool) f[x] = Complex(normal(rng), normal(rng));
  prune(f);
  return f;
}

RdReport rd_inequality_probe(const MarkedGroup& g, double s, std::uint64_t seed, const RdProbeOptions& opts) {
  if (g.kind() == GroupKind::Finite) throw ValidationError("the (RD) probe needs a free group or Z^d");
  if (s < 0) throw ValidationError("Sobolev exponent must be >= 0");
  if (opts.samples < 1) throw ValidationError("samples must be >= 1");
  std::vector<int> radii = opts.support_radii;
  if (radii.empty()) radii = g.kind() == GroupKind::Free ? std::vector<int>{1, 2, 3, 4, 5} : std::vector<int>{4, 8, 16, 32, 64};

  RdReport report;
  report.group = g.name();
  report.s = s;
  std::mt19937_64 seeds(seed);
  for (int r : radii) {
    if (r < 0) throw ValidationError("support radius must be >= 0");
    int big = 2 * r + opts.radius_margin;
    while (big > r && g.ball_size(big) > opts.max_ball) --big;
    if (g.ball_size(big) > opts.max_ball)
      throw ValidationError("ball of radius " + std::to_string(r) + " exceeds the probe limit");
    RdScale scale{r, opts.samples, 0.0, 0.0};
    for (std::size_t i = 0; i < opts.samples; ++i) {
      const auto f = random_function(g, r, opts.max_support, seeds(), opts.sphere_supported);
      PowerIterationOptions power = opts.power;
      power.seed = seeds();
      const double ratio = reduced_norm_truncated(g, f, big, power).lower / hs_norm(g, f, s);
      scale.max_ratio = std::max(scale.max_ratio, ratio);
      scale.mean_ratio += ratio / static_cast<double>(opts.samples);
    }
    report.max_ratio = std::max(report.max_ratio, scale.max_ratio);
    report.scales.push_back(scale);
  }
  if (report.scales.size() >= 2) {
    double earlier = 0.0;
    for (std::size_t i = 0; i + 1 < report.scales.size(); ++i) earlier = std::max(earlier, report.scales[i].max_ratio);
    report.appears_bounded = report.scales.back().max_ratio <= 1.25 * earlier + 1e-12;
  }
  return report;
}

SchurProbeReport schur_ratio_probe(const MarkedGroup& g, int multiplier_radius, int support_radius,
                                   std::size_t samples, std::uint64_t seed, const RdProbeOptions& opts) {
  if (multiplier_radius < 0 || support_radius < 0) throw ValidationError("radii must be >= 0");
  if (samples < 1) throw ValidationError("samples must be >= 1");
  int big = 2 * support_radius + opts.radius_margin;
  while (big > support_radius && g.ball_size(big) > opts.max_ball) --big;
  if (g.ball_size(big) > opts.max_ball)
    throw ValidationError("ball of radius " + std::to_string(support_radius) + " exceeds the probe limit");

  SchurProbeReport report{g.name(), multiplier_radius, support_radius, big, samples, 0.0, 0.0};
  const auto c = ball_indicator(g, multiplier_radius);
  std::mt19937_64 seeds(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto f = random_function(g, support_radius, opts.max_support, seeds(), opts.sphere_supported);
    PowerIterationOptions power = opts.power;
    power.seed = seeds();
    auto cf = schur_multiply(c, f);
    prune(cf);
    const double denom = reduced_norm_truncated(g, f, big, power).lower;
    const double num = cf.empty() ? 0.0 : reduced_norm_truncated(g, cf, big, power).lower;
    const double ratio = num / denom;
    report.max_ratio = std::max(report.max_ratio, ratio);
    report.mean_ratio += ratio / static_cast<double>(samples);
  }
  return report;
}

namespace {

nlohmann::json element_json(const MarkedGroup& g, const Element& x) {
  switch (g.kind()) {
    case GroupKind::Free: return {{"word", g.format(x)}};
    case GroupKind::Lattice: return {{"vector", x}};
    case GroupKind::Finite: return {{"element", x[0]}};
  }
  return {};
}

Element element_from_json(const MarkedGroup& g, const nlohmann::json& e) {
  Element x;
  if (e.contains("word")) {
    const auto& w = e["word"];
    if (w.is_string()) x = g.parse_word(w.get<std::string>());
    else x = g.multiply(g.identity(), w.get<Element>());
  } else if (e.contains("vector")) {
    const auto& v = e["vector"];
    x = v.is_number_integer() ? Element{v.get<int>()} : v.get<Element>();
  } else if (e.contains("element")) {
    x = {e["element"].get<int>()};
  } else {
    throw ValidationError("group-function entry needs 'word', 'vector' or 'element'");
  }
  g.check(x);
  return x;
}

}  // namespace

nlohmann::json to_json(const MarkedGroup& g, const GroupFunction& f) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [x, c] : f) {
    auto e = element_json(g, x);
    e["re"] = c.real();
    e["im"] = c.imag();
    out.push_back(std::move(e));
  }
  return out;
}

GroupFunction function_from_json(const MarkedGroup& g, const nlohmann::json& j) {
  if (!j.is_array()) throw ValidationError("group function must be a JSON array");
  GroupFunction f;
  try {
    for (const auto& e : j) {
      if (!e.is_object()) throw ValidationError("group-function entries must be objects");
      f[element_from_json(g, e)] += Complex(e.value("re", 0.0), e.value("im", 0.0));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("malformed group function: ") + ex.what());
  }
  prune(f);
  return f;
}

nlohmann::json to_json(const ReducedNormEstimate& e) {
  return {{"radius", e.radius},
          {"ball_size", e.ball_size},
          {"red_lower", e.lower},
          {"red_upper", e.upper},
          {"iterations", e.iterations}};
}

nlohmann::json to_json(const MarkedGroup& g, const UnconditionalityReport& r) {
  return {{"norm", r.norm},
          {"trials", r.trials},
          {"base", r.base},
          {"max_deviation", r.max_deviation},
          {"witness", to_json(g, r.witness)},
          {"witness_value", r.witness_value}};
}

nlohmann::json to_json(const RdReport& r) {
  nlohmann::json scales = nlohmann::json::array();
  for (const auto& s : r.scales)
    scales.push_back({{"support_radius", s.support_radius},
                      {"samples", s.samples},
                      {"max_ratio", s.max_ratio},
                      {"mean_ratio", s.mean_ratio}});
  return {{"group", r.group},
          {"s", r.s},
          {"scales", std::move(scales)},
          {"max_ratio", r.max_ratio},
          {"appears_bounded", r.appears_bounded}};
}

nlohmann::json to_json(const SchurProbeReport& r) {
  return {{"group", r.group},
          {"multiplier_radius", r.multiplier_radius},
          {"support_radius", r.support_radius},
          {"compression_radius", r.compression_radius},
          {"samples", r.samples},
          {"max_ratio", r.max_ratio},
          {"mean_ratio", r.mean_ratio}};
}

}  // namespace dirac_atlas::rapid_decay
