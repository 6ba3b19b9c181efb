#include "dirac_atlas/ktheory.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "dirac_atlas/error.hpp"

namespace dirac_atlas::ktheory {

FDAlgebra::FDAlgebra(std::vector<int> b) : blocks(std::move(b)) {
  if (blocks.empty()) throw ValidationError("algebra needs at least one block");
  for (int n : blocks)
    if (n < 1) throw ValidationError("block sizes must be positive");
}

long long FDAlgebra::dimension() const {
  long long d = 0;
  for (int n : blocks) d += static_cast<long long>(n) * n;
  return d;
}

AlgebraElement identity(const FDAlgebra& a) {
  AlgebraElement e;
  for (int n : a.blocks) e.blocks.push_back(Matrix::Identity(n, n));
  return e;
}

AlgebraElement zero(const FDAlgebra& a) {
  AlgebraElement e;
  for (int n : a.blocks) e.blocks.push_back(Matrix::Zero(n, n));
  return e;
}

AlgebraElement direct_sum(const AlgebraElement& p, const AlgebraElement& q) {
  if (p.blocks.size() != q.blocks.size()) throw ValidationError("direct_sum: block counts differ");
  AlgebraElement out;
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    const auto& a = p.blocks[i];
    const auto& b = q.blocks[i];
    Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    m.topLeftCorner(a.rows(), a.cols()) = a;
    m.bottomRightCorner(b.rows(), b.cols()) = b;
    out.blocks.push_back(std::move(m));
  }
  return out;
}

AlgebraElement conjugate(const AlgebraElement& p, const AlgebraElement& g) {
  if (p.blocks.size() != g.blocks.size()) throw ValidationError("conjugate: block counts differ");
  AlgebraElement out;
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    Eigen::FullPivLU<Matrix> lu(g.blocks[i]);
    if (!lu.isInvertible()) throw ValidationError("conjugate: g is not invertible in block " + std::to_string(i));
    out.blocks.push_back(g.blocks[i] * p.blocks[i] * lu.inverse());
  }
  return out;
}

K0Class& K0Class::operator+=(const K0Class& o) {
  if (o.ranks.size() != ranks.size()) throw ValidationError("K0 classes over different algebras");
  for (std::size_t i = 0; i < ranks.size(); ++i) ranks[i] += o.ranks[i];
  return *this;
}

K0Class& K0Class::operator-=(const K0Class& o) {
  if (o.ranks.size() != ranks.size()) throw ValidationError("K0 classes over different algebras");
  for (std::size_t i = 0; i < ranks.size(); ++i) ranks[i] -= o.ranks[i];
  return *this;
}

bool K0Class::is_effective() const {
  return std::all_of(ranks.begin(), ranks.end(), [](long long r) { return r >= 0; });
}

K0Class operator+(K0Class a, const K0Class& b) { return a += b; }
K0Class operator-(K0Class a, const K0Class& b) { return a -= b; }

std::size_t numerical_rank(const Matrix& m, const Tolerances& tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  const double scale = std::max(1.0, s.size() ? s(0) : 0.0);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) <= tol.tau * scale) continue;
    if (s(i) < tol.gap * scale)
      throw NumericalAmbiguity("singular value " + std::to_string(s(i)) + " lies in the rank gap");
    ++rank;
  }
  return rank;
}

namespace {

GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) { return {a.re - b.re, a.im - b.im}; }

GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) { return {a.re + b.re, a.im + b.im}; }

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  Rational n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}


constexpr long kMaxExactDenominator = 1L << 20;
constexpr Eigen::Index kMaxExactSize = 32;

std::optional<Rational> exact_double(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  Rational q(x);
  if (q.get_den() > kMaxExactDenominator) return std::nullopt;
  return q;
}

ExactMatrix exact_product(const ExactMatrix& a, const ExactMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  ExactMatrix c(n, std::vector<GaussianRational>(m, GaussianRational{0, 0}));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] = c[i][j] + a[i][l] * b[l][j];
    }
  return c;
}

int amplification(const AlgebraElement& p, const FDAlgebra& a) {
  if (p.blocks.size() != a.size())
    throw ValidationError("element has " + std::to_string(p.blocks.size()) + " blocks, algebra has " +
                          std::to_string(a.size()));
  int k = -1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& b = p.blocks[i];
    if (b.rows() != b.cols()) throw ValidationError("block " + std::to_string(i) + " is not square");
    if (b.rows() % a.blocks[i] != 0)
      throw ValidationError("block " + std::to_string(i) + " size is not a multiple of " + std::to_string(a.blocks[i]));
    int ki = static_cast<int>(b.rows() / a.blocks[i]);
    if (k >= 0 && ki != k) throw ValidationError("blocks use different matrix amplifications");
    k = ki;
  }
  return k;
}

std::size_t idempotent_rank(const Matrix& p, const Tolerances& tol) {
  if (p.rows() == 0) return 0;
  if (p.rows() <= kMaxExactSize) {
    if (auto e = to_exact(p); e && exact_product(*e, *e) == *e) return exact_rank(*e);
  }
  const double norm = p.norm();
  const double residual = (p * p - p).cwiseAbs().maxCoeff();
  if (residual > tol.tau * std::max(1.0, norm * norm))
    throw ValidationError("not an idempotent: max |p^2 - p| = " + std::to_string(residual));
  Eigen::ComplexEigenSolver<Matrix> es(p, false);
  const double scale = std::max(1.0, norm);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const Complex ev = es.eigenvalues()(i);
    const double d0 = std::abs(ev), d1 = std::abs(ev - 1.0);
    if (d1 <= tol.gap * scale) ++rank;
    else if (d0 > tol.gap * scale)
      throw NumericalAmbiguity("idempotent eigenvalue " + std::to_string(ev.real()) + "+" + std::to_string(ev.imag()) +
                               "i is not separated from 0 and 1");
  }
  return rank;
}

}  // namespace

std::size_t exact_rank(ExactMatrix m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c].is_zero()) continue;
      GaussianRational f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] - f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::optional<ExactMatrix> to_exact(const Matrix& m) {
  ExactMatrix out(m.rows(), std::vector<GaussianRational>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      auto re = exact_double(m(i, j).real());
      auto im = exact_double(m(i, j).imag());
      if (!re || !im) return std::nullopt;
      out[i][j] = {*re, *im};
    }
  return out;
}

K0Class k0_class(const AlgebraElement& p, const FDAlgebra& a, const Tolerances& tol) {
  amplification(p, a);
  K0Class x;
  for (const auto& b : p.blocks) x.ranks.push_back(static_cast<long long>(idempotent_rank(b, tol)));
  return x;
}

bool homotopic(const AlgebraElement& p, const AlgebraElement& q, const FDAlgebra& a, const Tolerances& tol) {
  return k0_class(p, a, tol) == k0_class(q, a, tol);
}

void validate(const FredholmModule& m, const FDAlgebra& a) {
  const std::size_t k = a.size();
  if (m.e0.size() != k || m.e1.size() != k || m.u.size() != k)
    throw ValidationError("Fredholm module needs one entry per block in e0, e1 and u");
  for (std::size_t i = 0; i < k; ++i) {
    if (m.e0[i] < 0 || m.e1[i] < 0) throw ValidationError("module multiplicities must be >= 0");
    if (m.u[i].rows() != m.e1[i] || m.u[i].cols() != m.e0[i])
      throw ValidationError("u block " + std::to_string(i) + " must be " + std::to_string(m.e1[i]) + "x" +
                            std::to_string(m.e0[i]));
  }
  if (!m.v.empty()) {
    if (m.v.size() != k) throw ValidationError("v needs one matrix per block");
    for (std::size_t i = 0; i < k; ++i)
      if (m.v[i].rows() != m.e0[i] || m.v[i].cols() != m.e1[i])
        throw ValidationError("v block " + std::to_string(i) + " has the wrong shape");
  }
}

StabilizedIndex fredholm_index_stabilized(const FredholmModule& m, const FDAlgebra& a, const Tolerances& tol) {
  validate(m, a);
  const std::size_t k = a.size();
  std::vector<std::size_t> rank(k);
  int n = 0;
  for (std::size_t i = 0; i < k; ++i) {
    rank[i] = numerical_rank(m.u[i], tol);
    const long long missing = m.e1[i] - static_cast<long long>(rank[i]);
    n = std::max<int>(n, static_cast<int>((missing + a.blocks[i] - 1) / a.blocks[i]));
  }

  StabilizedIndex out;
  out.n = n;
  for (std::size_t i = 0; i < k; ++i) {
    const Eigen::Index m1 = m.e1[i], m0 = m.e0[i], extra = static_cast<Eigen::Index>(n) * a.blocks[i];
    Matrix w = Matrix::Zero(m1, extra);
    const Eigen::Index missing = m1 - static_cast<Eigen::Index>(rank[i]);
    if (missing > 0) {
      Matrix left;
      if (m0 == 0) {
        left = Matrix::Identity(m1, m1);
      } else {
        Eigen::JacobiSVD<Matrix> svd(m.u[i], Eigen::ComputeFullU);
        left = svd.matrixU();
      }
      w.leftCols(missing) = left.rightCols(missing);
    }
    Matrix uw(m1, m0 + extra);
    uw << m.u[i], w;
    const auto r = static_cast<long long>(numerical_rank(uw, tol));
    if (r != m1) throw std::logic_error("stabilized operator is not surjective in block " + std::to_string(i));
    const long long kernel = m0 + extra - r;
    out.kernel.push_back(kernel);
    out.index.ranks.push_back(kernel - extra);
  }
  return out;
}

K0Class fredholm_index(const FredholmModule& m, const FDAlgebra& a, const Tolerances& tol) {
  return fredholm_index_stabilized(m, a, tol).index;
}

K0Class fredholm_index_naive(const FredholmModule& m, const FDAlgebra& a, const Tolerances& tol) {
  validate(m, a);
  K0Class x;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto r = static_cast<long long>(numerical_rank(m.u[i], tol));
    x.ranks.push_back((m.e0[i] - r) - (m.e1[i] - r));
  }
  return x;
}

namespace {

Matrix random_unitary(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(n, n);
}

}  // namespace

std::pair<FDAlgebra, FredholmModule> random_fredholm_module(std::uint64_t seed, int max_blocks, int max_size) {
  if (max_blocks < 1 || max_size < 1) throw ValidationError("random module bounds must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> nblocks(1, max_blocks), size(1, max_size), mult(0, max_size);
  std::uniform_real_distribution<double> sigma(0.1, 10.0);

  std::vector<int> blocks(nblocks(rng));
  for (int& b : blocks) b = size(rng);
  FDAlgebra a(blocks);
  FredholmModule m;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const int m0 = mult(rng), m1 = mult(rng);
    const int r = std::uniform_int_distribution<int>(0, std::min(m0, m1))(rng);
    Matrix u = Matrix::Zero(m1, m0), v = Matrix::Zero(m0, m1);
    if (r > 0) {
      Matrix uu = random_unitary(rng, m1), vv = random_unitary(rng, m0);
      Eigen::VectorXd s(r);
      for (int j = 0; j < r; ++j) s(j) = sigma(rng);
      u = uu.leftCols(r) * s.cast<Complex>().asDiagonal() * vv.leftCols(r).adjoint();
      v = vv.leftCols(r) * s.cwiseInverse().cast<Complex>().asDiagonal() * uu.leftCols(r).adjoint();
    }
    m.e0.push_back(m0);
    m.e1.push_back(m1);
    m.u.push_back(std::move(u));
    m.v.push_back(std::move(v));
  }
  return {std::move(a), std::move(m)};
}

void validate_morphism(const BlockMorphism& theta, const FDAlgebra& a, const FDAlgebra& b) {
  if (theta.size() != b.size()) throw ValidationError("morphism needs one row per block of the target");
  for (std::size_t j = 0; j < theta.size(); ++j) {
    if (theta[j].size() != a.size()) throw ValidationError("morphism needs one column per block of the source");
    long long total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (theta[j][i] < 0) throw ValidationError("morphism multiplicities must be >= 0");
      total += theta[j][i] * a.blocks[i];
    }
    if (total != b.blocks[j])
      throw ValidationError("morphism is not unital: target block " + std::to_string(j) + " has size " +
                            std::to_string(b.blocks[j]) + " but receives " + std::to_string(total));
  }
}

K0Class pushforward(const BlockMorphism& theta, const K0Class& x, const FDAlgebra& a, const FDAlgebra& b) {
  validate_morphism(theta, a, b);
  if (x.ranks.size() != a.size()) throw ValidationError("class does not live on the source algebra");
  K0Class y;
  for (const auto& row : theta) {
    long long s = 0;
    for (std::size_t i = 0; i < row.size(); ++i) s += row[i] * x.ranks[i];
    y.ranks.push_back(s);
  }
  return y;
}

BlockMorphism compose(const BlockMorphism& outer, const BlockMorphism& inner) {
  const std::size_t mid = inner.size();
  const std::size_t cols = mid ? inner[0].size() : 0;
  BlockMorphism out(outer.size(), std::vector<long long>(cols, 0));
  for (std::size_t j = 0; j < outer.size(); ++j) {
    if (outer[j].size() != mid) throw ValidationError("compose: shape mismatch");
    for (std::size_t l = 0; l < mid; ++l)
      for (std::size_t i = 0; i < cols; ++i) out[j][i] += outer[j][l] * inner[l][i];
  }
  return out;
}

FiniteGroup make_group(std::vector<std::vector<int>> table, std::string name) {
  const std::size_t n = table.size();
  if (n == 0) throw ValidationError("group table is empty");
  if (n > kMaxGroupOrder) throw ValidationError("group order exceeds " + std::to_string(kMaxGroupOrder));
  for (const auto& row : table) {
    if (row.size() != n) throw ValidationError("group table is not square");
    std::vector<bool> seen(n, false);
    for (int x : row) {
      if (x < 0 || static_cast<std::size_t>(x) >= n) throw ValidationError("group table entry out of range");
      if (seen[x]) throw ValidationError("group table row is not a permutation (no inverses)");
      seen[x] = true;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<bool> seen(n, false);
    for (std::size_t r = 0; r < n; ++r) {
      if (seen[table[r][c]]) throw ValidationError("group table column is not a permutation (no inverses)");
      seen[table[r][c]] = true;
    }
  }
  int e = -1;
  for (std::size_t g = 0; g < n && e < 0; ++g) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = table[g][x] == static_cast<int>(x) && table[x][g] == static_cast<int>(x);
    if (ok) e = static_cast<int>(g);
  }
  if (e < 0) throw ValidationError("group table has no identity");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto& row = table[table[a][b]];
      const auto& ta = table[a];
      const auto& tb = table[b];
      for (std::size_t c = 0; c < n; ++c)
        if (row[c] != ta[tb[c]]) throw ValidationError("group table is not associative");
    }
  FiniteGroup g;
  g.name = std::move(name);
  g.identity = e;
  g.inverse.resize(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] == e) g.inverse[a] = static_cast<int>(b);
  g.table = std::move(table);
  return g;
}

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw ValidationError("cyclic group order must be >= 1");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return make_group(std::move(t), "z" + std::to_string(n));
}

FiniteGroup symmetric_group(int n) {
  if (n < 1 || n > 6) throw ValidationError("symmetric group degree must be in 1..6");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> t(perms.size(), std::vector<int>(perms.size()));
  for (std::size_t a = 0; a < perms.size(); ++a)
    for (std::size_t b = 0; b < perms.size(); ++b) {
      std::vector<int> c(n);
      for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = index.at(c);
    }
  return make_group(std::move(t), "s" + std::to_string(n));
}

FiniteGroup dihedral_group(int n) {
  if (n < 1) throw ValidationError("dihedral group parameter must be >= 1");
  // r^k s^e has index k + n e; s r = r^-1 s.
  const int order = 2 * n;
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y) {
      const int a = x % n, e = x / n, b = y % n, f = y / n;
      const int k = ((a + (e ? -b : b)) % n + n) % n;
      t[x][y] = k + n * ((e + f) % 2);
    }
  return make_group(std::move(t), "d" + std::to_string(n));
}

FiniteGroup quaternion_group() {
  // Units 1, i, j, k with sign; index = unit + 4 * (sign < 0).
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const int s = (x < 4 ? 1 : -1) * (y < 4 ? 1 : -1) * sign[x % 4][y % 4];
      t[x][y] = unit[x % 4][y % 4] + (s < 0 ? 4 : 0);
    }
  return make_group(std::move(t), "q8");
}

FiniteGroup trivial_group() { return make_group({{0}}, "trivial"); }

FiniteGroup group_from_name(const std::string& raw) {
  std::string name;
  for (char c : raw) name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (name == "trivial" || name == "1") return trivial_group();
  if (name == "q8") return quaternion_group();
  auto number_after = [&](std::size_t prefix) -> std::optional<int> {
    if (name.size() <= prefix) return std::nullopt;
    const std::string digits = name.substr(prefix);
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      return std::nullopt;
    if (digits.size() > 4) throw ValidationError("group parameter too large in '" + raw + "'");
    return std::stoi(digits);
  };
  if (name.rfind("cyclic", 0) == 0) {
    if (auto n = number_after(6)) return cyclic_group(*n);
  }
  if (name[0] == 'z' || name[0] == 'c') {
    if (auto n = number_after(1)) return cyclic_group(*n);
  }
  if (name[0] == 's') {
    if (auto n = number_after(1)) return symmetric_group(*n);
  }
  if (name[0] == 'd') {
    if (auto n = number_after(1)) return dihedral_group(*n);
  }
  throw ValidationError("unknown group '" + raw + "' (try z<n>, s3, s4, d4, q8, trivial)");
}

std::vector<std::string> group_catalog() { return {"trivial", "z<n>", "s3", "s4", "d4", "q8"}; }

FiniteGroup group_from_json(const nlohmann::json& j) {
  if (j.is_string()) return group_from_name(j.get<std::string>());
  const nlohmann::json& t = j.is_object() ? j.at("table") : j;
  if (!t.is_array()) throw ValidationError("group table must be an array of arrays");
  std::vector<std::vector<int>> table;
  for (const auto& row : t) {
    if (!row.is_array()) throw ValidationError("group table must be an array of arrays");
    table.emplace_back();
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw ValidationError("group table entries must be integers");
      table.back().push_back(x.get<int>());
    }
  }
  return make_group(std::move(table), j.is_object() ? j.value("name", std::string("table")) : "table");
}

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g) {
  const int n = static_cast<int>(g.order());
  std::vector<int> assigned(n, -1);
  std::vector<std::vector<int>> classes;
  for (int x = 0; x < n; ++x) {
    if (assigned[x] >= 0) continue;
    std::vector<int> cls;
    for (int h = 0; h < n; ++h) {
      const int y = g.mul(g.mul(h, x), g.inverse[h]);
      if (assigned[y] < 0) {
        assigned[y] = static_cast<int>(classes.size());
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

GroupElement delta(const FiniteGroup& g, int x) {
  GroupElement f = GroupElement::Zero(static_cast<Eigen::Index>(g.order()));
  f(x) = 1.0;
  return f;
}

GroupElement convolve(const FiniteGroup& g, const GroupElement& f, const GroupElement& h) {
  const auto n = static_cast<Eigen::Index>(g.order());
  if (f.size() != n || h.size() != n) throw ValidationError("convolve: function size differs from group order");
  GroupElement out = GroupElement::Zero(n);
  for (Eigen::Index y = 0; y < n; ++y) {
    if (f(y) == Complex(0)) continue;
    const auto& row = g.table[y];
    for (Eigen::Index z = 0; z < n; ++z) out(row[z]) += f(y) * h(z);
  }
  return out / static_cast<double>(n);
}

namespace {

std::optional<FiniteGroupAlgebra> try_wedderburn(const FiniteGroup& g, std::mt19937_64& rng, const Tolerances& tol) {
  const int n = static_cast<int>(g.order());
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  auto classes = conjugacy_classes(g);
  std::vector<int> class_of(n);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int x : classes[c]) class_of[x] = static_cast<int>(c);

  // Random self-adjoint central element acting on the left regular representation.
  std::vector<Complex> w(classes.size());
  for (auto& z : w) z = Complex(uni(rng), uni(rng));
  Matrix central = Matrix::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    const Complex c = w[class_of[x]] + std::conj(w[class_of[g.inverse[x]]]);
    for (int k = 0; k < n; ++k) central(g.mul(x, k), k) += c;
  }
  central = (central + central.adjoint()).eval() * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> es(central);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());

  std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;  // [begin, end)
  Eigen::Index begin = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i < n) {
      const double d = ev(i) - ev(i - 1);
      if (d <= tol.tau * scale) continue;
      if (d < tol.gap * scale) return std::nullopt;
    }
    clusters.emplace_back(begin, i);
    begin = i;
  }
  if (clusters.size() != classes.size()) return std::nullopt;

  struct Block {
    int dim;
    std::vector<Matrix> rep;
    std::vector<Complex> chi;
  };
  std::vector<Block> blocks;
  for (const auto& [b, e] : clusters) {
    const Eigen::Index big = e - b;
    const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(big))));
    if (static_cast<Eigen::Index>(d) * d != big) return std::nullopt;
    Matrix basis = es.eigenvectors().middleCols(b, big);

    // Minimal left ideal: top eigenspace of a random Hermitian element of the
    // right regular action, which commutes with the left one.
    Matrix right = Matrix::Zero(n, n);
    std::vector<Complex> t(n);
    for (auto& z : t) z = Complex(uni(rng), uni(rng));
    for (int x = 0; x < n; ++x) {
      const Complex h = t[x] + std::conj(t[g.inverse[x]]);
      const int xi = g.inverse[x];
      for (int k = 0; k < n; ++k) right(g.mul(k, xi), k) += h;
    }
    Matrix restricted = basis.adjoint() * right * basis;
    restricted = (restricted + restricted.adjoint()).eval() * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> rs(restricted);
    const Eigen::VectorXd& rv = rs.eigenvalues();
    const double rscale = std::max(1.0, rv.cwiseAbs().maxCoeff());
    if (rv(big - 1) - rv(big - d) > tol.tau * rscale) return std::nullopt;
    if (big > d && rv(big - d) - rv(big - d - 1) < tol.gap * rscale) return std::nullopt;
    Matrix ideal = basis * rs.eigenvectors().rightCols(d);

    Block blk;
    blk.dim = d;
    for (int x = 0; x < n; ++x) {
      Matrix shifted(n, d);
      for (int k = 0; k < n; ++k) shifted.row(g.mul(x, k)) = ideal.row(k);
      Matrix pi = ideal.adjoint() * shifted;
      blk.chi.push_back(pi.trace());
      blk.rep.push_back(std::move(pi));
    }
    blocks.push_back(std::move(blk));
  }

  auto key = [](const Block& blk) {
    std::vector<std::pair<long long, long long>> k;
    for (const auto& c : blk.chi) k.emplace_back(std::llround(c.real() * 1e6), std::llround(c.imag() * 1e6));
    return k;
  };
  std::sort(blocks.begin(), blocks.end(), [&](const Block& a, const Block& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return key(a) > key(b);
  });

  FiniteGroupAlgebra cg;
  cg.group = g;
  std::vector<int> dims;
  for (auto& blk : blocks) {
    dims.push_back(blk.dim);
    cg.irreps.push_back(std::move(blk.rep));
    cg.characters.push_back(std::move(blk.chi));
  }
  cg.algebra = FDAlgebra(dims);
  return cg;
}

}  // namespace

FiniteGroupAlgebra wedderburn(const FiniteGroup& g, std::uint64_t seed, const Tolerances& tol) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt)
    if (auto cg = try_wedderburn(g, rng, tol)) return *std::move(cg);
  throw NumericalAmbiguity("Wedderburn decomposition of '" + g.name + "' did not separate after 8 random draws");
}

AlgebraElement to_blocks(const FiniteGroupAlgebra& cg, const GroupElement& f) {
  const auto n = static_cast<Eigen::Index>(cg.group.order());
  if (f.size() != n) throw ValidationError("function size differs from group order");
  AlgebraElement out;
  for (std::size_t b = 0; b < cg.irreps.size(); ++b) {
    const int d = cg.algebra.blocks[b];
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index x = 0; x < n; ++x)
      if (f(x) != Complex(0)) m += f(x) * cg.irreps[b][x];
    out.blocks.push_back(m / static_cast<double>(n));
  }
  return out;
}

GroupElement from_blocks(const FiniteGroupAlgebra& cg, const AlgebraElement& a) {
  amplification(a, cg.algebra);
  for (std::size_t b = 0; b < a.blocks.size(); ++b)
    if (a.blocks[b].rows() != cg.algebra.blocks[b]) throw ValidationError("from_blocks needs amplification 1");
  const auto n = static_cast<Eigen::Index>(cg.group.order());
  GroupElement f = GroupElement::Zero(n);
  for (Eigen::Index x = 0; x < n; ++x)
    for (std::size_t b = 0; b < a.blocks.size(); ++b)
      f(x) += static_cast<double>(cg.algebra.blocks[b]) * (cg.irreps[b][x].adjoint() * a.blocks[b]).trace();
  return f;
}

GroupElement ds_idempotent(const FiniteGroupAlgebra& cg, std::size_t block, const Vector& v, const Tolerances& tol) {
  if (block >= cg.irreps.size()) throw ValidationError("block index out of range");
  const int d = cg.algebra.blocks[block];
  if (v.size() != d) throw ValidationError("vector dimension differs from the block dimension");
  if (std::abs(v.norm() - 1.0) > tol.tau) throw ValidationError("ds_idempotent needs a unit vector");
  const auto n = static_cast<Eigen::Index>(cg.group.order());
  GroupElement p(n);
  for (Eigen::Index x = 0; x < n; ++x) p(x) = static_cast<double>(d) * std::conj(v.dot(cg.irreps[block][x] * v));
  return p;
}

Complex trace(const FiniteGroup& g, const GroupElement& f) {
  if (f.size() != static_cast<Eigen::Index>(g.order())) throw ValidationError("function size differs from group order");
  return f(g.identity);
}

TracePairing trace_pairing(const K0Class& x, const FiniteGroupAlgebra& cg) {
  if (x.ranks.size() != cg.algebra.size()) throw ValidationError("class does not live on this group algebra");
  TracePairing t{0, !x.is_effective()};
  for (std::size_t b = 0; b < x.ranks.size(); ++b) t.value += x.ranks[b] * cg.algebra.blocks[b];
  return t;
}

long long spectral_pairing(std::size_t block, const K0Class& x) {
  if (block >= x.ranks.size()) throw ValidationError("block index out of range");
  return x.ranks[block];
}

namespace {

double tidy(double x) {
  const double r = std::round(x * 1e12) / 1e12;
  return r == 0.0 ? 0.0 : r;
}

Complex entry_from_json(const nlohmann::json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2) return {e[0].get<double>(), e[1].get<double>()};
  if (e.is_object()) return {e.value("re", 0.0), e.value("im", 0.0)};
  throw ValidationError("matrix entries must be numbers, [re, im] or {re, im}");
}

Matrix matrix_from_json(const nlohmann::json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array()) throw ValidationError("matrix must be an array of rows");
  if (static_cast<Eigen::Index>(j.size()) != rows) throw ValidationError("matrix has the wrong number of rows");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols)
      throw ValidationError("matrix row has the wrong length");
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = entry_from_json(j[i][c]);
  }
  return m;
}

}  // namespace

nlohmann::json to_json(const K0Class& x) { return {{"ranks", x.ranks}}; }

nlohmann::json to_json(const FDAlgebra& a) { return {{"blocks", a.blocks}}; }

nlohmann::json to_json(const FiniteGroupAlgebra& cg) {
  nlohmann::json chars = nlohmann::json::array();
  for (const auto& row : cg.characters) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row) r.push_back({tidy(c.real()), tidy(c.imag())});
    chars.push_back(std::move(r));
  }
  return {{"group", cg.group.name},
          {"order", cg.group.order()},
          {"identity", cg.group.identity},
          {"blocks", cg.algebra.blocks},
          {"characters", std::move(chars)}};
}

AlgebraElement element_from_json(const nlohmann::json& j, const FDAlgebra& a) {
  const nlohmann::json& blocks = j.is_object() ? j.at("blocks") : j;
  if (!blocks.is_array() || blocks.size() != a.size()) throw ValidationError("element needs one matrix per block");
  AlgebraElement p;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto rows = static_cast<Eigen::Index>(blocks[i].size());
    p.blocks.push_back(matrix_from_json(blocks[i], rows, rows));
  }
  amplification(p, a);
  return p;
}

FredholmModule fredholm_from_json(const nlohmann::json& j) {
  FredholmModule m;
  m.e0 = j.at("e0").get<std::vector<int>>();
  m.e1 = j.at("e1").get<std::vector<int>>();
  const auto& u = j.at("u");
  if (!u.is_array() || u.size() != m.e0.size() || m.e1.size() != m.e0.size())
    throw ValidationError("e0, e1 and u must have one entry per block");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (m.e0[i] < 0 || m.e1[i] < 0) throw ValidationError("module multiplicities must be >= 0");
    if (m.e1[i] == 0) {
      m.u.push_back(Matrix(0, m.e0[i]));
      continue;
    }
    m.u.push_back(matrix_from_json(u[i], m.e1[i], m.e0[i]));
  }
  return m;
}

}  // namespace dirac_atlas::ktheory
