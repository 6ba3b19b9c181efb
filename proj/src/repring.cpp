#include "dirac_atlas/repring.hpp"

#include <algorithm>

#include "dirac_atlas/error.hpp"

namespace dirac_atlas::repring {

using rootsys::inner;

VirtualCharacter::VirtualCharacter(RootSystemPtr ambient) : ambient_(std::move(ambient)) {
  if (!ambient_) throw ValidationError("character needs an ambient root system");
}

Multiplicity VirtualCharacter::multiplicity(const Weight& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? 0 : it->second;
}

void VirtualCharacter::add(const Weight& w, Multiplicity m) {
  if (m == 0) return;
  if (w.dim() != ambient_->ambient_dim()) throw ValidationError("weight dimension does not match the character ambient");
  auto [it, inserted] = terms_.try_emplace(w, m);
  if (!inserted) {
    it->second += m;
    if (it->second == 0) terms_.erase(it);
  }
}

void VirtualCharacter::check_ambient(const VirtualCharacter& other) const {
  if (ambient_ != other.ambient_ && !same_ambient(*ambient_, *other.ambient_))
    throw ValidationError("characters live on different ambient root systems");
}

VirtualCharacter& VirtualCharacter::operator+=(const VirtualCharacter& other) {
  check_ambient(other);
  for (const auto& [w, m] : other.terms_) add(w, m);
  return *this;
}

VirtualCharacter& VirtualCharacter::operator-=(const VirtualCharacter& other) {
  check_ambient(other);
  for (const auto& [w, m] : other.terms_) add(w, -m);
  return *this;
}

VirtualCharacter& VirtualCharacter::operator*=(Multiplicity c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, m] : terms_) m *= c;
  return *this;
}

VirtualCharacter VirtualCharacter::operator-() const {
  VirtualCharacter out(*this);
  out *= -1;
  return out;
}

bool operator==(const VirtualCharacter& a, const VirtualCharacter& b) {
  return same_ambient(*a.ambient_, *b.ambient_) && a.terms_ == b.terms_;
}

bool same_ambient(const RootSystem& a, const RootSystem& b) {
  if (&a == &b) return true;
  if (a.form() != b.form() || a.rank() != b.rank()) return false;
  return std::equal(a.simple_roots().begin(), a.simple_roots().end(), b.simple_roots().begin());
}

VirtualCharacter trivial_character(RootSystemPtr ambient) {
  VirtualCharacter chi(ambient);
  chi.add(Weight(ambient->ambient_dim()), 1);
  return chi;
}

std::map<Weight, Multiplicity> dominant_weight_multiplicities(const Weight& mu, const RootSystem& rs) {
  if (mu.dim() != rs.ambient_dim()) throw ValidationError("highest weight has wrong dimension");
  if (!rootsys::is_dominant(mu, rs)) throw ValidationError("highest weight " + mu.str() + " is not dominant");
  if (!rootsys::is_integral(mu, rs)) throw ValidationError("highest weight " + mu.str() + " is not integral for the simple coroots");

  const auto simple = rs.simple_roots();
  const std::size_t r = simple.size();

  // Dominant weights of V(mu) are exactly the dominant nu with mu - nu in Q+,
  // and every weight lies above the lowest weight w0(mu).
  Weight lowest = -rootsys::dominant_conjugate(-mu, rs);
  std::vector<long> box;
  for (const auto& c : rs.simple_coordinates(mu - lowest)) box.push_back(c.get_num().get_si());

  std::vector<Weight> dominant;
  std::vector<long> c(r, 0);
  while (true) {
    Weight nu = mu;
    for (std::size_t i = 0; i < r; ++i) nu -= simple[i] * Rational(c[i]);
    if (rootsys::is_dominant(nu, rs)) dominant.push_back(std::move(nu));
    std::size_t i = 0;
    while (i < r && c[i] == box[i]) c[i++] = 0;
    if (i == r) break;
    ++c[i];
  }

  const Weight& rho = rs.rho();
  auto shifted_norm = [&](const Weight& w) {
    Weight s = w + rho;
    return inner(s, s, rs);
  };
  std::vector<std::pair<Rational, Weight>> order;
  for (auto& w : dominant) order.emplace_back(shifted_norm(w), std::move(w));
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });

  const Rational top = shifted_norm(mu);
  std::map<Weight, Multiplicity> mult;
  for (const auto& [norm, nu] : order) {
    if (nu == mu) {
      mult[nu] = 1;
      continue;
    }
    Rational sum = 0;
    for (const auto& alpha : rs.positive_roots()) {
      for (long k = 1;; ++k) {
        Weight up = nu + alpha * Rational(k);
        auto it = mult.find(rootsys::dominant_conjugate(up, rs));
        if (it == mult.end() || it->second == 0) break;
        sum += Rational(static_cast<long>(it->second)) * inner(up, alpha, rs);
      }
    }
    Rational m = 2 * sum / (top - norm);
    if (!is_integer(m) || m < 0) throw std::logic_error("Freudenthal recursion produced " + to_string(m));
    mult[nu] = m.get_num().get_si();
  }
  for (auto it = mult.begin(); it != mult.end();) {
    if (it->second == 0) it = mult.erase(it);
    else ++it;
  }
  return mult;
}

VirtualCharacter irr_character(const IrrLabel& mu, RootSystemPtr ambient) {
  VirtualCharacter chi(ambient);
  for (const auto& [nu, m] : dominant_weight_multiplicities(mu.highest_weight, *ambient))
    for (const auto& w : rootsys::weyl_orbit(nu, *ambient)) chi.add(w, m);
  return chi;
}

Rational weyl_dimension(const Weight& mu, const RootSystem& rs) {
  Weight shifted = mu + rs.rho();
  Rational d = 1;
  for (const auto& alpha : rs.positive_roots()) d *= inner(shifted, alpha, rs) / inner(rs.rho(), alpha, rs);
  return d;
}

Multiplicity dimension(const VirtualCharacter& chi) {
  Multiplicity d = 0;
  for (const auto& [w, m] : chi.terms()) d += m;
  return d;
}

VirtualCharacter product(const VirtualCharacter& a, const VirtualCharacter& b) {
  if (a.ambient_ptr() != b.ambient_ptr() && !same_ambient(a.ambient(), b.ambient()))
    throw ValidationError("product of characters on different ambients");
  VirtualCharacter out(a.ambient_ptr());
  for (const auto& [wa, ma] : a.terms())
    for (const auto& [wb, mb] : b.terms()) out.add(wa + wb, ma * mb);
  return out;
}

VirtualCharacter dual(const VirtualCharacter& chi) {
  VirtualCharacter out(chi.ambient_ptr());
  for (const auto& [w, m] : chi.terms()) out.add(-w, m);
  return out;
}

bool is_weyl_invariant(const VirtualCharacter& chi) {
  const auto& rs = chi.ambient();
  for (const auto& [w, m] : chi.terms())
    for (const auto& alpha : rs.simple_roots())
      if (chi.multiplicity(rootsys::reflect(w, alpha, rs)) != m) return false;
  return true;
}

std::vector<std::pair<IrrLabel, Multiplicity>> decompose(const VirtualCharacter& chi) {
  if (!is_weyl_invariant(chi)) throw ValidationError("character is not Weyl-invariant");
  const auto& rs = chi.ambient();
  VirtualCharacter work = chi;
  std::vector<std::pair<IrrLabel, Multiplicity>> parts;
  while (!work.is_zero()) {
    // A dominant support weight with maximal |nu + rho|^2 is a highest weight.
    const Weight* best = nullptr;
    Rational best_norm;
    for (const auto& [w, m] : work.terms()) {
      if (!rootsys::is_dominant(w, rs)) continue;
      Weight s = w + rs.rho();
      Rational n = inner(s, s, rs);
      if (!best || n > best_norm || (n == best_norm && graded_lex_less(*best, w))) {
        best = &w;
        best_norm = n;
      }
    }
    if (!best) throw std::logic_error("Weyl-invariant character without dominant support");
    Weight top = *best;
    Multiplicity m = work.multiplicity(top);
    work -= irr_character(IrrLabel{top}, chi.ambient_ptr()) * m;
    parts.emplace_back(IrrLabel{std::move(top)}, m);
  }
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
    return graded_lex_less(a.first.highest_weight, b.first.highest_weight);
  });
  return parts;
}

VirtualCharacter resum(const std::vector<std::pair<IrrLabel, Multiplicity>>& parts, RootSystemPtr ambient) {
  VirtualCharacter out(ambient);
  for (const auto& [label, m] : parts) out += irr_character(label, ambient) * m;
  return out;
}

Multiplicity invariant_multiplicity(const VirtualCharacter& chi) {
  const Weight zero(chi.ambient().ambient_dim());
  for (const auto& [label, m] : decompose(chi))
    if (label.highest_weight == zero) return m;
  return 0;
}

nlohmann::json to_json(const VirtualCharacter& chi) {
  nlohmann::json j;
  j["ambient"] = rootsys::to_json(chi.ambient());
  j["terms"] = nlohmann::json::array();
  for (const auto& [w, m] : chi.terms()) j["terms"].push_back({{"weight", rootsys::to_json(w)}, {"mult", m}});
  return j;
}

VirtualCharacter character_from_json(const nlohmann::json& j, RootSystemPtr ambient) {
  const nlohmann::json& terms = j.is_array() ? j : j.at("terms");
  VirtualCharacter chi(ambient);
  for (const auto& t : terms) chi.add(rootsys::weight_from_json(t.at("weight")), t.at("mult").get<Multiplicity>());
  return chi;
}

}  // namespace dirac_atlas::repring
