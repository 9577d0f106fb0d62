#pragma once

// Finite reflection groups realized through their root systems.
//
// Crystallographic types use integer root coordinates and exact rational
// matrices; non-crystallographic dihedral groups exist only over double.
// A RootSystem is immutable once built.

#include "field.hpp"
#include "linalg.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dunklkit {

class UnsupportedGroup : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an exact realization is requested for a group that only has a
/// floating one.
class NotExact : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class F>
using Vec = std::vector<F>;

template <class F>
F dot(const Vec<F>& a, const Vec<F>& b) {
  F s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class F>
Vec<F> reflect(const Vec<F>& alpha, const Vec<F>& v) {
  const F c = F(2) * dot(alpha, v) / dot(alpha, alpha);
  Vec<F> out = v;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] -= c * alpha[i];
  return out;
}

template <class F>
Matrix<F> reflection_matrix(const Vec<F>& alpha) {
  const std::size_t n = alpha.size();
  Matrix<F> m = Matrix<F>::identity(n);
  const F nn = dot(alpha, alpha);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) -= F(2) * alpha[i] * alpha[j] / nn;
  return m;
}

template <class F>
struct GroupElement {
  Matrix<F> matrix;
  std::vector<int> word;  // indices into RootSystem::simple()
};

/// One irreducible factor of a product group, living on coordinates
/// [offset, offset + dim).
struct Component {
  std::string tag;
  std::size_t offset = 0;
  std::size_t dim = 0;
};

namespace detail {

/// Lookup key that identifies equal vectors (exactly, or to ~1e-9 for doubles).
template <class F>
std::vector<std::string> vector_key(const std::vector<F>& v) {
  std::vector<std::string> key;
  key.reserve(v.size());
  for (const auto& x : v) {
    if constexpr (FieldTraits<F>::exact) {
      key.push_back(to_string(x));
    } else {
      long long r = std::llround(x * 1e9);
      key.push_back(std::to_string(r == 0 ? 0 : r));
    }
  }
  return key;
}

struct Spec {
  std::string tag;  // canonical, e.g. "b2", "i2:5"
  char family = 0;  // 'z', 'a', 'b', 'd', 'i'
  int n = 0;        // rank, or m for dihedral
};

inline int parse_int(const std::string& s, const std::string& whole) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw UnsupportedGroup("unsupported group tag '" + whole + "'");
  return std::stoi(s);
}

inline Spec parse_factor(const std::string& raw) {
  std::string t;
  for (char c : raw) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  Spec s;
  if (t == "z2") return {"z2", 'z', 1};
  if (t.rfind("i2:", 0) == 0) {
    s = {"", 'i', parse_int(t.substr(3), raw)};
    if (s.n < 3) throw UnsupportedGroup("dihedral group needs m >= 3");
    s.tag = "i2:" + std::to_string(s.n);
    return s;
  }
  if (t.size() >= 2 && (t[0] == 'a' || t[0] == 'b' || t[0] == 'd')) {
    std::string rest = t.substr(1);
    if (rest.size() > 1 && rest[0] == 'n' && rest[1] == ':') rest = rest.substr(2);
    s = {"", t[0], parse_int(rest, raw)};
    if (s.n < 1 || (s.family == 'b' && s.n < 2) || (s.family == 'd' && s.n < 3))
      throw UnsupportedGroup("rank out of range in '" + raw + "'");
    s.tag = std::string(1, s.family) + std::to_string(s.n);
    return s;
  }
  throw UnsupportedGroup("unsupported group tag '" + raw + "'");
}

inline std::vector<Spec> parse_tag(const std::string& tag) {
  std::vector<Spec> out;
  std::size_t start = 0;
  while (true) {
    std::size_t x = tag.find('x', start);
    out.push_back(parse_factor(tag.substr(start, x == std::string::npos ? std::string::npos : x - start)));
    if (x == std::string::npos) break;
    start = x + 1;
  }
  return out;
}

inline bool exact_realizable(const Spec& s) {
  return s.family != 'i' || s.n == 3 || s.n == 4 || s.n == 6;
}

template <class F>
std::vector<Vec<F>> factor_roots(const Spec& s, std::size_t& dim) {
  std::vector<Vec<F>> r;
  auto unit = [&](std::size_t i) {
    Vec<F> v(dim, F(0));
    v[i] = F(1);
    return v;
  };
  auto add = [](Vec<F> a, const Vec<F>& b, int sign) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += sign > 0 ? b[i] : F(-b[i]);
    return a;
  };
  auto neg = [](Vec<F> a) {
    for (auto& x : a) x = -x;
    return a;
  };
  auto type_a = [&](std::size_t n) {
    dim = n + 1;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        if (i != j) r.push_back(add(unit(i), unit(j), -1));
  };
  auto type_b = [&](std::size_t n) {
    dim = n;
    for (std::size_t i = 0; i < n; ++i) {
      r.push_back(unit(i));
      r.push_back(neg(unit(i)));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (int si : {1, -1})
          for (int sj : {1, -1}) {
            Vec<F> v(n, F(0));
            v[i] = F(si);
            v[j] = F(sj);
            r.push_back(v);
          }
  };
  switch (s.family) {
    case 'z':
      dim = 1;
      r = {Vec<F>{F(1)}, Vec<F>{F(-1)}};
      break;
    case 'a':
      if (s.n == 1) {
        dim = 1;
        r = {Vec<F>{F(1)}, Vec<F>{F(-1)}};
      } else {
        type_a(s.n);
      }
      break;
    case 'b':
      type_b(s.n);
      break;
    case 'd':
      dim = s.n;
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j)
          for (int si : {1, -1})
            for (int sj : {1, -1}) {
              Vec<F> v(dim, F(0));
              v[i] = F(si);
              v[j] = F(sj);
              r.push_back(v);
            }
      break;
    case 'i':
      if (s.n == 3) {
        type_a(2);
      } else if (s.n == 4) {
        type_b(2);
      } else if (s.n == 6) {
        type_a(2);  // short roots e_i - e_j
        for (std::size_t i = 0; i < 3; ++i) {
          Vec<F> v(3, F(-1));
          v[i] = F(2);
          r.push_back(v);
          r.push_back(neg(v));
        }
      } else {
        if constexpr (FieldTraits<F>::exact) {
          throw NotExact("I2(" + std::to_string(s.n) + ") has no exact realization; use the floating layer");
        } else {
          dim = 2;
          for (int j = 0; j < 2 * s.n; ++j) {
            const double t = j * std::numbers::pi / s.n;
            r.push_back(Vec<F>{std::cos(t), std::sin(t)});
          }
        }
      }
      break;
    default:
      throw UnsupportedGroup("unsupported group family");
  }
  return r;
}

}  // namespace detail

/// Orbit-constant multiplicity, one value per orbit of the root system.
template <class F>
struct Multiplicity {
  std::vector<F> per_orbit;

  bool regular() const {
    for (const auto& v : per_orbit)
      if (v < 0) return false;
    return true;
  }
  Multiplicity plus_one(std::size_t orbit) const {
    Multiplicity m = *this;
    m.per_orbit.at(orbit) += F(1);
    return m;
  }
  template <class G>
  Multiplicity<G> convert() const {
    Multiplicity<G> m;
    for (const auto& v : per_orbit) m.per_orbit.push_back(coerce_scalar<G>(v));
    return m;
  }

 private:
  template <class G>
  static G coerce_scalar(const F& v) {
    if constexpr (std::is_same_v<F, G>)
      return v;
    else if constexpr (std::is_same_v<F, Rational>)
      return G(v.template convert_to<double>());
    else
      return G(v);
  }
};

template <class F>
class RootSystem {
 public:
  using Traits = FieldTraits<F>;

  /// Tags: "z2", "a2", "an:3", "b2", "bn:3", "d4", "i2:5", products "a1xa1".
  static RootSystem build(const std::string& tag) {
    auto specs = detail::parse_tag(tag);
    RootSystem rs;
    std::size_t offset = 0;
    std::vector<std::pair<std::vector<Vec<F>>, std::size_t>> parts;
    for (const auto& s : specs) {
      if constexpr (Traits::exact) {
        if (!detail::exact_realizable(s))
          throw NotExact(s.tag + " has no exact realization; use the floating layer");
      }
      std::size_t d = 0;
      auto roots = detail::factor_roots<F>(s, d);
      rs.components_.push_back({s.tag, offset, d});
      parts.emplace_back(std::move(roots), d);
      rs.exact_ &= detail::exact_realizable(s);
      offset += d;
    }
    rs.dim_ = offset;
    for (std::size_t c = 0; c < parts.size(); ++c)
      for (const auto& r : parts[c].first) {
        Vec<F> v(rs.dim_, F(0));
        for (std::size_t i = 0; i < r.size(); ++i) v[rs.components_[c].offset + i] = r[i];
        rs.roots_.push_back(std::move(v));
      }
    std::string canon;
    for (const auto& c : rs.components_) canon += (canon.empty() ? "" : "x") + c.tag;
    rs.tag_ = canon;
    rs.finish();
    return rs;
  }

  const std::string& tag() const { return tag_; }
  std::size_t dim() const { return dim_; }
  bool exact() const { return exact_; }
  const std::vector<Component>& components() const { return components_; }

  const std::vector<Vec<F>>& roots() const { return roots_; }
  const std::vector<std::size_t>& positive() const { return positive_; }
  const std::vector<std::size_t>& simple() const { return simple_; }
  std::size_t orbit_of(std::size_t root) const { return orbit_of_[root]; }
  std::size_t num_orbits() const { return orbits_.size(); }
  const std::vector<std::vector<std::size_t>>& orbits() const { return orbits_; }
  const std::vector<GroupElement<F>>& group() const { return group_; }

  /// S_i ∩ R+ for the orbit i.
  std::vector<std::size_t> positive_in_orbit(std::size_t orbit) const {
    std::vector<std::size_t> out;
    for (auto i : positive_)
      if (orbit_of_[i] == orbit) out.push_back(i);
    return out;
  }

  /// {α : (α, v) > 0}; v must avoid every reflecting hyperplane.
  std::vector<std::size_t> positive_system(const Vec<F>& v) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < roots_.size(); ++i) {
      const F s = dot(roots_[i], v);
      if (Traits::magnitude(s) <= (Traits::exact ? 0.0 : 1e-12))
        throw std::invalid_argument("vector lies on a reflecting hyperplane");
      if (s > 0) out.push_back(i);
    }
    return out;
  }

  std::optional<std::size_t> find_root(const Vec<F>& v) const {
    auto it = index_.find(detail::vector_key(v));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Vec<F> reflect(std::size_t root, const Vec<F>& v) const { return dunklkit::reflect(roots_[root], v); }

  /// Root-wise multiplicity lookup.
  template <class K>
  K k_of(const Multiplicity<K>& k, std::size_t root) const {
    return k.per_orbit.at(orbit_of_[root]);
  }

  template <class K>
  K gamma(const Multiplicity<K>& k) const {
    K g(0);
    for (auto i : positive_) g += k_of(k, i);
    return g;
  }

  /// Parses "1/2,3/2" (one value per orbit, or a single value for all).
  Multiplicity<F> multiplicity(const std::string& csv) const {
    std::vector<F> vals;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(Traits::from_rational(parse_rational(item)));
    if (vals.size() == 1) vals.assign(num_orbits(), vals[0]);
    if (vals.size() != num_orbits())
      throw std::invalid_argument("expected " + std::to_string(num_orbits()) + " multiplicity values for " + tag_);
    return Multiplicity<F>{vals};
  }
  Multiplicity<F> multiplicity(std::vector<F> vals) const {
    if (vals.size() == 1) vals.assign(num_orbits(), vals[0]);
    if (vals.size() != num_orbits()) throw std::invalid_argument("multiplicity has wrong number of orbit values");
    return Multiplicity<F>{std::move(vals)};
  }

 private:
  void finish() {
    for (std::size_t i = 0; i < roots_.size(); ++i) index_[detail::vector_key(roots_[i])] = i;
    // Lexicographic positivity: first nonzero coordinate positive.
    for (std::size_t i = 0; i < roots_.size(); ++i) {
      for (const auto& x : roots_[i]) {
        if (Traits::magnitude(x) <= (Traits::exact ? 0.0 : 1e-12)) continue;
        if (x > 0) positive_.push_back(i);
        break;
      }
    }
    for (auto a : positive_) {
      int flipped = 0;
      for (auto b : positive_) {
        auto img = find_root(reflect(a, roots_[b]));
        if (!img) throw std::logic_error("root system not closed under reflections");
        if (std::find(positive_.begin(), positive_.end(), *img) == positive_.end()) ++flipped;
      }
      if (flipped == 1) simple_.push_back(a);
    }
    generate_group();
    // Orbits under the whole group.
    orbit_of_.assign(roots_.size(), roots_.size());
    for (std::size_t i = 0; i < roots_.size(); ++i) {
      if (orbit_of_[i] != roots_.size()) continue;
      const std::size_t id = orbits_.size();
      orbits_.emplace_back();
      for (const auto& g : group_) {
        auto j = find_root(g.matrix.apply(roots_[i]));
        if (!j) throw std::logic_error("group does not preserve the root system");
        if (orbit_of_[*j] == roots_.size()) {
          orbit_of_[*j] = id;
          orbits_[id].push_back(*j);
        }
      }
      std::sort(orbits_[id].begin(), orbits_[id].end());
    }
  }

  void generate_group() {
    std::vector<Matrix<F>> gens;
    for (auto s : simple_) gens.push_back(reflection_matrix(roots_[s]));
    std::map<std::vector<std::string>, std::size_t> seen;
    GroupElement<F> e{Matrix<F>::identity(dim_), {}};
    seen[detail::vector_key(e.matrix.data)] = 0;
    group_.push_back(e);
    // Breadth-first order yields reduced words.
    for (std::size_t head = 0; head < group_.size(); ++head) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        Matrix<F> m = gens[g] * group_[head].matrix;
        auto key = detail::vector_key(m.data);
        if (seen.count(key)) continue;
        if (group_.size() > 100000) throw UnsupportedGroup("reflection group too large");
        std::vector<int> w = group_[head].word;
        w.insert(w.begin(), static_cast<int>(g));
        seen[key] = group_.size();
        group_.push_back({std::move(m), std::move(w)});
      }
    }
  }

  std::string tag_;
  std::size_t dim_ = 0;
  bool exact_ = true;
  std::vector<Component> components_;
  std::vector<Vec<F>> roots_;
  std::map<std::vector<std::string>, std::size_t> index_;
  std::vector<std::size_t> positive_;
  std::vector<std::size_t> simple_;
  std::vector<std::size_t> orbit_of_;
  std::vector<std::vector<std::size_t>> orbits_;
  std::vector<GroupElement<F>> group_;
};

}  // namespace dunklkit
