#pragma once

// Finite matrix groups enumerated from generators, with the structure a
// complex reflection group needs: spectra of elements, reflections,
// reflecting hyperplanes and their orbits, and distinguished subgroups.
//
// Elements are stored packed: every entry as its integer power-basis
// coordinates over a common denominator D, which makes products and hash
// lookups cheap. Exact Matrix<Cyclotomic> values are rebuilt on demand.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "crg/matrix.hpp"
#include "crg/power_series.hpp"

namespace crg {

inline constexpr std::size_t kDefaultClosureCap = 1'000'000;

/// exp(2 pi i num / den) with 0 <= num < den and gcd(num, den) = 1.
struct RootOfUnity {
  long num = 0;
  long den = 1;

  static RootOfUnity make(long num, long den) {
    if (den <= 0) throw Error("root of unity needs a positive order");
    num %= den;
    if (num < 0) num += den;
    const long g = std::gcd(num, den);
    return {num / g, den / g};
  }
  RootOfUnity operator*(const RootOfUnity& o) const {
    const long l = std::lcm(den, o.den);
    return make(num * (l / den) + o.num * (l / o.den), l);
  }
  RootOfUnity inverse() const { return make(-num, den); }
  RootOfUnity pow(long k) const { return make(num * k, den); }
  long order() const { return den; }
  Cyclotomic value() const { return Cyclotomic::zeta(static_cast<int>(den), num); }
  std::string to_string() const {
    if (num == 0) return "1";
    return "z" + std::to_string(den) + "^" + std::to_string(num);
  }
  friend bool operator==(const RootOfUnity& a, const RootOfUnity& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const RootOfUnity& a, const RootOfUnity& b) { return !(a == b); }
  friend bool operator<(const RootOfUnity& a, const RootOfUnity& b) {
    // order by angle
    return a.num * b.den < b.num * a.den;
  }
};

/// Characteristic data shared by all elements with the same spectrum.
struct SpectralClass {
  std::vector<Cyclotomic> charpoly;      // det(tI - g), low degree first
  std::vector<RootOfUnity> eigenvalues;  // sorted by angle, with multiplicity
  RootOfUnity det;
  long order = 1;
  long count = 0;
  std::size_t representative = 0;

  int multiplicity(const RootOfUnity& z) const {
    return static_cast<int>(std::count(eigenvalues.begin(), eigenvalues.end(), z));
  }
};

struct Hyperplane {
  std::vector<Cyclotomic> form;  // first nonzero coordinate is 1
  int order = 1;                 // e_H
  std::vector<std::size_t> reflections;
};

/// Subgroup of an enumerated group stored as membership flags.
struct Subgroup {
  std::string kind;
  std::vector<char> member;
  std::size_t order = 0;

  bool contains(std::size_t i) const { return i < member.size() && member[i]; }
  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < member.size(); ++i)
      if (member[i]) out.push_back(i);
    return out;
  }
};

struct LineStabilizer {
  Subgroup stabilizer;                                   // W_z
  std::vector<std::pair<std::size_t, RootOfUnity>> theta;  // w v = theta(w) v
  Subgroup pointwise;                                    // W_v = ker theta
  long image_order = 1;                                  // e_z
  std::size_t orbit_size = 0;
};

struct ProjectiveOrbit {
  std::vector<std::vector<Cyclotomic>> points;  // normalized, first nonzero = 1
  std::size_t stabilizer_order = 0;
};

inline std::vector<Cyclotomic> normalize_projective(std::vector<Cyclotomic> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (v[i].is_one()) return v;
    const Cyclotomic inv = v[i].inverse();
    for (std::size_t j = i; j < v.size(); ++j)
      if (!v[j].is_zero()) v[j] *= inv;
    v[i] = Cyclotomic(1);
    return v;
  }
  throw Error("zero vector has no projective class");
}

struct VectorHash {
  std::size_t operator()(const std::vector<Cyclotomic>& v) const {
    std::size_t h = v.size();
    for (const auto& c : v) h = h * 0x100000001b3ULL ^ c.hash();
    return h;
  }
};

/// Row vector times matrix.
inline std::vector<Cyclotomic> row_times(const std::vector<Cyclotomic>& row, const CMatrix& m) {
  std::vector<Cyclotomic> out(m.cols(), Cyclotomic(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (row[i].is_zero()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) out[j] += row[i] * m(i, j);
  }
  return out;
}

/// Canonical conductor of a matrix's entries (smallest field containing them).
inline int matrix_conductor(const CMatrix& m) {
  int n = 1;
  for (const auto& c : m.data()) n = detail::lcm_int(n, c.minimized().conductor());
  return n;
}

class ReflectionGroup {
 public:
  static ReflectionGroup generate(std::string name, const std::vector<CMatrix>& generators,
                                  std::size_t closure_cap = kDefaultClosureCap, int conductor_hint = 1) {
    if (generators.empty()) throw Error("group needs at least one generator");
    const std::size_t dim = generators[0].rows();
    for (const auto& g : generators) {
      if (!g.square() || g.rows() != dim) throw Error("generators must be square matrices of one size");
      if (g.det().is_zero()) throw Error("generator is singular");
    }
    int n = detail::canonical_conductor(conductor_hint);
    for (const auto& g : generators) n = detail::lcm_int(n, matrix_conductor(g));

    long denom = 1;
    for (const auto& g : generators)
      for (const auto& c : g.data()) {
        const Cyclotomic lifted = c.lift(n);
        for (const auto& r : lifted.coeffs()) denom = std::lcm(denom, r.get_den().get_si());
      }

    for (int attempt = 0; attempt < 6; ++attempt) {
      ReflectionGroup grp;
      grp.name_ = std::move(name);
      grp.generators_ = generators;
      grp.dim_ = dim;
      grp.n_ = n;
      grp.denom_ = denom;
      if (grp.enumerate(closure_cap)) {
        grp.build_inverses();
        grp.build_spectra();
        grp.build_hyperplanes();
        return grp;
      }
      name = std::move(grp.name_);
      denom *= 2;
    }
    throw Error("group entries do not stay on a bounded denominator; is the group finite?");
  }

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  int conductor() const { return n_; }
  std::size_t order() const { return count_; }
  const std::vector<CMatrix>& generators() const { return generators_; }
  std::size_t generator_count() const { return generators_.size(); }
  std::size_t generator_element(std::size_t g) const { return gen_index_.at(g); }

  CMatrix element(std::size_t i) const {
    check_index(i);
    CMatrix m(dim_, dim_);
    const std::int64_t* p = packed(i);
    const auto phi = static_cast<std::size_t>(phi_);
    for (std::size_t e = 0; e < dim_ * dim_; ++e) {
      std::vector<Rational> coords(phi);
      bool zero = true;
      for (std::size_t k = 0; k < phi; ++k) {
        const std::int64_t v = p[e * phi + k];
        if (v != 0) {
          coords[k] = make_rational(v, denom_);
          zero = false;
        }
      }
      m(e / dim_, e % dim_) = zero ? Cyclotomic(0) : Cyclotomic::from_coords(n_, std::move(coords));
    }
    return m;
  }

  std::optional<std::size_t> find(const CMatrix& m) const {
    if (m.rows() != dim_ || m.cols() != dim_) return std::nullopt;
    std::vector<std::int64_t> key(stride_);
    if (!pack(m, key.data())) return std::nullopt;
    return lookup(key.data());
  }

  /// Index of elements[a] * elements[b].
  std::size_t multiply(std::size_t a, std::size_t b) const {
    check_index(a);
    check_index(b);
    std::vector<std::int64_t> buf(stride_);
    if (!mul_packed(packed(a), packed(b), buf.data())) throw Error("product left the packed lattice");
    auto idx = lookup(buf.data());
    if (!idx) throw Error("product of group elements not found; enumeration is not closed");
    return *idx;
  }
  std::size_t right_multiply_generator(std::size_t i, std::size_t g) const { return rmul_[i * generators_.size() + g]; }
  std::size_t inverse(std::size_t i) const { return inv_.at(i); }
  std::size_t power(std::size_t i, long k) const {
    if (k < 0) return power(inverse(i), -k);
    std::size_t result = 0, base = i;
    while (k > 0) {
      if (k & 1) result = multiply(result, base);
      k >>= 1;
      if (k > 0) base = multiply(base, base);
    }
    return result;
  }
  /// The element as a product of generators (BFS word, leftmost first).
  std::vector<std::size_t> word(std::size_t i) const {
    std::vector<std::size_t> w;
    while (i != 0) {
      w.push_back(parent_gen_[i]);
      i = parent_[i];
    }
    std::reverse(w.begin(), w.end());
    return w;
  }

  const std::vector<SpectralClass>& spectral_classes() const { return classes_; }
  const SpectralClass& spectral(std::size_t i) const { return classes_.at(class_of_.at(i)); }
  std::size_t spectral_class_index(std::size_t i) const { return class_of_.at(i); }
  RootOfUnity det(std::size_t i) const { return spectral(i).det; }
  long element_order(std::size_t i) const { return spectral(i).order; }
  /// dim V(g, z): finite-order elements are diagonalizable.
  int eigenspace_dimension(std::size_t i, const RootOfUnity& z) const { return spectral(i).multiplicity(z); }

  bool is_scalar(std::size_t i) const {
    const std::int64_t* p = packed(i);
    const auto phi = static_cast<std::size_t>(phi_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) {
        const std::int64_t* e = p + (r * dim_ + c) * phi;
        const std::int64_t* d = p;
        for (std::size_t k = 0; k < phi; ++k) {
          if (r != c && e[k] != 0) return false;
          if (r == c && e[k] != d[k]) return false;
        }
      }
    return true;
  }
  bool is_monomial(std::size_t i) const {
    const std::int64_t* p = packed(i);
    const auto phi = static_cast<std::size_t>(phi_);
    for (std::size_t r = 0; r < dim_; ++r) {
      int nonzero = 0;
      for (std::size_t c = 0; c < dim_; ++c) {
        const std::int64_t* e = p + (r * dim_ + c) * phi;
        if (std::any_of(e, e + phi, [](std::int64_t v) { return v != 0; })) ++nonzero;
      }
      if (nonzero != 1) return false;
    }
    return true;
  }

  const std::vector<std::size_t>& reflections() const { return reflections_; }
  const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
  const std::vector<std::vector<std::size_t>>& hyperplane_orbits() const { return orbits_; }
  std::size_t hyperplane_orbit_of(std::size_t h) const {
    for (std::size_t o = 0; o < orbits_.size(); ++o)
      if (std::find(orbits_[o].begin(), orbits_[o].end(), h) != orbits_[o].end()) return o;
    throw Error("hyperplane index out of range");
  }
  /// Index of the hyperplane w(H) (linear form alpha_H o w^{-1}).
  std::size_t transform_hyperplane(std::size_t h, std::size_t w) const {
    auto form = canonical_form(row_times(hyperplanes_.at(h).form, element(inverse(w))));
    auto it = hyperplane_index_.find(form);
    if (it == hyperplane_index_.end()) throw Error("image of a reflecting hyperplane is not reflecting");
    return it->second;
  }
  std::optional<std::size_t> find_hyperplane(const std::vector<Cyclotomic>& form) const {
    auto it = hyperplane_index_.find(canonical_form(form));
    if (it == hyperplane_index_.end()) return std::nullopt;
    return it->second;
  }

  Subgroup whole() const {
    Subgroup s{"whole", std::vector<char>(count_, 1), count_};
    return s;
  }

  Subgroup generate_subgroup(const std::vector<std::size_t>& gens, std::string kind = "custom") const {
    Subgroup s{std::move(kind), std::vector<char>(count_, 0), 0};
    std::vector<std::size_t> queue{0};
    s.member[0] = 1;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (auto h : gens) {
        const std::size_t x = multiply(queue[q], h);
        if (!s.member[x]) {
          s.member[x] = 1;
          queue.push_back(x);
        }
      }
    }
    s.order = queue.size();
    return s;
  }

  Subgroup derived_subgroup() const {
    std::vector<std::size_t> gens;
    const auto ng = generators_.size();
    for (std::size_t a = 0; a < ng; ++a)
      for (std::size_t b = a + 1; b < ng; ++b) {
        const std::size_t x = gen_index_[a], y = gen_index_[b];
        const std::size_t c = multiply(multiply(inverse(x), inverse(y)), multiply(x, y));
        if (c != 0 && std::find(gens.begin(), gens.end(), c) == gens.end()) gens.push_back(c);
      }
    Subgroup h = generate_subgroup(gens, "derived");
    // Normal closure under conjugation by the generators.
    bool grown = true;
    while (grown) {
      grown = false;
      const std::size_t current = gens.size();
      for (std::size_t t = 0; t < current; ++t)
        for (std::size_t g = 0; g < ng; ++g) {
          const std::size_t x = gen_index_[g];
          const std::size_t c = multiply(multiply(x, gens[t]), inverse(x));
          if (!h.contains(c)) {
            gens.push_back(c);
            h = generate_subgroup(gens, "derived");
            grown = true;
          }
        }
    }
    return h;
  }

  Subgroup sl_subgroup() const {
    Subgroup s{"sl", std::vector<char>(count_, 0), 0};
    for (std::size_t i = 0; i < count_; ++i)
      if (det(i).num == 0) {
        s.member[i] = 1;
        ++s.order;
      }
    return s;
  }

  Subgroup center() const {
    Subgroup s{"center", std::vector<char>(count_, 0), 0};
    for (std::size_t i = 0; i < count_; ++i)
      if (is_scalar(i)) {
        s.member[i] = 1;
        ++s.order;
      }
    return s;
  }

  /// Order of the image of det.
  long det_image_order() const {
    long l = 1;
    for (const auto& c : classes_) l = std::lcm(l, c.det.den);
    return l;
  }

  PowerSeries molien_series(int n) const {
    std::vector<std::pair<std::vector<Cyclotomic>, long>> cls;
    for (const auto& c : classes_) cls.emplace_back(c.charpoly, c.count);
    return molien_from_charpolys(cls, n);
  }

  std::vector<Cyclotomic> apply(std::size_t i, const std::vector<Cyclotomic>& v) const { return element(i) * v; }

  /// Orbit of the line [v] and the order of its setwise stabilizer.
  ProjectiveOrbit projective_orbit(const std::vector<Cyclotomic>& v) const {
    ProjectiveOrbit out;
    std::vector<std::size_t> transversal;
    orbit_with_transversal(v, out.points, transversal);
    if (count_ % out.points.size() != 0) throw Error("orbit size does not divide the group order");
    out.stabilizer_order = count_ / out.points.size();
    return out;
  }

  /// Setwise stabilizer W_z of z = [v], its character and W_v = ker theta.
  LineStabilizer line_stabilizer(const std::vector<Cyclotomic>& v) const {
    std::vector<std::vector<Cyclotomic>> points;
    std::vector<std::size_t> transversal;
    orbit_with_transversal(v, points, transversal);
    std::unordered_map<std::vector<Cyclotomic>, std::size_t, VectorHash> where;
    for (std::size_t k = 0; k < points.size(); ++k) where.emplace(points[k], k);
    // Schreier generators u_j^{-1} s u_i.
    std::vector<std::size_t> sgens;
    for (std::size_t k = 0; k < points.size(); ++k)
      for (std::size_t g = 0; g < generators_.size(); ++g) {
        const auto img = normalize_projective(generators_[g] * points[k]);
        const std::size_t j = where.at(img);
        const std::size_t s = multiply(inverse(transversal[j]), multiply(gen_index_[g], transversal[k]));
        if (s != 0 && std::find(sgens.begin(), sgens.end(), s) == sgens.end()) sgens.push_back(s);
      }
    LineStabilizer out;
    out.orbit_size = points.size();
    out.stabilizer = generate_subgroup(sgens, "line-stabilizer");
    if (out.stabilizer.order * points.size() != count_) throw Error("orbit-stabilizer mismatch");
    out.pointwise = Subgroup{"point-stabilizer", std::vector<char>(count_, 0), 0};
    std::size_t pivot = 0;
    while (v[pivot].is_zero()) ++pivot;
    const Cyclotomic inv_pivot = v[pivot].inverse();
    for (auto w : out.stabilizer.elements()) {
      const auto img = apply(w, v);
      const Cyclotomic ratio = img[pivot] * inv_pivot;
      const RootOfUnity theta = identify_root(ratio, element_order(w));
      out.theta.emplace_back(w, theta);
      out.image_order = std::lcm(out.image_order, theta.den);
      if (theta.num == 0) {
        out.pointwise.member[w] = 1;
        ++out.pointwise.order;
      }
    }
    return out;
  }

  /// Pointwise stabilizer of a subspace by brute force.
  Subgroup pointwise_stabilizer(const std::vector<std::vector<Cyclotomic>>& basis) const {
    Subgroup s{"pointwise", std::vector<char>(count_, 0), 0};
    for (std::size_t i = 0; i < count_; ++i) {
      const CMatrix m = element(i);
      bool fixes = true;
      for (const auto& b : basis)
        if (m * b != b) {
          fixes = false;
          break;
        }
      if (fixes) {
        s.member[i] = 1;
        ++s.order;
      }
    }
    return s;
  }

  /// Parabolic subgroup W(X): generated by reflections whose hyperplane contains X.
  Subgroup parabolic(const std::vector<std::vector<Cyclotomic>>& basis) const {
    std::vector<std::size_t> gens;
    for (const auto& h : hyperplanes_) {
      bool contains = true;
      for (const auto& b : basis)
        if (!dot(h.form, b).is_zero()) contains = false;
      if (contains) gens.insert(gens.end(), h.reflections.begin(), h.reflections.end());
    }
    return generate_subgroup(gens, "parabolic");
  }

  /// z with z == zeta_order^k for some k (order a multiple of z's order).
  static RootOfUnity identify_root(const Cyclotomic& z, long order) {
    for (long k = 0; k < order; ++k)
      if (Cyclotomic::zeta(static_cast<int>(order), k) == z) return RootOfUnity::make(k, order);
    throw Error("value is not a root of unity of order dividing " + std::to_string(order));
  }

  static std::vector<Cyclotomic> canonical_form(std::vector<Cyclotomic> form) {
    return normalize_projective(std::move(form));
  }

 private:
  ReflectionGroup() = default;

  void check_index(std::size_t i) const {
    if (i >= count_) throw Error("group element index out of range");
  }
  const std::int64_t* packed(std::size_t i) const { return store_.data() + i * stride_; }

  bool pack(const CMatrix& m, std::int64_t* out) const {
    const auto phi = static_cast<std::size_t>(phi_);
    for (std::size_t e = 0; e < dim_ * dim_; ++e) {
      const Cyclotomic c = m.data()[e].lift(n_);
      for (std::size_t k = 0; k < phi; ++k) {
        const Rational scaled = c.coeffs()[k] * denom_;
        if (scaled.get_den() != 1 || !scaled.get_num().fits_slong_p()) return false;
        out[e * phi + k] = scaled.get_num().get_si();
      }
    }
    return true;
  }

  bool mul_packed(const std::int64_t* a, const std::int64_t* b, std::int64_t* c) const {
    const auto phi = static_cast<std::size_t>(phi_);
    const auto& rep = table_->power;
    __int128 acc[2 * kMaxPhi];
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        std::fill(acc, acc + 2 * phi - 1, 0);
        bool any = false;
        for (std::size_t k = 0; k < dim_; ++k) {
          const std::int64_t* x = a + (i * dim_ + k) * phi;
          const std::int64_t* y = b + (k * dim_ + j) * phi;
          if (std::all_of(x, x + phi, [](std::int64_t v) { return v == 0; })) continue;
          if (std::all_of(y, y + phi, [](std::int64_t v) { return v == 0; })) continue;
          any = true;
          for (std::size_t s = 0; s < phi; ++s) {
            if (x[s] == 0) continue;
            for (std::size_t t = 0; t < phi; ++t) acc[s + t] += static_cast<__int128>(x[s]) * y[t];
          }
        }
        std::int64_t* out = c + (i * dim_ + j) * phi;
        if (!any) {
          std::fill(out, out + phi, 0);
          continue;
        }
        for (std::size_t t = phi; t < 2 * phi - 1; ++t) {
          if (acc[t] == 0) continue;
          const auto& r = rep[t % static_cast<std::size_t>(n_)];
          for (std::size_t s = 0; s < phi; ++s)
            if (r[s] != 0) acc[s] += acc[t] * r[s];
        }
        for (std::size_t s = 0; s < phi; ++s) {
          if (acc[s] % denom_ != 0) return false;
          const __int128 q = acc[s] / denom_;
          if (q > kPackedBound || q < -kPackedBound) throw Error("group entries grew beyond the packed range");
          out[s] = static_cast<std::int64_t>(q);
        }
      }
    return true;
  }

  std::uint64_t hash_packed(const std::int64_t* p) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::size_t k = 0; k < stride_; ++k) {
      std::uint64_t z = static_cast<std::uint64_t>(p[k]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      h ^= z ^ (z >> 31);
    }
    return h;
  }

  std::optional<std::size_t> lookup(const std::int64_t* key) const {
    if (slots_.empty()) return std::nullopt;
    const std::uint64_t h = hash_packed(key);
    std::size_t pos = h & mask_;
    while (true) {
      const std::uint32_t s = slots_[pos];
      if (s == kEmpty) return std::nullopt;
      if (hashes_[s] == h && std::equal(key, key + stride_, packed(s))) return s;
      pos = (pos + 1) & mask_;
    }
  }

  void insert_slot(std::size_t idx) {
    if ((count_ + 1) * 2 > slots_.size()) {
      std::size_t cap = std::max<std::size_t>(64, slots_.size() * 2);
      slots_.assign(cap, kEmpty);
      mask_ = cap - 1;
      for (std::size_t i = 0; i < count_; ++i) place(i);
    }
    place(idx);
  }
  void place(std::size_t idx) {
    std::size_t pos = hashes_[idx] & mask_;
    while (slots_[pos] != kEmpty) pos = (pos + 1) & mask_;
    slots_[pos] = static_cast<std::uint32_t>(idx);
  }

  // Appends the element in buf if new; returns its index.
  std::size_t intern(const std::int64_t* buf, std::size_t parent, std::size_t gen, std::size_t cap) {
    if (auto idx = lookup(buf)) return *idx;
    if (count_ >= cap) throw BudgetExceeded("group closure exceeded the cap of " + std::to_string(cap) + " elements");
    store_.insert(store_.end(), buf, buf + stride_);
    hashes_.push_back(hash_packed(buf));
    parent_.push_back(static_cast<std::uint32_t>(parent));
    parent_gen_.push_back(static_cast<std::uint32_t>(gen));
    insert_slot(count_);
    return count_++;
  }

  bool enumerate(std::size_t cap) {
    phi_ = detail::euler_phi(n_);
    if (phi_ > static_cast<int>(kMaxPhi)) throw Error("conductor too large for packed enumeration");
    table_ = &detail::cyclotomic_table(n_);
    stride_ = dim_ * dim_ * static_cast<std::size_t>(phi_);
    std::vector<std::vector<std::int64_t>> gens(generators_.size(), std::vector<std::int64_t>(stride_));
    for (std::size_t g = 0; g < generators_.size(); ++g)
      if (!pack(generators_[g], gens[g].data())) return false;
    std::vector<std::int64_t> buf(stride_);
    if (!pack(CMatrix::identity(dim_), buf.data())) return false;
    intern(buf.data(), 0, 0, cap);
    const std::size_t ng = generators_.size();
    for (std::size_t i = 0; i < count_; ++i) {
      for (std::size_t g = 0; g < ng; ++g) {
        if (!mul_packed(packed(i), gens[g].data(), buf.data())) return false;
        rmul_.push_back(static_cast<std::uint32_t>(intern(buf.data(), i, g, cap)));
      }
    }
    for (std::size_t g = 0; g < ng; ++g) gen_index_.push_back(rmul_[g]);
    return true;
  }

  void build_inverses() {
    const std::size_t ng = generators_.size();
    std::vector<std::size_t> gen_inv(ng);
    for (std::size_t g = 0; g < ng; ++g) {
      std::size_t prev = 0, x = gen_index_[g];
      while (x != 0) {
        prev = x;
        x = rmul_[x * ng + g];
      }
      gen_inv[g] = prev;  // g^(k-1) where g^k = 1
    }
    inv_.assign(count_, 0);
    for (std::size_t i = 1; i < count_; ++i) inv_[i] = multiply(gen_inv[parent_gen_[i]], inv_[parent_[i]]);
  }

  void build_spectra() {
    const auto phi = static_cast<std::size_t>(phi_);
    std::map<std::vector<std::int64_t>, std::size_t> key_to_class;
    class_of_.assign(count_, 0);
    std::vector<std::vector<std::int64_t>> class_keys;
    for (std::size_t i = 0; i < count_; ++i) {
      std::vector<std::int64_t> key;
      key.reserve(dim_ * phi);
      std::size_t p = i;
      for (std::size_t k = 1; k <= dim_; ++k) {
        if (k > 1) p = multiply(p, i);
        const std::int64_t* m = packed(p);
        for (std::size_t s = 0; s < phi; ++s) {
          std::int64_t tr = 0;
          for (std::size_t d = 0; d < dim_; ++d) tr += m[(d * dim_ + d) * phi + s];
          key.push_back(tr);
        }
      }
      auto [it, inserted] = key_to_class.try_emplace(key, classes_.size());
      if (inserted) {
        classes_.push_back(SpectralClass{});
        classes_.back().representative = i;
        class_keys.push_back(key);
      }
      class_of_[i] = it->second;
      ++classes_[it->second].count;
    }
    for (std::size_t c = 0; c < classes_.size(); ++c) fill_class(classes_[c], class_keys[c]);
  }

  void fill_class(SpectralClass& cls, const std::vector<std::int64_t>& key) {
    const auto phi = static_cast<std::size_t>(phi_);
    // Power sums p_k = tr(g^k), then Newton's identities.
    std::vector<Cyclotomic> p(dim_ + 1, Cyclotomic(0));
    for (std::size_t k = 1; k <= dim_; ++k) {
      std::vector<Rational> coords(phi);
      for (std::size_t s = 0; s < phi; ++s) coords[s] = make_rational(key[(k - 1) * phi + s], denom_);
      p[k] = Cyclotomic::from_coords(n_, coords);
    }
    std::vector<Cyclotomic> e(dim_ + 1, Cyclotomic(0));
    e[0] = Cyclotomic(1);
    for (std::size_t k = 1; k <= dim_; ++k) {
      Cyclotomic s(0);
      for (std::size_t i = 1; i <= k; ++i) {
        const Cyclotomic t = e[k - i] * p[i];
        if (i % 2 == 1) s += t;
        else s -= t;
      }
      e[k] = s / Cyclotomic(static_cast<long>(k));
    }
    cls.charpoly.assign(dim_ + 1, Cyclotomic(0));
    for (std::size_t k = 0; k <= dim_; ++k) cls.charpoly[dim_ - k] = (k % 2 == 0) ? e[k] : -e[k];

    long ord = 1;
    for (std::size_t x = cls.representative; x != 0; x = multiply(x, cls.representative)) ++ord;
    if (cls.representative == 0) ord = 1;
    cls.order = ord;

    std::vector<Cyclotomic> poly = cls.charpoly;
    for (long k = 0; k < ord && poly.size() > 1; ++k) {
      const Cyclotomic z = Cyclotomic::zeta(static_cast<int>(ord), k);
      while (poly.size() > 1) {
        // synthetic division by (t - z)
        std::vector<Cyclotomic> q(poly.size() - 1, Cyclotomic(0));
        Cyclotomic carry(0);
        for (std::size_t d = poly.size(); d-- > 1;) {
          carry = poly[d] + carry * z;
          q[d - 1] = carry;
        }
        const Cyclotomic rem = poly[0] + carry * z;
        if (!rem.is_zero()) break;
        cls.eigenvalues.push_back(RootOfUnity::make(k, ord));
        poly = std::move(q);
      }
    }
    if (cls.eigenvalues.size() != dim_) throw Error("element spectrum is not made of roots of unity");
    std::sort(cls.eigenvalues.begin(), cls.eigenvalues.end());
    RootOfUnity d;
    for (const auto& z : cls.eigenvalues) d = d * z;
    cls.det = d;
  }

  void build_hyperplanes() {
    for (std::size_t i = 1; i < count_; ++i)
      if (spectral(i).multiplicity(RootOfUnity{}) == static_cast<int>(dim_) - 1) reflections_.push_back(i);
    for (auto s : reflections_) {
      const CMatrix m = element(s) - CMatrix::identity(dim_);
      std::vector<Cyclotomic> form;
      for (std::size_t r = 0; r < dim_ && form.empty(); ++r) {
        auto row = m.row(r);
        if (std::any_of(row.begin(), row.end(), [](const Cyclotomic& c) { return !c.is_zero(); })) form = row;
      }
      form = canonical_form(form);
      auto [it, inserted] = hyperplane_index_.try_emplace(form, hyperplanes_.size());
      if (inserted) hyperplanes_.push_back(Hyperplane{form, 1, {}});
      auto& h = hyperplanes_[it->second];
      h.reflections.push_back(s);
      h.order = static_cast<int>(h.reflections.size()) + 1;
    }
    // Orbits under the generators via union-find.
    std::vector<std::size_t> uf(hyperplanes_.size());
    std::iota(uf.begin(), uf.end(), 0);
    auto root = [&](std::size_t x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    std::vector<CMatrix> gen_inverse;
    for (std::size_t g = 0; g < generators_.size(); ++g) gen_inverse.push_back(element(inverse(gen_index_[g])));
    for (std::size_t h = 0; h < hyperplanes_.size(); ++h)
      for (const auto& gi : gen_inverse) {
        auto img = canonical_form(row_times(hyperplanes_[h].form, gi));
        auto it = hyperplane_index_.find(img);
        if (it == hyperplane_index_.end()) throw Error("image of a reflecting hyperplane is not reflecting");
        const std::size_t a = root(h), b = root(it->second);
        if (a != b) uf[std::max(a, b)] = std::min(a, b);
      }
    std::map<std::size_t, std::size_t> orbit_of_root;
    for (std::size_t h = 0; h < hyperplanes_.size(); ++h) {
      auto [it, inserted] = orbit_of_root.try_emplace(root(h), orbits_.size());
      if (inserted) orbits_.emplace_back();
      orbits_[it->second].push_back(h);
    }
  }

  void orbit_with_transversal(const std::vector<Cyclotomic>& v, std::vector<std::vector<Cyclotomic>>& points,
                              std::vector<std::size_t>& transversal) const {
    if (v.size() != dim_) throw Error("vector has the wrong length");
    points.push_back(normalize_projective(v));
    transversal.push_back(0);
    std::unordered_map<std::vector<Cyclotomic>, std::size_t, VectorHash> seen;
    seen.emplace(points[0], 0);
    for (std::size_t k = 0; k < points.size(); ++k)
      for (std::size_t g = 0; g < generators_.size(); ++g) {
        auto img = normalize_projective(generators_[g] * points[k]);
        if (seen.count(img)) continue;
        seen.emplace(img, points.size());
        points.push_back(std::move(img));
        transversal.push_back(multiply(gen_index_[g], transversal[k]));
      }
  }

  static constexpr std::uint32_t kEmpty = 0xffffffffu;
  static constexpr std::size_t kMaxPhi = 64;
  static constexpr __int128 kPackedBound = static_cast<__int128>(1) << 48;

  std::string name_;
  std::vector<CMatrix> generators_;
  std::size_t dim_ = 0;
  int n_ = 1;
  int phi_ = 1;
  long denom_ = 1;
  std::size_t stride_ = 0;
  const detail::CyclotomicTable* table_ = nullptr;

  std::size_t count_ = 0;
  std::vector<std::int64_t> store_;
  std::vector<std::uint64_t> hashes_;
  std::vector<std::uint32_t> slots_;
  std::size_t mask_ = 0;
  std::vector<std::uint32_t> rmul_, parent_, parent_gen_;
  std::vector<std::size_t> gen_index_, inv_, class_of_;
  std::vector<SpectralClass> classes_;

  std::vector<std::size_t> reflections_;
  std::vector<Hyperplane> hyperplanes_;
  std::unordered_map<std::vector<Cyclotomic>, std::size_t, VectorHash> hyperplane_index_;
  std::vector<std::vector<std::size_t>> orbits_;
};

/// Per-identity verdicts of the numerology checks against reference data.
struct NumerologyCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct NumerologyReport {
  std::string group;
  std::vector<NumerologyCheck> checks;
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const NumerologyCheck& c) { return c.pass; });
  }
};

struct ReferenceData {
  std::vector<int> degrees;
  std::vector<int> codegrees;
  std::optional<long> expected_order;
  std::optional<long> expected_derived_order;
};

inline NumerologyReport verify_numerology(const ReflectionGroup& g, const ReferenceData& ref, int molien_order = 40) {
  NumerologyReport rep;
  rep.group = g.name();
  auto add = [&](std::string name, long expected, long actual) {
    rep.checks.push_back({std::move(name), std::to_string(expected), std::to_string(actual), expected == actual});
  };
  long prod = 1, refl = 0, gcd = 0, arr = 0;
  for (int d : ref.degrees) {
    prod *= d;
    refl += d - 1;
    gcd = std::gcd(gcd, static_cast<long>(d));
  }
  for (int d : ref.codegrees) arr += d + 1;
  const auto order = static_cast<long>(g.order());
  add("order = product of degrees", prod, order);
  if (ref.expected_order) add("order = reference order", *ref.expected_order, order);
  add("reflections = sum(d_i - 1)", refl, static_cast<long>(g.reflections().size()));
  long from_hyperplanes = 0;
  for (const auto& h : g.hyperplanes()) from_hyperplanes += h.order - 1;
  add("reflections = sum over hyperplanes of (e_H - 1)", from_hyperplanes, static_cast<long>(g.reflections().size()));
  add("center order = gcd(degrees)", gcd, static_cast<long>(g.center().order));
  add("hyperplanes = sum(d_i* + 1)", arr, static_cast<long>(g.hyperplanes().size()));
  if (ref.expected_derived_order) add("derived subgroup order", *ref.expected_derived_order, static_cast<long>(g.derived_subgroup().order));
  add("|W^sl| = |W| / 2", order / 2, static_cast<long>(g.sl_subgroup().order));
  const auto molien = g.molien_series(molien_order);
  const auto product = degree_product_series(ref.degrees, molien_order);
  std::size_t first_diff = molien.coeffs.size();
  for (std::size_t k = 0; k < molien.coeffs.size(); ++k)
    if (molien.coeffs[k] != product.coeffs[k]) {
      first_diff = k;
      break;
    }
  rep.checks.push_back({"Molien series = prod 1/(1 - t^d_i) to order " + std::to_string(molien_order),
                        "agree", first_diff == molien.coeffs.size() ? "agree" : "differs at t^" + std::to_string(first_diff),
                        first_diff == molien.coeffs.size() && molien.all_integral()});
  return rep;
}

}  // namespace crg
