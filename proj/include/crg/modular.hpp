#pragma once

// Multimodular linear algebra over Q(zeta_N).
//
// A matrix with entries in Q(zeta_N) is reduced modulo primes p = 1 (mod N)
// under every embedding zeta_N -> r^k (k a unit mod N). Each reduction is row
// reduced over F_p; the images of the RREF entries under all embeddings
// determine their power-basis coordinates mod p, which are lifted by CRT and
// rational reconstruction. Callers verify the reconstructed result exactly.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "crg/cyclotomic.hpp"

namespace crg::modp {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct Field {
  u64 p = 0;

  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p ? s - p : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % p); }
  u64 neg(u64 a) const { return a == 0 ? 0 : p - a; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const {
    if (a == 0) throw Error("inverse of zero modulo p");
    return pow(a, p - 2);
  }
  u64 from_long(long v) const {
    const long r = v % static_cast<long>(p);
    return static_cast<u64>(r < 0 ? r + static_cast<long>(p) : r);
  }
};

/// The prime divides a denominator; the caller should skip this prime.
struct BadReduction : Error {
  using Error::Error;
};

inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL})
    if (n % q == 0) return n == q;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  Field f{n};
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = f.pow(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = f.mul(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Primes p = 1 (mod n) below 2^62, largest first.
class PrimeStream {
 public:
  explicit PrimeStream(int n) : n_(static_cast<u64>(n)) { k_ = ((1ULL << 62) - 2) / n_; }
  u64 next() {
    while (k_ > 0) {
      const u64 p = k_ * n_ + 1;
      --k_;
      if (is_prime_u64(p)) return p;
    }
    throw Error("ran out of primes");
  }

 private:
  u64 n_;
  u64 k_;
};

inline std::vector<int> prime_factors(int n) {
  std::vector<int> out;
  for (int q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) out.push_back(n);
  return out;
}

/// An element of exact multiplicative order n in F_p (requires n | p - 1).
inline u64 primitive_root_of_unity(const Field& f, int n) {
  if (n == 1) return 1;
  const auto qs = prime_factors(n);
  for (u64 g = 2;; ++g) {
    const u64 r = f.pow(g, (f.p - 1) / static_cast<u64>(n));
    bool ok = true;
    for (int q : qs)
      if (f.pow(r, static_cast<u64>(n / q)) == 1) ok = false;
    if (ok) return r;
  }
}

inline std::vector<int> units_mod(int n) {
  std::vector<int> out;
  for (int k = 0; k < std::max(n, 1); ++k)
    if (std::gcd(k, n) == 1) out.push_back(k);
  if (n == 1) out = {0};
  return out;
}

/// Ring map Z[zeta_N][1/den] -> F_p sending zeta_N to a fixed root.
class Embedding {
 public:
  Embedding(Field f, int n, u64 root) : f_(f), n_(n) {
    powers_.resize(static_cast<std::size_t>(n));
    u64 x = 1;
    for (int k = 0; k < n; ++k) {
      powers_[static_cast<std::size_t>(k)] = x;
      x = f_.mul(x, root);
    }
  }

  const Field& field() const { return f_; }
  int conductor() const { return n_; }
  u64 zeta_power(long k) const {
    long r = k % n_;
    if (r < 0) r += n_;
    return powers_[static_cast<std::size_t>(r)];
  }

  u64 map(const Rational& q) const {
    const u64 den = mpz_fdiv_ui(q.get_den().get_mpz_t(), f_.p);
    if (den == 0) throw BadReduction("denominator vanishes modulo p");
    const u64 num = mpz_fdiv_ui(q.get_num().get_mpz_t(), f_.p);
    return f_.mul(num, f_.inv(den));
  }
  u64 map(const Cyclotomic& c) const {
    const int m = c.conductor();
    if (n_ % m != 0) throw Error("value outside the field of the embedding");
    const long step = n_ / m;
    u64 acc = 0;
    const auto& co = c.coeffs();
    for (std::size_t k = 0; k < co.size(); ++k) {
      if (sgn(co[k]) == 0) continue;
      acc = f_.add(acc, f_.mul(map(co[k]), zeta_power(static_cast<long>(k) * step)));
    }
    return acc;
  }

 private:
  Field f_;
  int n_;
  std::vector<u64> powers_;
};

struct ModMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<u64> a;

  ModMatrix() = default;
  ModMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  u64& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  u64 operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(ModMatrix& m, const Field& f) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t p = r;
    while (p < m.rows && m(p, c) == 0) ++p;
    if (p == m.rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    const u64 inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols; ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const u64 fac = m(i, c);
      for (std::size_t j = c; j < m.cols; ++j)
        if (m(r, j) != 0) m(i, j) = f.sub(m(i, j), f.mul(fac, m(r, j)));
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

/// Rational n/d = a (mod m) with |n|, |d| <= sqrt(m/2), if one exists.
inline std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& m) {
  Integer bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  Integer r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  Integer t0 = 0, t1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  if (gcd(t1, m) != 1) return std::nullopt;
  return make_rational(r1, t1);
}

struct ExactRref {
  std::size_t cols = 0;
  std::vector<std::size_t> pivots;
  std::vector<std::vector<Cyclotomic>> rows;  // one per pivot, full width
};

using Filler = std::function<void(const Embedding&, ModMatrix&)>;
using Acceptor = std::function<bool(const ExactRref&)>;

struct MultimodularOptions {
  std::size_t max_primes = 300;
  std::size_t stable_rounds = 1;  // extra primes the reconstruction must survive
};

/// Exact RREF of a matrix over Q(zeta_N) given by its reductions.
inline ExactRref multimodular_rref(int n, std::size_t rows, std::size_t cols, const Filler& fill,
                                   const Acceptor& accept = {}, MultimodularOptions opt = {}) {
  n = detail::canonical_conductor(n);
  const auto units = units_mod(n);
  const std::size_t phi = units.size();
  PrimeStream primes(n);

  std::vector<std::size_t> pivots;
  bool have_pivots = false;
  std::vector<Integer> residues;  // per (row, col, coord)
  Integer modulus = 1;
  std::optional<ExactRref> previous;
  std::size_t stable = 0;

  for (std::size_t used = 0; used < opt.max_primes;) {
    const Field f{primes.next()};
    const u64 root = primitive_root_of_unity(f, n);
    // Images of the RREF under every embedding.
    std::vector<ModMatrix> images;
    std::vector<std::size_t> piv;
    bool bad = false;
    try {
      for (std::size_t u = 0; u < phi; ++u) {
        Embedding emb(f, n, f.pow(root, static_cast<u64>(units[u])));
        ModMatrix m(rows, cols);
        fill(emb, m);
        auto pv = rref(m, f);
        if (u == 0) piv = pv;
        else if (pv != piv) bad = true;
        images.push_back(std::move(m));
      }
    } catch (const BadReduction&) {
      bad = true;
    }
    if (bad) continue;
    ++used;
    if (have_pivots && piv != pivots) {
      // Higher rank wins; an unlucky prime can only lose rank.
      if (piv.size() < pivots.size() || (piv.size() == pivots.size() && piv > pivots)) continue;
      residues.clear();
      modulus = 1;
      previous.reset();
      stable = 0;
    }
    pivots = piv;
    have_pivots = true;

    // Inverse Vandermonde: coordinates from embedded values.
    ModMatrix vand(phi, 2 * phi);
    for (std::size_t u = 0; u < phi; ++u) {
      const u64 node = f.pow(root, static_cast<u64>(units[u]));
      u64 x = 1;
      for (std::size_t j = 0; j < phi; ++j) {
        vand(u, j) = x;
        x = f.mul(x, node);
      }
      vand(u, phi + u) = 1;
    }
    rref(vand, f);
    const std::size_t nent = pivots.size() * cols;
    if (residues.empty()) residues.assign(nent * phi, Integer(0));
    static_assert(sizeof(unsigned long) == sizeof(u64));
    const Integer p_int(static_cast<unsigned long>(f.p));
    Integer minv;
    {
      Integer mm = modulus % p_int;
      mpz_invert(minv.get_mpz_t(), mm.get_mpz_t(), p_int.get_mpz_t());
    }
    for (std::size_t r = 0; r < pivots.size(); ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t j = 0; j < phi; ++j) {
          u64 coord = 0;
          for (std::size_t u = 0; u < phi; ++u) coord = f.add(coord, f.mul(vand(j, phi + u), images[u](r, c)));
          Integer& res = residues[(r * cols + c) * phi + j];
          // CRT: res + modulus * ((coord - res) * modulus^{-1} mod p)
          Integer diff = Integer(static_cast<unsigned long>(coord)) - res % p_int;
          diff %= p_int;
          if (diff < 0) diff += p_int;
          Integer t = diff * minv % p_int;
          res += modulus * t;
        }
      }
    modulus *= p_int;

    // Try to reconstruct.
    ExactRref cand;
    cand.cols = cols;
    cand.pivots = pivots;
    bool ok = true;
    for (std::size_t r = 0; r < pivots.size() && ok; ++r) {
      std::vector<Cyclotomic> row;
      row.reserve(cols);
      for (std::size_t c = 0; c < cols && ok; ++c) {
        std::vector<Rational> coords(phi);
        for (std::size_t j = 0; j < phi && ok; ++j) {
          const Integer& res = residues[(r * cols + c) * phi + j];
          if (res == 0) continue;
          auto q = rational_reconstruct(res, modulus);
          if (!q) ok = false;
          else coords[j] = *q;
        }
        if (ok) row.push_back(n == 1 ? Cyclotomic(coords[0]) : Cyclotomic::from_coords(n, coords));
      }
      if (ok) cand.rows.push_back(std::move(row));
    }
    if (!ok) {
      previous.reset();
      stable = 0;
      continue;
    }
    if (previous && previous->rows == cand.rows) ++stable;
    else stable = 0;
    previous = cand;
    if (stable >= opt.stable_rounds && (!accept || accept(cand))) return cand;
  }
  throw BudgetExceeded("multimodular reconstruction did not stabilize within the prime budget");
}

}  // namespace crg::modp
