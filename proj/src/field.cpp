#include "modrep/field.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "modrep/errors.hpp"

namespace modrep {

namespace {

using IntPoly = std::vector<unsigned>;  // over GF(p), low-to-high

void trim(IntPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

IntPoly poly_mod(IntPoly a, const IntPoly& m, unsigned p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  unsigned lead_inv = 1;
  while ((lead_inv * m.back()) % p != 1) ++lead_inv;
  while (a.size() > dm) {
    const unsigned c = (a.back() * lead_inv) % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + p * p - c * m[i] % p) % p;
    trim(a);
  }
  return a;
}

IntPoly poly_mulmod(const IntPoly& a, const IntPoly& b, const IntPoly& m, unsigned p) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(r), m, p);
}

IntPoly poly_gcd(IntPoly a, IntPoly b, unsigned p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    IntPoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod m
IntPoly frob_power(const IntPoly& m, unsigned p, unsigned k) {
  IntPoly x = poly_mod(IntPoly{0, 1}, m, p);
  for (unsigned step = 0; step < k; ++step) {
    IntPoly acc{1};
    for (unsigned i = 0; i < p; ++i) acc = poly_mulmod(acc, x, m, p);
    x = acc;
  }
  return x;
}

}  // namespace

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible_over_prime(unsigned p, const std::vector<unsigned>& poly_in) {
  IntPoly f = poly_in;
  for (auto& c : f) c %= p;
  trim(f);
  if (f.size() < 2) return false;
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  if (n == 1) return true;
  // Rabin: x^(p^n) == x mod f, and gcd(x^(p^(n/r)) - x, f) == 1 for prime r | n.
  IntPoly xn = frob_power(f, p, n);
  IntPoly x = poly_mod(IntPoly{0, 1}, f, p);
  if (xn != x) return false;
  for (unsigned r = 2; r <= n; ++r) {
    if (n % r != 0 || !is_prime(r)) continue;
    IntPoly h = frob_power(f, p, n / r);
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    if (poly_gcd(f, h, p).size() != 1) return false;
  }
  return true;
}

std::vector<unsigned> default_minpoly(unsigned p, unsigned deg) {
  static const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>> table = {
      {{2, 2}, {1, 1, 1}},          {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},    {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}}, {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
      {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {{3, 2}, {2, 2, 1}},          {{3, 3}, {1, 2, 0, 1}},
      {{3, 4}, {2, 0, 0, 2, 1}},    {{5, 2}, {2, 4, 1}},
      {{5, 3}, {3, 3, 0, 1}},       {{7, 2}, {3, 6, 1}},
      {{11, 2}, {2, 7, 1}},         {{13, 2}, {2, 12, 1}},
  };
  if (deg == 1) return {0, 1};
  auto it = table.find({p, deg});
  return it == table.end() ? std::vector<unsigned>{} : it->second;
}

Field::Field(const FieldSpec& spec_in) : spec_(spec_in) {
  if (!is_prime(spec_.p)) throw DomainError("field characteristic must be prime");
  if (spec_.deg < 1) throw DomainError("field degree must be at least 1");
  unsigned q = 1;
  for (unsigned i = 0; i < spec_.deg; ++i) {
    q *= spec_.p;
    if (q > 256) throw DomainError("fields with more than 256 elements are not supported");
  }
  q_ = q;
  if (spec_.minpoly.empty()) spec_.minpoly = default_minpoly(spec_.p, spec_.deg);
  if (spec_.deg == 1) spec_.minpoly = {0, 1};
  const auto& mp = spec_.minpoly;
  if (mp.size() != spec_.deg + 1 || mp.back() != 1)
    throw DomainError("defining polynomial must be monic of degree " + std::to_string(spec_.deg));
  if (spec_.deg > 1 && !is_irreducible_over_prime(spec_.p, mp))
    throw DomainError("defining polynomial is reducible");

  const unsigned p = spec_.p, k = spec_.deg;
  auto digits = [&](unsigned a) {
    IntPoly d(k);
    for (unsigned i = 0; i < k; ++i, a /= p) d[i] = a % p;
    return d;
  };
  auto undigits = [&](const IntPoly& d) {
    unsigned v = 0, w = 1;
    for (unsigned i = 0; i < k && i < d.size(); ++i, w *= p) v += d[i] * w;
    return static_cast<Elem>(v);
  };
  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  root_.assign(q, 0);
  for (unsigned a = 0; a < q; ++a) {
    const IntPoly da = digits(a);
    IntPoly dn(k);
    for (unsigned i = 0; i < k; ++i) dn[i] = (p - da[i]) % p;
    neg_[a] = undigits(dn);
    for (unsigned b = 0; b < q; ++b) {
      const IntPoly db = digits(b);
      IntPoly s(k);
      for (unsigned i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p;
      add_[a * q + b] = undigits(s);
      if (k == 1) {
        mul_[a * q + b] = static_cast<Elem>((a * b) % p);
      } else {
        IntPoly pa = da, pb = db;
        trim(pa);
        trim(pb);
        mul_[a * q + b] = undigits(poly_mulmod(pa, pb, mp, p));
      }
    }
  }
  for (unsigned a = 1; a < q; ++a)
    for (unsigned b = 1; b < q; ++b)
      if (mul_[a * q + b] == 1) inv_[a] = static_cast<Elem>(b);
  for (unsigned a = 0; a < q; ++a) root_[pow(static_cast<Elem>(a), p)] = static_cast<Elem>(a);
  for (unsigned a = 1; a < q; ++a) {
    unsigned order = 1;
    Elem x = static_cast<Elem>(a);
    while (x != 1) {
      x = mul(x, static_cast<Elem>(a));
      ++order;
    }
    if (order == q - 1) {
      primitive_ = static_cast<Elem>(a);
      break;
    }
  }
}

FieldPtr Field::get(const FieldSpec& spec) {
  static std::mutex mutex;
  static std::map<std::pair<unsigned, std::vector<unsigned>>, FieldPtr> cache;
  FieldSpec key = spec;
  if (key.deg == 1) key.minpoly = {0, 1};
  if (key.minpoly.empty()) key.minpoly = default_minpoly(key.p, key.deg);
  std::lock_guard lock(mutex);
  auto it = cache.find({key.p, key.minpoly});
  if (it != cache.end() && it->second->deg() == key.deg) return it->second;
  auto f = std::make_shared<const Field>(key);
  cache[{key.p, f->spec().minpoly}] = f;
  return f;
}

std::string Field::name() const {
  std::ostringstream os;
  os << "GF(" << q_ << ")";
  return os.str();
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw DomainError("inverse of zero");
  return inv_[a];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem r = 1, b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

Elem Field::from_int(long long v) const {
  long long r = v % static_cast<long long>(spec_.p);
  if (r < 0) r += spec_.p;
  return static_cast<Elem>(r);
}

std::vector<unsigned> Field::prime_field_matrix(Elem a) const {
  const unsigned k = spec_.deg, p = spec_.p;
  std::vector<unsigned> out(k * k);
  Elem basis = 1;
  Elem x = k > 1 ? static_cast<Elem>(p) : 1;  // the class of x is the digit vector (0,1,...)
  for (unsigned i = 0; i < k; ++i) {
    unsigned v = mul(basis, a);
    for (unsigned j = 0; j < k; ++j, v /= p) out[i * k + j] = v % p;
    basis = mul(basis, x);
  }
  return out;
}

}  // namespace modrep
