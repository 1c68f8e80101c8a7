#include "modrep/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "modrep/errors.hpp"

namespace modrep {

Poly::Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(FieldPtr field, Elem c) { return Poly(std::move(field), {c}); }

Poly Poly::monomial(FieldPtr field, std::size_t n) {
  std::vector<Elem> c(n + 1, 0);
  c[n] = 1;
  return Poly(std::move(field), std::move(c));
}

Poly Poly::linear(FieldPtr field, Elem root) {
  const Elem r = field->neg(root);
  return Poly(std::move(field), {r, 1});
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  const Elem inv = field_->inv(c_.back());
  std::vector<Elem> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = field_->mul(c_[i], inv);
  return Poly(field_, std::move(out));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(field_);
  std::vector<Elem> out(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = field_->mul(c_[i], field_->from_int(static_cast<long long>(i)));
  return Poly(field_, std::move(out));
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (!c_[i]) continue;
    if (!first) os << '+';
    first = false;
    if (c_[i] != 1 || i == 0) os << static_cast<unsigned>(c_[i]);
    if (i >= 1) os << 'x';
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

bool Poly::operator<(const Poly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (std::size_t i = c_.size(); i-- > 0;)
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  return false;
}

Poly operator+(const Poly& a, const Poly& b) {
  const Field& f = a.field();
  std::vector<Elem> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.add(a.coeff(i), b.coeff(i));
  return Poly(a.field_ptr(), std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  const Field& f = a.field();
  std::vector<Elem> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.sub(a.coeff(i), b.coeff(i));
  return Poly(a.field_ptr(), std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.field_ptr());
  const Field& f = a.field();
  std::vector<Elem> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    const Elem x = a.coeffs()[i];
    if (!x) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] = f.add(c[i + j], f.mul(x, b.coeffs()[j]));
  }
  return Poly(a.field_ptr(), std::move(c));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  const Field& f = a.field();
  std::vector<Elem> r = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  if (r.size() <= db) return {Poly(a.field_ptr()), a};
  std::vector<Elem> q(r.size() - db, 0);
  const Elem inv = f.inv(b.lead());
  for (std::size_t i = r.size(); i-- > db;) {
    const Elem c = f.mul(r[i], inv);
    if (!c) continue;
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = f.sub(r[i - db + j], f.mul(c, b.coeffs()[j]));
  }
  r.resize(db);
  return {Poly(a.field_ptr(), std::move(q)), Poly(a.field_ptr(), std::move(r))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

Poly gcd(const Poly& a_in, const Poly& b_in) {
  Poly a = a_in, b = b_in;
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly powmod(const Poly& a, std::uint64_t e, const Poly& m) {
  Poly result = Poly::constant(a.field_ptr(), 1) % m;
  Poly base = a % m;
  while (e) {
    if (e & 1) result = mulmod(result, base, m);
    e >>= 1;
    if (e) base = mulmod(base, base, m);
  }
  return result;
}

Matrix evaluate(const Poly& p, const Matrix& m) {
  if (!m.is_square()) throw DimensionError("evaluate: matrix not square");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  Matrix acc(m.field_ptr(), n, n);
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    acc = acc * m;
    const Elem c = p.coeffs()[i];
    if (c)
      for (std::size_t k = 0; k < n; ++k) rowops::set(f, acc.row_data(k), k, f.add(acc(k, k), c));
  }
  return acc;
}

Poly charpoly(const Matrix& a) {
  if (!a.is_square()) throw DimensionError("charpoly: matrix not square");
  const FieldPtr& fp = a.field_ptr();
  const Field& f = *fp;
  const std::size_t n = a.rows();
  Poly result = Poly::constant(fp, 1);
  RowSpace space(fp, n);
  std::vector<Word> v(a.stride()), w(a.stride());
  std::vector<Elem> coeff;
  std::size_t next_unit = 0;
  while (space.dim() < n) {
    // seed: first unit vector outside the current (A-invariant) span
    while (true) {
      std::fill(v.begin(), v.end(), Word{0});
      rowops::set(f, v.data(), next_unit, 1);
      ++next_unit;
      if (!space.contains(v.data())) break;
    }
    const std::size_t old_dim = space.dim();
    // seg[i] holds coefficients of the polynomial p_i with p_i(A) v == segment row i (mod old span)
    std::vector<std::vector<Elem>> seg;
    std::vector<Word> cur = v;
    std::vector<Elem> cur_poly{1};
    while (true) {
      space.reduce(cur.data(), coeff);
      for (std::size_t i = old_dim; i < coeff.size(); ++i) {
        const Elem c = coeff[i];
        if (!c) continue;
        const auto& sp = seg[i - old_dim];
        const Elem* m = f.mul_row(f.neg(c));
        for (std::size_t k = 0; k < sp.size(); ++k) cur_poly[k] = f.add(cur_poly[k], m[sp[k]]);
      }
      const std::size_t piv = rowops::first_nonzero(f, cur.data(), n);
      if (piv == n) break;
      const Elem inv = f.inv(rowops::get(f, cur.data(), piv));
      rowops::scale(f, cur.data(), inv, n);
      for (auto& x : cur_poly) x = f.mul(x, inv);
      space.add(cur.data());
      seg.push_back(cur_poly);
      rowops::times_matrix(f, cur.data(), a, w.data());
      std::swap(cur, w);
      cur_poly.insert(cur_poly.begin(), Elem{0});
    }
    Poly segment_poly(fp, cur_poly);
    result = result * segment_poly.monic();
  }
  return result;
}

namespace {

Poly pth_root_poly(const Poly& f) {
  const Field& F = f.field();
  const unsigned p = F.p();
  std::vector<Elem> c(f.coeffs().size() / p + 1, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) c[i / p] = F.pth_root(f.coeffs()[i]);
  return Poly(f.field_ptr(), std::move(c));
}

void square_free(const Poly& f, unsigned mult, std::vector<PolyFactor>& out) {
  if (f.degree() <= 0) return;
  Poly c = gcd(f, f.derivative());
  Poly w = f / c;
  unsigned i = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, c);
    Poly fac = w / y;
    if (fac.degree() > 0) out.push_back({fac.monic(), i * mult});
    w = y;
    c = c / y;
    ++i;
  }
  if (!c.is_one() && c.degree() > 0) square_free(pth_root_poly(c.monic()), mult * f.field().p(), out);
}

Poly frobenius(const Poly& h, const Poly& m) { return powmod(h, h.field().q(), m); }

void equal_degree(const Poly& g, int d, Rng& rng, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const FieldPtr& fp = g.field_ptr();
  const Field& F = *fp;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Elem> rc(static_cast<std::size_t>(g.degree()));
    for (auto& x : rc) x = rng.element(F);
    Poly a(fp, rc);
    if (a.degree() <= 0) continue;
    Poly b(fp);
    if (F.p() == 2) {
      // trace map a + a^2 + ... + a^(2^(k d - 1))
      Poly t = a % g;
      b = t;
      const unsigned steps = F.deg() * static_cast<unsigned>(d);
      for (unsigned i = 1; i < steps; ++i) {
        t = mulmod(t, t, g);
        b = b + t;
      }
    } else {
      // a^((q^d - 1)/2) = (a * a^q * ... * a^(q^(d-1)))^((q-1)/2)
      Poly t = a % g, prod = a % g;
      for (int i = 1; i < d; ++i) {
        t = frobenius(t, g);
        prod = mulmod(prod, t, g);
      }
      b = powmod(prod, (F.q() - 1) / 2, g) - Poly::constant(fp, 1);
    }
    Poly h = gcd(g, b);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(h, d, rng, out);
      equal_degree(g / h, d, rng, out);
      return;
    }
  }
  throw ResourceError("equal-degree factorization did not split");
}

}  // namespace

std::vector<PolyFactor> factor(const Poly& f_in, Rng& rng) {
  if (f_in.is_zero()) throw DomainError("factor: zero polynomial");
  const Poly f = f_in.monic();
  const FieldPtr& fp = f.field_ptr();
  std::vector<PolyFactor> sqf;
  square_free(f, 1, sqf);
  std::map<std::vector<Elem>, PolyFactor> acc;
  for (const auto& [g0, mult] : sqf) {
    Poly g = g0;
    Poly h = Poly::monomial(fp, 1) % g;
    const Poly x = Poly::monomial(fp, 1);
    for (int i = 1; g.degree() >= 2 * i; ++i) {
      h = frobenius(h, g);
      Poly d = gcd(g, h - x);
      if (!d.is_one()) {
        std::vector<Poly> parts;
        equal_degree(d, i, rng, parts);
        for (auto& part : parts) {
          auto [it, inserted] = acc.try_emplace(part.coeffs(), PolyFactor{part, 0});
          it->second.multiplicity += mult;
        }
        g = g / d;
        h = h % g;
      }
    }
    if (g.degree() > 0) {
      auto [it, inserted] = acc.try_emplace(g.coeffs(), PolyFactor{g, 0});
      it->second.multiplicity += mult;
    }
  }
  std::vector<PolyFactor> out;
  for (auto& [k, v] : acc) out.push_back(v);
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) { return a.factor < b.factor; });
  return out;
}

std::vector<PolyFactor> factor(const Poly& f) {
  Rng rng(kReferenceSeed);
  return factor(f, rng);
}

bool is_irreducible(const Poly& f) {
  const int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  const Poly g = f.monic();
  const Poly x = Poly::monomial(f.field_ptr(), 1) % g;
  Poly h = x;
  for (int d = 1; d <= n; ++d) {
    h = frobenius(h, g);
    const bool fixed = (h - x).is_zero();
    if (d < n && !gcd(g, h - x).is_one()) return false;
    if (d == n) return fixed;
  }
  return false;
}

std::vector<PolyFactor> charpoly_and_factor(const Matrix& a) { return factor(charpoly(a)); }

}  // namespace modrep
