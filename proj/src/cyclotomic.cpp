#include "tvrt/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

#include <mpfr.h>

namespace tvrt {

// -- polynomial helpers -------------------------------------------------------

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  poly_trim(r);
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  poly_trim(r);
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  poly_trim(r);
  return r;
}

void poly_divrem(const Poly& a, const Poly& b, Poly& quot, Poly& rem) {
  if (b.empty()) throw Error("polynomial division by zero");
  rem = a;
  poly_trim(rem);
  quot.assign(rem.size() > b.size() ? rem.size() - b.size() + 1 : 1, Rational(0));
  const Rational& lead = b.back();
  while (rem.size() >= b.size() && !rem.empty()) {
    Rational c = rem.back() / lead;
    size_t shift = rem.size() - b.size();
    quot[shift] += c;
    for (size_t i = 0; i < b.size(); ++i) rem[shift + i] -= c * b[i];
    poly_trim(rem);
  }
  poly_trim(quot);
}

void poly_egcd(const Poly& a, const Poly& b, Poly& g, Poly& u, Poly& v) {
  Poly r0 = a, r1 = b;
  poly_trim(r0);
  poly_trim(r1);
  Poly u0 = {Rational(1)}, u1 = {};
  Poly v0 = {}, v1 = {Rational(1)};
  while (!r1.empty()) {
    Poly q, r;
    poly_divrem(r0, r1, q, r);
    Poly u2 = poly_sub(u0, poly_mul(q, u1));
    Poly v2 = poly_sub(v0, poly_mul(q, v1));
    r0 = r1; r1 = r;
    u0 = u1; u1 = u2;
    v0 = v1; v1 = v2;
  }
  g = r0; u = u0; v = v0;
  if (!g.empty() && g.back() != 1) {
    Rational lead = g.back();
    for (auto& c : g) c /= lead;
    for (auto& c : u) c /= lead;
    for (auto& c : v) c /= lead;
  }
}

Poly cyclotomic_polynomial(unsigned n) {
  static std::map<unsigned, Poly> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n == 0) throw Error("cyclotomic order must be positive");
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
  Poly num(n + 1, Rational(0));
  num[0] = -1;
  num[n] = 1;
  Poly den = {Rational(1)};
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto jt = cache.find(d);
    Poly phi_d;
    if (jt != cache.end()) {
      phi_d = jt->second;
    } else {
      // recurse without re-locking: compute iteratively over divisors of d
      // (divisors are processed in increasing order, so this path only runs
      //  for fresh sub-divisors)
      Poly nd(d + 1, Rational(0));
      nd[0] = -1;
      nd[d] = 1;
      Poly dd = {Rational(1)};
      for (unsigned e = 1; e < d; ++e) {
        if (d % e != 0) continue;
        dd = poly_mul(dd, cache.at(e));  // guaranteed present by induction
      }
      Poly q, r;
      poly_divrem(nd, dd, q, r);
      if (!r.empty()) throw Error("internal: cyclotomic division not exact");
      phi_d = q;
      cache.emplace(d, phi_d);
    }
    den = poly_mul(den, phi_d);
  }
  Poly q, r;
  poly_divrem(num, den, q, r);
  if (!r.empty()) throw Error("internal: cyclotomic division not exact");
  cache.emplace(n, q);
  return q;
}

// -- field construction -------------------------------------------------------

namespace {
Poly reduce_mod(const Poly& p, const Poly& modulus) {
  Poly q, r;
  poly_divrem(p, modulus, q, r);
  return r;
}
}  // namespace

FieldPtr cyclotomic_field(unsigned n) {
  static std::map<unsigned, FieldPtr> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto spec = std::make_shared<FieldSpec>();
  spec->order = n;
  spec->modulus = cyclotomic_polynomial(n);
  FieldPtr f = spec;
  cache.emplace(n, f);
  return f;
}

FieldPtr cyclotomic_field_with_sqrt(unsigned n, const FieldElement& delta) {
  if (delta.field()->order != n || delta.field()->has_ext())
    throw Error("sqrt extension element must live in the plain field Q(zeta_n)");
  if (delta.is_zero()) throw Error("sqrt extension element must be nonzero");
  auto spec = std::make_shared<FieldSpec>();
  spec->order = n;
  spec->modulus = cyclotomic_polynomial(n);
  spec->ext_delta = delta.base_part();
  return spec;
}

// -- elements -----------------------------------------------------------------

void FieldElement::canonicalize() {
  for (auto& c : base_) c.canonicalize();  // raw mpq input may be non-canonical
  for (auto& c : ext_) c.canonicalize();
  poly_trim(base_);
  poly_trim(ext_);
  base_ = reduce_mod(base_, fld_->modulus);
  if (!ext_.empty()) {
    if (!fld_->has_ext()) throw Error("element has sqrt part but field has no extension");
    ext_ = reduce_mod(ext_, fld_->modulus);
  }
}

FieldElement FieldElement::make(const FieldPtr& f, Poly base, Poly ext) {
  FieldElement e;
  e.fld_ = f;
  e.base_ = std::move(base);
  e.ext_ = std::move(ext);
  e.canonicalize();
  return e;
}

FieldElement FieldElement::zero(const FieldPtr& f) { return make(f, {}); }
FieldElement FieldElement::one(const FieldPtr& f) { return make(f, {Rational(1)}); }

FieldElement FieldElement::from_rational(const FieldPtr& f, const Rational& q) {
  return make(f, {q});
}

FieldElement FieldElement::from_int(const FieldPtr& f, long v) {
  return make(f, {Rational(v)});
}

FieldElement FieldElement::zeta(const FieldPtr& f) { return zeta_pow(f, 1); }

FieldElement FieldElement::zeta_pow(const FieldPtr& f, long k) {
  long n = long(f->order);
  long r = ((k % n) + n) % n;
  Poly p(size_t(r) + 1, Rational(0));
  p[size_t(r)] = 1;
  return make(f, std::move(p));
}

FieldElement FieldElement::sqrt_symbol(const FieldPtr& f) {
  if (!f->has_ext()) throw Error("field has no sqrt extension");
  return make(f, {}, {Rational(1)});
}

bool FieldElement::is_zero() const { return base_.empty() && ext_.empty(); }

bool FieldElement::is_one() const {
  return ext_.empty() && base_.size() == 1 && base_[0] == 1;
}

bool FieldElement::is_rational() const {
  return ext_.empty() && base_.size() <= 1;
}

Rational FieldElement::rational_value() const {
  if (!is_rational()) throw Error("element is not rational");
  return base_.empty() ? Rational(0) : base_[0];
}

void FieldElement::check_same_field(const FieldElement& a, const FieldElement& b) {
  if (!a.fld_ || !b.fld_) throw Error("uninitialized field element");
  if (a.fld_ == b.fld_) return;
  if (!a.fld_->same_as(*b.fld_))
    throw Error("field order mismatch: embed operands into a common field first");
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& c : r.base_) c = -c;
  for (auto& c : r.ext_) c = -c;
  return r;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same_field(*this, o);
  return make(fld_, poly_add(base_, o.base_), poly_add(ext_, o.ext_));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same_field(*this, o);
  return make(fld_, poly_sub(base_, o.base_), poly_sub(ext_, o.ext_));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same_field(*this, o);
  // (a + b s)(c + d s) = (ac + bd*delta) + (ad + bc) s
  Poly ac = poly_mul(base_, o.base_);
  if (ext_.empty() && o.ext_.empty()) return make(fld_, std::move(ac));
  Poly bd = poly_mul(ext_, o.ext_);
  Poly hi = poly_add(poly_mul(base_, o.ext_), poly_mul(ext_, o.base_));
  Poly lo = poly_add(ac, poly_mul(bd, fld_->ext_delta));
  return make(fld_, std::move(lo), std::move(hi));
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error("division by zero");
  if (ext_.empty()) {
    Poly g, u, v;
    poly_egcd(base_, fld_->modulus, g, u, v);
    if (g.size() != 1)
      throw Error("internal: cyclotomic modulus not irreducible over element");
    FieldElement r = make(fld_, std::move(u));
    return r * from_rational(fld_, Rational(1) / g[0]);
  }
  // (a + b s)^{-1} = (a - b s) / (a^2 - delta b^2)
  FieldElement a = make(fld_, base_);
  FieldElement b = make(fld_, ext_);
  FieldElement delta = make(fld_, fld_->ext_delta);
  FieldElement norm = a * a - delta * b * b;
  if (norm.is_zero())
    throw Error("sqrt extension is degenerate: norm of element vanished");
  FieldElement ninv = norm.inverse();
  FieldElement conj = make(fld_, base_, poly_sub({}, ext_));
  return conj * ninv;
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same_field(*this, o);
  return *this * o.inverse();
}

FieldElement FieldElement::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  FieldElement acc = one(fld_);
  FieldElement b = *this;
  unsigned long e = static_cast<unsigned long>(k);
  while (e) {
    if (e & 1) acc = acc * b;
    b = b * b;
    e >>= 1;
  }
  return acc;
}

FieldElement FieldElement::conjugate() const {
  unsigned n = fld_->order;
  auto map_poly = [&](const Poly& p) {
    Poly lifted(n, Rational(0));
    for (size_t k = 0; k < p.size(); ++k) {
      size_t idx = (k == 0) ? 0 : size_t(n) - k;
      lifted[idx] += p[k];
    }
    return lifted;
  };
  if (fld_->has_ext()) {
    // conjugation must fix delta for s -> s to be a field map
    FieldElement d = make(fld_, fld_->ext_delta);
    FieldElement dc = make(fld_, map_poly(fld_->ext_delta));
    if (!(d == dc))
      throw Error("conjugate undefined: sqrt extension element is not conjugation-invariant");
  }
  return make(fld_, map_poly(base_), ext_.empty() ? Poly{} : map_poly(ext_));
}

bool FieldElement::operator==(const FieldElement& o) const {
  check_same_field(*this, o);
  return base_ == o.base_ && ext_ == o.ext_;
}

FieldElement FieldElement::embed(const FieldPtr& target) const {
  if (fld_->same_as(*target)) {
    FieldElement r = *this;
    r.fld_ = target;
    return r;
  }
  unsigned m = fld_->order, n = target->order;
  if (n % m != 0)
    throw Error("no embedding: " + std::to_string(m) + " does not divide " + std::to_string(n));
  unsigned stride = n / m;
  auto up = [&](const Poly& p) {
    if (p.empty()) return Poly{};
    Poly lifted(size_t(p.size() - 1) * stride + 1, Rational(0));
    for (size_t k = 0; k < p.size(); ++k) lifted[k * stride] = p[k];
    return lifted;
  };
  if (!ext_.empty() || fld_->has_ext()) {
    if (!target->has_ext())
      throw Error("no embedding: target field lacks the sqrt extension");
    // delta must map onto the target delta
    Poly mapped = reduce_mod(up(fld_->ext_delta), target->modulus);
    if (mapped != target->ext_delta)
      throw Error("no embedding: sqrt extensions disagree");
  }
  return make(target, up(base_), up(ext_));
}

void unify(FieldElement& a, FieldElement& b) {
  if (a.field()->same_as(*b.field())) {
    if (a.field() != b.field()) b = b.embed(a.field());
    return;
  }
  unsigned m = a.field()->order, n = b.field()->order;
  unsigned g = std::__gcd(m, n);
  unsigned l = m / g * n;
  FieldPtr target;
  if (a.field()->has_ext() && b.field()->has_ext()) {
    if (l == m) target = a.field();
    else if (l == n) target = b.field();
    else throw Error("no common field: incompatible sqrt extensions");
  } else if (a.field()->has_ext()) {
    if (l != m) throw Error("no common field: extension only available at order " + std::to_string(m));
    target = a.field();
  } else if (b.field()->has_ext()) {
    if (l != n) throw Error("no common field: extension only available at order " + std::to_string(n));
    target = b.field();
  } else {
    target = cyclotomic_field(l);
  }
  a = a.embed(target);
  b = b.embed(target);
}

// -- text form ----------------------------------------------------------------

namespace {

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

void append_poly(std::ostringstream& os, const Poly& p, const char* sym, bool s_factor,
                 bool& first) {
  for (size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0) continue;
    Rational c = p[k];
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    bool unit_coeff = (c == 1) && (k > 0 || s_factor);
    if (!unit_coeff) os << rational_str(c);
    bool printed = !unit_coeff;
    if (k > 0) {
      if (printed) os << "*";
      os << sym;
      if (k > 1) os << "^" << k;
      printed = true;
    }
    if (s_factor) {
      if (printed) os << "*";
      os << "s";
    }
  }
}

}  // namespace

std::string FieldElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  append_poly(os, base_, "z", false, first);
  append_poly(os, ext_, "z", true, first);
  if (first) os << "0";
  return os.str();
}

// -- parser -------------------------------------------------------------------

namespace {

struct Parser {
  const std::string& text;
  size_t pos = 0;
  explicit Parser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw Error("field element parse error at position " + std::to_string(pos) + ": " + msg +
                " in \"" + text + "\"");
  }

  mpz_class integer() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return mpz_class(text.substr(start, pos - start));
  }

  // term := factor ('*' factor)* ; factor := rational | z['^'k] | s['^'k]
  struct Term {
    Rational coeff = Rational(1);
    unsigned long zexp = 0;
    unsigned long sexp = 0;
  };

  Term term() {
    Term t;
    bool any = false;
    for (;;) {
      char c = peek();
      if (c == 'z' || c == 's') {
        ++pos;
        unsigned long e = 1;
        if (accept('^')) {
          mpz_class v = integer();
          if (v < 0 || v > 64) fail("exponent out of range");
          e = v.get_ui();
        }
        if (c == 'z') t.zexp += e;
        else t.sexp += e;
        any = true;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        mpz_class num = integer();
        mpz_class den = 1;
        if (accept('/')) den = integer();
        if (den == 0) fail("zero denominator");
        Rational q(num, den);
        q.canonicalize();
        t.coeff *= q;
        any = true;
      } else {
        fail("expected factor");
      }
      if (!accept('*')) break;
    }
    if (!any) fail("empty term");
    return t;
  }
};

}  // namespace

FieldElement parse_field_element(const FieldPtr& f, const std::string& text) {
  Parser p(text);
  FieldElement acc = FieldElement::zero(f);
  bool first = true;
  while (!p.eof()) {
    int sign = 1;
    if (p.accept('+')) {
    } else if (p.accept('-')) {
      sign = -1;
    } else if (!first) {
      p.fail("expected '+' or '-'");
    }
    if (p.eof()) p.fail("dangling sign");
    Parser::Term t = p.term();
    FieldElement v = FieldElement::from_rational(f, sign < 0 ? Rational(-t.coeff) : t.coeff);
    if (t.zexp) v = v * FieldElement::zeta_pow(f, long(t.zexp));
    if (t.sexp) {
      if (!f->has_ext())
        throw Error("symbol 's' used but the field declares no sqrt extension: \"" + text + "\"");
      v = v * FieldElement::sqrt_symbol(f).pow(long(t.sexp));
    }
    acc = acc + v;
    first = false;
  }
  if (first) throw Error("empty field element text");
  return acc;
}

// -- numeric embedding (display only) ------------------------------------------

namespace {

struct Complex {
  mpfr_t re, im;
  explicit Complex(mpfr_prec_t prec) {
    mpfr_init2(re, prec);
    mpfr_init2(im, prec);
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
  }
  ~Complex() {
    mpfr_clear(re);
    mpfr_clear(im);
  }
  Complex(const Complex&) = delete;
  Complex& operator=(const Complex&) = delete;
};

void eval_poly(Complex& out, const Poly& p, unsigned order, mpfr_prec_t prec) {
  mpfr_t angle, two_pi, t, c, s, tre, tim;
  mpfr_inits2(prec, angle, two_pi, t, c, s, tre, tim, mpfr_ptr(nullptr));
  mpfr_const_pi(two_pi, MPFR_RNDN);
  mpfr_mul_ui(two_pi, two_pi, 2, MPFR_RNDN);
  mpfr_set_zero(out.re, 1);
  mpfr_set_zero(out.im, 1);
  for (size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0) continue;
    mpfr_mul_ui(angle, two_pi, static_cast<unsigned long>(k), MPFR_RNDN);
    mpfr_div_ui(angle, angle, order, MPFR_RNDN);
    mpfr_cos(c, angle, MPFR_RNDN);
    mpfr_sin(s, angle, MPFR_RNDN);
    mpfr_set_q(t, p[k].get_mpq_t(), MPFR_RNDN);
    mpfr_mul(tre, t, c, MPFR_RNDN);
    mpfr_mul(tim, t, s, MPFR_RNDN);
    mpfr_add(out.re, out.re, tre, MPFR_RNDN);
    mpfr_add(out.im, out.im, tim, MPFR_RNDN);
  }
  mpfr_clears(angle, two_pi, t, c, s, tre, tim, mpfr_ptr(nullptr));
}

// principal square root of (re, im)
void complex_sqrt(Complex& x, mpfr_prec_t prec) {
  mpfr_t r, theta, half;
  mpfr_inits2(prec, r, theta, half, mpfr_ptr(nullptr));
  mpfr_hypot(r, x.re, x.im, MPFR_RNDN);
  mpfr_atan2(theta, x.im, x.re, MPFR_RNDN);
  mpfr_sqrt(r, r, MPFR_RNDN);
  mpfr_div_ui(theta, theta, 2, MPFR_RNDN);
  mpfr_set(half, theta, MPFR_RNDN);
  mpfr_cos(theta, half, MPFR_RNDN);
  mpfr_sin(half, half, MPFR_RNDN);
  mpfr_mul(theta, theta, r, MPFR_RNDN);
  mpfr_mul(half, half, r, MPFR_RNDN);
  mpfr_set(x.re, theta, MPFR_RNDN);
  mpfr_set(x.im, half, MPFR_RNDN);
  mpfr_clears(r, theta, half, mpfr_ptr(nullptr));
}

}  // namespace

std::string FieldElement::numeric_string(unsigned digits) const {
  if (digits == 0) digits = 1;
  mpfr_prec_t prec = mpfr_prec_t(digits * 4 + 64);
  Complex a(prec), b(prec);
  eval_poly(a, base_, fld_->order, prec);
  if (!ext_.empty()) {
    Complex d(prec);
    eval_poly(d, fld_->ext_delta, fld_->order, prec);
    complex_sqrt(d, prec);
    eval_poly(b, ext_, fld_->order, prec);
    // a += b * sqrt(delta)
    mpfr_t t1, t2;
    mpfr_inits2(prec, t1, t2, mpfr_ptr(nullptr));
    mpfr_mul(t1, b.re, d.re, MPFR_RNDN);
    mpfr_mul(t2, b.im, d.im, MPFR_RNDN);
    mpfr_sub(t1, t1, t2, MPFR_RNDN);
    mpfr_add(a.re, a.re, t1, MPFR_RNDN);
    mpfr_mul(t1, b.re, d.im, MPFR_RNDN);
    mpfr_mul(t2, b.im, d.re, MPFR_RNDN);
    mpfr_add(t1, t1, t2, MPFR_RNDN);
    mpfr_add(a.im, a.im, t1, MPFR_RNDN);
    mpfr_clears(t1, t2, mpfr_ptr(nullptr));
  }
  char* sre = nullptr;
  char* sim = nullptr;
  mpfr_asprintf(&sre, "%.*Rg", int(digits), a.re);
  mpfr_asprintf(&sim, "%.*Rg", int(digits), a.im);
  std::string out = std::string(sre) + (sim[0] == '-' ? "" : "+") + sim + "i";
  mpfr_free_str(sre);
  mpfr_free_str(sim);
  return out;
}

}  // namespace tvrt
