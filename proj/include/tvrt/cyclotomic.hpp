#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_n), optionally extended by a
// declared square root:  K = Q(zeta_n)[s]/(s^2 - delta)  with delta in Q(zeta_n).
//
// Elements are kept in canonical form: coefficient vectors fully reduced
// modulo the n-th cyclotomic polynomial (and s^2 reduced via delta), so two
// values are equal iff their canonical forms are componentwise equal.
// Coefficients are exact rationals (GMP).  No floating point enters any
// computation; numeric embedding exists for display only.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace tvrt {

using Rational = mpq_class;
using Poly = std::vector<Rational>;  // coefficients, low degree first, trailing zeros trimmed

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// -- polynomial helpers over Q ------------------------------------------------

void poly_trim(Poly& p);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
// division with remainder; b must be nonzero
void poly_divrem(const Poly& a, const Poly& b, Poly& quot, Poly& rem);
// extended gcd: g = u*a + v*b with g monic (or zero)
void poly_egcd(const Poly& a, const Poly& b, Poly& g, Poly& u, Poly& v);
// the n-th cyclotomic polynomial, exact integer coefficients
Poly cyclotomic_polynomial(unsigned n);

// -- field descriptor ---------------------------------------------------------

struct FieldSpec {
  unsigned order = 1;     // n in Q(zeta_n)
  Poly modulus;           // Phi_n, monic, degree phi(n)
  Poly ext_delta;         // reduced mod Phi_n; empty when there is no extension
  unsigned degree() const { return modulus.empty() ? 0 : unsigned(modulus.size() - 1); }
  bool has_ext() const { return !ext_delta.empty(); }
  bool same_as(const FieldSpec& o) const {
    return order == o.order && ext_delta == o.ext_delta;
  }
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

// Q(zeta_n); results are cached per order.
FieldPtr cyclotomic_field(unsigned n);
// Q(zeta_n)(sqrt(delta)); delta given as an element of the plain field.
class FieldElement;
FieldPtr cyclotomic_field_with_sqrt(unsigned n, const FieldElement& delta);

// -- field elements -----------------------------------------------------------

class FieldElement {
 public:
  FieldElement() = default;  // invalid until assigned; is_valid() == false
  static FieldElement zero(const FieldPtr& f);
  static FieldElement one(const FieldPtr& f);
  static FieldElement from_rational(const FieldPtr& f, const Rational& q);
  static FieldElement from_int(const FieldPtr& f, long v);
  static FieldElement zeta(const FieldPtr& f);       // the generator zeta_n
  static FieldElement zeta_pow(const FieldPtr& f, long k);
  static FieldElement sqrt_symbol(const FieldPtr& f);  // s; requires an extension
  // raw construction; vectors are reduced to canonical form
  static FieldElement make(const FieldPtr& f, Poly base, Poly ext = {});

  bool is_valid() const { return fld_ != nullptr; }
  const FieldPtr& field() const { return fld_; }
  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;               // lies in Q
  Rational rational_value() const;        // requires is_rational()

  FieldElement operator-() const;
  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;  // throws on division by zero
  FieldElement inverse() const;
  FieldElement pow(long k) const;
  FieldElement conjugate() const;  // Galois map zeta -> zeta^{-1}, s -> s

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  // embed into a larger field: order must be a multiple of this order, and any
  // extension element must map onto the target's extension element
  FieldElement embed(const FieldPtr& target) const;

  // canonical text form, parseable by parse_field_element
  std::string to_string() const;
  // complex decimal approximation at zeta_n = exp(2*pi*i/n), 'digits'
  // significant digits; display only
  std::string numeric_string(unsigned digits) const;

  const Poly& base_part() const { return base_; }
  const Poly& ext_part() const { return ext_; }

 private:
  FieldPtr fld_;
  Poly base_;  // a(zeta)
  Poly ext_;   // b(zeta), coefficient of s
  void canonicalize();
  static void check_same_field(const FieldElement& a, const FieldElement& b);
};

// Parse the data-file syntax: a polynomial in `z` (and `s` when the field has
// an extension) with rational coefficients, e.g. "1/2*z^3 - z + 2".
// Whitespace-insensitive; exponents nonnegative.
FieldElement parse_field_element(const FieldPtr& f, const std::string& text);

// Smallest common field two elements embed into (lcm of orders; extensions
// must be compatible).  Throws when no common embedding exists.
void unify(FieldElement& a, FieldElement& b);

}  // namespace tvrt
