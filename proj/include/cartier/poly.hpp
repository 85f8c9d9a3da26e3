#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cartier/field.hpp"

namespace cartier {

/// Allocation-free building blocks over coefficient spans (ascending powers).
/// Outputs are resized, never shrunk in capacity, so buffers can be reused
/// across calls in the search loop. Inputs and outputs must not alias.
namespace kernel {

/// Length after dropping trailing zeros.
std::size_t trimmed_size(std::span<const Code> a) noexcept;

void mul(const Field& field, std::span<const Code> a, std::span<const Code> b, std::vector<Code>& out);

/// Product truncated to its first n coefficients.
void mul_low(const Field& field, std::span<const Code> a, std::span<const Code> b, std::size_t n,
             std::vector<Code>& out);

/// a^e by left-to-right square-and-multiply; if n is set the result is
/// truncated mod x^n at every step.
void power(const Field& field, std::span<const Code> a, std::uint64_t e, std::vector<Code>& out,
           std::vector<Code>& scratch, std::optional<std::size_t> n = std::nullopt);

void derivative(const Field& field, std::span<const Code> a, std::vector<Code>& out);

/// Reduces a modulo the nonzero b in place; a is left trimmed.
void rem_in_place(const Field& field, std::vector<Code>& a, std::span<const Code> b);

/// Monic gcd; a and b are consumed. The result is left in a.
void gcd_in_place(const Field& field, std::vector<Code>& a, std::vector<Code>& b);

struct SquarefreeScratch {
  std::vector<Code> a;
  std::vector<Code> b;
};

/// f must be trimmed with degree >= 1.
bool is_squarefree(const Field& field, std::span<const Code> f, SquarefreeScratch& scratch);

}  // namespace kernel

/// Dense univariate polynomial over a finite field, ascending coefficients,
/// never carrying trailing zeros. The zero polynomial has no coefficients and
/// no degree.
class Poly {
 public:
  explicit Poly(FieldPtr field);
  Poly(FieldPtr field, std::vector<Code> coeffs);

  static Poly from_elements(FieldPtr field, std::span<const FieldElement> coeffs);
  static Poly monomial(FieldPtr field, std::size_t n, Code c = 1);
  /// "0,1,0,1" = x + x^3, elements in the field element text format.
  static Poly parse(FieldPtr field, std::string_view text);

  const FieldPtr& field() const noexcept { return field_; }
  std::span<const Code> coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::optional<std::size_t> degree() const noexcept;
  /// Coefficient of x^i; zero beyond the degree.
  Code coeff_code(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }
  FieldElement coeff(std::size_t i) const { return {field_, coeff_code(i)}; }
  /// Inverse of parse.
  std::string to_string() const;

  friend bool operator==(const Poly& f, const Poly& g);
  friend Poly operator+(const Poly& f, const Poly& g);
  friend Poly operator-(const Poly& f, const Poly& g);
  friend Poly operator*(const Poly& f, const Poly& g);

 private:
  FieldPtr field_;
  std::vector<Code> coeffs_;
};

Poly mul(const Poly& f, const Poly& g);
Poly pow(const Poly& f, std::uint64_t n);
/// f^((p-1)/2); its x^i coefficient is kappa_i. Throws for f = 0.
Poly half_power(const Poly& f);
Poly derivative(const Poly& f);
/// Quotient and remainder; throws for division by zero.
std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g);
Poly make_monic(const Poly& f);
/// Monic gcd; throws when both inputs are zero.
Poly gcd(const Poly& f, const Poly& g);
/// gcd(f, f') constant and f' != 0. Throws for constant or zero f.
bool is_squarefree(const Poly& f);
/// Rabin's test for a monic polynomial over the prime field. Throws for
/// non-monic, constant or extension-field input.
bool is_irreducible(const Poly& f);
FieldElement eval(const Poly& f, const FieldElement& x);

}  // namespace cartier
