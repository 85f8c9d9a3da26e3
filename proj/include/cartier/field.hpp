#pragma once

// Exact arithmetic in F_p and F_{p^k} = F_p[a]/(m(a)).
//
// Elements are stored as a canonical code: the coordinate vector
// (c_0, ..., c_{k-1}) of c_0 + c_1 a + ... + c_{k-1} a^{k-1} packed as the
// base-p integer c_0 + c_1 p + ... + c_{k-1} p^{k-1}. Ascending code order is
// therefore ascending base-p coordinate order.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cartier {

using Code = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class RandomStream;

/// Description of F_{p^k} plus the arithmetic on canonical codes.
///
/// Fields with at most kTableLimit elements precompute Cayley tables for
/// addition, subtraction and multiplication (built from the coordinate
/// arithmetic, so they are exact); larger fields use coordinate arithmetic
/// directly.
class Field {
 public:
  static constexpr std::uint64_t kTableLimit = 256;

  /// Validates p (odd prime) and k >= 1. Without a modulus and k > 1 the
  /// lexicographically smallest monic irreducible of degree k is chosen;
  /// candidates [c_0, ..., c_{k-1}, 1] are ordered by c_0 + c_1 p + ...
  static FieldPtr make(std::uint32_t p, std::uint32_t k = 1,
                       std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

  /// Parses "p=3,k=2,mod=[1,0,1]"; "k" and "mod" may be omitted.
  static FieldPtr parse(std::string_view text);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return k_; }
  std::uint64_t order() const noexcept { return q_; }
  /// Ascending coefficients of the monic modulus; [0, 1] for prime fields.
  std::span<const std::uint32_t> modulus() const noexcept { return modulus_; }
  bool is_prime_field() const noexcept { return k_ == 1; }

  /// Same characteristic, degree and modulus.
  bool same_as(const Field& other) const noexcept;

  /// "p=3,k=2,mod=[1,0,1]"
  std::string to_string() const;

  Code zero() const noexcept { return 0; }
  Code one() const noexcept { return 1; }
  /// Image of an integer in the prime subfield.
  Code from_integer(long long n) const noexcept;

  Code add(Code a, Code b) const noexcept {
    if (k_ == 1) {
      Code s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    return add_slow(a, b);
  }

  Code sub(Code a, Code b) const noexcept {
    if (k_ == 1) return a >= b ? a - b : a + p_ - b;
    if (!sub_table_.empty()) return sub_table_[a * q_ + b];
    return sub_slow(a, b);
  }

  Code neg(Code a) const noexcept { return sub(0, a); }

  Code mul(Code a, Code b) const noexcept {
    if (!mul_table_.empty()) return mul_table_[a * q_ + b];
    if (k_ == 1) return static_cast<Code>(static_cast<std::uint64_t>(a) * b % p_);
    return mul_slow(a, b);
  }

  /// Throws Error(invalid_input) for zero.
  Code inv(Code a) const;
  /// Square-and-multiply; pow(0, 0) = 1.
  Code pow(Code a, std::uint64_t n) const noexcept;
  /// a^(p^i).
  Code frobenius(Code a, std::uint64_t i = 1) const noexcept;
  /// The unique b with b^p = a, computed as a^(p^(k-1)).
  Code pth_root(Code a) const noexcept { return frobenius(a, k_ - 1); }

  std::vector<std::uint32_t> coords(Code a) const;
  /// Throws Error(invalid_input) unless there are k coordinates in [0, p-1].
  Code from_coords(std::span<const std::uint32_t> coords) const;
  bool contains(Code a) const noexcept { return a < q_; }

  /// Prime field: decimal residue. Extension: "[c0,c1,...]".
  std::string format(Code a) const;
  /// Accepts a residue in [0, p-1] (prime subfield element) or a bracketed
  /// list of k residues.
  Code parse_element(std::string_view text) const;

  /// Uniform draw consuming the stream as documented in RandomStream::below.
  Code random(RandomStream& rng) const;

 private:
  Field(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus);

  Code add_slow(Code a, Code b) const noexcept;
  Code sub_slow(Code a, Code b) const noexcept;
  Code mul_slow(Code a, Code b) const noexcept;
  void build_tables();

  std::uint32_t p_;
  std::uint32_t k_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<Code> add_table_;
  std::vector<Code> sub_table_;
  std::vector<Code> mul_table_;
  std::vector<Code> inv_table_;
  std::vector<Code> frob_table_;
};

bool is_prime(std::uint64_t n) noexcept;

/// Value-semantic field element bound to its field.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Code code);

  static FieldElement zero(FieldPtr field) { return {std::move(field), 0}; }
  static FieldElement one(FieldPtr field) { return {std::move(field), 1}; }
  static FieldElement from_integer(FieldPtr field, long long n);
  static FieldElement from_coords(FieldPtr field, std::span<const std::uint32_t> coords);
  static FieldElement parse(FieldPtr field, std::string_view text);

  const FieldPtr& field() const noexcept { return field_; }
  Code code() const noexcept { return code_; }
  std::vector<std::uint32_t> coords() const { return field_->coords(code_); }
  bool is_zero() const noexcept { return code_ == 0; }

  FieldElement inv() const;
  FieldElement pow(std::uint64_t n) const;
  FieldElement frobenius(std::uint64_t i = 1) const;
  FieldElement pth_root() const;

  std::string to_string() const { return field_->format(code_); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a);
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  FieldPtr field_;
  Code code_;
};

enum class ArithOp { add, sub, mul };

/// Throws Error(invalid_input) when the operands live in different fields.
FieldElement arith(const FieldElement& a, const FieldElement& b, ArithOp op);

/// All p^k elements in ascending code order.
std::vector<FieldElement> enumerate(const FieldPtr& field);

FieldElement random_element(const FieldPtr& field, RandomStream& rng);

/// Throws Error(invalid_input) unless both fields are the same.
void require_same_field(const Field& a, const Field& b);

}  // namespace cartier
