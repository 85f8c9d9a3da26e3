#pragma once

// Invariants of the hyperelliptic curve y^2 = f(x), deg f = 2g + 1.
//
// With f^((p-1)/2) = sum kappa_i x^i, the Cartier-Manin matrix is the g x g
// matrix A with A(i, j) = kappa_{p i - j} (1-indexed, kappa_i = 0 outside the
// support). The a-number is g - rank(A) and the p-rank is the rank of the
// Frobenius-twisted iterate A * A^(s) * ... * A^(s^(g-1)).

#include <cstddef>
#include <span>
#include <vector>

#include "cartier/field.hpp"
#include "cartier/matrix.hpp"
#include "cartier/poly.hpp"

namespace cartier {

namespace kernel {

/// Fills the row-major g x g matrix A(i, j) = kappa[p i - j].
void cartier_from_kappa(std::span<const Code> kappa, std::uint32_t p, std::size_t g, std::span<Code> out);

struct PRankScratch {
  std::vector<Code> product;
  std::vector<Code> twisted;
  std::vector<Code> tmp;
};

/// Rank of A * A^(s) * ... * A^(s^(g-1)) for the row-major g x g matrix A.
std::size_t p_rank(const Field& field, std::span<const Code> a, std::size_t g, PRankScratch& scratch);

struct BoundaryScratch {
  std::vector<Code> head;
  std::vector<Code> head_power;
  std::vector<Code> tail;
  std::vector<Code> tail_power;
  std::vector<Code> pow_scratch;
  std::vector<Code> row_first;
  std::vector<Code> row_last;
};

/// True when rows 1 and g of the Cartier-Manin matrix of f (deg f = 2g + 1,
/// g >= 2) are linearly independent, i.e. some 2x2 minor built from them is
/// nonzero and rank(A) >= 2. Row 1 only needs kappa_0..kappa_{p-1}, taken
/// from (f mod x^p)^((p-1)/2); row g only needs the top (p+1)/2
/// coefficients of f^((p-1)/2), taken from the reversed polynomial. Neither
/// requires the full expansion.
bool boundary_rows_independent(const Field& field, std::span<const Code> f, std::size_t g,
                               BoundaryScratch& scratch);

}  // namespace kernel

/// Odd-degree hyperelliptic model y^2 = f(x). No normalization is applied.
class Curve {
 public:
  /// Throws Error(unsupported) for even degree and Error(invalid_input) for
  /// degree < 3.
  explicit Curve(Poly f);

  const Poly& f() const noexcept { return f_; }
  std::size_t genus() const noexcept { return genus_; }
  /// f squarefree.
  bool smooth() const noexcept { return smooth_; }

 private:
  Poly f_;
  std::size_t genus_;
  bool smooth_;
};

inline Curve make_curve(Poly f) { return Curve(std::move(f)); }

class CartierMatrix {
 public:
  CartierMatrix(std::size_t genus, Matrix entries);

  std::size_t genus() const noexcept { return genus_; }
  const Matrix& matrix() const noexcept { return entries_; }
  /// 1-indexed entry (i, j) = kappa_{p i - j}.
  FieldElement entry(std::size_t i, std::size_t j) const { return entries_.element(i - 1, j - 1); }

 private:
  std::size_t genus_;
  Matrix entries_;
};

CartierMatrix cartier_matrix(const Curve& c);
std::size_t rank(const CartierMatrix& m);
std::size_t a_number(const Curve& c);
std::size_t p_rank(const CartierMatrix& m);
std::size_t p_rank(const Curve& c);

struct Invariants {
  std::size_t genus = 0;
  bool smooth = false;
  std::size_t rank_a = 0;
  std::size_t a_number = 0;
  std::size_t p_rank = 0;

  friend bool operator==(const Invariants&, const Invariants&) = default;
};

/// Full record for y^2 = f(x); singular models are accepted with smooth =
/// false.
Invariants invariants(const Poly& f);

/// See kernel::boundary_rows_independent. Requires genus >= 2.
bool boundary_rows_independent(const Curve& c);

}  // namespace cartier
