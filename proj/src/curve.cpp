#include "cartier/curve.hpp"

#include <algorithm>

#include "cartier/error.hpp"

namespace cartier {

namespace kernel {

void cartier_from_kappa(std::span<const Code> kappa, std::uint32_t p, std::size_t g, std::span<Code> out) {
  for (std::size_t i = 1; i <= g; ++i) {
    for (std::size_t j = 1; j <= g; ++j) {
      const std::size_t idx = p * i;
      out[(i - 1) * g + (j - 1)] = (idx >= j && idx - j < kappa.size()) ? kappa[idx - j] : 0;
    }
  }
}

std::size_t p_rank(const Field& field, std::span<const Code> a, std::size_t g, PRankScratch& s) {
  const std::size_t n = g * g;
  s.product.assign(a.begin(), a.end());
  s.twisted.resize(n);
  s.tmp.resize(n);
  if (field.is_prime_field()) {
    for (std::size_t t = 1; t < g; ++t) {
      kernel::square_mul(field, s.product, a, g, s.tmp);
      std::swap(s.product, s.tmp);
    }
  } else {
    for (std::size_t t = 1; t < g; ++t) {
      for (std::size_t e = 0; e < n; ++e) s.twisted[e] = field.frobenius(a[e], t);
      kernel::square_mul(field, s.product, s.twisted, g, s.tmp);
      std::swap(s.product, s.tmp);
    }
  }
  return rank_in_place(field, s.product, g, g);
}

bool boundary_rows_independent(const Field& field, std::span<const Code> f, std::size_t g, BoundaryScratch& s) {
  const std::uint32_t p = field.characteristic();
  const std::uint64_t e = (p - 1) / 2;

  // Row 1: A(1, j) = kappa_{p - j}, indices p-g .. p-1.
  s.head.assign(f.begin(), f.begin() + std::min<std::size_t>(f.size(), p));
  power(field, s.head, e, s.head_power, s.pow_scratch, p);
  s.row_first.assign(g, 0);
  for (std::size_t j = 1; j <= g; ++j) {
    if (p >= j && p - j < s.head_power.size()) s.row_first[j - 1] = s.head_power[p - j];
  }

  // Row g: A(g, j) = kappa_{pg - j} = coefficient t = e - g + j from the top
  // of f^e, since deg f^e = e (2g + 1).
  const std::size_t top = static_cast<std::size_t>(e) + 1;
  s.tail.clear();
  for (std::size_t t = 0; t < top && t < f.size(); ++t) s.tail.push_back(f[f.size() - 1 - t]);
  s.tail.resize(trimmed_size(s.tail));
  power(field, s.tail, e, s.tail_power, s.pow_scratch, top);
  s.row_last.assign(g, 0);
  for (std::size_t j = 1; j <= g; ++j) {
    const long long t = static_cast<long long>(e) - static_cast<long long>(g) + static_cast<long long>(j);
    if (t >= 0 && static_cast<std::size_t>(t) < s.tail_power.size()) s.row_last[j - 1] = s.tail_power[t];
  }

  for (std::size_t a = 0; a < g; ++a) {
    for (std::size_t b = a + 1; b < g; ++b) {
      const Code lhs = field.mul(s.row_first[a], s.row_last[b]);
      const Code rhs = field.mul(s.row_first[b], s.row_last[a]);
      if (lhs != rhs) return true;
    }
  }
  return false;
}

}  // namespace kernel

Curve::Curve(Poly f) : f_(std::move(f)), genus_(0), smooth_(false) {
  auto deg = f_.degree();
  if (!deg || *deg < 3) fail(ErrorKind::invalid_input, "defining polynomial must have degree >= 3");
  if (*deg % 2 == 0) {
    fail(ErrorKind::unsupported, "unsupported-degree: even-degree model (deg f = " + std::to_string(*deg) + ")");
  }
  genus_ = (*deg - 1) / 2;
  smooth_ = is_squarefree(f_);
}

CartierMatrix::CartierMatrix(std::size_t genus, Matrix entries) : genus_(genus), entries_(std::move(entries)) {
  if (entries_.rows() != genus_ || entries_.cols() != genus_) {
    fail(ErrorKind::invalid_input, "Cartier-Manin matrix must be g x g");
  }
}

CartierMatrix cartier_matrix(const Curve& c) {
  const auto& field = c.f().field();
  const Poly kappa = half_power(c.f());
  const std::size_t g = c.genus();
  std::vector<Code> data(g * g);
  kernel::cartier_from_kappa(kappa.coeffs(), field->characteristic(), g, data);
  return {g, Matrix(field, g, g, std::move(data))};
}

std::size_t rank(const CartierMatrix& m) { return m.matrix().rank(); }

std::size_t a_number(const Curve& c) { return c.genus() - rank(cartier_matrix(c)); }

std::size_t p_rank(const CartierMatrix& m) {
  kernel::PRankScratch scratch;
  return kernel::p_rank(*m.matrix().field(), m.matrix().data(), m.genus(), scratch);
}

std::size_t p_rank(const Curve& c) { return p_rank(cartier_matrix(c)); }

Invariants invariants(const Poly& f) {
  const Curve c(f);
  const auto m = cartier_matrix(c);
  Invariants out;
  out.genus = c.genus();
  out.smooth = c.smooth();
  out.rank_a = rank(m);
  out.a_number = out.genus - out.rank_a;
  out.p_rank = p_rank(m);
  return out;
}

bool boundary_rows_independent(const Curve& c) {
  if (c.genus() < 2) fail(ErrorKind::invalid_input, "boundary row test needs genus >= 2");
  kernel::BoundaryScratch scratch;
  return kernel::boundary_rows_independent(*c.f().field(), c.f().coeffs(), c.genus(), scratch);
}

}  // namespace cartier
