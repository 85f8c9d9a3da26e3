#include "cartier/poly.hpp"

#include <algorithm>

#include "cartier/error.hpp"

namespace cartier {

namespace kernel {

std::size_t trimmed_size(std::span<const Code> a) noexcept {
  std::size_t n = a.size();
  while (n > 0 && a[n - 1] == 0) --n;
  return n;
}

void mul(const Field& field, std::span<const Code> a, std::span<const Code> b, std::vector<Code>& out) {
  if (a.empty() || b.empty()) {
    out.clear();
    return;
  }
  out.assign(a.size() + b.size() - 1, 0);
  if (field.is_prime_field()) {
    // Accumulate in 64 bits and reduce once per output coefficient.
    const std::uint64_t p = field.characteristic();
    for (std::size_t d = 0; d < out.size(); ++d) {
      const std::size_t lo = d >= b.size() ? d - b.size() + 1 : 0;
      const std::size_t hi = std::min(d, a.size() - 1);
      std::uint64_t acc = 0;
      for (std::size_t i = lo; i <= hi; ++i) acc += static_cast<std::uint64_t>(a[i]) * b[d - i];
      out[d] = static_cast<Code>(acc % p);
    }
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        out[i + j] = field.add(out[i + j], field.mul(a[i], b[j]));
      }
    }
  }
  out.resize(trimmed_size(out));
}

void mul_low(const Field& field, std::span<const Code> a, std::span<const Code> b, std::size_t n,
             std::vector<Code>& out) {
  if (a.empty() || b.empty() || n == 0) {
    out.clear();
    return;
  }
  const std::size_t len = std::min(n, a.size() + b.size() - 1);
  out.assign(len, 0);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) {
      out[i + j] = field.add(out[i + j], field.mul(a[i], b[j]));
    }
  }
  out.resize(trimmed_size(out));
}

void power(const Field& field, std::span<const Code> a, std::uint64_t e, std::vector<Code>& out,
           std::vector<Code>& scratch, std::optional<std::size_t> n) {
  auto product = [&](std::span<const Code> x, std::span<const Code> y, std::vector<Code>& dst) {
    if (n) {
      mul_low(field, x, y, *n, dst);
    } else {
      mul(field, x, y, dst);
    }
  };
  out.assign(1, 1);
  if (n && *n == 0) {
    out.clear();
    return;
  }
  if (e == 0) return;
  int top = 63;
  while (!((e >> top) & 1)) --top;
  out.assign(a.begin(), a.end());
  if (n && out.size() > *n) out.resize(*n);
  out.resize(trimmed_size(out));
  for (int bit = top - 1; bit >= 0; --bit) {
    product(out, out, scratch);
    std::swap(out, scratch);
    if ((e >> bit) & 1) {
      product(out, a, scratch);
      std::swap(out, scratch);
    }
  }
}

void derivative(const Field& field, std::span<const Code> a, std::vector<Code>& out) {
  if (a.size() <= 1) {
    out.clear();
    return;
  }
  out.resize(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) {
    out[i - 1] = field.mul(field.from_integer(static_cast<long long>(i % field.characteristic())), a[i]);
  }
  out.resize(trimmed_size(out));
}

void rem_in_place(const Field& field, std::vector<Code>& a, std::span<const Code> b) {
  const std::size_t bn = b.size();
  const Code lead_inv = field.inv(b[bn - 1]);
  a.resize(trimmed_size(a));
  while (a.size() >= bn) {
    const std::size_t shift = a.size() - bn;
    const Code factor = field.mul(a.back(), lead_inv);
    for (std::size_t i = 0; i < bn; ++i) {
      a[shift + i] = field.sub(a[shift + i], field.mul(factor, b[i]));
    }
    a.resize(trimmed_size(a));
  }
}

void gcd_in_place(const Field& field, std::vector<Code>& a, std::vector<Code>& b) {
  a.resize(trimmed_size(a));
  b.resize(trimmed_size(b));
  while (!b.empty()) {
    rem_in_place(field, a, b);
    std::swap(a, b);
  }
  if (a.empty()) return;
  const Code lead_inv = field.inv(a.back());
  for (auto& c : a) c = field.mul(c, lead_inv);
}

bool is_squarefree(const Field& field, std::span<const Code> f, SquarefreeScratch& scratch) {
  derivative(field, f, scratch.b);
  if (scratch.b.empty()) return false;  // f is a p-th power
  scratch.a.assign(f.begin(), f.end());
  gcd_in_place(field, scratch.a, scratch.b);
  return scratch.a.size() == 1;
}

}  // namespace kernel

Poly::Poly(FieldPtr field) : field_(std::move(field)) {
  if (!field_) fail(ErrorKind::invalid_input, "polynomial without a field");
}

Poly::Poly(FieldPtr field, std::vector<Code> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (!field_) fail(ErrorKind::invalid_input, "polynomial without a field");
  for (auto c : coeffs_) {
    if (!field_->contains(c)) fail(ErrorKind::invalid_input, "coefficient code out of range");
  }
  coeffs_.resize(kernel::trimmed_size(coeffs_));
}

Poly Poly::from_elements(FieldPtr field, std::span<const FieldElement> coeffs) {
  std::vector<Code> codes;
  codes.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    require_same_field(*field, *c.field());
    codes.push_back(c.code());
  }
  return {std::move(field), std::move(codes)};
}

Poly Poly::monomial(FieldPtr field, std::size_t n, Code c) {
  std::vector<Code> coeffs(n + 1, 0);
  coeffs[n] = c;
  return {std::move(field), std::move(coeffs)};
}

Poly Poly::parse(FieldPtr field, std::string_view text) {
  std::vector<Code> coeffs;
  std::size_t depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      coeffs.push_back(field->parse_element(text.substr(start, i - start)));
      start = i + 1;
    } else if (text[i] == '[') {
      ++depth;
    } else if (text[i] == ']') {
      if (depth == 0) fail(ErrorKind::invalid_input, "unbalanced ']' in polynomial");
      --depth;
    }
  }
  if (depth != 0) fail(ErrorKind::invalid_input, "unbalanced '[' in polynomial");
  return {std::move(field), std::move(coeffs)};
}

std::optional<std::size_t> Poly::degree() const noexcept {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.size() - 1;
}

std::string Poly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) s += ',';
    s += field_->format(coeffs_[i]);
  }
  return s;
}

bool operator==(const Poly& f, const Poly& g) {
  return f.field_->same_as(*g.field_) && f.coeffs_ == g.coeffs_;
}

Poly operator+(const Poly& f, const Poly& g) {
  require_same_field(*f.field_, *g.field_);
  std::vector<Code> out(std::max(f.coeffs_.size(), g.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.field_->add(f.coeff_code(i), g.coeff_code(i));
  return {f.field_, std::move(out)};
}

Poly operator-(const Poly& f, const Poly& g) {
  require_same_field(*f.field_, *g.field_);
  std::vector<Code> out(std::max(f.coeffs_.size(), g.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.field_->sub(f.coeff_code(i), g.coeff_code(i));
  return {f.field_, std::move(out)};
}

Poly operator*(const Poly& f, const Poly& g) {
  require_same_field(*f.field_, *g.field_);
  std::vector<Code> out;
  kernel::mul(*f.field_, f.coeffs_, g.coeffs_, out);
  return {f.field_, std::move(out)};
}

Poly mul(const Poly& f, const Poly& g) { return f * g; }

Poly pow(const Poly& f, std::uint64_t n) {
  std::vector<Code> out, scratch;
  kernel::power(*f.field(), f.coeffs(), n, out, scratch);
  return {f.field(), std::move(out)};
}

Poly half_power(const Poly& f) {
  if (f.is_zero()) fail(ErrorKind::invalid_input, "half_power of the zero polynomial");
  return pow(f, (f.field()->characteristic() - 1) / 2);
}

Poly derivative(const Poly& f) {
  std::vector<Code> out;
  kernel::derivative(*f.field(), f.coeffs(), out);
  return {f.field(), std::move(out)};
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
  require_same_field(*f.field(), *g.field());
  if (g.is_zero()) fail(ErrorKind::invalid_input, "polynomial division by zero");
  const Field& field = *f.field();
  std::vector<Code> rem(f.coeffs().begin(), f.coeffs().end());
  const auto b = g.coeffs();
  const std::size_t bn = b.size();
  if (rem.size() < bn) return {Poly(f.field()), f};
  std::vector<Code> quot(rem.size() - bn + 1, 0);
  const Code lead_inv = field.inv(b[bn - 1]);
  while (rem.size() >= bn) {
    const std::size_t shift = rem.size() - bn;
    const Code factor = field.mul(rem.back(), lead_inv);
    quot[shift] = factor;
    for (std::size_t i = 0; i < bn; ++i) rem[shift + i] = field.sub(rem[shift + i], field.mul(factor, b[i]));
    rem.resize(kernel::trimmed_size(rem));
  }
  return {Poly(f.field(), std::move(quot)), Poly(f.field(), std::move(rem))};
}

Poly make_monic(const Poly& f) {
  if (f.is_zero()) return f;
  const Field& field = *f.field();
  const Code lead_inv = field.inv(f.coeffs().back());
  std::vector<Code> out(f.coeffs().begin(), f.coeffs().end());
  for (auto& c : out) c = field.mul(c, lead_inv);
  return {f.field(), std::move(out)};
}

Poly gcd(const Poly& f, const Poly& g) {
  require_same_field(*f.field(), *g.field());
  if (f.is_zero() && g.is_zero()) fail(ErrorKind::invalid_input, "gcd(0, 0) is undefined");
  std::vector<Code> a(f.coeffs().begin(), f.coeffs().end());
  std::vector<Code> b(g.coeffs().begin(), g.coeffs().end());
  kernel::gcd_in_place(*f.field(), a, b);
  return {f.field(), std::move(a)};
}

bool is_squarefree(const Poly& f) {
  auto deg = f.degree();
  if (!deg || *deg == 0) fail(ErrorKind::invalid_input, "is_squarefree needs a polynomial of degree >= 1");
  kernel::SquarefreeScratch scratch;
  return kernel::is_squarefree(*f.field(), f.coeffs(), scratch);
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// x^(p^e) mod f by e successive p-th powers.
std::vector<Code> x_to_p_power_mod(const Field& field, std::span<const Code> f, std::uint64_t e) {
  std::vector<Code> acc{0, 1};
  kernel::rem_in_place(field, acc, f);
  std::vector<Code> out, scratch, tmp;
  for (std::uint64_t step = 0; step < e; ++step) {
    // acc^p mod f, square-and-multiply with reduction at every step
    std::uint64_t n = field.characteristic();
    out.assign(1, 1);
    std::vector<Code> base = acc;
    while (n) {
      if (n & 1) {
        kernel::mul(field, out, base, tmp);
        kernel::rem_in_place(field, tmp, f);
        std::swap(out, tmp);
      }
      n >>= 1;
      if (n) {
        kernel::mul(field, base, base, tmp);
        kernel::rem_in_place(field, tmp, f);
        std::swap(base, tmp);
      }
    }
    acc = out;
  }
  return acc;
}

}  // namespace

bool is_irreducible(const Poly& f) {
  const Field& field = *f.field();
  if (!field.is_prime_field()) fail(ErrorKind::invalid_input, "is_irreducible expects prime-field coefficients");
  auto deg = f.degree();
  if (!deg || *deg == 0) fail(ErrorKind::invalid_input, "is_irreducible needs degree >= 1");
  if (f.coeffs().back() != 1) fail(ErrorKind::invalid_input, "is_irreducible expects a monic polynomial");
  const std::uint64_t d = *deg;
  if (d == 1) return true;

  auto minus_x = [&](std::vector<Code> v) {
    if (v.size() < 2) v.resize(2, 0);
    v[1] = field.sub(v[1], 1);
    v.resize(kernel::trimmed_size(v));
    return v;
  };

  // x^(p^d) == x (mod f)
  if (!minus_x(x_to_p_power_mod(field, f.coeffs(), d)).empty()) return false;
  for (auto q : prime_factors(d)) {
    auto h = minus_x(x_to_p_power_mod(field, f.coeffs(), d / q));
    std::vector<Code> a(f.coeffs().begin(), f.coeffs().end());
    kernel::gcd_in_place(field, a, h);
    if (a.size() != 1) return false;
  }
  return true;
}

FieldElement eval(const Poly& f, const FieldElement& x) {
  require_same_field(*f.field(), *x.field());
  const Field& field = *f.field();
  Code acc = 0;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = field.add(field.mul(acc, x.code()), f.coeffs()[i]);
  return {f.field(), acc};
}

}  // namespace cartier
