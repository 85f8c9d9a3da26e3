#include "cartier/field.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

#include "cartier/error.hpp"
#include "cartier/poly.hpp"
#include "cartier/rng.hpp"

namespace cartier {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view what) {
  text = trim(text);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    fail(ErrorKind::invalid_input, "malformed " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::uint32_t> parse_residue_list(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    fail(ErrorKind::invalid_input, "expected bracketed list, got '" + std::string(text) + "'");
  }
  text = text.substr(1, text.size() - 2);
  std::vector<std::uint32_t> out;
  while (true) {
    auto comma = text.find(',');
    auto item = text.substr(0, comma);
    auto v = parse_unsigned(item, "residue");
    if (v > std::numeric_limits<std::uint32_t>::max()) fail(ErrorKind::invalid_input, "residue out of range");
    out.push_back(static_cast<std::uint32_t>(v));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string join_list(std::span<const std::uint32_t> values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(values[i]);
  }
  return s + "]";
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t k, std::optional<std::vector<std::uint32_t>> modulus) {
  if (p == 2) fail(ErrorKind::invalid_input, "characteristic 2 is not supported (p must be odd)");
  if (!is_prime(p)) fail(ErrorKind::invalid_input, "p=" + std::to_string(p) + " is not prime");
  if (p >= (1u << 31)) fail(ErrorKind::invalid_input, "p too large");
  if (k < 1) fail(ErrorKind::invalid_input, "extension degree k must be >= 1");

  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    if (q > std::numeric_limits<Code>::max() / p) {
      fail(ErrorKind::invalid_input, "field order p^k exceeds 2^32");
    }
    q *= p;
  }

  if (k == 1) {
    if (modulus && *modulus != std::vector<std::uint32_t>{0, 1}) {
      fail(ErrorKind::invalid_input, "prime field modulus must be the placeholder [0,1]");
    }
    return FieldPtr(new Field(p, 1, {0, 1}));
  }

  auto prime = make(p);
  if (modulus) {
    if (modulus->size() != k + 1) {
      fail(ErrorKind::invalid_input, "modulus must have k+1 = " + std::to_string(k + 1) + " coefficients");
    }
    for (auto c : *modulus) {
      if (c >= p) fail(ErrorKind::invalid_input, "modulus coefficient out of range [0, p-1]");
    }
    if (modulus->back() != 1) fail(ErrorKind::invalid_input, "modulus must be monic");
    Poly m(prime, std::vector<Code>(modulus->begin(), modulus->end()));
    if (!is_irreducible(m)) fail(ErrorKind::invalid_input, "modulus " + join_list(*modulus) + " is reducible");
    return FieldPtr(new Field(p, k, std::move(*modulus)));
  }

  std::uint64_t candidates = q;
  for (std::uint64_t v = 0; v < candidates; ++v) {
    std::vector<Code> coeffs(k + 1);
    std::uint64_t rest = v;
    for (std::uint32_t i = 0; i < k; ++i) {
      coeffs[i] = static_cast<Code>(rest % p);
      rest /= p;
    }
    coeffs[k] = 1;
    if (coeffs[0] == 0) continue;  // divisible by x
    if (is_irreducible(Poly(prime, coeffs))) {
      return FieldPtr(new Field(p, k, std::vector<std::uint32_t>(coeffs.begin(), coeffs.end())));
    }
  }
  fail(ErrorKind::invalid_input, "no irreducible polynomial found");  // unreachable for k >= 1
}

FieldPtr Field::parse(std::string_view text) {
  std::optional<std::uint32_t> p;
  std::uint32_t k = 1;
  std::optional<std::vector<std::uint32_t>> modulus;
  text = trim(text);
  while (!text.empty()) {
    auto eq = text.find('=');
    if (eq == std::string_view::npos) fail(ErrorKind::invalid_input, "malformed field spec");
    auto key = trim(text.substr(0, eq));
    text.remove_prefix(eq + 1);
    std::string_view value;
    if (!text.empty() && trim(text).front() == '[') {
      auto close = text.find(']');
      if (close == std::string_view::npos) fail(ErrorKind::invalid_input, "unterminated modulus list");
      value = text.substr(0, close + 1);
      text.remove_prefix(close + 1);
      text = trim(text);
      if (!text.empty()) {
        if (text.front() != ',') fail(ErrorKind::invalid_input, "malformed field spec");
        text.remove_prefix(1);
      }
    } else {
      auto comma = text.find(',');
      value = text.substr(0, comma);
      text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    }
    if (key == "p") {
      p = static_cast<std::uint32_t>(parse_unsigned(value, "p"));
    } else if (key == "k") {
      k = static_cast<std::uint32_t>(parse_unsigned(value, "k"));
    } else if (key == "mod") {
      modulus = parse_residue_list(value);
    } else {
      fail(ErrorKind::invalid_input, "unknown field spec key '" + std::string(key) + "'");
    }
  }
  if (!p) fail(ErrorKind::invalid_input, "field spec is missing p");
  return make(*p, k, std::move(modulus));
}

Field::Field(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), q_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < k_; ++i) q_ *= p_;
  if (q_ <= kTableLimit) build_tables();
}

void Field::build_tables() {
  const auto q = static_cast<Code>(q_);
  std::vector<Code> add(q_ * q_), sub(q_ * q_), mul(q_ * q_);
  for (Code a = 0; a < q; ++a) {
    for (Code b = 0; b < q; ++b) {
      add[a * q_ + b] = add_slow(a, b);
      sub[a * q_ + b] = sub_slow(a, b);
      mul[a * q_ + b] = mul_slow(a, b);
    }
  }
  std::vector<Code> inv(q_, 0), frob(q_, 0);
  for (Code a = 1; a < q; ++a) {
    for (Code b = 1; b < q; ++b) {
      if (mul[a * q_ + b] == 1) {
        inv[a] = b;
        break;
      }
    }
  }
  for (Code a = 0; a < q; ++a) {
    Code r = 1;
    for (std::uint32_t i = 0; i < p_; ++i) r = mul[r * q_ + a];
    frob[a] = r;
  }
  // Only extension fields use the additive tables; prime fields add inline.
  if (k_ > 1) {
    add_table_ = std::move(add);
    sub_table_ = std::move(sub);
  }
  mul_table_ = std::move(mul);
  inv_table_ = std::move(inv);
  frob_table_ = std::move(frob);
}

bool Field::same_as(const Field& other) const noexcept {
  return this == &other || (p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_);
}

std::string Field::to_string() const {
  return "p=" + std::to_string(p_) + ",k=" + std::to_string(k_) + ",mod=" + join_list(modulus_);
}

Code Field::from_integer(long long n) const noexcept {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Code>(r);
}

Code Field::add_slow(Code a, Code b) const noexcept {
  Code result = 0;
  Code scale = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    Code s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    result += s * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return result;
}

Code Field::sub_slow(Code a, Code b) const noexcept {
  Code result = 0;
  Code scale = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    Code x = a % p_;
    Code y = b % p_;
    result += (x >= y ? x - y : x + p_ - y) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return result;
}

Code Field::mul_slow(Code a, Code b) const noexcept {
  if (k_ == 1) return static_cast<Code>(static_cast<std::uint64_t>(a) * b % p_);
  std::vector<std::uint64_t> x(k_), y(k_), prod(2 * k_ - 1, 0);
  for (std::uint32_t i = 0; i < k_; ++i) {
    x[i] = a % p_;
    y[i] = b % p_;
    a /= p_;
    b /= p_;
  }
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (x[i] == 0) continue;
    for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
  }
  // a^k = -(m_0 + m_1 a + ... + m_{k-1} a^{k-1})
  for (std::size_t d = prod.size(); d-- > k_;) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (std::uint32_t i = 0; i < k_; ++i) {
      const std::uint64_t t = c * modulus_[i] % p_;
      prod[d - k_ + i] = (prod[d - k_ + i] + p_ - t) % p_;
    }
  }
  Code result = 0;
  for (std::uint32_t i = k_; i-- > 0;) result = result * p_ + static_cast<Code>(prod[i]);
  return result;
}

Code Field::inv(Code a) const {
  if (a == 0) fail(ErrorKind::invalid_input, "inverse of zero");
  if (!inv_table_.empty()) return inv_table_[a];
  return pow(a, q_ - 2);
}

Code Field::pow(Code a, std::uint64_t n) const noexcept {
  Code result = 1;
  Code base = a;
  while (n) {
    if (n & 1) result = mul(result, base);
    base = mul(base, base);
    n >>= 1;
  }
  return result;
}

Code Field::frobenius(Code a, std::uint64_t i) const noexcept {
  i %= k_;
  for (std::uint64_t step = 0; step < i; ++step) {
    a = frob_table_.empty() ? pow(a, p_) : frob_table_[a];
  }
  return a;
}

std::vector<std::uint32_t> Field::coords(Code a) const {
  std::vector<std::uint32_t> out(k_);
  for (std::uint32_t i = 0; i < k_; ++i) {
    out[i] = a % p_;
    a /= p_;
  }
  return out;
}

Code Field::from_coords(std::span<const std::uint32_t> coords) const {
  if (coords.size() != k_) {
    fail(ErrorKind::invalid_input, "expected " + std::to_string(k_) + " coordinates, got " +
                                       std::to_string(coords.size()));
  }
  Code result = 0;
  for (std::size_t i = coords.size(); i-- > 0;) {
    if (coords[i] >= p_) fail(ErrorKind::invalid_input, "coordinate out of range [0, p-1]");
    result = result * p_ + coords[i];
  }
  return result;
}

std::string Field::format(Code a) const {
  if (k_ == 1) return std::to_string(a);
  return join_list(coords(a));
}

Code Field::parse_element(std::string_view text) const {
  text = trim(text);
  if (!text.empty() && text.front() == '[') return from_coords(parse_residue_list(text));
  auto v = parse_unsigned(text, "field element");
  if (v >= p_) fail(ErrorKind::invalid_input, "residue " + std::to_string(v) + " out of range [0, p-1]");
  return static_cast<Code>(v);
}

Code Field::random(RandomStream& rng) const { return static_cast<Code>(rng.below(q_)); }

void require_same_field(const Field& a, const Field& b) {
  if (!a.same_as(b)) {
    fail(ErrorKind::invalid_input, "field mismatch: " + a.to_string() + " vs " + b.to_string());
  }
}

FieldElement::FieldElement(FieldPtr field, Code code) : field_(std::move(field)), code_(code) {
  if (!field_) fail(ErrorKind::invalid_input, "element without a field");
  if (!field_->contains(code_)) fail(ErrorKind::invalid_input, "element code out of range");
}

FieldElement FieldElement::from_integer(FieldPtr field, long long n) {
  auto code = field->from_integer(n);
  return {std::move(field), code};
}

FieldElement FieldElement::from_coords(FieldPtr field, std::span<const std::uint32_t> coords) {
  auto code = field->from_coords(coords);
  return {std::move(field), code};
}

FieldElement FieldElement::parse(FieldPtr field, std::string_view text) {
  auto code = field->parse_element(text);
  return {std::move(field), code};
}

FieldElement FieldElement::inv() const { return {field_, field_->inv(code_)}; }
FieldElement FieldElement::pow(std::uint64_t n) const { return {field_, field_->pow(code_, n)}; }
FieldElement FieldElement::frobenius(std::uint64_t i) const { return {field_, field_->frobenius(code_, i)}; }
FieldElement FieldElement::pth_root() const { return {field_, field_->pth_root(code_)}; }

FieldElement arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
  require_same_field(*a.field(), *b.field());
  const Field& f = *a.field();
  switch (op) {
    case ArithOp::add:
      return {a.field(), f.add(a.code(), b.code())};
    case ArithOp::sub:
      return {a.field(), f.sub(a.code(), b.code())};
    case ArithOp::mul:
      return {a.field(), f.mul(a.code(), b.code())};
  }
  fail(ErrorKind::invalid_input, "unknown arithmetic operation");
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) { return arith(a, b, ArithOp::add); }
FieldElement operator-(const FieldElement& a, const FieldElement& b) { return arith(a, b, ArithOp::sub); }
FieldElement operator*(const FieldElement& a, const FieldElement& b) { return arith(a, b, ArithOp::mul); }
FieldElement operator-(const FieldElement& a) { return {a.field(), a.field()->neg(a.code())}; }

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.code() == b.code() && a.field()->same_as(*b.field());
}

std::vector<FieldElement> enumerate(const FieldPtr& field) {
  std::vector<FieldElement> out;
  out.reserve(field->order());
  for (std::uint64_t c = 0; c < field->order(); ++c) out.emplace_back(field, static_cast<Code>(c));
  return out;
}

FieldElement random_element(const FieldPtr& field, RandomStream& rng) { return {field, field->random(rng)}; }

}  // namespace cartier
