#include "ccl/qseries.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "ccl/errors.hpp"

namespace ccl {

static_assert(sizeof(mp_limb_t) == sizeof(std::uint64_t), "64-bit GMP limbs required");

QSeries::QSeries(std::initializer_list<long> coefficients) {
  c_.reserve(coefficients.size());
  for (long v : coefficients) c_.emplace_back(v);
}

QSeries QSeries::truncated(std::size_t n) const {
  n = std::min(n, c_.size());
  return QSeries(std::vector<mpz_class>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)));
}

QSeries QSeries::shifted(std::size_t k) const {
  std::vector<mpz_class> out(c_.size());
  for (std::size_t i = k; i < c_.size(); ++i) out[i] = c_[i - k];
  return QSeries(std::move(out));
}

std::size_t QSeries::max_bits() const {
  std::size_t bits = 0;
  for (const auto& v : c_)
    if (sgn(v) != 0) bits = std::max(bits, mpz_sizeinbase(v.get_mpz_t(), 2));
  return bits;
}

namespace {

using Limb = std::uint64_t;

// OR `value` (non-negative, fewer than `width` bits) into `limbs` at bit offset `pos`.
void deposit(std::vector<Limb>& limbs, std::size_t pos, const mpz_class& value) {
  std::size_t n = mpz_size(value.get_mpz_t());
  std::size_t word = pos / 64;
  unsigned shift = static_cast<unsigned>(pos % 64);
  for (std::size_t i = 0; i < n; ++i) {
    Limb v = mpz_getlimbn(value.get_mpz_t(), static_cast<mp_size_t>(i));
    limbs[word + i] |= v << shift;
    if (shift != 0) limbs[word + i + 1] |= v >> (64 - shift);
  }
}

// Evaluates the series at 2^width with a signed result.
mpz_class pack(const QSeries& s, std::size_t length, std::size_t width) {
  std::size_t nlimbs = (length * width) / 64 + 2;
  std::vector<Limb> pos(nlimbs, 0), neg(nlimbs, 0);
  mpz_class mag;
  for (std::size_t k = 0; k < length; ++k) {
    int sign = sgn(s[k]);
    if (sign == 0) continue;
    mpz_abs(mag.get_mpz_t(), s[k].get_mpz_t());
    deposit(sign > 0 ? pos : neg, k * width, mag);
  }
  mpz_class p, n;
  mpz_import(p.get_mpz_t(), nlimbs, -1, sizeof(Limb), 0, 0, pos.data());
  mpz_import(n.get_mpz_t(), nlimbs, -1, sizeof(Limb), 0, 0, neg.data());
  return p - n;
}

// Extracts `width` bits starting at bit `pos` of a limb array.
mpz_class extract(const mp_limb_t* limbs, std::size_t nlimbs, std::size_t pos, std::size_t width) {
  std::size_t out_limbs = width / 64 + 1;
  std::vector<Limb> buf(out_limbs, 0);
  std::size_t word = pos / 64;
  unsigned shift = static_cast<unsigned>(pos % 64);
  for (std::size_t i = 0; i < out_limbs; ++i) {
    std::size_t src = word + i;
    Limb lo = src < nlimbs ? limbs[src] : 0;
    Limb hi = src + 1 < nlimbs ? limbs[src + 1] : 0;
    buf[i] = shift == 0 ? lo : (lo >> shift) | (hi << (64 - shift));
  }
  std::size_t excess = out_limbs * 64 - width;
  buf.back() &= (~Limb{0}) >> excess;
  mpz_class out;
  mpz_import(out.get_mpz_t(), out_limbs, -1, sizeof(Limb), 0, 0, buf.data());
  return out;
}

// Inverse of pack() for balanced digits in (-2^(width-1), 2^(width-1)).
QSeries unpack(const mpz_class& packed, std::size_t length, std::size_t width) {
  int sign = sgn(packed);
  mpz_class mag = abs(packed);
  const mp_limb_t* limbs = mpz_limbs_read(mag.get_mpz_t());
  std::size_t nlimbs = mpz_size(mag.get_mpz_t());
  mpz_class half, full;
  mpz_ui_pow_ui(full.get_mpz_t(), 2, width);
  half = full / 2;
  std::vector<mpz_class> out(length);
  mpz_class carry = 0;
  for (std::size_t k = 0; k < length; ++k) {
    mpz_class digit = extract(limbs, nlimbs, k * width, width) + carry;
    if (digit >= half) {
      digit -= full;
      carry = 1;
    } else {
      carry = 0;
    }
    out[k] = sign < 0 ? mpz_class(-digit) : digit;
  }
  return QSeries(std::move(out));
}

}  // namespace

QSeries multiply_schoolbook(const QSeries& a, const QSeries& b, std::size_t length) {
  length = std::min({length, a.size(), b.size()});
  std::vector<mpz_class> out(length);
  for (std::size_t i = 0; i < length; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; i + j < length; ++j)
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return QSeries(std::move(out));
}

QSeries multiply(const QSeries& a, const QSeries& b, std::size_t length) {
  length = std::min({length, a.size(), b.size()});
  if (length == 0) return QSeries();
  if (length <= 32) return multiply_schoolbook(a, b, length);
  std::size_t bits_a = a.truncated(length).max_bits();
  std::size_t bits_b = b.truncated(length).max_bits();
  if (bits_a == 0 || bits_b == 0) return QSeries(std::vector<mpz_class>(length));
  // |c_k| <= length * 2^bits_a * 2^bits_b < 2^(width-2)
  std::size_t width = bits_a + bits_b + static_cast<std::size_t>(std::bit_width(length)) + 2;
  mpz_class pa = pack(a, length, width);
  mpz_class pb = pack(b, length, width);
  mpz_class product = pa * pb;
  return unpack(product, length, width);
}

QSeries multiply(const QSeries& a, const QSeries& b) {
  return multiply(a, b, std::min(a.size(), b.size()));
}

QSeries power(const QSeries& base, unsigned exponent, std::size_t length) {
  length = std::min(length, base.size());
  std::vector<mpz_class> one(length);
  if (length > 0) one[0] = 1;
  QSeries result(std::move(one));
  QSeries square = base.truncated(length);
  while (exponent > 0) {
    if (exponent & 1u) result = multiply(result, square, length);
    exponent >>= 1;
    if (exponent > 0) square = multiply(square, square, length);
  }
  return result;
}

}  // namespace ccl
