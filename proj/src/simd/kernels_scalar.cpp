#include <vector>

#include "cupset/simd/kernels.hpp"

namespace cupset::simd {

namespace {

// Index with a zero inserted at `bit`.
inline std::size_t insert_zero(std::size_t i, unsigned bit) {
  const std::size_t low = i & ((std::size_t{1} << bit) - 1);
  return ((i >> bit) << (bit + 1)) | low;
}

void apply_1q(cplx* v, unsigned n_bits, unsigned bit, const cplx* m) {
  const std::size_t half = std::size_t{1} << (n_bits - 1);
  const std::size_t step = std::size_t{1} << bit;
  for (std::size_t i = 0; i < half; ++i) {
    const std::size_t i0 = insert_zero(i, bit);
    const cplx a0 = v[i0], a1 = v[i0 + step];
    v[i0] = m[0] * a0 + m[1] * a1;
    v[i0 + step] = m[2] * a0 + m[3] * a1;
  }
}

void apply_2q(cplx* v, unsigned n_bits, unsigned bit_a, unsigned bit_b, const cplx* m) {
  const unsigned lo = bit_a < bit_b ? bit_a : bit_b;
  const unsigned hi = bit_a < bit_b ? bit_b : bit_a;
  const std::size_t sa = std::size_t{1} << bit_a, sb = std::size_t{1} << bit_b;
  const std::size_t quarter = std::size_t{1} << (n_bits - 2);
  for (std::size_t i = 0; i < quarter; ++i) {
    const std::size_t base = insert_zero(insert_zero(i, lo), hi);
    const std::size_t idx[4] = {base, base + sb, base + sa, base + sa + sb};
    cplx in[4];
    for (int k = 0; k < 4; ++k) in[k] = v[idx[k]];
    for (int r = 0; r < 4; ++r) {
      cplx acc = 0.0;
      for (int c = 0; c < 4; ++c) acc += m[r * 4 + c] * in[c];
      v[idx[r]] = acc;
    }
  }
}

void full_depolarize(cplx* v, unsigned n_bits, unsigned row_bit, unsigned col_bit) {
  const unsigned lo = row_bit < col_bit ? row_bit : col_bit;
  const unsigned hi = row_bit < col_bit ? col_bit : row_bit;
  const std::size_t sr = std::size_t{1} << row_bit, sc = std::size_t{1} << col_bit;
  const std::size_t quarter = std::size_t{1} << (n_bits - 2);
  for (std::size_t i = 0; i < quarter; ++i) {
    const std::size_t base = insert_zero(insert_zero(i, lo), hi);
    const cplx avg = 0.5 * (v[base] + v[base + sr + sc]);
    v[base] = avg;
    v[base + sr + sc] = avg;
    v[base + sr] = 0.0;
    v[base + sc] = 0.0;
  }
}

void reset(cplx* v, unsigned n_bits, unsigned row_bit, unsigned col_bit) {
  const unsigned lo = row_bit < col_bit ? row_bit : col_bit;
  const unsigned hi = row_bit < col_bit ? col_bit : row_bit;
  const std::size_t sr = std::size_t{1} << row_bit, sc = std::size_t{1} << col_bit;
  const std::size_t quarter = std::size_t{1} << (n_bits - 2);
  for (std::size_t i = 0; i < quarter; ++i) {
    const std::size_t base = insert_zero(insert_zero(i, lo), hi);
    v[base] += v[base + sr + sc];
    v[base + sr + sc] = 0.0;
    v[base + sr] = 0.0;
    v[base + sc] = 0.0;
  }
}

void axpby(double a, const cplx* x, double b, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

double norm_sq(const cplx* v, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(v[i]);
  return acc;
}

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

constexpr KernelTable kScalar{"scalar", apply_1q, apply_2q, full_depolarize, reset, axpby, norm_sq, dot};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

void apply_kq(cplx* v, unsigned n_bits, const unsigned* bits, unsigned k, const cplx* m) {
  const std::size_t dim = std::size_t{1} << k;
  const std::size_t total = std::size_t{1} << n_bits;
  std::size_t mask = 0;
  for (unsigned j = 0; j < k; ++j) mask |= std::size_t{1} << bits[j];
  std::vector<std::size_t> offset(dim);
  for (std::size_t s = 0; s < dim; ++s) {
    std::size_t off = 0;
    for (unsigned j = 0; j < k; ++j)
      if ((s >> (k - 1 - j)) & 1) off |= std::size_t{1} << bits[j];
    offset[s] = off;
  }
  std::vector<cplx> in(dim);
  for (std::size_t base = 0; base < total; ++base) {
    if (base & mask) continue;
    for (std::size_t s = 0; s < dim; ++s) in[s] = v[base + offset[s]];
    for (std::size_t r = 0; r < dim; ++r) {
      cplx acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) acc += m[r * dim + c] * in[c];
      v[base + offset[r]] = acc;
    }
  }
}

}  // namespace cupset::simd
