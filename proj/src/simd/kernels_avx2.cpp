#include "cupset/simd/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

namespace cupset::simd {

namespace {

inline std::size_t insert_zero(std::size_t i, unsigned bit) {
  const std::size_t low = i & ((std::size_t{1} << bit) - 1);
  return ((i >> bit) << (bit + 1)) | low;
}

inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }
inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }

// Two complex values per register, each as (re, im).
struct Bcast {
  __m256d re, im;
};

inline Bcast bcast(const cplx& c) { return {_mm256_set1_pd(c.real()), _mm256_set1_pd(c.imag())}; }

inline __m256d cmul(__m256d v, const Bcast& c) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  return _mm256_addsub_pd(_mm256_mul_pd(v, c.re), _mm256_mul_pd(swapped, c.im));
}

// Lane-wise complex product of two registers.
inline __m256d cmulv(__m256d a, __m256d b) {
  const Bcast c{_mm256_movedup_pd(b), _mm256_permute_pd(b, 0b1111)};
  return cmul(a, c);
}

inline __m128d cmul128(__m128d v, const cplx& c) {
  const __m128d swapped = _mm_shuffle_pd(v, v, 1);
  return _mm_addsub_pd(_mm_mul_pd(v, _mm_set1_pd(c.real())), _mm_mul_pd(swapped, _mm_set1_pd(c.imag())));
}

void apply_1q(cplx* v, unsigned n_bits, unsigned bit, const cplx* m) {
  const std::size_t half = std::size_t{1} << (n_bits - 1);
  const std::size_t step = std::size_t{1} << bit;
  if (bit == 0) {
    const __m256d col0 = _mm256_setr_pd(m[0].real(), m[0].imag(), m[2].real(), m[2].imag());
    const __m256d col1 = _mm256_setr_pd(m[1].real(), m[1].imag(), m[3].real(), m[3].imag());
    for (std::size_t i = 0; i < half; ++i) {
      double* p = dp(v + 2 * i);
      const __m256d x = _mm256_loadu_pd(p);
      const __m256d a0 = _mm256_permute2f128_pd(x, x, 0x00);
      const __m256d a1 = _mm256_permute2f128_pd(x, x, 0x11);
      _mm256_storeu_pd(p, _mm256_add_pd(cmulv(a0, col0), cmulv(a1, col1)));
    }
    return;
  }
  const Bcast m00 = bcast(m[0]), m01 = bcast(m[1]), m10 = bcast(m[2]), m11 = bcast(m[3]);
  for (std::size_t i = 0; i < half; i += 2) {
    const std::size_t i0 = insert_zero(i, bit);
    double* p0 = dp(v + i0);
    double* p1 = dp(v + i0 + step);
    const __m256d a0 = _mm256_loadu_pd(p0);
    const __m256d a1 = _mm256_loadu_pd(p1);
    _mm256_storeu_pd(p0, _mm256_add_pd(cmul(a0, m00), cmul(a1, m01)));
    _mm256_storeu_pd(p1, _mm256_add_pd(cmul(a0, m10), cmul(a1, m11)));
  }
}

void apply_2q(cplx* v, unsigned n_bits, unsigned bit_a, unsigned bit_b, const cplx* m) {
  const unsigned lo = bit_a < bit_b ? bit_a : bit_b;
  const unsigned hi = bit_a < bit_b ? bit_b : bit_a;
  const std::size_t sa = std::size_t{1} << bit_a, sb = std::size_t{1} << bit_b;
  const std::size_t quarter = std::size_t{1} << (n_bits - 2);
  const std::size_t off[4] = {0, sb, sa, sa + sb};
  if (lo == 0) {
    for (std::size_t i = 0; i < quarter; ++i) {
      const std::size_t base = insert_zero(insert_zero(i, lo), hi);
      __m128d in[4];
      for (int k = 0; k < 4; ++k) in[k] = _mm_loadu_pd(dp(v + base + off[k]));
      for (int r = 0; r < 4; ++r) {
        __m128d acc = cmul128(in[0], m[r * 4]);
        for (int c = 1; c < 4; ++c) acc = _mm_add_pd(acc, cmul128(in[c], m[r * 4 + c]));
        _mm_storeu_pd(dp(v + base + off[r]), acc);
      }
    }
    return;
  }
  Bcast mb[16];
  for (int k = 0; k < 16; ++k) mb[k] = bcast(m[k]);
  for (std::size_t i = 0; i < quarter; i += 2) {
    const std::size_t base = insert_zero(insert_zero(i, lo), hi);
    __m256d in[4];
    for (int k = 0; k < 4; ++k) in[k] = _mm256_loadu_pd(dp(v + base + off[k]));
    for (int r = 0; r < 4; ++r) {
      __m256d acc = cmul(in[0], mb[r * 4]);
      for (int c = 1; c < 4; ++c) acc = _mm256_add_pd(acc, cmul(in[c], mb[r * 4 + c]));
      _mm256_storeu_pd(dp(v + base + off[r]), acc);
    }
  }
}

// Shared body for the two diagonal-mixing kernels: (d0, d1) -> (w0*d0 + w1*d1, w1'*d0 + w0'*d1)
// with off-diagonal entries cleared.
template <bool kReset>
void mix_pair(cplx* v, unsigned n_bits, unsigned row_bit, unsigned col_bit) {
  const unsigned lo = row_bit < col_bit ? row_bit : col_bit;
  const unsigned hi = row_bit < col_bit ? col_bit : row_bit;
  const std::size_t sr = std::size_t{1} << row_bit, sc = std::size_t{1} << col_bit;
  const std::size_t quarter = std::size_t{1} << (n_bits - 2);
  const std::size_t step = lo == 0 ? 1 : 2;
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d zero = _mm256_setzero_pd();
  for (std::size_t i = 0; i < quarter; i += step) {
    const std::size_t base = insert_zero(insert_zero(i, lo), hi);
    if (step == 1) {
      cplx& d0 = v[base];
      cplx& d1 = v[base + sr + sc];
      if constexpr (kReset) {
        d0 += d1;
        d1 = 0.0;
      } else {
        const cplx avg = 0.5 * (d0 + d1);
        d0 = avg;
        d1 = avg;
      }
      v[base + sr] = 0.0;
      v[base + sc] = 0.0;
      continue;
    }
    double* p0 = dp(v + base);
    double* p1 = dp(v + base + sr + sc);
    const __m256d d0 = _mm256_loadu_pd(p0);
    const __m256d d1 = _mm256_loadu_pd(p1);
    if constexpr (kReset) {
      _mm256_storeu_pd(p0, _mm256_add_pd(d0, d1));
      _mm256_storeu_pd(p1, zero);
    } else {
      const __m256d avg = _mm256_mul_pd(half, _mm256_add_pd(d0, d1));
      _mm256_storeu_pd(p0, avg);
      _mm256_storeu_pd(p1, avg);
    }
    _mm256_storeu_pd(dp(v + base + sr), zero);
    _mm256_storeu_pd(dp(v + base + sc), zero);
  }
}

void full_depolarize(cplx* v, unsigned n_bits, unsigned row_bit, unsigned col_bit) {
  mix_pair<false>(v, n_bits, row_bit, col_bit);
}

void reset(cplx* v, unsigned n_bits, unsigned row_bit, unsigned col_bit) {
  mix_pair<true>(v, n_bits, row_bit, col_bit);
}

void axpby(double a, const cplx* x, double b, cplx* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(dp(x + i));
    const __m256d vy = _mm256_loadu_pd(dp(y + i));
    _mm256_storeu_pd(dp(y + i), _mm256_add_pd(_mm256_mul_pd(va, vx), _mm256_mul_pd(vb, vy)));
  }
  for (; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

inline double hsum(__m256d v) {
  const __m128d s = _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double norm_sq(const cplx* v, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d x = _mm256_loadu_pd(dp(v + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(x, x));
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += std::norm(v[i]);
  return out;
}

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
  // re: ar*br + ai*bi ; im: ar*bi - ai*br
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(dp(a + i));
    const __m256d vb = _mm256_loadu_pd(dp(b + i));
    acc_re = _mm256_add_pd(acc_re, _mm256_mul_pd(va, vb));
    acc_im = _mm256_add_pd(acc_im, _mm256_mul_pd(va, _mm256_permute_pd(vb, 0b0101)));
  }
  alignas(32) double im[4];
  _mm256_store_pd(im, acc_im);
  cplx out(hsum(acc_re), im[0] - im[1] + im[2] - im[3]);
  for (; i < n; ++i) out += std::conj(a[i]) * b[i];
  return out;
}

constexpr KernelTable kAvx2{"avx2", apply_1q, apply_2q, full_depolarize, reset, axpby, norm_sq, dot};

}  // namespace

const KernelTable* avx2_kernels_impl() { return &kAvx2; }

}  // namespace cupset::simd

#else

namespace cupset::simd {
const KernelTable* avx2_kernels_impl() { return nullptr; }
}  // namespace cupset::simd

#endif
