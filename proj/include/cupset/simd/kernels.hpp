#pragma once

#include <complex>
#include <cstddef>

namespace cupset::simd {

using cplx = std::complex<double>;

// Kernels act on a flat complex vector of 2^n_bits amplitudes. Bit positions
// are counted from the least-significant end of the index.
struct KernelTable {
  const char* name;
  // v <- (m acting on bit) v, m row-major 2x2.
  void (*apply_1q)(cplx* v, unsigned n_bits, unsigned bit, const cplx* m);
  // m row-major 4x4; its first factor acts on bit_a, its second on bit_b.
  void (*apply_2q)(cplx* v, unsigned n_bits, unsigned bit_a, unsigned bit_b, const cplx* m);
  // Replace the (row_bit, col_bit) pair of a vectorized density matrix by
  // I/2 tensor its partial trace.
  void (*full_depolarize)(cplx* v, unsigned n_bits, unsigned row_bit, unsigned col_bit);
  // Replace the (row_bit, col_bit) pair by |0><0| tensor its partial trace.
  void (*reset)(cplx* v, unsigned n_bits, unsigned row_bit, unsigned col_bit);
  // y <- a x + b y
  void (*axpby)(double a, const cplx* x, double b, cplx* y, std::size_t n);
  double (*norm_sq)(const cplx* v, std::size_t n);
  // sum conj(a_i) b_i
  cplx (*dot)(const cplx* a, const cplx* b, std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the build or the CPU lacks AVX2.
const KernelTable* avx2_kernels();
// Best table for this CPU; CUPSET_SIMD=scalar forces the reference path.
const KernelTable& kernels();

// Generic k-qubit application, reference implementation only. bits[j] is the
// bit acted on by the j-th (most-significant) factor of m.
void apply_kq(cplx* v, unsigned n_bits, const unsigned* bits, unsigned k, const cplx* m);

}  // namespace cupset::simd
