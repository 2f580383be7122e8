#pragma once

// Data-parallel inner loops of the spectral sums and the field synthesis.
//
// Every kernel has a scalar reference implementation and an AVX2/FMA variant.
// The public entry points dispatch at runtime on CPU support; the choice can be
// pinned with force_isa() or the MWIN_SIMD environment variable ("scalar" or
// "avx2"). The variants agree to rounding, not bitwise: the AVX2 path keeps four
// partial sums per lane.

#include <cstddef>
#include <span>

namespace mwin::simd {

enum class Isa { Scalar, Avx2 };

bool isa_supported(Isa isa);
Isa active_isa();
/// Pins the dispatch target. Throws DomainError if the CPU lacks the ISA.
void force_isa(Isa isa);
const char* isa_name(Isa isa);

/// Σ a_i b_i
double dot(std::span<const double> a, std::span<const double> b);
/// Σ w_i a_i b_i
double weighted_dot(std::span<const double> w, std::span<const double> a, std::span<const double> b);
/// out_i = a_i b_i
void hadamard(std::span<const double> a, std::span<const double> b, std::span<double> out);
/// y = A x with A row-major, rows × cols.
void gemv(std::span<const double> a, std::size_t rows, std::size_t cols, std::span<const double> x,
          std::span<double> y);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n);
void hadamard(const double* a, const double* b, double* out, std::size_t n);
void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
}  // namespace scalar

namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n);
void hadamard(const double* a, const double* b, double* out, std::size_t n);
void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
}  // namespace avx2

}  // namespace mwin::simd
