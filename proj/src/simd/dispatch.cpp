#include <atomic>
#include <cstdlib>
#include <string_view>

#include "mwin/errors.hpp"
#include "mwin/simd/kernels.hpp"

namespace mwin::simd {

namespace {

Isa detect()
{
    if (const char* env = std::getenv("MWIN_SIMD")) {
        const std::string_view want(env);
        if (want == "scalar") return Isa::Scalar;
        if (want == "avx2" && isa_supported(Isa::Avx2)) return Isa::Avx2;
    }
    return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current()
{
    static std::atomic<Isa> isa{detect()};
    return isa;
}

void check_sizes(std::size_t a, std::size_t b, const char* where)
{
    if (a != b) detail::domain_fail(where, "length mismatch");
}

}  // namespace

bool isa_supported(Isa isa)
{
    switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    }
    return false;
}

Isa active_isa()
{
    return current().load(std::memory_order_relaxed);
}

void force_isa(Isa isa)
{
    if (!isa_supported(isa)) detail::domain_fail("force_isa", "instruction set not supported by this CPU");
    current().store(isa, std::memory_order_relaxed);
}

const char* isa_name(Isa isa)
{
    return isa == Isa::Avx2 ? "avx2" : "scalar";
}

double dot(std::span<const double> a, std::span<const double> b)
{
    check_sizes(a.size(), b.size(), "simd::dot");
    return active_isa() == Isa::Avx2 ? avx2::dot(a.data(), b.data(), a.size())
                                     : scalar::dot(a.data(), b.data(), a.size());
}

double weighted_dot(std::span<const double> w, std::span<const double> a, std::span<const double> b)
{
    check_sizes(w.size(), a.size(), "simd::weighted_dot");
    check_sizes(w.size(), b.size(), "simd::weighted_dot");
    return active_isa() == Isa::Avx2 ? avx2::weighted_dot(w.data(), a.data(), b.data(), w.size())
                                     : scalar::weighted_dot(w.data(), a.data(), b.data(), w.size());
}

void hadamard(std::span<const double> a, std::span<const double> b, std::span<double> out)
{
    check_sizes(a.size(), b.size(), "simd::hadamard");
    check_sizes(a.size(), out.size(), "simd::hadamard");
    if (active_isa() == Isa::Avx2) {
        avx2::hadamard(a.data(), b.data(), out.data(), a.size());
    } else {
        scalar::hadamard(a.data(), b.data(), out.data(), a.size());
    }
}

void gemv(std::span<const double> a, std::size_t rows, std::size_t cols, std::span<const double> x,
          std::span<double> y)
{
    check_sizes(a.size(), rows * cols, "simd::gemv");
    check_sizes(x.size(), cols, "simd::gemv");
    check_sizes(y.size(), rows, "simd::gemv");
    if (active_isa() == Isa::Avx2) {
        avx2::gemv(a.data(), rows, cols, x.data(), y.data());
    } else {
        scalar::gemv(a.data(), rows, cols, x.data(), y.data());
    }
}

}  // namespace mwin::simd
