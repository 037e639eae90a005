#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace seernf::kernels {

// Number of rating levels; every membership/consequent row has this width.
inline constexpr int kLevels = 18;

// A backend is one implementation of the dense inner loops. All backends
// compute the same values; `membership_row`, `fuzzy_blend` and `axpy` are
// bit-identical across backends (per-element ops, no reordering of nonzero
// terms), `dot`/`product` may differ by a few ulps from reduction order.
struct Backend {
    const char* name;

    // w[r-1] = max(0, 1 - |clamp(x,1,18) - r|) for r = 1..18.
    // Unit-base triangles centered on 1..18, clamped flat on [0,1) and (18,19].
    void (*membership_row)(double x, double* w) noexcept;

    // Fused fuzzy evaluation: grades -> normalized strengths -> weighted sum
    // of the 18 consequents. Returns sum_r (w_r / sum w) * c[r-1].
    double (*fuzzy_blend)(double x, const double* consequents) noexcept;

    // Plain dot product of two length-n rows.
    double (*dot)(const double* a, const double* b, std::size_t n) noexcept;

    // Product reduction of a length-n row.
    double (*product)(const double* v, std::size_t n) noexcept;

    // v[i] += a * g[i] for i in [0, n).
    void (*axpy)(double a, const double* g, double* v, std::size_t n) noexcept;
};

// The portable reference backend. Always available.
const Backend& scalar_backend();

// Backends compiled into this binary, scalar first.
const std::vector<const Backend*>& available_backends();

// The backend in use. First call picks the widest backend the CPU supports,
// unless the SEERNF_KERNELS environment variable names one explicitly.
const Backend& active_backend();

// Force a backend by name ("scalar", "avx2", or "auto"). Throws
// seernf::ConfigError for names not compiled in or not supported by the CPU.
void select_backend(std::string_view name);

} // namespace seernf::kernels
