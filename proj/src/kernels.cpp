#include "seernf/kernels.hpp"

#include "seernf/error.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

namespace seernf::kernels {

namespace {

inline double clamp_center_domain(double x) noexcept {
    if (x < 1.0) return 1.0;
    if (x > 18.0) return 18.0;
    return x;
}

void membership_row_scalar(double x, double* w) noexcept {
    const double xc = clamp_center_domain(x);
    for (int r = 1; r <= kLevels; ++r) {
        const double d = std::fabs(xc - static_cast<double>(r));
        const double g = 1.0 - d;
        w[r - 1] = g > 0.0 ? g : 0.0;
    }
}

double fuzzy_blend_scalar(double x, const double* c) noexcept {
    double w[kLevels];
    membership_row_scalar(x, w);
    double total = 0.0;
    double acc = 0.0;
    for (int i = 0; i < kLevels; ++i) {
        total += w[i];
        acc += w[i] * c[i];
    }
    return acc / total;
}

double dot_scalar(const double* a, const double* b, std::size_t n) noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double product_scalar(const double* v, std::size_t n) noexcept {
    double acc = 1.0;
    for (std::size_t i = 0; i < n; ++i) acc *= v[i];
    return acc;
}

void axpy_scalar(double a, const double* g, double* v, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) v[i] += a * g[i];
}

constexpr Backend kScalar{
    "scalar",          membership_row_scalar, fuzzy_blend_scalar,
    dot_scalar,        product_scalar,        axpy_scalar,
};

std::atomic<const Backend*> g_active{nullptr};

const Backend* pick_default() {
    if (const char* env = std::getenv("SEERNF_KERNELS")) {
        for (const Backend* b : available_backends())
            if (std::string_view(b->name) == env) return b;
        // Unknown name in the environment falls through to auto-detection;
        // select_backend() is the strict path.
    }
#if defined(SEERNF_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2")) {
        for (const Backend* b : available_backends())
            if (std::string_view(b->name) == "avx2") return b;
    }
#endif
    return &kScalar;
}

} // namespace

#if defined(SEERNF_HAVE_AVX2)
const Backend& avx2_backend(); // defined in kernels_avx2.cpp
#endif

const Backend& scalar_backend() { return kScalar; }

const std::vector<const Backend*>& available_backends() {
    static const std::vector<const Backend*> v = [] {
        std::vector<const Backend*> out{&kScalar};
#if defined(SEERNF_HAVE_AVX2)
        out.push_back(&avx2_backend());
#endif
        return out;
    }();
    return v;
}

const Backend& active_backend() {
    const Backend* b = g_active.load(std::memory_order_acquire);
    if (b == nullptr) {
        b = pick_default();
        g_active.store(b, std::memory_order_release);
    }
    return *b;
}

void select_backend(std::string_view name) {
    if (name == "auto") {
        g_active.store(nullptr, std::memory_order_release);
        active_backend();
        return;
    }
    for (const Backend* b : available_backends()) {
        if (name == b->name) {
            if (std::string_view(b->name) == "avx2") {
#if defined(SEERNF_HAVE_AVX2)
                if (!__builtin_cpu_supports("avx2"))
                    throw ConfigError("kernel backend 'avx2' not supported by this CPU");
#endif
            }
            g_active.store(b, std::memory_order_release);
            return;
        }
    }
    throw ConfigError("unknown kernel backend '" + std::string(name) +
                      "' (compiled-in: scalar" +
#if defined(SEERNF_HAVE_AVX2)
                      ", avx2"
#endif
                      ")");
}

} // namespace seernf::kernels
