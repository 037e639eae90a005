#include "doctest.h"

#include "seernf/error.hpp"
#include "seernf/kernels.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <random>
#include <vector>

using namespace seernf;
using kernels::kLevels;

namespace {

std::array<double, kLevels> row_of(const kernels::Backend& b, double x) {
    std::array<double, kLevels> w{};
    b.membership_row(x, w.data());
    return w;
}

bool bitwise_equal(double a, double b) {
    return std::memcmp(&a, &b, sizeof(double)) == 0;
}

std::array<double, kLevels> random_consequents(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.05, 3.0);
    std::array<double, kLevels> c{};
    for (double& v : c) v = u(gen);
    return c;
}

} // namespace

TEST_CASE("membership rows are a partition of unity with at most two supports") {
    const auto& b = kernels::scalar_backend();
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 19.0);
    for (int i = 0; i < 5000; ++i) {
        const double x = u(gen);
        const auto w = row_of(b, x);
        double sum = 0.0;
        int nonzero = 0;
        for (double v : w) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            sum += v;
            if (v > 0.0) ++nonzero;
        }
        CHECK(sum == 1.0); // exact: the two supports are complementary
        CHECK(nonzero <= 2);
        CHECK(nonzero >= 1);
    }
}

TEST_CASE("membership at integer centers is one-hot") {
    const auto& b = kernels::scalar_backend();
    for (int r = 1; r <= kLevels; ++r) {
        const auto w = row_of(b, static_cast<double>(r));
        for (int s = 1; s <= kLevels; ++s)
            CHECK(w[static_cast<std::size_t>(s - 1)] == (s == r ? 1.0 : 0.0));
    }
}

TEST_CASE("membership clamps flat outside the center range") {
    const auto& b = kernels::scalar_backend();
    CHECK(row_of(b, 0.0) == row_of(b, 1.0));
    CHECK(row_of(b, 0.4) == row_of(b, 1.0));
    CHECK(row_of(b, 18.6) == row_of(b, 18.0));
    CHECK(row_of(b, 19.0) == row_of(b, 18.0));
}

TEST_CASE("fuzzy blend interpolates the consequents linearly between centers") {
    const auto& b = kernels::scalar_backend();
    std::mt19937_64 gen(12);
    const auto c = random_consequents(gen);
    // at centers: exact table read-back
    for (int r = 1; r <= kLevels; ++r)
        CHECK(b.fuzzy_blend(static_cast<double>(r), c.data()) ==
              c[static_cast<std::size_t>(r - 1)]);
    // between centers: convex combination within the bracketing pair
    std::uniform_real_distribution<double> u(1.0, 18.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = u(gen);
        const double v = b.fuzzy_blend(x, c.data());
        const int lo = static_cast<int>(std::floor(x));
        const int hi = std::min(lo + 1, static_cast<int>(kLevels));
        const double a = c[static_cast<std::size_t>(lo - 1)];
        const double d = c[static_cast<std::size_t>(hi - 1)];
        CHECK(v >= std::min(a, d) - 1e-15);
        CHECK(v <= std::max(a, d) + 1e-15);
    }
}

TEST_CASE("backend listing always starts with scalar") {
    const auto& list = kernels::available_backends();
    REQUIRE(!list.empty());
    CHECK(std::string_view(list[0]->name) == "scalar");
}

TEST_CASE("all compiled backends agree with the scalar reference") {
    const auto& scalar = kernels::scalar_backend();
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> pos(0.0, 19.0);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);

    for (const kernels::Backend* b : kernels::available_backends()) {
        CAPTURE(b->name);
        for (int i = 0; i < 1000; ++i) {
            const double x = pos(gen);
            const auto c = random_consequents(gen);

            // membership_row and fuzzy_blend: bit-identical
            const auto ws = row_of(scalar, x);
            const auto wb = row_of(*b, x);
            for (int r = 0; r < kLevels; ++r)
                CHECK(bitwise_equal(ws[static_cast<std::size_t>(r)],
                                    wb[static_cast<std::size_t>(r)]));
            CHECK(bitwise_equal(scalar.fuzzy_blend(x, c.data()),
                                b->fuzzy_blend(x, c.data())));

            // axpy: bit-identical per element
            auto va = c;
            auto vb = c;
            const double a = coef(gen);
            scalar.axpy(a, ws.data(), va.data(), va.size());
            b->axpy(a, wb.data(), vb.data(), vb.size());
            for (int r = 0; r < kLevels; ++r)
                CHECK(bitwise_equal(va[static_cast<std::size_t>(r)],
                                    vb[static_cast<std::size_t>(r)]));

            // dot and product: reduction order may differ, a few ulps allowed
            const auto c2 = random_consequents(gen);
            const double ds = scalar.dot(c.data(), c2.data(), c.size());
            const double db = b->dot(c.data(), c2.data(), c.size());
            CHECK(db == doctest::Approx(ds).epsilon(1e-13));
            const double ps = scalar.product(c.data(), c.size());
            const double pb = b->product(c.data(), c.size());
            CHECK(pb == doctest::Approx(ps).epsilon(1e-13));
        }
    }
}

TEST_CASE("backend selection") {
    kernels::select_backend("scalar");
    CHECK(std::string_view(kernels::active_backend().name) == "scalar");
    CHECK_THROWS_AS(kernels::select_backend("sse9"), ConfigError);
    // still scalar after the failed switch
    CHECK(std::string_view(kernels::active_backend().name) == "scalar");
    kernels::select_backend("auto");
    bool have_avx2 = false;
    for (const kernels::Backend* b : kernels::available_backends())
        if (std::string_view(b->name) == "avx2") have_avx2 = true;
    if (have_avx2) {
        kernels::select_backend("avx2");
        CHECK(std::string_view(kernels::active_backend().name) == "avx2");
        kernels::select_backend("auto");
    }
}
