#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nls/kernels.hpp"

using namespace nls;
namespace kn = nls::kernels;

namespace {

cvector random_vec(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto u = [&] { return (rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    cvector v(n);
    for (auto& z : v) z = cplx(u(), u());
    return v;
}

constexpr std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 64, 255, 1000};

double rel(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace

TEST_CASE("scalar reference sanity on tiny hand cases") {
    cplx a[2] = {{1.0, 2.0}, {0.0, -1.0}};
    cplx b[2] = {{3.0, -1.0}, {2.0, 2.0}};
    cplx d[2];
    kn::ref::cmul(d, a, b, 2);
    CHECK(d[0] == cplx(5.0, 5.0));   // (1+2i)(3-i)
    CHECK(d[1] == cplx(2.0, -2.0));  // (-i)(2+2i)

    cplx c[2] = {{0, 0}, {0, 0}};
    kn::ref::cmul_add(c, a, b, cplx(0.0, 1.0), 2);
    CHECK(c[0] == cplx(-5.0, 5.0));

    cplx cu[2];
    kn::ref::cubic(cu, a, 2);
    CHECK(cu[0] == cplx(5.0, 10.0));  // |1+2i|^2 (1+2i)
    CHECK(cu[1] == cplx(0.0, -1.0));

    CHECK(kn::ref::sum_abs2(a, 2) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(kn::ref::max_abs(a, 2) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
    // |a0| = sqrt 5, |a1| = 1: sum |.|^3 = 5^1.5 + 1
    CHECK(kn::ref::sum_abs_pow(a, 3.0, 2) ==
          doctest::Approx(std::pow(5.0, 1.5) + 1.0).epsilon(1e-15));
}

TEST_CASE("every available ISA matches the scalar reference") {
    for (kn::Isa isa : kn::available()) {
        CAPTURE(kn::name(isa));
        kn::force(isa);
        for (std::size_t n : kSizes) {
            CAPTURE(n);
            const cvector a = random_vec(n, 11 + n);
            const cvector b = random_vec(n, 777 + n);
            const cplx w(0.3, -1.7);

            cvector got(n), want(n);
            kn::cmul(got.data(), a.data(), b.data(), n);
            kn::ref::cmul(want.data(), a.data(), b.data(), n);
            for (std::size_t i = 0; i < n; ++i)
                CHECK(std::abs(got[i] - want[i]) <= 1e-14);

            got = b;
            want = b;
            kn::cmul_add(got.data(), a.data(), b.data(), w, n);
            kn::ref::cmul_add(want.data(), a.data(), b.data(), w, n);
            for (std::size_t i = 0; i < n; ++i)
                CHECK(std::abs(got[i] - want[i]) <= 1e-13);

            got = a;
            want = a;
            kn::axpy(got.data(), w, b.data(), n);
            kn::ref::axpy(want.data(), w, b.data(), n);
            for (std::size_t i = 0; i < n; ++i)
                CHECK(std::abs(got[i] - want[i]) <= 1e-13);

            kn::cubic(got.data(), a.data(), n);
            kn::ref::cubic(want.data(), a.data(), n);
            for (std::size_t i = 0; i < n; ++i)
                CHECK(std::abs(got[i] - want[i]) <= 1e-14);

            CHECK(rel(kn::sum_abs2(a.data(), n), kn::ref::sum_abs2(a.data(), n)) <= 1e-13);
            CHECK(rel(kn::sum_abs2_diff(a.data(), b.data(), n),
                      kn::ref::sum_abs2_diff(a.data(), b.data(), n)) <= 1e-13);
            for (double p : {1.0, 1.5, 2.0, 8.0 / 3.0, 6.0})
                CHECK(rel(kn::sum_abs_pow(a.data(), p, n),
                          kn::ref::sum_abs_pow(a.data(), p, n)) <= 1e-13);
            // max is rounding-exact: same mul/add structure, no reassociation
            CHECK(kn::max_abs(a.data(), n) == kn::ref::max_abs(a.data(), n));
        }
    }
    kn::force(kn::available().back());
}

TEST_CASE("force() rejects unavailable ISAs and reports the active one") {
    auto avail = kn::available();
    REQUIRE(!avail.empty());
    CHECK(avail.front() == kn::Isa::scalar);
    kn::force(kn::Isa::scalar);
    CHECK(kn::active() == kn::Isa::scalar);
    CHECK(kn::name(kn::Isa::scalar) == "scalar");
    bool has_avx2 = avail.size() > 1;
    if (!has_avx2) {
        CHECK_THROWS_AS(kn::force(kn::Isa::avx2), std::runtime_error);
    } else {
        kn::force(kn::Isa::avx2);
        CHECK(kn::active() == kn::Isa::avx2);
    }
    kn::force(avail.back());
}
