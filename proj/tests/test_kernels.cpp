#include <doctest.h>

#include <cstring>
#include <vector>

#include "bci/kernels.hpp"
#include "bci/rng.hpp"

using namespace bci;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n, double lo = -10.0, double hi = 10.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform(lo, hi);
    return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("kernel variant listing") {
    const auto variants = available_kernels();
    REQUIRE(!variants.empty());
    CHECK(std::string(variants.front()->name) == "scalar");
    // The active set must be one of the available ones.
    bool found = false;
    for (const auto* k : variants) {
        if (k == &active_kernels()) found = true;
    }
    CHECK(found);
    INFO("active kernels: ", active_kernels().name);
}

TEST_CASE("scalar kernels compute the reference results") {
    const auto& k = scalar_kernels();
    const std::vector<double> a = {1.0, -2.0, 3.5, 0.0};
    const std::vector<double> b = {2.0, 0.5, -1.0, 7.0};
    std::vector<double> out(4);

    k.multiply(a.data(), b.data(), out.data(), 4);
    CHECK(out == std::vector<double>{2.0, -1.0, -3.5, 0.0});

    k.scale(a.data(), -2.0, out.data(), 4);
    CHECK(out == std::vector<double>{-2.0, 4.0, -7.0, -0.0});

    std::vector<double> acc = {1.0, 1.0, 1.0, 1.0};
    k.accumulate_power(a.data(), b.data(), acc.data(), 4);
    CHECK(acc == std::vector<double>{6.0, 5.25, 14.25, 50.0});

    // (1+2i)(3+4i) = -5+10i
    const double are[] = {1.0}, aim[] = {2.0}, bre[] = {3.0}, bim[] = {4.0};
    double ore = 0.0, oim = 0.0;
    k.complex_multiply(are, aim, bre, bim, &ore, &oim, 1);
    CHECK(ore == -5.0);
    CHECK(oim == 10.0);
}

TEST_CASE("biquad_step matches a hand-stepped transposed direct form II") {
    const auto& k = scalar_kernels();
    const BiquadCoeffs c{0.5, 0.25, -0.125, -0.3, 0.2};
    double s1 = 0.0, s2 = 0.0, y = 0.0;
    double hs1 = 0.0, hs2 = 0.0;
    const double xs[] = {1.0, -0.5, 2.0, 0.0, 3.25};
    for (double x : xs) {
        k.biquad_step(c, &x, &s1, &s2, &y, 1);
        const double hy = c.b0 * x + hs1;
        hs1 = c.b1 * x - c.a1 * hy + hs2;
        hs2 = c.b2 * x - c.a2 * hy;
        CHECK(y == hy);
        CHECK(s1 == hs1);
        CHECK(s2 == hs2);
    }
}

TEST_CASE("all kernel variants are bit-identical to scalar") {
    const auto variants = available_kernels();
    Rng rng(20240811);

    // Lane counts straddle the SIMD widths: remainder handling must agree too.
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3}, std::size_t{4},
                          std::size_t{6}, std::size_t{7}, std::size_t{8}, std::size_t{129},
                          std::size_t{1000}}) {
        const auto a = random_vec(rng, n);
        const auto b = random_vec(rng, n);
        const auto c = random_vec(rng, n);
        const auto d = random_vec(rng, n);
        const double s = rng.uniform(-3.0, 3.0);

        std::vector<double> ref_mul(n), ref_scale(n), ref_acc = c, ref_cre(n), ref_cim(n);
        const auto& ref = scalar_kernels();
        ref.multiply(a.data(), b.data(), ref_mul.data(), n);
        ref.scale(a.data(), s, ref_scale.data(), n);
        ref.accumulate_power(a.data(), b.data(), ref_acc.data(), n);
        ref.complex_multiply(a.data(), b.data(), c.data(), d.data(), ref_cre.data(),
                             ref_cim.data(), n);

        const BiquadCoeffs coeffs{1.2, -0.7, 0.33, -1.1, 0.56};
        std::vector<double> ref_s1 = c, ref_s2 = d, ref_y(n);
        ref.biquad_step(coeffs, a.data(), ref_s1.data(), ref_s2.data(), ref_y.data(), n);

        for (const auto* variant : variants) {
            CAPTURE(variant->name);
            CAPTURE(n);
            std::vector<double> out(n);
            variant->multiply(a.data(), b.data(), out.data(), n);
            CHECK(bit_equal(out, ref_mul));

            variant->scale(a.data(), s, out.data(), n);
            CHECK(bit_equal(out, ref_scale));

            std::vector<double> acc = c;
            variant->accumulate_power(a.data(), b.data(), acc.data(), n);
            CHECK(bit_equal(acc, ref_acc));

            std::vector<double> cre(n), cim(n);
            variant->complex_multiply(a.data(), b.data(), c.data(), d.data(), cre.data(),
                                      cim.data(), n);
            CHECK(bit_equal(cre, ref_cre));
            CHECK(bit_equal(cim, ref_cim));

            std::vector<double> s1 = c, s2 = d, y(n);
            variant->biquad_step(coeffs, a.data(), s1.data(), s2.data(), y.data(), n);
            CHECK(bit_equal(y, ref_y));
            CHECK(bit_equal(s1, ref_s1));
            CHECK(bit_equal(s2, ref_s2));
        }
    }
}

TEST_CASE("biquad_step variants stay bit-identical over long recursions") {
    // Recursive state amplifies any single-ulp divergence, so run a long
    // filter on every variant and demand exact agreement at the end.
    const auto variants = available_kernels();
    const BiquadCoeffs c{0.02008336556421123, 0.04016673112842245, 0.02008336556421123,
                         -1.5610180758007182, 0.6413515380575631};
    Rng rng(99);
    const std::size_t lanes = 6;
    const std::size_t steps = 50000;
    std::vector<std::vector<double>> inputs(steps, std::vector<double>(lanes));
    for (auto& row : inputs) {
        for (auto& x : row) x = rng.uniform(-5.0, 5.0);
    }

    std::vector<double> ref_s1(lanes, 0.0), ref_s2(lanes, 0.0), ref_y(lanes, 0.0);
    for (const auto& row : inputs) {
        scalar_kernels().biquad_step(c, row.data(), ref_s1.data(), ref_s2.data(), ref_y.data(),
                                     lanes);
    }

    for (const auto* variant : variants) {
        CAPTURE(variant->name);
        std::vector<double> s1(lanes, 0.0), s2(lanes, 0.0), y(lanes, 0.0);
        for (const auto& row : inputs) {
            variant->biquad_step(c, row.data(), s1.data(), s2.data(), y.data(), lanes);
        }
        CHECK(bit_equal(y, ref_y));
        CHECK(bit_equal(s1, ref_s1));
        CHECK(bit_equal(s2, ref_s2));
    }
}
