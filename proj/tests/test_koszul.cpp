#include "doctest.h"

#include <cstddef>
#include <vector>

#include "ikv/koszul.hpp"

#include "helpers.hpp"

using namespace ikv;

TEST_CASE("pluricanonical dimensions follow Riemann-Roch") {
    auto field = test::fp();
    Rng rng(103);
    struct Row {
        unsigned d;
        std::size_t g, h02k, h03k;
    };
    // h^0(mK) = (2m-1)(g-1) for m >= 2 on a genus-g curve
    for (const Row& row : {Row{4, 3, 6, 10}, Row{5, 6, 15, 25}, Row{6, 10, 27, 45}}) {
        auto f = test::random_smooth(field, row.d, rng);
        koszul::CanonicalSystem<PrimeField> sys(field, f);
        CHECK(sys.g() == row.g);
        CHECK(sys.piece(1).dim() == row.g);
        CHECK(sys.piece(2).dim() == row.h02k);
        CHECK(sys.piece(3).dim() == row.h03k);

        auto tab = koszul::canonical_mult_table_plane(field, f);
        CHECK(tab.dim_h0k == row.g);
        CHECK(tab.dim_h02k == row.h02k);
    }
}

TEST_CASE("canonical multiplication is the polynomial product modulo the curve") {
    auto field = test::fp();
    Rng rng(107);
    auto f = test::random_smooth(field, 5, rng);
    koszul::CanonicalSystem<PrimeField> sys(field, f);

    // the curve equation itself maps to zero in its own degree slice
    const auto& slice = sys.piece(0); // degree 0: only the constants
    CHECK(slice.dim() == 1);
    const auto& deg_d = ring::quotient_piece(field, 3u, f.d, {sys.curve()});
    CHECK(la::vec_is_zero(field, deg_d.normal_form(field, sys.curve().coeffs)));

    // multiplication is symmetric: x_i * [x_j] = x_j * [x_i] in H^0(2K)
    const std::size_t g = sys.g();
    for (std::size_t i = 0; i < g; ++i) {
        std::vector<PrimeField::Elem> ei(g, field.zero());
        ei[i] = field.one();
        for (std::size_t j = i + 1; j < g; ++j) {
            std::vector<PrimeField::Elem> ej(g, field.zero());
            ej[j] = field.one();
            CHECK(la::vec_eq(field, sys.multiply(1, ei, j), sys.multiply(1, ej, i)));
        }
    }
}

TEST_CASE("quartic strand: kernel equals wedge image at k=1") {
    auto field = test::fp();
    Rng rng(109);
    for (int trial = 0; trial < 4; ++trial) {
        auto f = test::random_smooth(field, 4, rng);
        auto tab = koszul::canonical_mult_table_plane(field, f);
        auto rep = koszul::koszul_kernel_report(field, tab, 1);
        CHECK(rep.dim_kernel == 3);
        CHECK(rep.dim_wedge_image == 3);
        CHECK(rep.wedge_inside_kernel);
        CHECK(rep.equal);
    }
}

TEST_CASE("quintic strand: wedge image is a proper subspace at k=3") {
    auto field = test::fp();
    Rng rng(113);
    auto f = test::random_smooth(field, 5, rng);
    auto tab = koszul::canonical_mult_table_plane(field, f);
    for (std::size_t k = 1; k <= 3; ++k) {
        auto rep = koszul::koszul_kernel_report(field, tab, k);
        CHECK(rep.wedge_inside_kernel);
        CHECK(rep.dim_wedge_image <= rep.dim_kernel);
        if (k == 3) {
            // plane quintics are far from general curves of genus 6, and the
            // strand detects it: the kernel strictly exceeds the wedge image
            CHECK(rep.dim_kernel == 18);
            CHECK(rep.dim_wedge_image == 15);
            CHECK(!rep.equal);
        }
    }
}

TEST_CASE("top wedge order: both sides vanish") {
    auto field = test::fp();
    Rng rng(127);
    auto f = test::random_smooth(field, 4, rng);
    auto tab = koszul::canonical_mult_table_plane(field, f);
    auto rep = koszul::koszul_kernel_report(field, tab, tab.dim_h0k);
    CHECK(rep.dim_kernel == 0);
    CHECK(rep.dim_wedge_image == 0);
    CHECK(rep.equal);
}

TEST_CASE("order guards") {
    auto field = test::fp();
    Rng rng(131);
    auto f = test::random_smooth(field, 4, rng);
    auto tab = koszul::canonical_mult_table_plane(field, f);
    CHECK_THROWS_AS(koszul::koszul_kernel_report(field, tab, 0), OrderOutOfRange);
    CHECK_THROWS_AS(koszul::koszul_kernel_report(field, tab, tab.dim_h0k + 1),
                    OrderOutOfRange);
    CHECK_THROWS_AS(
        koszul::CanonicalSystem<PrimeField>(field, test::form_from_ints(field, {1, 1, 1, 1})),
        DegreeTooSmall);
}

TEST_CASE("the table differential is the pluricanonical differential at m=1") {
    auto field = test::fp();
    Rng rng(137);
    auto f = test::random_smooth(field, 5, rng);
    koszul::CanonicalSystem<PrimeField> sys(field, f);
    auto tab = koszul::canonical_mult_table_plane(field, f);
    for (std::size_t k = 1; k <= 2; ++k) {
        auto a = koszul::koszul_differential(field, tab, k);
        auto b = koszul::pluricanonical_differential(field, sys, 1, k);
        CHECK(a.equal(field, b));
    }
}

TEST_CASE("consecutive differentials compose to zero") {
    auto field = test::fp();
    Rng rng(139);
    for (unsigned d : {4u, 5u}) {
        auto f = test::random_smooth(field, d, rng);
        koszul::CanonicalSystem<PrimeField> sys(field, f);
        const std::size_t kmax = std::min<std::size_t>(3, sys.g());
        for (std::size_t k = 2; k <= kmax; ++k) {
            auto inner = koszul::pluricanonical_differential(field, sys, 1, k);
            auto outer = koszul::pluricanonical_differential(field, sys, 2, k - 1);
            auto comp = la::mat_mul(field, outer, inner);
            for (const auto& x : comp.data) CHECK(field.is_zero(x));
        }
    }
}
