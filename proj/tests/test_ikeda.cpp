#include "doctest.h"

#include <boost/multiprecision/gmp.hpp>
#include <cstddef>
#include <string>
#include <vector>

#include "ikv/ikeda.hpp"
#include "ikv/io.hpp"

#include "helpers.hpp"

using namespace ikv;

namespace {

// Reduction Q -> F_p of a rational with denominator prime to p.
PrimeField::Elem rational_mod_p(const PrimeField& field, const RationalField::Elem& q) {
    using boost::multiprecision::mpz_int;
    const mpz_int p(field.modulus());
    mpz_int num = numerator(q) % p;
    mpz_int den = denominator(q) % p;
    if (num < 0) num += p;
    if (den < 0) den += p;
    return field.div(num.convert_to<std::uint64_t>(), den.convert_to<std::uint64_t>());
}

template <class F>
la::DenseMatrix<F> random_invertible(const F& field, Rng& rng, std::size_t n) {
    for (;;) {
        auto m = test::random_matrix(field, rng, n, n);
        if (!field.is_zero(ivhs::det(field, m))) return m;
    }
}

// Recompute the lambda matrix from possibly substituted K1 rows.
template <class F>
la::DenseMatrix<F> lambda_from_rows(const F& field, const ikeda::IkedaData<F>& data,
                                    const la::DenseMatrix<F>& k1_rows) {
    la::DenseMatrix<F> out = la::DenseMatrix<F>::zero(field, data.s(), k1_rows.rows);
    for (std::size_t i = 0; i < data.s(); ++i) {
        std::vector<typename F::Elem> ui(data.s(), field.zero());
        ui[i] = field.one();
        for (std::size_t j = 0; j < k1_rows.rows; ++j) {
            auto prod = data.hodge.contract(ui, k1_rows.row(j));
            for (std::size_t c = 0; c < prod.size(); ++c)
                if (c != data.eta_index) CHECK(field.is_zero(prod[c]));
            out.at(i, j) = prod[data.eta_index];
        }
    }
    return out;
}

} // namespace

TEST_CASE("Fermat quartic: hand-checked data over Q and F_p") {
    auto run = [](const auto& field) {
        auto f = test::form_from_ints(field, {1, 0, 0, 0, 1});
        auto data = ikeda::build_ikeda_data(field, f);
        CHECK(data.d() == 4);
        CHECK(data.s() == 1);
        CHECK(data.hodge.g == 3);
        CHECK(data.k_vectors.rows == 2);
        CHECK(data.k1_vectors.rows == 1);

        // H01 standard monomials in degree 5 are Y^2 X0^2 X1, Y^2 X0 X1^2,
        // Y X0^2 X1^2; eta = Y * (binary socle X0^2 X1^2) sits at position 2
        const auto& h01 = data.hodge.cover.piece(5);
        REQUIRE(h01.dim() == 3);
        CHECK(ternary_mono(5, h01.standard_monomials()[0]) == TernaryMono{2, 2, 1});
        CHECK(ternary_mono(5, h01.standard_monomials()[1]) == TernaryMono{2, 1, 2});
        CHECK(ternary_mono(5, h01.standard_monomials()[2]) == TernaryMono{1, 2, 2});
        CHECK(data.eta_index == 2);

        // X0^2 X1^2 * Y is the eta monomial itself, so lambda is the 1x1 unit
        REQUIRE(data.lambda.rows == 1);
        CHECK(field.eq(data.lambda.at(0, 0), field.one()));

        auto cert = ikeda::verify_nonvanishing(field, data, "test", "digest");
        CHECK(cert.certified);
        CHECK(cert.verdict() == "certified");
        CHECK(cert.lemma_i_pass);
        CHECK(cert.lemma_ii_pass);
        CHECK(cert.det_lambda == "1");
        CHECK(cert.kernel_membership_pass);
        CHECK(cert.eig_h10_dim == 1);
        CHECK(cert.eig_h01_dim == 1);
        CHECK(cert.annihilator_dim == 0);
        CHECK(cert.witnesses.empty());
        // degenerate wedge order is flagged but not failed
        REQUIRE(cert.notes.size() == 1);
        CHECK(cert.notes[0].find("s = 1") == 0);

        // with d = 4 the annihilator source R^0 is the constants, and the
        // stacked multiplication is injective on them
        auto ann = ikeda::annihilator_of_w(field, data);
        CHECK(ann.rows == 0);
        CHECK(ann.cols == 1);
    };
    run(RationalField{});
    run(test::fp());
}

TEST_CASE("strata data for random smooth forms") {
    auto field = test::fp();
    Rng rng(71);
    for (unsigned d = 4; d <= 6; ++d) {
        auto f = test::random_smooth(field, d, rng);
        auto data = ikeda::build_ikeda_data(field, f);
        CHECK(data.s() == d - 3);
        CHECK(data.k_vectors.rows == d - 2);
        CHECK(data.k1_vectors.rows == d - 3);
        CHECK(data.lambda.rows == d - 3);

        // K rows are unit vectors at Y-degree-0 standard positions of H10
        const auto& h10 = data.hodge.cover.piece(d - 3);
        for (std::size_t r = 0; r < data.k_vectors.rows; ++r) {
            std::size_t support = 0, pos = 0;
            for (std::size_t c = 0; c < data.k_vectors.cols; ++c)
                if (!field.is_zero(data.k_vectors.at(r, c))) {
                    ++support;
                    pos = c;
                }
            CHECK(support == 1);
            CHECK(ternary_mono(d - 3, h10.standard_monomials()[pos]).y == 0);
        }

        // the stored lambda agrees with a fresh contraction
        auto again = lambda_from_rows(field, data, data.k1_vectors);
        CHECK(again.equal(field, data.lambda));

        auto li = ikeda::check_lemma_i(field, data);
        CHECK(li.pass);
        auto lii = ikeda::check_lemma_ii(field, data);
        CHECK(lii.pass);
        CHECK(!field.is_zero(lii.det_lambda));
    }
}

TEST_CASE("quintic at a pinned seed: test element sits in a one-dimensional kernel") {
    auto field = test::fp();
    Rng rng(42);
    auto f = test::random_smooth(field, 5, rng);
    auto data = ikeda::build_ikeda_data(field, f);
    CHECK(data.s() == 2);

    auto w = ikeda::build_test_element(field, data);
    CHECK(!la::vec_is_zero(field, w));
    CHECK(ikeda::check_kernel_membership(field, data, w));

    Rng krng(7);
    auto space = ivhs::dual_invariant_space(field, data.hodge, data.s(), krng);
    REQUIRE(space.kernel_basis.rows == 1);
    CHECK(space.modded_image.dim() == 0);
    CHECK(la::row_space(field, space.kernel_basis).contains(field, w));

    // perturbing w off the line breaks membership
    auto w_bad = w;
    w_bad[0] = field.add(w_bad[0], field.one());
    CHECK(!ikeda::check_kernel_membership(field, data, w_bad));

    auto cert = ikeda::verify_nonvanishing(field, data, "test", "digest");
    CHECK(cert.certified);
    CHECK(cert.notes.empty());
    CHECK(cert.witnesses.empty());
}

TEST_CASE("corrupted input data fails the first lemma and the certificate") {
    auto field = test::fp();
    for (unsigned d : {4u, 5u}) {
        Rng rng(80 + d);
        auto f = test::random_smooth(field, d, rng);
        auto data = ikeda::build_ikeda_data(field, f);
        ikeda::inject_corruption(field, data);

        auto li = ikeda::check_lemma_i(field, data);
        CHECK(!li.pass);
        CHECK(!la::vec_is_zero(field, li.product));

        auto cert = ikeda::verify_nonvanishing(field, data, "test", "digest");
        CHECK(!cert.certified);
        CHECK(cert.verdict() == "not_certified");
        CHECK(!cert.lemma_i_pass);
        REQUIRE(!cert.witnesses.empty());
        CHECK(cert.witnesses[0].check == "lemma_i");
        CHECK(!cert.witnesses[0].coords.empty());
    }
}

TEST_CASE("checks are invariant under a change of basis of K and K1") {
    auto field = test::fp();
    Rng rng(91);
    auto f = test::random_smooth(field, 5, rng);
    auto base = ikeda::build_ikeda_data(field, f);

    for (int trial = 0; trial < 5; ++trial) {
        auto data = base;
        auto gk = random_invertible(field, rng, data.k_vectors.rows);
        auto gk1 = random_invertible(field, rng, data.k1_vectors.rows);
        data.k_vectors = la::mat_mul(field, gk, data.k_vectors);
        data.k1_vectors = la::mat_mul(field, gk1, data.k1_vectors);

        CHECK(ikeda::check_lemma_i(field, data).pass);

        auto lam = lambda_from_rows(field, data, data.k1_vectors);
        CHECK(!field.is_zero(ivhs::det(field, lam)));

        // w picks up the determinant of gk, so membership is unchanged
        auto w = ikeda::build_test_element(field, data);
        CHECK(!la::vec_is_zero(field, w));
        CHECK(ikeda::check_kernel_membership(field, data, w));
    }
}

TEST_CASE("rescaling f rescales nothing that matters") {
    auto field = test::fp();
    Rng rng(97);
    auto f = test::random_smooth(field, 5, rng);
    auto scaled = f;
    const auto c = field.from_int(17);
    for (auto& x : scaled.coeffs) x = field.mul(c, x);

    auto a = ikeda::verify_nonvanishing(field, ikeda::build_ikeda_data(field, f), "t", "a");
    auto b = ikeda::verify_nonvanishing(field, ikeda::build_ikeda_data(field, scaled), "t", "b");
    CHECK(a.certified);
    CHECK(b.certified);
    CHECK(a.eig_h10_dim == b.eig_h10_dim);
    CHECK(a.eig_h01_dim == b.eig_h01_dim);
    CHECK(a.annihilator_dim == b.annihilator_dim);
}

TEST_CASE("rationals and F_p agree on integer input forms") {
    RationalField rat;
    auto field = test::fp();
    for (unsigned d : {4u, 5u}) {
        for (std::uint64_t seed : {1001u + d, 2002u + d, 3003u + d}) {
            Rng rng(seed);
            auto fq = test::random_smooth(rat, d, rng);
            ring::BinaryForm<PrimeField> fp_form{d, {}};
            for (const auto& c : fq.coeffs) {
                CHECK(denominator(c) == 1);
                fp_form.coeffs.push_back(
                    field.from_int(numerator(c).convert_to<std::int64_t>()));
            }

            auto dq = ikeda::build_ikeda_data(rat, fq);
            auto dp = ikeda::build_ikeda_data(field, fp_form);
            CHECK(dq.eta_index == dp.eta_index);
            CHECK(dq.hodge.g == dp.hodge.g);

            auto cq = ikeda::verify_nonvanishing(rat, dq, "q", "x");
            auto cp = ikeda::verify_nonvanishing(field, dp, "p", "x");
            CHECK(cq.certified);
            CHECK(cp.certified);
            CHECK(cq.eig_h10_dim == cp.eig_h10_dim);
            CHECK(cq.eig_h01_dim == cp.eig_h01_dim);
            CHECK(cq.annihilator_dim == cp.annihilator_dim);
            CHECK(cq.kernel_membership_pass == cp.kernel_membership_pass);

            // det(lambda) over Q reduces to det(lambda) over F_p
            auto det_q = ivhs::det(rat, dq.lambda);
            auto det_p = ivhs::det(field, dp.lambda);
            CHECK(field.eq(rational_mod_p(field, det_q), det_p));
        }
    }
}
