#pragma once
#include <map>
#include <utility>
#include <vector>

#include "ikv/linalg.hpp"
#include "ikv/monomials.hpp"

namespace ikv::ring {

// A binary form f(X0, X1) of degree d, the input datum everything else is
// built from. coeffs[e0] is the coefficient of X0^e0 X1^(d-e0); note the
// monomial enumeration of degree d runs by X1-exponent, so monomial index i
// carries coeffs[d - i].
template <class F>
struct BinaryForm {
    unsigned d = 0;
    std::vector<typename F::Elem> coeffs;
};

// A homogeneous polynomial in 2 (X0, X1) or 3 (Y, X0, X1) variables, held
// as a dense coefficient vector over the monomial enumeration of its degree.
template <class F>
struct HomoPoly {
    unsigned nvars = 2;
    unsigned degree = 0;
    std::vector<typename F::Elem> coeffs;
};

template <class F>
std::size_t monomial_count(unsigned nvars, unsigned degree) {
    return nvars == 2 ? binary_count(degree) : ternary_count(degree);
}

template <class F>
HomoPoly<F> zero_poly(const F& field, unsigned nvars, unsigned degree) {
    return HomoPoly<F>{nvars, degree,
                       std::vector<typename F::Elem>(monomial_count<F>(nvars, degree), field.zero())};
}

template <class F>
HomoPoly<F> mono_poly(const F& field, unsigned nvars, unsigned degree, std::size_t idx) {
    HomoPoly<F> p = zero_poly(field, nvars, degree);
    p.coeffs.at(idx) = field.one();
    return p;
}

template <class F>
HomoPoly<F> binary_form_poly(const F& field, const BinaryForm<F>& f) {
    HomoPoly<F> p = zero_poly(field, 2, f.d);
    for (unsigned e0 = 0; e0 <= f.d; ++e0) p.coeffs[f.d - e0] = f.coeffs[e0];
    return p;
}

// View a binary form as a ternary polynomial with Y-exponent zero.
template <class F>
HomoPoly<F> embed_in_three_vars(const F& field, const HomoPoly<F>& p) {
    if (p.nvars != 2) throw Error("embed_in_three_vars: expected a binary polynomial");
    HomoPoly<F> out = zero_poly(field, 3, p.degree);
    for (std::size_t i = 0; i <= p.degree; ++i)
        out.coeffs[ternary_index(p.degree, 0, p.degree - static_cast<unsigned>(i))] = p.coeffs[i];
    return out;
}

template <class F>
HomoPoly<F> poly_mul(const F& field, const HomoPoly<F>& a, const HomoPoly<F>& b) {
    if (a.nvars != b.nvars) throw Error("poly_mul: variable count mismatch");
    const unsigned deg = a.degree + b.degree;
    HomoPoly<F> out = zero_poly(field, a.nvars, deg);
    if (a.nvars == 2) {
        for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
            if (field.is_zero(a.coeffs[i])) continue;
            for (std::size_t j = 0; j < b.coeffs.size(); ++j)
                out.coeffs[i + j] = field.add(out.coeffs[i + j], field.mul(a.coeffs[i], b.coeffs[j]));
        }
    } else {
        for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
            if (field.is_zero(a.coeffs[i])) continue;
            const TernaryMono ma = ternary_mono(a.degree, i);
            for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
                if (field.is_zero(b.coeffs[j])) continue;
                const TernaryMono mb = ternary_mono(b.degree, j);
                const std::size_t k = ternary_index(deg, ma.y + mb.y, ma.x0 + mb.x0);
                out.coeffs[k] = field.add(out.coeffs[k], field.mul(a.coeffs[i], b.coeffs[j]));
            }
        }
    }
    return out;
}

// Partial derivatives of a binary form, returned as (d/dX0, d/dX1).
template <class F>
std::pair<HomoPoly<F>, HomoPoly<F>> binary_derivatives(const F& field, const BinaryForm<F>& f) {
    if (f.d < 1) throw DegreeTooSmall("derivative of a constant form");
    HomoPoly<F> dx0 = zero_poly(field, 2, f.d - 1);
    HomoPoly<F> dx1 = zero_poly(field, 2, f.d - 1);
    for (unsigned e0 = 0; e0 <= f.d; ++e0) {
        const unsigned e1 = f.d - e0;
        // X0^e0 X1^e1 has degree-(d-1) monomial index equal to its X1-exponent
        if (e0 > 0) {
            const auto c = field.mul(field.from_int(e0), f.coeffs[e0]);
            dx0.coeffs[e1] = field.add(dx0.coeffs[e1], c);
        }
        if (e1 > 0) {
            const auto c = field.mul(field.from_int(e1), f.coeffs[e0]);
            dx1.coeffs[e1 - 1] = field.add(dx1.coeffs[e1 - 1], c);
        }
    }
    return {std::move(dx0), std::move(dx1)};
}

// ---------------------------------------------------------------------------
// One graded piece of S / I for a homogeneous ideal I, realized as exact
// linear algebra on the degree slice: rows are monomial multiples of the
// generators, the RREF pivots are leading monomials, and the non-pivot
// (standard) monomials give canonical coset representatives. The monomial
// enumerations above are graded-lex descending with Y > X0 > X1, so when the
// ideal is homogeneous in Y the standard monomials split by Y-degree.
template <class F>
struct GradedQuotientPiece {
    unsigned nvars = 2;
    unsigned degree = 0;
    la::QuotientSpace<F> space;

    std::size_t dim() const { return space.dim(); }
    std::size_t ambient() const { return space.ambient; }
    const std::vector<std::size_t>& standard_monomials() const { return space.coset_cols; }

    // Coordinates of [p] on the standard monomial basis.
    std::vector<typename F::Elem> normal_form(const F& field,
                                              const std::vector<typename F::Elem>& poly) const {
        if (poly.size() != space.ambient)
            throw DegreeMismatch("normal_form: coefficient vector does not match the degree slice");
        return space.project(field, poly);
    }

    // Canonical polynomial representative of a class (standard monomials
    // carry the class coordinates, all other monomials are zero).
    HomoPoly<F> lift(const F& field, const std::vector<typename F::Elem>& cls) const {
        if (cls.size() != dim()) throw DegreeMismatch("lift: class vector does not match the piece");
        HomoPoly<F> p = zero_poly(field, nvars, degree);
        for (std::size_t i = 0; i < cls.size(); ++i) p.coeffs[space.coset_cols[i]] = cls[i];
        return p;
    }
};

template <class F>
GradedQuotientPiece<F> quotient_piece(const F& field, unsigned nvars, unsigned degree,
                                      const std::vector<HomoPoly<F>>& generators) {
    const std::size_t ncols = monomial_count<F>(nvars, degree);
    la::DenseMatrix<F> rows(0, ncols, field.zero());
    for (const auto& g : generators) {
        if (g.nvars != nvars) throw Error("quotient_piece: generator variable count mismatch");
        if (g.degree > degree) continue; // no multiples land in this slice
        const unsigned cofactor_deg = degree - g.degree;
        const std::size_t nmono = monomial_count<F>(nvars, cofactor_deg);
        for (std::size_t m = 0; m < nmono; ++m)
            rows.append_row(poly_mul(field, mono_poly(field, nvars, cofactor_deg, m), g).coeffs);
    }
    auto denom = la::row_space(field, rows);
    return GradedQuotientPiece<F>{nvars, degree, la::quotient(field, ncols, std::move(denom))};
}

// ---------------------------------------------------------------------------
// The Jacobian-type rings attached to a smooth binary form f of degree d:
//
//   binary: S(X0,X1) / (f_X0, f_X1)            socle degree 2d-4
//   cover:  S(Y,X0,X1) / (dY^(d-1), f_X0, f_X1) socle degree 3d-6
//
// The second is the Jacobian ring of Y^d - f(X0,X1). Pieces are built on
// demand and cached; an instance is not safe for concurrent use.
template <class F>
class JacobianRing {
  public:
    static JacobianRing binary(const F& field, const BinaryForm<F>& f) {
        check_degree(f);
        auto [dx0, dx1] = binary_derivatives(field, f);
        return JacobianRing(field, f, 2, {std::move(dx0), std::move(dx1)});
    }

    static JacobianRing cover(const F& field, const BinaryForm<F>& f) {
        check_degree(f);
        auto [dx0, dx1] = binary_derivatives(field, f);
        HomoPoly<F> ypow = zero_poly(field, 3, f.d - 1);
        ypow.coeffs[ternary_index(f.d - 1, f.d - 1, 0)] = field.from_int(f.d);
        std::vector<HomoPoly<F>> gens;
        gens.push_back(std::move(ypow));
        gens.push_back(embed_in_three_vars(field, dx0));
        gens.push_back(embed_in_three_vars(field, dx1));
        return JacobianRing(field, f, 3, std::move(gens));
    }

    unsigned d() const { return f_.d; }
    unsigned nvars() const { return nvars_; }
    unsigned socle_degree() const { return nvars_ == 2 ? 2 * f_.d - 4 : 3 * f_.d - 6; }
    const F& field() const { return field_; }
    const BinaryForm<F>& form() const { return f_; }
    const std::vector<HomoPoly<F>>& generators() const { return gens_; }

    const GradedQuotientPiece<F>& piece(unsigned k) const {
        auto it = cache_.find(k);
        if (it == cache_.end())
            it = cache_.emplace(k, quotient_piece(field_, nvars_, k, gens_)).first;
        return it->second;
    }

    // [a] * [b], computed on canonical representatives; the result does not
    // depend on the choice because the ideal slice is quotiented out again.
    std::vector<typename F::Elem> multiply_classes(unsigned ka,
                                                   const std::vector<typename F::Elem>& a,
                                                   unsigned kb,
                                                   const std::vector<typename F::Elem>& b) const {
        const auto pa = piece(ka).lift(field_, a);
        const auto pb = piece(kb).lift(field_, b);
        return piece(ka + kb).normal_form(field_, poly_mul(field_, pa, pb).coeffs);
    }

  private:
    JacobianRing(const F& field, BinaryForm<F> f, unsigned nvars, std::vector<HomoPoly<F>> gens)
        : field_(field), f_(std::move(f)), nvars_(nvars), gens_(std::move(gens)) {}

    static void check_degree(const BinaryForm<F>& f) {
        if (f.d < 4) throw DegreeTooSmall("binary form degree must be at least 4");
        if (f.coeffs.size() != f.d + 1) throw DegreeMismatch("binary form coefficient count");
    }

    F field_;
    BinaryForm<F> f_;
    unsigned nvars_;
    std::vector<HomoPoly<F>> gens_;
    mutable std::map<unsigned, GradedQuotientPiece<F>> cache_;
};

// f defines d distinct points in P^1 exactly when its Jacobian ring is a
// complete intersection quotient: the socle piece survives with dimension 1
// and the ring vanishes one degree later.
template <class F>
bool smoothness_check_binary(const F& field, const BinaryForm<F>& f) {
    if (f.d < 4) throw DegreeTooSmall("smoothness check needs degree at least 4");
    auto ring = JacobianRing<F>::binary(field, f);
    return ring.piece(2 * f.d - 3).dim() == 0 && ring.piece(2 * f.d - 4).dim() == 1;
}

// Gram matrix of the multiplication pairing R^a x R^(socle-a) -> R^socle on
// the standard monomial bases; the socle piece must be a line.
template <class F>
la::DenseMatrix<F> macaulay_pairing_matrix(const F& field, const JacobianRing<F>& ring, unsigned a) {
    const unsigned soc = ring.socle_degree();
    if (a > soc) throw OrderOutOfRange("macaulay_pairing_matrix: degree exceeds socle degree");
    if (ring.piece(soc).dim() != 1)
        throw SocleDegreeMismatch("socle piece is not one-dimensional");
    const auto& pa = ring.piece(a);
    const auto& pb = ring.piece(soc - a);
    la::DenseMatrix<F> m = la::DenseMatrix<F>::zero(field, pa.dim(), pb.dim());
    for (std::size_t i = 0; i < pa.dim(); ++i) {
        std::vector<typename F::Elem> ei(pa.dim(), field.zero());
        ei[i] = field.one();
        for (std::size_t j = 0; j < pb.dim(); ++j) {
            std::vector<typename F::Elem> ej(pb.dim(), field.zero());
            ej[j] = field.one();
            m.at(i, j) = ring.multiply_classes(a, ei, soc - a, ej)[0];
        }
    }
    return m;
}

} // namespace ikv::ring
