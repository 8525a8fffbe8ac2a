#pragma once

#include <utility>
#include <vector>

#include <gmpxx.h>

#include "pisot/errors.hpp"
#include "pisot/int_polynomial.hpp"
#include "pisot/sturm.hpp"

namespace pisot {

struct UnitDiskCount {
    int inside = 0;    // |root| < 1
    int on_circle = 0; // |root| = 1
};

namespace detail {

// Cauchy index of A/B over (-inf, +inf): sum of jump signs of A/B at the
// sign-changing real zeros of B, via the signed remainder chain of (B, A mod B).
inline int cauchy_index_line(IntPolynomial a, IntPolynomial b) {
    require(!b.is_zero(), errc::internal, "cauchy index with zero denominator");
    IntPolynomial g = poly_gcd(a, b);
    if (g.degree() > 0) {
        a = a.divide_exact(g);
        b = b.divide_exact(g);
    }
    if (b.degree() == 0) return 0;
    std::vector<IntPolynomial> chain;
    chain.push_back(b);
    IntPolynomial first = detail::signed_prem(a, b);  // A mod B up to a positive factor
    if (first.is_zero()) return 0;                    // A multiple of B: no jumps survive
    chain.push_back(first);
    while (!chain.back().is_zero() && chain.back().degree() >= 0) {
        IntPolynomial r = detail::signed_prem(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        chain.push_back(-r);
        if (chain.back().degree() == 0) break;
    }
    auto variations = [&chain](bool at_pos) {
        int var = 0, prev = 0;
        for (const auto& s : chain) {
            int sg = at_pos ? s.sign_at_pos_inf() : s.sign_at_neg_inf();
            if (sg == 0) continue;
            if (prev != 0 && sg != prev) ++var;
            prev = sg;
        }
        return var;
    };
    return variations(false) - variations(true);
}

// Winding number of q along the unit circle (counterclockwise), which equals
// the number of roots of q strictly inside the disk. Requires: q(0) != 0 and
// no roots of modulus 1. Uses the rational parametrization
// z(t) = (1 - t^2 + 2it)/(1 + t^2) and exact Cauchy-index counting of the
// real-axis crossings of W(t) = (1+t^2)^n q(z(t)) = A(t) + i B(t).
inline int winding_unit_circle(const IntPolynomial& q) {
    int n = q.degree();
    require(n >= 0 && q.coeff(0) != 0, errc::zero_constant_term, "winding: q(0) must be nonzero");
    if (n == 0) return 0;
    require(q.sign_at(mpq_class(1)) != 0 && q.sign_at(mpq_class(-1)) != 0, errc::internal,
            "winding: root at z = +-1");

    IntPolynomial re_z{1, 0, -1};   // 1 - t^2
    IntPolynomial im_z{0, 2};       // 2t
    IntPolynomial one_t2{1, 0, 1};  // 1 + t^2

    // powers of (re_z + i im_z) and of (1 + t^2)
    std::vector<IntPolynomial> pw_re(static_cast<std::size_t>(n) + 1), pw_im(pw_re.size()),
        pw_m(pw_re.size());
    pw_re[0] = IntPolynomial{1};
    pw_im[0] = IntPolynomial();
    pw_m[0] = IntPolynomial{1};
    for (std::size_t k = 1; k <= static_cast<std::size_t>(n); ++k) {
        pw_re[k] = pw_re[k - 1] * re_z - pw_im[k - 1] * im_z;
        pw_im[k] = pw_re[k - 1] * im_z + pw_im[k - 1] * re_z;
        pw_m[k] = pw_m[k - 1] * one_t2;
    }
    IntPolynomial A, B;
    for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k) {
        if (q.coeff(k) == 0) continue;
        const IntPolynomial& scale = pw_m[static_cast<std::size_t>(n) - k];
        A = A + pw_re[k] * scale * q.coeff(k);
        B = B + pw_im[k] * scale * q.coeff(k);
    }
    require(!B.is_zero(), errc::internal, "winding: curve degenerated onto the real axis");

    // A common factor has no real roots (the curve avoids 0); divide it out so
    // the chain sees coprime numerator/denominator. Its even degree keeps the
    // asymptotic signs of A consistent at both ends.
    IntPolynomial g = poly_gcd(A, B);
    if (g.degree() > 0) {
        require(g.degree() % 2 == 0, errc::internal, "winding: common factor with a real root");
        A = A.divide_exact(g);
        B = B.divide_exact(g);
    }

    int ind = cauchy_index_line(A, B);
    int u_inf = A.sign_at_pos_inf();
    require(u_inf != 0 && u_inf == A.sign_at_neg_inf(), errc::internal,
            "winding: inconsistent closure point");
    int sb_pos = B.sign_at_pos_inf(), sb_neg = B.sign_at_neg_inf();
    int wrap = (sb_pos != sb_neg) ? sb_neg * u_inf : 0;
    require((ind + wrap) % 2 == 0, errc::internal, "winding: odd crossing sum");
    return (ind + wrap) / 2;
}

}  // namespace detail

// Exact count of roots with modulus < 1 and modulus = 1 of a squarefree
// integer polynomial with p(0) != 0.
//
// Circle roots all divide g = gcd(p, reciprocal(p)); stripping the +-1 roots
// leaves a palindromic even-degree factor whose x + 1/x rewrite h classifies
// each root pair: real h-root in (-2,2) <-> a unit-circle pair, any other
// h-root <-> a reciprocal pair with exactly one member inside the disk. The
// circle-free cofactor is counted by an exact winding number.
inline UnitDiskCount count_roots_in_unit_disk(const IntPolynomial& p) {
    require(!p.is_zero(), errc::zero_polynomial, "count_roots_in_unit_disk of zero polynomial");
    require(p.coeff(0) != 0, errc::zero_constant_term,
            "count_roots_in_unit_disk: p(0) = 0, factor x out first");
    require(is_squarefree(p), errc::not_squarefree, "count_roots_in_unit_disk requires squarefree input");
    if (p.degree() == 0) return {0, 0};

    IntPolynomial g = poly_gcd(p, p.reciprocal());
    IntPolynomial q = p.divide_exact(g);

    int at_one = 0, at_minus_one = 0;
    IntPolynomial ghat = g;
    if (ghat.sign_at(mpq_class(1)) == 0) {
        ghat = ghat.divide_exact(IntPolynomial{-1, 1});
        at_one = 1;
    }
    if (ghat.sign_at(mpq_class(-1)) == 0) {
        ghat = ghat.divide_exact(IntPolynomial{1, 1});
        at_minus_one = 1;
    }

    int pairs_inside = 0, pairs_on = 0;
    if (ghat.degree() > 0) {
        require(ghat.degree() % 2 == 0 && ghat.is_palindromic(), errc::internal,
                "reciprocal-invariant factor is not palindromic");
        IntPolynomial h = trace_rewrite(ghat);
        int f = h.degree();
        pairs_on = sturm_count_in(h, mpq_class(-2), mpq_class(2), true, true);
        pairs_inside = f - pairs_on;
    }

    UnitDiskCount out;
    out.on_circle = 2 * pairs_on + at_one + at_minus_one;
    out.inside = pairs_inside + (q.degree() > 0 ? detail::winding_unit_circle(q) : 0);
    return out;
}

// Convenience: counts for roots with modulus < r and = r (r > 0 rational),
// by scaling the argument: roots of p(r x) are roots of p divided by r.
inline UnitDiskCount count_roots_in_disk(const IntPolynomial& p, const mpq_class& r) {
    require(r > 0, errc::bad_interval, "disk radius must be positive");
    return count_roots_in_unit_disk(p.scale_argument(r).primitive_positive());
}

}  // namespace pisot
