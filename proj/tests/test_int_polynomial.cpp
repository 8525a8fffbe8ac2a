#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pisot/int_polynomial.hpp"

using namespace pisot;

namespace {

IntPolynomial random_poly(std::mt19937_64& rng, int max_deg, int coeff_range) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range);
    std::vector<mpz_class> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& v : c) v = coeff(rng);
    return IntPolynomial(std::move(c));
}

}  // namespace

TEST_CASE("basic arithmetic and normalization") {
    IntPolynomial p{1, 2, 3};
    IntPolynomial q{0, -2, -3};
    CHECK((p + q) == IntPolynomial{1});
    CHECK((p - p).is_zero());
    CHECK(p.degree() == 2);
    CHECK(IntPolynomial{0, 0, 0}.is_zero());
    CHECK((IntPolynomial{1, 1} * IntPolynomial{-1, 1}) == IntPolynomial{-1, 0, 1});
    CHECK(p.evaluate(mpz_class(2)) == 1 + 4 + 12);
    CHECK(IntPolynomial{-1, 0, 1}.sign_at(mpq_class(3, 2)) > 0);
    CHECK(IntPolynomial{-1, 0, 1}.sign_at(mpq_class(1, 2)) < 0);
    CHECK(IntPolynomial{-1, 0, 1}.sign_at(mpq_class(1)) == 0);
}

TEST_CASE("parse and print round-trip") {
    IntPolynomial p = IntPolynomial::parse("[-1,-4,0,1]");
    CHECK(p == IntPolynomial{-1, -4, 0, 1});
    CHECK(p.to_string() == "[-1,-4,0,1]");
    CHECK(IntPolynomial().to_string() == "[0]");
    CHECK_THROWS_AS(IntPolynomial::parse("1,2"), atlas_error);
    CHECK_THROWS_AS(IntPolynomial::parse("[1,,2]"), atlas_error);
}

TEST_CASE("gcd and exact division") {
    IntPolynomial a = IntPolynomial{-2, 0, 1} * IntPolynomial{-1, 1};  // (x^2-2)(x-1)
    IntPolynomial b = IntPolynomial{-2, 0, 1} * IntPolynomial{3, 1};
    CHECK(poly_gcd(a, b) == IntPolynomial{-2, 0, 1});
    CHECK(a.divide_exact(IntPolynomial{-1, 1}) == IntPolynomial{-2, 0, 1});
    IntPolynomial c{4, 8};  // content 4
    CHECK(poly_gcd(c, IntPolynomial{2}) == IntPolynomial{2});
}

TEST_CASE("squarefree_part reference cases") {
    IntPolynomial sq = IntPolynomial{-2, 0, 1} * IntPolynomial{-2, 0, 1};
    CHECK(squarefree_part(sq) == IntPolynomial{-2, 0, 1});        // (x^2-2)^2 -> x^2-2
    CHECK(squarefree_part(IntPolynomial{-1, -1, 1}) == IntPolynomial{-1, -1, 1});  // already squarefree
    CHECK(squarefree_part(IntPolynomial{0, 0, -1, 1}) == IntPolynomial{0, -1, 1}); // x^3-x^2 -> x^2-x
    CHECK_THROWS_AS(squarefree_part(IntPolynomial()), atlas_error);
}

TEST_CASE("squarefree_part on random products has simple roots") {
    std::mt19937_64 rng(12345);
    for (int iter = 0; iter < 200; ++iter) {
        IntPolynomial a = random_poly(rng, 3, 4);
        IntPolynomial b = random_poly(rng, 2, 4);
        if (a.is_zero() || b.is_zero()) continue;
        IntPolynomial p = a * a * b;
        if (p.degree() < 1) continue;
        IntPolynomial s = squarefree_part(p);
        CHECK(is_squarefree(s));
        // same root set: s divides p and a divides a power-ish check via gcd
        CHECK(poly_gcd(p, s) == s.primitive_positive());
    }
}

TEST_CASE("resultant and discriminant") {
    // disc(x^2 + bx + c) = b^2 - 4c
    CHECK(discriminant(IntPolynomial{-1, -1, 1}) == 5);
    CHECK(discriminant(IntPolynomial{-2, 0, 1}) == 8);
    // disc(x^3 + px + q) = -4p^3 - 27q^2; for x^3 - 4x - 1 this is 229 (prime)
    CHECK(discriminant(IntPolynomial{-1, -4, 0, 1}) == 229);
    // psi_7 field polynomial x^3 + x^2 - 2x - 1 has discriminant 49
    CHECK(discriminant(IntPolynomial{-1, -2, 1, 1}) == 49);
    // resultant of coprime linear polys: res(x-a, x-b) = b - a up to convention
    mpz_class r = resultant(IntPolynomial{-3, 1}, IntPolynomial{-5, 1});
    CHECK(abs(r) == 2);
    // repeated root: disc = 0
    CHECK(discriminant(IntPolynomial{1, 2, 1}) == 0);
}

TEST_CASE("chebyshev basis and trace substitution") {
    CHECK(chebyshev_c(0) == IntPolynomial{2});
    CHECK(chebyshev_c(1) == IntPolynomial{0, 1});
    CHECK(chebyshev_c(2) == IntPolynomial{-2, 0, 1});
    CHECK(chebyshev_c(3) == IntPolynomial{0, -3, 0, 1});

    // x^d M(x + 1/x) for M = x^2 - x - 3 gives the quartic x^4 - x^3 - x^2 - x + 1
    IntPolynomial lifted = expand_trace_substitution(IntPolynomial{-3, -1, 1}, 2);
    CHECK(lifted == IntPolynomial{1, -1, -1, -1, 1});
    CHECK(trace_rewrite(lifted) == IntPolynomial{-3, -1, 1});

    // round-trip on a batch of random h
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 100; ++iter) {
        IntPolynomial h = random_poly(rng, 5, 6);
        if (h.is_zero()) continue;
        std::size_t f = static_cast<std::size_t>(h.degree());
        IntPolynomial p = expand_trace_substitution(h, f);
        if (p.is_zero() || p.degree() != 2 * static_cast<int>(f) || !p.is_palindromic()) continue;
        CHECK(trace_rewrite(p) == h);
    }
}

TEST_CASE("reciprocal and palindromic predicates") {
    IntPolynomial p{1, -1, -1, -1, 1};
    CHECK(p.is_palindromic());
    CHECK(p.reciprocal() == p);
    IntPolynomial q{-1, -4, 0, 1};
    CHECK(q.reciprocal() == IntPolynomial{1, 0, -4, -1});
    CHECK_FALSE(q.is_palindromic());
}

TEST_CASE("scale_argument clears denominators") {
    IntPolynomial p{-1, 0, 1};  // x^2 - 1
    // p(x/2) = x^2/4 - 1 -> cleared: x^2 - 4
    CHECK(p.scale_argument(mpq_class(1, 2)).primitive_positive() == IntPolynomial{-4, 0, 1});
    // p(3x) = 9x^2 - 1
    CHECK(p.scale_argument(mpq_class(3)) == IntPolynomial{-1, 0, 9});
}
