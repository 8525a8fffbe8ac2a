#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "pisot/unit_disk.hpp"

using namespace pisot;

namespace {

IntPolynomial random_admissible(std::mt19937_64& rng, int max_deg, int coeff_range) {
    std::uniform_int_distribution<int> deg(1, max_deg);
    std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range);
    for (;;) {
        std::vector<mpz_class> c(static_cast<std::size_t>(deg(rng)) + 1);
        for (auto& v : c) v = coeff(rng);
        IntPolynomial p(std::move(c));
        if (!p.is_zero() && p.degree() >= 1 && p.coeff(0) != 0 && is_squarefree(p)) return p;
    }
}

// Independent oracle for totally real polynomials: all roots are real, so the
// inside count is the number of real roots in (-1, 1) and the circle count is
// the number of roots at exactly +-1.
bool totally_real(const IntPolynomial& p) {
    return static_cast<int>(isolate_real_roots(p).size()) == p.degree();
}

}  // namespace

TEST_CASE("spec examples") {
    // x^2 - x - 1: roots phi ~ 1.618 and -0.618 -> (1, 0)
    auto c = count_roots_in_unit_disk(IntPolynomial{-1, -1, 1});
    CHECK(c.inside == 1);
    CHECK(c.on_circle == 0);

    // x^3 - x - 1 (plastic number): complex pair has |z|^2 = 1/rho < 1 since the
    // root product is 1 and the real root rho ~ 1.3247 -> (2, 0). Verify the
    // oracle reasoning exactly: rho > 1.
    IntPolynomial plastic{-1, -1, 0, 1};
    auto roots = isolate_real_roots(plastic);
    REQUIRE(roots.size() == 1);
    CHECK(sturm_count_in(plastic, 1, 2, true, true) == 1);  // rho in (1,2)
    auto p = count_roots_in_unit_disk(plastic);
    CHECK(p.inside == 2);
    CHECK(p.on_circle == 0);

    // x - 2 -> (0, 0)
    auto l = count_roots_in_unit_disk(IntPolynomial{-2, 1});
    CHECK(l.inside == 0);
    CHECK(l.on_circle == 0);

    CHECK_THROWS_AS(count_roots_in_unit_disk(IntPolynomial{0, 1}), atlas_error);       // p(0) = 0
    CHECK_THROWS_AS(count_roots_in_unit_disk(IntPolynomial{1, 2, 1}), atlas_error);    // (x+1)^2
}

TEST_CASE("salem polynomials: two real roots tau, 1/tau and circle pairs") {
    // smallest quartic Salem polynomial
    auto q4 = count_roots_in_unit_disk(IntPolynomial{1, -1, -1, -1, 1});
    CHECK(q4.inside == 1);
    CHECK(q4.on_circle == 2);
    // smallest degree-6 Salem polynomial x^6 - x^4 - x^3 - x^2 + 1
    auto q6 = count_roots_in_unit_disk(IntPolynomial{1, 0, -1, -1, -1, 0, 1});
    CHECK(q6.inside == 1);
    CHECK(q6.on_circle == 4);
}

TEST_CASE("cyclotomic-style inputs live on the circle") {
    auto c = count_roots_in_unit_disk(IntPolynomial{1, 1, 1, 1, 1});  // Phi_5
    CHECK(c.inside == 0);
    CHECK(c.on_circle == 4);
    auto d = count_roots_in_unit_disk(IntPolynomial{1, -1, 1});  // Phi_6
    CHECK(d.inside == 0);
    CHECK(d.on_circle == 2);
    auto e = count_roots_in_unit_disk(IntPolynomial{-1, 0, 0, 1});  // x^3 - 1
    CHECK(e.inside == 0);
    CHECK(e.on_circle == 3);
    auto f = count_roots_in_unit_disk(IntPolynomial{-1, 0, 1});  // (x-1)(x+1)
    CHECK(f.inside == 0);
    CHECK(f.on_circle == 2);
}

TEST_CASE("reciprocal-pair polynomial with |constant| = 1 and no circle roots") {
    // x^3 - 3x^2 - x + 1: root moduli product 1, no reciprocal pairs, roots
    // ~ -0.64, 0.46, 3.18 -> inside 2. This input degenerates naive
    // Schur-Cohn transforms, the winding count must handle it.
    IntPolynomial p{1, -1, -3, 1};
    REQUIRE(totally_real(p));
    int in_oracle = sturm_count_in(p, -1, 1, true, true);
    auto c = count_roots_in_unit_disk(p);
    CHECK(c.inside == in_oracle);
    CHECK(c.inside == 2);
    CHECK(c.on_circle == 0);
}

TEST_CASE("mixed circle and reciprocal factors") {
    // (x^2 - 3x + 1) * Phi_4: reciprocal real pair (one inside) + 2 circle roots
    IntPolynomial p = IntPolynomial{1, -3, 1} * IntPolynomial{1, 0, 1};
    auto c = count_roots_in_unit_disk(p);
    CHECK(c.inside == 1);
    CHECK(c.on_circle == 2);

    // degree-10 Salem polynomial (the smallest known Salem number)
    IntPolynomial lehmer{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};
    auto l = count_roots_in_unit_disk(lehmer);
    CHECK(l.inside == 1);
    CHECK(l.on_circle == 8);

    // cyclotomic x quadratic x linear product: 4 circle, 1 inside, 2 outside
    IntPolynomial mix = IntPolynomial{1, 0, -1, 0, 1} * IntPolynomial{-1, -1, 1} * IntPolynomial{-3, 1};
    auto m = count_roots_in_unit_disk(mix);
    CHECK(m.inside == 1);
    CHECK(m.on_circle == 4);
}

TEST_CASE("totally real oracle agreement on random inputs") {
    std::mt19937_64 rng(2026);
    int checked = 0;
    for (int iter = 0; iter < 400 && checked < 80; ++iter) {
        IntPolynomial p = random_admissible(rng, 6, 5);
        if (!totally_real(p)) continue;
        ++checked;
        int inside_oracle = sturm_count_in(p, -1, 1, true, true);
        int on_oracle = (p.sign_at(mpq_class(1)) == 0 ? 1 : 0) + (p.sign_at(mpq_class(-1)) == 0 ? 1 : 0);
        auto c = count_roots_in_unit_disk(p);
        CHECK(c.inside == inside_oracle);
        CHECK(c.on_circle == on_oracle);
    }
    CHECK(checked >= 40);
}

TEST_CASE("inside + circle + outside = degree via the reciprocal identity") {
    std::mt19937_64 rng(555);
    for (int iter = 0; iter < 150; ++iter) {
        IntPolynomial p = random_admissible(rng, 8, 6);
        auto c = count_roots_in_unit_disk(p);
        auto r = count_roots_in_unit_disk(p.reciprocal());
        CHECK(c.on_circle == r.on_circle);
        CHECK(c.inside + c.on_circle + r.inside == p.degree());
    }
}

TEST_CASE("constructed products with known root locations") {
    // factors (b x - a) contribute a root a/b; factors (x^2 + c) contribute a
    // conjugate pair of modulus sqrt(c): exact counts known by construction
    std::mt19937_64 rng(314159);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 6), cpick(1, 8), parts(1, 4);
    for (int iter = 0; iter < 200; ++iter) {
        IntPolynomial p{1};
        int inside = 0, on = 0;
        bool zero_root = false, repeated = false;
        std::vector<std::pair<long, long>> seen_linear;
        std::vector<long> seen_quad;
        int n_parts = parts(rng);
        for (int f = 0; f < n_parts; ++f) {
            if (rng() % 2 == 0) {
                long a = num(rng), b = den(rng);
                long g = std::gcd(std::abs(a), b);
                a /= g;
                b /= g;
                if (a == 0) {
                    zero_root = true;
                    continue;
                }
                for (auto& s : seen_linear)
                    if (s.first == a && s.second == b) repeated = true;
                seen_linear.push_back({a, b});
                p = p * IntPolynomial{-a, b};
                if (std::abs(a) < b) ++inside;
                if (std::abs(a) == b) ++on;
            } else {
                long c = cpick(rng);
                for (long s : seen_quad)
                    if (s == c) repeated = true;
                seen_quad.push_back(c);
                p = p * IntPolynomial{c, 0, 1};
                if (c < 1) inside += 2;
                if (c == 1) on += 2;
            }
        }
        if (zero_root || repeated || p.degree() < 1 || !is_squarefree(p)) continue;
        auto counts = count_roots_in_unit_disk(p);
        CHECK(counts.inside == inside);
        CHECK(counts.on_circle == on);
    }
}

TEST_CASE("disk radius scaling") {
    // x^2 - x - 1: conjugate -0.618 and phi 1.618. Inside radius 2: both.
    auto c = count_roots_in_disk(IntPolynomial{-1, -1, 1}, mpq_class(2));
    CHECK(c.inside == 2);
    // radius 1/2: none
    auto d = count_roots_in_disk(IntPolynomial{-1, -1, 1}, mpq_class(1, 2));
    CHECK(d.inside == 0);
    // radius hitting a root exactly: x^2 - 4 at radius 2 -> two on circle
    auto e = count_roots_in_disk(IntPolynomial{-4, 0, 1}, mpq_class(2));
    CHECK(e.inside == 0);
    CHECK(e.on_circle == 2);
}
