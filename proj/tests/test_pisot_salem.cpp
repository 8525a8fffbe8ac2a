#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pisot/box_enum.hpp"
#include "pisot/pisot_salem.hpp"

using namespace pisot;

TEST_CASE("is_pisot reference cases") {
    auto k2 = NumberField::quadratic(2);
    CHECK(is_pisot(k2->element({1, 1})));       // 1+sqrt2, conjugate ~ -0.414
    CHECK_FALSE(is_pisot(k2->element({0, 1})))  // sqrt2: conjugate modulus > 1
        ;
    auto k5 = NumberField::quadratic(5);
    CHECK(is_pisot(k5->element({0, 1})));  // golden ratio

    // largest root of x^3 - 4x^2 - 1 as generator of its field (d=3, n=4, k=1)
    auto cubic = NumberField::make(IntPolynomial{-1, 0, -4, 1});
    CHECK(is_pisot(cubic->generator()));
    auto cert = pisot_certificate(cubic->generator());
    CHECK(cert.degree == 3);
    CHECK(cert.inside == 2);
    CHECK(cert.on_circle == 0);

    // rational integers: m >= 2 are Pisot, 1 is not
    auto Q = NumberField::rationals();
    CHECK(is_pisot(Q->integer(2)));
    CHECK_FALSE(is_pisot(Q->integer(1)));
    CHECK_FALSE(is_pisot(Q->integer(0)));
    CHECK_FALSE(is_pisot(Q->integer(-3)));
}

TEST_CASE("is_salem_trace reference cases") {
    auto k5 = NumberField::quadratic(5);
    CHECK(is_salem_trace(k5->element({1, 1})));        // (3+sqrt5)/2 = min T
    CHECK_FALSE(is_salem_trace(k5->element({0, 1})));  // phi <= 2

    auto k229 = NumberField::make(IntPolynomial{-1, -4, 0, 1});
    CHECK(is_salem_trace(k229->generator()));

    auto Q = NumberField::rationals();
    CHECK_FALSE(is_salem_trace(Q->integer(3)));  // degree 1
}

TEST_CASE("lift_salem reference cases") {
    // x^2 - x - 3 -> x^4 - x^3 - x^2 - x + 1; derived oracle: expand
    // (x^2 - b x + 1)(x^2 - b' x + 1) with b + b' = 1, b b' = -3
    auto lift = lift_salem(IntPolynomial{-3, -1, 1});
    CHECK(lift.lifted_poly == IntPolynomial{1, -1, -1, -1, 1});
    CHECK(lift.salem_enclosure.lo.to_mpq() > mpq_class(1722083, 1000000));
    CHECK(lift.salem_enclosure.hi.to_mpq() < mpq_class(344417, 200000));

    auto lift6 = lift_salem(IntPolynomial{-1, -4, 0, 1});
    CHECK(lift6.lifted_poly == IntPolynomial{1, 0, -1, -1, -1, 0, 1});

    CHECK_THROWS_WITH_AS(static_cast<void>(lift_salem(IntPolynomial{-1, -1, 1})),
                         doctest::Contains("NotSalemTrace"), atlas_error);
}

TEST_CASE("lift identity: numeric product of quadratic factors pins the coefficients") {
    for (const IntPolynomial& m :
         {IntPolynomial{-3, -1, 1}, IntPolynomial{-1, -4, 0, 1}, IntPolynomial{-1, -2, 1, 1} * IntPolynomial{1} }) {
        if (!is_salem_trace_poly(m)) continue;
        auto lift = lift_salem(m);
        // product of (x^2 - beta_j x + 1) over certified root enclosures
        mpq_class eps(1, 1);
        for (int refine_round = 0; refine_round < 20; ++refine_round) {
            auto roots = isolate_real_roots(m);
            std::vector<RatInterval> acc = {RatInterval::point(1)};  // poly 1
            for (const auto& rt : roots) {
                auto fine = refine_root(m, rt, eps);
                RatInterval beta = RatInterval::of(fine);
                // multiply acc by (x^2 - beta x + 1)
                std::vector<RatInterval> next(acc.size() + 2, RatInterval::point(0));
                for (std::size_t i = 0; i < acc.size(); ++i) {
                    next[i + 2] = next[i + 2] + acc[i];
                    next[i + 1] = next[i + 1] - acc[i] * beta;
                    next[i] = next[i] + acc[i];
                }
                acc = std::move(next);
            }
            bool pinned = true;
            for (auto& iv : acc) pinned = pinned && iv.width() < mpq_class(1, 2);
            if (!pinned) {
                eps /= 1024;
                continue;
            }
            REQUIRE(acc.size() == static_cast<std::size_t>(lift.lifted_poly.degree()) + 1);
            for (std::size_t i = 0; i < acc.size(); ++i)
                CHECK(acc[i].contains(mpq_class(lift.lifted_poly.coeff(i))));
            break;
        }
    }
}

TEST_CASE("trace_power reference cases") {
    auto k13 = NumberField::quadratic(13);
    FieldElement beta = k13->element({0, 1});  // (1+sqrt13)/2
    CHECK(trace_power(beta, 1) == beta);
    // C_2(beta) = beta^2 - 2 = (3+sqrt13)/2 -> coords (1,1)
    CHECK(trace_power(beta, 2) == k13->element({1, 1}));

    auto k5 = NumberField::quadratic(5);
    FieldElement b5 = k5->element({1, 1});  // (3+sqrt5)/2
    // C_2 = ((7+3sqrt5)/2) - 2 = (3+3sqrt5)/2 = 3*phi -> coords (0,3)
    CHECK(trace_power(b5, 2) == k5->element({0, 3}));

    CHECK_THROWS_WITH_AS(static_cast<void>(trace_power(k5->element({0, 1}), 2)),
                         doctest::Contains("NotSalemTrace"), atlas_error);
}

TEST_CASE("trace_power semigroup law") {
    auto k13 = NumberField::quadratic(13);
    FieldElement beta = k13->element({0, 1});
    for (unsigned long m = 2; m <= 4; ++m)
        for (unsigned long n = 2; n <= 3; ++n)
            CHECK(trace_power(trace_power(beta, m), n) == trace_power(beta, m * n));

    auto k229 = NumberField::make(IntPolynomial{-1, -4, 0, 1});
    FieldElement b = k229->generator();
    CHECK(trace_power(trace_power(b, 2), 3) == trace_power(b, 6));
}

TEST_CASE("psi_minpoly reference cases") {
    CHECK(psi_minpoly(6) == IntPolynomial{-1, 1});
    CHECK(psi_minpoly(5) == IntPolynomial{-1, 1, 1});
    CHECK(psi_minpoly(12) == IntPolynomial{-3, 0, 1});
    CHECK(psi_minpoly(7) == IntPolynomial{-1, -2, 1, 1});
    CHECK_THROWS_AS(static_cast<void>(psi_minpoly(2)), atlas_error);
}

TEST_CASE("psi identity for all n in [3, 200]") {
    for (unsigned long n = 3; n <= 200; ++n) {
        IntPolynomial psi = psi_minpoly(n);
        CHECK(psi.degree() == static_cast<int>(euler_phi(n) / 2));
        std::size_t f = static_cast<std::size_t>(psi.degree());
        CHECK(expand_trace_substitution(psi, f) == cyclotomic(n));
    }
}

TEST_CASE("is_root_of_unity_trace reference cases") {
    auto k3 = NumberField::quadratic(3);
    auto rec = is_root_of_unity_trace(k3->element({0, 1}));  // sqrt3
    REQUIRE(rec.has_value());
    CHECK(rec->n == 12);
    CHECK(rec->k == 1);

    auto k5 = NumberField::quadratic(5);
    auto rec5 = is_root_of_unity_trace(k5->element({0, 1}));  // phi = 2cos(2pi/10)
    REQUIRE(rec5.has_value());
    CHECK(rec5->n == 10);
    CHECK(rec5->k == 1);

    auto k2 = NumberField::quadratic(2);
    CHECK_FALSE(is_root_of_unity_trace(k2->element({1, 1})).has_value());  // 1+sqrt2 > 2

    // x = 1 handled as 2cos(2pi/6)
    auto one_rec = is_root_of_unity_trace(k2->one());
    REQUIRE(one_rec.has_value());
    CHECK(one_rec->n == 6);

    // (-1+sqrt5)/2 = 2cos(2pi/5)
    auto recm = is_root_of_unity_trace(k5->element({-1, 1}));
    REQUIRE(recm.has_value());
    CHECK(recm->n == 5);
    CHECK(recm->k == 1);
}

TEST_CASE("recognition soundness: minpoly equals the named psi") {
    auto k7 = NumberField::make(IntPolynomial{-1, -2, 1, 1});  // 2cos(2pi/7) field
    FieldElement theta = k7->generator();
    auto rec = is_root_of_unity_trace(theta);
    REQUIRE(rec.has_value());
    CHECK(rec->n == 7);
    CHECK(minpoly_of(theta) == psi_minpoly(rec->n));

    // second positive element of U for this field: 2cos(2pi/14) = theta^2 - theta - 1? verify
    // via recognition of theta^2 - 2 conjugate images instead: use -2cos(6pi/7) = 2cos(pi/7)
    // expressed as -(theta-conjugate); easier: recognize theta^2 - 2 = 2cos(4pi/7) is negative,
    // so check its negation pattern through minpoly matching of psi_14
    FieldElement c4 = theta * theta - k7->integer(2);  // 2cos(4pi/7) < 0
    CHECK_FALSE(is_root_of_unity_trace(c4).has_value());
    FieldElement pos = -c4;  // -2cos(4pi/7) = 2cos(3pi/7) = 2cos(2*3*pi/14)
    auto rec14 = is_root_of_unity_trace(pos);
    REQUIRE(rec14.has_value());
    CHECK(rec14->n == 14);
    CHECK(rec14->k == 3);
    CHECK(minpoly_of(pos) == psi_minpoly(14));
}

TEST_CASE("Pisot closure under multiplication (sampled)") {
    auto K = NumberField::quadratic(3);
    BoxConstraint c = BoxConstraint::for_field(*K);
    c.real_windows[0] = Window::half_open_upper(1, 8);
    c.real_windows[1] = Window::open(-1, 1);
    auto pisots = enumerate_box(K, c).elements;
    REQUIRE(pisots.size() >= 3);
    for (std::size_t i = 0; i < pisots.size(); ++i)
        for (std::size_t j = i; j < pisots.size(); ++j) CHECK(is_pisot(pisots[i] * pisots[j]));
}

TEST_CASE("counting route agrees with the direct window route on random quadratics") {
    std::mt19937_64 rng(808);
    std::uniform_int_distribution<int> coeff(-9, 9);
    for (long m : {2L, 5L, 7L, 13L}) {
        auto K = NumberField::quadratic(m);
        for (int iter = 0; iter < 60; ++iter) {
            FieldElement x = K->element({coeff(rng), coeff(rng)});
            // windows on sigma_2 describe the conjugate only for degree-2 elements
            if (element_degree(x) != 2) continue;
            bool direct = decide_position(x, 1, Window::above(1)) &&
                          decide_position(x, 2, Window::open(-1, 1));
            CHECK(is_pisot(x) == direct);
            bool salem_direct = decide_position(x, 1, Window::above(2)) &&
                                decide_position(x, 2, Window::open(-2, 2));
            CHECK(is_salem_trace(x) == salem_direct);
        }
    }
}

TEST_CASE("Pisot lower bound over totally real fields") {
    // every Pisot generator of a totally real field of degree d exceeds 2^((d-1)/2)
    auto k6 = NumberField::quadratic(6);
    BoxConstraint c = BoxConstraint::for_field(*k6);
    c.real_windows[0] = Window::half_open_upper(1, 12);
    c.real_windows[1] = Window::open(-1, 1);
    for (const auto& x : enumerate_box(k6, c).elements) {
        if (element_degree(x) != 2) continue;
        // sigma_1(x)^2 > 2
        CHECK(decide_position(x * x, 1, Window::above(2)));
    }
}
