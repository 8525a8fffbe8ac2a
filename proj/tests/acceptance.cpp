// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned in code; all comparisons are exact
// unless a criterion states a decimal tolerance.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "pisot/field_atlas.hpp"

using namespace pisot;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& summary) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << criterion << ": " << summary << "\n";
    if (!ok) ++failures;
}

void run(int criterion, const std::string& summary, const std::function<void()>& body) {
    try {
        body();
        report(criterion, true, summary);
    } catch (const std::exception& e) {
        report(criterion, false, summary + " -- " + e.what());
    }
}

struct Check {
    int criterion;
    explicit Check(int c) : criterion(c) {}
    void operator()(bool cond, const std::string& what) const {
        if (!cond) throw std::runtime_error("check failed: " + what);
    }
};

// exact comparison of sigma_1 values living in different fields; the compared
// values are distinct irrationals, so interval refinement always separates
int compare_cross_field(const FieldElement& a, const FieldElement& b) {
    mpq_class eps(1, 1L << 24);
    for (int iter = 0; iter < 4096; ++iter) {
        RatInterval ia = sigma_interval(a, 1, eps);
        RatInterval ib = sigma_interval(b, 1, eps);
        if (ia.hi < ib.lo) return -1;
        if (ib.hi < ia.lo) return 1;
        eps /= 256;
    }
    throw std::runtime_error("cross-field comparison failed to separate");
}

bool is_squarefree_small(long m) {
    for (long p = 2; p * p <= m; ++p)
        if (m % (p * p) == 0) return false;
    return true;
}

mpq_class q_pow10(int k) {  // 10^-k
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(k));
    mpq_class q(1, den);
    q.canonicalize();
    return q;
}

// enclosure of sigma_1(x) within tol of the stated decimal value
void check_approx(const Check& chk, const FieldElement& x, const mpq_class& value, int tol_exp,
                  const std::string& what) {
    mpq_class tol = q_pow10(tol_exp);
    RatInterval iv = sigma_interval(x, 1, tol / 8);
    mpq_class v = value;
    v.canonicalize();
    chk(abs(iv.lo - v) <= tol && abs(iv.hi - v) <= tol, what);
}

std::vector<std::vector<FieldElement>> totally_real_pisot_lists;

}  // namespace

int main() {
    // 1. quadratic golden suite, m = 2,3 mod 4 family
    run(1, "quadratic golden gap sets for m in {2,3,6,7,11} at X = 1000", [] {
        Check chk(1);
        for (long m : {2L, 3L, 6L, 7L, 11L}) {
            auto forms = quadratic_closed_forms(m);
            auto rep = gap_report(forms.field, 1000);
            chk(rep.gaps.size() == 3, "three gap values for m=" + std::to_string(m));
            mpz_class s;
            mpz_class mm(m);
            mpz_sqrt(s.get_mpz_t(), mm.get_mpz_t());
            chk(rep.gaps[0].value == forms.field->one(), "gap 1 is 1");
            chk(rep.gaps[1].value == forms.field->element({s - 1, 1}), "gap 2 is floor(sqrt m)-1+sqrt m");
            chk(rep.gaps[2].value == forms.field->element({s, 1}), "gap 3 is floor(sqrt m)+sqrt m");
            const auto& u = rep.u_set->elements;
            if (m == 2 || m == 3) {
                chk(u.size() == 2 && u[0] == forms.field->one() && u[1] == forms.field->element({0, 1}),
                    "U_K = {1, sqrt m} for m=" + std::to_string(m));
            } else {
                chk(u.size() == 1 && u[0] == forms.field->one(), "U_K = {1}");
            }
            totally_real_pisot_lists.push_back(rep.pisot_list);
        }
    });

    // 2. quadratic golden suite, m = 1 mod 4 family
    run(2, "quadratic golden gap sets and min T_K for m in {5,13,17,21,29} at X = 1000", [] {
        Check chk(2);
        for (long m : {5L, 13L, 17L, 21L, 29L}) {
            auto forms = quadratic_closed_forms(m);
            auto rep = gap_report(forms.field, 1000);
            chk(rep.gaps.size() == forms.gap_set.size(), "gap count for m=" + std::to_string(m));
            for (std::size_t i = 0; i < forms.gap_set.size(); ++i)
                chk(rep.gaps[i].value == forms.gap_set[i], "gap value matches the closed form");
            chk(compute_minT(forms.field) == forms.min_trace, "min T_K matches the closed form");
            const auto& u = rep.u_set->elements;
            if (m == 5) {
                chk(u.size() == 3, "U_{Q(sqrt5)} has three elements");
                chk(u[0] == forms.field->element({-1, 1}) && u[1] == forms.field->one() &&
                        u[2] == forms.field->element({0, 1}),
                    "U_{Q(sqrt5)} = F_{Q(sqrt5)}");
                for (std::size_t i = 0; i < 3; ++i)
                    chk(rep.gaps[i].value == u[i], "U = F for Q(sqrt5)");
            } else {
                chk(u.size() == 1, "U_K = {1} for m=" + std::to_string(m));
            }
            totally_real_pisot_lists.push_back(rep.pisot_list);
        }
    });

    // 3. quadratic minimum sweep
    run(3, "min over squarefree 2 <= m <= 50 of min T_K is (1+sqrt13)/2", [] {
        Check chk(3);
        auto k13 = NumberField::quadratic(13);
        FieldElement best = k13->element({0, 1});  // (1+sqrt13)/2
        chk(compute_minT(k13) == best, "min T_{Q(sqrt13)} = (1+sqrt13)/2 exactly");
        for (long m = 2; m <= 50; ++m) {
            if (!is_squarefree_small(m) || m == 13) continue;
            FieldElement t = compute_minT(NumberField::quadratic(m));
            chk(compare_cross_field(best, t) < 0, "min T_K for m=" + std::to_string(m) + " exceeds it");
        }
    });

    // 4. Salem lifts
    run(4, "Salem lifts of x^2-x-3 and x^3-4x-1 with exact coefficients", [] {
        Check chk(4);
        auto quartic = lift_salem(IntPolynomial{-3, -1, 1});
        chk(quartic.lifted_poly == IntPolynomial{1, -1, -1, -1, 1}, "quartic lift coefficients");
        DyadicInterval tau = refine_root(quartic.lifted_poly, quartic.salem_enclosure, q_pow10(7));
        mpq_class target(1722084, 1000000);
        target.canonicalize();
        chk(abs(tau.lo.to_mpq() - target) <= q_pow10(6) && abs(tau.hi.to_mpq() - target) <= q_pow10(6),
            "tau enclosure within 1.722084 +- 1e-6");
        auto sextic = lift_salem(IntPolynomial{-1, -4, 0, 1});
        chk(sextic.lifted_poly == IntPolynomial{1, 0, -1, -1, -1, 0, 1}, "sextic lift coefficients");
    });

    // 5. the disc-229 cubic
    run(5, "disc-229 cubic: U_K = {1}, smallest gaps exactly {1, beta}, beta ~ 2.11490754", [] {
        Check chk(5);
        auto K = NumberField::make(IntPolynomial{-1, -4, 0, 1});
        chk(K->discriminant() == 229, "defining discriminant is 229");
        auto u = compute_U(K);
        chk(u.elements.size() == 1 && u.elements[0] == K->one(), "U_K = {1}");
        auto rep = gap_report(K, 500);
        chk(rep.gaps.size() >= 2, "at least two gap values");
        chk(rep.gaps[0].value == K->one(), "smallest gap is 1");
        chk(rep.gaps[1].value == K->generator(), "second gap is the largest root of x^3-4x-1");
        check_approx(chk, K->generator(), mpq_class(211490754, 100000000), 8,
                     "beta approx 2.11490754 within 1e-8");
        totally_real_pisot_lists.push_back(rep.pisot_list);
    });

    // 6. the disc-49 cubic
    run(6, "disc-49 cubic: four U_K elements with stated approximations and minimal polynomials", [] {
        Check chk(6);
        auto K = NumberField::make(IntPolynomial{-1, -2, 1, 1});
        auto u = compute_U(K);
        chk(u.elements.size() == 4, "exactly 4 elements");
        check_approx(chk, u.elements[0], mpq_class(4450, 10000), 4, "element 1 approx 0.4450");
        check_approx(chk, u.elements[1], mpq_class(1), 4, "element 2 approx 1");
        check_approx(chk, u.elements[2], mpq_class(12470, 10000), 4, "element 3 approx 1.2470");
        check_approx(chk, u.elements[3], mpq_class(18019, 10000), 4, "element 4 approx 1.8019");
        chk(minpoly_of(u.elements[0]) == psi_minpoly(14), "element 1 minpoly is Psi_14");
        chk(minpoly_of(u.elements[1]) == IntPolynomial{-1, 1}, "element 2 minpoly is y-1");
        chk(minpoly_of(u.elements[2]) == psi_minpoly(7), "element 3 minpoly is Psi_7");
        chk(minpoly_of(u.elements[3]) == psi_minpoly(14), "element 4 minpoly is Psi_14");
    });

    // 7. 1 in D_K and P_K inside D_K, over ten fields
    run(7, "power shift realizes 1 = alpha - alpha' and represent returns verified pairs (10 fields)", [] {
        Check chk(7);
        std::vector<FieldPtr> fields;
        for (long m : {2L, 3L, 5L, 6L, 7L}) fields.push_back(NumberField::quadratic(m));
        fields.push_back(NumberField::make(IntPolynomial{-1, -1, 0, 1}));  // plastic cubic
        fields.push_back(NumberField::make(IntPolynomial{-1, 0, -4, 1}));  // x^3 - 4x^2 - 1
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<long> pick(2, 50);
        int added = 0;
        while (added < 3) {
            long m = pick(rng);
            if (!is_squarefree_small(m)) continue;
            fields.push_back(NumberField::quadratic(m));
            ++added;
        }
        chk(fields.size() == 10, "ten fields assembled");
        for (const auto& K : fields) {
            FieldElement alpha = enumerate_pisot(K, 8).empty() ? enumerate_pisot(K, 64).front()
                                                               : enumerate_pisot(K, 8).front();
            PowerShiftResult shift = power_shift_search(alpha, ShiftMode::MinusOne);
            FieldElement big = shift.result + K->one();
            chk(big - shift.result == K->one(), "exact difference 1 = alpha - alpha'");
            chk(is_pisot(big) && element_degree(big) == K->degree(), "alpha is a Pisot generator");
            chk(is_pisot(shift.result) && element_degree(shift.result) == K->degree(),
                "alpha' is a Pisot generator");
            DifferenceCertificate cert = represent_as_difference(alpha);
            chk(cert.minuend - cert.subtrahend == alpha, "exact difference equals tau");
            chk(is_pisot(cert.minuend) && element_degree(cert.minuend) == K->degree(),
                "minuend certified");
            chk(is_pisot(cert.subtrahend) && element_degree(cert.subtrahend) == K->degree(),
                "subtrahend certified");
        }
    });

    // 8. witnesses that D_K strictly exceeds P_K
    run(8, "five distinct certified members of D_K minus P_K for Q(sqrt2) and Q(sqrt5)", [] {
        Check chk(8);
        for (long m : {2L, 5L}) {
            auto K = NumberField::quadratic(m);
            auto w = nonpisot_difference_witnesses(K, 5);
            chk(w.size() == 5, "five witnesses");
            for (std::size_t i = 0; i < w.size(); ++i) {
                chk(is_pisot(w[i].minuend) && element_degree(w[i].minuend) == 2, "minuend in P_K");
                chk(is_pisot(w[i].subtrahend) && element_degree(w[i].subtrahend) == 2,
                    "subtrahend in P_K");
                chk(w[i].minuend - w[i].subtrahend == w[i].target, "difference exact");
                chk(w[i].violation_embedding.has_value() && *w[i].violation_embedding == 2,
                    "violation embedding recorded");
                chk(!decide_position(w[i].target, 2, Window{mpq_class(-1), mpq_class(1), false, false}),
                    "|sigma_2| > 1 decided exactly");
                for (std::size_t j = i + 1; j < w.size(); ++j)
                    chk(w[i].target != w[j].target, "witnesses distinct");
            }
        }
    });

    // 9. E_K elements decompose as Pisot differences (bounded slices)
    run(9, "every E_K element with sigma_1 < 10 decomposes (Q(sqrt2), Q(sqrt5), disc-229 cubic)", [] {
        Check chk(9);
        std::vector<FieldPtr> fields = {NumberField::quadratic(2), NumberField::quadratic(5),
                                        NumberField::make(IntPolynomial{-1, -4, 0, 1})};
        for (const auto& K : fields) {
            BoxConstraint c = BoxConstraint::for_field(*K);
            c.real_windows[0] = Window::open(0, 10);
            for (std::size_t j = 1; j < c.real_windows.size(); ++j)
                c.real_windows[j] = Window::open(-2, 2);
            auto slice = enumerate_box(K, c);
            chk(!slice.elements.empty(), "slice is nonempty");
            for (const auto& beta : slice.elements) {
                DifferenceCertificate cert = decompose_difference(K, beta);
                chk(cert.minuend - cert.subtrahend == beta, "difference exact");
                chk(is_pisot(cert.minuend) && element_degree(cert.minuend) == K->degree(),
                    "minuend certified Pisot generator");
                chk(is_pisot(cert.subtrahend) && element_degree(cert.subtrahend) == K->degree(),
                    "subtrahend certified Pisot generator");
            }
        }
    });

    // 10. the Pisot family x^d - n x^(d-1) - k
    run(10, "x^d - n x^(d-1) - k: largest root is Pisot and lies in (n, n + k/n) -- 56 cases", [] {
        Check chk(10);
        int cases = 0;
        for (int d = 2; d <= 5; ++d)
            for (long n = 4; n <= 10; ++n)
                for (long k = 1; k <= 2; ++k) {
                    std::vector<mpz_class> coeffs(static_cast<std::size_t>(d) + 1, mpz_class(0));
                    coeffs[0] = -k;
                    coeffs[static_cast<std::size_t>(d - 1)] = -n;
                    coeffs[static_cast<std::size_t>(d)] = 1;
                    IntPolynomial p(std::move(coeffs));
                    chk(is_squarefree(p), "family member squarefree");
                    UnitDiskCount census = count_roots_in_unit_disk(p);
                    chk(census.inside == d - 1 && census.on_circle == 0,
                        "all other roots strictly inside the unit disk");
                    auto roots = isolate_real_roots(p);
                    chk(!roots.empty(), "a real root exists");
                    mpq_class lo(n), hi = mpq_class(n) + mpq_class(k) / mpq_class(n);
                    DyadicInterval top = roots.back();
                    SturmChain chain = SturmChain::build(p);
                    for (int round = 0; round < 64; ++round) {
                        if (top.lo.to_mpq() > lo && top.hi.to_mpq() < hi) break;
                        top = refine_root(chain, top, top.width() / 16);
                    }
                    chk(top.lo.to_mpq() > lo && top.hi.to_mpq() < hi,
                        "largest-root enclosure inside (n, n + k/n)");
                    ++cases;
                }
        chk(cases == 56, "all 56 cases executed");
    });

    // 11. oracle equivalence on randomized boxes
    run(11, "enumerate_box equals brute_oracle on 50 randomized bounded boxes", [] {
        Check chk(11);
        std::mt19937_64 rng(11);
        std::vector<FieldPtr> fields = {
            NumberField::rationals(),       NumberField::quadratic(2),
            NumberField::quadratic(5),      NumberField::quadratic(13),
            NumberField::make(IntPolynomial{-1, -4, 0, 1}),
            NumberField::make(IntPolynomial{-1, -1, 0, 1}),
        };
        std::uniform_int_distribution<int> lo_pick(-4, 2), width_pick(1, 5), u_pick(1, 3);
        int runs = 0;
        for (int iter = 0; runs < 50; ++iter) {
            const FieldPtr& K = fields[static_cast<std::size_t>(iter) % fields.size()];
            mpq_class lo(lo_pick(rng)), hi = lo + width_pick(rng);
            BoxConstraint c = BoxConstraint::for_field(*K);
            c.real_windows[0] = Window::open(lo, hi);
            for (std::size_t j = 1; j < c.real_windows.size(); ++j) {
                mpq_class uu(u_pick(rng));
                c.real_windows[j] = Window::open(-uu, uu);
            }
            for (auto& b : c.pair_bounds) b = mpq_class(u_pick(rng));
            auto bounds = coordinate_bounds(K, c);
            long cap = 0;
            for (const auto& b : bounds) cap = std::max(cap, static_cast<long>(b.get_si()));
            if (cap > 12) continue;
            ++runs;
            auto fast = enumerate_box(K, c);
            auto slow = brute_oracle(K, c, cap + 1);
            chk(fast.elements.size() == slow.elements.size(), "set sizes agree");
            for (std::size_t i = 0; i < fast.elements.size(); ++i)
                chk(fast.elements[i] == slow.elements[i], "set contents agree");
        }
        chk(runs == 50, "fifty boxes exercised");
    });

    // 12. density smoke test
    run(12, "trace-power density: 8 bins hit at N=200 (quadratic), 4x4 cells hit at N=5000 (cubic)", [] {
        Check chk(12);
        auto quad = density_experiment(lift_salem(IntPolynomial{-3, -1, 1}), 200, 8);
        chk(quad.all_cells_hit(), "all 8 bins hit for the quadratic lift");
        auto cubic = density_experiment(lift_salem(IntPolynomial{-1, -4, 0, 1}), 5000, 4);
        chk(cubic.axes == 2 && cubic.total_cells() == 16, "4x4 grid over the cubic conjugates");
        chk(cubic.all_cells_hit(), "all 16 cells hit at N=5000");
    });

    // 13. Pisot lower bound
    run(13, "every enumerated Pisot generator satisfies sigma_1 > 2^((d-1)/2) exactly", [] {
        Check chk(13);
        chk(!totally_real_pisot_lists.empty(), "criteria 1/2/5 stashed their Pisot lists");
        std::size_t checked = 0;
        for (const auto& list : totally_real_pisot_lists) {
            for (const auto& x : list) {
                int d = x.field()->degree();
                mpz_class threshold = mpz_class(1) << (d - 1);  // sigma_1^2 > 2^(d-1)
                chk(decide_position(x * x, 1, Window::above(mpq_class(threshold))),
                    "lower bound holds");
                ++checked;
            }
        }
        chk(checked > 2000, "a substantial sample was checked");
    });

    std::cout << (failures == 0 ? "ACCEPTANCE: all 13 criteria passed\n"
                                : "ACCEPTANCE: " + std::to_string(failures) + " criterion(s) FAILED\n");
    return failures == 0 ? 0 : 1;
}
