#pragma once

#include <map>
#include <optional>
#include <vector>

#include "pisot/box_enum.hpp"
#include "pisot/pisot_salem.hpp"

namespace pisot {

// ---------------------------------------------------------------------------
// Pisot enumeration and gap structure

// All Pisot numbers theta with sigma_1(theta) in (1, X] that generate K.
inline std::vector<FieldElement> enumerate_pisot(const FieldPtr& K, const mpq_class& X) {
    require(X > 1, errc::bad_interval, "Pisot enumeration bound must exceed 1");
    if (K->degree() == 1) {
        std::vector<FieldElement> out;
        mpz_class n;
        mpz_fdiv_q(n.get_mpz_t(), X.get_num().get_mpz_t(), X.get_den().get_mpz_t());
        for (mpz_class v = 2; v <= n; ++v) out.push_back(K->integer(v));
        return out;
    }
    BoxConstraint c = BoxConstraint::for_field(*K);
    c.real_windows[0] = Window::half_open_upper(1, X);
    for (std::size_t j = 1; j < c.real_windows.size(); ++j) c.real_windows[j] = Window::open(-1, 1);
    for (auto& b : c.pair_bounds) b = mpq_class(1);
    EnumerationResult res = enumerate_box(K, c);
    require(res.boundary_skipped.empty(), errc::internal,
            "uniform Pisot box must not produce boundary-undecided candidates");
    std::vector<FieldElement> out;
    for (auto& x : res.elements)
        if (element_degree(x) == K->degree()) out.push_back(std::move(x));

    // cross-check against the closed-form generator for Q(sqrt m), m = 2,3
    // mod 4: the Pisot generators are exactly floor(b sqrt m) + b sqrt m and
    // its successor-by-one, b = 1, 2, ...
    if (K->quadratic_m() && *K->quadratic_m() % 4 != 1) {
        mpz_class m = *K->quadratic_m();
        std::vector<FieldElement> oracle;
        for (mpz_class b = 1;; ++b) {
            mpz_class t = b * b * m, floor_bsqm;
            mpz_sqrt(floor_bsqm.get_mpz_t(), t.get_mpz_t());
            FieldElement alpha = K->element({floor_bsqm, b});
            FieldElement hat = alpha + K->one();
            bool any = false;
            for (const FieldElement& cand : {alpha, hat})
                if (decide_position(cand, 1, Window::half_open_upper(1, X))) {
                    oracle.push_back(cand);
                    any = true;
                }
            if (!any) break;
        }
        require(oracle.size() == out.size(), errc::internal,
                "closed-form Pisot generator disagrees with the enumeration");
        for (std::size_t i = 0; i < out.size(); ++i)
            require(oracle[i] == out[i], errc::internal,
                    "closed-form Pisot generator disagrees with the enumeration");
    }
    return out;
}

// beta != 0, sigma_1(beta) > 0, all other conjugate images of modulus < 2.
inline bool in_E(const FieldElement& beta) {
    if (beta.is_zero()) return false;
    if (sigma_sign(beta, 1) <= 0) return false;
    if (beta.field()->degree() == 1) return true;
    return conjugates_within_disk(beta, 2);
}

struct GapEntry {
    FieldElement value;
    int multiplicity = 0;
    std::size_t first_index = 0;  // 1-based n: gap between theta_n and theta_{n+1}
};

struct USetResult {
    std::vector<FieldElement> elements;  // sorted
    std::vector<TraceRecognition> recognitions;
    bool full_slice_route = true;  // false for non-totally-real fallback
};

struct AtlasReport {
    FieldPtr field;
    mpq_class bound;
    std::vector<FieldElement> pisot_list;
    std::vector<GapEntry> gaps;  // sorted by sigma_1
    std::optional<USetResult> u_set;
    std::optional<FieldElement> min_trace;
    std::optional<FieldElement> rho;
    std::optional<std::size_t> stabilization_index;
    MaximalityCertificate basis_caveat = MaximalityCertificate::PowerBasisAssumed;
    std::optional<bool> u3_d3_agree;  // reported, never asserted
};

inline USetResult compute_U(const FieldPtr& K);
inline FieldElement compute_minT(const FieldPtr& K, const mpq_class& initial_bound = 4,
                                 int max_doublings = 40);

inline AtlasReport gap_report(const FieldPtr& K, const mpq_class& X) {
    AtlasReport rep;
    rep.field = K;
    rep.bound = X;
    rep.basis_caveat = K->certificate();
    rep.pisot_list = enumerate_pisot(K, X);
    require(rep.pisot_list.size() >= 2, errc::insufficient_range,
            "fewer than 2 Pisot numbers below the bound");

    // consecutive differences, with multiplicity and first occurrence
    std::vector<FieldElement> distinct;
    std::vector<GapEntry> entries;
    for (std::size_t i = 0; i + 1 < rep.pisot_list.size(); ++i) {
        FieldElement g = rep.pisot_list[i + 1] - rep.pisot_list[i];
        bool found = false;
        for (auto& e : entries)
            if (e.value == g) {
                ++e.multiplicity;
                found = true;
                break;
            }
        if (!found) {
            require(in_E(g), errc::internal, "consecutive gap fails the E_K membership test");
            entries.push_back(GapEntry{g, 1, i + 1});
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const GapEntry& a, const GapEntry& b) { return sigma1_less(a.value, b.value); });
    rep.gaps = std::move(entries);

    std::size_t stab = 0;
    for (const auto& e : rep.gaps) stab = std::max(stab, e.first_index);
    rep.stabilization_index = stab;

    // telescoping spot checks: theta_n - theta_m equals the sum of the
    // consecutive gaps between the indices (exact element identity)
    auto telescope = [&](std::size_t mlo, std::size_t nhi) {
        FieldElement sum = K->zero();
        for (std::size_t i = mlo; i < nhi; ++i) sum = sum + (rep.pisot_list[i + 1] - rep.pisot_list[i]);
        require(sum == rep.pisot_list[nhi] - rep.pisot_list[mlo], errc::internal,
                "telescoping identity failed");
    };
    telescope(0, rep.pisot_list.size() - 1);
    telescope(0, (rep.pisot_list.size() - 1) / 2 + (rep.pisot_list.size() > 2 ? 1 : 0));

    // rho = max(theta_1 - 1, largest gap)
    FieldElement theta1_minus_1 = rep.pisot_list[0] - K->one();
    FieldElement largest_gap = rep.gaps.back().value;
    rep.rho = sigma1_less(theta1_minus_1, largest_gap) ? largest_gap : theta1_minus_1;

    if (K->degree() == 1) {
        USetResult u;
        u.elements = {K->one()};
        u.recognitions = {TraceRecognition{6, 1, psi_minpoly(6)}};
        rep.u_set = std::move(u);
        rep.min_trace = K->integer(3);
    } else if (K->totally_real()) {
        rep.u_set = compute_U(K);
        rep.min_trace = compute_minT(K);
    } else {
        rep.u_set = compute_U(K);  // psi-search fallback route
    }
    if (rep.u_set && rep.u_set->elements.size() >= 3 && rep.gaps.size() >= 3)
        rep.u3_d3_agree = rep.u_set->elements[2] == rep.gaps[2].value;
    return rep;
}

// ---------------------------------------------------------------------------
// U_K and min T_K

inline USetResult compute_U(const FieldPtr& K) {
    USetResult out;
    if (K->degree() == 1) {
        out.elements = {K->one()};
        out.recognitions = {TraceRecognition{6, 1, psi_minpoly(6)}};
        return out;
    }
    BoxConstraint c = BoxConstraint::for_field(*K);
    c.real_windows[0] = Window::open(0, 2);
    for (std::size_t j = 1; j < c.real_windows.size(); ++j) c.real_windows[j] = Window::open(-2, 2);
    for (auto& b : c.pair_bounds) b = mpq_class(2);
    EnumerationResult res = enumerate_box(K, c);
    require(res.boundary_skipped.empty(), errc::internal,
            "uniform trace box must not produce boundary-undecided candidates");

    if (K->totally_real()) {
        // For totally real K the (0,2) x (-2,2)^(d-1) slice consists exactly
        // of root of unity traces; a recognition failure here is a bug.
        for (const auto& x : res.elements) {
            auto rec = is_root_of_unity_trace(x);
            require(rec.has_value(), errc::internal,
                    "E_K slice element not recognized as a root of unity trace");
            out.recognitions.push_back(*rec);
            out.elements.push_back(x);
        }
        // cross-oracle: scan candidate moduli and compare against the minpolys
        std::vector<unsigned long> route_a, route_b;
        for (const auto& r : out.recognitions) route_a.push_back(r.n);
        unsigned long d = static_cast<unsigned long>(K->degree());
        for (unsigned long n = 3; n <= 8 * d * d; ++n) {
            unsigned long phi = euler_phi(n);
            if (phi % 2 != 0 || (2 * d) % phi != 0) continue;
            IntPolynomial psi = psi_minpoly(n);
            for (const auto& x : out.elements)
                if (minpoly_of(x) == psi) {
                    route_b.push_back(n);
                    break;
                }
        }
        std::sort(route_a.begin(), route_a.end());
        route_a.erase(std::unique(route_a.begin(), route_a.end()), route_a.end());
        std::sort(route_b.begin(), route_b.end());
        require(route_a == route_b, errc::internal, "U_K routes disagree");
    } else {
        out.full_slice_route = false;
        for (const auto& x : res.elements) {
            auto rec = is_root_of_unity_trace(x);
            if (!rec) continue;  // slice equality only holds for totally real K
            out.recognitions.push_back(*rec);
            out.elements.push_back(x);
        }
    }
    return out;
}

// Smallest element of T_K = E_K with sigma_1 > 2 (totally real fields);
// complete enumeration under a doubling bound makes the minimum exact.
inline FieldElement compute_minT(const FieldPtr& K, const mpq_class& initial_bound,
                                 int max_doublings) {
    if (K->degree() == 1) return K->integer(3);
    require(K->totally_real() && K->degree() >= 2, errc::not_applicable,
            "min T_K is defined for totally real fields of degree >= 2");
    mpq_class C = std::max(initial_bound, mpq_class(4));
    for (int round = 0; round < max_doublings; ++round) {
        BoxConstraint c = BoxConstraint::for_field(*K);
        c.real_windows[0] = Window::half_open_upper(2, C);
        for (std::size_t j = 1; j < c.real_windows.size(); ++j) c.real_windows[j] = Window::open(-2, 2);
        EnumerationResult res = enumerate_box(K, c);
        for (const auto& x : res.elements) {
            if (element_degree(x) != K->degree()) continue;
            SalemTraceCertificate cert = salem_trace_certificate(x);
            require(cert.salem_trace, errc::internal, "min T_K candidate is not a Salem trace number");
            return x;
        }
        C *= 2;
    }
    fail(errc::cap_exhausted, "min T_K not found under the doubling cap");
}

// ---------------------------------------------------------------------------
// constructive decompositions

struct DifferenceCertificate {
    enum class Kind { InDk, NotPisotWitness };
    FieldElement target, minuend, subtrahend;
    Kind kind = Kind::InDk;
    std::optional<int> violation_embedding;  // j with |sigma_j(target)| > 1
};

// Realize beta in E_K as a difference of two Pisot generators, scanning for
// the window-satisfying theta with least sigma_1 (deterministic output).
inline DifferenceCertificate decompose_difference(const FieldPtr& K, const FieldElement& beta,
                                                  int max_doublings = 24) {
    require(K->totally_real(), errc::not_applicable,
            "the difference decomposition needs a totally real field");
    require(in_E(beta), errc::not_in_ek, "element is not in E_K");
    if (K->degree() == 1) {
        // beta is an integer >= 1: beta = (beta + 2) - 2
        FieldElement minuend = beta + K->integer(2);
        return DifferenceCertificate{beta, minuend, K->integer(2), DifferenceCertificate::Kind::InDk, {}};
    }
    mpq_class C = 4;
    for (int round = 0; round < max_doublings; ++round) {
        for (const auto& theta : enumerate_pisot(K, C)) {
            bool window_ok = true;
            FieldElement shifted = theta + beta;
            for (int j = 2; j <= K->degree() && window_ok; ++j)
                window_ok = decide_position(shifted, j, Window::open(-1, 1));
            if (!window_ok) continue;
            require(is_pisot(shifted) && element_degree(shifted) == K->degree(), errc::internal,
                    "window-satisfying shift failed the Pisot verification");
            require(shifted - theta == beta, errc::internal, "difference identity failed");
            return DifferenceCertificate{beta, shifted, theta, DifferenceCertificate::Kind::InDk, {}};
        }
        C *= 2;
    }
    fail(errc::cap_exhausted, "no window-satisfying Pisot shift found under the doubling cap");
}

enum class ShiftMode { MinusOne, PlusOne };

struct PowerShiftResult {
    unsigned long exponent = 0;
    bool auto_squared = false;
    FieldElement base;    // alpha, or alpha^2 when auto_squared
    FieldElement result;  // base^exponent -+ 1, a Pisot generator
};

// MinusOne: smallest q with base^q - 1 in P_K (squaring first when a real
// conjugate is negative). PlusOne: smallest n with alpha^n + 1 in P_K.
inline PowerShiftResult power_shift_search(const FieldElement& alpha, ShiftMode mode,
                                           unsigned long cap = 10000) {
    const FieldPtr& K = alpha.field();
    require(cap >= 1, errc::bad_interval, "cap must be at least 1");
    require(is_pisot(alpha) && element_degree(alpha) == K->degree(), errc::not_applicable,
            "power shift needs a Pisot generator of the field");
    PowerShiftResult out;
    out.base = alpha;
    if (mode == ShiftMode::MinusOne) {
        for (int j = 2; j <= K->real_embeddings(); ++j)
            if (sigma_sign(alpha, j) < 0) {
                out.base = alpha * alpha;
                out.auto_squared = true;
                break;
            }
    }
    FieldElement pw = K->one();
    for (unsigned long q = 1; q <= cap; ++q) {
        pw = pw * out.base;
        FieldElement cand = (mode == ShiftMode::MinusOne) ? pw - K->one() : pw + K->one();
        if (is_pisot(cand) && element_degree(cand) == K->degree()) {
            out.exponent = q;
            out.result = cand;
            return out;
        }
    }
    fail(errc::cap_exhausted, "power shift search exhausted the exponent cap");
}

namespace detail {

inline DifferenceCertificate represent_product_route(const FieldPtr& K, const FieldElement& tau,
                                                     unsigned long cap) {
    // 1 = A - A' with both Pisot generators, then tau = tau*A - tau*A'
    FieldElement alpha = K->zero();
    bool found = false;
    mpq_class C = 4;
    for (int round = 0; round < 16 && !found; ++round) {
        auto pisot = enumerate_pisot(K, C);
        if (!pisot.empty()) {
            alpha = pisot.front();
            found = true;
        }
        C *= 2;
    }
    require(found, errc::cap_exhausted, "no Pisot generator found under the doubling cap");
    PowerShiftResult shift = power_shift_search(alpha, ShiftMode::MinusOne, cap);
    FieldElement big = shift.result + K->one();  // base^q
    FieldElement minuend = tau * big;
    FieldElement subtrahend = tau * shift.result;
    require(minuend - subtrahend == tau, errc::internal, "difference identity failed");
    require(is_pisot(minuend) && element_degree(minuend) == K->degree(), errc::internal,
            "minuend failed the Pisot verification");
    require(is_pisot(subtrahend) && element_degree(subtrahend) == K->degree(), errc::internal,
            "subtrahend failed the Pisot verification");
    return DifferenceCertificate{tau, minuend, subtrahend, DifferenceCertificate::Kind::InDk, {}};
}

}  // namespace detail

// tau a Pisot generator of K: exhibit tau as a difference of two Pisot generators.
inline DifferenceCertificate represent_as_difference(const FieldElement& tau, unsigned long cap = 10000) {
    const FieldPtr& K = tau.field();
    if (K->degree() == 1) {
        auto c = tau.constant_value();
        require(c && *c >= 2, errc::not_applicable, "needs a Pisot element (integer >= 2)");
        return DifferenceCertificate{tau, K->integer(2 * *c), K->integer(*c),
                                     DifferenceCertificate::Kind::InDk, {}};
    }
    require(is_pisot(tau) && element_degree(tau) == K->degree(), errc::not_applicable,
            "needs a Pisot generator of the field");
    return detail::represent_product_route(K, tau, cap);
}

// Salem variant: the ambient field is Q(tau) built from the
// lifted polynomial; tau itself is the generator with sigma_1 the root > 1.
inline DifferenceCertificate represent_as_difference(const SalemLift& lift, unsigned long cap = 10000) {
    FieldPtr K = NumberField::make(lift.lifted_poly, IrreducibilityPolicy::Assume);
    FieldElement tau = K->generator();
    require(sigma_sign(tau - K->one(), 1) > 0, errc::internal, "Salem generator must exceed 1");
    return detail::represent_product_route(K, tau, cap);
}

// Certified members of D_K \ P_K: differences of Pisot generators with an
// exhibited conjugate of modulus > 1.
inline std::vector<DifferenceCertificate> nonpisot_difference_witnesses(const FieldPtr& K, int count,
                                                                        unsigned long cap = 10000) {
    require(K->degree() >= 2, errc::not_applicable,
            "witnesses exist only for fields other than Q");
    require(count >= 0, errc::bad_interval, "count must be nonnegative");
    std::vector<DifferenceCertificate> out;
    if (count == 0) return out;

    FieldElement alpha = K->zero();
    {
        bool found = false;
        mpq_class C = 4;
        for (int round = 0; round < 16 && !found; ++round) {
            auto pisot = enumerate_pisot(K, C);
            if (!pisot.empty()) {
                alpha = pisot.front();
                found = true;
            }
            C *= 2;
        }
        require(found, errc::cap_exhausted, "no Pisot generator found under the doubling cap");
    }

    if (K->real_embeddings() >= 2) {
        // (alpha^{2q} - 1) - alpha^q with positive real conjugates of alpha
        for (int j = 2; j <= K->real_embeddings(); ++j)
            if (sigma_sign(alpha, j) < 0) {
                alpha = alpha * alpha;
                break;
            }
        require(is_pisot(alpha) && element_degree(alpha) == K->degree(), errc::internal,
                "squared base lost the Pisot property");
        FieldElement pw = K->one();
        for (unsigned long q = 1; q <= cap && out.size() < static_cast<std::size_t>(count); ++q) {
            pw = pw * alpha;                       // alpha^q
            FieldElement sq = pw * pw;             // alpha^{2q}
            FieldElement minuend = sq - K->one();  // alpha^{2q} - 1
            if (!(is_pisot(minuend) && element_degree(minuend) == K->degree())) continue;
            if (!(is_pisot(pw) && element_degree(pw) == K->degree())) continue;
            FieldElement target = minuend - pw;
            if (sigma_sign(target, 1) <= 0) continue;
            std::optional<int> violation;
            for (int j = 2; j <= K->real_embeddings() && !violation; ++j)
                if (!decide_position(target, j, Window{mpq_class(-1), mpq_class(1), false, false}))
                    violation = j;
            if (!violation && K->complex_pairs() == 1 &&
                !decide_modulus_strictly_less(target, mpq_class(1)))
                violation = K->real_embeddings() + 1;
            if (!violation) continue;
            out.push_back(DifferenceCertificate{target, minuend, pw,
                                                DifferenceCertificate::Kind::NotPisotWitness, violation});
        }
        require(out.size() == static_cast<std::size_t>(count), errc::cap_exhausted,
                "witness search exhausted the exponent cap");
        return out;
    }

    // r = 1: beta_n = (alpha^n + 1) - (alpha^q - 1), guarded by |sigma_2(alpha)|^q < 1/2
    require(K->complex_pairs() == 1, errc::unsupported,
            "witness construction supports at most one complex pair");
    unsigned long q = 0;
    FieldElement sub = K->zero();
    {
        FieldElement pw = K->one();
        for (unsigned long qq = 1; qq <= cap; ++qq) {
            pw = pw * alpha;
            FieldElement cand = pw - K->one();
            if (!(is_pisot(cand) && element_degree(cand) == K->degree())) continue;
            bool small = false;
            try {
                small = decide_modulus_strictly_less(pw, mpq_class(1, 2));
            } catch (const atlas_error& e) {
                if (e.code() != errc::boundary_undecided) throw;
                continue;  // boundary case: move to a larger exponent
            }
            if (!small) continue;
            q = qq;
            sub = cand;
            break;
        }
        require(q > 0, errc::cap_exhausted, "no guarded exponent q found under the cap");
    }
    FieldElement pw = K->one();
    for (unsigned long i = 0; i < q; ++i) pw = pw * alpha;
    for (unsigned long n = q + 1; n <= cap && out.size() < static_cast<std::size_t>(count); ++n) {
        pw = pw * alpha;  // alpha^n
        FieldElement minuend = pw + K->one();
        if (!(is_pisot(minuend) && element_degree(minuend) == K->degree())) continue;
        FieldElement target = minuend - sub;
        if (sigma_sign(target, 1) <= 0) continue;
        if (decide_modulus_strictly_less(target, mpq_class(1))) continue;  // needs |sigma_2| > 1
        out.push_back(DifferenceCertificate{target, minuend, sub,
                                            DifferenceCertificate::Kind::NotPisotWitness,
                                            K->real_embeddings() + 1});
    }
    require(out.size() == static_cast<std::size_t>(count), errc::cap_exhausted,
            "witness search exhausted the exponent cap");
    return out;
}

// ---------------------------------------------------------------------------
// quadratic closed forms and the density experiment

struct QuadraticClosedForms {
    FieldPtr field;
    std::vector<FieldElement> u_set;    // sorted
    std::vector<FieldElement> gap_set;  // sorted consecutive-gap set F_K
    FieldElement min_trace;
};

inline QuadraticClosedForms quadratic_closed_forms(const mpz_class& m) {
    FieldPtr K = NumberField::quadratic(m);
    QuadraticClosedForms out;
    out.field = K;
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), m.get_mpz_t());
    long mmod4 = mpz_class(m % 4).get_si();
    if (mmod4 == 2 || mmod4 == 3) {
        // basis {1, sqrt(m)}
        FieldElement sqrt_m = K->element({0, 1});
        FieldElement f2 = K->element({s - 1, 1});
        FieldElement f3 = K->element({s, 1});
        out.gap_set = {K->one(), f2, f3};
        if (m == 2 || m == 3) {
            out.u_set = {K->one(), sqrt_m};
            out.min_trace = K->element({1, 1});  // 1 + sqrt(m)
        } else {
            out.u_set = {K->one()};
            out.min_trace = f2;
        }
    } else {
        // m = 1 mod 4, basis {1, (1+sqrt(m))/2}
        if (m == 5) {
            out.u_set = {K->element({-1, 1}), K->one(), K->element({0, 1})};
            out.gap_set = out.u_set;
            out.min_trace = K->element({1, 1});  // (3+sqrt5)/2
        } else {
            out.u_set = {K->one()};
            // (x + sqrt(m))/2 has coords ((x-1)/2, 1) over {1, (1+sqrt m)/2}
            mpz_class x = (s % 2 == 0) ? mpz_class(s - 3) : mpz_class(s - 2);
            FieldElement min_t = K->element({(x - 1) / 2, 1});
            out.min_trace = min_t;
            out.gap_set = {K->one(), min_t, min_t + K->one()};
        }
    }
    std::sort(out.u_set.begin(), out.u_set.end(), sigma1_less);
    std::sort(out.gap_set.begin(), out.gap_set.end(), sigma1_less);
    return out;
}

struct DensityStats {
    unsigned long steps = 0;
    unsigned long bins = 0;
    int axes = 0;
    std::map<std::vector<unsigned long>, unsigned long> cell_counts;
    unsigned long unit_box_hits = 0;  // conjugate vector inside (-1,1)^(d-1)

    unsigned long total_cells() const {
        unsigned long t = 1;
        for (int i = 0; i < axes; ++i) t *= bins;
        return t;
    }
    bool all_cells_hit() const { return cell_counts.size() == total_cells(); }
};

// Conjugate-vector equidistribution probe: computes the images of
// tau^n + tau^(-n) for n = 1..N in the trace field and bins them over
// [-2,2]^(d-1). Certified interval recurrence with precision escalation;
// boundary landings are impossible (the images are irrational), so the
// escalation loop always resolves.
inline DensityStats density_experiment(const SalemLift& lift, unsigned long N, unsigned long bins) {
    require(N >= 1 && bins >= 1, errc::bad_interval, "density experiment needs N >= 1, bins >= 1");
    FieldPtr K = NumberField::make(lift.source_minpoly);
    int d = K->degree();
    int axes = d - 1;
    DensityStats out;
    out.steps = N;
    out.bins = bins;
    out.axes = axes;

    std::vector<mpq_class> edges;
    for (unsigned long k = 0; k <= bins; ++k)
        edges.push_back(mpq_class(-2) + mpq_class(4 * static_cast<long>(k)) / mpq_class(static_cast<long>(bins)));

    unsigned long precision = 2 * N + 256;
    for (int attempt = 0; attempt < 8; ++attempt) {
        out.cell_counts.clear();
        out.unit_box_hits = 0;
        bool ok = true;

        mpq_class eps = mpq_class(1) / mpq_class(mpz_class(1) << precision);
        std::vector<DyadicInterval> y, prev, cur;
        for (int j = 2; j <= d; ++j) {
            DyadicInterval yj = K->theta_enclosure(j, eps);
            y.push_back(yj);
            prev.push_back(DyadicInterval::point(Dyadic(2)));
            cur.push_back(yj);
        }
        for (unsigned long n = 1; n <= N && ok; ++n) {
            std::vector<unsigned long> cell(static_cast<std::size_t>(axes));
            bool in_unit = true;
            for (int a = 0; a < axes && ok; ++a) {
                const DyadicInterval& v = cur[static_cast<std::size_t>(a)];
                mpq_class lo = v.lo.to_mpq(), hi = v.hi.to_mpq();
                bool classified = false;
                for (unsigned long k = 0; k < bins; ++k) {
                    if (lo > edges[k] && hi < edges[k + 1]) {
                        cell[static_cast<std::size_t>(a)] = k;
                        classified = true;
                        break;
                    }
                }
                if (!classified) {
                    ok = false;
                    break;
                }
                if (hi < -1 || lo > 1)
                    in_unit = false;
                else if (!(lo > -1 && hi < 1)) {
                    ok = false;  // straddles the unit box edge: escalate
                }
            }
            if (!ok) break;
            ++out.cell_counts[cell];
            if (in_unit) ++out.unit_box_hits;
            if (n < N) {
                for (int a = 0; a < axes; ++a) {
                    std::size_t ai = static_cast<std::size_t>(a);
                    DyadicInterval next = (y[ai] * cur[ai] - prev[ai]).round_out(precision);
                    prev[ai] = cur[ai];
                    cur[ai] = next;
                }
            }
        }
        if (ok) return out;
        precision *= 2;
    }
    fail(errc::internal, "density experiment failed to classify under precision escalation");
}

}  // namespace pisot
