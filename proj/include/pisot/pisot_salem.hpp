#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "pisot/number_field.hpp"

namespace pisot {

// ---------------------------------------------------------------------------
// Pisot / Salem trace predicates (exact, certificate-carrying)

struct PisotCertificate {
    bool pisot = false;
    int degree = 0;
    int inside = 0;     // minpoly roots with |.| < 1
    int on_circle = 0;  // minpoly roots with |.| = 1
};

// sigma_1(x) > 1 and every other conjugate strictly inside the unit disk.
// Degree-1 elements degenerate to the rational integers >= 2.
inline PisotCertificate pisot_certificate(const FieldElement& x) {
    PisotCertificate cert;
    bool above_one = decide_position(x, 1, Window::above(1));
    if (!above_one) {
        cert.degree = x.is_zero() ? 1 : element_degree(x);
        return cert;
    }
    IntPolynomial mp = minpoly_of(x);
    cert.degree = mp.degree();
    UnitDiskCount counts = count_roots_in_unit_disk(mp);
    cert.inside = counts.inside;
    cert.on_circle = counts.on_circle;
    cert.pisot = counts.inside == cert.degree - 1;
    return cert;
}

inline bool is_pisot(const FieldElement& x) { return pisot_certificate(x).pisot; }

struct SalemTraceCertificate {
    bool salem_trace = false;
    int degree = 0;
    int conjugates_in_window = 0;  // roots in (-2, 2)
};

// Algebraic integer > 2 of degree >= 2 whose other conjugates are real in (-2, 2).
inline SalemTraceCertificate salem_trace_certificate(const FieldElement& x) {
    SalemTraceCertificate cert;
    if (!decide_position(x, 1, Window::above(2))) {
        cert.degree = x.is_zero() ? 1 : element_degree(x);
        return cert;
    }
    IntPolynomial mp = minpoly_of(x);
    cert.degree = mp.degree();
    if (cert.degree < 2) return cert;
    cert.conjugates_in_window = sturm_count_in(mp, mpq_class(-2), mpq_class(2), true, true);
    cert.salem_trace = cert.conjugates_in_window == cert.degree - 1;
    return cert;
}

inline bool is_salem_trace(const FieldElement& x) { return salem_trace_certificate(x).salem_trace; }

// ---------------------------------------------------------------------------
// Salem lift: from a Salem trace minimal polynomial M (degree d) to the Salem
// polynomial P(x) = x^d M(x + 1/x) of degree 2d, with tau the root > 1.

struct SalemLift {
    IntPolynomial source_minpoly;
    IntPolynomial lifted_poly;
    DyadicInterval salem_enclosure;  // tau > 1
};

inline bool is_salem_trace_poly(const IntPolynomial& m) {
    if (!m.is_monic() || m.degree() < 2 || !is_squarefree(m)) return false;
    int d = m.degree();
    if (m.sign_at(mpq_class(2)) == 0 || m.sign_at(mpq_class(-2)) == 0) return false;
    mpq_class bound = std::max(cauchy_bound_pow2(m).to_mpq(), mpq_class(4));
    int inside = sturm_count_in(m, mpq_class(-2), mpq_class(2), true, true);
    int above = sturm_count_in(m, mpq_class(2), bound, true, false);
    int total = sturm_count_in(m, -bound, bound, false, false);
    return inside == d - 1 && above == 1 && total == d;
}

inline SalemLift lift_salem(const IntPolynomial& m) {
    require(m.is_monic() && m.degree() >= 2, errc::not_salem_trace,
            "lift needs a monic polynomial of degree >= 2");
    auto irr = certify_irreducible(m);
    require(irr.verdict == Irreducibility::Irreducible, errc::not_salem_trace,
            std::string("source polynomial not certified irreducible (") + irr.method + ")");
    require(is_salem_trace_poly(m), errc::not_salem_trace,
            "source polynomial is not the minimal polynomial of a Salem trace number");
    int d = m.degree();
    IntPolynomial p = expand_trace_substitution(m, static_cast<std::size_t>(d));

    // structural defense: palindromic, P(0) = 1, P(+-1) != 0, root census
    require(p.degree() == 2 * d && p.is_palindromic() && p.coeff(0) == 1, errc::internal,
            "lifted polynomial failed palindromicity checks");
    require(p.sign_at(mpq_class(1)) != 0 && p.sign_at(mpq_class(-1)) != 0, errc::internal,
            "lifted polynomial vanishes at +-1");
    UnitDiskCount counts = count_roots_in_unit_disk(p);
    require(counts.inside == 1 && counts.on_circle == 2 * d - 2, errc::internal,
            "lifted polynomial root census is not Salem");
    mpq_class bound = std::max(cauchy_bound_pow2(p).to_mpq(), mpq_class(2));
    require(sturm_count_in(p, mpq_class(1), bound, true, false) == 1 &&
                sturm_count_in(p, mpq_class(0), mpq_class(1), true, true) == 1,
            errc::internal, "lifted polynomial real-root pattern is not Salem");

    auto roots = isolate_real_roots(p);
    require(roots.size() == 2, errc::internal, "lifted polynomial must have two real roots");
    SturmChain chain = SturmChain::build(p);
    DyadicInterval tau = refine_root(chain, roots[1], mpq_class(1, 1L << 40));
    require(tau.lo.to_mpq() > 1, errc::internal, "tau enclosure not above 1");
    return SalemLift{m, p, tau};
}

// C_n(beta) in K: equals tau^n + tau^(-n) for the lifted Salem number tau.
inline FieldElement trace_power(const FieldElement& beta, unsigned long n) {
    require(n >= 1, errc::bad_interval, "trace_power needs n >= 1");
    require(is_salem_trace(beta), errc::not_salem_trace, "trace_power needs a Salem trace element");
    if (n == 1) return beta;
    FieldElement prev = beta.field()->integer(2);
    FieldElement cur = beta;
    for (unsigned long k = 1; k < n; ++k) {
        FieldElement next = beta * cur - prev;
        prev = cur;
        cur = next;
    }
    SalemTraceCertificate cert = salem_trace_certificate(cur);
    require(cert.salem_trace && cert.degree == element_degree(beta), errc::internal,
            "trace power lost the Salem trace property");
    return cur;
}

// ---------------------------------------------------------------------------
// cyclotomic polynomials and root-of-unity trace recognition

inline const IntPolynomial& cyclotomic(unsigned long n) {
    static std::map<unsigned long, IntPolynomial> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    std::function<const IntPolynomial&(unsigned long)> get = [&](unsigned long k) -> const IntPolynomial& {
        auto hit = cache.find(k);
        if (hit != cache.end()) return hit->second;
        IntPolynomial num = IntPolynomial::monomial(1, k) - IntPolynomial{1};
        for (unsigned long d = 1; d < k; ++d)
            if (k % d == 0) num = num.divide_exact(get(d));
        return cache.emplace(k, std::move(num)).first->second;
    };
    return get(n);
}

inline unsigned long euler_phi(unsigned long n) {
    unsigned long result = n, v = n;
    for (unsigned long p = 2; p * p <= v; ++p) {
        if (v % p == 0) {
            result -= result / p;
            while (v % p == 0) v /= p;
        }
    }
    if (v > 1) result -= result / v;
    return result;
}

// Minimal polynomial Psi_n of 2cos(2pi/n), degree phi(n)/2, from the
// palindromic cyclotomic polynomial via the x + 1/x rewrite.
inline IntPolynomial psi_minpoly(unsigned long n) {
    require(n >= 3, errc::bad_interval, "psi_minpoly needs n >= 3");
    return trace_rewrite(cyclotomic(n));
}

struct TraceRecognition {
    unsigned long n = 0;  // modulus
    unsigned long k = 0;  // numerator, gcd(k, n) = 1
    IntPolynomial psi;
};

// Recognize x = 2cos(2k*pi/n): requires sigma_1(x) in (0,2) and all conjugates
// in (-2,2); searches n <= 8e^2 (from phi(n) >= sqrt(n/2)) for a Psi_n match.
// By Kronecker's theorem a match always exists when the window holds, so a
// non-match raises an internal consistency error.
inline std::optional<TraceRecognition> is_root_of_unity_trace(const FieldElement& x) {
    if (x == x.field()->one()) return TraceRecognition{6, 1, psi_minpoly(6)};
    if (!decide_position(x, 1, Window::open(0, 2))) return std::nullopt;
    IntPolynomial mp = minpoly_of(x);
    int e = mp.degree();
    if (sturm_count_in(mp, mpq_class(-2), mpq_class(2), true, true) != e) return std::nullopt;
    unsigned long bound = 8UL * static_cast<unsigned long>(e) * static_cast<unsigned long>(e);
    for (unsigned long n = 3; n <= bound; ++n) {
        if (euler_phi(n) != 2UL * static_cast<unsigned long>(e)) continue;
        if (psi_minpoly(n) != mp) continue;
        // identify k: the roots 2cos(2l*pi/n), l coprime ascending, decrease
        std::vector<unsigned long> coprimes;
        for (unsigned long l = 1; 2 * l <= n; ++l) {
            unsigned long a = l, b = n;
            while (b) {
                unsigned long t = a % b;
                a = b;
                b = t;
            }
            if (a == 1) coprimes.push_back(l);
        }
        auto buckets = isolate_real_roots(mp);
        require(buckets.size() == static_cast<std::size_t>(e), errc::internal,
                "psi root count mismatch");
        mpq_class eps(1, 1L << 24);
        for (;;) {
            RatInterval iv = sigma_interval(x, 1, eps);
            int hits = 0;
            std::size_t which = buckets.size();
            for (std::size_t b = 0; b < buckets.size(); ++b) {
                auto fine = refine_root(mp, buckets[b], eps);
                if (iv.lo >= fine.lo.to_mpq() && iv.hi <= fine.hi.to_mpq()) {
                    which = b;
                    ++hits;
                }
            }
            if (hits == 1) {
                // ascending root index e-1-i corresponds to the i-th coprime
                std::size_t idx_from_top = buckets.size() - 1 - which;
                return TraceRecognition{n, coprimes[idx_from_top], mp};
            }
            eps /= 256;
        }
    }
    fail(errc::internal,
         "element satisfies the trace window but matches no cyclotomic trace polynomial");
}

}  // namespace pisot
