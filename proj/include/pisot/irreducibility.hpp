#pragma once

#include <cstdint>
#include <vector>

#include "pisot/int_polynomial.hpp"
#include "pisot/sturm.hpp"

namespace pisot {

enum class Irreducibility { Irreducible, Reducible, Unknown };

struct IrreducibilityReport {
    Irreducibility verdict = Irreducibility::Unknown;
    const char* method = "";
};

namespace detail {

// Minimal mod-p polynomial arithmetic for the degree-pattern sieve.
// p is a small odd-or-two prime; coefficients live in [0, p).
struct ModPoly {
    std::vector<std::uint64_t> c;  // ascending, trimmed
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
};

inline ModPoly mod_reduce(const IntPolynomial& f, std::uint64_t p) {
    ModPoly r;
    r.c.resize(static_cast<std::size_t>(f.degree()) + 1);
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        mpz_class m = f.coeff(i) % static_cast<long>(p);
        if (m < 0) m += static_cast<long>(p);
        r.c[i] = m.get_ui();
    }
    r.trim();
    return r;
}

inline ModPoly mod_mul(const ModPoly& a, const ModPoly& b, std::uint64_t p) {
    ModPoly r;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = (r.c[i + j] + a.c[i] * b.c[j]) % p;
    r.trim();
    return r;
}

inline std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
    // p prime, a != 0 mod p
    std::uint64_t r = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r;
}

inline ModPoly mod_rem(ModPoly a, const ModPoly& b, std::uint64_t p) {
    std::uint64_t inv = mod_inv(b.c.back(), p);
    while (a.degree() >= b.degree() && !a.c.empty()) {
        std::uint64_t q = a.c.back() * inv % p;
        std::size_t shift = static_cast<std::size_t>(a.degree() - b.degree());
        for (std::size_t i = 0; i < b.c.size(); ++i) {
            std::uint64_t sub = q * b.c[i] % p;
            a.c[i + shift] = (a.c[i + shift] + p - sub) % p;
        }
        a.trim();
    }
    return a;
}

inline ModPoly mod_gcd(ModPoly a, ModPoly b, std::uint64_t p) {
    while (!b.c.empty()) {
        ModPoly r = mod_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.c.empty() && a.c.back() != 1) {
        std::uint64_t inv = mod_inv(a.c.back(), p);
        for (auto& v : a.c) v = v * inv % p;
    }
    return a;
}

inline ModPoly mod_pow_x(std::uint64_t e, const ModPoly& mod, std::uint64_t p) {
    // x^e mod (mod)
    ModPoly result;
    result.c = {1};
    ModPoly base;
    base.c = {0, 1};
    base = mod_rem(base, mod, p);
    while (e) {
        if (e & 1) result = mod_rem(mod_mul(result, base, p), mod, p);
        base = mod_rem(mod_mul(base, base, p), mod, p);
        e >>= 1;
    }
    return result;
}

// Degrees (with multiplicity) of the irreducible factors of f mod p,
// obtained by distinct-degree factorization; requires f squarefree mod p.
inline std::vector<int> mod_factor_degrees(const IntPolynomial& f, std::uint64_t p) {
    ModPoly v = mod_reduce(f, p);
    std::vector<int> degrees;
    ModPoly w;
    w.c = {0, 1};
    int i = 0;
    while (v.degree() > 0) {
        ++i;
        if (2 * i > v.degree()) {
            degrees.insert(degrees.end(), 1, v.degree());
            break;
        }
        // w = x^(p^i) mod v, built by exponentiating the previous w by p
        ModPoly wp;
        {
            ModPoly result;
            result.c = {1};
            ModPoly base = mod_rem(w, v, p);
            std::uint64_t e = p;
            while (e) {
                if (e & 1) result = mod_rem(mod_mul(result, base, p), v, p);
                base = mod_rem(mod_mul(base, base, p), v, p);
                e >>= 1;
            }
            wp = std::move(result);
        }
        w = wp;
        ModPoly diff = w;
        // diff = w - x
        if (diff.c.size() < 2) diff.c.resize(2, 0);
        diff.c[1] = (diff.c[1] + p - 1) % p;
        diff.trim();
        ModPoly g = mod_gcd(v, diff, p);
        if (g.degree() > 0) {
            int count = g.degree() / i;
            degrees.insert(degrees.end(), static_cast<std::size_t>(count), i);
            // v = v / g
            ModPoly q;
            {
                ModPoly rem = v;
                std::uint64_t inv = mod_inv(g.c.back(), p);
                q.c.assign(static_cast<std::size_t>(v.degree() - g.degree()) + 1, 0);
                for (int k = v.degree() - g.degree(); k >= 0; --k) {
                    std::uint64_t qc = rem.c[static_cast<std::size_t>(k + g.degree())] * inv % p;
                    q.c[static_cast<std::size_t>(k)] = qc;
                    for (std::size_t t = 0; t < g.c.size(); ++t) {
                        std::uint64_t sub = qc * g.c[t] % p;
                        rem.c[static_cast<std::size_t>(k) + t] = (rem.c[static_cast<std::size_t>(k) + t] + p - sub) % p;
                    }
                }
                rem.trim();
            }
            v = std::move(q);
            w = mod_rem(w, v, p);
        }
    }
    return degrees;
}

inline const std::vector<std::uint64_t>& small_primes() {
    static const std::vector<std::uint64_t> table = [] {
        std::vector<std::uint64_t> v;
        std::vector<bool> sieve(2000, true);
        for (std::uint64_t i = 2; i < sieve.size(); ++i) {
            if (!sieve[i]) continue;
            v.push_back(i);
            for (std::uint64_t j = i * i; j < sieve.size(); j += i) sieve[j] = false;
        }
        return v;
    }();
    return table;
}

}  // namespace detail

// True iff f (monic, squarefree, degree >= 2) has an integer root; exact via
// real-root isolation, no factoring of the constant term needed.
inline bool has_integer_root(const IntPolynomial& f) {
    for (const auto& iv : isolate_real_roots(f)) {
        auto fine = refine_root(f, iv, mpq_class(1, 4));
        // at width < 1/2 at most one integer candidate remains
        mpz_class cand;
        mpz_fdiv_q(cand.get_mpz_t(), fine.hi.to_mpq().get_num().get_mpz_t(),
                   fine.hi.to_mpq().get_den().get_mpz_t());
        for (int off = -1; off <= 1; ++off) {
            mpz_class c = cand + off;
            if (fine.contains(mpq_class(c)) && f.evaluate(c) == 0) return true;
        }
    }
    return false;
}

// Certification ladder: degree 1 trivially irreducible; degree 2-3 by the
// integer-root test; degree >= 4 by a modular degree-pattern sieve over
// good primes. Never returns a wrong verdict; Unknown when inconclusive.
inline IrreducibilityReport certify_irreducible(const IntPolynomial& f, int prime_budget = 25) {
    require(f.is_monic(), errc::not_monic, "irreducibility test expects a monic polynomial");
    int d = f.degree();
    if (d == 1) return {Irreducibility::Irreducible, "degree-1"};
    if (!is_squarefree(f)) return {Irreducibility::Reducible, "repeated-factor"};
    if (f.coeff(0) == 0) return {Irreducibility::Reducible, "root-at-zero"};
    if (has_integer_root(f)) return {Irreducibility::Reducible, "integer-root"};
    if (d <= 3) return {Irreducibility::Irreducible, "no-linear-factor"};
    if (d >= 64) return {Irreducibility::Unknown, "degree-too-large-for-sieve"};

    mpz_class disc = discriminant(f);
    // subset-sum bitsets of factor-degree patterns, intersected across primes
    std::uint64_t possible = ~0ULL;
    int used = 0;
    for (std::uint64_t p : detail::small_primes()) {
        if (used >= prime_budget) break;
        if (mpz_divisible_ui_p(disc.get_mpz_t(), static_cast<unsigned long>(p))) continue;
        ++used;
        auto degs = detail::mod_factor_degrees(f, p);
        if (degs.size() == 1) return {Irreducibility::Irreducible, "irreducible-mod-p"};
        std::uint64_t sums = 1;  // degree 0 reachable
        for (int g : degs) sums |= sums << g;
        possible &= sums;
        std::uint64_t proper = possible & ((1ULL << d) - 2);  // degrees 1..d-1
        if (proper == 0) return {Irreducibility::Irreducible, "pattern-sieve"};
    }
    return {Irreducibility::Unknown, "sieve-inconclusive"};
}

}  // namespace pisot
