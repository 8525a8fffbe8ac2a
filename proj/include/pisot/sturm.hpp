#pragma once

#include <vector>

#include <gmpxx.h>

#include "pisot/dyadic.hpp"
#include "pisot/errors.hpp"
#include "pisot/int_polynomial.hpp"

namespace pisot {

// Sturm chain of a squarefree polynomial. With the zeros-ignored variation
// convention, V(a) - V(b) counts roots in the half-open interval (a, b].
class SturmChain {
  public:
    static SturmChain build(const IntPolynomial& p) {
        require(!p.is_zero(), errc::zero_polynomial, "Sturm chain of zero polynomial");
        SturmChain ch;
        ch.seq_.push_back(p.primitive_part_same_sign());
        if (p.degree() >= 1) {
            ch.seq_.push_back(p.derivative().primitive_part_same_sign());
            while (!ch.seq_.back().is_zero() && ch.seq_.back().degree() > 0) {
                IntPolynomial r = detail::signed_prem(ch.seq_[ch.seq_.size() - 2], ch.seq_.back());
                if (r.is_zero()) break;
                ch.seq_.push_back(-r);
            }
        }
        return ch;
    }

    const IntPolynomial& polynomial() const { return seq_.front(); }

    int variations_at(const mpq_class& x) const {
        int var = 0, prev = 0;
        for (const auto& s : seq_) {
            int sg = s.sign_at(x);
            if (sg == 0) continue;
            if (prev != 0 && sg != prev) ++var;
            prev = sg;
        }
        return var;
    }

    int variations_at_pos_inf() const {
        int var = 0, prev = 0;
        for (const auto& s : seq_) {
            int sg = s.sign_at_pos_inf();
            if (sg == 0) continue;
            if (prev != 0 && sg != prev) ++var;
            prev = sg;
        }
        return var;
    }

    int variations_at_neg_inf() const {
        int var = 0, prev = 0;
        for (const auto& s : seq_) {
            int sg = s.sign_at_neg_inf();
            if (sg == 0) continue;
            if (prev != 0 && sg != prev) ++var;
            prev = sg;
        }
        return var;
    }

    // Roots in (a, b].
    int count_halfopen(const mpq_class& a, const mpq_class& b) const {
        require(a <= b, errc::bad_interval, "count_halfopen endpoints out of order");
        return variations_at(a) - variations_at(b);
    }

    int count_below_inclusive(const mpq_class& b) const {  // roots in (-inf, b]
        return variations_at_neg_inf() - variations_at(b);
    }

    int count_all() const { return variations_at_neg_inf() - variations_at_pos_inf(); }

  private:
    std::vector<IntPolynomial> seq_;
};

// 1 + max |c_i| / |c_lead|, rounded up to the next power of two (dyadic endpoints).
inline Dyadic cauchy_bound_pow2(const IntPolynomial& p) {
    require(p.degree() >= 0, errc::zero_polynomial, "Cauchy bound of zero polynomial");
    mpz_class lead = abs(p.leading());
    mpz_class mx(0);
    for (int i = 0; i < p.degree(); ++i) mx = std::max(mx, mpz_class(abs(p.coeff(static_cast<std::size_t>(i)))));
    // bound = 1 + mx/lead <= 2^k with 2^k minimal
    mpz_class num = lead + mx;  // bound = num/lead
    unsigned long k = 1;
    mpz_class pw(2);
    while (pw * lead < num) {
        pw *= 2;
        ++k;
    }
    return Dyadic(pw, 0);
}

// Number of distinct real roots in the interval with exact endpoint handling.
inline int sturm_count_in(const IntPolynomial& p, const mpq_class& a, const mpq_class& b,
                          bool open_lo = true, bool open_hi = true) {
    require(!p.is_zero(), errc::zero_polynomial, "sturm_count_in of zero polynomial");
    require(is_squarefree(p), errc::not_squarefree, "sturm_count_in requires squarefree input");
    require(a < b, errc::bad_interval, "sturm_count_in requires a < b");
    SturmChain ch = SturmChain::build(p);
    int n = ch.count_halfopen(a, b);  // roots in (a, b]
    if (open_hi && p.sign_at(b) == 0) --n;
    if (!open_lo && p.sign_at(a) == 0) ++n;
    return n;
}

// Isolating intervals (pairwise disjoint, one simple root each) for a
// squarefree polynomial, ascending. Interval semantics: root lies in (lo, hi];
// as closed dyadic intervals they still each contain exactly their root.
inline std::vector<DyadicInterval> isolate_real_roots(const IntPolynomial& p) {
    require(!p.is_zero(), errc::zero_polynomial, "isolate_real_roots of zero polynomial");
    require(is_squarefree(p), errc::not_squarefree, "isolate_real_roots requires squarefree input");
    std::vector<DyadicInterval> out;
    if (p.degree() == 0) return out;
    SturmChain ch = SturmChain::build(p);
    Dyadic bound = cauchy_bound_pow2(p);
    struct Seg {
        Dyadic lo, hi;
        int count;
    };
    std::vector<Seg> stack;
    int total = ch.count_halfopen((-bound).to_mpq(), bound.to_mpq());
    if (total > 0) stack.push_back({-bound, bound, total});
    while (!stack.empty()) {
        Seg seg = stack.back();
        stack.pop_back();
        if (seg.count == 1) {
            out.emplace_back(seg.lo, seg.hi);
            continue;
        }
        Dyadic mid = Dyadic::midpoint(seg.lo, seg.hi);
        int left = ch.count_halfopen(seg.lo.to_mpq(), mid.to_mpq());
        int right = seg.count - left;
        if (right > 0) stack.push_back({mid, seg.hi, right});
        if (left > 0) stack.push_back({seg.lo, mid, left});
    }
    std::sort(out.begin(), out.end(),
              [](const DyadicInterval& a, const DyadicInterval& b) { return a.lo < b.lo; });

    // Separate shared endpoints: a lower endpoint must neither be a root nor
    // touch the previous interval, so the closed intervals are pairwise
    // disjoint and each contains exactly its own root.
    const IntPolynomial& poly = ch.polynomial();
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto lo_bad = [&](const DyadicInterval& iv) {
            if (poly.sign_at(iv.lo.to_mpq()) == 0) return true;
            return i > 0 && iv.lo <= out[i - 1].hi;
        };
        while (!out[i].is_point() && lo_bad(out[i])) {
            Dyadic mid = out[i].mid();
            if (poly.sign_at(mid.to_mpq()) == 0) {
                out[i] = DyadicInterval::point(mid);
                break;
            }
            if (ch.count_halfopen(mid.to_mpq(), out[i].hi.to_mpq()) == 1)
                out[i] = DyadicInterval(mid, out[i].hi);
            else
                out[i] = DyadicInterval(out[i].lo, mid);
        }
    }
    return out;
}

// Shrink an isolating (lo, hi] interval below the requested width by Sturm
// bisection. Detects an exact dyadic root at the upper endpoint and collapses.
inline DyadicInterval refine_root(const SturmChain& ch, DyadicInterval iv, const mpq_class& eps) {
    require(eps > 0, errc::bad_interval, "refine_root needs positive width");
    if (ch.polynomial().sign_at(iv.hi.to_mpq()) == 0) return DyadicInterval::point(iv.hi);
    while (iv.width() > eps) {
        Dyadic mid = iv.mid();
        if (ch.polynomial().sign_at(mid.to_mpq()) == 0) return DyadicInterval::point(mid);
        if (ch.count_halfopen(iv.lo.to_mpq(), mid.to_mpq()) == 1)
            iv = DyadicInterval(iv.lo, mid);
        else
            iv = DyadicInterval(mid, iv.hi);
    }
    return iv;
}

inline DyadicInterval refine_root(const IntPolynomial& p, const DyadicInterval& iv, const mpq_class& eps) {
    return refine_root(SturmChain::build(p), iv, eps);
}

}  // namespace pisot
