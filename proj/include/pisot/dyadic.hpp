#pragma once

#include <algorithm>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "pisot/errors.hpp"

namespace pisot {

// Dyadic rational: mant / 2^exp with exp >= 0. Closed under +, -, *, halving;
// exactly representable endpoints for all root enclosures.
class Dyadic {
  public:
    Dyadic() : mant_(0), exp_(0) {}
    Dyadic(long v) : mant_(v), exp_(0) {}
    Dyadic(mpz_class mant, unsigned long exp = 0) : mant_(std::move(mant)), exp_(exp) { normalize(); }

    static Dyadic from_mpq_pow2(const mpq_class& q) {
        // q must have a power-of-two denominator
        const mpz_class& den = q.get_den();
        std::size_t bit = mpz_scan1(den.get_mpz_t(), 0);
        require(mpz_sizeinbase(den.get_mpz_t(), 2) == bit + 1, errc::internal,
                "from_mpq_pow2: denominator not a power of two");
        return Dyadic(q.get_num(), static_cast<unsigned long>(bit));
    }

    const mpz_class& mantissa() const { return mant_; }
    unsigned long exponent() const { return exp_; }

    mpq_class to_mpq() const {
        mpz_class den(1);
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), exp_);
        mpq_class q(mant_, den);
        q.canonicalize();
        return q;
    }

    int sign() const { return sgn(mant_); }

    Dyadic operator-() const { return Dyadic(-mant_, exp_); }

    Dyadic operator+(const Dyadic& o) const {
        unsigned long e = std::max(exp_, o.exp_);
        return Dyadic(scaled_to(e) + o.scaled_to(e), e);
    }

    Dyadic operator-(const Dyadic& o) const { return *this + (-o); }

    Dyadic operator*(const Dyadic& o) const { return Dyadic(mant_ * o.mant_, exp_ + o.exp_); }

    Dyadic half() const { return Dyadic(mant_, exp_ + 1); }

    static Dyadic midpoint(const Dyadic& a, const Dyadic& b) { return (a + b).half(); }

    int compare(const Dyadic& o) const {
        unsigned long e = std::max(exp_, o.exp_);
        return cmp(scaled_to(e), o.scaled_to(e));
    }

    bool operator<(const Dyadic& o) const { return compare(o) < 0; }
    bool operator<=(const Dyadic& o) const { return compare(o) <= 0; }
    bool operator>(const Dyadic& o) const { return compare(o) > 0; }
    bool operator>=(const Dyadic& o) const { return compare(o) >= 0; }
    bool operator==(const Dyadic& o) const { return compare(o) == 0; }
    bool operator!=(const Dyadic& o) const { return compare(o) != 0; }

    // Largest dyadic multiple of 2^-bits that is <= value (floor) / >= value (ceil).
    Dyadic floor_to(unsigned long bits) const {
        if (exp_ <= bits) return *this;
        mpz_class m;
        mpz_fdiv_q_2exp(m.get_mpz_t(), mant_.get_mpz_t(), exp_ - bits);
        return Dyadic(std::move(m), bits);
    }

    Dyadic ceil_to(unsigned long bits) const {
        if (exp_ <= bits) return *this;
        mpz_class m;
        mpz_cdiv_q_2exp(m.get_mpz_t(), mant_.get_mpz_t(), exp_ - bits);
        return Dyadic(std::move(m), bits);
    }

    std::string str() const { return to_mpq().get_str(); }

  private:
    void normalize() {
        if (mant_ == 0) {
            exp_ = 0;
            return;
        }
        unsigned long tz = static_cast<unsigned long>(mpz_scan1(mant_.get_mpz_t(), 0));
        unsigned long k = std::min(tz, exp_);
        if (k) {
            mpz_fdiv_q_2exp(mant_.get_mpz_t(), mant_.get_mpz_t(), k);
            exp_ -= k;
        }
    }

    mpz_class scaled_to(unsigned long e) const {
        mpz_class m = mant_;
        mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), e - exp_);
        return m;
    }

    mpz_class mant_;
    unsigned long exp_;
};

// Closed dyadic interval [lo, hi]; refinement never widens.
struct DyadicInterval {
    Dyadic lo, hi;

    DyadicInterval() = default;
    DyadicInterval(Dyadic l, Dyadic h) : lo(std::move(l)), hi(std::move(h)) {
        require(lo <= hi, errc::bad_interval, "dyadic interval endpoints out of order");
    }

    static DyadicInterval point(const Dyadic& v) { return DyadicInterval(v, v); }

    mpq_class width() const { return hi.to_mpq() - lo.to_mpq(); }
    Dyadic mid() const { return Dyadic::midpoint(lo, hi); }
    bool contains(mpq_class v) const {
        v.canonicalize();
        return lo.to_mpq() <= v && v <= hi.to_mpq();
    }
    bool is_point() const { return lo == hi; }

    DyadicInterval operator-() const { return DyadicInterval(-hi, -lo); }

    DyadicInterval operator+(const DyadicInterval& o) const { return DyadicInterval(lo + o.lo, hi + o.hi); }
    DyadicInterval operator-(const DyadicInterval& o) const { return *this + (-o); }

    DyadicInterval operator*(const DyadicInterval& o) const {
        Dyadic a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        Dyadic mn = std::min(std::min(a, b), std::min(c, d));
        Dyadic mx = std::max(std::max(a, b), std::max(c, d));
        return DyadicInterval(mn, mx);
    }

    // Outward rounding to granularity 2^-bits: caps mantissa growth in long
    // interval recurrences; adds at most 2^(1-bits) of width.
    DyadicInterval round_out(unsigned long bits) const {
        return DyadicInterval(lo.floor_to(bits), hi.ceil_to(bits));
    }
};

// Exact interval arithmetic over rationals (used where division is needed,
// e.g. certified linear algebra in the box enumerator).
struct RatInterval {
    mpq_class lo, hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(mpq_class l, mpq_class h) : lo(std::move(l)), hi(std::move(h)) {
        require(lo <= hi, errc::bad_interval, "rational interval endpoints out of order");
    }

    static RatInterval point(const mpq_class& v) { return RatInterval(v, v); }
    static RatInterval of(const DyadicInterval& d) { return RatInterval(d.lo.to_mpq(), d.hi.to_mpq()); }

    mpq_class width() const { return hi - lo; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool contains(mpq_class v) const {
        v.canonicalize();
        return lo <= v && v <= hi;
    }
    mpq_class mag() const { return std::max(mpq_class(abs(lo)), mpq_class(abs(hi))); }

    RatInterval operator-() const { return RatInterval(-hi, -lo); }
    RatInterval operator+(const RatInterval& o) const { return RatInterval(lo + o.lo, hi + o.hi); }
    RatInterval operator-(const RatInterval& o) const { return *this + (-o); }

    RatInterval operator*(const RatInterval& o) const {
        mpq_class a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return RatInterval(std::min(std::min(a, b), std::min(c, d)),
                           std::max(std::max(a, b), std::max(c, d)));
    }

    RatInterval operator*(const mpq_class& s) const {
        return s >= 0 ? RatInterval(lo * s, hi * s) : RatInterval(hi * s, lo * s);
    }

    // Division defined only when the divisor excludes zero.
    RatInterval operator/(const RatInterval& o) const {
        require(!o.contains_zero(), errc::internal, "rational interval division by zero-straddling interval");
        mpq_class a = lo / o.lo, b = lo / o.hi, c = hi / o.lo, d = hi / o.hi;
        return RatInterval(std::min(std::min(a, b), std::min(c, d)),
                           std::max(std::max(a, b), std::max(c, d)));
    }

    RatInterval hull(const RatInterval& o) const {
        return RatInterval(std::min(lo, o.lo), std::max(hi, o.hi));
    }

    // Strictly above/below a rational?
    bool above(const mpq_class& v) const { return lo > v; }
    bool below(const mpq_class& v) const { return hi < v; }
};

// Interval Horner evaluation of an integer polynomial on a dyadic interval.
inline DyadicInterval eval_interval(const std::vector<mpz_class>& ascending_coeffs,
                                    const DyadicInterval& x) {
    DyadicInterval acc = DyadicInterval::point(Dyadic(0));
    for (std::size_t i = ascending_coeffs.size(); i-- > 0;) {
        DyadicInterval c = DyadicInterval::point(Dyadic(ascending_coeffs[i]));
        acc = acc * x + c;
    }
    return acc;
}

}  // namespace pisot
