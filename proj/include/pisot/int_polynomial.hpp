#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pisot/errors.hpp"

namespace pisot {

// Dense univariate polynomial with arbitrary-precision integer coefficients,
// ascending degree order. The zero polynomial has an empty coefficient vector.
// All operations are exact; nothing in this type ever rounds.
class IntPolynomial {
  public:
    IntPolynomial() = default;

    IntPolynomial(std::initializer_list<long> coeffs) {
        for (long c : coeffs) c_.emplace_back(c);
        trim();
    }

    explicit IntPolynomial(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

    static IntPolynomial constant(const mpz_class& v) {
        IntPolynomial p;
        if (v != 0) p.c_.push_back(v);
        return p;
    }

    static IntPolynomial monomial(const mpz_class& coeff, std::size_t k) {
        IntPolynomial p;
        if (coeff != 0) {
            p.c_.assign(k + 1, mpz_class(0));
            p.c_[k] = coeff;
        }
        return p;
    }

    static IntPolynomial x() { return monomial(1, 1); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const mpz_class& coeff(std::size_t k) const {
        static const mpz_class zero(0);
        return k < c_.size() ? c_[k] : zero;
    }

    const std::vector<mpz_class>& coeffs() const { return c_; }

    const mpz_class& leading() const {
        require(!is_zero(), errc::zero_polynomial, "leading coefficient of zero polynomial");
        return c_.back();
    }

    bool is_monic() const { return !is_zero() && c_.back() == 1; }

    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }
    bool operator!=(const IntPolynomial& o) const { return !(*this == o); }

    IntPolynomial operator-() const {
        IntPolynomial r(*this);
        for (auto& v : r.c_) v = -v;
        return r;
    }

    IntPolynomial operator+(const IntPolynomial& o) const {
        std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), mpz_class(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return IntPolynomial(std::move(r));
    }

    IntPolynomial operator-(const IntPolynomial& o) const { return *this + (-o); }

    IntPolynomial operator*(const IntPolynomial& o) const {
        if (is_zero() || o.is_zero()) return IntPolynomial();
        std::vector<mpz_class> r(c_.size() + o.c_.size() - 1, mpz_class(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return IntPolynomial(std::move(r));
    }

    IntPolynomial operator*(const mpz_class& s) const {
        if (s == 0) return IntPolynomial();
        IntPolynomial r(*this);
        for (auto& v : r.c_) v *= s;
        return r;
    }

    IntPolynomial shifted(std::size_t k) const {  // multiply by x^k
        if (is_zero()) return IntPolynomial();
        std::vector<mpz_class> r(k, mpz_class(0));
        r.insert(r.end(), c_.begin(), c_.end());
        return IntPolynomial(std::move(r));
    }

    IntPolynomial derivative() const {
        if (c_.size() <= 1) return IntPolynomial();
        std::vector<mpz_class> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * mpz_class(static_cast<long>(i));
        return IntPolynomial(std::move(r));
    }

    mpz_class evaluate(const mpz_class& v) const {
        mpz_class acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * v + c_[i];
        return acc;
    }

    mpq_class evaluate(const mpq_class& v) const {
        mpq_class acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * v + mpq_class(c_[i]);
        return acc;
    }

    // Sign of p(n/d) without building the rational: sum c_k n^k d^(deg-k).
    int sign_at(const mpq_class& v) const {
        if (is_zero()) return 0;
        const mpz_class& n = v.get_num();
        const mpz_class& d = v.get_den();
        mpz_class acc(0), npow(1);
        std::vector<mpz_class> dp(c_.size());
        dp[c_.size() - 1] = 1;
        for (std::size_t i = c_.size() - 1; i-- > 0;) dp[i] = dp[i + 1] * d;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            acc += c_[i] * npow * dp[i];
            npow *= n;
        }
        return sgn(acc);
    }

    int sign_at_pos_inf() const { return is_zero() ? 0 : sgn(c_.back()); }
    int sign_at_neg_inf() const {
        if (is_zero()) return 0;
        int s = sgn(c_.back());
        return (degree() % 2 == 0) ? s : -s;
    }

    mpz_class content() const {
        mpz_class g(0);
        for (const auto& v : c_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            if (g == 1) break;
        }
        return g;  // 0 for the zero polynomial
    }

    // Divide by positive content; sign pattern of values is preserved.
    IntPolynomial primitive_part_same_sign() const {
        if (is_zero()) return IntPolynomial();
        mpz_class g = content();
        if (g == 1) return *this;
        IntPolynomial r(*this);
        for (auto& v : r.c_) v /= g;
        return r;
    }

    // Primitive with positive leading coefficient.
    IntPolynomial primitive_positive() const {
        IntPolynomial r = primitive_part_same_sign();
        if (!r.is_zero() && sgn(r.c_.back()) < 0) r = -r;
        return r;
    }

    // Coefficient reversal x^deg * p(1/x); requires p(0) != 0 to keep the degree.
    IntPolynomial reciprocal() const {
        IntPolynomial r(*this);
        std::reverse(r.c_.begin(), r.c_.end());
        r.trim();
        return r;
    }

    bool is_palindromic() const {
        for (std::size_t i = 0, j = c_.size(); i < j--; ++i)
            if (c_[i] != c_[j]) return false;
        return true;
    }

    // p(a/b * x) with denominators cleared: sum c_k a^k b^(deg-k) x^k.
    IntPolynomial scale_argument(const mpq_class& s) const {
        if (is_zero()) return IntPolynomial();
        const mpz_class& a = s.get_num();
        const mpz_class& b = s.get_den();
        std::vector<mpz_class> r(c_.size());
        mpz_class ap(1);
        std::vector<mpz_class> bp(c_.size());
        bp[c_.size() - 1] = 1;
        for (std::size_t i = c_.size() - 1; i-- > 0;) bp[i] = bp[i + 1] * b;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            r[i] = c_[i] * ap * bp[i];
            ap *= a;
        }
        return IntPolynomial(std::move(r));
    }

    // Exact quotient; fails on nonzero remainder. Divisor leading coeff must divide exactly.
    IntPolynomial divide_exact(const IntPolynomial& d) const {
        require(!d.is_zero(), errc::zero_polynomial, "division by zero polynomial");
        if (is_zero()) return IntPolynomial();
        require(degree() >= d.degree(), errc::internal, "divide_exact: degree underflow");
        std::vector<mpz_class> rem = c_;
        std::vector<mpz_class> q(static_cast<std::size_t>(degree() - d.degree()) + 1, mpz_class(0));
        for (int k = degree() - d.degree(); k >= 0; --k) {
            mpz_class top = rem[static_cast<std::size_t>(k + d.degree())];
            if (top == 0) continue;
            mpz_class qc, r;
            mpz_tdiv_qr(qc.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), d.leading().get_mpz_t());
            require(r == 0, errc::internal, "divide_exact: leading coefficient does not divide");
            q[static_cast<std::size_t>(k)] = qc;
            for (int i = 0; i <= d.degree(); ++i)
                rem[static_cast<std::size_t>(k + i)] -= qc * d.coeff(static_cast<std::size_t>(i));
        }
        for (const auto& v : rem) require(v == 0, errc::internal, "divide_exact: nonzero remainder");
        return IntPolynomial(std::move(q));
    }

    std::string to_string() const {  // ascending coefficient list, e.g. "[-1,-4,0,1]"
        std::ostringstream os;
        os << '[';
        if (is_zero()) os << '0';
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) os << ',';
            os << c_[i].get_str();
        }
        os << ']';
        return os.str();
    }

    static IntPolynomial parse(const std::string& text) {
        std::string s = text;
        auto strip = [](std::string& t) {
            while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
            while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
        };
        strip(s);
        require(s.size() >= 2 && s.front() == '[' && s.back() == ']', errc::parse_error,
                "polynomial text must be a bracketed coefficient list: " + text);
        s = s.substr(1, s.size() - 2);
        std::vector<mpz_class> coeffs;
        std::string tok;
        std::istringstream is(s);
        while (std::getline(is, tok, ',')) {
            strip(tok);
            require(!tok.empty(), errc::parse_error, "empty coefficient in: " + text);
            try {
                coeffs.emplace_back(tok);
            } catch (const std::invalid_argument&) {
                fail(errc::parse_error, "bad integer '" + tok + "' in: " + text);
            }
        }
        require(!coeffs.empty(), errc::parse_error, "empty coefficient list: " + text);
        return IntPolynomial(std::move(coeffs));
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<mpz_class> c_;
};

namespace detail {

// Pseudo-remainder of a by b, adjusted so the result equals the true remainder
// up to a POSITIVE rational factor (required by Sturm-style sign reasoning).
inline IntPolynomial signed_prem(const IntPolynomial& a, const IntPolynomial& b) {
    require(!b.is_zero(), errc::zero_polynomial, "signed_prem by zero");
    IntPolynomial r = a;
    const mpz_class& lb = b.leading();
    long flips = 0;  // parity of multiplications by lb
    while (!r.is_zero() && r.degree() >= b.degree()) {
        std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
        mpz_class lr = r.leading();
        r = r * lb - b.shifted(shift) * lr;
        ++flips;
        // degree strictly drops each pass; loop terminates
    }
    if (sgn(lb) < 0 && (flips % 2) == 1) r = -r;
    return r.primitive_part_same_sign();
}

}  // namespace detail

// Primitive gcd with positive leading coefficient (Euclidean remainders with
// content reduction; degrees here are small so coefficient growth is a non-issue).
inline IntPolynomial poly_gcd(IntPolynomial a, IntPolynomial b) {
    if (a.is_zero()) return b.primitive_positive();
    if (b.is_zero()) return a.primitive_positive();
    mpz_class ca = a.content(), cb = b.content(), cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    a = a.primitive_positive();
    b = b.primitive_positive();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPolynomial r = detail::signed_prem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    IntPolynomial g = a.primitive_positive();
    return g * cg;
}

// p / gcd(p, p'), primitive with positive leading coefficient: same root set, all simple.
inline IntPolynomial squarefree_part(const IntPolynomial& p) {
    require(!p.is_zero(), errc::zero_polynomial, "squarefree_part of zero polynomial");
    if (p.degree() == 0) return IntPolynomial{1};
    IntPolynomial g = poly_gcd(p, p.derivative());
    IntPolynomial q = p.divide_exact(g.primitive_positive());
    return q.primitive_positive();
}

inline bool is_squarefree(const IntPolynomial& p) {
    if (p.is_zero()) return false;
    if (p.degree() <= 1) return true;
    return poly_gcd(p, p.derivative()).degree() == 0;
}

// Resultant via Sylvester matrix with Bareiss fraction-free elimination.
// Sizes here are tiny (deg <= ~12), so O(n^3) exact elimination is plenty.
inline mpz_class resultant(const IntPolynomial& a, const IntPolynomial& b) {
    require(!a.is_zero() && !b.is_zero(), errc::zero_polynomial, "resultant of zero polynomial");
    int m = a.degree(), n = b.degree();
    if (m == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), a.coeff(0).get_mpz_t(), static_cast<unsigned long>(n));
        return r;
    }
    if (n == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), b.coeff(0).get_mpz_t(), static_cast<unsigned long>(m));
        return r;
    }
    std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size, mpz_class(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] = a.coeff(static_cast<std::size_t>(m - j));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + j)] = b.coeff(static_cast<std::size_t>(n - j));

    // Bareiss with row-swap sign tracking; zero pivot column means det = 0.
    mpz_class prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < size; ++k) {
        if (s[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < size && s[piv][k] == 0) ++piv;
            if (piv == size) return mpz_class(0);
            std::swap(s[k], s[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < size; ++i) {
            for (std::size_t j = k + 1; j < size; ++j) {
                mpz_class num = s[i][j] * s[k][k] - s[i][k] * s[k][j];
                mpz_class q, r;
                mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                require(r == 0, errc::internal, "Bareiss division not exact");
                s[i][j] = q;
            }
            s[i][k] = 0;
        }
        prev = s[k][k];
    }
    return sign > 0 ? s[size - 1][size - 1] : mpz_class(-s[size - 1][size - 1]);
}

inline mpz_class discriminant(const IntPolynomial& p) {
    require(p.degree() >= 1, errc::zero_polynomial, "discriminant needs degree >= 1");
    if (p.degree() == 1) return mpz_class(1);
    mpz_class res = resultant(p, p.derivative());
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), res.get_mpz_t(), p.leading().get_mpz_t());
    require(r == 0, errc::internal, "discriminant: resultant not divisible by lc");
    long d = p.degree();
    if (((d * (d - 1)) / 2) % 2 == 1) q = -q;
    return q;
}

// C_k with C_0 = 2, C_1 = y, C_{k+1} = y*C_k - C_{k-1}; so x^k + x^{-k} = C_k(x + 1/x).
inline IntPolynomial chebyshev_c(std::size_t k) {
    if (k == 0) return IntPolynomial{2};
    IntPolynomial prev{2}, cur = IntPolynomial::x();
    for (std::size_t i = 1; i < k; ++i) {
        IntPolynomial next = IntPolynomial::x() * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// x^f * h(x + 1/x): expands to sum h_k x^(f-k) (x^2+1)^k, a polynomial for f >= deg h.
inline IntPolynomial expand_trace_substitution(const IntPolynomial& h, std::size_t f) {
    require(static_cast<int>(f) >= h.degree(), errc::internal, "trace substitution: f < deg h");
    IntPolynomial acc;
    IntPolynomial x2p1{1, 0, 1};
    IntPolynomial pw{1};  // (x^2+1)^k
    for (std::size_t k = 0; k <= static_cast<std::size_t>(std::max(h.degree(), 0)); ++k) {
        if (h.coeff(k) != 0) acc = acc + (pw * h.coeff(k)).shifted(f - k);
        pw = pw * x2p1;
    }
    return acc;
}

// Inverse of the above: for palindromic P of even degree 2f, the unique h with
// P(x) = x^f h(x + 1/x). From P/x^f = c_f + sum_{k>=1} c_{f+k} (x^k + x^{-k}).
inline IntPolynomial trace_rewrite(const IntPolynomial& p) {
    require(!p.is_zero() && p.degree() % 2 == 0 && p.is_palindromic(), errc::internal,
            "trace_rewrite expects a palindromic polynomial of even degree");
    std::size_t f = static_cast<std::size_t>(p.degree()) / 2;
    IntPolynomial h = IntPolynomial::constant(p.coeff(f));
    for (std::size_t k = 1; k <= f; ++k) h = h + chebyshev_c(k) * p.coeff(f + k);
    require(expand_trace_substitution(h, f) == p, errc::internal, "trace_rewrite residual not zero");
    return h;
}

}  // namespace pisot
