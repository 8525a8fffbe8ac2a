#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "pisot/dyadic.hpp"
#include "pisot/errors.hpp"
#include "pisot/int_polynomial.hpp"
#include "pisot/irreducibility.hpp"
#include "pisot/sturm.hpp"
#include "pisot/unit_disk.hpp"

namespace pisot {

enum class MaximalityCertificate { QuadraticRule, SquarefreeDisc, PowerBasisAssumed };

inline const char* certificate_name(MaximalityCertificate c) {
    switch (c) {
        case MaximalityCertificate::QuadraticRule: return "QuadraticRule";
        case MaximalityCertificate::SquarefreeDisc: return "SquarefreeDisc";
        case MaximalityCertificate::PowerBasisAssumed: return "PowerBasisAssumed";
    }
    return "?";
}

enum class IrreducibilityPolicy { Require, Assume };

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class FieldElement;

// K = Q(theta) with a distinguished real embedding sigma_1 = the largest real
// root of the defining polynomial. Embeddings are ordered sigma_1..sigma_r
// real (sigma_2.. descending below sigma_1), then s complex pairs. Elements
// carry integer coordinates over the installed integral basis.
class NumberField : public std::enable_shared_from_this<NumberField> {
  public:
    static FieldPtr make(const IntPolynomial& defining,
                         IrreducibilityPolicy policy = IrreducibilityPolicy::Require);
    static FieldPtr quadratic(const mpz_class& m);
    static FieldPtr rationals() { return make(IntPolynomial{0, 1}); }

    int degree() const { return degree_; }
    int real_embeddings() const { return r_; }
    int complex_pairs() const { return s_; }
    bool totally_real() const { return s_ == 0; }
    const IntPolynomial& defining_poly() const { return defining_; }
    const mpz_class& discriminant() const { return disc_; }
    MaximalityCertificate certificate() const { return cert_; }
    bool irreducibility_assumed() const { return irreducibility_assumed_; }
    const std::string& basis_label() const { return basis_label_; }
    const std::string& spec_string() const { return spec_string_; }
    const std::optional<mpz_class>& quadratic_m() const { return quad_m_; }

    // basis over the power basis: row i of basis_num / basis_den
    const std::vector<std::vector<mpz_class>>& basis_numerators() const { return basis_num_; }
    const mpz_class& basis_denominator() const { return basis_den_; }

    FieldElement element(std::vector<mpz_class> coords) const;
    FieldElement zero() const;
    FieldElement one() const;
    FieldElement integer(const mpz_class& n) const;
    FieldElement generator() const;  // theta
    FieldElement from_power_coords(const std::vector<mpq_class>& v) const;

    bool same_field(const NumberField& o) const {
        return this == &o || (defining_ == o.defining_ && basis_num_ == o.basis_num_ &&
                              basis_den_ == o.basis_den_);
    }

    // enclosure of the j-th real embedding image of theta (j in [1, r])
    DyadicInterval theta_enclosure(int j, const mpq_class& eps) const {
        require(j >= 1 && j <= r_, errc::unsupported, "theta_enclosure: not a real embedding index");
        const DyadicInterval& base = real_roots_[static_cast<std::size_t>(sigma_real_index(j))];
        return refine_root(chain_, base, eps);
    }

    // index into the ascending real-root list for real embedding j
    int sigma_real_index(int j) const {
        // sigma_1 = largest; sigma_2.. = remaining, descending
        return r_ - j;
    }

    // Certified (Re, Im, |z|^2) enclosures for the unique complex root pair
    // with positive imaginary part, derived from real-root enclosures via the
    // symmetric functions of the roots. Only s == 1 is supported.
    struct PairBox {
        RatInterval re, im, mod2;
    };
    PairBox complex_pair_box(const mpq_class& eps) const;

    // multiplication table access: coords of e_i * e_j
    const std::vector<mpz_class>& basis_product(std::size_t i, std::size_t j) const {
        return mult_[i * static_cast<std::size_t>(degree_) + j];
    }

    // power-basis coordinate vector (rationals) of an element
    std::vector<mpq_class> to_power_coords(const std::vector<mpz_class>& coords) const {
        std::vector<mpz_class> acc(static_cast<std::size_t>(degree_), mpz_class(0));
        for (std::size_t i = 0; i < acc.size(); ++i) {
            if (coords[i] == 0) continue;
            for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += coords[i] * basis_num_[i][k];
        }
        std::vector<mpq_class> v(acc.size());
        for (std::size_t k = 0; k < acc.size(); ++k) {
            v[k] = mpq_class(acc[k], basis_den_);
            v[k].canonicalize();
        }
        return v;
    }

  private:
    NumberField() = default;
    void install_basis_and_tables(std::vector<std::vector<mpz_class>> basis_num, mpz_class basis_den);
    static FieldPtr finish_construction(std::unique_ptr<NumberField> f);

    friend class FieldElement;

    IntPolynomial defining_;
    int degree_ = 0, r_ = 0, s_ = 0;
    mpz_class disc_;
    MaximalityCertificate cert_ = MaximalityCertificate::PowerBasisAssumed;
    bool irreducibility_assumed_ = false;
    std::string basis_label_, spec_string_;
    std::optional<mpz_class> quad_m_;

    SturmChain chain_ = SturmChain::build(IntPolynomial{0, 1});
    std::vector<DyadicInterval> real_roots_;  // ascending, width <= 2^-32, 0-separated

    std::vector<std::vector<mpz_class>> basis_num_;
    mpz_class basis_den_ = 1;
    std::vector<std::vector<mpq_class>> power_to_basis_;     // rational inverse transform
    std::vector<std::vector<mpz_class>> theta_powers_;       // theta^k over power basis, k < 2d-1
    std::vector<std::vector<mpz_class>> mult_;               // flattened d*d table
};

class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(FieldPtr field, std::vector<mpz_class> coords)
        : field_(std::move(field)), coords_(std::move(coords)) {
        require(static_cast<int>(coords_.size()) == field_->degree(), errc::internal,
                "element coordinate count mismatch");
    }

    const FieldPtr& field() const { return field_; }
    const std::vector<mpz_class>& coords() const { return coords_; }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (c != 0) return false;
        return true;
    }

    // constant rational elements are exactly (c, 0, ..., 0): e_1 = 1 always
    std::optional<mpz_class> constant_value() const {
        for (std::size_t i = 1; i < coords_.size(); ++i)
            if (coords_[i] != 0) return std::nullopt;
        return coords_[0];
    }

    bool operator==(const FieldElement& o) const {
        return field_->same_field(*o.field_) && coords_ == o.coords_;
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement operator-() const {
        std::vector<mpz_class> c(coords_);
        for (auto& v : c) v = -v;
        return FieldElement(field_, std::move(c));
    }

    FieldElement operator+(const FieldElement& o) const {
        check_same(o);
        std::vector<mpz_class> c(coords_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
        return FieldElement(field_, std::move(c));
    }

    FieldElement operator-(const FieldElement& o) const { return *this + (-o); }

    FieldElement operator*(const FieldElement& o) const {
        check_same(o);
        std::size_t d = coords_.size();
        std::vector<mpz_class> c(d, mpz_class(0));
        for (std::size_t i = 0; i < d; ++i) {
            if (coords_[i] == 0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                if (o.coords_[j] == 0) continue;
                mpz_class scale = coords_[i] * o.coords_[j];
                const auto& prod = field_->basis_product(i, j);
                for (std::size_t k = 0; k < d; ++k) c[k] += scale * prod[k];
            }
        }
        return FieldElement(field_, std::move(c));
    }

    FieldElement operator*(const mpz_class& s) const {
        std::vector<mpz_class> c(coords_);
        for (auto& v : c) v *= s;
        return FieldElement(field_, std::move(c));
    }

  private:
    void check_same(const FieldElement& o) const {
        require(field_ && o.field_ && field_->same_field(*o.field_), errc::field_mismatch,
                "elements belong to different fields");
    }

    FieldPtr field_;
    std::vector<mpz_class> coords_;
};

inline FieldElement NumberField::element(std::vector<mpz_class> coords) const {
    return FieldElement(shared_from_this(), std::move(coords));
}

inline FieldElement NumberField::zero() const {
    return element(std::vector<mpz_class>(static_cast<std::size_t>(degree_), mpz_class(0)));
}

inline FieldElement NumberField::one() const { return integer(1); }

inline FieldElement NumberField::integer(const mpz_class& n) const {
    std::vector<mpz_class> c(static_cast<std::size_t>(degree_), mpz_class(0));
    c[0] = n;
    return element(std::move(c));
}

inline FieldElement NumberField::from_power_coords(const std::vector<mpq_class>& v) const {
    require(static_cast<int>(v.size()) == degree_, errc::internal, "power coordinate count mismatch");
    std::vector<mpz_class> c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        mpq_class acc(0);
        for (std::size_t k = 0; k < v.size(); ++k) acc += power_to_basis_[i][k] * v[k];
        acc.canonicalize();
        require(acc.get_den() == 1, errc::internal,
                "element is not integral over the installed basis");
        c[i] = acc.get_num();
    }
    return element(std::move(c));
}

inline FieldElement NumberField::generator() const {
    std::vector<mpq_class> v(static_cast<std::size_t>(degree_), mpq_class(0));
    if (degree_ == 1) {
        // theta = root of the degree-1 defining polynomial x - c
        v[0] = mpq_class(-defining_.coeff(0));
    } else {
        v[1] = 1;
    }
    return from_power_coords(v);
}

// ---------------------------------------------------------------------------
// construction

inline void NumberField::install_basis_and_tables(std::vector<std::vector<mpz_class>> basis_num,
                                                  mpz_class basis_den) {
    basis_num_ = std::move(basis_num);
    basis_den_ = std::move(basis_den);
    std::size_t d = static_cast<std::size_t>(degree_);

    // theta^k over the power basis for k <= 2d-2
    theta_powers_.assign(2 * d - 1, std::vector<mpz_class>(d, mpz_class(0)));
    for (std::size_t k = 0; k < d; ++k) theta_powers_[k][k] = 1;
    for (std::size_t k = d; k + 1 <= 2 * d - 1; ++k) {
        // theta^k = theta * theta^(k-1), reduced by the monic defining polynomial
        const auto& prev = theta_powers_[k - 1];
        std::vector<mpz_class> cur(d, mpz_class(0));
        for (std::size_t i = 0; i + 1 < d; ++i) cur[i + 1] = prev[i];
        const mpz_class& top = prev[d - 1];
        if (top != 0)
            for (std::size_t i = 0; i < d; ++i) cur[i] -= top * defining_.coeff(i);
        theta_powers_[k] = std::move(cur);
    }

    // invert the basis matrix over Q (solve for power->basis transform)
    {
        std::vector<std::vector<mpq_class>> aug(d, std::vector<mpq_class>(2 * d, mpq_class(0)));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t k = 0; k < d; ++k) {
                aug[i][k] = mpq_class(basis_num_[i][k], basis_den_);
                aug[i][k].canonicalize();
            }
            aug[i][d + i] = 1;
        }
        for (std::size_t col = 0; col < d; ++col) {
            std::size_t piv = col;
            while (piv < d && aug[piv][col] == 0) ++piv;
            require(piv < d, errc::internal, "integral basis matrix is singular");
            std::swap(aug[col], aug[piv]);
            mpq_class inv = 1 / aug[col][col];
            for (auto& v : aug[col]) v *= inv;
            for (std::size_t row = 0; row < d; ++row) {
                if (row == col || aug[row][col] == 0) continue;
                mpq_class f = aug[row][col];
                for (std::size_t k = col; k < 2 * d; ++k) aug[row][k] -= f * aug[col][k];
            }
        }
        // element basis coords c relate to power coords v by v = B^T c, so
        // c = (B^T)^{-1} v; store rows of (B^T)^{-1} = columns of B^{-1}
        power_to_basis_.assign(d, std::vector<mpq_class>(d, mpq_class(0)));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k) {
                power_to_basis_[i][k] = aug[k][d + i];
                power_to_basis_[i][k].canonicalize();
            }
    }

    // basis product table; integrality certifies the basis spans a ring
    mult_.assign(d * d, {});
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<mpq_class> w(2 * d - 1, mpq_class(0));
            for (std::size_t a = 0; a < d; ++a) {
                if (basis_num_[i][a] == 0) continue;
                for (std::size_t b = 0; b < d; ++b) {
                    if (basis_num_[j][b] == 0) continue;
                    mpq_class term(basis_num_[i][a] * basis_num_[j][b], basis_den_ * basis_den_);
                    term.canonicalize();
                    w[a + b] += term;
                }
            }
            // reduce powers >= d
            std::vector<mpq_class> red(d, mpq_class(0));
            for (std::size_t k = 0; k < 2 * d - 1; ++k) {
                if (w[k] == 0) continue;
                for (std::size_t t = 0; t < d; ++t) red[t] += w[k] * theta_powers_[k][t];
            }
            std::vector<mpz_class> coords(d);
            for (std::size_t t = 0; t < d; ++t) {
                mpq_class acc(0);
                for (std::size_t k = 0; k < d; ++k) acc += power_to_basis_[t][k] * red[k];
                acc.canonicalize();
                require(acc.get_den() == 1, errc::internal,
                        "basis products are not integral: basis does not span an order");
                coords[t] = acc.get_num();
            }
            mult_[i * d + j] = std::move(coords);
        }
    }
}

inline FieldPtr NumberField::finish_construction(std::unique_ptr<NumberField> f) {
    return FieldPtr(f.release());
}

inline FieldPtr NumberField::make(const IntPolynomial& defining, IrreducibilityPolicy policy) {
    require(defining.is_monic(), errc::not_monic, "defining polynomial must be monic");
    int d = defining.degree();
    require(d >= 1, errc::not_monic, "defining polynomial must have degree >= 1");

    auto f = std::unique_ptr<NumberField>(new NumberField());
    f->defining_ = defining;
    f->degree_ = d;

    if (d >= 2) {
        auto rep = certify_irreducible(defining);
        if (rep.verdict == Irreducibility::Reducible)
            fail(errc::reducible, "defining polynomial is reducible (" + std::string(rep.method) + ")");
        if (rep.verdict == Irreducibility::Unknown) {
            if (policy == IrreducibilityPolicy::Require)
                fail(errc::irreducibility_unknown,
                     "irreducibility not certified at configured effort; pass the assume flag to proceed");
            f->irreducibility_assumed_ = true;
        }
    }

    f->chain_ = SturmChain::build(defining);
    auto roots = isolate_real_roots(defining);
    require(!roots.empty(), errc::not_real_field, "defining polynomial has no real root");
    f->r_ = static_cast<int>(roots.size());
    require((d - f->r_) % 2 == 0, errc::internal, "inconsistent signature");
    f->s_ = (d - f->r_) / 2;
    const mpq_class base_width = mpq_class(1) / mpq_class(mpz_class(1) << 32);
    for (auto& iv : roots) {
        DyadicInterval fine = refine_root(f->chain_, iv, base_width);
        // separate the enclosure from zero unless the root is zero itself
        while (!fine.is_point() && fine.lo.sign() < 0 && fine.hi.sign() > 0)
            fine = refine_root(f->chain_, fine, fine.width() / 4);
        f->real_roots_.push_back(fine);
    }
    f->disc_ = ::pisot::discriminant(defining);

    // integral basis
    std::size_t ds = static_cast<std::size_t>(d);
    std::vector<std::vector<mpz_class>> basis(ds, std::vector<mpz_class>(ds, mpz_class(0)));
    mpz_class den = 1;
    for (std::size_t i = 0; i < ds; ++i) basis[i][i] = 1;  // power basis default
    f->cert_ = MaximalityCertificate::PowerBasisAssumed;
    f->basis_label_ = "power";

    auto try_full_factor = [](const mpz_class& n, std::vector<std::pair<mpz_class, int>>& out) {
        mpz_class v = abs(n);
        if (v == 0) return false;
        for (mpz_class p = 2; p * p <= v && p < 1000000; ++p) {
            if (v % p == 0) {
                int e = 0;
                while (v % p == 0) {
                    v /= p;
                    ++e;
                }
                out.emplace_back(p, e);
            }
        }
        if (v > 1) {
            if (v >= mpz_class(1000000) * mpz_class(1000000)) return false;  // cofactor not certified prime
            out.emplace_back(v, 1);
        }
        return true;
    };

    if (d == 1) {
        f->cert_ = MaximalityCertificate::SquarefreeDisc;
        f->basis_label_ = "Z";
    } else if (d == 2) {
        // x^2 + bx + c: disc D = b^2 - 4c = f0^2 * m with m squarefree
        mpz_class D = f->disc_;
        std::vector<std::pair<mpz_class, int>> fac;
        if (D > 0 && try_full_factor(D, fac)) {
            mpz_class m = 1, f0 = 1;
            for (auto& [p, e] : fac) {
                for (int i = 0; i + 1 < e; i += 2) f0 *= p;
                if (e % 2 == 1) m *= p;
            }
            // theta = (-b + f0*sqrt(m))/2, so sqrt(m) = (2*theta + b)/f0
            const mpz_class& b = defining.coeff(1);
            bool m1mod4 = (m % 4 == 1);
            // basis rows over {1, theta} with common denominator
            if (!m1mod4) {
                // omega = sqrt(m) = (b + 2 theta)/f0
                den = f0;
                basis[0] = {f0, 0};
                basis[1] = {b, 2};
                f->basis_label_ = "{1, sqrt(m)}";
            } else {
                // omega = (1 + sqrt(m))/2 = (f0 + b + 2 theta)/(2 f0)
                den = 2 * f0;
                basis[0] = {den, 0};
                basis[1] = {f0 + b, 2};
                f->basis_label_ = "{1, (1+sqrt(m))/2}";
            }
            f->cert_ = MaximalityCertificate::QuadraticRule;
            f->quad_m_ = m;
        }
    } else {
        std::vector<std::pair<mpz_class, int>> fac;
        if (f->disc_ != 0 && try_full_factor(f->disc_, fac)) {
            bool squarefree = true;
            for (auto& [p, e] : fac)
                if (e >= 2) squarefree = false;
            if (squarefree) {
                f->cert_ = MaximalityCertificate::SquarefreeDisc;
                f->basis_label_ = "power (maximal: squarefree discriminant)";
            }
        }
    }

    f->install_basis_and_tables(std::move(basis), den);
    f->spec_string_ = "poly:" + defining.to_string();
    if (f->quad_m_ && defining.coeff(1) == 0 && defining.coeff(0) == -*f->quad_m_)
        f->spec_string_ = "sqrt:" + f->quad_m_->get_str();
    return finish_construction(std::move(f));
}

inline FieldPtr NumberField::quadratic(const mpz_class& m) {
    require(m >= 2, errc::not_squarefree, "quadratic field parameter must be >= 2");
    // squarefree certification by trial division (desk-scale inputs)
    {
        mpz_class v = m;
        for (mpz_class p = 2; p * p <= v; ++p) {
            require(p < 2000000, errc::unsupported, "m too large to certify squarefree");
            if (v % (p * p) == 0) fail(errc::not_squarefree, "m = " + m.get_str() + " is not squarefree");
            while (v % p == 0) v /= p;
        }
    }
    std::vector<mpz_class> c = {-m, 0, 1};
    FieldPtr f = make(IntPolynomial(std::move(c)), IrreducibilityPolicy::Require);
    require(f->certificate() == MaximalityCertificate::QuadraticRule, errc::internal,
            "quadratic rule failed to install");
    return f;
}

// ---------------------------------------------------------------------------
// embeddings and exact decisions

// exact rational interval for sigma_j(x), j a real embedding, width <= eps
inline RatInterval sigma_interval(const FieldElement& x, int j, const mpq_class& eps) {
    const NumberField& K = *x.field();
    require(j >= 1 && j <= K.real_embeddings(), errc::unsupported,
            "sigma_interval needs a real embedding index");
    if (auto c = x.constant_value()) return RatInterval::point(mpq_class(*c));
    std::vector<mpq_class> v = K.to_power_coords(x.coords());
    // common denominator so Horner stays dyadic
    mpz_class den = 1;
    for (const auto& q : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<mpz_class> num(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) num[i] = mpq_class(v[i] * den).get_num();

    mpq_class theta_eps = eps / 4;
    for (int rounds = 0;; ++rounds) {
        DyadicInterval th = K.theta_enclosure(j, theta_eps);
        DyadicInterval val = eval_interval(num, th);
        RatInterval out(val.lo.to_mpq() / mpq_class(den), val.hi.to_mpq() / mpq_class(den));
        if (out.width() <= eps) return out;
        theta_eps /= 16;
        require(rounds < 64, errc::internal, "sigma_interval failed to converge");
    }
}

inline NumberField::PairBox NumberField::complex_pair_box(const mpq_class& eps) const {
    require(s_ == 1, errc::unsupported,
            "complex enclosures are derived only for signatures with one complex pair");
    // Re z = (-a_{d-1} - sum of real roots)/2 ; |z|^2 = (-1)^d a_0 / prod(real roots)
    mpq_class theta_eps = eps / 16;
    for (int rounds = 0;; ++rounds) {
        std::vector<RatInterval> rr;
        bool zero_straddle = false;
        for (int j = 1; j <= r_; ++j) {
            DyadicInterval t = theta_enclosure(j, theta_eps);
            RatInterval iv = RatInterval::of(t);
            if (iv.contains_zero()) zero_straddle = true;
            rr.push_back(iv);
        }
        if (!zero_straddle) {
            RatInterval sum = RatInterval::point(0), prod = RatInterval::point(1);
            for (const auto& iv : rr) {
                sum = sum + iv;
                prod = prod * iv;
            }
            mpq_class trace(-defining_.coeff(static_cast<std::size_t>(degree_ - 1)));
            RatInterval re = (RatInterval::point(trace) - sum) * mpq_class(1, 2);
            mpq_class a0((degree_ % 2 == 0) ? defining_.coeff(0) : -defining_.coeff(0));
            RatInterval mod2 = RatInterval::point(a0) / prod;
            RatInterval im2 = mod2 - re * re;
            if (im2.lo > 0) {
                // certified interval square root (positive branch); precision
                // scales with the round so the loop can always converge
                unsigned long bits = 96 + 16UL * static_cast<unsigned long>(rounds);
                auto sqrt_bounds = [bits](const mpq_class& q, bool upper) {
                    mpz_class scaled = q.get_num() * q.get_den();
                    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * bits);
                    mpz_class root;
                    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
                    if (upper) root += 1;
                    mpz_class scale_den = q.get_den();
                    mpz_mul_2exp(scale_den.get_mpz_t(), scale_den.get_mpz_t(), bits);
                    mpq_class r(root, scale_den);
                    r.canonicalize();
                    return r;
                };
                RatInterval im(sqrt_bounds(im2.lo, false), sqrt_bounds(im2.hi, true));
                if (re.width() <= eps && im.width() <= eps && mod2.width() <= eps)
                    return PairBox{re, im, mod2};
            }
        }
        theta_eps /= 16;
        require(rounds < 64, errc::internal, "complex_pair_box failed to converge");
    }
}

// (Re, Im, |.|^2) enclosures of sigma at the complex pair for an element
struct ComplexEnclosure {
    RatInterval re, im, mod2;
};

inline ComplexEnclosure sigma_complex(const FieldElement& x, const mpq_class& eps) {
    const NumberField& K = *x.field();
    require(K.complex_pairs() == 1, errc::unsupported,
            "complex embedding enclosures supported for one complex pair only");
    if (auto c = x.constant_value()) {
        RatInterval cc = RatInterval::point(mpq_class(*c));
        return {cc, RatInterval::point(0), cc * cc};
    }
    std::vector<mpq_class> v = K.to_power_coords(x.coords());
    mpq_class box_eps = eps / 8;
    for (int rounds = 0;; ++rounds) {
        auto zb = K.complex_pair_box(box_eps);
        RatInterval re = RatInterval::point(0), im = RatInterval::point(0);
        for (std::size_t i = v.size(); i-- > 0;) {
            // (re + i*im) * z + v_i
            RatInterval nre = re * zb.re - im * zb.im + RatInterval::point(v[i]);
            RatInterval nim = re * zb.im + im * zb.re;
            re = nre;
            im = nim;
        }
        RatInterval mod2 = re * re + im * im;
        if (re.width() <= eps && im.width() <= eps && mod2.width() <= eps) return {re, im, mod2};
        box_eps /= 16;
        require(rounds < 64, errc::internal, "sigma_complex failed to converge");
    }
}

inline FieldElement pow(const FieldElement& x, unsigned long e) {
    FieldElement acc = x.field()->one();
    FieldElement base = x;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

// Enclosure of one embedding image with dyadic endpoints, width <= eps.
// For the complex pair, carries (Re, Im, |.|^2) boxes.
struct CertifiedInterval {
    int embedding = 1;
    bool complex_pair = false;
    DyadicInterval interval;        // real embeddings
    DyadicInterval re, im, mod2;    // complex pair
};

namespace detail {

inline DyadicInterval outward_dyadic(const RatInterval& iv, const mpq_class& margin) {
    // snap rational endpoints outward onto the dyadic grid within the margin
    unsigned long bits = 8;
    mpq_class grid(1, 1L << 8);
    while (grid > margin) {
        bits += 8;
        grid /= 256;
    }
    auto snap = [bits](const mpq_class& v, bool up) {
        mpz_class scaled = v.get_num();
        mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), bits);
        mpz_class m;
        if (up)
            mpz_cdiv_q(m.get_mpz_t(), scaled.get_mpz_t(), v.get_den().get_mpz_t());
        else
            mpz_fdiv_q(m.get_mpz_t(), scaled.get_mpz_t(), v.get_den().get_mpz_t());
        return Dyadic(m, bits);
    };
    return DyadicInterval(snap(iv.lo, false), snap(iv.hi, true));
}

}  // namespace detail

inline CertifiedInterval embed_interval(const FieldElement& x, int j, const mpq_class& eps) {
    require(eps > 0, errc::bad_interval, "embed_interval needs a positive width");
    const NumberField& K = *x.field();
    CertifiedInterval out;
    out.embedding = j;
    if (j >= 1 && j <= K.real_embeddings()) {
        RatInterval iv = sigma_interval(x, j, eps / 2);
        out.interval = detail::outward_dyadic(iv, eps / 4);
        return out;
    }
    require(j == K.real_embeddings() + 1 && K.complex_pairs() == 1, errc::unsupported,
            "embed_interval: no such embedding index");
    out.complex_pair = true;
    ComplexEnclosure z = sigma_complex(x, eps / 2);
    out.re = detail::outward_dyadic(z.re, eps / 4);
    out.im = detail::outward_dyadic(z.im, eps / 4);
    out.mod2 = detail::outward_dyadic(z.mod2, eps / 4);
    return out;
}

// Window over one real embedding with exact endpoint semantics.
struct Window {
    std::optional<mpq_class> lo, hi;
    bool lo_open = true, hi_open = true;

    static Window open(const mpq_class& a, const mpq_class& b) { return {a, b, true, true}; }
    static Window half_open_upper(const mpq_class& a, const mpq_class& b) { return {a, b, true, false}; }
    static Window above(const mpq_class& a) { return {a, std::nullopt, true, true}; }
    static Window below(const mpq_class& b) { return {std::nullopt, b, true, true}; }
    bool bounded() const { return lo.has_value() && hi.has_value(); }

    bool admits(const mpq_class& v) const {
        if (lo && (v < *lo || (v == *lo && lo_open))) return false;
        if (hi && (v > *hi || (v == *hi && hi_open))) return false;
        return true;
    }
};

// Exact decision: does sigma_j(x) lie in the window? Terminates because
// sigma_j is injective on K, so equality with a rational endpoint happens
// only for constant elements, which are compared exactly up front.
inline bool decide_position(const FieldElement& x, int j, const Window& w) {
    if (auto c = x.constant_value()) return w.admits(mpq_class(*c));
    mpq_class eps(1, 1L << 16);
    for (int iter = 0;; ++iter) {
        RatInterval iv = sigma_interval(x, j, eps);
        bool lo_clear = !w.lo || iv.lo > *w.lo || iv.hi < *w.lo;
        bool hi_clear = !w.hi || iv.lo > *w.hi || iv.hi < *w.hi;
        if (lo_clear && hi_clear) {
            if (w.lo && iv.hi < *w.lo) return false;
            if (w.hi && iv.lo > *w.hi) return false;
            return true;
        }
        eps /= 256;
        require(iter < 8192, errc::internal, "decide_position failed to separate (injectivity violated?)");
    }
}

inline int sigma_sign(const FieldElement& x, int j) {
    if (auto c = x.constant_value()) return sgn(*c);
    mpq_class eps(1, 1L << 16);
    for (int iter = 0;; ++iter) {
        RatInterval iv = sigma_interval(x, j, eps);
        if (iv.lo > 0) return 1;
        if (iv.hi < 0) return -1;
        eps /= 256;
        require(iter < 8192, errc::internal, "sigma_sign failed to separate (element not nonzero?)");
    }
}

// total order on elements by sigma_1 value (exactly decidable)
inline int compare_sigma1(const FieldElement& x, const FieldElement& y) {
    if (x.coords() == y.coords()) return 0;
    return sigma_sign(x - y, 1);
}

inline bool sigma1_less(const FieldElement& x, const FieldElement& y) {
    return compare_sigma1(x, y) < 0;
}

// ---------------------------------------------------------------------------
// characteristic / minimal polynomials

inline IntPolynomial charpoly_of(const FieldElement& x) {
    const NumberField& K = *x.field();
    std::size_t d = static_cast<std::size_t>(K.degree());
    // multiplication-by-x matrix over the integral basis (integer entries)
    std::vector<std::vector<mpz_class>> A(d, std::vector<mpz_class>(d, mpz_class(0)));
    for (std::size_t j = 0; j < d; ++j) {
        // column j = coords of x * e_j
        std::vector<mpz_class> col(d, mpz_class(0));
        for (std::size_t i = 0; i < d; ++i) {
            if (x.coords()[i] == 0) continue;
            const auto& prod = K.basis_product(i, j);
            for (std::size_t k = 0; k < d; ++k) col[k] += x.coords()[i] * prod[k];
        }
        for (std::size_t k = 0; k < d; ++k) A[k][j] = col[k];
    }
    // Faddeev-LeVerrier: exact integer recurrence
    std::vector<mpz_class> coeffs(d + 1);
    coeffs[d] = 1;
    std::vector<std::vector<mpz_class>> B(d, std::vector<mpz_class>(d, mpz_class(0)));
    for (std::size_t i = 0; i < d; ++i) B[i][i] = 1;
    for (std::size_t k = 1; k <= d; ++k) {
        std::vector<std::vector<mpz_class>> C(d, std::vector<mpz_class>(d, mpz_class(0)));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                mpz_class acc(0);
                for (std::size_t t = 0; t < d; ++t) acc += A[i][t] * B[t][j];
                C[i][j] = acc;
            }
        mpz_class tr(0);
        for (std::size_t i = 0; i < d; ++i) tr += C[i][i];
        mpz_class c, rem;
        mpz_tdiv_qr(c.get_mpz_t(), rem.get_mpz_t(), tr.get_mpz_t(), mpz_class(static_cast<long>(k)).get_mpz_t());
        require(rem == 0, errc::internal, "Faddeev-LeVerrier trace division not exact");
        c = -c;
        coeffs[d - k] = c;
        B = std::move(C);
        for (std::size_t i = 0; i < d; ++i) B[i][i] += c;
    }
    return IntPolynomial(std::move(coeffs));
}

// Monic minimal polynomial: the squarefree part of the characteristic
// polynomial (charpoly = minpoly^(d/deg) over a field).
inline IntPolynomial minpoly_of(const FieldElement& x) {
    IntPolynomial cp = charpoly_of(x);
    IntPolynomial mp = squarefree_part(cp);
    require(mp.is_monic(), errc::internal, "minimal polynomial not monic");
    require(x.field()->degree() % mp.degree() == 0, errc::internal, "minpoly degree does not divide d");
    return mp;
}

inline int element_degree(const FieldElement& x) { return minpoly_of(x).degree(); }

inline mpz_class norm_of(const FieldElement& x) {
    IntPolynomial cp = charpoly_of(x);
    mpz_class n = cp.coeff(0);
    return (x.field()->degree() % 2 == 0) ? n : mpz_class(-n);
}

// True iff |sigma_j(x)| < u for EVERY embedding j >= 2 (real and complex),
// decided exactly via disk-counting on the minimal polynomial. No precision
// cap is involved; boundary cases resolve through exact comparisons.
inline bool conjugates_within_disk(const FieldElement& x, const mpq_class& u) {
    require(u > 0, errc::bad_interval, "disk bound must be positive");
    const NumberField& K = *x.field();
    if (K.degree() == 1) return true;  // no conjugates besides sigma_1
    if (auto c = x.constant_value()) {
        // every embedding fixes the constant
        mpq_class cc(*c);
        return cc < u && cc > -u;
    }
    IntPolynomial mp = minpoly_of(x);
    int e = mp.degree();
    int multiplicity = K.degree() / e;
    UnitDiskCount counts = count_roots_in_disk(mp, u);
    if (counts.inside == e) return true;
    // sigma_1(x) cannot equal +-u exactly (x is not constant), so it is
    // strictly inside or strictly outside the radius-u disk
    bool sigma1_inside = decide_position(x, 1, Window::open(-u, u));
    if (sigma1_inside) return counts.inside == e;  // false here: some other root escapes
    return counts.inside == e - 1 && counts.on_circle == 0 && multiplicity == 1;
}

// Per-embedding modulus test |sigma_j(x)| vs r for the complex pair. Raises
// BoundaryUndecided when the value sits on the boundary beyond the precision
// cap and the root census confirms a boundary root exists.
inline bool decide_modulus_strictly_less(const FieldElement& x, const mpq_class& r,
                                         unsigned long cap_bits = 256) {
    require(r > 0, errc::bad_interval, "modulus bound must be positive");
    const NumberField& K = *x.field();
    require(K.complex_pairs() == 1, errc::unsupported, "decide_modulus needs the single complex pair");
    if (auto c = x.constant_value()) {
        mpq_class cc(abs(mpq_class(*c)));
        return cc < r;
    }
    mpq_class r2 = r * r;
    mpq_class eps(1, 1L << 16);
    mpq_class cap = mpq_class(1) / mpq_class(mpz_class(1) << cap_bits);
    for (;;) {
        ComplexEnclosure z = sigma_complex(x, eps);
        if (z.mod2.hi < r2) return true;
        if (z.mod2.lo > r2) return false;
        if (eps < cap) {
            IntPolynomial mp = minpoly_of(x);
            UnitDiskCount at = count_roots_in_disk(mp, r);
            if (at.on_circle > 0)
                fail(errc::boundary_undecided,
                     "modulus comparison undecided at precision cap: a conjugate lies on the boundary");
            // no conjugate sits at radius r: keep refining, termination is certain
        }
        eps /= 256;
    }
}

}  // namespace pisot
