#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "pisot/number_field.hpp"

namespace pisot {

// Per-embedding constraints: a window for each real embedding (index 0 is
// sigma_1), a strict modulus bound for each complex pair. The feasible region
// must bound every direction of the Minkowski embedding.
struct BoxConstraint {
    std::vector<Window> real_windows;                   // size r
    std::vector<std::optional<mpq_class>> pair_bounds;  // size s, |sigma(x)| < bound

    static BoxConstraint for_field(const NumberField& K) {
        BoxConstraint c;
        c.real_windows.resize(static_cast<std::size_t>(K.real_embeddings()));
        c.pair_bounds.resize(static_cast<std::size_t>(K.complex_pairs()));
        return c;
    }

    bool bounded() const {
        for (const auto& w : real_windows)
            if (!w.bounded()) return false;
        for (const auto& b : pair_bounds)
            if (!b.has_value()) return false;
        return true;
    }

    // A single u with every j >= 2 constraint equal to (-u, u) open / |.| < u
    // lets the leaf test run through exact disk counting.
    std::optional<mpq_class> uniform_conjugate_bound() const {
        std::optional<mpq_class> u;
        for (std::size_t j = 1; j < real_windows.size(); ++j) {
            const Window& w = real_windows[j];
            if (!w.bounded() || !w.lo_open || !w.hi_open || *w.hi <= 0 || *w.lo != -*w.hi)
                return std::nullopt;
            if (u && *u != *w.hi) return std::nullopt;
            u = *w.hi;
        }
        for (const auto& b : pair_bounds) {
            if (!b) return std::nullopt;
            if (u && *u != *b) return std::nullopt;
            u = *b;
        }
        return u;
    }
};

struct EnumerationResult {
    std::vector<FieldElement> elements;  // sorted by exact sigma_1 value
    bool exhausted = true;
    std::vector<FieldElement> boundary_skipped;
};

namespace detail {

inline RatInterval interval_det(std::vector<std::vector<RatInterval>> m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    RatInterval acc = RatInterval::point(0);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<std::vector<RatInterval>> minor;
        minor.reserve(n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<RatInterval> row;
            row.reserve(n - 1);
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) row.push_back(m[i][j]);
            minor.push_back(std::move(row));
        }
        RatInterval term = m[0][k] * interval_det(minor);
        acc = (k % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

struct EmbeddingRows {
    // one row per real embedding, then Re/Im rows per complex pair
    std::vector<std::vector<RatInterval>> rows;
    std::vector<mpq_class> value_bounds;  // |row . c| <= bound for feasible points
};

inline EmbeddingRows embedding_rows(const NumberField& K, const BoxConstraint& c,
                                    const mpq_class& eps) {
    EmbeddingRows out;
    std::size_t d = static_cast<std::size_t>(K.degree());
    std::vector<FieldElement> basis;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<mpz_class> coords(d, mpz_class(0));
        coords[i] = 1;
        basis.push_back(K.element(std::move(coords)));
    }
    for (int j = 1; j <= K.real_embeddings(); ++j) {
        std::vector<RatInterval> row;
        for (std::size_t i = 0; i < d; ++i) row.push_back(sigma_interval(basis[i], j, eps));
        out.rows.push_back(std::move(row));
        const Window& w = c.real_windows[static_cast<std::size_t>(j - 1)];
        out.value_bounds.push_back(std::max(mpq_class(abs(*w.lo)), mpq_class(abs(*w.hi))));
    }
    if (K.complex_pairs() == 1) {
        std::vector<RatInterval> re_row, im_row;
        for (std::size_t i = 0; i < d; ++i) {
            auto z = sigma_complex(basis[i], eps);
            re_row.push_back(z.re);
            im_row.push_back(z.im);
        }
        out.rows.push_back(std::move(re_row));
        out.rows.push_back(std::move(im_row));
        const mpq_class& u = *c.pair_bounds[0];
        out.value_bounds.push_back(u);
        out.value_bounds.push_back(u);
    }
    return out;
}

}  // namespace detail

// Certified per-coordinate bounds: no integer point of the feasible region has
// |c_i| above the returned value. Exposed for the oracle-equivalence tests.
inline std::vector<mpz_class> coordinate_bounds(const FieldPtr& K, const BoxConstraint& c) {
    require(c.bounded(), errc::unbounded_box, "feasible region must be bounded in every direction");
    require(K->complex_pairs() <= 1, errc::unsupported,
            "enumeration supports at most one complex pair");
    std::size_t d = static_cast<std::size_t>(K->degree());
    mpq_class eps(1, 1L << 30);
    for (int rounds = 0;; ++rounds) {
        auto rows = detail::embedding_rows(*K, c, eps);
        std::vector<std::vector<RatInterval>> m(d, std::vector<RatInterval>(d, RatInterval::point(0)));
        for (std::size_t row = 0; row < d; ++row)
            for (std::size_t col = 0; col < d; ++col) m[row][col] = rows.rows[row][col];
        RatInterval det = detail::interval_det(m);
        if (!det.contains_zero()) {
            // inverse via adjugate: inv[i][j] = cofactor[j][i] / det
            std::vector<mpz_class> bounds(d);
            for (std::size_t i = 0; i < d; ++i) {
                mpq_class acc(0);
                for (std::size_t j = 0; j < d; ++j) {
                    std::vector<std::vector<RatInterval>> minor;
                    for (std::size_t a = 0; a < d; ++a) {
                        if (a == j) continue;
                        std::vector<RatInterval> mrow;
                        for (std::size_t b = 0; b < d; ++b)
                            if (b != i) mrow.push_back(m[a][b]);
                        minor.push_back(std::move(mrow));
                    }
                    RatInterval cof = (d == 1) ? RatInterval::point(1) : detail::interval_det(minor);
                    if ((i + j) % 2 == 1) cof = -cof;
                    RatInterval inv_ij = cof / det;
                    acc += inv_ij.mag() * rows.value_bounds[j];
                }
                mpz_class b;
                mpz_cdiv_q(b.get_mpz_t(), acc.get_num().get_mpz_t(), acc.get_den().get_mpz_t());
                bounds[i] = b;
            }
            return bounds;
        }
        eps = eps * eps;
        require(rounds < 8, errc::internal, "embedding matrix stayed singular under refinement");
    }
}

namespace detail {

// Exact acceptance test for one candidate element.
inline bool verify_candidate(const FieldElement& x, const BoxConstraint& c,
                             const std::optional<mpq_class>& uniform_u,
                             std::vector<FieldElement>& boundary_skipped) {
    const NumberField& K = *x.field();
    if (!decide_position(x, 1, c.real_windows[0])) return false;
    if (uniform_u && K.degree() >= 2) return conjugates_within_disk(x, *uniform_u);
    for (int j = 2; j <= K.real_embeddings(); ++j)
        if (!decide_position(x, j, c.real_windows[static_cast<std::size_t>(j - 1)])) return false;
    if (K.complex_pairs() == 1) {
        try {
            if (!decide_modulus_strictly_less(x, *c.pair_bounds[0])) return false;
        } catch (const atlas_error& e) {
            if (e.code() == errc::boundary_undecided) {
                boundary_skipped.push_back(x);
                return false;
            }
            throw;
        }
    }
    return true;
}

}  // namespace detail

// Complete enumeration of the algebraic integers (over the installed basis)
// whose embedding images satisfy the box constraints. Interval pruning with
// outward-safe ranges guarantees no feasible point is skipped; every emitted
// element is verified by exact decisions.
inline EnumerationResult enumerate_box(const FieldPtr& K, const BoxConstraint& c) {
    require(static_cast<int>(c.real_windows.size()) == K->real_embeddings() &&
                static_cast<int>(c.pair_bounds.size()) == K->complex_pairs(),
            errc::internal, "constraint shape does not match the field signature");
    std::vector<mpz_class> bounds = coordinate_bounds(K, c);
    std::size_t d = static_cast<std::size_t>(K->degree());
    mpq_class eps(1, 1L << 30);
    auto rows = detail::embedding_rows(*K, c, eps);
    std::optional<mpq_class> uniform_u = c.uniform_conjugate_bound();

    // recursion order: deepest level = basis vector with the largest sigma_1
    // magnitude (tightest pruning); the exact final sort fixes output order
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return rows.rows[0][a].mag() < rows.rows[0][b].mag();
    });

    // per-row window relaxations (closed hulls) used for pruning only
    std::size_t nrows = rows.rows.size();
    std::vector<mpq_class> wlo(nrows), whi(nrows);
    for (int j = 1; j <= K->real_embeddings(); ++j) {
        const Window& w = c.real_windows[static_cast<std::size_t>(j - 1)];
        wlo[static_cast<std::size_t>(j - 1)] = *w.lo;
        whi[static_cast<std::size_t>(j - 1)] = *w.hi;
    }
    if (K->complex_pairs() == 1) {
        const mpq_class& u = *c.pair_bounds[0];
        wlo[nrows - 2] = -u;
        whi[nrows - 2] = u;
        wlo[nrows - 1] = -u;
        whi[nrows - 1] = u;
    }

    // suffix slack per depth: max |sum over undecided coords| per row
    std::vector<std::vector<mpq_class>> slack(d + 1, std::vector<mpq_class>(nrows, mpq_class(0)));
    for (std::size_t t = d; t-- > 0;) {
        for (std::size_t row = 0; row < nrows; ++row)
            slack[t][row] = slack[t + 1][row] +
                            rows.rows[row][order[t]].mag() * mpq_class(bounds[order[t]]);
    }

    EnumerationResult out;
    std::vector<mpz_class> coords(d, mpz_class(0));
    std::vector<RatInterval> partial(nrows, RatInterval::point(0));

    auto dfs = [&](auto&& self, std::size_t depth) -> void {
        if (depth == d) {
            FieldElement x = K->element(coords);
            if (detail::verify_candidate(x, c, uniform_u, out.boundary_skipped))
                out.elements.push_back(std::move(x));
            return;
        }
        std::size_t i = order[depth];
        mpq_class lo_q(-bounds[i]), hi_q(bounds[i]);
        bool empty = false;
        for (std::size_t row = 0; row < nrows && !empty; ++row) {
            const RatInterval& w = rows.rows[row][i];
            if (w.contains_zero()) {
                // no range information from this row; slack already covers it
                mpq_class t_lo = wlo[row] - partial[row].hi - slack[depth + 1][row];
                mpq_class t_hi = whi[row] - partial[row].lo + slack[depth + 1][row];
                // c * w must intersect [t_lo, t_hi]; with 0 in w only a feasibility check
                if (t_lo > 0 || t_hi < 0) {
                    mpq_class reach = w.mag() * std::max(mpq_class(abs(lo_q)), mpq_class(abs(hi_q)));
                    if (t_lo > reach || t_hi < -reach) empty = true;
                }
                continue;
            }
            mpq_class t_lo = wlo[row] - partial[row].hi - slack[depth + 1][row];
            mpq_class t_hi = whi[row] - partial[row].lo + slack[depth + 1][row];
            if (t_lo > t_hi) {
                empty = true;
                break;
            }
            RatInterval range = RatInterval(t_lo, t_hi) / w;
            if (range.lo > lo_q) lo_q = range.lo;
            if (range.hi < hi_q) hi_q = range.hi;
            if (lo_q > hi_q) empty = true;
        }
        if (empty) return;
        mpz_class c_lo, c_hi;
        mpz_cdiv_q(c_lo.get_mpz_t(), lo_q.get_num().get_mpz_t(), lo_q.get_den().get_mpz_t());
        mpz_fdiv_q(c_hi.get_mpz_t(), hi_q.get_num().get_mpz_t(), hi_q.get_den().get_mpz_t());
        for (mpz_class v = c_lo; v <= c_hi; ++v) {
            coords[i] = v;
            std::vector<RatInterval> saved = partial;
            for (std::size_t row = 0; row < nrows; ++row)
                partial[row] = partial[row] + rows.rows[row][i] * mpq_class(v);
            self(self, depth + 1);
            partial = saved;
        }
        coords[i] = 0;
    };
    dfs(dfs, 0);

    std::sort(out.elements.begin(), out.elements.end(), sigma1_less);
    return out;
}

// Naive hypercube scan with the same exact verification; the test oracle.
inline EnumerationResult brute_oracle(const FieldPtr& K, const BoxConstraint& c, long coord_bound) {
    require(coord_bound >= 1, errc::bad_interval, "brute_oracle needs coord_bound >= 1");
    require(c.bounded(), errc::unbounded_box, "feasible region must be bounded in every direction");
    std::size_t d = static_cast<std::size_t>(K->degree());
    std::optional<mpq_class> uniform_u = c.uniform_conjugate_bound();
    mpq_class eps(1, 1L << 30);
    auto rows = detail::embedding_rows(*K, c, eps);
    std::size_t nrows = rows.rows.size();

    EnumerationResult out;
    std::vector<mpz_class> coords(d, mpz_class(0));
    auto scan = [&](auto&& self, std::size_t i) -> void {
        if (i == d) {
            // cheap certified prefilter before the exact tests
            for (std::size_t row = 0; row < nrows; ++row) {
                RatInterval acc = RatInterval::point(0);
                for (std::size_t k = 0; k < d; ++k) acc = acc + rows.rows[row][k] * mpq_class(coords[k]);
                mpq_class lo = row < static_cast<std::size_t>(K->real_embeddings())
                                   ? *c.real_windows[row].lo
                                   : -*c.pair_bounds[0];
                mpq_class hi = row < static_cast<std::size_t>(K->real_embeddings())
                                   ? *c.real_windows[row].hi
                                   : *c.pair_bounds[0];
                if (acc.lo > hi || acc.hi < lo) return;
            }
            FieldElement x = K->element(coords);
            if (detail::verify_candidate(x, c, uniform_u, out.boundary_skipped))
                out.elements.push_back(std::move(x));
            return;
        }
        for (long v = -coord_bound; v <= coord_bound; ++v) {
            coords[i] = v;
            self(self, i + 1);
        }
    };
    scan(scan, 0);
    std::sort(out.elements.begin(), out.elements.end(), sigma1_less);
    return out;
}

}  // namespace pisot
