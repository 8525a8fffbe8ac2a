#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pisot/field_atlas.hpp"

namespace pisot {

using json = nlohmann::ordered_json;

// Decimal rendering of sigma_1(x): display only, never feeds a decision.
// Deterministic round-half-away-from-zero at the requested digit count.
inline std::string decimal_from_interval(const RatInterval& iv, int digits) {
    mpq_class mid = (iv.lo + iv.hi) / 2;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpq_class scaled = mid * mpq_class(scale);
    mpz_class twice_num = 2 * scaled.get_num();
    mpz_class twice_den = 2 * scaled.get_den();
    mpz_class rounded;
    if (scaled >= 0) {
        mpz_class num = twice_num + scaled.get_den();
        mpz_fdiv_q(rounded.get_mpz_t(), num.get_mpz_t(), twice_den.get_mpz_t());
    } else {
        mpz_class num = twice_num - scaled.get_den();
        mpz_cdiv_q(rounded.get_mpz_t(), num.get_mpz_t(), twice_den.get_mpz_t());
    }
    bool neg = rounded < 0;
    mpz_class mag = abs(rounded);
    mpz_class ip = mag / scale, fp = mag % scale;
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), static_cast<std::size_t>(digits) - frac.size(), '0');
    std::string out = (neg ? "-" : "") + ip.get_str();
    if (digits > 0) out += "." + frac;
    return out;
}

inline std::string decimal_approx(const FieldElement& x, int digits) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(digits + 3));
    mpq_class eps(1, den);
    eps.canonicalize();
    return decimal_from_interval(sigma_interval(x, 1, eps), digits);
}

// Exact surd rendering for quadratic fields, coordinate form elsewhere.
inline std::string render_exact(const FieldElement& x) {
    const NumberField& K = *x.field();
    if (auto c = x.constant_value()) return c->get_str();
    if (K.degree() == 2 && K.quadratic_m()) {
        mpz_class m = *K.quadratic_m();
        // value = (p + q*sqrt(m)) / 2 over the half basis, or p + q*sqrt(m)
        mpz_class p, q;
        bool halves = K.basis_label() == "{1, (1+sqrt(m))/2}";
        if (halves) {
            p = 2 * x.coords()[0] + x.coords()[1];
            q = x.coords()[1];
        } else {
            p = x.coords()[0];
            q = x.coords()[1];
        }
        auto plain = [&m](const mpz_class& a, const mpz_class& b) {
            std::string surd = "sqrt(" + m.get_str() + ")";
            mpz_class ab = abs(b);
            std::string bs = (ab == 1 ? "" : ab.get_str() + "*") + surd;
            if (b == 0) return a.get_str();
            if (a == 0) return (b > 0 ? "" : "-") + bs;
            return a.get_str() + (b > 0 ? "+" : "-") + bs;
        };
        if (!halves || (p % 2 == 0 && q % 2 == 0)) return plain(halves ? mpz_class(p / 2) : p,
                                                                halves ? mpz_class(q / 2) : q);
        return "(" + plain(p, q) + ")/2";
    }
    std::ostringstream os;
    os << "coords" << IntPolynomial(std::vector<mpz_class>(x.coords())).to_string();
    return os.str();
}

inline json element_json(const FieldElement& x, int digits) {
    json j;
    json coords = json::array();
    for (const auto& c : x.coords()) coords.push_back(c.get_str());
    j["coords"] = coords;
    j["basis"] = x.field()->basis_label();
    j["approx"] = decimal_approx(x, digits);
    IntPolynomial minpoly = minpoly_of(x);
    json mp = json::array();
    for (const auto& c : minpoly.coeffs()) mp.push_back(c.get_str());
    j["minpoly"] = mp;
    j["exact"] = render_exact(x);
    return j;
}

inline FieldElement element_from_json(const FieldPtr& K, const json& j) {
    require(j.contains("coords") && j["coords"].is_array(), errc::parse_error,
            "element JSON needs a coords array");
    std::vector<mpz_class> coords;
    for (const auto& c : j["coords"]) coords.emplace_back(c.get_ref<const std::string&>());
    require(static_cast<int>(coords.size()) == K->degree(), errc::parse_error,
            "element coords length does not match the field degree");
    return K->element(std::move(coords));
}

inline json field_json(const FieldPtr& K, int digits) {
    json j;
    j["spec"] = K->spec_string();
    j["defining_poly"] = K->defining_poly().to_string();
    j["degree"] = std::to_string(K->degree());
    j["signature"] = {std::to_string(K->real_embeddings()), std::to_string(K->complex_pairs())};
    j["discriminant"] = K->discriminant().get_str();
    j["integral_basis"] = K->basis_label();
    j["maximality"] = certificate_name(K->certificate());
    j["irreducibility_assumed"] = K->irreducibility_assumed();
    json roots = json::array();
    for (int r = 1; r <= K->real_embeddings(); ++r) {
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(digits + 3));
        mpq_class eps(1, den);
        eps.canonicalize();
        DyadicInterval iv = K->theta_enclosure(r, eps);
        roots.push_back(decimal_from_interval(RatInterval::of(iv), digits));
    }
    j["real_roots_desc_from_sigma1"] = roots;
    return j;
}

inline std::vector<std::string> field_caveats(const FieldPtr& K) {
    std::vector<std::string> out;
    out.push_back(std::string("integral basis certificate: ") + certificate_name(K->certificate()));
    if (K->certificate() == MaximalityCertificate::PowerBasisAssumed)
        out.push_back("results about algebraic integers are relative to the order Z[theta]; "
                      "maximality of the power basis is not certified");
    if (K->irreducibility_assumed())
        out.push_back("irreducibility of the defining polynomial was assumed, not certified");
    return out;
}

// ---------------------------------------------------------------------------
// flat renderings shared by the CSV and text emitters

struct FlatRow {
    std::vector<std::string> cells;
};

struct FlatTable {
    std::vector<std::string> header;
    std::vector<FlatRow> rows;
};

inline FlatTable element_table(const std::vector<FieldElement>& elems, int digits) {
    FlatTable t;
    t.header = {"index", "approx", "exact", "coords", "minpoly"};
    for (std::size_t i = 0; i < elems.size(); ++i) {
        FlatRow r;
        r.cells = {std::to_string(i + 1), decimal_approx(elems[i], digits), render_exact(elems[i]),
                   IntPolynomial(std::vector<mpz_class>(elems[i].coords())).to_string(),
                   minpoly_of(elems[i]).to_string()};
        t.rows.push_back(std::move(r));
    }
    return t;
}

inline std::string csv_escape(const std::string& s) {
    bool needs = s.find_first_of(",\"\n") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string table_to_csv(const FlatTable& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << csv_escape(t.header[i]);
    os << "\n";
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.cells.size(); ++i) os << (i ? "," : "") << csv_escape(r.cells[i]);
        os << "\n";
    }
    return os.str();
}

inline std::string table_to_text(const FlatTable& t) {
    std::vector<std::size_t> width(t.header.size(), 0);
    for (std::size_t i = 0; i < t.header.size(); ++i) width[i] = t.header[i].size();
    for (const auto& r : t.rows)
        for (std::size_t i = 0; i < r.cells.size(); ++i) width[i] = std::max(width[i], r.cells[i].size());
    std::ostringstream os;
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            os << cells[i] << std::string(width[i] - cells[i].size(), ' ');
            os << (i + 1 < cells.size() ? "  " : "");
        }
        os << "\n";
    };
    emit(t.header);
    std::vector<std::string> rule;
    for (std::size_t w : width) rule.push_back(std::string(w, '-'));
    emit(rule);
    for (const auto& r : t.rows) emit(r.cells);
    return os.str();
}

}  // namespace pisot
