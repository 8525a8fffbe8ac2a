// pisot-atlas: exact Pisot/Salem structure reports for a fixed real field.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pisot/report.hpp"

using namespace pisot;

namespace {

struct CliConfig {
    std::string format = "json";
    int precision = 12;
    unsigned long cap = 10000;
    std::string bound = "100";
    long seed = 0;  // reserved for randomized property drivers
    bool assume_irreducible = false;
};

mpq_class parse_rational(const std::string& text) {
    try {
        mpq_class q(text);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        fail(errc::parse_error, "bad rational '" + text + "'");
    }
}

FieldPtr parse_field(const std::string& spec, bool assume) {
    if (spec.rfind("sqrt:", 0) == 0) {
        try {
            return NumberField::quadratic(mpz_class(spec.substr(5)));
        } catch (const std::invalid_argument&) {
            fail(errc::parse_error, "bad integer in field spec '" + spec + "'");
        }
    }
    if (spec.rfind("poly:", 0) == 0) {
        IntPolynomial p = IntPolynomial::parse(spec.substr(5));
        return NumberField::make(p, assume ? IrreducibilityPolicy::Assume : IrreducibilityPolicy::Require);
    }
    fail(errc::parse_error, "field spec must look like sqrt:m or poly:[c0,...,1], got '" + spec + "'");
}

std::vector<mpz_class> parse_coords(const std::string& text, int expected) {
    IntPolynomial p = IntPolynomial::parse(text);
    std::vector<mpz_class> coords(static_cast<std::size_t>(expected), mpz_class(0));
    require(p.degree() < expected, errc::parse_error, "too many coordinates for the field degree");
    for (int i = 0; i <= p.degree(); ++i) coords[static_cast<std::size_t>(i)] = p.coeff(static_cast<std::size_t>(i));
    return coords;
}

struct Output {
    json envelope;
    std::vector<std::pair<std::string, std::string>> scalars;  // for csv/text
    std::optional<FlatTable> table;
};

void emit(const Output& out, const CliConfig& cfg) {
    if (cfg.format == "json") {
        std::cout << out.envelope.dump(2) << "\n";
        return;
    }
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "key,value\n";
        os << "command," << csv_escape(out.envelope["command"].get<std::string>()) << "\n";
        for (const auto& [k, v] : out.scalars) os << csv_escape(k) << "," << csv_escape(v) << "\n";
        if (out.table) os << table_to_csv(*out.table);
        std::cout << os.str();
        return;
    }
    if (cfg.format == "text") {
        std::ostringstream os;
        os << "command: " << out.envelope["command"].get<std::string>() << "\n";
        for (const auto& [k, v] : out.scalars) os << k << ": " << v << "\n";
        if (out.table) os << "\n" << table_to_text(*out.table);
        for (const auto& c : out.envelope["caveats"]) os << "caveat: " << c.get<std::string>() << "\n";
        std::cout << os.str();
        return;
    }
    fail(errc::parse_error, "unknown format '" + cfg.format + "'");
}

json envelope_base(const std::string& command, const FieldPtr& field, const CliConfig& cfg,
                   std::vector<std::string> extra_caveats = {}) {
    json j;
    j["schema"] = "pisot-atlas/1";
    j["command"] = command;
    j["field"] = field ? field_json(field, cfg.precision) : json(nullptr);
    j["result"] = json::object();
    j["certificates"] = json::object();
    json caveats = json::array();
    if (field)
        for (const auto& c : field_caveats(field)) caveats.push_back(c);
    for (const auto& c : extra_caveats) caveats.push_back(c);
    j["caveats"] = caveats;
    return j;
}

json difference_cert_json(const DifferenceCertificate& cert, int digits) {
    json j;
    j["target"] = element_json(cert.target, digits);
    j["minuend"] = element_json(cert.minuend, digits);
    j["subtrahend"] = element_json(cert.subtrahend, digits);
    j["kind"] = cert.kind == DifferenceCertificate::Kind::InDk ? "InDk" : "NotPisotWitness";
    if (cert.violation_embedding) j["violation_embedding"] = std::to_string(*cert.violation_embedding);
    return j;
}

FlatTable difference_table(const std::vector<DifferenceCertificate>& certs) {
    FlatTable t;
    t.header = {"index", "target", "minuend", "subtrahend", "violation_j"};
    for (std::size_t i = 0; i < certs.size(); ++i) {
        t.rows.push_back(FlatRow{{std::to_string(i + 1), render_exact(certs[i].target),
                                  render_exact(certs[i].minuend), render_exact(certs[i].subtrahend),
                                  certs[i].violation_embedding ? std::to_string(*certs[i].violation_embedding)
                                                               : std::string("-")}});
    }
    return t;
}

int run(int argc, char** argv) {
    CLI::App app{"exact Pisot / Salem trace structure reports over a fixed real algebraic number field"};
    app.require_subcommand(1);
    CliConfig cfg;

    std::string field_spec, poly_text, beta_text, tau_text, salem_poly_text, m_text;
    std::string initial_bound_text = "4";
    unsigned long count = 1, steps = 200, bins = 8, power_count = 5;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "json | csv | text")->capture_default_str();
        sub->add_option("--precision", cfg.precision, "display digits (never affects decisions)")
            ->capture_default_str();
        sub->add_option("--cap", cfg.cap, "search guard for exponent scans")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "seed reserved for randomized property drivers")
            ->capture_default_str();
        sub->add_flag("--assume-irreducible", cfg.assume_irreducible,
                      "construct the field even when irreducibility is uncertified");
    };
    auto add_field = [&](CLI::App* sub) {
        sub->add_option("--field", field_spec, "sqrt:m or poly:[c0,...,1]")->required();
    };

    CLI::App* info = app.add_subcommand("field-info", "field invariants and root enclosures");
    add_field(info);
    add_common(info);

    CLI::App* pisot_cmd = app.add_subcommand("pisot", "Pisot generators up to the bound");
    add_field(pisot_cmd);
    pisot_cmd->add_option("--bound", cfg.bound, "sigma_1 upper bound X")->capture_default_str();
    add_common(pisot_cmd);

    CLI::App* gaps = app.add_subcommand("gaps", "consecutive-gap structure F_K(X)");
    add_field(gaps);
    gaps->add_option("--bound", cfg.bound, "sigma_1 upper bound X")->capture_default_str();
    add_common(gaps);

    CLI::App* uset = app.add_subcommand("u-set", "root of unity trace numbers in K");
    add_field(uset);
    add_common(uset);

    CLI::App* mint = app.add_subcommand("min-trace", "smallest Salem trace number generating K");
    add_field(mint);
    mint->add_option("--initial-bound", initial_bound_text, "starting sigma_1 bound for the doubling scan")
        ->capture_default_str();
    add_common(mint);

    CLI::App* lift = app.add_subcommand("lift", "Salem lift of a Salem trace minimal polynomial");
    lift->add_option("--poly", poly_text, "ascending coefficients, e.g. [-3,-1,1]")->required();
    add_common(lift);

    CLI::App* tpow = app.add_subcommand("trace-powers", "tau^n + tau^-n images inside the trace field");
    tpow->add_option("--poly", poly_text, "Salem trace minimal polynomial")->required();
    tpow->add_option("--count", power_count, "number of powers")->capture_default_str();
    add_common(tpow);

    CLI::App* dec = app.add_subcommand("decompose", "write beta in E_K as a difference of Pisot generators");
    add_field(dec);
    dec->add_option("--beta", beta_text, "element coords over the integral basis, e.g. [0,1]")->required();
    add_common(dec);

    CLI::App* rep = app.add_subcommand("represent", "write tau (Pisot or Salem) as a Pisot difference");
    rep->add_option("--field", field_spec, "field for a Pisot tau");
    rep->add_option("--tau", tau_text, "Pisot element coords");
    rep->add_option("--salem-poly", salem_poly_text, "Salem trace minimal polynomial for the Salem route");
    add_common(rep);

    CLI::App* wit = app.add_subcommand("witnesses", "certified members of D_K minus P_K");
    add_field(wit);
    wit->add_option("--count", count, "number of witnesses")->capture_default_str();
    add_common(wit);

    CLI::App* quad = app.add_subcommand("quad-oracle", "closed-form U_K, F_K, min T_K for Q(sqrt m)");
    quad->add_option("--m", m_text, "squarefree integer >= 2")->required();
    add_common(quad);

    CLI::App* dens = app.add_subcommand("density", "conjugate-vector coverage of trace powers");
    dens->add_option("--poly", poly_text, "Salem trace minimal polynomial")->required();
    dens->add_option("--steps", steps, "number of powers N")->capture_default_str();
    dens->add_option("--bins", bins, "bins per axis over [-2,2]")->capture_default_str();
    add_common(dens);

    CLI11_PARSE(app, argc, argv);
    int digits = cfg.precision;

    if (info->parsed()) {
        FieldPtr K = parse_field(field_spec, cfg.assume_irreducible);
        Output out;
        out.envelope = envelope_base("field-info", K, cfg);
        out.envelope["result"] = out.envelope["field"];
        out.scalars = {{"spec", K->spec_string()},
                       {"degree", std::to_string(K->degree())},
                       {"discriminant", K->discriminant().get_str()},
                       {"basis", K->basis_label()},
                       {"maximality", certificate_name(K->certificate())}};
        emit(out, cfg);
        return 0;
    }

    if (pisot_cmd->parsed()) {
        FieldPtr K = parse_field(field_spec, cfg.assume_irreducible);
        mpq_class X = parse_rational(cfg.bound);
        auto list = enumerate_pisot(K, X);
        Output out;
        out.envelope = envelope_base("pisot", K, cfg);
        out.envelope["result"]["bound"] = X.get_str();
        out.envelope["result"]["count"] = std::to_string(list.size());
        json arr = json::array();
        for (const auto& x : list) arr.push_back(element_json(x, digits));
        out.envelope["result"]["elements"] = arr;
        out.scalars = {{"bound", X.get_str()}, {"count", std::to_string(list.size())}};
        out.table = element_table(list, digits);
        emit(out, cfg);
        return 0;
    }

    if (gaps->parsed()) {
        FieldPtr K = parse_field(field_spec, cfg.assume_irreducible);
        mpq_class X = parse_rational(cfg.bound);
        AtlasReport rep_data = gap_report(K, X);
        Output out;
        out.envelope = envelope_base(
            "gaps", K, cfg,
            {"gap set is the observed F_K(X); completeness is certified only where the quadratic "
             "closed forms apply"});
        json& result = out.envelope["result"];
        result["bound"] = X.get_str();
        result["pisot_count"] = std::to_string(rep_data.pisot_list.size());
        json garr = json::array();
        for (const auto& g : rep_data.gaps) {
            json gj;
            gj["element"] = element_json(g.value, digits);
            gj["multiplicity"] = std::to_string(g.multiplicity);
            gj["first_index"] = std::to_string(g.first_index);
            garr.push_back(gj);
        }
        result["gaps"] = garr;
        if (rep_data.u_set) {
            json uarr = json::array();
            for (const auto& u : rep_data.u_set->elements) uarr.push_back(element_json(u, digits));
            result["u_set"] = uarr;
        } else {
            result["u_set"] = nullptr;
        }
        result["min_trace"] = rep_data.min_trace ? element_json(*rep_data.min_trace, digits) : json(nullptr);
        result["rho"] = element_json(*rep_data.rho, digits);
        result["stabilization_index"] = std::to_string(*rep_data.stabilization_index);
        result["u3_d3_agree"] =
            rep_data.u3_d3_agree ? json(*rep_data.u3_d3_agree ? "true" : "false") : json(nullptr);
        out.envelope["certificates"]["gaps_in_E"] = true;
        out.envelope["certificates"]["telescoping_checked"] = true;
        out.scalars = {{"bound", X.get_str()},
                       {"pisot_count", std::to_string(rep_data.pisot_list.size())},
                       {"gap_values", std::to_string(rep_data.gaps.size())},
                       {"rho", render_exact(*rep_data.rho)}};
        FlatTable t;
        t.header = {"index", "approx", "exact", "multiplicity", "first_index"};
        for (std::size_t i = 0; i < rep_data.gaps.size(); ++i) {
            const auto& g = rep_data.gaps[i];
            t.rows.push_back(FlatRow{{std::to_string(i + 1), decimal_approx(g.value, digits),
                                      render_exact(g.value), std::to_string(g.multiplicity),
                                      std::to_string(g.first_index)}});
        }
        out.table = t;
        emit(out, cfg);
        return 0;
    }

    if (uset->parsed()) {
        FieldPtr K = parse_field(field_spec, cfg.assume_irreducible);
        USetResult u = compute_U(K);
        Output out;
        out.envelope = envelope_base("u-set", K, cfg,
                                     u.full_slice_route
                                         ? std::vector<std::string>{}
                                         : std::vector<std::string>{"non-totally-real field: psi-search "
                                                                    "route only (the E_K slice equality "
                                                                    "holds for totally real fields)"});
        json arr = json::array(), recs = json::array();
        for (const auto& x : u.elements) arr.push_back(element_json(x, digits));
        for (const auto& r : u.recognitions) {
            json rj;
            rj["n"] = std::to_string(r.n);
            rj["k"] = std::to_string(r.k);
            rj["psi"] = r.psi.to_string();
            recs.push_back(rj);
        }
        out.envelope["result"]["elements"] = arr;
        out.envelope["result"]["recognitions"] = recs;
        out.envelope["result"]["route"] = u.full_slice_route ? "E-slice" : "psi-search";
        out.scalars = {{"count", std::to_string(u.elements.size())}};
        out.table = element_table(u.elements, digits);
        emit(out, cfg);
        return 0;
    }

    if (mint->parsed()) {
        FieldPtr K = parse_field(field_spec, cfg.assume_irreducible);
        FieldElement t = compute_minT(K, parse_rational(initial_bound_text));
        Output out;
        out.envelope = envelope_base("min-trace", K, cfg);
        out.envelope["result"]["element"] = element_json(t, digits);
        SalemTraceCertificate cert = salem_trace_certificate(t);
        out.envelope["certificates"]["salem_trace"] = cert.salem_trace;
        out.envelope["certificates"]["degree"] = std::to_string(cert.degree);
        out.scalars = {{"min_trace", render_exact(t)}, {"approx", decimal_approx(t, digits)}};
        emit(out, cfg);
        return 0;
    }

    if (lift->parsed()) {
        SalemLift l = lift_salem(IntPolynomial::parse(poly_text));
        Output out;
        out.envelope = envelope_base("lift", nullptr, cfg);
        out.envelope["result"]["source"] = l.source_minpoly.to_string();
        out.envelope["result"]["lifted"] = l.lifted_poly.to_string();
        out.envelope["result"]["tau_approx"] =
            decimal_from_interval(RatInterval::of(l.salem_enclosure), digits);
        UnitDiskCount census = count_roots_in_unit_disk(l.lifted_poly);
        out.envelope["certificates"]["palindromic"] = l.lifted_poly.is_palindromic();
        out.envelope["certificates"]["inside"] = std::to_string(census.inside);
        out.envelope["certificates"]["on_circle"] = std::to_string(census.on_circle);
        out.scalars = {{"source", l.source_minpoly.to_string()},
                       {"lifted", l.lifted_poly.to_string()},
                       {"tau_approx", decimal_from_interval(RatInterval::of(l.salem_enclosure), digits)}};
        emit(out, cfg);
        return 0;
    }

    if (tpow->parsed()) {
        IntPolynomial m = IntPolynomial::parse(poly_text);
        SalemLift l = lift_salem(m);
        FieldPtr K = NumberField::make(m);
        FieldElement beta = K->generator();
        Output out;
        out.envelope = envelope_base("trace-powers", K, cfg);
        json arr = json::array();
        std::vector<FieldElement> elems;
        for (unsigned long n = 1; n <= power_count; ++n) {
            FieldElement b = trace_power(beta, n);
            json e;
            e["n"] = std::to_string(n);
            e["element"] = element_json(b, digits);
            arr.push_back(e);
            elems.push_back(b);
        }
        out.envelope["result"]["base"] = element_json(beta, digits);
        out.envelope["result"]["powers"] = arr;
        out.scalars = {{"count", std::to_string(power_count)},
                       {"tau_approx", decimal_from_interval(RatInterval::of(l.salem_enclosure), digits)}};
        out.table = element_table(elems, digits);
        emit(out, cfg);
        return 0;
    }

    if (dec->parsed()) {
        FieldPtr K = parse_field(field_spec, cfg.assume_irreducible);
        FieldElement beta = K->element(parse_coords(beta_text, K->degree()));
        DifferenceCertificate cert = decompose_difference(K, beta);
        Output out;
        out.envelope = envelope_base("decompose", K, cfg);
        out.envelope["result"] = difference_cert_json(cert, digits);
        out.envelope["certificates"]["minuend_pisot"] = true;
        out.envelope["certificates"]["subtrahend_pisot"] = true;
        out.envelope["certificates"]["difference_exact"] = true;
        out.scalars = {{"target", render_exact(cert.target)},
                       {"minuend", render_exact(cert.minuend)},
                       {"subtrahend", render_exact(cert.subtrahend)}};
        out.table = difference_table({cert});
        emit(out, cfg);
        return 0;
    }

    if (rep->parsed()) {
        DifferenceCertificate cert;
        FieldPtr K;
        if (!salem_poly_text.empty()) {
            SalemLift l = lift_salem(IntPolynomial::parse(salem_poly_text));
            cert = represent_as_difference(l, cfg.cap);
            K = cert.target.field();
        } else {
            require(!field_spec.empty() && !tau_text.empty(), errc::parse_error,
                    "represent needs either --salem-poly or both --field and --tau");
            K = parse_field(field_spec, cfg.assume_irreducible);
            FieldElement tau = K->element(parse_coords(tau_text, K->degree()));
            cert = represent_as_difference(tau, cfg.cap);
        }
        Output out;
        out.envelope = envelope_base("represent", K, cfg);
        out.envelope["result"] = difference_cert_json(cert, digits);
        out.envelope["certificates"]["minuend_pisot"] = true;
        out.envelope["certificates"]["subtrahend_pisot"] = true;
        out.scalars = {{"target", render_exact(cert.target)},
                       {"minuend", render_exact(cert.minuend)},
                       {"subtrahend", render_exact(cert.subtrahend)}};
        out.table = difference_table({cert});
        emit(out, cfg);
        return 0;
    }

    if (wit->parsed()) {
        FieldPtr K = parse_field(field_spec, cfg.assume_irreducible);
        auto certs = nonpisot_difference_witnesses(K, static_cast<int>(count), cfg.cap);
        Output out;
        out.envelope = envelope_base("witnesses", K, cfg);
        json arr = json::array();
        for (const auto& c : certs) arr.push_back(difference_cert_json(c, digits));
        out.envelope["result"]["witnesses"] = arr;
        out.envelope["result"]["count"] = std::to_string(certs.size());
        out.scalars = {{"count", std::to_string(certs.size())}};
        out.table = difference_table(certs);
        emit(out, cfg);
        return 0;
    }

    if (quad->parsed()) {
        QuadraticClosedForms forms = quadratic_closed_forms(mpz_class(m_text));
        Output out;
        out.envelope = envelope_base("quad-oracle", forms.field, cfg);
        json uarr = json::array(), farr = json::array();
        for (const auto& x : forms.u_set) uarr.push_back(element_json(x, digits));
        for (const auto& x : forms.gap_set) farr.push_back(element_json(x, digits));
        out.envelope["result"]["m"] = m_text;
        out.envelope["result"]["u_set"] = uarr;
        out.envelope["result"]["gap_set"] = farr;
        out.envelope["result"]["min_trace"] = element_json(forms.min_trace, digits);
        out.scalars = {{"m", m_text}, {"min_trace", render_exact(forms.min_trace)}};
        out.table = element_table(forms.gap_set, digits);
        emit(out, cfg);
        return 0;
    }

    if (dens->parsed()) {
        SalemLift l = lift_salem(IntPolynomial::parse(poly_text));
        DensityStats stats = density_experiment(l, steps, bins);
        Output out;
        out.envelope = envelope_base("density", nullptr, cfg);
        json& result = out.envelope["result"];
        result["steps"] = std::to_string(stats.steps);
        result["bins"] = std::to_string(stats.bins);
        result["axes"] = std::to_string(stats.axes);
        result["cells_hit"] = std::to_string(stats.cell_counts.size());
        result["total_cells"] = std::to_string(stats.total_cells());
        result["all_cells_hit"] = stats.all_cells_hit();
        result["unit_box_fraction"] =
            std::to_string(stats.unit_box_hits) + "/" + std::to_string(stats.steps);
        json cells = json::array();
        for (const auto& [cell, hits] : stats.cell_counts) {
            json cj;
            std::string key;
            for (std::size_t i = 0; i < cell.size(); ++i)
                key += (i ? "," : "") + std::to_string(cell[i]);
            cj["cell"] = key;
            cj["count"] = std::to_string(hits);
            cells.push_back(cj);
        }
        result["cells"] = cells;
        out.scalars = {{"cells_hit", std::to_string(stats.cell_counts.size())},
                       {"total_cells", std::to_string(stats.total_cells())},
                       {"unit_box_fraction",
                        std::to_string(stats.unit_box_hits) + "/" + std::to_string(stats.steps)}};
        emit(out, cfg);
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const atlas_error& e) {
        json err;
        err["schema"] = "pisot-atlas/1";
        err["error"]["code"] = errc_name(e.code());
        err["error"]["message"] = e.what();
        std::cout << err.dump(2) << "\n";
        return e.is_guard_failure() ? 3 : 2;
    } catch (const std::exception& e) {
        json err;
        err["schema"] = "pisot-atlas/1";
        err["error"]["code"] = "InternalError";
        err["error"]["message"] = e.what();
        std::cout << err.dump(2) << "\n";
        return 2;
    }
}
