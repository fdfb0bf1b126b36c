#include "courant/workbench.hpp"

#include <sstream>

namespace courant {

namespace {

[[noreturn]] void doc_error(const std::string& field, const std::string& what) {
    throw std::invalid_argument("document field '" + field + "': " + what);
}

Polynomial parse_poly(const Chart& chart, const Json& j, const std::string& field) {
    if (!j.is_string()) doc_error(field, "expected a polynomial string");
    try {
        return Polynomial::parse(chart, j.get<std::string>());
    } catch (const std::exception& e) {
        doc_error(field, std::string("polynomial parse error: ") + e.what());
    }
}

std::vector<int> resolve_coords(const Chart& chart, const Json& j, const std::string& field) {
    std::vector<int> out;
    if (!j.is_array()) doc_error(field, "expected an array of coordinate names");
    for (const auto& item : j) out.push_back(chart.index(item.get<std::string>()));
    return out;
}

}  // namespace

Json poly_to_json(const Polynomial& p, const Chart& chart) { return Json(p.str(chart)); }

Json form_to_json(const DifferentialForm& w) {
    Json terms = Json::array();
    for (const auto& [idx, c] : w.coeffs()) {
        Json names = Json::array();
        for (int i : idx) names.push_back(w.chart().name(i));
        terms.push_back(Json{{"indices", names}, {"coeff", c.str(w.chart())}});
    }
    return terms;
}

Json matrix_to_json(const PolyMatrix& m, const Chart& chart) {
    Json rows = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& p : row) r.push_back(p.str(chart));
        rows.push_back(r);
    }
    return rows;
}

DifferentialForm form_from_json(const Chart& chart, int degree, const Json& j, const std::string& field) {
    DifferentialForm w(chart, degree);
    if (!j.is_array()) doc_error(field, "expected an array of form terms");
    for (const auto& term : j) {
        if (!term.contains("indices") || !term.contains("coeff")) doc_error(field, "term needs 'indices' and 'coeff'");
        std::vector<int> idx = resolve_coords(chart, term.at("indices"), field + ".indices");
        if (static_cast<int>(idx.size()) != degree) doc_error(field, "term index count does not match the degree");
        w.add_term(idx, parse_poly(chart, term.at("coeff"), field + ".coeff"));
    }
    return w;
}

PolyMatrix matrix_from_json(const Chart& chart, const Json& j, const std::string& field) {
    if (!j.is_array()) doc_error(field, "expected a matrix (array of rows)");
    PolyMatrix m;
    for (const auto& row : j) {
        if (!row.is_array()) doc_error(field, "expected a matrix row");
        std::vector<Polynomial> r;
        for (const auto& entry : row) r.push_back(parse_poly(chart, entry, field));
        m.push_back(r);
    }
    return m;
}

ProblemDocument ProblemDocument::parse(const Json& j) {
    ProblemDocument doc;
    if (!j.contains("chart")) doc_error("chart", "missing");
    std::vector<std::string> names;
    for (const auto& n : j.at("chart")) names.push_back(n.get<std::string>());
    doc.chart = Chart(names);
    int dim = doc.chart.dim();

    if (j.contains("frame")) {
        const Json& fj = j.at("frame");
        if (!fj.contains("fields")) doc_error("frame.fields", "missing");
        PolyMatrix rows = matrix_from_json(doc.chart, fj.at("fields"), "frame.fields");
        std::vector<std::string> fnames;
        if (fj.contains("names"))
            for (const auto& n : fj.at("names")) fnames.push_back(n.get<std::string>());
        try {
            doc.frame = Frame(doc.chart, rows, fnames);
        } catch (const std::exception& e) {
            doc_error("frame", e.what());
        }
    } else {
        doc.frame = Frame::coordinate(doc.chart);
    }

    doc.h = j.contains("H") ? form_from_json(doc.chart, 3, j.at("H"), "H") : DifferentialForm::zero(doc.chart, 3);
    if (j.contains("B")) doc.b = form_from_json(doc.chart, 2, j.at("B"), "B");

    if (j.contains("subbundles")) {
        for (const auto& [name, sj] : j.at("subbundles").items()) {
            SubbundleSpec spec;
            spec.name = name;
            if (!sj.contains("span")) doc_error("subbundles." + name + ".span", "missing");
            for (const auto& fname : sj.at("span")) spec.span.push_back(doc.frame.index_of(fname.get<std::string>()));
            spec.fiber_coords = resolve_coords(doc.chart, sj.at("fiber_coords"), "subbundles." + name + ".fiber_coords");
            if (sj.contains("quotient_coords"))
                for (const auto& q : sj.at("quotient_coords")) spec.quotient_coords.push_back(q.get<std::string>());
            spec.shifted = sj.value("shift", false);
            if (sj.contains("shift_B"))
                spec.shift_b = form_from_json(doc.chart, 2, sj.at("shift_B"), "subbundles." + name + ".shift_B");
            if (spec.shifted && !doc.b && !spec.shift_b)
                doc_error("subbundles." + name, "shifted subbundle but no B form");
            doc.subbundles.push_back(spec);
        }
    }

    if (j.contains("metric")) {
        doc.metric_g = matrix_from_json(doc.chart, j.at("metric").at("g"), "metric.g");
        doc.metric_b = matrix_from_json(doc.chart, j.at("metric").at("b"), "metric.b");
    }
    if (j.contains("iso")) {
        for (const auto& row : j.at("iso")) {
            QVec coeffs;
            for (const auto& c : row) coeffs.push_back(parse_rational(c.get<std::string>()));
            doc.iso.push_back(coeffs);
        }
    }

    if (j.contains("para")) {
        ParaSpec para;
        const Json& pj = j.at("para");
        if (pj.contains("duality")) {
            for (const auto& dname : pj.at("duality")) {
                int idx = doc.frame.index_of(dname.get<std::string>());
                if (idx >= dim / 2) doc_error("para.duality", "duality directions must be first-half frame fields");
                para.duality.push_back(idx);
            }
        }
        if (pj.contains("metric")) {
            para.g_plus = matrix_from_json(doc.chart, pj.at("metric").at("g"), "para.metric.g");
            para.b_plus = matrix_from_json(doc.chart, pj.at("metric").at("b"), "para.metric.b");
        }
        if (pj.contains("phi")) {
            const Json& mj = pj.at("phi");
            std::vector<std::string> tnames;
            for (const auto& n : mj.at("target_chart")) tnames.push_back(n.get<std::string>());
            Chart target(tnames);
            std::vector<Polynomial> fwd, inv;
            for (const auto& e : mj.at("forward")) fwd.push_back(parse_poly(doc.chart, e, "para.phi.forward"));
            for (const auto& e : mj.at("inverse")) inv.push_back(parse_poly(target, e, "para.phi.inverse"));
            try {
                para.phi = DiffeoMap(doc.chart, target, fwd, inv);
            } catch (const std::exception& e) {
                doc_error("para.phi", e.what());
            }
        }
        doc.para = std::move(para);
    }

    if (j.contains("sample_plan")) {
        const Json& sj = j.at("sample_plan");
        doc.seed = sj.value("seed", 7);
        doc.sample_count = sj.value("count", 25);
        if (sj.contains("box")) {
            doc.box_lo = parse_rational(sj.at("box").at(0).get<std::string>());
            doc.box_hi = parse_rational(sj.at("box").at(1).get<std::string>());
        }
    }
    return doc;
}

FoliationSubbundle ProblemDocument::subbundle(int i) const {
    const SubbundleSpec& spec = subbundles.at(i);
    std::optional<BFieldMap> shift;
    if (spec.shift_b) {
        shift = BFieldMap(*spec.shift_b);
    } else if (spec.shifted) {
        shift = BFieldMap(*b);
    }
    return FoliationSubbundle(frame, spec.span, shift, spec.fiber_coords);
}

TDualityProblem ProblemDocument::tduality_problem() const {
    if (subbundles.size() < 2) throw std::invalid_argument("tduality problem needs subbundles K1 and K2");
    FoliationSubbundle k1 = subbundle(0);
    FoliationSubbundle k2 = subbundle(1);
    int q1 = chart.dim() - k1.rank();
    PolyMatrix g = metric_g ? *metric_g : poly_matrix_identity(q1, chart.dim());
    PolyMatrix bb = metric_b ? *metric_b : poly_matrix_zero(q1, q1, chart.dim());
    // Background matrices are entered as polynomials in the quotient-1
    // coordinates (a subchart of the doubled chart); re-express them there.
    Chart quotient1 = k1.quotient_chart(subbundles.at(0).quotient_coords);
    std::vector<int> base1 = k1.base_coords();
    auto to_quotient = [&](const PolyMatrix& m) {
        PolyMatrix out = poly_matrix_zero(m.size(), m.size(), quotient1.dim());
        for (size_t a = 0; a < m.size(); ++a)
            for (size_t c = 0; c < m.size(); ++c) out[a][c] = poly_restrict(m[a][c], base1, quotient1.dim());
        return out;
    };
    return TDualityProblem(TwistedCourant(chart, h), k1, k2, subbundles.at(0).quotient_coords,
                           subbundles.at(1).quotient_coords, to_quotient(g), to_quotient(bb), iso, plan());
}

void ReportDocument::verdict(const std::string& name, bool ok, const std::string& detail) {
    if (!j.contains("verdicts")) j["verdicts"] = Json::array();
    Json v{{"name", name}, {"pass", ok}};
    if (!detail.empty()) v["detail"] = detail;
    j["verdicts"].push_back(v);
    if (!ok) pass = false;
}

void ReportDocument::output(const std::string& key, const Json& value) { j["outputs"][key] = value; }

namespace {

void finish(ReportDocument& r) { r.j["pass"] = r.pass; }

void add_reducibility(ReportDocument& r, const ProblemDocument& doc, size_t idx) {
    const auto& spec = doc.subbundles[idx];
    try {
        FoliationSubbundle k = doc.subbundle(idx);
        TwistedCourant e(doc.chart, doc.h);
        ReducibilityReport rep = reducibility_check(e, k);
        std::string detail;
        for (const auto& d : rep.details) detail += d + "; ";
        r.verdict("reducibility." + spec.name, rep.pass(), detail);
        r.verdict("adapted_splitting." + spec.name, adapted_splitting_check(k));
    } catch (const std::exception& ex) {
        r.verdict("reducibility." + spec.name, false, ex.what());
    }
}

}  // namespace

ReportDocument cmd_check(const ProblemDocument& doc, int axiom_samples) {
    ReportDocument r;
    r.j["command"] = "check";
    r.j["seed"] = doc.seed;
    // Constructor failures (e.g. a non-closed twist) surface as verdicts.
    std::optional<TwistedCourant> e;
    try {
        e.emplace(doc.chart, doc.h);
        r.verdict("twist_closed", true);
    } catch (const std::exception& ex) {
        r.verdict("twist_closed", false, ex.what());
        finish(r);
        return r;
    }
    AxiomsReport ax = courant_axioms_check(*e, axiom_samples, doc.seed);
    std::ostringstream d;
    d << ax.samples << " random section tuples";
    r.verdict("courant_axioms", ax.pass(), d.str());
    for (size_t i = 0; i < doc.subbundles.size(); ++i) add_reducibility(r, doc, i);
    if (doc.metric_g && !doc.subbundles.empty() && doc.subbundles.size() >= 2) {
        try {
            TDualityProblem p = doc.tduality_problem();
            InvarianceReport inv = invariance_checks(p);
            std::string detail;
            for (const auto& msg : inv.details) detail += msg + "; ";
            r.verdict("invariance", inv.pass(), detail);
        } catch (const std::exception& ex) {
            r.verdict("invariance", false, ex.what());
        }
    }
    if (doc.para) {
        try {
            ParaHermitianFrame pf(doc.frame);
            FluxData flux = pf.flux_extract();
            SfConditionsReport sf = sf_conditions_check(flux, doc.para->duality);
            for (const auto& clause : sf.clauses) r.verdict("sf." + clause.clause, clause.pass, clause.detail);
            r.verdict("hcan_closed", ext_d(pf.hcan_flux()).is_zero());
        } catch (const std::exception& ex) {
            r.verdict("para", false, ex.what());
        }
    }
    finish(r);
    return r;
}

ReportDocument cmd_reduce(const ProblemDocument& doc) {
    ReportDocument r;
    r.j["command"] = "reduce";
    r.j["seed"] = doc.seed;
    std::optional<TwistedCourant> maybe_e;
    try {
        maybe_e.emplace(doc.chart, doc.h);
    } catch (const std::exception& ex) {
        r.verdict("twist_closed", false, ex.what());
        finish(r);
        return r;
    }
    const TwistedCourant& e = *maybe_e;
    for (size_t i = 0; i < doc.subbundles.size(); ++i) {
        const auto& spec = doc.subbundles[i];
        add_reducibility(r, doc, i);
        try {
            FoliationSubbundle k = doc.subbundle(i);
            if (spec.quotient_coords.empty()) doc_error("subbundles." + spec.name + ".quotient_coords", "missing");
            ReducedAlgebroid red = reduce_H(e, k, spec.quotient_coords);
            r.output("H_reduced." + spec.name, form_to_json(red.h_reduced));
        } catch (const std::exception& ex) {
            r.verdict("reduce." + spec.name, false, ex.what());
        }
    }
    finish(r);
    return r;
}

namespace {

Json section_pair_to_json(const std::pair<GeneralizedSection, GeneralizedSection>& pair) {
    Json out;
    out["side1"] = Json{{"vector", pair.first.vec().str()}, {"form", pair.first.form().str()}};
    out["side2"] = Json{{"vector", pair.second.vec().str()}, {"form", pair.second.form().str()}};
    return out;
}

}  // namespace

ReportDocument cmd_relate(const ProblemDocument& doc) {
    ReportDocument r;
    r.j["command"] = "relate";
    r.j["seed"] = doc.seed;
    try {
        TDualityProblem p = doc.tduality_problem();
        RelateReport rel = relate(p);
        r.verdict("relation", rel.ok, rel.error);
        r.verdict("rank_constant", rel.rank_constant);
        r.verdict("rank_formula", rel.rank_matches_formula,
                  "expected rk(R) = " + std::to_string(rel.expected_rank));
        r.verdict("isotropy", rel.isotropic_everywhere);
        Json gens = Json::array();
        for (const auto& pair : rel.generators) gens.push_back(section_pair_to_json(pair));
        r.output("generators", gens);
        r.output("certificate", rel.certificate);
        if (!rel.rank_per_point.empty()) r.output("rank", rel.rank_per_point.front());
    } catch (const std::exception& ex) {
        r.verdict("relation", false, ex.what());
    }
    finish(r);
    return r;
}

ReportDocument cmd_tdualize(const ProblemDocument& doc) {
    ReportDocument r;
    r.j["command"] = "tdualize";
    r.j["seed"] = doc.seed;
    try {
        TDualityProblem p = doc.tduality_problem();
        TDualityReport rep = tdualize(p);
        r.verdict("relation", rep.relation.pass(), rep.relation.error);
        if (!rep.relation.rank_per_point.empty()) {
            r.output("relation_rank", rep.relation.rank_per_point.front());
            r.output("k1_cap_k2_rank", rep.relation.k1_cap_k2_rank_per_point.front());
            r.output("relation_certificate", rep.relation.certificate);
        }
        std::string bd;
        for (const auto& msg : rep.b_decomposition.details) bd += msg + "; ";
        r.verdict("b_decomposition", rep.b_decomposition.pass(), bd);
        r.verdict("inclusions_agree", rep.b_decomposition.inclusions_agree);
        std::string iv;
        for (const auto& msg : rep.invariance.details) iv += msg + "; ";
        r.verdict("invariance", rep.invariance.pass(), iv);
        if (rep.h1_reduced) r.output("H1_reduced", form_to_json(*rep.h1_reduced));
        if (rep.h2_reduced) r.output("H2_reduced", form_to_json(*rep.h2_reduced));
        if (rep.dual) {
            Chart q2 = rep.dual->quotient2;
            r.output("g2_frame", matrix_to_json(rep.dual->g2, q2));
            r.output("b2_frame", matrix_to_json(rep.dual->b2, q2));
            r.output("g2_coords", matrix_to_json(rep.dual->g2_coords, q2));
            r.output("b2_coords", matrix_to_json(rep.dual->b2_coords, q2));
            r.verdict("geometric_certificate", rep.certificate.pass(),
                      "decomposition at " + std::to_string(rep.certificate.points) + " sample points");
        } else {
            r.verdict("dual_background", false, "preconditions failed; dual background not computed");
        }
        // Positivity of the input background, sample-certified.
        SamplePlan qplan = SamplePlan::make(p.quotient1().dim(), doc.sample_count, doc.seed, doc.box_lo, doc.box_hi);
        PositivityCertificate pos = positivity_sample_certificate(p.g1, qplan);
        r.verdict("g1_positive_sampled", pos.pass, pos.failure);
        r.output("positivity_certificate", "sampled");
    } catch (const std::exception& ex) {
        r.verdict("tdualize", false, ex.what());
    }
    finish(r);
    return r;
}

ReportDocument cmd_para_check(const ProblemDocument& doc) {
    ReportDocument r;
    r.j["command"] = "para-check";
    r.j["seed"] = doc.seed;
    try {
        if (!doc.para) doc_error("para", "missing");
        ParaHermitianFrame pf(doc.frame);
        FluxData flux = pf.flux_extract();
        Json fluxes;
        const Chart& chart = doc.chart;
        auto cube_out = [&](const char* key, const auto& cube) {
            Json entries = Json::array();
            for (int i = 0; i < flux.n; ++i)
                for (int j = 0; j < flux.n; ++j)
                    for (int k = 0; k < flux.n; ++k)
                        if (!cube[i][j][k].is_zero())
                            entries.push_back(Json{{"indices", {i, j, k}}, {"value", cube[i][j][k].str(chart)}});
            fluxes[key] = entries;
        };
        cube_out("f", flux.f);
        cube_out("H", flux.h);
        cube_out("Q", flux.q);
        cube_out("R", flux.r);
        r.output("fluxes", fluxes);
        SfConditionsReport sf = sf_conditions_check(flux, doc.para->duality);
        for (const auto& clause : sf.clauses) r.verdict("sf." + clause.clause, clause.pass, clause.detail);
        DifferentialForm h1 = pf.hcan_flux();
        r.verdict("hcan_closed", ext_d(h1).is_zero());
        r.verdict("hcan_bracket_route", h1 == pf.hcan_flux_bracket_route());
        r.output("H1", form_to_json(h1));
        if (doc.para->phi) {
            ParaHermitianFrame swapped = swap_frame(pf, doc.para->duality, *doc.para->phi);
            // The dual twist H2 = (phi^{-1})^*(H1 - dB) with B = (omega1 - phi*omega2)/2,
            // cross-checked against its displayed component form.
            DifferentialForm bfield =
                (pf.omega() - doc.para->phi->pullback(swapped.omega())) * Rational(1, 2);
            DifferentialForm h2 = doc.para->phi->pushforward(h1 - ext_d(bfield));
            r.output("H2", form_to_json(h2));
            r.verdict("h2_formula_route", h2 == dual_twist_formula(pf, swapped, doc.para->duality, *doc.para->phi));
            r.verdict("h2_closed", ext_d(h2).is_zero());
            // Basic with respect to the swapped -1-eigenbundle: no tilde
            // coframe components.
            bool basic = true;
            for (const auto& [idx, c] : swapped.frame().form_components(h2)) {
                for (int i : idx)
                    if (i >= swapped.half()) basic = false;
                (void)c;
            }
            r.verdict("h2_basic", basic);
            r.output("B", form_to_json(bfield));
            if (doc.para->g_plus) {
                GenParaMetric g1{*doc.para->g_plus, *doc.para->b_plus};
                SamplePlan plan = doc.plan();
                PositivityCertificate pos = positivity_sample_certificate(g1.g_plus, plan);
                r.verdict("g_plus_positive_sampled", pos.pass, pos.failure);
                GenParaMetric g2 = para_buscher(g1, pf, doc.para->duality, *doc.para->phi);
                GenParaMetric g2m = para_buscher_matrix_route(g1, pf, doc.para->duality, *doc.para->phi);
                bool agree = poly_matrix_equal(g2.g_plus, g2m.g_plus) && poly_matrix_equal(g2.b_plus, g2m.b_plus);
                r.verdict("buscher_matrix_route_agree", agree);
                r.verdict("pullback_identity",
                          pullback_identity_check(g1, pf, g2, swapped, *doc.para->phi));
                r.output("g2_plus", matrix_to_json(g2.g_plus, doc.para->phi->target()));
                r.output("b2_plus", matrix_to_json(g2.b_plus, doc.para->phi->target()));
            }
        }
    } catch (const std::exception& ex) {
        r.verdict("para_check", false, ex.what());
    }
    finish(r);
    return r;
}

namespace {

std::string num(const std::map<std::string, std::string>& params, const std::string& key, const std::string& dflt) {
    auto it = params.find(key);
    return it == params.end() ? dflt : it->second;
}

Json heisenberg_example(const std::string& m) {
    Json j;
    j["chart"] = {"x", "y", "z", "tx", "ty", "tz"};
    j["frame"] = {
        {"names", {"Zx", "Zy", "Zz", "tZx", "tZy", "tZz"}},
        {"fields",
         {{"1", "0", "0", "0", "0", "0"},
          {"0", "1", "0", "0", "0", "0"},
          {"0", m + "*x", "1", "0", "0", "0"},
          {"0", "0", "0", "1", "0", "0"},
          {"0", "0", "0", m + "*z", "1", "-" + m + "*x"},
          {"0", "0", "0", "0", "0", "1"}}},
    };
    j["H"] = Json::array();
    j["B"] = {Json{{"indices", {"y", "ty"}}, {"coeff", "1"}},
              Json{{"indices", {"z", "ty"}}, {"coeff", "-" + m + "*x"}}};
    j["subbundles"] = {
        {"K1",
         {{"span", {"tZx", "tZy", "tZz"}},
          {"fiber_coords", {"tx", "ty", "tz"}},
          {"quotient_coords", {"x", "y", "z"}},
          {"shift", false}}},
        {"K2",
         {{"span", {"tZx", "Zy", "tZz"}},
          {"fiber_coords", {"y", "tx", "tz"}},
          {"quotient_coords", {"xp", "yp", "zp"}},
          {"shift", true}}},
    };
    j["metric"] = {{"g", {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}},
                   {"b", {{"0", "0", "0"}, {"0", "0", "0"}, {"0", "0", "0"}}}};
    j["iso"] = {{"0", "1", "0"}};
    j["para"] = {
        {"duality", {"Zy"}},
        {"metric",
         {{"g", {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}},
          {"b", {{"0", "0", "0"}, {"0", "0", "0"}, {"0", "0", "0"}}}}},
        {"phi",
         {{"target_chart", {"xp", "yp", "zp", "txp", "typ", "tzp"}},
          {"forward", {"x", "ty", "z", "tx - " + m + "*z*ty", "y", "tz"}},
          {"inverse", {"xp", "typ", "zp", "txp + " + m + "*zp*yp", "yp", "tzp"}}}},
    };
    j["sample_plan"] = {{"seed", 11}, {"count", 25}, {"box", {"-1", "1"}}};
    return j;
}

Json lens_example(const std::string& m, const std::string& k, const std::string& n) {
    Json j;
    j["chart"] = {"x", "y", "z", "tz"};
    j["frame"] = {
        {"names", {"Zx", "Zy", "Zz", "tZz"}},
        {"fields",
         {{"1", "0", "0", "0"},
          {"0", "1", "-" + m + "*x", "-" + n + "*x"},
          {"0", "0", "1", "0"},
          {"0", "0", "0", "1"}}},
    };
    j["H"] = {Json{{"indices", {"x", "y", "z"}}, {"coeff", k}}};
    j["B"] = {Json{{"indices", {"z", "tz"}}, {"coeff", "-1"}},
              Json{{"indices", {"y", "z"}}, {"coeff", n + "*x"}},
              Json{{"indices", {"y", "tz"}}, {"coeff", "-" + m + "*x"}}};
    j["subbundles"] = {
        {"K1",
         {{"span", {"tZz"}},
          {"fiber_coords", {"tz"}},
          {"quotient_coords", {"x", "y", "z"}},
          {"shift", false}}},
        {"K2",
         {{"span", {"Zz"}},
          {"fiber_coords", {"z"}},
          {"quotient_coords", {"xp", "yp", "zp"}},
          {"shift", true}}},
    };
    // Base metric block with unit determinant; the fibre block is theta1 x theta1.
    j["metric"] = {{"g", {{"1", "x", "0"}, {"x", "1+x^2", "0"}, {"0", "0", "1"}}},
                   {"b", {{"0", "0", "0"}, {"0", "0", "0"}, {"0", "0", "0"}}}};
    j["iso"] = {{"0", "0", "1"}};
    j["sample_plan"] = {{"seed", 13}, {"count", 25}, {"box", {"-1", "1"}}};
    return j;
}

Json circle_example(const std::string& r2) {
    Json j;
    j["chart"] = {"z", "tz"};
    Json rows = Json::array();
    rows.push_back(Json::array({"1", "0"}));
    rows.push_back(Json::array({"0", "1"}));
    j["frame"] = {{"names", {"Zz", "tZz"}}, {"fields", rows}};
    j["H"] = Json::array();
    j["B"] = {Json{{"indices", {"z", "tz"}}, {"coeff", "1"}}};
    j["subbundles"] = {
        {"K1", {{"span", {"tZz"}}, {"fiber_coords", {"tz"}}, {"quotient_coords", {"z1"}}, {"shift", false}}},
        {"K2", {{"span", {"Zz"}}, {"fiber_coords", {"z"}}, {"quotient_coords", {"z2"}}, {"shift", true}}},
    };
    j["metric"] = {{"g", {{r2}}}, {"b", {{"0"}}}};
    j["iso"] = {{"1"}};
    j["para"] = {
        {"duality", {"Zz"}},
        {"metric", {{"g", {{r2}}}, {"b", {{"0"}}}}},
        {"phi", {{"target_chart", {"z2", "tz2"}}, {"forward", {"tz", "z"}}, {"inverse", {"tz2", "z2"}}}},
    };
    j["sample_plan"] = {{"seed", 17}, {"count", 20}, {"box", {"-1", "1"}}};
    return j;
}

}  // namespace

Json cmd_example(const std::string& name, const std::map<std::string, std::string>& params) {
    if (name == "heisenberg") return heisenberg_example(num(params, "m", "1"));
    if (name == "lens") return lens_example(num(params, "m", "1"), num(params, "k", "0"), num(params, "n", "0"));
    if (name == "circle") return circle_example(num(params, "R2", "4"));
    throw std::invalid_argument("unknown example '" + name + "' (expected lens|heisenberg|circle)");
}

}  // namespace courant
