#pragma once

#include <string>

#include <json.hpp>

#include "courant/para.hpp"
#include "courant/tduality.hpp"

namespace courant {

using Json = nlohmann::ordered_json;

/// Structured problem document (see README for the schema).  Parsing
/// validates the schema and resolves every name; errors carry the offending
/// field.
struct ProblemDocument {
    Chart chart;
    Frame frame;                      // coordinate frame when absent
    DifferentialForm h;               // degree 3
    std::optional<DifferentialForm> b;  // degree 2, K2's shift
    struct SubbundleSpec {
        std::string name;
        std::vector<int> span;         // frame indices
        std::vector<int> fiber_coords; // chart indices
        std::vector<std::string> quotient_coords;
        bool shifted = false;                       // shift by the document B
        std::optional<DifferentialForm> shift_b;    // or by an inline two-form
    };
    std::vector<SubbundleSpec> subbundles;
    std::optional<PolyMatrix> metric_g;  // reduced-frame-1 components
    std::optional<PolyMatrix> metric_b;
    std::vector<QVec> iso;
    struct ParaSpec {
        std::vector<int> duality;  // first-half frame indices
        std::optional<PolyMatrix> g_plus, b_plus;
        std::optional<DiffeoMap> phi;
    };
    std::optional<ParaSpec> para;
    std::uint64_t seed = 7;
    int sample_count = 25;
    Rational box_lo = Rational(-1), box_hi = Rational(1);

    static ProblemDocument parse(const Json& j);

    FoliationSubbundle subbundle(int i) const;
    SamplePlan plan() const { return SamplePlan::make(chart.dim(), sample_count, seed, box_lo, box_hi); }
    TDualityProblem tduality_problem() const;
};

/// Machine-readable result document; deterministic for a fixed seed unless
/// timings are requested.
struct ReportDocument {
    Json j;
    bool pass = true;

    void verdict(const std::string& name, bool ok, const std::string& detail = "");
    void output(const std::string& key, const Json& value);
    std::string str(int indent = 2) const { return j.dump(indent); }
};

Json poly_to_json(const Polynomial& p, const Chart& chart);
Json form_to_json(const DifferentialForm& w);
Json matrix_to_json(const PolyMatrix& m, const Chart& chart);
DifferentialForm form_from_json(const Chart& chart, int degree, const Json& j, const std::string& field);
PolyMatrix matrix_from_json(const Chart& chart, const Json& j, const std::string& field);

ReportDocument cmd_check(const ProblemDocument& doc, int axiom_samples);
ReportDocument cmd_reduce(const ProblemDocument& doc);
ReportDocument cmd_relate(const ProblemDocument& doc);
ReportDocument cmd_tdualize(const ProblemDocument& doc);
ReportDocument cmd_para_check(const ProblemDocument& doc);

/// Packaged example documents reproducing the worked cases: "heisenberg"
/// (param m), "lens" (params m, k, n), "circle" (param R2).
Json cmd_example(const std::string& name, const std::map<std::string, std::string>& params);

}  // namespace courant
