#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "courant/workbench.hpp"

namespace {

courant::Json read_document(const std::string& path) {
    std::string text;
    if (path.empty() || path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    return courant::Json::parse(text);
}

struct CommonOpts {
    std::string input = "-";
    std::string format = "json";
    int samples = 0;       // 0: use the document's sample plan count
    long seed = -1;        // -1: use the document's seed
    std::string box;
    bool timings = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("input", opts.input, "problem document (file or '-' for stdin)");
    cmd->add_option("--format", opts.format, "output format: json|text")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--samples", opts.samples, "override the sample plan count");
    cmd->add_option("--seed", opts.seed, "override the document seed");
    cmd->add_option("--box", opts.box, "sampling box 'a,b' (rationals)");
    cmd->add_flag("--timings", opts.timings, "include wall-clock timings (non-deterministic)");
}

courant::ProblemDocument load(const CommonOpts& opts) {
    courant::ProblemDocument doc = courant::ProblemDocument::parse(read_document(opts.input));
    if (opts.seed >= 0) doc.seed = static_cast<std::uint64_t>(opts.seed);
    if (opts.samples > 0) doc.sample_count = opts.samples;
    if (!opts.box.empty()) {
        auto comma = opts.box.find(',');
        if (comma == std::string::npos) throw std::runtime_error("--box expects 'a,b'");
        doc.box_lo = courant::parse_rational(opts.box.substr(0, comma));
        doc.box_hi = courant::parse_rational(opts.box.substr(comma + 1));
    }
    return doc;
}

int emit(courant::ReportDocument& report, const CommonOpts& opts, double elapsed_ms) {
    if (opts.timings) report.j["timings_ms"] = elapsed_ms;
    if (opts.format == "text") {
        for (const auto& v : report.j["verdicts"]) {
            std::cout << (v["pass"].get<bool>() ? "PASS " : "FAIL ") << v["name"].get<std::string>();
            if (v.contains("detail")) std::cout << "  (" << v["detail"].get<std::string>() << ")";
            std::cout << "\n";
        }
        if (report.j.contains("outputs")) std::cout << report.j["outputs"].dump(2) << "\n";
        std::cout << (report.pass ? "PASS" : "FAIL") << "\n";
    } else {
        std::cout << report.str() << "\n";
    }
    return report.pass ? 0 : 1;
}

template <typename Fn>
int run(const CommonOpts& opts, Fn&& fn) {
    auto start = std::chrono::steady_clock::now();
    courant::ProblemDocument doc = load(opts);
    courant::ReportDocument report = fn(doc);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return emit(report, opts, ms);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact workbench for Courant algebroids, reductions and T-duality"};
    app.require_subcommand(1);

    CommonOpts check_opts, reduce_opts, relate_opts, tdualize_opts, para_opts;
    int axiom_samples = 100;

    CLI::App* check = app.add_subcommand("check", "run the axiom / reducibility / invariance suites");
    add_common(check, check_opts);
    check->add_option("--axiom-samples", axiom_samples, "random section tuples for the axiom suite");

    CLI::App* reduce = app.add_subcommand("reduce", "reduce the twist three-form along the declared subbundles");
    add_common(reduce, reduce_opts);

    CLI::App* relate = app.add_subcommand("relate", "build the T-duality relation and certify its rank");
    add_common(relate, relate_opts);

    CLI::App* tdualize = app.add_subcommand("tdualize", "run the full pipeline and emit the dual background");
    add_common(tdualize, tdualize_opts);

    CLI::App* para = app.add_subcommand("para-check", "para-Hermitian fluxes, admissibility and Buscher rules");
    add_common(para, para_opts);

    CLI::App* example = app.add_subcommand("example", "emit a packaged example document");
    std::string example_name;
    std::vector<std::string> example_params;
    example->add_option("name", example_name, "lens|heisenberg|circle")->required();
    example->add_option("--param,-p", example_params, "example parameter key=value (e.g. -p m=1)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) return run(check_opts, [&](const courant::ProblemDocument& d) {
                return courant::cmd_check(d, axiom_samples);
            });
        if (*reduce) return run(reduce_opts, courant::cmd_reduce);
        if (*relate) return run(relate_opts, courant::cmd_relate);
        if (*tdualize) return run(tdualize_opts, courant::cmd_tdualize);
        if (*para) return run(para_opts, courant::cmd_para_check);
        if (*example) {
            std::map<std::string, std::string> params;
            for (const auto& kv : example_params) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) throw std::runtime_error("--param expects key=value");
                params[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            std::cout << courant::cmd_example(example_name, params).dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
