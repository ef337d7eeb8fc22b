// shiftlab: random instances, verification runs, spectral-shift extraction and report summaries.
//
// Exit codes: 0 all checks pass, 1 tolerance failure, 2 configuration or input error,
// 3 numerical breakdown.

#include <CLI11.hpp>
#include <iostream>

#include "shiftlab/shiftlab.hpp"

namespace {

using namespace shiftlab;

struct RunFlags {
    RunConfig values;
    std::string config_path;
    std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> bound;

    template <class T>
    void bind(CLI::App* app, const std::string& name, T RunConfig::*field, const std::string& help) {
        auto* opt = app->add_option(name, values.*field, help);
        bound.emplace_back(opt, [this, field](RunConfig& c) { c.*field = values.*field; });
    }

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "JSON file with config keys; flags override it");
        bind(app, "--theorem", &RunConfig::theorem,
             "unitary-mult | contraction-mult | helton | dissipative | lin-unitary | selfadjoint-resolvent");
        bind(app, "--dim", &RunConfig::dim, "matrix dimension (<= 12)");
        bind(app, "--n", &RunConfig::n, "remainder order (2..6)");
        bind(app, "--seed", &RunConfig::seed, "64-bit seed");
        bind(app, "--degree", &RunConfig::degree, "max |degree| of the test functions");
        bind(app, "--probes", &RunConfig::probes, "probe range M (default max(degree, n + 2))");
        bind(app, "--depth", &RunConfig::depth, "dilation depth (default M + 1)");
        bind(app, "--nodes", &RunConfig::nodes, "Gauss-Legendre nodes of the remainder integral");
        bind(app, "--theta-nodes", &RunConfig::theta_nodes, "nodes of the theta sweep");
        bind(app, "--theta-delta", &RunConfig::theta_delta, "excluded half-arc around z = 1");
        bind(app, "--radius", &RunConfig::helton_radius, "disk radius of the area quadrature");
        bind(app, "--tol", &RunConfig::tol, "relative tolerance (default per theorem)");
        bind(app, "--count", &RunConfig::count, "number of random test functions");
        bind(app, "--pert-norm", &RunConfig::pert_norm, "operator norm of the perturbation");
        bind(app, "--gauge", &RunConfig::gauge, "eta1-lower | distributed");
        bind(app, "--out", &RunConfig::out, "output file");
        bind(app, "--csv", &RunConfig::csv, "eta_n samples as CSV (extract)");
        bind(app, "--grid", &RunConfig::grid, "rows of the CSV export");
        bind(app, "--workers", &RunConfig::workers, "worker threads");
    }

    RunConfig resolve_flags() const {
        RunConfig c = config_path.empty() ? RunConfig{} : config_from_json(read_json_file(config_path));
        for (const auto& [opt, apply] : bound)
            if (opt->count() > 0) apply(c);
        return c;
    }
};

int run_verify_command(const RunConfig& c) {
    const auto rep = run_verify(c);
    const Json j = report_to_json(rep);
    if (!c.out.empty()) write_text_file(c.out, j.dump(2) + "\n");
    std::cout << summarize(rep);
    return rep.pass() ? 0 : 1;
}

int run_extract_command(const RunConfig& c) {
    const auto ssf = run_extract(c);
    const std::string text = ssf_to_json(ssf).dump(2) + "\n";
    if (c.out.empty()) std::cout << text;
    else write_text_file(c.out, text);
    if (!c.csv.empty()) write_text_file(c.csv, eta_csv(ssf, c.grid));
    std::cerr << "extracted n=" << ssf.n << " M=" << ssf.probe_range << " (" << to_string(ssf.kind) << ", "
              << to_string(ssf.gauge) << ")\n";
    return 0;
}

int run_report_command(const std::string& path) {
    const Json j = read_json_file(path);
    if (!j.contains("results") || !j.contains("pass")) throw FormatError(path + " is not a verification report");
    double worst = 0.0;
    int passed = 0;
    for (const auto& r : j.at("results")) {
        worst = std::max(worst, r.at("rel_err").get<double>());
        passed += r.at("pass").get<bool>() ? 1 : 0;
    }
    std::cout << j.at("theorem").get<std::string>() << ": " << passed << "/" << j.at("results").size()
              << " functions pass, max rel_err " << worst << "\n";
    if (j.contains("checks"))
        for (const auto& ch : j.at("checks"))
            std::cout << "  " << ch.at("name").get<std::string>() << " = " << ch.at("value").get<double>()
                      << (ch.at("pass").get<bool>() ? " ok" : " FAIL") << "\n";
    for (const auto& [k, v] : j.at("diagnostics").items()) std::cout << "  " << k << " = " << v.dump() << "\n";
    const bool pass = j.at("pass").get<bool>();
    std::cout << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shiftlab: higher-order spectral shift numerics"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "write a random instance as JSON");
    std::string kind = "unitary";
    int gen_dim = 3;
    std::uint64_t gen_seed = 0;
    double gen_norm = 1.5, gen_pert = 0.5;
    std::string gen_out;
    gen->add_option("--kind", kind, "unitary | selfadjoint-generator | contraction | dissipative | selfadjoint-pair");
    gen->add_option("--dim", gen_dim, "matrix dimension");
    gen->add_option("--seed", gen_seed, "64-bit seed");
    gen->add_option("--norm", gen_norm, "norm of the self-adjoint part");
    gen->add_option("--pert-norm", gen_pert, "norm of V for selfadjoint-pair");
    gen->add_option("--out", gen_out, "output file (stdout if omitted)");

    auto* verify = app.add_subcommand("verify", "check a trace formula on a random instance");
    RunFlags verify_flags;
    verify_flags.attach(verify);

    auto* extract = app.add_subcommand("extract", "extract spectral-shift data from monomial probes");
    RunFlags extract_flags;
    extract_flags.attach(extract);

    auto* report = app.add_subcommand("report", "summarize a verification report");
    std::string report_path;
    report->add_option("file", report_path, "report JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) {
            const std::string text = gen_instance(instance_kind_from_string(kind), gen_dim, gen_seed, gen_norm,
                                                  gen_pert).dump(2) + "\n";
            if (gen_out.empty()) std::cout << text;
            else write_text_file(gen_out, text);
            return 0;
        }
        if (*verify) return run_verify_command(verify_flags.resolve_flags());
        if (*extract) return run_extract_command(extract_flags.resolve_flags());
        if (*report) return run_report_command(report_path);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed JSON document: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
