#include "cantor/cli.hpp"

#include <chrono>
#include <cmath>

#include <CLI11.hpp>

#include "cantor/errors.hpp"
#include "cantor/io.hpp"
#include "cantor/measure.hpp"
#include "cantor/ml_test.hpp"
#include "cantor/recovery.hpp"
#include "cantor/voting.hpp"

namespace cantor {

namespace {

struct RunReport {
    std::string command;
    json inputs = json::object();
    json results = json::object();
    uint64_t seed = 0;
    bool ok = false;

    void add_input(const std::string& name, const std::filesystem::path& path,
                   const std::string& bytes) {
        inputs[name] = json{{"path", path.string()}, {"fnv1a64", fnv1a_hex(bytes)}};
    }
};

ClopenSet load_clopen(const std::filesystem::path& path, std::string& bytes) {
    bytes = read_file(path);
    size_t first = bytes.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && bytes[first] == '{') {
        json j = json::parse(bytes, nullptr, false);
        if (j.is_discarded()) throw ParseError("invalid JSON in " + path.string());
        return clopen_from_json(j);
    }
    return from_antichain_text(bytes);
}

int cmd_measure(const std::filesystem::path& set_file, const std::string& p_text, bool poly,
                RunReport& report) {
    std::string bytes;
    ClopenSet a = load_clopen(set_file, bytes);
    report.add_input("set_file", set_file, bytes);
    if (poly) {
        report.results["poly"] = poly_to_json(measure_poly(a));
    } else {
        report.results["p"] = p_text;
        report.results["measure"] = to_string(measure_at(a, parse_rational(p_text)));
    }
    report.ok = true;
    return 0;
}

int cmd_transport(const std::filesystem::path& test_file, const std::filesystem::path& perm_file,
                  const std::string& output, RunReport& report) {
    std::string test_bytes = read_file(test_file);
    std::string perm_bytes = read_file(perm_file);
    report.add_input("test_file", test_file, test_bytes);
    report.add_input("perm_file", perm_file, perm_bytes);
    TestStage stage = stage_from_json(json::parse(test_bytes));
    FiniteSupportPermutation f = permutation_from_json(json::parse(perm_bytes));

    TestStage transported = transport(f, stage);
    StageReport after = validate(transported);
    json levels = json::array();
    bool all_preserved = true;
    for (size_t n = 0; n < stage.levels.size(); ++n) {
        bool preserved = measure_poly(stage.levels[n]) == measure_poly(transported.levels[n]);
        all_preserved = all_preserved && preserved;
        levels.push_back(json{{"level", n},
                              {"measure", to_string(after.levels[n].measure)},
                              {"bound", to_string(after.levels[n].bound)},
                              {"measure_preserved", preserved},
                              {"within_bound", after.levels[n].within_bound}});
    }
    report.results["levels"] = std::move(levels);
    report.results["all_measures_preserved"] = all_preserved;
    report.results["transported_stage_valid"] = after.valid;
    if (!output.empty()) {
        write_file(output, stage_to_json(transported).dump(2) + "\n");
        report.results["output"] = output;
    }
    report.ok = all_preserved && after.valid;
    return report.ok ? 0 : 1;
}

int cmd_certify_blockcode(const std::filesystem::path& code_file, RunReport& report) {
    std::string bytes = read_file(code_file);
    report.add_input("code_file", code_file, bytes);
    BlockCode code = blockcode_from_json(json::parse(bytes));
    bool preserves = preserves_all_bernoulli(code);
    auto induced = induced_by_coordinate_permutation(code);
    report.results["preserves_all_bernoulli"] = preserves;
    report.results["induced_by_coordinate_permutation"] =
        induced ? json(induced->table()) : json(nullptr);
    report.ok = preserves;
    return report.ok ? 0 : 1;
}

int cmd_recover(const std::filesystem::path& instance_file, RecoveryConfig config,
                uint32_t window_override, RunReport& report) {
    std::string bytes = read_file(instance_file);
    report.add_input("instance_file", instance_file, bytes);
    RecoveryInstance instance = instance_from_json(json::parse(bytes));
    if (window_override) instance.window = window_override;

    RecoveryReport recovery = recover_report(instance, config);
    json coordinates = json::array();
    for (const CoordinateReport& c : recovery.coordinates) {
        json candidates = json::array();
        for (const CandidateReport& cand : c.candidates) {
            candidates.push_back(json{{"bit", cand.bit},
                                      {"measure", to_string(cand.measure)},
                                      {"accepted", cand.accepted},
                                      {"margin", to_string(cand.margin)}});
        }
        coordinates.push_back(json{{"coordinate", c.coordinate},
                                   {"candidates", std::move(candidates)},
                                   {"chosen", c.chosen ? json(*c.chosen) : json(nullptr)},
                                   {"failure", c.failure}});
    }
    json table = json::object();
    for (const auto& [n, b] : recovery.table) table[std::to_string(n)] = b;
    report.results["coordinates"] = std::move(coordinates);
    report.results["table"] = std::move(table);
    report.results["complete"] = recovery.complete;
    report.results["injective"] = recovery.injective;
    report.results["mode"] = config.mode == RecoveryMode::exact ? "exact" : "mc";
    if (config.mode == RecoveryMode::monte_carlo) {
        report.results["samples"] = config.samples;
        // Hoeffding two-sided bound at the reporting margin 1/20.
        double delta = 0.05;
        report.results["confidence"] =
            json{{"delta", delta},
                 {"alpha", 2.0 * std::exp(-2.0 * static_cast<double>(config.samples) * delta * delta)}};
    }
    report.ok = recovery.complete && recovery.injective;
    return report.ok ? 0 : 1;
}

int cmd_synthesize(const std::filesystem::path& perm_file, const std::string& sigma_text,
                   uint32_t depth, const std::string& mass_text, uint64_t seed,
                   const std::string& output, RunReport& report) {
    std::string bytes = read_file(perm_file);
    report.add_input("perm_file", perm_file, bytes);
    FiniteSupportPermutation f = permutation_from_json(json::parse(bytes));
    BinaryWord sigma = BinaryWord::from_string(sigma_text);
    Rational mass = parse_rational(mass_text);

    RecoveryInstance instance = synthesize_instance(f, sigma, depth, mass, seed);
    write_file(output, instance_to_json(instance).dump(2) + "\n");

    Rational agreement = Rational(1);
    if (instance.window > 0) {
        agreement = sigma_conditional_measure(
            agreement_set(instance.phi, f, sigma, instance.window), sigma, make_rational(1, 2));
    }
    Rational promise = make_rational(95, 100);
    report.results["output"] = output;
    report.results["sigma"] = sigma_text;
    report.results["depth"] = depth;
    report.results["corruption_mass"] = mass_text;
    report.results["agreement_measure"] = to_string(agreement);
    report.results["promise_level"] = to_string(promise);
    report.results["meets_promise"] = agreement >= promise;
    report.ok = agreement >= promise;
    return report.ok ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computation on clopen subsets of Cantor space under Bernoulli measures"};
    app.require_subcommand(1);

    std::string p_text = "1/2";
    bool poly = false;
    std::string set_file, test_file, perm_file, code_file, instance_file;
    std::string output, sigma_text, mass_text = "0", mode_text = "exact";
    uint32_t depth = 0, window = 0, search_bound = 0;
    uint64_t seed = 0, samples = 20000;

    CLI::App* measure = app.add_subcommand("measure", "Exact measure of a clopen set");
    measure->add_option("set-file", set_file, "antichain text or cylinder JSON")->required();
    auto* p_opt = measure->add_option("--p", p_text, "Bernoulli parameter a/b");
    measure->add_flag("--poly", poly, "print the measure polynomial instead")->excludes(p_opt);

    CLI::App* transport_cmd = app.add_subcommand("transport", "Transport a test stage through a permutation pullback");
    transport_cmd->add_option("test-file", test_file)->required();
    transport_cmd->add_option("perm-file", perm_file)->required();
    transport_cmd->add_option("-o,--output", output, "write the transported stage here");

    CLI::App* certify = app.add_subcommand("certify-blockcode", "Certify measure preservation of a block code");
    certify->add_option("code-file", code_file)->required();

    CLI::App* recover = app.add_subcommand("recover", "Recover the inverse permutation from a noisy functional");
    recover->add_option("instance-file", instance_file)->required();
    recover->add_option("--mode", mode_text, "exact|mc")->check(CLI::IsMember({"exact", "mc"}));
    recover->add_option("--samples", samples, "samples per candidate in mc mode");
    recover->add_option("--seed", seed);
    recover->add_option("--search-bound", search_bound, "max candidate bit (0: output width)");
    recover->add_option("--window", window, "override the instance window");
    recover->add_option("--p", p_text, "Bernoulli parameter a/b");

    CLI::App* synthesize = app.add_subcommand("synthesize", "Synthesize a noisy recovery instance");
    synthesize->add_option("perm-file", perm_file)->required();
    synthesize->add_option("--sigma", sigma_text, "conditioning word");
    synthesize->add_option("--depth", depth, "functional depth")->required();
    synthesize->add_option("--mass", mass_text, "conditional corruption mass a/b");
    synthesize->add_option("--seed", seed);
    synthesize->add_option("-o,--output", output, "instance file")->required();

    std::vector<const char*> argv;
    argv.push_back("cantor");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    RunReport report;
    report.seed = seed;
    auto started = std::chrono::steady_clock::now();
    int code = 1;
    try {
        if (measure->parsed()) {
            report.command = "measure";
            code = cmd_measure(set_file, p_text, poly, report);
        } else if (transport_cmd->parsed()) {
            report.command = "transport";
            code = cmd_transport(test_file, perm_file, output, report);
        } else if (certify->parsed()) {
            report.command = "certify-blockcode";
            code = cmd_certify_blockcode(code_file, report);
        } else if (recover->parsed()) {
            report.command = "recover";
            RecoveryConfig config;
            config.p = parse_rational(p_text);
            config.mode = mode_text == "mc" ? RecoveryMode::monte_carlo : RecoveryMode::exact;
            config.samples = samples;
            config.seed = seed;
            config.search_bound = search_bound;
            code = cmd_recover(instance_file, config, window, report);
        } else if (synthesize->parsed()) {
            report.command = "synthesize";
            code = cmd_synthesize(perm_file, sigma_text, depth, mass_text, seed, output, report);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    double elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - started)
                            .count();
    json run{{"command", report.command}, {"inputs", report.inputs},   {"seed", report.seed},
             {"results", report.results}, {"elapsed_ms", elapsed_ms}, {"ok", report.ok}};
    out << run.dump(2) << "\n";
    return code;
}

} // namespace cantor
