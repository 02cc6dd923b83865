#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gridloc/io.hpp"
#include "gridloc/metrics.hpp"
#include "gridloc/pipeline.hpp"
#include "gridloc/rng.hpp"
#include "gridloc/simulator.hpp"
#include "gridloc/version.hpp"

namespace fs = std::filesystem;
using namespace gridloc;

namespace {

struct ScenarioInput {
    Scenario scenario;
    std::string digest;           // content hash of the scenario source
    std::string source_name;      // file path or preset name
};

ScenarioInput resolve_scenario(const std::string& scenario_arg, const std::string& preset,
                               std::optional<std::uint64_t> seed_override) {
    ScenarioInput input;
    if (!preset.empty()) {
        input.scenario = scenario_preset(preset);
        input.source_name = "preset:" + preset;
        input.digest = content_digest(scenario_to_json(input.scenario).dump());
    } else if (!scenario_arg.empty()) {
        const std::string bytes = read_file(scenario_arg);
        input.scenario = load_scenario(scenario_arg);
        input.source_name = scenario_arg;
        input.digest = content_digest(bytes);
    } else {
        throw ValidationError("provide a scenario file or --preset NAME");
    }
    if (seed_override) {
        input.scenario.seed = *seed_override;
    }
    return input;
}

void check_anchor_ids(const Deployment& deployment, std::span<const RssiWindow> windows) {
    for (const auto& w : windows) {
        for (const auto& [id, rssi] : w.readings) {
            if (!deployment.has_anchor(id)) {
                throw LookupError("samples reference unknown anchor id '" + id +
                                  "' (window " + std::to_string(w.window_id) + ")");
            }
        }
    }
}

int cmd_simulate(const std::string& scenario_arg, const std::string& preset,
                 std::optional<std::uint64_t> seed_override, const std::string& out_dir) {
    const ScenarioInput input = resolve_scenario(scenario_arg, preset, seed_override);
    const SimulationResult sim = run(input.scenario);

    fs::create_directories(out_dir);
    const fs::path out(out_dir);
    write_file_atomic((out / "truth.csv").string(), truth_to_csv(sim.truth));
    write_file_atomic((out / "samples.csv").string(), samples_to_csv(sim.windows));
    // Resolved deployment and model, so locate can run on preset scenarios.
    write_file_atomic((out / "deployment.json").string(),
                      deployment_to_json(input.scenario.deployment).dump(2) + "\n");
    write_file_atomic((out / "model.json").string(),
                      model_to_json(input.scenario.model).dump(2) + "\n");

    json config_echo = scenario_to_json(input.scenario);
    config_echo["min_distance_m"] = kMinAnchorDistance;
    const json manifest = make_manifest(
        "simulate", {{input.source_name, input.digest}}, input.scenario.seed, config_echo,
        {"truth.csv", "samples.csv", "deployment.json", "model.json"});
    write_file_atomic((out / "manifest-simulate.json").string(), manifest.dump(2) + "\n");
    return 0;
}

int cmd_locate(const std::string& deployment_path, const std::string& model_path,
               const std::string& samples_path, const std::string& config_path,
               bool clamp, const std::string& baseline, const std::string& out_path) {
    const Deployment deployment = load_deployment(deployment_path);
    const PathLossModel model = load_model(model_path);
    const std::string sample_bytes = read_file(samples_path);
    const std::vector<RssiWindow> windows = samples_from_csv(sample_bytes);
    check_anchor_ids(deployment, windows);

    EstimatorConfig config;
    if (!config_path.empty()) {
        config = load_config(config_path);
    }
    if (clamp) {
        config.clamp_policy = ClampPolicy::kClamp;
    }
    if (!baseline.empty()) {
        if (baseline != "centroid") {
            throw ValidationError("--baseline supports only 'centroid'");
        }
        config.baseline_enabled = true;
    }

    const BatchResult result = run_batch(config, deployment, model, windows);

    const fs::path out(out_path);
    const fs::path dir = out.parent_path().empty() ? fs::path(".") : out.parent_path();
    fs::create_directories(dir);
    write_file_atomic(out.string(), estimates_to_csv(result.estimates));
    write_file_atomic((dir / "skips.csv").string(), skips_to_csv(result.skips));

    std::map<std::string, std::string> inputs = {
        {deployment_path, content_digest(read_file(deployment_path))},
        {samples_path, content_digest(sample_bytes)},
    };
    inputs.emplace(model_path, is_model_preset(model_path)
                                   ? content_digest(model_to_json(model).dump())
                                   : content_digest(read_file(model_path)));
    const json manifest =
        make_manifest("locate", inputs, std::nullopt, config_to_json(config),
                      {out.filename().string(), "skips.csv"});
    write_file_atomic((dir / "manifest-locate.json").string(), manifest.dump(2) + "\n");
    return 0;
}

int cmd_report(const std::string& truth_path, const std::string& estimates_path,
               std::vector<double> bins, const std::vector<int>& surface_dims,
               const std::string& out_dir) {
    const std::string truth_bytes = read_file(truth_path);
    const std::string est_bytes = read_file(estimates_path);
    const TruthTrace truth = truth_from_csv(truth_bytes);
    const std::vector<Estimate> estimates = estimates_from_csv(est_bytes);
    if (bins.empty()) {
        bins = default_bin_edges();
    }
    const ErrorReport report = build_report(truth, estimates, bins);

    fs::create_directories(out_dir);
    const fs::path out(out_dir);
    write_file_atomic((out / "report.json").string(), report_to_json(report).dump(2) + "\n");
    write_file_atomic((out / "report.csv").string(), report_to_csv(report));

    std::vector<std::string> outputs = {"report.json", "report.csv"};
    json config_echo = {{"bins", bins}};
    if (!surface_dims.empty()) {
        const ErrorSurface surface =
            error_surface(truth, estimates, surface_dims[0], surface_dims[1]);
        write_file_atomic((out / "surface.csv").string(), surface_to_csv(surface));
        outputs.push_back("surface.csv");
        config_echo["surface"] = {{"nx", surface_dims[0]}, {"ny", surface_dims[1]}};
    }
    const json manifest = make_manifest("report",
                                        {{truth_path, content_digest(truth_bytes)},
                                         {estimates_path, content_digest(est_bytes)}},
                                        std::nullopt, config_echo, outputs);
    write_file_atomic((out / "manifest-report.json").string(), manifest.dump(2) + "\n");
    return 0;
}

int cmd_sweep_sigma(const std::string& scenario_arg, const std::string& preset,
                    std::optional<std::uint64_t> seed_override, std::vector<double> sigmas,
                    const std::string& out_dir) {
    if (sigmas.empty()) {
        throw ValidationError("--sigmas must list at least one value");
    }
    std::vector<double> unique;
    for (const double s : sigmas) {
        if (std::find(unique.begin(), unique.end(), s) != unique.end()) {
            std::fprintf(stderr, "warning: duplicate sigma %s dropped\n",
                         format_double(s).c_str());
            continue;
        }
        unique.push_back(s);
    }

    const ScenarioInput input = resolve_scenario(scenario_arg, preset, seed_override);
    std::string summary = "sigma,method,count,skipped,mean,median,p95\n";
    for (const double sigma : unique) {
        if (sigma < 0.0) {
            throw ValidationError("sigma must be >= 0");
        }
        Scenario scenario = input.scenario;
        scenario.model.sigma = sigma;
        // Sub-seed from the sigma value itself, so row results are
        // independent of list order.
        std::uint64_t sigma_bits;
        static_assert(sizeof(sigma_bits) == sizeof(sigma));
        std::memcpy(&sigma_bits, &sigma, sizeof(sigma_bits));
        scenario.seed = substream_seed(input.scenario.seed, sigma_bits, "sweep-sigma");

        const SimulationResult sim = run(scenario);
        for (const bool baseline : {false, true}) {
            EstimatorConfig config;
            config.baseline_enabled = baseline;
            const BatchResult batch = run_batch(config, scenario.deployment, scenario.model,
                                                sim.windows);
            const ErrorReport report =
                build_report(sim.truth, batch.estimates, default_bin_edges());
            summary += format_double(sigma);
            summary += ',';
            summary += baseline ? "centroid-baseline" : "refined";
            summary += ',';
            summary += std::to_string(report.summary.count);
            summary += ',';
            summary += std::to_string(report.summary.skipped);
            summary += ',';
            summary += format_double(report.summary.mean);
            summary += ',';
            summary += format_double(report.summary.median);
            summary += ',';
            summary += format_double(report.summary.p95);
            summary += '\n';
        }
    }

    fs::create_directories(out_dir);
    const fs::path out(out_dir);
    write_file_atomic((out / "summary.csv").string(), summary);
    const json manifest = make_manifest("sweep-sigma", {{input.source_name, input.digest}},
                                        input.scenario.seed, json{{"sigmas", unique}},
                                        {"summary.csv"});
    write_file_atomic((out / "manifest-sweep-sigma.json").string(), manifest.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-phase RSSI grid localization: simulator, estimator, and reports"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // simulate
    std::string sim_scenario;
    std::string sim_preset;
    std::string sim_out;
    std::optional<std::uint64_t> sim_seed;
    auto* simulate = app.add_subcommand("simulate", "Generate truth and RSSI windows");
    simulate->add_option("scenario", sim_scenario, "Scenario JSON file");
    simulate->add_option("--preset", sim_preset, "Scenario preset name (paper-iv)");
    simulate->add_option("--seed", sim_seed, "Override the scenario seed");
    simulate->add_option("--out", sim_out, "Output directory")->required();

    // locate
    std::string loc_deployment;
    std::string loc_model;
    std::string loc_samples;
    std::string loc_config;
    std::string loc_baseline;
    std::string loc_out;
    bool loc_clamp = false;
    auto* locate = app.add_subcommand("locate", "Estimate positions from averaged samples");
    locate->add_option("--deployment", loc_deployment, "Deployment JSON file")->required();
    locate->add_option("--model", loc_model, "Model JSON file or preset (outdoor/indoor)")
        ->required();
    locate->add_option("--samples", loc_samples, "samples.csv from simulate")->required();
    locate->add_option("--config", loc_config, "Estimator config JSON file");
    locate->add_flag("--clamp", loc_clamp, "Clamp refined positions to the resolved cell");
    locate->add_option("--baseline", loc_baseline, "Use a baseline estimator (centroid)");
    locate->add_option("--out", loc_out, "Output estimates.csv path")->required();

    // report
    std::string rep_truth;
    std::string rep_estimates;
    std::string rep_out;
    std::vector<double> rep_bins;
    std::vector<int> rep_surface;
    auto* report = app.add_subcommand("report", "Error report from truth and estimates");
    report->add_option("--truth", rep_truth, "truth.csv")->required();
    report->add_option("--estimates", rep_estimates, "estimates.csv")->required();
    report->add_option("--bins", rep_bins, "Histogram bin edges in meters")->delimiter(',');
    report->add_option("--surface", rep_surface, "Emit surface.csv for an NX x NY sweep")
        ->expected(2);
    report->add_option("--out", rep_out, "Output directory")->required();

    // sweep-sigma
    std::string swp_scenario;
    std::string swp_preset;
    std::string swp_out;
    std::optional<std::uint64_t> swp_seed;
    std::vector<double> swp_sigmas;
    auto* sweep = app.add_subcommand("sweep-sigma",
                                     "Refined vs centroid-baseline error across sigmas");
    sweep->add_option("scenario", swp_scenario, "Scenario JSON file");
    sweep->add_option("--preset", swp_preset, "Scenario preset name (paper-iv)");
    sweep->add_option("--seed", swp_seed, "Override the scenario seed");
    sweep->add_option("--sigmas", swp_sigmas, "Sigma values in dB")->required()->delimiter(',');
    sweep->add_option("--out", swp_out, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            return cmd_simulate(sim_scenario, sim_preset, sim_seed, sim_out);
        }
        if (locate->parsed()) {
            return cmd_locate(loc_deployment, loc_model, loc_samples, loc_config, loc_clamp,
                              loc_baseline, loc_out);
        }
        if (report->parsed()) {
            return cmd_report(rep_truth, rep_estimates, rep_bins, rep_surface, rep_out);
        }
        if (sweep->parsed()) {
            return cmd_sweep_sigma(swp_scenario, swp_preset, swp_seed, swp_sigmas, swp_out);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
