#include "phaseci/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "phaseci/io.hpp"

namespace phaseci::cli {

namespace {

struct ModelFlags {
    std::string variant;
    int atoms = 1;
    std::optional<double> phi0;
    double phi_min = 0.0;
    double phi_max = 0.0;
};

void add_model_flags(CLI::App& cmd, ModelFlags& flags) {
    cmd.add_option("--model", flags.variant, "model variant (separable_energy | ghz_parity)")
        ->required();
    cmd.add_option("--atoms", flags.atoms, "number of atoms N")->required();
    cmd.add_option("--phi0", flags.phi0,
                   "reference phase (default: the standard value for the variant)");
    cmd.add_option("--phi-min", flags.phi_min, "lower end of the parameter interval")->required();
    cmd.add_option("--phi-max", flags.phi_max, "upper end of the parameter interval")->required();
}

StatisticalModel build_model(const ModelFlags& flags, Validation validation) {
    const RamseyVariant variant = variant_from_name(flags.variant);
    const double phi0 = flags.phi0 ? *flags.phi0 : standard_reference_phase(variant, flags.atoms);
    return make_ramsey_model(variant, flags.atoms, phi0,
                             ParameterInterval(flags.phi_min, flags.phi_max), validation);
}

void check_epsilon_flag(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("--epsilon must lie in (0, 1), got " +
                                    format_double(epsilon));
}

int cmd_estimate(const ModelFlags& flags, const std::string& data_path, double epsilon,
                 std::ostream& out) {
    check_epsilon_flag(epsilon);
    const std::vector<double> outcomes = read_outcome_file(data_path);
    const StatisticalModel model = build_model(flags, Validation::checked);
    const DataAggregate agg =
        aggregate(outcomes, model.outcomes.lower, model.outcomes.upper);
    const ConfidenceResult result = confidence(model, agg, epsilon);
    out << confidence_to_json(result, model.interval.width()).dump(2) << '\n';
    return kOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 std::optional<std::uint64_t> seed_override, std::optional<int> threads_override,
                 std::ostream& out) {
    nlohmann::json doc;
    {
        std::ifstream in(config_path);
        if (!in) throw std::invalid_argument("cannot open config file: " + config_path);
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& err) {
            throw std::invalid_argument(std::string("config is not valid JSON: ") + err.what());
        }
    }
    ExperimentConfig config = experiment_config_from_json(doc);
    if (seed_override) config.master_seed = *seed_override;
    if (threads_override) config.threads = *threads_override;

    RunManifest manifest;
    manifest.tool_version = kVersion;
    manifest.master_seed = config.master_seed;
    manifest.config_echo = experiment_config_to_json(config);
    manifest.started_utc = utc_timestamp_now();

    const std::vector<SummaryRecord> records = monte_carlo(config);

    {
        std::ofstream csv(out_path, std::ios::binary);
        if (!csv) throw std::invalid_argument("cannot write output file: " + out_path);
        csv << summary_csv(records);
    }
    manifest.finished_utc = utc_timestamp_now();
    manifest.output_digests.emplace_back(out_path, file_digest_hex(out_path));

    const std::string manifest_path = out_path + ".manifest.json";
    {
        std::ofstream mf(manifest_path, std::ios::binary);
        if (!mf) throw std::invalid_argument("cannot write manifest: " + manifest_path);
        mf << manifest.to_json().dump(2) << '\n';
    }
    out << "wrote " << records.size() << " rows to " << out_path << " (manifest "
        << manifest_path << ")\n";
    return kOk;
}

int cmd_coverage(const ModelFlags& flags, double phi, int trials, double epsilon,
                 std::ostream& out) {
    check_epsilon_flag(epsilon);
    const StatisticalModel model = build_model(flags, Validation::checked);
    if (!model.interval.contains(phi))
        throw std::invalid_argument("--phi lies outside [--phi-min, --phi-max]");
    out << format_double(exact_coverage(model, phi, trials, epsilon)) << '\n';
    return kOk;
}

int cmd_validate(const ModelFlags& flags, int grid_points, std::ostream& out) {
    const StatisticalModel model = build_model(flags, Validation::deferred);
    const AssumptionReport report = validate_assumptions(model, grid_points);
    out << assumption_report_to_json(report).dump(2) << '\n';
    return report.all_pass() ? kOk : kAssumptionError;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact finite-sample confidence intervals for single-parameter phase "
                 "estimation with bounded measurement outcomes"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed_override;
    std::optional<int> threads_override;
    app.add_option("--seed", seed_override, "override the config master seed");
    app.add_option("--threads", threads_override, "worker threads (0 = auto)");

    ModelFlags estimate_flags, coverage_flags, validate_flags;
    std::string data_path, config_path, out_path;
    double estimate_epsilon = 0.1, coverage_epsilon = 0.1, coverage_phi = 0.0;
    int coverage_trials = 1, validate_grid = 10000;

    CLI::App* estimate = app.add_subcommand(
        "estimate", "estimate the phase and its confidence radii from a data file");
    add_model_flags(*estimate, estimate_flags);
    estimate->add_option("--data", data_path, "file with one outcome per line")->required();
    estimate->add_option("--epsilon", estimate_epsilon, "risk level in (0, 1)");

    CLI::App* simulate =
        app.add_subcommand("simulate", "run a Monte Carlo sweep described by a JSON config");
    simulate->add_option("--config", config_path, "JSON experiment config")->required();
    simulate->add_option("--out", out_path, "CSV output path")->required();

    CLI::App* coverage = app.add_subcommand(
        "coverage", "exact coverage probability by outcome enumeration");
    add_model_flags(*coverage, coverage_flags);
    coverage->add_option("--phi", coverage_phi, "true phase")->required();
    coverage->add_option("--trials", coverage_trials, "number of trials n")->required();
    coverage->add_option("--epsilon", coverage_epsilon, "risk level in (0, 1)");

    CLI::App* validate =
        app.add_subcommand("validate", "check model assumptions on a uniform grid");
    add_model_flags(*validate, validate_flags);
    validate->add_option("--grid", validate_grid, "grid resolution (default 10000)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (estimate->parsed())
            return cmd_estimate(estimate_flags, data_path, estimate_epsilon, out);
        if (simulate->parsed())
            return cmd_simulate(config_path, out_path, seed_override, threads_override, out);
        if (coverage->parsed())
            return cmd_coverage(coverage_flags, coverage_phi, coverage_trials, coverage_epsilon,
                                out);
        if (validate->parsed()) return cmd_validate(validate_flags, validate_grid, out);
        err << "error: no subcommand given\n";
        return kInputError;
    } catch (const assumption_error& e) {
        err << "model error: " << e.what() << '\n';
        return kAssumptionError;
    } catch (const parse_error& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    }
}

} // namespace phaseci::cli
