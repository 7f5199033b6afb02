#include "phaseci/io.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

namespace phaseci {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::string summary_csv(std::span<const SummaryRecord> records) {
    std::string out(kSummaryCsvHeader);
    out += '\n';
    for (const SummaryRecord& r : records) {
        out += r.variant;
        out += ',';
        out += std::to_string(r.atoms);
        out += ',';
        out += std::to_string(r.trials);
        out += ',';
        out += format_double(r.epsilon);
        out += ',';
        out += std::to_string(r.replications);
        out += ',';
        out += format_double(r.mean_delta);
        out += ',';
        out += format_double(r.mean_delta1);
        out += ',';
        out += format_double(r.mean_delta2);
        out += ',';
        out += format_double(r.mean_abs_error);
        out += ',';
        out += format_double(r.coverage);
        out += ',';
        out += format_double(r.mean_b_lu_estimate);
        out += '\n';
    }
    return out;
}

std::vector<double> read_outcome_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open data file: " + path.string());

    std::vector<double> outcomes;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;

        const std::string token = line.substr(first);
        std::size_t consumed = 0;
        double value = 0.0;
        try {
            value = std::stod(token, &consumed);
        } catch (const std::exception&) {
            throw parse_error("line " + std::to_string(line_number) +
                                  ": not a decimal outcome: '" + token + "'",
                              line_number);
        }
        if (token.find_first_not_of(" \t\r", consumed) != std::string::npos)
            throw parse_error("line " + std::to_string(line_number) +
                                  ": trailing characters after outcome: '" + token + "'",
                              line_number);
        outcomes.push_back(value);
    }
    if (outcomes.empty())
        throw std::invalid_argument("data file holds no outcomes: " + path.string());
    return outcomes;
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& doc) {
    ExperimentConfig config;
    try {
        for (const auto& name : doc.at("variants"))
            config.variants.push_back(variant_from_name(name.get<std::string>()));
        config.atom_counts = doc.at("atoms").get<std::vector<int>>();
        config.trial_counts = doc.at("trials").get<std::vector<int>>();
        config.phi_true = doc.at("phi_true").get<double>();
        config.interval =
            ParameterInterval(doc.at("phi_min").get<double>(), doc.at("phi_max").get<double>());
        config.epsilon = doc.at("epsilon").get<double>();
        config.replications = doc.at("replications").get<int>();
        config.master_seed = doc.at("master_seed").get<std::uint64_t>();
        if (doc.contains("phi0")) config.reference_phase = doc.at("phi0").get<double>();
        if (doc.contains("threads")) config.threads = doc.at("threads").get<int>();
    } catch (const nlohmann::json::exception& err) {
        throw std::invalid_argument(std::string("invalid experiment config: ") + err.what());
    }
    return config;
}

nlohmann::json experiment_config_to_json(const ExperimentConfig& config) {
    nlohmann::json doc;
    for (const RamseyVariant variant : config.variants)
        doc["variants"].push_back(std::string(variant_name(variant)));
    doc["atoms"] = config.atom_counts;
    doc["trials"] = config.trial_counts;
    doc["phi_true"] = config.phi_true;
    doc["phi_min"] = config.interval.lo;
    doc["phi_max"] = config.interval.hi;
    doc["epsilon"] = config.epsilon;
    doc["replications"] = config.replications;
    doc["master_seed"] = config.master_seed;
    if (config.reference_phase) doc["phi0"] = *config.reference_phase;
    doc["threads"] = config.threads;
    return doc;
}

nlohmann::json confidence_to_json(const ConfidenceResult& result, double interval_width) {
    nlohmann::json doc;
    doc["phi_ls"] = result.phi_ls;
    doc["delta1"] = result.delta1;
    if (result.delta2)
        doc["delta2"] = *result.delta2;
    else
        doc["delta2"] = nullptr;
    doc["delta"] = result.delta;
    doc["interval_lo"] = result.interval_lo;
    doc["interval_hi"] = result.interval_hi;
    doc["epsilon"] = result.epsilon;
    doc["n"] = result.n;
    doc["phi_interval_width"] = interval_width;
    return doc;
}

nlohmann::json assumption_report_to_json(const AssumptionReport& report) {
    nlohmann::json doc;
    doc["outcomes_bounded"] = report.outcomes_bounded;
    doc["mean_injective"] = report.mean_injective;
    doc["derivative_nonzero"] = report.derivative_nonzero;
    doc["min_abs_dmean"] = report.min_abs_dmean;
    doc["grid_points"] = report.grid_points;
    doc["all_pass"] = report.all_pass();
    return doc;
}

std::string file_digest_hex(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot open file for digest: " + path.string());
    std::uint64_t h = 0xCBF29CE484222325ull;
    char chunk[4096];
    while (in.read(chunk, sizeof chunk) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(chunk[i]);
            h *= 0x100000001B3ull;
        }
        if (!in) break;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
    return buffer;
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json doc;
    doc["tool_version"] = tool_version;
    doc["master_seed"] = master_seed;
    doc["started_utc"] = started_utc;
    doc["finished_utc"] = finished_utc;
    doc["config"] = config_echo;
    doc["outputs"] = nlohmann::json::array();
    for (const auto& [path, digest] : output_digests)
        doc["outputs"].push_back({{"path", path}, {"fnv1a64", digest}});
    return doc;
}

std::string utc_timestamp_now() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buffer;
}

} // namespace phaseci
