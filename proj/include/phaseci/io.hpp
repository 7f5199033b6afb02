#ifndef PHASECI_IO_HPP
#define PHASECI_IO_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "phaseci/benchmark.hpp"
#include "phaseci/estimator.hpp"
#include "phaseci/experiment.hpp"

#include <json.hpp>

namespace phaseci {

/// A text input could not be parsed; `line` is 1-based.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t line)
        : std::runtime_error(what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Shortest lossless decimal rendering used in all emitted files
/// (17 significant digits).
std::string format_double(double value);

inline constexpr const char* kSummaryCsvHeader =
    "variant,N,n,epsilon,replications,mean_delta,mean_delta1,mean_delta2,"
    "mean_abs_error,coverage,mean_b_lu_estimate";

std::string summary_csv(std::span<const SummaryRecord> records);

/// One decimal outcome per line; blank lines and lines starting with '#' are
/// ignored. Throws parse_error naming the offending line, or
/// std::invalid_argument when no outcomes remain.
std::vector<double> read_outcome_file(const std::filesystem::path& path);

ExperimentConfig experiment_config_from_json(const nlohmann::json& doc);
nlohmann::json experiment_config_to_json(const ExperimentConfig& config);

nlohmann::json confidence_to_json(const ConfidenceResult& result, double interval_width);
nlohmann::json assumption_report_to_json(const AssumptionReport& report);

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex digits.
std::string file_digest_hex(const std::filesystem::path& path);

/// Provenance note emitted once next to every simulation output.
struct RunManifest {
    std::string tool_version;
    std::uint64_t master_seed = 0;
    std::string started_utc;
    std::string finished_utc;
    nlohmann::json config_echo;
    std::vector<std::pair<std::string, std::string>> output_digests; // path, digest

    nlohmann::json to_json() const;
};

std::string utc_timestamp_now();

} // namespace phaseci

#endif // PHASECI_IO_HPP
