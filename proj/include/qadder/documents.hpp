#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qadder/capacity.hpp"
#include "qadder/codes.hpp"
#include "qadder/schur.hpp"
#include "qadder/verify.hpp"

// Output documents of the command-line tool. JSON keys are lower_snake_case
// and every document carries "schema_version": 1 and a "document" kind.

namespace qadder {

inline constexpr int kSchemaVersion = 1;

struct RegionDocument {
    std::string scenario;
    std::vector<Constraint> constraints;
    std::vector<RatePoint> vertices;
    std::vector<std::string> notes;
    double max_rate_sum = 0;
    bool operator==(const RegionDocument &) const = default;
};

RegionDocument make_region_document(const std::string &scenario, const RateRegion &region);

struct OptimizeDocument {
    std::string scenario;
    std::string mode;
    double alpha = 1;
    std::uint64_t seed = 0;
    std::size_t restarts = 0;
    std::size_t budget = 0;
    double best_value = 0;
    std::size_t evaluations = 0;
    std::size_t best_restart = 0;
    WeightedLabels sender1;
    WeightedLabels sender2;
    bool operator==(const OptimizeDocument &) const = default;
};

struct RateSumDocument {
    std::vector<RateSumRow> rows;
    bool operator==(const RateSumDocument &) const = default;
};

struct SimulationDocument {
    std::string code;
    std::size_t n = 0;
    double rate1 = 0;
    double rate2 = 0;
    double average_error = 0;
    double max_message_error = 0;
    std::vector<std::vector<double>> per_message_errors;
    bool zero_error = false;  ///< max_message_error <= 1e-12
    std::optional<double> base_average_error;
    bool operator==(const SimulationDocument &) const = default;
};

SimulationDocument make_simulation_document(const std::string &code, std::size_t n, std::pair<double, double> rates,
                                            const CodePerformance &perf);

struct VerifyDocument {
    std::uint64_t seed = 0;
    bool passed = false;
    std::vector<SuiteResult> suites;
    bool operator==(const VerifyDocument &) const = default;
};

/// Thrown for malformed documents and code files. The message carries
/// "line:column" when the position is known.
class DocumentError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string to_json(const RegionDocument &d);
std::string to_json(const OptimizeDocument &d);
std::string to_json(const RateSumDocument &d);
std::string to_json(const SimulationDocument &d);
std::string to_json(const VerifyDocument &d);

RegionDocument parse_region_document(const std::string &text);
OptimizeDocument parse_optimize_document(const std::string &text);
RateSumDocument parse_rate_sum_document(const std::string &text);
SimulationDocument parse_simulation_document(const std::string &text);
VerifyDocument parse_verify_document(const std::string &text);

/// CSV with '.' decimals and 9 significant digits.
std::string to_csv(const RegionDocument &d);
std::string to_csv(const OptimizeDocument &d);
std::string to_csv(const RateSumDocument &d);
std::string to_csv(const SimulationDocument &d);
std::string to_csv(const VerifyDocument &d);

/// Code file: {"n": 2, "book1": ["00", "11"], "book2": [...],
///             "decoder": {"1,2": [0, 1], ...}}   (decoder optional)
/// Decoder keys are sum words with symbols joined by commas. Errors are
/// reported as "<source>:<line>:<column>: <message>".
AdderCode parse_code_file(const std::string &text, const std::string &source = "<code>");
std::string code_file_json(const AdderCode &c);

}  // namespace qadder
