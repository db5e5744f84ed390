#ifndef DIRSHIFT_REPORT_IO_HPP
#define DIRSHIFT_REPORT_IO_HPP

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "dirshift/bundle_geometry.hpp"
#include "dirshift/green_potential.hpp"
#include "dirshift/model_operator.hpp"
#include "dirshift/similarity.hpp"

namespace dirshift {

using Json = nlohmann::ordered_json;

/// All knobs a run needs; parsed from one declarative JSON file, overridable
/// by flags.  The seed fixes every randomized frame draw.
struct RunConfig {
    int truncation = 200;
    int tensor_truncation = 120;
    GridSpec grid;
    QuadratureSpec quad;
    StepSpec step;
    CriterionTolerances tol;
    std::string format;  // "csv" or "json"; empty = per-command default
    std::string output;
    std::uint64_t seed = 1;

    void validate() const;
};

RunConfig config_from_json(const Json& j);
Json config_to_json(const RunConfig& c);
RunConfig load_config_file(const std::string& path);

/// Doubles serialized with 17 significant digits (round-trip safe).
std::string format_double(double v);

Json to_json(const PotentialReport& r);
Json to_json(const SubharmonicityReport& r);
Json to_json(const BundleDerivativeReport& r);
Json to_json(const ModelCheckReport& r);
Json to_json(const SimilarityReport& r);
Json to_json(const LaplaceIdentityReport& r);

/// CSV with '#'-prefixed metadata lines, a header row, then data rows.
class CsvWriter {
public:
    CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}
    void add_meta(const std::string& key, const std::string& value);
    void add_row(const std::vector<std::string>& cells);
    std::string str() const;

private:
    std::vector<std::string> columns_;
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::vector<std::string>> rows_;
};

inline const char* verdict_name(CriterionVerdict v) {
    switch (v) {
        case CriterionVerdict::HoldsOnScan: return "criterion-holds-on-scan";
        case CriterionVerdict::Violated: return "violated";
        default: return "inconclusive";
    }
}

inline const char* verdict_name(BoundedVerdict v) {
    return v == BoundedVerdict::BoundedOnScan ? "bounded-on-scan" : "growth-detected";
}

inline const char* verdict_name(ModelVerdict v) {
    switch (v) {
        case ModelVerdict::Yes: return "yes";
        case ModelVerdict::No: return "no";
        default: return "inconclusive";
    }
}

}  // namespace dirshift

#endif
