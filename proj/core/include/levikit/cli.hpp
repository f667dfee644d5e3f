#ifndef LEVIKIT_CLI_HPP
#define LEVIKIT_CLI_HPP

#include "levikit/multipoly.hpp"
#include "levikit/rational.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace levikit {

struct AnalysisOptions {
    unsigned long seed = 0;
    int samples = 200;
    mpq_class tol = mpq_class(1, 1000000000); // 1e-9
    int truncation = 0;                       // 0 = per-operation default
};

/// One parsed request from the versioned JSON input schema.
struct AnalysisRequest {
    std::string command; // intersect | pencil | segre | leviflat | invariance | lion | analyze
    std::vector<std::string> variables;
    std::vector<std::pair<std::string, std::string>> conjugate_pairs; // (z, zbar)
    std::vector<std::pair<std::string, std::string>> real_pairs;      // (x, y) per complex var
    std::vector<std::pair<std::string, MultiPoly>> polynomials;       // input order preserved
    std::vector<std::pair<std::string, std::vector<ExactComplex>>> points;
    std::vector<std::vector<mpq_class>> matrix;
    AnalysisOptions options;

    const MultiPoly* find_poly(const std::string& name) const;
};

/// Parses one request or a batch (JSON array). Malformed input raises
/// input_error with a line position where available.
std::vector<AnalysisRequest> parse_input(const std::string& text);
std::vector<AnalysisRequest> parse_input_file(const std::string& path);

struct Report {
    std::string command;
    nlohmann::ordered_json verdicts;
    nlohmann::ordered_json provenance;
    bool mathematical_rejection = false; // pipeline halted on a rejection
};

/// Dispatches one request to its engine and assembles the report.
/// Deterministic: equal (request, seed) pairs give byte-identical output.
Report run_request(const AnalysisRequest& request);

/// Serializes a report; format is "json" or "text". Byte-stable.
std::string emit_report(const Report& report, const std::string& format);
std::string emit_reports(const std::vector<Report>& reports, const std::string& format);

} // namespace levikit

#endif
