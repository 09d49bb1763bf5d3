#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "volforms/estimator.hpp"

namespace volforms {

/// Pass criteria for verification reports.
struct ReportConfig {
    double sigma_threshold = 3.0; // statistical comparisons
    double abs_tol = 1e-8;        // deterministic comparisons
};

/// Outcome of one identity check. When either side carries Monte Carlo error
/// the comparison is in sigma units of the combined (or paired) standard
/// error; when both sides are deterministic it is an absolute one.
/// Aggregate reports carry one entry per sub-case in `cases` and the worst
/// case in the top-level fields.
struct VerificationReport {
    std::string identity;
    std::string equation; // identity tag recorded in the JSON payload
    McEstimate lhs;
    std::optional<McEstimate> rhs_mc; // present when the rhs is statistical
    double rhs_exact = 0.0;           // used otherwise
    double discrepancy = 0.0;
    double sigma_units = 0.0;
    bool statistical = false;
    bool pass = false;
    std::uint64_t seed = 0;
    int grid_n = 0;
    std::vector<VerificationReport> cases;
};

/// lhs (MC) against an exact rhs: sigma comparison when lhs.se > 0,
/// absolute comparison otherwise.
VerificationReport check_against_exact(std::string identity, std::string equation,
                                       const McEstimate& lhs, double rhs,
                                       const ReportConfig& cfg);

/// lhs and rhs estimated on common draws; `diff` is the estimate of
/// lhs - rhs, whose standard error prices the comparison.
VerificationReport check_paired(std::string identity, std::string equation,
                                const McEstimate& lhs, const McEstimate& rhs,
                                const McEstimate& diff, const ReportConfig& cfg);

/// Deterministic two-sided check at abs_tol.
VerificationReport check_deterministic(std::string identity, std::string equation,
                                       double lhs, double rhs,
                                       const ReportConfig& cfg);

/// Worst-case aggregation; the result passes iff every case passes.
VerificationReport aggregate(std::string identity, std::string equation,
                             std::vector<VerificationReport> cases);

nlohmann::ordered_json to_json(const VerificationReport& r);

} // namespace volforms
