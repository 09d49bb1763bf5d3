#include "volforms/report.hpp"

#include <cmath>

namespace volforms {

VerificationReport check_against_exact(std::string identity, std::string equation,
                                       const McEstimate& lhs, double rhs,
                                       const ReportConfig& cfg) {
    VerificationReport r;
    r.identity = std::move(identity);
    r.equation = std::move(equation);
    r.lhs = lhs;
    r.rhs_exact = rhs;
    r.discrepancy = std::abs(lhs.mean - rhs);
    r.statistical = lhs.std_error > 0.0;
    if (r.statistical) {
        r.sigma_units = r.discrepancy / lhs.std_error;
        r.pass = r.sigma_units <= cfg.sigma_threshold;
    } else {
        r.pass = r.discrepancy <= cfg.abs_tol;
    }
    return r;
}

VerificationReport check_paired(std::string identity, std::string equation,
                                const McEstimate& lhs, const McEstimate& rhs,
                                const McEstimate& diff, const ReportConfig& cfg) {
    VerificationReport r;
    r.identity = std::move(identity);
    r.equation = std::move(equation);
    r.lhs = lhs;
    r.rhs_mc = rhs;
    r.discrepancy = std::abs(diff.mean);
    r.statistical = diff.std_error > 0.0;
    if (r.statistical) {
        r.sigma_units = r.discrepancy / diff.std_error;
        r.pass = r.sigma_units <= cfg.sigma_threshold;
    } else {
        // identical samples on both sides
        r.pass = r.discrepancy <= cfg.abs_tol;
    }
    return r;
}

VerificationReport check_deterministic(std::string identity, std::string equation,
                                       double lhs, double rhs,
                                       const ReportConfig& cfg) {
    VerificationReport r;
    r.identity = std::move(identity);
    r.equation = std::move(equation);
    r.lhs.mean = lhs;
    r.lhs.n_samples = 1;
    r.rhs_exact = rhs;
    r.discrepancy = std::abs(lhs - rhs);
    r.pass = r.discrepancy <= cfg.abs_tol;
    return r;
}

VerificationReport aggregate(std::string identity, std::string equation,
                             std::vector<VerificationReport> cases) {
    VerificationReport r;
    r.identity = std::move(identity);
    r.equation = std::move(equation);
    r.pass = true;
    bool first = true;
    for (const auto& c : cases) {
        const bool worse = first || c.discrepancy > r.discrepancy;
        if (worse) {
            r.lhs = c.lhs;
            r.rhs_mc = c.rhs_mc;
            r.rhs_exact = c.rhs_exact;
            r.discrepancy = c.discrepancy;
        }
        r.sigma_units = std::max(r.sigma_units, c.sigma_units);
        r.statistical = r.statistical || c.statistical;
        r.pass = r.pass && c.pass;
        first = false;
    }
    r.cases = std::move(cases);
    return r;
}

namespace {

nlohmann::ordered_json mc_json(const McEstimate& e) {
    return {{"mean", e.mean}, {"se", e.std_error}, {"n", e.n_samples}};
}

} // namespace

nlohmann::ordered_json to_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["identity"] = r.identity;
    j["equation"] = r.equation;
    j["lhs"] = mc_json(r.lhs);
    if (r.rhs_mc)
        j["rhs"] = mc_json(*r.rhs_mc);
    else
        j["rhs"] = r.rhs_exact;
    j["discrepancy"] = r.discrepancy;
    j["sigma_units"] = r.sigma_units;
    j["pass"] = r.pass;
    j["seed"] = r.seed;
    j["grid_n"] = r.grid_n;
    if (!r.cases.empty()) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& c : r.cases) {
            auto cj = to_json(c);
            cj.erase("schema");
            cj.erase("seed");
            cj.erase("grid_n");
            arr.push_back(std::move(cj));
        }
        j["cases"] = std::move(arr);
    }
    return j;
}

} // namespace volforms
