#ifndef RICCATI_CHECKS_HPP
#define RICCATI_CHECKS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace riccati {

struct UnknownCheck : std::runtime_error {
    explicit UnknownCheck(const std::string& name)
        : std::runtime_error("unknown check '" + name + "'") {}
};

/// One row of the machine-readable verification report.
struct CheckEntry {
    std::string check;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    double x0 = 0.0, x1 = 0.0;
    int grid_n = 0;
    double max_abs_residual = 0.0;
    double rms_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string notes;
};

nlohmann::ordered_json to_json(const CheckEntry& entry);
nlohmann::ordered_json report_json(const std::vector<CheckEntry>& entries);

/// Optional parameter overrides shared by all checks; every check has
/// reproducible defaults.
struct CheckParams {
    std::optional<std::string> v, w;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<double> x0, x1;
    std::optional<int> grid;
    std::optional<double> alpha;
    std::optional<std::vector<double>> ics;
    std::optional<int> sign;
    std::optional<double> k;
};

const std::vector<std::string>& check_names();

/// Runs one named check; throws UnknownCheck for unrecognized names.
std::vector<CheckEntry> run_check(const std::string& name, const CheckParams& params);

/// Runs the named checks ("all" expands to every registered check) and
/// returns entries ordered by check name, then parameters.
std::vector<CheckEntry> run_checks(const std::vector<std::string>& names,
                                   const CheckParams& params);

} // namespace riccati

#endif
