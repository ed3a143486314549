#pragma once

#include <string>
#include <vector>

#include "qseries/corpus.hpp"

namespace qs {

inline constexpr int kReportSchemaVersion = 1;

struct ReportOptions {
    bool timestamp = true;
    std::uint64_t seed = 0;
    int trials = 0;
    long height_bound = 0;
    std::vector<long> n_values;
};

std::string report_json(const std::vector<VerificationReport>& reps, const ReportOptions& opt);
std::string report_csv(const std::vector<VerificationReport>& reps);
std::string report_text(const std::vector<VerificationReport>& reps, const ReportOptions& opt);

/// "name=value" pairs of an assignment in sorted order.
std::string describe_point(const Assignment& a);

}  // namespace qs
