#include "qseries/report.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace qs {

namespace {

using ojson = nlohmann::ordered_json;

std::string utc_now() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

ojson point_json(const Assignment& a) {
    ojson p = ojson::object();
    for (const auto& [k, v] : a.values) p[k] = v.to_string();
    p["q"] = a.q.to_string();
    if (a.z) p["z"] = a.z->to_string();
    p["n"] = a.n;
    return p;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string describe_point(const Assignment& a) {
    std::ostringstream os;
    for (const auto& [k, v] : a.values) os << k << "=" << v.to_string() << " ";
    os << "q=" << a.q.to_string();
    if (a.z) os << " z=" << a.z->to_string();
    os << " n=" << a.n;
    return os.str();
}

std::string report_json(const std::vector<VerificationReport>& reps, const ReportOptions& opt) {
    ojson root;
    root["schema_version"] = kReportSchemaVersion;
    if (opt.timestamp) root["generated_at"] = utc_now();
    root["plan"] = {{"seed", opt.seed}, {"trials", opt.trials}, {"height_bound", opt.height_bound}, {"n_values", opt.n_values}};
    ojson arr = ojson::array();
    bool all = true;
    for (const auto& r : reps) {
        all = all && r.passed();
        ojson j;
        j["identity_id"] = r.identity_id;
        j["mode"] = to_string(r.mode);
        j["passed"] = r.passed();
        j["trials_run"] = r.trials_run;
        j["trials_passed"] = r.trials_passed;
        j["trials_aborted"] = r.trials_aborted;
        j["rejections"] = r.rejections;
        j["float_only_checks"] = r.float_only_checks;
        j["max_residual"] = r.max_residual;
        j["sampling_exhausted"] = r.sampling_exhausted;
        ojson cx = ojson::array();
        for (const auto& c : r.counterexamples) {
            cx.push_back({{"trial", c.trial},
                          {"assignment", point_json(c.point)},
                          {"member_i", c.member_i},
                          {"member_j", c.member_j},
                          {"lhs", c.lhs},
                          {"rhs", c.rhs},
                          {"residual", c.residual}});
        }
        j["counterexamples"] = cx;
        j["errors"] = r.errors;
        if (opt.timestamp) j["wall_time_s"] = r.wall_time_s;
        arr.push_back(j);
    }
    root["all_passed"] = all;
    root["reports"] = arr;
    return root.dump(2) + "\n";
}

std::string report_csv(const std::vector<VerificationReport>& reps) {
    std::ostringstream os;
    os << "identity_id,mode,passed,trials_run,trials_passed,trials_aborted,rejections,max_residual,counterexamples\n";
    for (const auto& r : reps) {
        os << csv_escape(r.identity_id) << ',' << to_string(r.mode) << ',' << (r.passed() ? "true" : "false") << ','
           << r.trials_run << ',' << r.trials_passed << ',' << r.trials_aborted << ',' << r.rejections << ','
           << std::setprecision(3) << r.max_residual << ',' << r.counterexamples.size() << '\n';
    }
    return os.str();
}

std::string report_text(const std::vector<VerificationReport>& reps, const ReportOptions& opt) {
    std::ostringstream os;
    int ok = 0;
    double total = 0;
    for (const auto& r : reps) {
        total += r.wall_time_s;
        if (r.passed()) ++ok;
        os << (r.passed() ? "PASS " : "FAIL ") << std::left << std::setw(14) << r.identity_id << " " << to_string(r.mode)
           << "  trials " << r.trials_passed << "/" << r.trials_run << "  rejections " << r.rejections;
        if (r.mode == Mode::floating || r.float_only_checks > 0) {
            os << "  max_residual " << std::scientific << std::setprecision(2) << r.max_residual << std::defaultfloat;
        }
        if (opt.timestamp) os << "  " << std::fixed << std::setprecision(2) << r.wall_time_s << "s" << std::defaultfloat;
        os << "\n";
        for (const auto& c : r.counterexamples) {
            os << "    trial " << c.trial << " [" << describe_point(c.point) << "] " << c.member_i << " = " << c.lhs
               << " vs " << c.member_j << " = " << c.rhs << "\n";
        }
        for (const auto& e : r.errors) os << "    error: " << e << "\n";
    }
    os << ok << "/" << reps.size() << " identities passed";
    if (opt.timestamp) os << " in " << std::fixed << std::setprecision(2) << total << "s";
    os << "\n";
    return os.str();
}

}  // namespace qs
