// Structured pass/fail verification reports.

#pragma once

#include <chrono>
#include <string>
#include <vector>

namespace dgc {

enum class CheckStatus { Pass, Fail, Inapplicable, Unreliable };

inline const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Inapplicable: return "inapplicable";
        case CheckStatus::Unreliable: return "boundary-unreliable";
    }
    return "?";
}

struct Check {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string witness; // first failure witness, empty on pass
    double ms = 0.0;
};

struct VerificationReport {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<Check> checks;

    void param(const std::string& k, const std::string& v) { params.emplace_back(k, v); }
    Check& add(const std::string& name, bool ok, const std::string& witness = "") {
        checks.push_back({name, ok ? CheckStatus::Pass : CheckStatus::Fail, ok ? "" : witness, 0.0});
        return checks.back();
    }
    Check& add_status(const std::string& name, CheckStatus st, const std::string& note = "") {
        checks.push_back({name, st, note, 0.0});
        return checks.back();
    }
    void merge(const VerificationReport& o, const std::string& prefix = "") {
        for (const Check& c : o.checks) {
            checks.push_back(c);
            if (!prefix.empty()) checks.back().name = prefix + "/" + c.name;
        }
    }
    bool all_passed() const {
        for (const Check& c : checks)
            if (c.status == CheckStatus::Fail) return false;
        return true;
    }
    int failures() const {
        int n = 0;
        for (const Check& c : checks)
            if (c.status == CheckStatus::Fail) ++n;
        return n;
    }
};

class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace dgc
