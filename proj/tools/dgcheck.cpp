// dgcheck: parse dg-category presentations, run verification suites, and emit
// human-readable and machine-readable reports.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "dgc/suites.hpp"

using namespace dgc;
using nlohmann::json;

namespace {

json report_json(const std::string& file, const VerificationReport& rep, bool timings) {
    json j;
    j["tool"] = "dgcheck";
    j["file"] = file;
    j["suite"] = rep.suite;
    json params = json::object();
    for (const auto& [k, v] : rep.params) params[k] = v;
    j["params"] = params;
    json checks = json::array();
    for (const Check& c : rep.checks) {
        json e;
        e["name"] = c.name;
        e["status"] = status_name(c.status);
        if (!c.witness.empty()) e["witness"] = c.witness;
        if (timings) e["ms"] = c.ms;
        checks.push_back(e);
    }
    j["checks"] = checks;
    j["passed"] = rep.all_passed();
    return j;
}

void print_report(const VerificationReport& rep, double total_ms) {
    std::cout << "suite " << rep.suite;
    for (const auto& [k, v] : rep.params) std::cout << " " << k << "=" << v;
    std::cout << "\n";
    for (const Check& c : rep.checks) {
        std::cout << "  [" << status_name(c.status) << "] " << c.name;
        if (!c.witness.empty()) std::cout << "  -- " << c.witness;
        std::cout << "\n";
    }
    std::cout << (rep.all_passed() ? "PASS" : "FAIL") << " (" << rep.checks.size() << " checks, "
              << total_ms << " ms)\n";
}

std::optional<Window> parse_window(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto dots = s.find("..");
    if (dots == std::string::npos) throw error("--window expects lo..hi");
    Window w;
    std::string lo = s.substr(0, dots), hi = s.substr(dots + 2);
    if (!lo.empty()) w.lo = std::stoll(lo);
    if (!hi.empty()) w.hi = std::stoll(hi);
    return w;
}

std::string export_bar_text(const DgCat& C, const BarComplex& bar) {
    std::ostringstream out;
    for (int Y = 0; Y < C.nobj(); ++Y)
        for (int Yp = 0; Yp < C.nobj(); ++Yp) {
            if (bar.words[Y][Yp].empty()) continue;
            out << "component " << C.obj[Y] << " " << C.obj[Yp] << "\n";
            for (size_t i = 0; i < bar.words[Y][Yp].size(); ++i)
                out << "basis " << i << " " << bar.describe(bar.words[Y][Yp][i]) << " "
                    << bar.words[Y][Yp][i].deg.str() << "\n";
            for (int i = 0; i < bar.bim.diff[Y][Yp].rows; ++i)
                for (const auto& [j, s] : bar.bim.diff[Y][Yp].row[i])
                    out << "d " << i << " " << j << " " << s.str() << "\n";
        }
    return out.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of dg-category envelopes and bar complexes"};
    app.require_subcommand(1);

    std::string file, suite = "axioms", window_str, out_path, what = "presentation";
    int R = 2, rmax = 2, nmax = 3;
    unsigned long long seed = 0;
    bool timings = false;

    CLI::App* check = app.add_subcommand("check", "run a verification suite on a presentation");
    check->add_option("file", file, "presentation file (.dgc)")->required();
    check->add_option("--suite", suite, "one of: axioms envelopes signs bar xi idempotents morita counterexample");
    check->add_option("--R", R, "bar truncation level");
    check->add_option("--r", rmax, "maximum bar word arity for Xi checks");
    check->add_option("--nmax", nmax, "insertion bound for sign sweeps");
    check->add_option("--window", window_str, "homology window lo..hi");
    check->add_option("--seed", seed, "sampling seed (recorded in the report)");
    check->add_option("--out", out_path, "write the machine-readable report here");
    check->add_flag("--timings", timings, "include wall-clock timings in the report");

    CLI::App* exp = app.add_subcommand("export", "export presentations or bar data");
    exp->add_option("file", file, "presentation file (.dgc)")->required();
    exp->add_option("--what", what, "presentation | bar");
    exp->add_option("--R", R, "bar truncation level");
    exp->add_option("--out", out_path, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            Stopwatch sw;
            Presentation P = parse_file(file);
            SuiteParams sp;
            sp.R = R;
            sp.rmax = rmax;
            sp.nmax = nmax;
            sp.seed = seed;
            sp.window = parse_window(window_str);
            VerificationReport rep = run_suite(suite, P, sp);
            double total = sw.ms();
            print_report(rep, total);
            if (!out_path.empty()) {
                json j = report_json(file, rep, timings);
                if (timings) j["total_ms"] = total;
                std::ofstream o(out_path);
                o << j.dump(2) << "\n";
            }
            return rep.all_passed() ? 0 : 1;
        }
        if (exp->parsed()) {
            Presentation P = parse_file(file);
            std::string text;
            if (what == "presentation") text = export_presentation(P);
            else if (what == "bar") {
                auto bar = bar_truncated(P.cat, R);
                text = export_bar_text(P.cat, *bar);
            } else throw error("--what must be presentation or bar");
            if (out_path.empty()) std::cout << text;
            else {
                std::ofstream o(out_path);
                o << text;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "dgcheck: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
