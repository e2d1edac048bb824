#include "dwv/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::vector<std::string> split_suites(const std::string& arg) {
    if (arg == "all") return dwv::suite_names();
    std::vector<std::string> out;
    std::stringstream ss(arg);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of the vielbein De Donder-Weyl computations"};
    app.require_subcommand(1);

    CLI::App* verify = app.add_subcommand("verify", "Run verification suites and report every check");
    std::string model = "vierbein", suite = "all", format = "json", out;
    std::uint64_t seed = 42;
    int trials = 5;
    bool stable = false;
    verify->add_option("--model", model, "dreibein (n = 3) or vierbein (n = 4)")
        ->check(CLI::IsMember({"dreibein", "vierbein"}));
    std::string suite_help = "all, or a comma-separated list of:";
    for (const std::string& s : dwv::suite_names()) suite_help += " " + s;
    verify->add_option("--suite", suite, suite_help);
    verify->add_option("--seed", seed, "Seed for every random instance");
    verify->add_option("--trials", trials, "Seeded instances per identity (>= 1)");
    verify->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    verify->add_option("--out", out, "Report path (standard output when omitted)");
    verify->add_flag("--stable", stable, "Write elapsed_ms as 0 so reports are byte-identical");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    dwv::SuiteConfig config{model, split_suites(suite), seed, trials};
    std::vector<dwv::CheckResult> results;
    try {
        results = dwv::run(config);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    const std::string report =
        format == "json" ? dwv::report_json(config, results, stable) : dwv::report_text(config, results, stable);
    if (out.empty()) {
        std::cout << report << std::flush;
        if (!std::cout) return kExitIo;
    } else {
        std::ofstream f(out, std::ios::binary);
        f << report;
        f.close();
        if (!f) {
            std::cerr << "cannot write " << out << "\n";
            return kExitIo;
        }
    }
    return dwv::summarize(results).fail == 0 ? kExitPass : kExitFail;
}
