#include "dwv/suites.hpp"

#include "dwv/indexalg.hpp"
#include "dwv/observables.hpp"
#include "dwv/palatini.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace dwv {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

void append(std::vector<CheckResult>& out, const std::vector<CheckOutcome>& group, std::int64_t ms) {
    for (const CheckOutcome& c : group)
        out.push_back({c.id, c.label, c.status(), c.residual_terms, ms, c.detail});
}

void timed(std::vector<CheckResult>& out, const std::function<std::vector<CheckOutcome>()>& f) {
    const auto t0 = Clock::now();
    std::vector<CheckOutcome> group = f();
    append(out, group, ms_since(t0));
}

std::string tag(int n) { return n == 3 ? "n3" : "n4"; }

std::vector<CheckOutcome> epsilon_group(int n) {
    std::vector<CheckOutcome> out;
    for (const IdentityReport& r : epsilon_identity_suite(n))
        out.push_back({"epsilon." + tag(n) + "." + r.name,
                       "epsilon and Kronecker identity '" + r.name + "' over " + std::to_string(r.evaluated) +
                           " index assignments",
                       r.mismatches, true, {}});
    return out;
}

std::vector<CheckOutcome> appendix_a_group(int n, std::uint64_t seed, int trials) {
    const InternalMetric h = InternalMetric::lorentzian(n);
    const int samples = std::max(5, trials);
    std::size_t nonzero = 0;
    for (int s = 0; s < samples; ++s) {
        const std::uint64_t k = seed * 1000003u + static_cast<std::uint64_t>(s);
        if (!eh_palatini_reduction_check(random_vielbein(n, k), h, k).is_zero()) ++nonzero;
    }
    return {{"appendixA." + tag(n) + ".eh_palatini_reduction",
             "|det e| R equals the epsilon-contracted frame form at " + std::to_string(samples) +
                 " rational samples",
             nonzero, true, {}}};
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"epsilon", "appendixA", "canonical",   "hamilton",
                                                "premulti", "geometry",  "observables", "brackets",
                                                "jacobi",  "constraints", "pi"};
    return names;
}

bool is_suite(const std::string& name) {
    const auto& s = suite_names();
    return std::find(s.begin(), s.end(), name) != s.end();
}

int model_dimension(const std::string& model) {
    if (model == "dreibein") return 3;
    if (model == "vierbein") return 4;
    return 0;
}

std::vector<CheckResult> run(const SuiteConfig& config) {
    const int n = model_dimension(config.model);
    if (n == 0) throw std::invalid_argument("unknown model '" + config.model + "'");
    if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (config.suites.empty()) throw std::invalid_argument("no suite selected");
    for (const std::string& s : config.suites)
        if (!is_suite(s)) throw std::invalid_argument("unknown suite '" + s + "'");

    PalatiniContext ctx(Model::build(n));
    const std::uint64_t seed = config.seed;
    const int trials = config.trials;
    std::vector<CheckResult> out;
    for (const std::string& name : suite_names()) {
        if (std::find(config.suites.begin(), config.suites.end(), name) == config.suites.end()) continue;
        if (name == "epsilon") {
            timed(out, [&] { return epsilon_group(n); });
        } else if (name == "appendixA") {
            timed(out, [&] { return appendix_a_group(n, seed, trials); });
        } else if (name == "canonical") {
            timed(out, [&] { return canonical_checks(ctx); });
        } else if (name == "hamilton") {
            timed(out, [&] { return lagrangian_checks(ctx, seed, trials); });
            timed(out, [&] { return legendre_checks(ctx); });
            timed(out, [&] { return hamiltonian_checks(ctx); });
            timed(out, [&] { return dH_checks(ctx); });
            timed(out, [&] { return extended_hamiltonian_checks(ctx); });
            timed(out, [&] { return hamilton_equation_checks(ctx); });
            timed(out, [&] { return einstein_checks(ctx); });
        } else if (name == "premulti") {
            timed(out, [&] { return premultisymplectic_checks(ctx); });
        } else if (name == "geometry") {
            timed(out, [&] { return geometry_checks(ctx, seed, trials); });
        } else if (name == "observables") {
            timed(out, [&] { return observable_checks(ctx, seed, trials); });
        } else if (name == "brackets") {
            timed(out, [&] { return bracket_checks(ctx, seed, trials); });
        } else if (name == "jacobi") {
            timed(out, [&] { return jacobi_checks(ctx, seed, trials); });
        } else if (name == "constraints") {
            timed(out, [&] { return constraint_checks(ctx, seed, trials); });
        } else if (name == "pi") {
            timed(out, [&] { return pi_checks(ctx, seed, trials); });
        }
    }
    return out;
}

Summary summarize(const std::vector<CheckResult>& results) {
    Summary s;
    for (const CheckResult& r : results) {
        switch (r.status) {
            case CheckStatus::Pass: ++s.pass; break;
            case CheckStatus::Fail: ++s.fail; break;
            case CheckStatus::Reported: ++s.reported; break;
        }
    }
    return s;
}

std::string report_json(const SuiteConfig& config, const std::vector<CheckResult>& results, bool stable) {
    using Json = nlohmann::ordered_json;
    Json checks = Json::array();
    for (const CheckResult& r : results) {
        checks.push_back({{"check_id", r.check_id},
                          {"paper_ref", r.paper_ref},
                          {"status", to_string(r.status)},
                          {"residual_term_count", r.residual_term_count},
                          {"elapsed_ms", stable ? 0 : r.elapsed_ms}});
    }
    const Summary s = summarize(results);
    Json doc{{"model", config.model},
             {"seed", config.seed},
             {"trials", config.trials},
             {"checks", std::move(checks)},
             {"summary", {{"pass", s.pass}, {"fail", s.fail}, {"reported", s.reported}}}};
    return doc.dump(2) + "\n";
}

std::string report_text(const SuiteConfig& config, const std::vector<CheckResult>& results, bool stable) {
    std::size_t width = 0;
    for (const CheckResult& r : results) width = std::max(width, r.check_id.size());
    std::ostringstream os;
    for (const CheckResult& r : results) {
        os << std::left << std::setw(9) << to_string(r.status) << std::setw(static_cast<int>(width) + 2)
           << r.check_id << std::right << std::setw(8) << r.residual_term_count << std::setw(8)
           << (stable ? 0 : r.elapsed_ms) << " ms";
        if (!r.detail.empty()) os << "  " << r.detail;
        os << "\n";
    }
    const Summary s = summarize(results);
    os << config.model << " seed " << config.seed << " trials " << config.trials << ": " << s.pass << " pass, "
       << s.fail << " fail, " << s.reported << " reported\n";
    return os.str();
}

}  // namespace dwv
