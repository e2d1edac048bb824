#pragma once

#include "dwv/form.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dwv {

enum class CheckStatus { Pass, Fail, Reported };

/// Result of one exact identity check. Assertive checks pass iff the residual is empty;
/// reported checks carry their residual without a verdict.
struct CheckOutcome {
    std::string id;
    std::string label;
    std::size_t residual_terms = 0;
    bool assertive = true;
    std::string detail;

    CheckStatus status() const {
        if (!assertive) return CheckStatus::Reported;
        return residual_terms == 0 ? CheckStatus::Pass : CheckStatus::Fail;
    }
    bool ok() const { return status() != CheckStatus::Fail; }
};

const char* to_string(CheckStatus s);

CheckOutcome compare_forms(std::string id, std::string label, const Form& engine, const Form& display);
CheckOutcome compare_polys(std::string id, std::string label, const Poly& engine, const Poly& display);
CheckOutcome expect_zero(std::string id, std::string label, const Form& residual);
CheckOutcome expect_zero(std::string id, std::string label, const Poly& residual);

/// Coefficient of m in p (zero when absent).
Rational coefficient_of(const Poly& p, const Monomial& m);

/// Finds c with engine[i] = c * display[i] for every i. Returns nullopt when no single
/// nonzero c exists; residual_terms then counts the terms of engine - c * display for the
/// best candidate c (or of the nonzero side).
struct Proportionality {
    std::optional<Rational> factor;
    std::size_t residual_terms = 0;
};
Proportionality proportional(const std::vector<Poly>& engine, const std::vector<Poly>& display);

/// Proportionality as a check; the detail records the factor.
CheckOutcome compare_blocks(std::string id, std::string label, const std::vector<Poly>& engine,
                            const std::vector<Poly>& display);

}  // namespace dwv
