#pragma once

#include "dwv/check.hpp"

#include <doctest.h>

#include <string>
#include <vector>

/// The outcome with the given id; fails the current test when absent.
inline dwv::CheckOutcome find_check(const std::vector<dwv::CheckOutcome>& all, const std::string& id) {
    for (const dwv::CheckOutcome& c : all)
        if (c.id == id) return c;
    FAIL("missing check " << id);
    return {};
}

/// Every listed check has an empty residual.
inline void expect_zero_residuals(const std::vector<dwv::CheckOutcome>& all, const std::vector<std::string>& ids) {
    for (const std::string& id : ids) {
        INFO(id);
        CHECK(find_check(all, id).residual_terms == 0);
    }
}

/// Every check in the group passes or is reported; nothing fails.
inline void expect_no_failures(const std::vector<dwv::CheckOutcome>& all) {
    for (const dwv::CheckOutcome& c : all) {
        INFO(c.id << " " << c.detail);
        CHECK(c.status() != dwv::CheckStatus::Fail);
    }
}
