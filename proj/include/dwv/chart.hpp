#pragma once

#include "dwv/poly.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace dwv {

/// Semantic role of a chart variable. Formal variables are constants for d.
enum class Role : std::uint8_t { Base, Field, Energy, Momentum, Formal };

struct VarInfo {
    std::string name;
    Role role;
};

/// Ordered variable list with roles. Coordinates are every non-formal variable.
class Chart {
public:
    Chart();

    VarId add(const std::string& name, Role role);
    std::uint32_t id() const { return id_; }
    std::size_t size() const { return vars_.size(); }
    const VarInfo& info(VarId v) const { return vars_.at(v); }
    const std::string& name(VarId v) const { return vars_.at(v).name; }
    bool is_coordinate(VarId v) const { return vars_.at(v).role != Role::Formal; }
    std::size_t coordinate_count() const;
    std::vector<VarId> with_role(Role r) const;
    /// Base coordinates in insertion order (x^0, x^1, ...).
    const std::vector<VarId>& base() const { return base_; }
    VarId find(const std::string& name) const;

    Poly var(VarId v) const { return Poly::variable(v, id_); }
    std::string str(const Poly& p) const;

private:
    std::uint32_t id_;
    std::vector<VarInfo> vars_;
    std::vector<VarId> base_;
    std::unordered_map<std::string, VarId> by_name_;
};

}  // namespace dwv
