#include "dwv/chart.hpp"

#include <atomic>
#include <limits>
#include <stdexcept>

namespace dwv {

namespace {
std::atomic<std::uint32_t> next_chart_id{1};
}

Chart::Chart() : id_(next_chart_id.fetch_add(1)) {}

VarId Chart::add(const std::string& name, Role role) {
    if (vars_.size() >= std::numeric_limits<VarId>::max()) throw std::length_error("chart is full");
    if (by_name_.count(name)) throw std::invalid_argument("duplicate chart variable: " + name);
    auto v = static_cast<VarId>(vars_.size());
    vars_.push_back({name, role});
    by_name_.emplace(name, v);
    if (role == Role::Base) base_.push_back(v);
    return v;
}

std::size_t Chart::coordinate_count() const {
    std::size_t c = 0;
    for (const auto& v : vars_) c += v.role != Role::Formal;
    return c;
}

std::vector<VarId> Chart::with_role(Role r) const {
    std::vector<VarId> out;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].role == r) out.push_back(static_cast<VarId>(i));
    return out;
}

VarId Chart::find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw std::out_of_range("no chart variable named " + name);
    return it->second;
}

std::string Chart::str(const Poly& p) const {
    return p.str([this](VarId v) { return name(v); });
}

}  // namespace dwv
