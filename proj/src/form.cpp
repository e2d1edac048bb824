#include "dwv/form.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dwv {

Blade Blade::sorted(std::vector<VarId> vars, int& sign) {
    if (vars.size() > static_cast<std::size_t>(kCapacity)) throw std::length_error("blade exceeds capacity");
    sign = 1;
    for (std::size_t i = 1; i < vars.size(); ++i)
        for (std::size_t j = i; j > 0 && vars[j - 1] >= vars[j]; --j) {
            if (vars[j - 1] == vars[j]) {
                sign = 0;
                return Blade();
            }
            std::swap(vars[j - 1], vars[j]);
            sign = -sign;
        }
    Blade b;
    b.len_ = static_cast<std::uint8_t>(vars.size());
    std::copy(vars.begin(), vars.end(), b.v_.begin());
    return b;
}

int Blade::position(VarId v) const {
    for (int i = 0; i < len_; ++i)
        if (v_[i] == v) return i;
    return -1;
}

Blade Blade::without(int i) const {
    Blade b;
    for (int j = 0; j < len_; ++j)
        if (j != i) b.v_[b.len_++] = v_[j];
    return b;
}

int merge_blades(const Blade& a, const Blade& b, Blade& out) {
    if (a.size() + b.size() > Blade::kCapacity) throw std::length_error("blade exceeds capacity");
    std::vector<VarId> vars;
    vars.reserve(a.size() + b.size());
    int sign = 1;
    int i = 0, j = 0;
    // Moving b[j] left past the remaining elements of a contributes (-1)^(a.size() - i).
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return 0;
        if (a[i] < b[j]) {
            vars.push_back(a[i++]);
        } else {
            if ((a.size() - i) % 2) sign = -sign;
            vars.push_back(b[j++]);
        }
    }
    for (; i < a.size(); ++i) vars.push_back(a[i]);
    for (; j < b.size(); ++j) vars.push_back(b[j]);
    int dummy;
    out = Blade::sorted(std::move(vars), dummy);
    return sign;
}

template <class Tag>
Graded<Tag> Graded<Tag>::basis(std::vector<VarId> vars, const Poly& coeff) {
    Graded g(static_cast<int>(vars.size()));
    int sign;
    Blade b = Blade::sorted(std::move(vars), sign);
    if (sign != 0) g.add_term(b, sign > 0 ? coeff : -coeff);
    return g;
}

template <class Tag>
Poly Graded<Tag>::coefficient(const Blade& b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? Poly() : it->second;
}

template <class Tag>
std::size_t Graded<Tag>::term_count() const {
    std::size_t c = 0;
    for (const auto& [b, p] : terms_) c += p.size();
    return c;
}

template <class Tag>
void Graded<Tag>::add_term(const Blade& b, const Poly& coeff) {
    if (b.size() != degree_) throw std::invalid_argument("blade degree does not match");
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(b, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

template <class Tag>
Graded<Tag> Graded<Tag>::operator-() const {
    Graded g = *this;
    for (auto& [b, p] : g.terms_) p = -p;
    return g;
}

template <class Tag>
Graded<Tag>& Graded<Tag>::operator+=(const Graded& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) degree_ = o.degree_;
    if (o.degree_ != degree_) throw std::invalid_argument("adding elements of different degree");
    for (const auto& [b, p] : o.terms_) add_term(b, p);
    return *this;
}

template <class Tag>
Graded<Tag>& Graded<Tag>::operator-=(const Graded& o) {
    return *this += -o;
}

template <class Tag>
Graded<Tag> Graded<Tag>::times(const Poly& p) const {
    Graded g(degree_);
    for (const auto& [b, c] : terms_) g.add_term(b, c * p);
    return g;
}

template <class Tag>
Graded<Tag> Graded<Tag>::scaled(const Rational& r) const {
    Graded g(degree_);
    for (const auto& [b, c] : terms_) g.add_term(b, c.scaled(r));
    return g;
}

template <class Tag>
Graded<Tag> Graded<Tag>::substitute(const std::unordered_map<VarId, Poly>& sigma) const {
    Graded g(degree_);
    for (const auto& [b, c] : terms_) g.add_term(b, c.substitute(sigma));
    return g;
}

template <class Tag>
Graded<Tag> GradedBuilder<Tag>::finish() {
    Graded<Tag> g(degree_);
    for (auto& [b, acc] : acc_) g.add_term(b, acc.finish());
    acc_.clear();
    return g;
}

template class Graded<FormTag>;
template class Graded<VectorTag>;
template class GradedBuilder<FormTag>;
template class GradedBuilder<VectorTag>;

namespace {

template <class Tag>
std::string render(const Chart& chart, const Graded<Tag>& g, const char* prefix, const char* join) {
    if (g.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [b, p] : g.terms()) {
        if (!first) os << "\n";
        first = false;
        os << "(" << chart.str(p) << ")";
        for (int i = 0; i < b.size(); ++i) os << (i == 0 ? " " : join) << prefix << chart.name(b[i]);
    }
    return os.str();
}

}  // namespace

std::string to_string(const Chart& chart, const Form& f) { return render(chart, f, "d", "^"); }
std::string to_string(const Chart& chart, const MultiVector& v) { return render(chart, v, "D_", "^"); }

}  // namespace dwv
