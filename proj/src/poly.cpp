#include "dwv/poly.hpp"

#include <algorithm>
#include <sstream>

namespace dwv {

// ---- Monomial ----

Monomial Monomial::variable(VarId v, unsigned exp) {
    Monomial m;
    if (exp > 0) m.push(v, exp);
    return m;
}

void Monomial::push(VarId v, unsigned e) {
    if (len_ >= kCapacity) throw std::length_error("monomial exceeds variable capacity");
    if (e > 0xffu) throw std::overflow_error("monomial exponent overflow");
    t_[len_++] = (static_cast<std::uint32_t>(v) << 8) | e;
}

unsigned Monomial::degree_in(VarId v) const {
    for (int i = 0; i < len_; ++i)
        if (var(i) == v) return exp(i);
    return 0;
}

unsigned Monomial::total_degree() const {
    unsigned d = 0;
    for (int i = 0; i < len_; ++i) d += exp(i);
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    int i = 0, j = 0;
    while (i < len_ && j < o.len_) {
        VarId a = var(i), b = o.var(j);
        if (a < b) { r.push(a, exp(i)); ++i; }
        else if (b < a) { r.push(b, o.exp(j)); ++j; }
        else { r.push(a, exp(i) + o.exp(j)); ++i; ++j; }
    }
    for (; i < len_; ++i) r.push(var(i), exp(i));
    for (; j < o.len_; ++j) r.push(o.var(j), o.exp(j));
    return r;
}

Monomial Monomial::without_one(VarId v) const {
    Monomial r;
    for (int i = 0; i < len_; ++i) {
        if (var(i) == v) {
            if (exp(i) > 1) r.push(v, exp(i) - 1);
        } else {
            r.push(var(i), exp(i));
        }
    }
    return r;
}

std::size_t Monomial::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < len_; ++i) {
        h ^= t_[i];
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

// ---- Poly ----

std::uint32_t Poly::join(std::uint32_t a, std::uint32_t b) {
    if (a == 0) return b;
    if (b == 0 || a == b) return a;
    throw ChartMismatch();
}

Poly::Poly(const Rational& c) {
    if (!c.is_zero()) terms_.emplace_back(Monomial(), c);
}

Poly Poly::variable(VarId v, std::uint32_t chart) {
    Poly p;
    p.terms_.emplace_back(Monomial::variable(v), Rational(1));
    p.chart_ = chart;
    return p;
}

Poly Poly::from_terms(std::vector<Term> terms, std::uint32_t chart) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    Poly p;
    p.chart_ = chart;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().first == t.first) {
            p.terms_.back().second += t.second;
        } else {
            if (!p.terms_.empty() && p.terms_.back().second.is_zero()) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().second.is_zero()) p.terms_.pop_back();
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

Rational Poly::constant_term() const {
    if (!terms_.empty() && terms_[0].first.is_one()) return terms_[0].second;
    return Rational(0);
}

unsigned Poly::total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first.total_degree());
    return d;
}

std::vector<VarId> Poly::variables() const {
    std::vector<VarId> v;
    for (const auto& t : terms_)
        for (int i = 0; i < t.first.size(); ++i) v.push_back(t.first.var(i));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool Poly::depends_on(VarId v) const {
    for (const auto& t : terms_)
        if (t.first.degree_in(v) > 0) return true;
    return false;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

namespace {

template <bool Subtract>
std::vector<Poly::Term> merge(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b) {
    std::vector<Poly::Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) {
            out.push_back(a[i++]);
        } else if (b[j].first < a[i].first) {
            out.emplace_back(b[j].first, Subtract ? -b[j].second : b[j].second);
            ++j;
        } else {
            Rational c = Subtract ? a[i].second - b[j].second : a[i].second + b[j].second;
            if (!c.is_zero()) out.emplace_back(a[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.emplace_back(b[j].first, Subtract ? -b[j].second : b[j].second);
    return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
    chart_ = join(chart_, o.chart_);
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) { terms_ = o.terms_; return *this; }
    terms_ = merge<false>(terms_, o.terms_);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    chart_ = join(chart_, o.chart_);
    if (o.terms_.empty()) return *this;
    terms_ = merge<true>(terms_, o.terms_);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    std::uint32_t chart = Poly::join(a.chart_, b.chart_);
    if (a.terms_.empty() || b.terms_.empty()) {
        Poly z;
        z.chart_ = chart;
        return z;
    }
    std::vector<Poly::Term> buf;
    buf.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) buf.emplace_back(x.first * y.first, x.second * y.second);
    return Poly::from_terms(std::move(buf), chart);
}

Poly Poly::scaled(const Rational& c) const {
    if (c.is_zero()) {
        Poly z;
        z.chart_ = chart_;
        return z;
    }
    Poly r = *this;
    for (auto& t : r.terms_) t.second *= c;
    return r;
}

Poly Poly::pow(unsigned k) const {
    Poly r(1);
    r.chart_ = chart_;
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
}

Poly Poly::derivative(VarId v) const {
    std::vector<Term> buf;
    for (const auto& t : terms_) {
        unsigned e = t.first.degree_in(v);
        if (e == 0) continue;
        buf.emplace_back(t.first.without_one(v), t.second * Rational(static_cast<long>(e)));
    }
    // Removing one power of a fixed variable keeps distinct monomials distinct and ordered
    // only up to re-sorting, so normalize.
    return from_terms(std::move(buf), chart_);
}

Poly Poly::substitute(const std::unordered_map<VarId, Poly>& sigma) const {
    std::map<std::pair<VarId, unsigned>, Poly> powers;
    auto power = [&](VarId v, unsigned e, const Poly& base) -> const Poly& {
        auto key = std::make_pair(v, e);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        return powers.emplace(key, base.pow(e)).first->second;
    };
    PolyAccumulator acc(chart_);
    for (const auto& t : terms_) {
        Monomial kept;
        Poly factor(t.second);
        for (int i = 0; i < t.first.size(); ++i) {
            VarId v = t.first.var(i);
            auto it = sigma.find(v);
            if (it == sigma.end()) {
                kept = kept * Monomial::variable(v, t.first.exp(i));
            } else {
                factor = factor * power(v, t.first.exp(i), it->second);
                if (factor.is_zero()) break;
            }
        }
        if (factor.is_zero()) continue;
        Poly k;
        k.terms_.emplace_back(kept, Rational(1));
        acc.add_product(factor, k);
    }
    return acc.finish();
}

Rational Poly::evaluate(const std::unordered_map<VarId, Rational>& point) const {
    Rational sum;
    for (const auto& t : terms_) {
        Rational prod = t.second;
        for (int i = 0; i < t.first.size(); ++i) {
            auto it = point.find(t.first.var(i));
            if (it == point.end()) throw std::out_of_range("evaluate: variable without assignment");
            for (unsigned k = 0; k < t.first.exp(i); ++k) prod *= it->second;
        }
        sum += prod;
    }
    return sum;
}

std::string Poly::str(const std::function<std::string(VarId)>& name) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.second;
        if (!first) os << (c.sign() < 0 ? " - " : " + ");
        else if (c.sign() < 0) os << "-";
        first = false;
        Rational a = c.abs();
        bool unit = a.is_one();
        if (!unit || t.first.is_one()) os << a.str();
        for (int i = 0; i < t.first.size(); ++i) {
            if (!unit || i > 0) os << "*";
            os << name(t.first.var(i));
            if (t.first.exp(i) > 1) os << "^" << t.first.exp(i);
        }
    }
    return os.str();
}

// ---- PolyAccumulator ----

void PolyAccumulator::add(const Poly& p, const Rational& scale) {
    if (p.chart() != 0) {
        if (chart_ == 0) chart_ = p.chart();
        else if (chart_ != p.chart()) throw ChartMismatch();
    }
    if (scale.is_zero()) return;
    for (const auto& t : p.terms()) buf_.emplace_back(t.first, scale.is_one() ? t.second : t.second * scale);
}

void PolyAccumulator::add_product(const Poly& a, const Poly& b, const Rational& scale) {
    for (const Poly* p : {&a, &b}) {
        if (p->chart() != 0) {
            if (chart_ == 0) chart_ = p->chart();
            else if (chart_ != p->chart()) throw ChartMismatch();
        }
    }
    if (scale.is_zero()) return;
    for (const auto& x : a.terms())
        for (const auto& y : b.terms()) {
            Rational c = x.second * y.second;
            if (!scale.is_one()) c *= scale;
            buf_.emplace_back(x.first * y.first, std::move(c));
        }
}

Poly PolyAccumulator::finish() {
    Poly p = Poly::from_terms(std::move(buf_), chart_);
    buf_.clear();
    return p;
}

// ---- random data ----

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

long SplitMix64::uniform(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(next() % span);
}

namespace {

void enumerate_monomials(const std::vector<VarId>& vars, std::size_t from, int budget, Monomial cur,
                         std::vector<Monomial>& out) {
    out.push_back(cur);
    if (budget == 0) return;
    for (std::size_t i = from; i < vars.size(); ++i)
        enumerate_monomials(vars, i, budget - 1, cur * Monomial::variable(vars[i]), out);
}

}  // namespace

Poly random_polynomial(const std::vector<VarId>& vars, int max_degree, std::uint64_t seed,
                       std::uint32_t chart) {
    if (max_degree < 0) throw std::invalid_argument("max_degree must be non-negative");
    std::vector<VarId> sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<Monomial> monos;
    enumerate_monomials(sorted, 0, max_degree, Monomial(), monos);
    SplitMix64 rng(seed);
    std::vector<Poly::Term> terms;
    for (const auto& m : monos) terms.emplace_back(m, Rational(rng.uniform(-9, 9)));
    return Poly::from_terms(std::move(terms), chart);
}

}  // namespace dwv
