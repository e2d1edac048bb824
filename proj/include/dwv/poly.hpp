#pragma once

#include "dwv/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dwv {

/// Chart-local variable index.
using VarId = std::uint16_t;

/// Thrown when operands belong to different charts.
struct ChartMismatch : std::logic_error {
    ChartMismatch() : std::logic_error("operands belong to different charts") {}
};

/// Power product of variables: sorted by variable, exponents >= 1.
class Monomial {
public:
    static constexpr int kCapacity = 16;

    Monomial() = default;
    static Monomial variable(VarId v, unsigned exp = 1);

    int size() const { return len_; }
    bool is_one() const { return len_ == 0; }
    VarId var(int i) const { return static_cast<VarId>(t_[i] >> 8); }
    unsigned exp(int i) const { return t_[i] & 0xffu; }
    unsigned degree_in(VarId v) const;
    unsigned total_degree() const;

    Monomial operator*(const Monomial& o) const;
    /// Returns this with one power of v removed; requires degree_in(v) > 0.
    Monomial without_one(VarId v) const;

    std::size_t hash() const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
    void push(VarId v, unsigned e);

    std::uint8_t len_ = 0;
    std::array<std::uint32_t, kCapacity> t_{};
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are sorted by monomial and never carry a zero coefficient.
/// The chart tag 0 marks a chart-free value (constants), compatible with any chart.
class Poly {
public:
    using Term = std::pair<Monomial, Rational>;

    Poly() = default;
    Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    Poly(const Rational& c);             // NOLINT(google-explicit-constructor)
    static Poly variable(VarId v, std::uint32_t chart = 0);
    /// Sorts and merges arbitrary terms, dropping zeros.
    static Poly from_terms(std::vector<Term> terms, std::uint32_t chart = 0);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    std::size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }
    std::uint32_t chart() const { return chart_; }
    unsigned total_degree() const;
    /// Distinct variables occurring in the polynomial, ascending.
    std::vector<VarId> variables() const;
    bool depends_on(VarId v) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const Rational& c) const;
    Poly pow(unsigned k) const;

    Poly derivative(VarId v) const;
    /// Simultaneous substitution; unmapped variables are kept.
    Poly substitute(const std::unordered_map<VarId, Poly>& sigma) const;
    /// Exact evaluation; throws std::out_of_range on a missing assignment.
    Rational evaluate(const std::unordered_map<VarId, Rational>& point) const;

    std::string str(const std::function<std::string(VarId)>& name) const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

private:
    static std::uint32_t join(std::uint32_t a, std::uint32_t b);

    std::vector<Term> terms_;
    std::uint32_t chart_ = 0;
};

/// Collects many terms and normalizes once.
class PolyAccumulator {
public:
    explicit PolyAccumulator(std::uint32_t chart = 0) : chart_(chart) {}
    void add(const Poly& p, const Rational& scale = Rational(1));
    void add_product(const Poly& a, const Poly& b, const Rational& scale = Rational(1));
    Poly finish();

private:
    std::vector<Poly::Term> buf_;
    std::uint32_t chart_;
};

/// Deterministic 64-bit generator (splitmix64) used for seeded test data.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : s_(seed) {}
    std::uint64_t next();
    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi);

private:
    std::uint64_t s_;
};

/// Deterministic polynomial of total degree <= max_degree in vars with integer
/// coefficients in [-9, 9].
Poly random_polynomial(const std::vector<VarId>& vars, int max_degree, std::uint64_t seed,
                       std::uint32_t chart = 0);

}  // namespace dwv
