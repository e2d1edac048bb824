#pragma once

#include "dwv/chart.hpp"

#include <array>
#include <compare>
#include <initializer_list>
#include <map>
#include <vector>

namespace dwv {

/// Strictly increasing tuple of variables indexing a basis element dq^A or ∂_A.
class Blade {
public:
    static constexpr int kCapacity = 12;

    Blade() = default;
    /// Sorts vars and stores the permutation sign; sign is 0 on a repeated variable.
    static Blade sorted(std::vector<VarId> vars, int& sign);

    int size() const { return len_; }
    VarId operator[](int i) const { return v_[i]; }
    int position(VarId v) const;
    Blade without(int i) const;
    std::vector<VarId> vars() const { return {v_.begin(), v_.begin() + len_}; }

    friend bool operator==(const Blade&, const Blade&) = default;
    friend auto operator<=>(const Blade&, const Blade&) = default;

private:
    std::uint8_t len_ = 0;
    std::array<VarId, kCapacity> v_{};
};

/// Sign and blade of the product of two sorted blades; sign 0 if they share a variable.
int merge_blades(const Blade& a, const Blade& b, Blade& out);

/// Sparse graded element over a chart: mapping from blades of a fixed degree to Polys.
/// Form and MultiVector share the representation and differ only in meaning.
template <class Tag>
class Graded {
public:
    explicit Graded(int degree = 0) : degree_(degree) {}
    /// Coefficient times the (unsorted) basis element of vars.
    static Graded basis(std::vector<VarId> vars, const Poly& coeff = Poly(1));
    static Graded scalar(const Poly& p) {
        Graded g(0);
        g.add_term(Blade(), p);
        return g;
    }

    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Blade, Poly>& terms() const { return terms_; }
    Poly coefficient(const Blade& b) const;
    /// Total number of polynomial terms across all blades.
    std::size_t term_count() const;

    /// Adds coeff to the blade's coefficient; the blade must have this degree.
    void add_term(const Blade& b, const Poly& coeff);

    Graded operator-() const;
    Graded& operator+=(const Graded& o);
    Graded& operator-=(const Graded& o);
    friend Graded operator+(Graded a, const Graded& b) { return a += b; }
    friend Graded operator-(Graded a, const Graded& b) { return a -= b; }
    friend Graded operator*(const Poly& p, const Graded& g) { return g.times(p); }
    Graded times(const Poly& p) const;
    Graded scaled(const Rational& r) const;
    /// Applies a substitution to every coefficient (no chain rule).
    Graded substitute(const std::unordered_map<VarId, Poly>& sigma) const;

    friend bool operator==(const Graded& a, const Graded& b) {
        return (a.is_zero() && b.is_zero()) || (a.degree_ == b.degree_ && a.terms_ == b.terms_);
    }

private:
    int degree_;
    std::map<Blade, Poly> terms_;
};

struct FormTag {};
struct VectorTag {};
using Form = Graded<FormTag>;
using MultiVector = Graded<VectorTag>;

/// Builds a graded element by accumulating raw terms per blade and normalizing once.
template <class Tag>
class GradedBuilder {
public:
    explicit GradedBuilder(int degree) : degree_(degree) {}
    void add(const Blade& b, const Poly& p, const Rational& scale = Rational(1)) {
        acc_.try_emplace(b).first->second.add(p, scale);
    }
    void add_product(const Blade& b, const Poly& p, const Poly& q, const Rational& scale = Rational(1)) {
        acc_.try_emplace(b).first->second.add_product(p, q, scale);
    }
    Graded<Tag> finish();

private:
    int degree_;
    std::map<Blade, PolyAccumulator> acc_;
};

using FormBuilder = GradedBuilder<FormTag>;

/// Human-readable rendering, one blade per line.
std::string to_string(const Chart& chart, const Form& f);
std::string to_string(const Chart& chart, const MultiVector& v);

}  // namespace dwv
