#include "dwv/rational.hpp"

#include <stdexcept>

namespace dwv {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
    if (q.get_den() == 0) throw std::domain_error("rational with zero denominator");
    q.canonicalize();
    return Rational(q);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
}

}  // namespace dwv
