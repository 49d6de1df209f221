#include <gcbrane/rational.hpp>

namespace gcb
{

Rational parse_rational(const std::string &s)
{
    if (s.empty()) {
        throw std::invalid_argument("empty rational literal");
    }
    Rational q;
    // mpq_class::set_str rejects leading '+', whitespace and malformed text.
    if (q.set_str(s, 10) != 0) {
        throw std::invalid_argument("malformed rational literal: " + s);
    }
    if (s.find('/') != std::string::npos && sgn(q.get_den()) == 0) {
        throw std::invalid_argument("zero denominator: " + s);
    }
    q.canonicalize();
    return q;
}

std::string to_string(const Rational &q)
{
    return q.get_str(10);
}

Rational rational_pow(const Rational &q, int e)
{
    Rational base = e < 0 ? Rational(1) / q : q;
    unsigned k = e < 0 ? static_cast<unsigned>(-e) : static_cast<unsigned>(e);
    Rational out(1);
    while (k) {
        if (k & 1u) {
            out *= base;
        }
        base *= base;
        k >>= 1u;
    }
    return out;
}

Gauss &Gauss::operator*=(const Gauss &o)
{
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Gauss Gauss::inverse() const
{
    Rational d = re * re + im * im;
    if (sgn(d) == 0) {
        throw std::domain_error("division by zero in Q(i)");
    }
    return {re / d, -im / d};
}

std::string to_string(const Gauss &g)
{
    if (sgn(g.im) == 0) {
        return to_string(g.re);
    }
    return to_string(g.re) + (sgn(g.im) < 0 ? "" : "+") + to_string(g.im) + "i";
}

} // namespace gcb
