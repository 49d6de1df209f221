#ifndef GCBRANE_RATIONAL_HPP
#define GCBRANE_RATIONAL_HPP

#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace gcb
{

using Rational = mpq_class;

// Thrown when an operation's documented precondition does not hold.
class PreconditionError : public std::invalid_argument
{
public:
    PreconditionError(std::string clause, const std::string &what)
        : std::invalid_argument(what), clause_(std::move(clause))
    {
    }
    const std::string &clause() const noexcept { return clause_; }

private:
    std::string clause_;
};

Rational parse_rational(const std::string &s);
std::string to_string(const Rational &q);
Rational rational_pow(const Rational &q, int e);

// Element of Q(i).
struct Gauss {
    Rational re;
    Rational im;

    Gauss() = default;
    Gauss(Rational r) : re(std::move(r)), im(0) {}
    Gauss(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    Gauss(long r) : re(r), im(0) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    Gauss conj() const { return {re, -im}; }
    // |re| + |im|, a rational stand-in for the modulus.
    Rational norm1() const { return abs(re) + abs(im); }
    Gauss inverse() const;

    Gauss &operator+=(const Gauss &o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    Gauss &operator-=(const Gauss &o)
    {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Gauss &operator*=(const Gauss &o);
    Gauss &operator*=(const Rational &q)
    {
        re *= q;
        im *= q;
        return *this;
    }
    Gauss operator-() const { return {-re, -im}; }
};

inline Gauss operator+(Gauss a, const Gauss &b) { return a += b; }
inline Gauss operator-(Gauss a, const Gauss &b) { return a -= b; }
inline Gauss operator*(Gauss a, const Gauss &b) { return a *= b; }
inline Gauss operator*(Gauss a, const Rational &q) { return a *= q; }
inline Gauss operator/(const Gauss &a, const Gauss &b) { return a * b.inverse(); }
inline bool operator==(const Gauss &a, const Gauss &b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const Gauss &a, const Gauss &b) { return !(a == b); }

inline const Gauss I_unit{Rational(0), Rational(1)};

std::string to_string(const Gauss &g);

} // namespace gcb

#endif
