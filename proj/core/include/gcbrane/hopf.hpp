#ifndef GCBRANE_HOPF_HPP
#define GCBRANE_HOPF_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gcbrane/jet.hpp>
#include <gcbrane/matrix.hpp>

namespace gcb::hopf
{

// Generators x1, xb1, x2, xb2 (index 0..3); conjugation swaps 0 <-> 1 and 2 <-> 3.
inline constexpr int num_vars = 4;

// num / (x^den * (R^2)^r2), R^2 = x1 xb1 + x2 xb2.
class FieldElement
{
public:
    FieldElement();
    FieldElement(const Gauss &c);
    static FieldElement variable(int i);
    static FieldElement r_squared();
    // (R^2)^e, e may be negative.
    static FieldElement r_squared_power(int e);

    bool is_zero() const { return num_.is_zero(); }
    FieldElement &operator+=(const FieldElement &o);
    FieldElement &operator-=(const FieldElement &o);
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement &o) const;
    // Division by x_i^e.
    FieldElement divided_by_variable(int i, int e = 1) const;
    FieldElement partial(int i) const;
    FieldElement conj() const;
    // f(lambda x).
    FieldElement scaled_argument(const Rational &lambda) const;
    // Value at a point with nonzero denominator.
    Gauss evaluate(const std::array<Gauss, num_vars> &x) const;
    // Numerator after clearing this element's denominator.
    const jet::JetFunction &numerator() const { return num_; }
    std::array<int, num_vars> denominator_exponents() const { return den_; }
    int r2_power() const { return r2_; }

    bool operator==(const FieldElement &o) const;
    bool operator!=(const FieldElement &o) const { return !(*this == o); }
    std::string to_string() const;

private:
    jet::JetFunction num_;
    std::array<int, num_vars> den_{};
    int r2_ = 0;

    void bring_to(const std::array<int, num_vars> &den, int r2);
    // Cancels common generator powers and exact R^2 factors.
    void reduce();
};

inline FieldElement operator+(FieldElement a, const FieldElement &b) { return a += b; }
inline FieldElement operator-(FieldElement a, const FieldElement &b) { return a -= b; }

// Exterior algebra element over the field; mask bit i is dx_i in the order dx1, dxb1, dx2, dxb2.
class HopfForm
{
public:
    using Mask = std::uint8_t;

    HopfForm() = default;
    static HopfForm function(const FieldElement &f);
    static HopfForm generator(int i);

    const std::map<Mask, FieldElement> &components() const { return comps_; }
    FieldElement component(Mask m) const;
    void add(Mask m, const FieldElement &f);
    bool is_zero() const { return comps_.empty(); }

    HopfForm &operator+=(const HopfForm &o);
    HopfForm operator-() const;
    HopfForm scaled(const FieldElement &f) const;
    HopfForm conj() const;
    // Pullback under x -> lambda x.
    HopfForm pullback_scale(const Rational &lambda) const;

    bool operator==(const HopfForm &o) const;
    bool operator!=(const HopfForm &o) const { return !(*this == o); }
    std::string to_string() const;

private:
    std::map<Mask, FieldElement> comps_;
};

inline HopfForm operator+(HopfForm a, const HopfForm &b) { return a += b; }
inline HopfForm operator-(HopfForm a, const HopfForm &b) { return a += -b; }

HopfForm wedge(const HopfForm &a, const HopfForm &b);
HopfForm exterior_d(const HopfForm &a);
HopfForm exterior_d(const FieldElement &f);
// d log of prod f_i^{e_i} for factors that are generators (index 0..3) or R^2 (index 4).
HopfForm dlog_product(const std::vector<std::pair<int, Rational>> &factors);

struct HopfOptions {
    // Mutation: flip the sign of B.
    bool flip_B_sign = false;
};

HopfForm build_C();
HopfForm build_B(const HopfOptions &opts = {});
HopfForm build_W(const HopfOptions &opts = {});
// dw1 = d log(xb1 R^2 / x1); d log w2 = d log(xb2 R^{-1}).
HopfForm build_dw1();
HopfForm build_dlog_w2();
HopfForm expected_dC();

struct HopfCheck {
    std::string name;
    bool pass = false;
    std::string witness;
};

struct HopfReport {
    std::vector<HopfCheck> checks;
    bool ok() const;
};

// Point on S = {x1 real, R^2 = c} as (x1, x2) with rational x1 and Gaussian x2.
struct SamplePoint {
    Rational x1;
    Gauss x2;
    std::array<Gauss, num_vars> coords() const;
};

// Deterministic search for rational points on S with x1 and both parts of x2 nonzero.
std::vector<SamplePoint> sample_points(const Rational &c, std::size_t count);

// 8x8 operator on the complexified frame (d/dx_i, dx_i) whose +i eigenbundle is {X + iota_X F},
// with -i eigenbundle the conjugate graph.
GMatrix structure_from_two_form(const HopfForm &F, const std::array<Gauss, num_vars> &x);

HopfReport verify_dC();
HopfReport verify_w_gauge(const HopfOptions &opts = {});
HopfReport verify_pi_inverse(const HopfOptions &opts = {});
HopfReport verify_brane_family(const Rational &c, const HopfOptions &opts = {});
// All of the above for the given c values.
HopfReport run_hopf_suite(const std::vector<Rational> &cs, const HopfOptions &opts = {});

} // namespace gcb::hopf

#endif
