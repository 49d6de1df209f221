#ifndef GCBRANE_JET_HPP
#define GCBRANE_JET_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gcbrane/rational.hpp>

namespace gcb::jet
{

// Polydisc data: complex dimension n, brane C^k (first k coordinates),
// truncation order N (joint degree in z, zbar) and norm radius r.
struct JetContext {
    int n = 1;
    int k = 0;
    int N = 8;
    Rational r = 1;

    void validate() const;
    bool operator==(const JetContext &o) const
    {
        return n == o.n && k == o.k && N == o.N && r == o.r;
    }
};

inline constexpr int max_complex_dim = 4;

// Packed monomial: byte slot i < n holds the exponent of z_{i+1},
// byte slot n + i holds the exponent of zbar_{i+1}.
using Monomial = std::uint64_t;

inline int mono_exp(Monomial m, int slot) { return static_cast<int>((m >> (8 * slot)) & 0xffu); }
inline int mono_degree(Monomial m)
{
    return static_cast<int>((m * 0x0101010101010101ull) >> 56);
}
inline Monomial mono_unit(int slot) { return Monomial{1} << (8 * slot); }
Monomial mono_make(const std::vector<int> &z, const std::vector<int> &zbar, int n);
// Swaps the z and zbar exponent blocks.
Monomial mono_conj(Monomial m, int n);

// Truncated polynomial in z_1..z_n, zbar_1..zbar_n with Q(i) coefficients.
// Terms are kept sorted by monomial with no zero coefficients.
class JetFunction
{
public:
    using Term = std::pair<Monomial, Gauss>;

    JetFunction() = default;
    JetFunction(int n, int N) : n_(n), N_(N) {}

    static JetFunction constant(int n, int N, const Gauss &c);
    // slot in [0, 2n): z_{slot+1} for slot < n, zbar_{slot-n+1} otherwise.
    static JetFunction variable(int n, int N, int slot);
    static JetFunction monomial(int n, int N, Monomial m, const Gauss &c);

    int n() const { return n_; }
    int order() const { return N_; }
    const std::vector<Term> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Gauss coeff(Monomial m) const;

    // Adds c * m, dropping the term if deg m > N.
    void add_term(Monomial m, const Gauss &c);

    JetFunction &operator+=(const JetFunction &o);
    JetFunction &operator-=(const JetFunction &o);
    JetFunction operator-() const;
    JetFunction scaled(const Gauss &c) const;
    JetFunction scaled(const Rational &c) const;

    // Product truncated at this->order().
    JetFunction operator*(const JetFunction &o) const;

    JetFunction derivative(int slot) const;
    JetFunction conj() const;
    JetFunction truncated(int degree) const;
    JetFunction with_order(int N) const;
    // Keeps monomials whose degree lies in [lo, hi].
    JetFunction degree_range(int lo, int hi) const;

    // Sets z_i = zbar_i = 0 for i >= k.
    JetFunction restrict_to_first(int k) const;
    bool vanishes_on_first(int k) const { return restrict_to_first(k).is_zero(); }

    // Minimal degree of a nonzero term, -1 for the zero function.
    int vanishing_order() const;
    Rational majorant_norm(const Rational &r) const;

    bool operator==(const JetFunction &o) const { return terms_ == o.terms_; }
    bool operator!=(const JetFunction &o) const { return !(*this == o); }

    std::string to_string() const;

private:
    void normalize();

    int n_ = 0;
    int N_ = 0;
    std::vector<Term> terms_;
};

inline JetFunction operator+(JetFunction a, const JetFunction &b) { return a += b; }
inline JetFunction operator-(JetFunction a, const JetFunction &b) { return a -= b; }

// Substitutes x_slot -> args[slot] for every slot in [0, 2n).
JetFunction compose(const JetFunction &f, const std::vector<JetFunction> &args);

} // namespace gcb::jet

#endif
