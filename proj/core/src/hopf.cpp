#include <gcbrane/hopf.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gcb::hopf
{

using jet::JetFunction;
using jet::Monomial;
using jet::mono_exp;
using jet::mono_unit;

namespace
{

constexpr int ring_n = 2;
constexpr int ring_N = 60;
// Generator index -> jet slot (z1, z2, zb1, zb2).
constexpr std::array<int, num_vars> slot_of{0, 2, 1, 3};
// Conjugate generator.
constexpr std::array<int, num_vars> sigma{1, 0, 3, 2};
// d(R^2)/dx_i is x_{partner(i)}.
constexpr std::array<int, num_vars> partner{1, 0, 3, 2};

JetFunction ring_zero() { return JetFunction(ring_n, ring_N); }
JetFunction ring_const(const Gauss &c) { return JetFunction::constant(ring_n, ring_N, c); }
JetFunction ring_var(int i) { return JetFunction::variable(ring_n, ring_N, slot_of[i]); }

int max_degree(const JetFunction &f)
{
    int d = 0;
    for (const auto &[m, c] : f.terms()) {
        d = std::max(d, jet::mono_degree(m));
    }
    return d;
}

JetFunction mul(const JetFunction &a, const JetFunction &b)
{
    if (a.is_zero() || b.is_zero()) {
        return ring_zero();
    }
    if (max_degree(a) + max_degree(b) > ring_N) {
        throw std::overflow_error("hopf: polynomial degree exceeds ring capacity");
    }
    return a * b;
}

JetFunction ring_r2() { return mul(ring_var(0), ring_var(1)) + mul(ring_var(2), ring_var(3)); }

JetFunction ring_pow(const JetFunction &f, int e)
{
    JetFunction out = ring_const(Gauss(1));
    for (int i = 0; i < e; ++i) {
        out = mul(out, f);
    }
    return out;
}

int exp_of(Monomial m, int i) { return mono_exp(m, slot_of[i]); }

// Divides by R^2 when exact.
bool try_divide_r2(const JetFunction &f, JetFunction &quot)
{
    const JetFunction r2 = ring_r2();
    JetFunction p = f;
    quot = ring_zero();
    const Monomial lead = mono_unit(slot_of[0]) + mono_unit(slot_of[1]);
    auto key = [](Monomial m) {
        return std::array<int, 4>{exp_of(m, 0), exp_of(m, 1), exp_of(m, 2), exp_of(m, 3)};
    };
    while (!p.is_zero()) {
        auto it = std::max_element(p.terms().begin(), p.terms().end(),
                                   [&](const auto &a, const auto &b) {
                                       return key(a.first) < key(b.first);
                                   });
        Monomial m = it->first;
        if (exp_of(m, 0) == 0 || exp_of(m, 1) == 0) {
            return false;
        }
        JetFunction q = JetFunction::monomial(ring_n, ring_N, m - lead, it->second);
        quot += q;
        p -= mul(q, r2);
    }
    return true;
}

Gauss gpow(const Gauss &g, int e)
{
    Gauss out(1);
    for (int i = 0; i < e; ++i) {
        out *= g;
    }
    return out;
}

} // namespace

FieldElement::FieldElement() : num_(ring_zero()) {}

FieldElement::FieldElement(const Gauss &c) : num_(ring_const(c)) {}

FieldElement FieldElement::variable(int i)
{
    FieldElement f;
    f.num_ = ring_var(i);
    return f;
}

FieldElement FieldElement::r_squared()
{
    FieldElement f;
    f.num_ = ring_r2();
    return f;
}

FieldElement FieldElement::r_squared_power(int e)
{
    FieldElement f(Gauss(1));
    if (e >= 0) {
        f.num_ = ring_pow(ring_r2(), e);
    } else {
        f.r2_ = -e;
    }
    return f;
}

void FieldElement::bring_to(const std::array<int, num_vars> &den, int r2)
{
    JetFunction factor = ring_const(Gauss(1));
    for (int i = 0; i < num_vars; ++i) {
        factor = mul(factor, ring_pow(ring_var(i), den[i] - den_[i]));
    }
    factor = mul(factor, ring_pow(ring_r2(), r2 - r2_));
    num_ = mul(num_, factor);
    den_ = den;
    r2_ = r2;
}

void FieldElement::reduce()
{
    if (num_.is_zero()) {
        den_ = {};
        r2_ = 0;
        return;
    }
    for (int i = 0; i < num_vars; ++i) {
        int common = den_[i];
        for (const auto &[m, c] : num_.terms()) {
            common = std::min(common, exp_of(m, i));
        }
        if (common > 0) {
            JetFunction g = ring_zero();
            Monomial shift = static_cast<Monomial>(common) * mono_unit(slot_of[i]);
            for (const auto &[m, c] : num_.terms()) {
                g.add_term(m - shift, c);
            }
            num_ = g;
            den_[i] -= common;
        }
    }
    JetFunction q;
    while (r2_ > 0 && try_divide_r2(num_, q)) {
        num_ = q;
        --r2_;
    }
}

FieldElement &FieldElement::operator+=(const FieldElement &o)
{
    std::array<int, num_vars> den{};
    for (int i = 0; i < num_vars; ++i) {
        den[i] = std::max(den_[i], o.den_[i]);
    }
    int r2 = std::max(r2_, o.r2_);
    FieldElement b = o;
    bring_to(den, r2);
    b.bring_to(den, r2);
    num_ += b.num_;
    reduce();
    return *this;
}

FieldElement &FieldElement::operator-=(const FieldElement &o) { return *this += -o; }

FieldElement FieldElement::operator-() const
{
    FieldElement f = *this;
    f.num_ = -num_;
    return f;
}

FieldElement FieldElement::operator*(const FieldElement &o) const
{
    FieldElement f;
    f.num_ = mul(num_, o.num_);
    for (int i = 0; i < num_vars; ++i) {
        f.den_[i] = den_[i] + o.den_[i];
    }
    f.r2_ = r2_ + o.r2_;
    f.reduce();
    return f;
}

FieldElement FieldElement::divided_by_variable(int i, int e) const
{
    FieldElement f = *this;
    f.den_[i] += e;
    f.reduce();
    return f;
}

FieldElement FieldElement::partial(int i) const
{
    // d(num / (x^k R^{2e})) = [num_i x_i R^2 - num (k_i R^2 + e x_i dR^2_i)] / (x^k x_i R^{2e+2}).
    JetFunction xi = ring_var(i);
    JetFunction r2 = ring_r2();
    JetFunction top = mul(mul(num_.derivative(slot_of[i]), xi), r2);
    JetFunction inner = mul(ring_const(Gauss(den_[i])), r2)
                        + mul(ring_const(Gauss(r2_)), mul(xi, ring_var(partner[i])));
    top -= mul(num_, inner);
    FieldElement f;
    f.num_ = top;
    f.den_ = den_;
    f.den_[i] += 1;
    f.r2_ = r2_ + 1;
    f.reduce();
    return f;
}

FieldElement FieldElement::conj() const
{
    FieldElement f;
    f.num_ = num_.conj();
    for (int i = 0; i < num_vars; ++i) {
        f.den_[sigma[i]] = den_[i];
    }
    f.r2_ = r2_;
    return f;
}

FieldElement FieldElement::scaled_argument(const Rational &lambda) const
{
    int D = 2 * r2_;
    for (int e : den_) {
        D += e;
    }
    FieldElement f = *this;
    f.num_ = ring_zero();
    for (const auto &[m, c] : num_.terms()) {
        f.num_.add_term(m, c * rational_pow(lambda, jet::mono_degree(m) - D));
    }
    f.reduce();
    return f;
}

Gauss FieldElement::evaluate(const std::array<Gauss, num_vars> &x) const
{
    Gauss top(0);
    for (const auto &[m, c] : num_.terms()) {
        Gauss v = c;
        for (int i = 0; i < num_vars; ++i) {
            v *= gpow(x[i], exp_of(m, i));
        }
        top += v;
    }
    Gauss bottom(1);
    for (int i = 0; i < num_vars; ++i) {
        bottom *= gpow(x[i], den_[i]);
    }
    bottom *= gpow(x[0] * x[1] + x[2] * x[3], r2_);
    if (bottom.is_zero()) {
        throw std::domain_error("hopf: evaluation at a pole");
    }
    return top / bottom;
}

bool FieldElement::operator==(const FieldElement &o) const { return (*this - o).is_zero(); }

std::string FieldElement::to_string() const
{
    static const char *names[num_vars] = {"x1", "xb1", "x2", "xb2"};
    std::ostringstream os;
    os << "(";
    const char *plus = "";
    for (const auto &[m, c] : num_.terms()) {
        os << plus << "(" << gcb::to_string(c) << ")";
        for (int i = 0; i < num_vars; ++i) {
            int e = exp_of(m, i);
            if (e > 0) {
                os << "*" << names[i];
                if (e > 1) {
                    os << "^" << e;
                }
            }
        }
        plus = " + ";
    }
    if (num_.is_zero()) {
        os << "0";
    }
    os << ")";
    bool any = r2_ > 0;
    for (int e : den_) {
        any = any || e > 0;
    }
    if (any) {
        os << " / (";
        const char *sep = "";
        for (int i = 0; i < num_vars; ++i) {
            if (den_[i] > 0) {
                os << sep << names[i] << "^" << den_[i];
                sep = " ";
            }
        }
        if (r2_ > 0) {
            os << sep << "R2^" << r2_;
        }
        os << ")";
    }
    return os.str();
}

namespace
{

int wedge_sign(HopfForm::Mask a, HopfForm::Mask b)
{
    int swaps = 0;
    for (int i = 0; i < num_vars; ++i) {
        if (b & (1u << i)) {
            swaps += std::popcount(static_cast<unsigned>(a >> (i + 1)));
        }
    }
    return (swaps % 2) ? -1 : 1;
}

} // namespace

HopfForm HopfForm::function(const FieldElement &f)
{
    HopfForm h;
    h.add(0, f);
    return h;
}

HopfForm HopfForm::generator(int i)
{
    HopfForm h;
    h.add(static_cast<Mask>(1u << i), FieldElement(Gauss(1)));
    return h;
}

FieldElement HopfForm::component(Mask m) const
{
    auto it = comps_.find(m);
    return it == comps_.end() ? FieldElement() : it->second;
}

void HopfForm::add(Mask m, const FieldElement &f)
{
    if (f.is_zero()) {
        return;
    }
    auto it = comps_.find(m);
    if (it == comps_.end()) {
        comps_.emplace(m, f);
        return;
    }
    it->second += f;
    if (it->second.is_zero()) {
        comps_.erase(it);
    }
}

HopfForm &HopfForm::operator+=(const HopfForm &o)
{
    for (const auto &[m, f] : o.comps_) {
        add(m, f);
    }
    return *this;
}

HopfForm HopfForm::operator-() const
{
    HopfForm h;
    for (const auto &[m, f] : comps_) {
        h.comps_.emplace(m, -f);
    }
    return h;
}

HopfForm HopfForm::scaled(const FieldElement &f) const
{
    HopfForm h;
    for (const auto &[m, g] : comps_) {
        h.add(m, g * f);
    }
    return h;
}

HopfForm HopfForm::conj() const
{
    HopfForm h;
    for (const auto &[m, f] : comps_) {
        std::vector<int> image;
        for (int i = 0; i < num_vars; ++i) {
            if (m & (1u << i)) {
                image.push_back(sigma[i]);
            }
        }
        int inversions = 0;
        Mask out = 0;
        for (std::size_t a = 0; a < image.size(); ++a) {
            out |= static_cast<Mask>(1u << image[a]);
            for (std::size_t b = a + 1; b < image.size(); ++b) {
                inversions += image[a] > image[b];
            }
        }
        FieldElement g = f.conj();
        h.add(out, inversions % 2 ? -g : g);
    }
    return h;
}

HopfForm HopfForm::pullback_scale(const Rational &lambda) const
{
    HopfForm h;
    for (const auto &[m, f] : comps_) {
        h.add(m, f.scaled_argument(lambda) * FieldElement(Gauss(rational_pow(lambda, std::popcount(m)))));
    }
    return h;
}

bool HopfForm::operator==(const HopfForm &o) const { return (*this - o).is_zero(); }

std::string HopfForm::to_string() const
{
    static const char *names[num_vars] = {"dx1", "dxb1", "dx2", "dxb2"};
    if (comps_.empty()) {
        return "0";
    }
    std::ostringstream os;
    const char *sep = "";
    for (const auto &[m, f] : comps_) {
        os << sep << f.to_string();
        for (int i = 0; i < num_vars; ++i) {
            if (m & (1u << i)) {
                os << " " << names[i];
            }
        }
        sep = " + ";
    }
    return os.str();
}

HopfForm wedge(const HopfForm &a, const HopfForm &b)
{
    HopfForm h;
    for (const auto &[ma, fa] : a.components()) {
        for (const auto &[mb, fb] : b.components()) {
            if (ma & mb) {
                continue;
            }
            FieldElement f = fa * fb;
            h.add(static_cast<HopfForm::Mask>(ma | mb), wedge_sign(ma, mb) < 0 ? -f : f);
        }
    }
    return h;
}

HopfForm exterior_d(const HopfForm &a)
{
    HopfForm h;
    for (const auto &[m, f] : a.components()) {
        for (int i = 0; i < num_vars; ++i) {
            if (m & (1u << i)) {
                continue;
            }
            FieldElement g = f.partial(i);
            int below = std::popcount(static_cast<unsigned>(m & ((1u << i) - 1)));
            h.add(static_cast<HopfForm::Mask>(m | (1u << i)), below % 2 ? -g : g);
        }
    }
    return h;
}

HopfForm exterior_d(const FieldElement &f) { return exterior_d(HopfForm::function(f)); }

HopfForm dlog_product(const std::vector<std::pair<int, Rational>> &factors)
{
    HopfForm h;
    for (const auto &[idx, e] : factors) {
        FieldElement coef{Gauss(e)};
        if (idx < num_vars) {
            h.add(static_cast<HopfForm::Mask>(1u << idx), coef.divided_by_variable(idx));
        } else {
            FieldElement c = coef * FieldElement::r_squared_power(-1);
            for (int i = 0; i < num_vars; ++i) {
                h.add(static_cast<HopfForm::Mask>(1u << i),
                      c * FieldElement::variable(partner[i]));
            }
        }
    }
    return h;
}

namespace
{

HopfForm gen(int i) { return HopfForm::generator(i); }
FieldElement var(int i) { return FieldElement::variable(i); }
FieldElement inv_r2(int e) { return FieldElement::r_squared_power(-e); }

} // namespace

HopfForm build_C()
{
    // (1/R^2) (2 x1/xb2 dxb1 ^ dxb2 + dx1 ^ dxb1 + dx2 ^ dxb2)
    HopfForm inner = wedge(gen(1), gen(3)).scaled((FieldElement(Gauss(2)) * var(0)).divided_by_variable(3));
    inner += wedge(gen(0), gen(1));
    inner += wedge(gen(2), gen(3));
    return inner.scaled(inv_r2(1));
}

HopfForm build_B(const HopfOptions &opts)
{
    HopfForm a = dlog_product({{1, Rational(1)}, {0, Rational(-1)}});
    HopfForm b = dlog_product({{3, Rational(1)}, {2, Rational(-1)}});
    FieldElement coef = var(2) * var(3) * inv_r2(1) * FieldElement(Gauss(Rational(opts.flip_B_sign ? -1 : 1, 2)));
    return wedge(a, b).scaled(coef);
}

HopfForm build_W(const HopfOptions &opts) { return build_C() + build_B(opts); }

HopfForm build_dw1() { return dlog_product({{1, Rational(1)}, {4, Rational(1)}, {0, Rational(-1)}}); }

HopfForm build_dlog_w2() { return dlog_product({{3, Rational(1)}, {4, Rational(-1, 2)}}); }

HopfForm expected_dC()
{
    HopfForm a = gen(3).scaled(var(2)) - gen(2).scaled(var(3));
    HopfForm b = gen(1).scaled(var(0)) - gen(0).scaled(var(1));
    HopfForm out = wedge(wedge(a, gen(0)), gen(1)) + wedge(wedge(b, gen(2)), gen(3));
    return out.scaled(inv_r2(2));
}

bool HopfReport::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const HopfCheck &c) { return c.pass; });
}

std::array<Gauss, num_vars> SamplePoint::coords() const
{
    return {Gauss(x1), Gauss(x1), x2, x2.conj()};
}

std::vector<SamplePoint> sample_points(const Rational &c, std::size_t count)
{
    if (sgn(c) <= 0) {
        throw std::invalid_argument("hopf: c must be positive");
    }
    // x1 = p/q, x2 = (r + i s)/q with p^2 + r^2 + s^2 = c q^2.
    std::vector<SamplePoint> out;
    for (long q = 1; out.size() < count && q < 400; ++q) {
        Rational target = c * Rational(q * q);
        if (target.get_den() != 1) {
            continue;
        }
        long T = target.get_num().get_si();
        for (long p = 1; p * p < T && out.size() < count; ++p) {
            for (long r = 1; p * p + r * r < T && out.size() < count; ++r) {
                long rest = T - p * p - r * r;
                long s = static_cast<long>(std::lround(std::sqrt(static_cast<double>(rest))));
                for (long t = std::max(1L, s - 1); t <= s + 1; ++t) {
                    if (t * t == rest && std::gcd(std::gcd(p, r), std::gcd(t, q)) == 1) {
                        out.push_back({Rational(p, q), Gauss(Rational(r, q), Rational(t, q))});
                        break;
                    }
                }
            }
        }
    }
    return out;
}

namespace
{

GMatrix two_form_matrix(const HopfForm &F, const std::array<Gauss, num_vars> &x)
{
    GMatrix m(num_vars, num_vars);
    for (const auto &[mask, f] : F.components()) {
        if (std::popcount(mask) != 2) {
            continue;
        }
        int i = std::countr_zero(static_cast<unsigned>(mask));
        int k = std::countr_zero(static_cast<unsigned>(mask & (mask - 1)));
        Gauss v = f.evaluate(x);
        m(i, k) = v;
        m(k, i) = -v;
    }
    return m;
}

} // namespace

GMatrix structure_from_two_form(const HopfForm &F, const std::array<Gauss, num_vars> &x)
{
    GMatrix C = two_form_matrix(F, x);
    GMatrix M(2 * num_vars, 2 * num_vars);
    for (int i = 0; i < num_vars; ++i) {
        // e_i + iota_{e_i} C and its conjugate graph e_i + iota_{e_i} Cbar.
        M(i, i) = Gauss(1);
        M(i, num_vars + i) = Gauss(1);
        for (int k = 0; k < num_vars; ++k) {
            M(num_vars + k, i) = C(i, k);
            M(num_vars + k, num_vars + i) = C(sigma[i], sigma[k]).conj();
        }
    }
    GMatrix D(2 * num_vars, 2 * num_vars);
    for (int i = 0; i < num_vars; ++i) {
        D(i, i) = Gauss(0, 1);
        D(num_vars + i, num_vars + i) = Gauss(0, -1);
    }
    return M * D * inverse(M);
}

namespace
{

HopfCheck check_equal(const std::string &name, const HopfForm &got, const HopfForm &want)
{
    HopfCheck c{name, got == want, ""};
    if (!c.pass) {
        c.witness = "difference " + (got - want).to_string();
    }
    return c;
}

std::string describe_point(const SamplePoint &p)
{
    return "x1=" + to_string(p.x1) + " x2=" + to_string(p.x2);
}

// Substitutes xb1 -> x1 and R^2 -> c, then reduces modulo x1^2 = c - x2 xb2.
// Zero exactly when f vanishes on S (denominators are nonzero on generic points of S).
JetFunction restrict_to_S(const FieldElement &f, const Rational &c)
{
    JetFunction sub = ring_zero();
    for (const auto &[m, coef] : f.numerator().terms()) {
        int e0 = exp_of(m, 0) + exp_of(m, 1);
        Monomial rest = m - static_cast<Monomial>(exp_of(m, 0)) * mono_unit(slot_of[0])
                        - static_cast<Monomial>(exp_of(m, 1)) * mono_unit(slot_of[1]);
        // x1^e0 = x1^{e0 mod 2} (c - x2 xb2)^{e0/2}
        JetFunction base = JetFunction::monomial(ring_n, ring_N, rest, coef);
        if (e0 % 2) {
            base = mul(base, ring_var(0));
        }
        JetFunction q = ring_const(Gauss(c)) - mul(ring_var(2), ring_var(3));
        sub += mul(base, ring_pow(q, e0 / 2));
    }
    return sub;
}

// Pullback of a 1-form to S in the coframe (dx1, dx2); the dxb1 and dxb2 directions are
// eliminated through dxb1 = dx1 and dR^2 = 0.
std::array<FieldElement, 2> restrict_one_form(const HopfForm &a)
{
    FieldElement a0 = a.component(1), a1 = a.component(2), a2 = a.component(4), a3 = a.component(8);
    // On S: dxb2 = -(2 x1 dx1 + xb2 dx2) / x2 (xb1 = x1).
    FieldElement t = a3.divided_by_variable(2);
    FieldElement first = a0 + a1 - FieldElement(Gauss(2)) * var(0) * t;
    FieldElement second = a2 - var(3) * t;
    return {first, second};
}

GMatrix stack_columns(const std::vector<std::vector<Gauss>> &cols)
{
    return GMatrix::from_columns(cols, 2 * num_vars);
}

} // namespace

HopfReport verify_dC()
{
    HopfReport rep;
    HopfForm C = build_C();
    HopfForm dC = exterior_d(C);
    rep.checks.push_back(check_equal("dC closed formula", dC, expected_dC()));
    rep.checks.push_back(check_equal("dC real", dC.conj(), dC));
    rep.checks.push_back(check_equal("d(dC) = 0", exterior_d(dC), HopfForm()));
    HopfCheck coef{"dx1^dxb1 coefficient is 1/R^2", C.component(0b0011) == inv_r2(1), ""};
    if (!coef.pass) {
        coef.witness = C.component(0b0011).to_string();
    }
    rep.checks.push_back(coef);
    HopfForm dr2;
    for (int i = 0; i < num_vars; ++i) {
        dr2 += gen(i).scaled(var(partner[i]));
    }
    rep.checks.push_back(check_equal("d(R^2) chain rule", exterior_d(FieldElement::r_squared()), dr2));
    rep.checks.push_back(check_equal("d^2 R^2 = 0", exterior_d(exterior_d(FieldElement::r_squared())), HopfForm()));
    rep.checks.push_back(check_equal("C scale invariant", C.pullback_scale(Rational(2)), C));
    HopfCheck nd{"C nondegenerate", !wedge(C, C).is_zero(), ""};
    if (!nd.pass) {
        nd.witness = "C ^ C = 0";
    }
    rep.checks.push_back(nd);
    return rep;
}

HopfReport verify_w_gauge(const HopfOptions &opts)
{
    HopfReport rep;
    HopfForm C = build_C();
    HopfForm B = build_B(opts);
    HopfForm W = C + B;
    rep.checks.push_back(check_equal("B real", B.conj(), B));
    rep.checks.push_back(check_equal("dB = -dC", exterior_d(B), -exterior_d(C)));
    rep.checks.push_back(check_equal("W closed", exterior_d(W), HopfForm()));
    rep.checks.push_back(check_equal("W = dw1 ^ dlog w2", W, wedge(build_dw1(), build_dlog_w2())));
    rep.checks.push_back(check_equal("dw1 scale invariant", build_dw1().pullback_scale(Rational(2)), build_dw1()));
    rep.checks.push_back(check_equal("dlog w2 scale invariant", build_dlog_w2().pullback_scale(Rational(2)), build_dlog_w2()));
    rep.checks.push_back(check_equal("B scale invariant", B.pullback_scale(Rational(3)), B));
    return rep;
}

HopfReport verify_pi_inverse(const HopfOptions &opts)
{
    HopfReport rep;
    HopfForm W = build_W(opts);
    HopfForm T = wedge(build_dw1(), build_dlog_w2());
    // Coefficient a of W in the coframe dw1 ^ dlog w2, read at a sample point and then confirmed.
    SamplePoint p = sample_points(Rational(1), 1).front();
    auto x = p.coords();
    Gauss a(0);
    for (const auto &[m, f] : T.components()) {
        Gauss tv = f.evaluate(x);
        if (!tv.is_zero()) {
            a = W.component(m).evaluate(x) / tv;
            break;
        }
    }
    HopfCheck lin{"W proportional to dw1 ^ dlog w2", W == T.scaled(FieldElement(a)), ""};
    if (!lin.pass) {
        lin.witness = "W - a dw1^dlog w2 = " + (W - T.scaled(FieldElement(a))).to_string();
    }
    rep.checks.push_back(lin);

    HopfCheck sym{"W matrix in (dw1, dlog w2) is [[0,1],[-1,0]]", a == Gauss(1), ""};
    if (!sym.pass) {
        sym.witness = "W = (" + to_string(a) + ") dw1 ^ dlog w2";
    }
    rep.checks.push_back(sym);

    GMatrix Pi = GMatrix::from_rows({{Gauss(0), Gauss(1)}, {Gauss(-1), Gauss(0)}});
    GMatrix Wm = GMatrix::from_rows({{Gauss(0), a}, {-a, Gauss(0)}});
    GMatrix prod = Pi * Wm.transpose();
    HopfCheck inv{"pi W^T = 1", prod == GMatrix::identity(2), ""};
    if (!inv.pass) {
        std::ostringstream os;
        os << "a = " << to_string(a) << ", product diag " << to_string(prod(0, 0)) << " "
           << to_string(prod(1, 1));
        inv.witness = os.str();
    }
    rep.checks.push_back(inv);

    // pi = w2 dw1 ^ dw2 degenerates where w2^2 = xb2^2 / R^2 vanishes, i.e. on x2 = 0.
    FieldElement w2sq = var(3) * var(3) * inv_r2(1);
    std::array<Gauss, num_vars> on_axis{Gauss(1), Gauss(1), Gauss(0), Gauss(0)};
    HopfCheck deg{"pi degenerates on x2 = 0", w2sq.evaluate(on_axis).is_zero() && !w2sq.evaluate(x).is_zero(), ""};
    if (!deg.pass) {
        deg.witness = "w2^2 = " + w2sq.to_string();
    }
    rep.checks.push_back(deg);
    return rep;
}

HopfReport verify_brane_family(const Rational &c, const HopfOptions &opts)
{
    HopfReport rep;
    std::string tag = " (c=" + to_string(c) + ")";

    // dw1 restricts to zero on S.
    auto parts = restrict_one_form(build_dw1());
    bool zero = restrict_to_S(parts[0], c).is_zero() && restrict_to_S(parts[1], c).is_zero();
    HopfCheck dz{"dw1 vanishes on S" + tag, zero, ""};
    if (!zero) {
        dz.witness = "restricted coefficients " + restrict_to_S(parts[0], c).to_string() + ", " +
                     restrict_to_S(parts[1], c).to_string();
    }
    rep.checks.push_back(dz);

    // w1 = xb1 R^2 / x1 equals c on S.
    FieldElement w1 = (var(1) * FieldElement::r_squared()).divided_by_variable(0);
    JetFunction lhs = restrict_to_S(w1 * var(0), c);
    JetFunction rhs = restrict_to_S(FieldElement(Gauss(c)) * var(0), c);
    HopfCheck lv{"w1 = c on S" + tag, lhs == rhs, ""};
    if (!lv.pass) {
        lv.witness = "x1 w1 - c x1 = " + (lhs - rhs).to_string();
    }
    rep.checks.push_back(lv);

    // Reality of the defining functions.
    FieldElement im_x1 = var(0) - var(1);
    HopfCheck re{"S defined by real equations" + tag,
                 im_x1.conj() == -im_x1 && FieldElement::r_squared().conj() == FieldElement::r_squared(), ""};
    rep.checks.push_back(re);

    // x -> 2x maps {R^2 = c} to {R^2 = 4c} and keeps x1 real.
    HopfCheck fam{"R^2 = 4^m c family invariant under x -> 2x" + tag,
                  FieldElement::r_squared().scaled_argument(Rational(2)) ==
                      FieldElement(Gauss(4)) * FieldElement::r_squared(),
                  ""};
    rep.checks.push_back(fam);

    HopfForm C = build_C();
    HopfForm W = build_W(opts);
    HopfForm B = build_B(opts);
    std::vector<SamplePoint> pts = sample_points(c, 3);
    HopfCheck enough{"sample points on S" + tag, pts.size() == 3, ""};
    if (!enough.pass) {
        enough.witness = "found " + std::to_string(pts.size());
    }
    rep.checks.push_back(enough);

    HopfCheck tj{"J N*S + N*S = TS + N*S" + tag, true, ""};
    HopfCheck ti{"I N*S + N*S = e^{-B}(TS + N*S)" + tag, true, ""};
    for (const auto &p : pts) {
        auto x = p.coords();
        // Tangent directions: X0 = X1 and dR^2(X) = 0.
        GMatrix cons = GMatrix::from_rows({{Gauss(1), Gauss(-1), Gauss(0), Gauss(0)}, {x[1], x[0], x[3], x[2]}});
        GMatrix ts = nullspace(cons);
        std::vector<std::vector<Gauss>> tau_cols;
        for (std::size_t j = 0; j < ts.cols(); ++j) {
            std::vector<Gauss> v(2 * num_vars, Gauss(0));
            for (int i = 0; i < num_vars; ++i) {
                v[i] = ts(i, j);
            }
            tau_cols.push_back(v);
        }
        std::vector<std::vector<Gauss>> conormal;
        for (std::size_t r = 0; r < cons.rows(); ++r) {
            std::vector<Gauss> v(2 * num_vars, Gauss(0));
            for (int i = 0; i < num_vars; ++i) {
                v[num_vars + i] = cons(r, i);
            }
            conormal.push_back(v);
            tau_cols.push_back(v);
        }
        GMatrix tau = stack_columns(tau_cols);
        GMatrix Ns = stack_columns(conormal);

        GMatrix J = structure_from_two_form(W, x);
        if (!subspace_equal(hstack(J * Ns, Ns), tau)) {
            tj.pass = false;
            tj.witness += describe_point(p) + "; ";
        }

        // e^{-B}: xi -> xi - iota_X B.
        GMatrix Bm = two_form_matrix(B, x);
        GMatrix shifted = tau;
        for (std::size_t j = 0; j < tau.cols(); ++j) {
            for (int k = 0; k < num_vars; ++k) {
                Gauss s(0);
                for (int i = 0; i < num_vars; ++i) {
                    s += tau(i, j) * Bm(i, k);
                }
                shifted(num_vars + k, j) -= s;
            }
        }
        GMatrix I = structure_from_two_form(C, x);
        if (!subspace_equal(hstack(I * Ns, Ns), shifted)) {
            ti.pass = false;
            ti.witness += describe_point(p) + "; ";
        }
    }
    rep.checks.push_back(tj);
    rep.checks.push_back(ti);
    return rep;
}

HopfReport run_hopf_suite(const std::vector<Rational> &cs, const HopfOptions &opts)
{
    HopfReport rep = verify_dC();
    for (HopfReport part : {verify_w_gauge(opts), verify_pi_inverse(opts)}) {
        rep.checks.insert(rep.checks.end(), part.checks.begin(), part.checks.end());
    }
    for (const auto &c : cs) {
        HopfReport part = verify_brane_family(c, opts);
        rep.checks.insert(rep.checks.end(), part.checks.begin(), part.checks.end());
    }
    return rep;
}

} // namespace gcb::hopf
