#include <gcbrane/jet.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace gcb::jet
{

void JetContext::validate() const
{
    if (n < 1 || n > max_complex_dim) {
        throw PreconditionError("n", "complex dimension must lie in [1, 4]");
    }
    if (k < 0 || k > n) {
        throw PreconditionError("k", "brane dimension must satisfy 0 <= k <= n");
    }
    if (N < 1 || N > 60) {
        throw PreconditionError("N", "truncation order must lie in [1, 60]");
    }
    if (sgn(r) <= 0) {
        throw PreconditionError("r", "radius must be positive");
    }
}

Monomial mono_make(const std::vector<int> &z, const std::vector<int> &zbar, int n)
{
    Monomial m = 0;
    for (int i = 0; i < n; ++i) {
        int a = i < static_cast<int>(z.size()) ? z[i] : 0;
        int b = i < static_cast<int>(zbar.size()) ? zbar[i] : 0;
        if (a < 0 || b < 0 || a > 255 || b > 255) {
            throw std::invalid_argument("monomial exponent out of range");
        }
        m |= static_cast<Monomial>(a) << (8 * i);
        m |= static_cast<Monomial>(b) << (8 * (n + i));
    }
    return m;
}

Monomial mono_conj(Monomial m, int n)
{
    Monomial mask = (n == 4) ? 0xffffffffull : ((Monomial{1} << (8 * n)) - 1);
    return ((m & mask) << (8 * n)) | ((m >> (8 * n)) & mask);
}

JetFunction JetFunction::constant(int n, int N, const Gauss &c)
{
    return monomial(n, N, 0, c);
}

JetFunction JetFunction::variable(int n, int N, int slot)
{
    return monomial(n, N, mono_unit(slot), Gauss(1));
}

JetFunction JetFunction::monomial(int n, int N, Monomial m, const Gauss &c)
{
    JetFunction f(n, N);
    f.add_term(m, c);
    return f;
}

Gauss JetFunction::coeff(Monomial m) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term &t, Monomial k) { return t.first < k; });
    if (it != terms_.end() && it->first == m) {
        return it->second;
    }
    return Gauss(0);
}

void JetFunction::add_term(Monomial m, const Gauss &c)
{
    if (c.is_zero() || mono_degree(m) > N_) {
        return;
    }
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term &t, Monomial k) { return t.first < k; });
    if (it != terms_.end() && it->first == m) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    } else {
        terms_.insert(it, {m, c});
    }
}

void JetFunction::normalize()
{
    std::sort(terms_.begin(), terms_.end(),
              [](const Term &a, const Term &b) { return a.first < b.first; });
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const Term &t) { return t.second.is_zero(); }),
                 terms_.end());
}

namespace
{

template <typename Op>
std::vector<JetFunction::Term> merge(const std::vector<JetFunction::Term> &a,
                                     const std::vector<JetFunction::Term> &b, Op op, int N)
{
    std::vector<JetFunction::Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            if (mono_degree(a[i].first) <= N) {
                out.push_back(a[i]);
            }
            ++i;
        } else if (i == a.size() || b[j].first < a[i].first) {
            if (mono_degree(b[j].first) <= N) {
                out.emplace_back(b[j].first, op(Gauss(0), b[j].second));
            }
            ++j;
        } else {
            Gauss c = op(a[i].second, b[j].second);
            if (!c.is_zero() && mono_degree(a[i].first) <= N) {
                out.emplace_back(a[i].first, std::move(c));
            }
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

JetFunction &JetFunction::operator+=(const JetFunction &o)
{
    if (n_ == 0) {
        n_ = o.n_;
        N_ = o.N_;
    }
    terms_ = merge(terms_, o.terms_, [](const Gauss &x, const Gauss &y) { return x + y; }, N_);
    return *this;
}

JetFunction &JetFunction::operator-=(const JetFunction &o)
{
    if (n_ == 0) {
        n_ = o.n_;
        N_ = o.N_;
    }
    terms_ = merge(terms_, o.terms_, [](const Gauss &x, const Gauss &y) { return x - y; }, N_);
    return *this;
}

JetFunction JetFunction::operator-() const
{
    JetFunction f(*this);
    for (auto &t : f.terms_) {
        t.second = -t.second;
    }
    return f;
}

JetFunction JetFunction::scaled(const Gauss &c) const
{
    JetFunction f(n_, N_);
    if (c.is_zero()) {
        return f;
    }
    f.terms_ = terms_;
    for (auto &t : f.terms_) {
        t.second *= c;
    }
    return f;
}

JetFunction JetFunction::scaled(const Rational &c) const
{
    JetFunction f(n_, N_);
    if (sgn(c) == 0) {
        return f;
    }
    f.terms_ = terms_;
    for (auto &t : f.terms_) {
        t.second *= c;
    }
    return f;
}

JetFunction JetFunction::operator*(const JetFunction &o) const
{
    int n = n_ ? n_ : o.n_;
    int N = n_ ? N_ : o.N_;
    JetFunction f(n, N);
    if (terms_.empty() || o.terms_.empty()) {
        return f;
    }
    std::vector<int> db(o.terms_.size());
    for (std::size_t j = 0; j < db.size(); ++j) {
        db[j] = mono_degree(o.terms_[j].first);
    }
    std::unordered_map<Monomial, Gauss> acc;
    acc.reserve(terms_.size() * 4 + o.terms_.size() * 4);
    Rational tmp;
    for (const auto &[ma, ca] : terms_) {
        int da = mono_degree(ma);
        if (da > N) {
            continue;
        }
        bool ra = sgn(ca.im) == 0;
        for (std::size_t j = 0; j < o.terms_.size(); ++j) {
            if (da + db[j] > N) {
                continue;
            }
            const Gauss &cb = o.terms_[j].second;
            Gauss &dst = acc[ma + o.terms_[j].first];
            bool rb = sgn(cb.im) == 0;
            if (ra && rb) {
                tmp = ca.re * cb.re;
                dst.re += tmp;
            } else {
                tmp = ca.re * cb.re;
                dst.re += tmp;
                tmp = ca.im * cb.im;
                dst.re -= tmp;
                tmp = ca.re * cb.im;
                dst.im += tmp;
                tmp = ca.im * cb.re;
                dst.im += tmp;
            }
        }
    }
    f.terms_.reserve(acc.size());
    for (auto &kv : acc) {
        if (!kv.second.is_zero()) {
            f.terms_.emplace_back(kv.first, std::move(kv.second));
        }
    }
    std::sort(f.terms_.begin(), f.terms_.end(),
              [](const Term &a, const Term &b) { return a.first < b.first; });
    return f;
}

JetFunction JetFunction::derivative(int slot) const
{
    JetFunction f(n_, N_);
    Monomial unit = mono_unit(slot);
    for (const auto &[m, c] : terms_) {
        int e = mono_exp(m, slot);
        if (e == 0) {
            continue;
        }
        f.terms_.emplace_back(m - unit, c * Rational(e));
    }
    f.normalize();
    return f;
}

JetFunction JetFunction::conj() const
{
    JetFunction f(n_, N_);
    f.terms_.reserve(terms_.size());
    for (const auto &[m, c] : terms_) {
        f.terms_.emplace_back(mono_conj(m, n_), c.conj());
    }
    f.normalize();
    return f;
}

JetFunction JetFunction::truncated(int degree) const
{
    return degree_range(0, degree);
}

JetFunction JetFunction::with_order(int N) const
{
    JetFunction f = truncated(N);
    f.N_ = N;
    return f;
}

JetFunction JetFunction::degree_range(int lo, int hi) const
{
    JetFunction f(n_, N_);
    for (const auto &t : terms_) {
        int d = mono_degree(t.first);
        if (d >= lo && d <= hi) {
            f.terms_.push_back(t);
        }
    }
    return f;
}

JetFunction JetFunction::restrict_to_first(int k) const
{
    JetFunction f(n_, N_);
    for (const auto &t : terms_) {
        bool keep = true;
        for (int i = k; i < n_ && keep; ++i) {
            keep = mono_exp(t.first, i) == 0 && mono_exp(t.first, n_ + i) == 0;
        }
        if (keep) {
            f.terms_.push_back(t);
        }
    }
    return f;
}

int JetFunction::vanishing_order() const
{
    int best = -1;
    for (const auto &t : terms_) {
        int d = mono_degree(t.first);
        if (best < 0 || d < best) {
            best = d;
        }
    }
    return best;
}

Rational JetFunction::majorant_norm(const Rational &r) const
{
    Rational s = 0;
    for (const auto &[m, c] : terms_) {
        s += c.norm1() * rational_pow(r, mono_degree(m));
    }
    return s;
}

std::string JetFunction::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        os << (first ? "" : " + ") << '(' << gcb::to_string(c) << ')';
        first = false;
        for (int s = 0; s < 2 * n_; ++s) {
            int e = mono_exp(m, s);
            if (e) {
                os << (s < n_ ? "z" : "zb") << (s % n_ + 1);
                if (e > 1) {
                    os << '^' << e;
                }
            }
        }
    }
    return os.str();
}

JetFunction compose(const JetFunction &f, const std::vector<JetFunction> &args)
{
    int n = f.n();
    int N = f.order();
    if (static_cast<int>(args.size()) != 2 * n) {
        throw std::invalid_argument("compose needs 2n arguments");
    }
    // powers[s][e] = args[s]^e, built lazily.
    std::vector<std::vector<JetFunction>> powers(2 * n);
    auto power = [&](int s, int e) -> const JetFunction & {
        auto &p = powers[s];
        if (p.empty()) {
            p.push_back(JetFunction::constant(n, N, Gauss(1)));
        }
        while (static_cast<int>(p.size()) <= e) {
            p.push_back(p.back() * args[s].with_order(N));
        }
        return p[e];
    };
    // Products over the slots 0..s of a monomial, shared between terms with a common prefix.
    std::unordered_map<Monomial, JetFunction> prefix;
    prefix.emplace(Monomial{0}, JetFunction::constant(n, N, Gauss(1)));
    JetFunction out(n, N);
    for (const auto &[m, c] : f.terms()) {
        Monomial key = 0;
        const JetFunction *t = &prefix.at(0);
        for (int s = 0; s < 2 * n; ++s) {
            int e = mono_exp(m, s);
            if (e == 0) {
                continue;
            }
            key += mono_unit(s) * static_cast<Monomial>(e);
            auto it = prefix.find(key);
            if (it == prefix.end()) {
                it = prefix.emplace(key, *t * power(s, e)).first;
            }
            t = &it->second;
        }
        out += t->scaled(c);
    }
    return out;
}

} // namespace gcb::jet
