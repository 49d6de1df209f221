#include <gcbrane/brane_connection.hpp>

#include <bit>
#include <sstream>

namespace gcb::jet
{

JetMatrix jet_zero(int r, int n, int N)
{
    return JetMatrix(r, std::vector<JetFunction>(r, JetFunction(n, N)));
}

JetMatrix jet_identity(int r, int n, int N)
{
    JetMatrix m = jet_zero(r, n, N);
    for (int i = 0; i < r; ++i) {
        m[i][i] = JetFunction::constant(n, N, Gauss(1));
    }
    return m;
}

JetMatrix operator*(const JetMatrix &a, const JetMatrix &b)
{
    std::size_t r = a.size();
    const JetFunction &probe = a[0][0];
    JetMatrix out = jet_zero(static_cast<int>(r), probe.n(), probe.order());
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t k = 0; k < r; ++k) {
            if (a[i][k].is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < r; ++j) {
                if (!b[k][j].is_zero()) {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    return out;
}

JetMatrix operator+(const JetMatrix &a, const JetMatrix &b)
{
    JetMatrix out = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            out[i][j] += b[i][j];
        }
    }
    return out;
}

JetMatrix operator-(const JetMatrix &a, const JetMatrix &b)
{
    JetMatrix out = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            out[i][j] -= b[i][j];
        }
    }
    return out;
}

JetMatrix commutator(const JetMatrix &a, const JetMatrix &b)
{
    return a * b - b * a;
}

JetMatrix derivative(const JetMatrix &a, int slot)
{
    JetMatrix out = a;
    for (auto &row : out) {
        for (auto &f : row) {
            f = f.derivative(slot);
        }
    }
    return out;
}

JetMatrix apply_holomorphic_vector(const std::vector<JetFunction> &Y, const JetMatrix &a)
{
    JetMatrix out = a;
    for (auto &row : out) {
        for (auto &f : row) {
            JetFunction g(f.n(), f.order());
            for (std::size_t d = 0; d < Y.size(); ++d) {
                if (!Y[d].is_zero()) {
                    g += Y[d] * f.derivative(static_cast<int>(d));
                }
            }
            f = g;
        }
    }
    return out;
}

JetMatrix truncated(const JetMatrix &a, int degree)
{
    JetMatrix out = a;
    for (auto &row : out) {
        for (auto &f : row) {
            f = f.truncated(degree);
        }
    }
    return out;
}

bool is_zero(const JetMatrix &a)
{
    for (const auto &row : a) {
        for (const auto &f : row) {
            if (!f.is_zero()) {
                return false;
            }
        }
    }
    return true;
}

JetMatrix jet_inverse(const JetMatrix &a)
{
    int r = static_cast<int>(a.size());
    int n = a[0][0].n();
    int N = a[0][0].order();
    GMatrix a0(r, r);
    JetMatrix a1 = a;
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            a0(i, j) = a[i][j].coeff(0);
            a1[i][j] = a[i][j].degree_range(1, N);
        }
    }
    GMatrix a0inv = inverse(a0);
    JetMatrix c = jet_zero(r, n, N);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            c[i][j] = JetFunction::constant(n, N, a0inv(i, j));
        }
    }
    // a^{-1} = sum_k (-c a1)^k c.
    JetMatrix step = jet_zero(r, n, N) - c * a1;
    JetMatrix term = c;
    JetMatrix sum = c;
    for (int k = 1; k <= N && !is_zero(term); ++k) {
        term = step * term;
        sum = sum + term;
    }
    return sum;
}

std::vector<JetFunction> brane_anchor(const MixedTensor &pi, int a)
{
    const JetContext &ctx = pi.context();
    int n = ctx.n;
    int k = ctx.k;
    std::vector<JetFunction> Y(k, JetFunction(n, ctx.N));
    for (int d = 0; d < k; ++d) {
        if (d == a) {
            continue;
        }
        Word w = vector_bit(n, a) | vector_bit(n, d);
        JetFunction f = pi.component(w);
        Y[d] = (a < d ? f : -f).restrict_to_first(k);
    }
    return Y;
}

namespace
{

bool lives_on_S(const JetMatrix &m, int k)
{
    for (const auto &row : m) {
        for (const auto &f : row) {
            if (f.restrict_to_first(k) != f) {
                return false;
            }
        }
    }
    return true;
}

std::string describe(const JetMatrix &m)
{
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (!m[i][j].is_zero()) {
                std::ostringstream os;
                os << "entry (" << i + 1 << "," << j + 1 << ") = " << m[i][j].to_string();
                return os.str();
            }
        }
    }
    return "zero";
}

} // namespace

BraneConnection split_brane_connection(const RawBraneConnection &conn,
                                       BraneConnectionReport &report)
{
    const JetContext &ctx = conn.ctx;
    int n = ctx.n;
    int k = ctx.k;
    int N = ctx.N;
    if (static_cast<int>(conn.entries.size()) != n) {
        throw PreconditionError("entries", "need one matrix per generator of l");
    }
    for (const auto &[w, f] : conn.pi.components()) {
        if (word_q(w, n) != 0 || word_p(w, n) != 2) {
            throw PreconditionError("pi", "pi must be a bivector");
        }
        for (const auto &[m, c] : f.terms()) {
            for (int i = 0; i < n; ++i) {
                if (mono_exp(m, n + i) != 0) {
                    throw PreconditionError("pi", "pi must be holomorphic");
                }
            }
        }
        if (std::popcount((w >> n) >> k) == 2 && !f.vanishes_on_first(k)) {
            throw PreconditionError("pi", "S is not coisotropic");
        }
    }
    for (const auto &m : conn.entries) {
        if (static_cast<int>(m.size()) != conn.rank || !lives_on_S(m, k)) {
            throw PreconditionError("entries", "connection matrices must be rank x rank jets on S");
        }
    }
    BraneConnection out;
    out.rank = conn.rank;
    out.pi = conn.pi;
    out.nabla_prime.assign(conn.entries.begin(), conn.entries.begin() + k);
    out.nabla_doubleprime.assign(conn.entries.begin() + k, conn.entries.end());

    std::ostringstream wit;
    report.holomorphic = true;
    for (int c = 0; c < k; ++c) {
        for (int d = c + 1; d < k; ++d) {
            const JetMatrix &Ac = out.nabla_prime[c];
            const JetMatrix &Ad = out.nabla_prime[d];
            JetMatrix F = derivative(Ad, n + c) - derivative(Ac, n + d) + commutator(Ac, Ad);
            F = truncated(F, N - 1);
            if (!is_zero(F)) {
                report.holomorphic = false;
                wit << "(0,2) curvature F[" << c + 1 << "," << d + 1 << "] " << describe(F) << "; ";
            }
        }
    }
    std::vector<std::vector<JetFunction>> Y;
    for (int a = k; a < n; ++a) {
        Y.push_back(brane_anchor(conn.pi, a));
    }
    report.anticommute = true;
    for (int c = 0; c < k; ++c) {
        for (int a = k; a < n; ++a) {
            const JetMatrix &Ac = out.nabla_prime[c];
            const JetMatrix &Ta = out.nabla_doubleprime[a - k];
            JetMatrix G = derivative(Ta, n + c) - apply_holomorphic_vector(Y[a - k], Ac)
                          + commutator(Ac, Ta);
            G = truncated(G, N - 1);
            if (!is_zero(G)) {
                report.anticommute = false;
                wit << "mixed curvature G[" << c + 1 << "," << a + 1 << "] " << describe(G)
                    << "; ";
            }
        }
    }
    report.poisson_module = true;
    for (int a = k; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const JetMatrix &Ta = out.nabla_doubleprime[a - k];
            const JetMatrix &Tb = out.nabla_doubleprime[b - k];
            JetMatrix K = apply_holomorphic_vector(Y[a - k], Tb)
                          - apply_holomorphic_vector(Y[b - k], Ta) + commutator(Ta, Tb);
            JetFunction pab = conn.pi.component(vector_bit(n, a) | vector_bit(n, b));
            for (int c = k; c < n; ++c) {
                JetFunction coef = pab.derivative(c).restrict_to_first(k);
                if (coef.is_zero()) {
                    continue;
                }
                JetMatrix scaled = out.nabla_doubleprime[c - k];
                for (auto &row : scaled) {
                    for (auto &f : row) {
                        f = f * coef;
                    }
                }
                K = K - scaled;
            }
            K = truncated(K, N - 1);
            if (!is_zero(K)) {
                report.poisson_module = false;
                wit << "Gamma_pi curvature K[" << a + 1 << "," << b + 1 << "] " << describe(K)
                    << "; ";
            }
        }
    }
    report.witness = wit.str();
    return out;
}

} // namespace gcb::jet
