#include <gcbrane/generators.hpp>

#include <gcbrane/gen_flow.hpp>

#include <algorithm>
#include <bit>

namespace gcb::gen
{

int random_int(Rng &rng, int lo, int hi)
{
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng);
}

Rational random_rational(Rng &rng, int num_bound, int den_bound)
{
    int p = random_int(rng, -num_bound, num_bound);
    int q = random_int(rng, 1, den_bound);
    Rational r(p, q);
    r.canonicalize();
    return r;
}

Gauss random_gauss(Rng &rng, int num_bound, int den_bound)
{
    Rational re = random_rational(rng, num_bound, den_bound);
    Rational im = random_rational(rng, num_bound, den_bound);
    return {re, im};
}

QMatrix random_invertible(Rng &rng, std::size_t n)
{
    for (;;) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) = random_rational(rng, 2, 1);
            }
        }
        if (rank(m) == n) {
            return m;
        }
    }
}

QMatrix random_unimodular(Rng &rng, std::size_t n)
{
    QMatrix l = QMatrix::identity(n);
    QMatrix u = QMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            l(i, j) = random_int(rng, -1, 1);
            u(j, i) = random_int(rng, -1, 1);
        }
    }
    return l * u;
}

QMatrix random_antisymmetric(Rng &rng, std::size_t n)
{
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = random_rational(rng, 2, 2);
            m(j, i) = -m(i, j);
        }
    }
    return m;
}

QMatrix standard_complex_structure(std::size_t m)
{
    QMatrix I(2 * m, 2 * m);
    for (std::size_t a = 0; a < m; ++a) {
        I(2 * a + 1, 2 * a) = 1;
        I(2 * a, 2 * a + 1) = -1;
    }
    return I;
}

LinearInstance random_linear_instance(Rng &rng, std::size_t m, std::size_t k)
{
    std::size_t n = 2 * m;
    QMatrix I = standard_complex_structure(m);
    QMatrix P(n, n);
    auto add = [&P](std::size_t i, std::size_t j, const Rational &c) {
        P(i, j) += c;
        P(j, i) -= c;
    };
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            if (a >= k && b >= k) {
                continue; // S = C^k must stay coisotropic
            }
            Rational al = random_rational(rng, 2, 2);
            Rational be = random_rational(rng, 2, 2);
            std::size_t xa = 2 * a, ya = 2 * a + 1, xb = 2 * b, yb = 2 * b + 1;
            add(xa, xb, al);
            add(ya, yb, -al);
            add(xa, yb, be);
            add(ya, xb, be);
        }
    }
    linear::LinearGCStructure gc = linear::make_complex_poisson_gc(I, P);
    QMatrix S(n, 2 * k);
    for (std::size_t j = 0; j < 2 * k; ++j) {
        S(j, j) = 1;
    }
    linear::LinearBrane brane = linear::brane_tangent_from_F(S, QMatrix(2 * k, 2 * k));

    // Courant automorphism A = diag(g, g^{-T}) e^B.
    QMatrix B = random_antisymmetric(rng, n);
    QMatrix g = random_unimodular(rng, n);
    QMatrix D(2 * n, 2 * n);
    D.set_block(0, 0, g);
    D.set_block(n, n, inverse(g).transpose());
    QMatrix A = D * linear::b_field_matrix(B);
    LinearInstance inst;
    inst.gc = linear::conjugate(gc, A);
    inst.brane.S = g * S;
    inst.brane.tau = A * brane.tau;
    if (!linear::check_gc(inst.gc).ok() || !linear::check_linear_brane(inst.gc, inst.brane).ok()) {
        throw std::logic_error("random_linear_instance produced an invalid instance");
    }
    return inst;
}

jet::Monomial random_monomial(Rng &rng, int n, int lo, int hi)
{
    int d = random_int(rng, lo, hi);
    std::vector<int> z(n, 0), zb(n, 0);
    for (int e = 0; e < d; ++e) {
        int s = random_int(rng, 0, 2 * n - 1);
        (s < n ? z[s] : zb[s - n]) += 1;
    }
    return jet::mono_make(z, zb, n);
}

jet::JetFunction random_jet(Rng &rng, int n, int N, int terms, int lo, int hi)
{
    jet::JetFunction f(n, N);
    for (int t = 0; t < terms; ++t) {
        f.add_term(random_monomial(rng, n, lo, hi), random_gauss(rng));
    }
    return f;
}

jet::Word random_word(Rng &rng, int n, int p, int q)
{
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) {
        idx[i] = i;
    }
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<int> vec(idx.begin(), idx.begin() + p);
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<int> form(idx.begin(), idx.begin() + q);
    return jet::make_word(n, vec, form);
}

jet::MixedTensor random_tensor(Rng &rng, const jet::JetContext &ctx, int p, int q, int comps,
                               int terms, int lo, int hi)
{
    jet::MixedTensor t(ctx);
    if (p > ctx.n || q > ctx.n) {
        return t;
    }
    for (int c = 0; c < comps; ++c) {
        t.add(random_word(rng, ctx.n, p, q), random_jet(rng, ctx.n, ctx.N, terms, lo, hi));
    }
    return t;
}

} // namespace gcb::gen

namespace gcb::gen
{

using jet::JetFunction;
using jet::MixedTensor;

namespace
{

JetFunction normal_variable(Rng &rng, const jet::JetContext &ctx)
{
    int a = random_int(rng, ctx.k, ctx.n - 1);
    return JetFunction::variable(ctx.n, ctx.N, random_int(rng, 0, 1) ? ctx.n + a : a);
}

// Holomorphic polynomial in slot s with zero constant term and nonzero linear term.
JetFunction random_hol_1d(Rng &rng, const jet::JetContext &ctx, int slot)
{
    JetFunction z = JetFunction::variable(ctx.n, ctx.N, slot);
    Gauss a = random_gauss(rng);
    if (a.is_zero()) {
        a = Gauss(1);
    }
    return z.scaled(a) + (z * z).scaled(random_gauss(rng));
}

} // namespace

jet::GeneralizedVectorField random_brane_tangent_field(Rng &rng, const jet::JetContext &ctx,
                                                       int lo, int hi)
{
    int n = ctx.n, k = ctx.k;
    MixedTensor v(ctx);
    for (int a = 0; a < n; ++a) {
        JetFunction f = random_jet(rng, n, ctx.N, 2, lo, hi);
        if (a >= k) {
            f = f * normal_variable(rng, ctx);
        }
        v.add(jet::vector_bit(n, a), f);
    }
    for (int b = 0; b < n; ++b) {
        JetFunction f = random_jet(rng, n, ctx.N, 2, lo, hi);
        if (b < k) {
            if (k == n) {
                continue;
            }
            f = f * normal_variable(rng, ctx);
        }
        v.add(jet::form_bit(n, b), f);
    }
    return jet::GeneralizedVectorField::realify(v.truncated(ctx.N));
}

jet::Deformation random_compatible_deformation(Rng &rng, const jet::JetContext &ctx, int lo, int hi)
{
    int n = ctx.n, k = ctx.k;
    jet::Deformation eps(ctx);
    auto fix = [&](const MixedTensor &t, auto must_vanish) {
        MixedTensor out(ctx);
        for (const auto &[w, f] : t.components()) {
            out.add(w, must_vanish(w) && k < n ? (f * normal_variable(rng, ctx)).truncated(ctx.N)
                                              : f);
        }
        return out;
    };
    auto vec_high = [&](jet::Word w) { return std::popcount((w >> n) >> k); };
    auto form_low = [&](jet::Word w) { return std::popcount(w & ((jet::Word{1} << k) - 1)); };
    eps.eps20 = fix(random_tensor(rng, ctx, 2, 0, 2, 2, lo, hi),
                    [&](jet::Word w) { return vec_high(w) == 2; });
    eps.eps11 = fix(random_tensor(rng, ctx, 1, 1, 2, 2, lo, hi),
                    [&](jet::Word w) { return form_low(w) == 1 && vec_high(w) == 1; });
    eps.eps02 = fix(random_tensor(rng, ctx, 0, 2, 2, 2, lo, hi),
                    [&](jet::Word w) { return form_low(w) == 2; });
    if (k == n) {
        // S is everything: vanishing on S means zero.
        eps.eps02 = MixedTensor(ctx);
    }
    return eps;
}

jet::MixedTensor random_holomorphic_poisson(Rng &rng, const jet::JetContext &ctx)
{
    if (ctx.n < 2 || ctx.k < 1) {
        throw std::invalid_argument("random_holomorphic_poisson needs n >= 2 and k >= 1");
    }
    int n = ctx.n;
    MixedTensor pi(ctx);
    pi.add(jet::vector_bit(n, 0) | jet::vector_bit(n, 1), random_hol_1d(rng, ctx, 0));
    if (n >= 3 && ctx.k <= n - 2) {
        pi.add(jet::vector_bit(n, n - 2) | jet::vector_bit(n, n - 1),
               random_hol_1d(rng, ctx, n - 1));
    }
    return pi;
}

jet::Deformation round_trip_member(const MixedTensor &pi, const jet::GeneralizedVectorField &W,
                                   const Rational &delta)
{
    jet::Deformation base(pi.context());
    base.eps20 = pi.scaled(delta);
    return jet::act_on_deformation(jet::flow(W.scaled(Gauss(delta)), 1), base)
        .truncated(pi.context().N);
}

RoundTrip random_round_trip(Rng &rng, const jet::JetContext &ctx, const Rational &delta)
{
    RoundTrip rt;
    rt.pi = random_holomorphic_poisson(rng, ctx);
    rt.W = random_brane_tangent_field(rng, ctx, 2, 3);
    rt.eps = round_trip_member(rt.pi, rt.W, delta);
    return rt;
}

jet::RawBraneConnection random_flat_connection(Rng &rng, const jet::JetContext &ctx, int rank)
{
    int n = ctx.n, k = ctx.k, N = ctx.N;
    jet::RawBraneConnection conn;
    conn.ctx = ctx;
    conn.rank = rank;
    conn.pi = random_holomorphic_poisson(rng, ctx);

    // g = 1 + degree >= 1 entries in the coordinates of S.
    jet::JetMatrix g = jet::jet_identity(rank, n, N);
    for (int i = 0; i < rank; ++i) {
        for (int j = 0; j < rank; ++j) {
            JetFunction f = random_jet(rng, n, N, 2, 1, 2).restrict_to_first(k);
            g[i][j] += f;
        }
    }
    jet::JetMatrix ginv = jet::jet_inverse(g);

    // Constant flat part.
    std::vector<jet::JetMatrix> C(n - k, jet::jet_zero(rank, n, N));
    for (int a = k; a < n; ++a) {
        Gauss s = random_gauss(rng);
        for (int i = 0; i < rank; ++i) {
            C[a - k][i][i] = JetFunction::constant(n, N, s);
        }
    }
    if (n >= 3 && k <= n - 2) {
        jet::Word w = jet::vector_bit(n, n - 2) | jet::vector_bit(n, n - 1);
        Gauss lambda = conn.pi.component(w).derivative(n - 1).coeff(0);
        jet::JetMatrix &Ca = C[n - 2 - k];
        jet::JetMatrix &Cb = C[n - 1 - k];
        Ca = jet::jet_zero(rank, n, N);
        Cb = jet::jet_zero(rank, n, N);
        if (rank >= 2) {
            // [diag(lambda, 0, ...), E_{1,r}] = lambda E_{1,r}
            Ca[0][0] = JetFunction::constant(n, N, lambda);
            Cb[0][rank - 1] = JetFunction::constant(n, N, random_gauss(rng));
        }
    }

    for (int c = 0; c < k; ++c) {
        conn.entries.push_back(jet::truncated(ginv * jet::derivative(g, n + c), N));
    }
    for (int a = k; a < n; ++a) {
        std::vector<JetFunction> Y = jet::brane_anchor(conn.pi, a);
        jet::JetMatrix theta = ginv * C[a - k] * g + ginv * jet::apply_holomorphic_vector(Y, g);
        conn.entries.push_back(jet::truncated(theta, N));
    }
    return conn;
}

jet::RawBraneConnection inject_curvature(const jet::RawBraneConnection &conn, Curvature which)
{
    jet::RawBraneConnection out = conn;
    const jet::JetContext &ctx = conn.ctx;
    int n = ctx.n, k = ctx.k, N = ctx.N;
    int r = conn.rank;
    switch (which) {
    case Curvature::F:
        if (k < 2) {
            throw std::invalid_argument("F injection needs k >= 2");
        }
        // dbar_2 of zbar_2 E_{1,r} in A_1.
        out.entries[0][0][r - 1] += JetFunction::variable(n, N, n + 1);
        break;
    case Curvature::G:
        if (k >= n) {
            throw std::invalid_argument("G injection needs k < n");
        }
        out.entries[k][0][r - 1] += JetFunction::variable(n, N, n);
        break;
    case Curvature::K:
        if (n < 3 || k > n - 2) {
            throw std::invalid_argument("K injection needs two normal directions");
        }
        // Shifting Theta_n by the identity changes K by -d_n pi^{n-1,n}(0).
        for (int i = 0; i < r; ++i) {
            out.entries[n - 1][i][i] += JetFunction::constant(n, N, Gauss(1));
        }
        break;
    }
    return out;
}

} // namespace gcb::gen
