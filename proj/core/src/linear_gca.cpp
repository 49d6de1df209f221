#include <gcbrane/linear_gca.hpp>

#include <sstream>

namespace gcb::linear
{

namespace
{

bool is_antisymmetric(const QMatrix &m)
{
    return m.is_square() && (m + m.transpose()).is_zero();
}

std::string describe(const QMatrix &m)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < m.cols(); ++j) {
            os << (j ? " " : "") << to_string(m(i, j));
        }
    }
    os << ']';
    return os.str();
}

QMatrix anchor(const QMatrix &vecs, std::size_t n)
{
    return vecs.block(0, 0, n, vecs.cols());
}

} // namespace

QMatrix pairing_matrix(std::size_t n)
{
    QMatrix g(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        g(i, n + i) = Rational(1, 2);
        g(n + i, i) = Rational(1, 2);
    }
    return g;
}

Rational pairing(const QMatrix &u, const QMatrix &v)
{
    return (u.transpose() * pairing_matrix(u.rows() / 2) * v)(0, 0);
}

QMatrix b_field_matrix(const QMatrix &B)
{
    std::size_t n = B.rows();
    QMatrix e = QMatrix::identity(2 * n);
    e.set_block(n, 0, B);
    return e;
}

QMatrix real_poisson(const LinearGCStructure &gc)
{
    return gc.upper_right();
}

GCReport check_gc(const LinearGCStructure &gc)
{
    GCReport r;
    const QMatrix &J = gc.op;
    if (!J.is_square() || J.rows() % 2) {
        r.witness = "operator is not square of even size";
        return r;
    }
    std::size_t m = J.rows();
    QMatrix sq = J * J + QMatrix::identity(m);
    r.squares_to_minus_one = sq.is_zero();
    QMatrix g = pairing_matrix(gc.n());
    QMatrix orth = J.transpose() * g * J - g;
    r.orthogonal = orth.is_zero();
    r.poisson_antisymmetric = is_antisymmetric(real_poisson(gc));
    if (!r.squares_to_minus_one) {
        r.witness = "J^2 + 1 = " + describe(sq);
    } else if (!r.orthogonal) {
        r.witness = "J^T G J - G = " + describe(orth);
    } else if (!r.poisson_antisymmetric) {
        r.witness = "P = " + describe(real_poisson(gc));
    }
    return r;
}

LinearGCStructure make_symplectic_gc(const QMatrix &omega)
{
    if (!is_antisymmetric(omega)) {
        throw PreconditionError("antisymmetric", "omega is not antisymmetric");
    }
    if (omega.rows() % 2) {
        throw PreconditionError("even-dimension", "omega has odd size");
    }
    QMatrix winv;
    try {
        winv = inverse(omega);
    } catch (const std::domain_error &) {
        throw PreconditionError("invertible", "omega is singular");
    }
    std::size_t n = omega.rows();
    LinearGCStructure gc{QMatrix(2 * n, 2 * n)};
    gc.op.set_block(0, n, winv);
    gc.op.set_block(n, 0, -omega);
    return gc;
}

LinearGCStructure make_complex_gc(const QMatrix &I)
{
    return make_complex_poisson_gc(I, QMatrix(I.rows(), I.rows()));
}

LinearGCStructure make_complex_poisson_gc(const QMatrix &I, const QMatrix &P)
{
    if (!I.is_square() || !(I * I + QMatrix::identity(I.rows())).is_zero()) {
        throw PreconditionError("I^2=-1", "I is not a complex structure");
    }
    if (!is_antisymmetric(P) || P.rows() != I.rows()) {
        throw PreconditionError("antisymmetric", "P is not an antisymmetric bivector on V");
    }
    QMatrix off = I * P - P * I.transpose();
    if (!off.is_zero()) {
        throw PreconditionError("compatibility",
                                "upper-right block of J^2 is nonzero: IP - PI^T = " + describe(off));
    }
    std::size_t n = I.rows();
    LinearGCStructure gc{QMatrix(2 * n, 2 * n)};
    gc.op.set_block(0, 0, -I);
    gc.op.set_block(0, n, P);
    gc.op.set_block(n, n, I.transpose());
    return gc;
}

LinearGCStructure b_transform(const LinearGCStructure &gc, const QMatrix &B)
{
    if (!is_antisymmetric(B) || B.rows() != gc.n()) {
        throw PreconditionError("antisymmetric", "B is not an antisymmetric n x n matrix");
    }
    return {b_field_matrix(B) * gc.op * b_field_matrix(-B)};
}

LinearGCStructure conjugate(const LinearGCStructure &gc, const QMatrix &A)
{
    return {A * gc.op * inverse(A)};
}

QMatrix conormal(const QMatrix &S, std::size_t n)
{
    QMatrix nu = S.cols() ? nullspace(S.transpose()) : QMatrix::identity(n);
    QMatrix out(2 * n, nu.cols());
    out.set_block(n, 0, nu);
    return out;
}

LinearBrane brane_tangent_from_F(const QMatrix &S, const QMatrix &F)
{
    std::size_t n = S.rows();
    std::size_t k = S.cols();
    if (F.rows() != k || !is_antisymmetric(F)) {
        throw PreconditionError("antisymmetric", "F is not an antisymmetric form on S");
    }
    if (rank(S) != k) {
        throw PreconditionError("basis", "S columns are not independent");
    }
    QMatrix graph(2 * n, k);
    if (k) {
        graph.set_block(0, 0, S);
        graph.set_block(n, 0, S * inverse(S.transpose() * S) * F);
    }
    return {S, hstack(graph, conormal(S, n)), F};
}

LinearBrane lagrangian_tau(const LinearGCStructure &gc, const QMatrix &S)
{
    std::size_t n = gc.n();
    QMatrix P = real_poisson(gc);
    QMatrix omega;
    try {
        omega = inverse(P);
    } catch (const std::domain_error &) {
        throw PreconditionError("invertible-poisson", "real Poisson structure is degenerate");
    }
    if (2 * rank(S) != n) {
        throw PreconditionError("lagrangian", "dim S is not half of dim V");
    }
    QMatrix restricted = S.transpose() * omega * S;
    if (!restricted.is_zero()) {
        throw PreconditionError("lagrangian", "omega(S,S) != 0: " + describe(restricted));
    }
    QMatrix ns = conormal(S, n);
    return {S, column_basis(hstack(gc.op * ns, ns)), std::nullopt};
}

BraneReport check_linear_brane(const LinearGCStructure &gc, const LinearBrane &brane)
{
    BraneReport r;
    std::size_t n = gc.n();
    const QMatrix &tau = brane.tau;
    if (tau.rows() != 2 * n || brane.S.rows() != n) {
        r.witness = "shape mismatch";
        return r;
    }
    QMatrix g = pairing_matrix(n);
    QMatrix gram = tau.transpose() * g * tau;
    r.maximal_isotropic = gram.is_zero() && rank(tau) == n;
    r.invariant = span_contains(tau, gc.op * tau);
    r.anchor_is_S = subspace_equal(column_basis(anchor(tau, n)), column_basis(brane.S));
    QMatrix ns = conormal(brane.S, n);
    QMatrix vstar(2 * n, n);
    vstar.set_block(n, 0, QMatrix::identity(n));
    r.conormal_part = subspace_equal(intersection(tau, vstar), ns);
    QMatrix pns = real_poisson(gc) * ns.block(n, 0, n, ns.cols());
    r.coisotropic = span_contains(brane.S, pns);
    if (!r.maximal_isotropic) {
        r.witness = "Gram matrix of tau: " + describe(gram);
    } else if (!r.invariant) {
        r.witness = "J tau not contained in tau";
    } else if (!r.anchor_is_S) {
        r.witness = "a(tau) = " + describe(column_basis(anchor(tau, n)));
    } else if (!r.conormal_part) {
        r.witness = "V* cap tau != N*S";
    } else if (!r.coisotropic) {
        r.witness = "P(N*S) = " + describe(pns);
    }
    return r;
}

QMatrix invariant_complement(const QMatrix &J, const QMatrix &ambient, const QMatrix &sub)
{
    SpanBasis<Rational> cur(J.rows());
    cur.add_columns(sub);
    std::vector<std::vector<Rational>> out;
    for (std::size_t j = 0; j < ambient.cols(); ++j) {
        QMatrix c = ambient.block(0, j, ambient.rows(), 1);
        if (cur.contains(c.column(0))) {
            continue;
        }
        QMatrix jc = J * c;
        cur.add(c.column(0));
        cur.add(jc.column(0));
        out.push_back(c.column(0));
        out.push_back(jc.column(0));
    }
    return QMatrix::from_columns(out, J.rows());
}

LinearSplitting split_linear_brane(const LinearGCStructure &gc, const LinearBrane &brane)
{
    if (!check_gc(gc).ok()) {
        throw PreconditionError("check_gc", "input is not a linear GC structure: " + check_gc(gc).witness);
    }
    BraneReport br = check_linear_brane(gc, brane);
    if (!br.ok()) {
        throw PreconditionError("check_linear_brane", "input is not a linear brane: " + br.witness);
    }
    const QMatrix &J = gc.op;
    std::size_t n = gc.n();
    QMatrix S = column_basis(brane.S);
    if (S.cols() % 2) {
        throw PreconditionError("parity", "dim S is odd; the splitting requires even-dimensional S");
    }
    QMatrix ns = conormal(S, n);
    QMatrix jns = J * ns;
    QMatrix W = column_basis(hstack(ns, jns));

    // Already split: V itself is J-invariant and tau = S + N*S.
    QMatrix V0 = vstack(QMatrix::identity(n), QMatrix(n, n));
    QMatrix S0 = vstack(S, QMatrix(n, S.cols()));
    if (gc.lower_left().is_zero() && subspace_equal(brane.tau, hstack(S0, ns))) {
        LinearSplitting sp;
        sp.U_P = intersection(W, V0);
        sp.U_S = invariant_complement(J, S0, sp.U_P);
        sp.U_N = invariant_complement(J, V0, S0);
        sp.U = V0;
        sp.Bs = QMatrix(n, n);
        sp.I = -gc.upper_left();
        return sp;
    }
    QMatrix K = intersection(ns, jns);

    // Complement of N*S cap J(N*S) inside N*S, paired in echelon order.
    SpanBasis<Rational> cur(2 * n);
    cur.add_columns(K);
    std::vector<QMatrix> extra;
    for (std::size_t j = 0; j < ns.cols(); ++j) {
        QMatrix c = ns.block(0, j, 2 * n, 1);
        if (cur.add(c.column(0))) {
            extra.push_back(c);
        }
    }
    if (extra.size() % 2) {
        throw PreconditionError("parity", "odd number of vectors complementary to N*S cap J N*S");
    }
    QMatrix U_P(2 * n, 0);
    for (std::size_t i = 0; i < extra.size(); i += 2) {
        const QMatrix &f = extra[i];
        const QMatrix &g = extra[i + 1];
        U_P = hstack(U_P, hstack(f + J * g, J * f - g));
    }

    QMatrix U_S = invariant_complement(J, brane.tau, W);
    QMatrix UPS = hstack(U_P, U_S);

    // (U_P + U_S)^perp and a J-invariant complement of tau in it.
    QMatrix g = pairing_matrix(n);
    QMatrix M = UPS.cols() ? nullspace((g * UPS).transpose()) : QMatrix::identity(2 * n);
    QMatrix C = invariant_complement(J, M, brane.tau);
    // J-invariant complement of U_P + U_S in tau, paired against C.
    QMatrix T = invariant_complement(J, brane.tau, UPS);
    QMatrix U_N = C;
    if (C.cols()) {
        QMatrix beta = C.transpose() * g * C;
        QMatrix A = T.transpose() * g * C;
        // c_l -> c_l + sum_a X_al t_a with A^T X = -beta/2.
        QMatrix X = inverse(A.transpose()) * beta.scaled(Rational(-1, 2));
        U_N = C + T * X;
    }

    LinearSplitting sp;
    sp.U_N = U_N;
    sp.U_P = U_P;
    sp.U_S = U_S;
    sp.U = hstack(U_N, UPS);
    QMatrix xs = sp.U.block(0, 0, n, n);
    QMatrix xis = sp.U.block(n, 0, n, n);
    sp.Bs = xis * inverse(xs);
    sp.U = vstack(QMatrix::identity(n), sp.Bs);
    QMatrix e = b_field_matrix(sp.Bs);
    QMatrix jp = b_field_matrix(-sp.Bs) * J * e;
    sp.I = -jp.block(0, 0, n, n);
    return sp;
}

SplitReport verify_splitting(const LinearGCStructure &gc, const LinearBrane &brane,
                             const LinearSplitting &sp)
{
    SplitReport r;
    const QMatrix &J = gc.op;
    std::size_t n = gc.n();
    QMatrix g = pairing_matrix(n);
    QMatrix U = hstack(sp.U_N, hstack(sp.U_P, sp.U_S));
    r.U_isotropic = (U.transpose() * g * U).is_zero() && (sp.U.transpose() * g * sp.U).is_zero();
    r.U_invariant = span_contains(U, J * U) && subspace_equal(U, sp.U);
    r.U_covers_V = U.cols() == n && rank(anchor(U, n)) == n;
    QMatrix jp = b_field_matrix(-sp.Bs) * J * b_field_matrix(sp.Bs);
    QMatrix ll = jp.block(n, 0, n, n);
    QMatrix ul = jp.block(0, 0, n, n);
    QMatrix lr = jp.block(n, n, n, n);
    QMatrix ur = jp.block(0, n, n, n);
    r.block_form = ll.is_zero() && ul == -sp.I && lr == sp.I.transpose() && ur == real_poisson(gc);
    r.I_complex = (sp.I * sp.I + QMatrix::identity(n)).is_zero();
    r.S_complex = span_contains(brane.S, sp.I * brane.S);
    QMatrix sS = b_field_matrix(sp.Bs) * vstack(brane.S, QMatrix(n, brane.S.cols()));
    QMatrix sum = hstack(sS, conormal(brane.S, n));
    r.tau_split = rank(sum) == n && subspace_equal(sum, brane.tau);
    if (!r.U_isotropic) {
        r.witness = "Gram(U) = " + describe(U.transpose() * g * U);
    } else if (!r.U_invariant) {
        r.witness = "J U not contained in U";
    } else if (!r.U_covers_V) {
        r.witness = "a(U) != V";
    } else if (!r.block_form) {
        r.witness = "lower-left block = " + describe(ll);
    } else if (!r.I_complex) {
        r.witness = "I^2 != -1";
    } else if (!r.S_complex) {
        r.witness = "I(S) not contained in S";
    } else if (!r.tau_split) {
        r.witness = "s(S) + N*S != tau";
    }
    return r;
}

} // namespace gcb::linear
