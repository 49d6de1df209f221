#include <gcbrane/serialize.hpp>

#include <sstream>

#include <json.hpp>

namespace gcb::io
{

using nlohmann::ordered_json;
using jet::JetContext;
using jet::JetFunction;
using jet::MixedTensor;
using jet::Monomial;
using jet::Word;

std::string rational_to_string(const Rational &q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string &s)
{
    if (s.empty()) {
        throw ParseError("empty rational");
    }
    Rational q;
    try {
        if (q.set_str(s, 10) != 0 || q.get_den() == 0) {
            throw ParseError("bad rational '" + s + "'");
        }
    } catch (const std::invalid_argument &) {
        throw ParseError("bad rational '" + s + "'");
    }
    q.canonicalize();
    return q;
}

namespace
{

ordered_json parse_text(const std::string &text)
{
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

const ordered_json &require(const ordered_json &j, const char *key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string("missing key '") + key + "'");
    }
    return j.at(key);
}

int get_int(const ordered_json &j, const char *key)
{
    const ordered_json &v = require(j, key);
    if (!v.is_number_integer()) {
        throw ParseError(std::string("'") + key + "' must be an integer");
    }
    return v.get<int>();
}

Rational get_rational(const ordered_json &v)
{
    if (v.is_string()) {
        return parse_rational(v.get<std::string>());
    }
    if (v.is_number_integer()) {
        return Rational(v.get<long>());
    }
    throw ParseError("rationals must be \"p/q\" strings");
}

std::vector<int> get_int_array(const ordered_json &j, const char *key)
{
    const ordered_json &v = require(j, key);
    if (!v.is_array()) {
        throw ParseError(std::string("'") + key + "' must be an array");
    }
    std::vector<int> out;
    for (const auto &e : v) {
        if (!e.is_number_integer()) {
            throw ParseError(std::string("'") + key + "' entries must be integers");
        }
        out.push_back(e.get<int>());
    }
    return out;
}

ordered_json matrix_json(const QMatrix &m)
{
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(rational_to_string(m(i, j)));
        }
        rows.push_back(row);
    }
    return rows;
}

QMatrix parse_matrix(const ordered_json &v, const char *what)
{
    if (!v.is_array() || v.empty()) {
        throw ParseError(std::string("'") + what + "' must be a non-empty array of rows");
    }
    std::size_t cols = v[0].is_array() ? v[0].size() : 0;
    QMatrix m(v.size(), cols);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_array() || v[i].size() != cols) {
            throw ParseError(std::string("'") + what + "' is not rectangular");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = get_rational(v[i][j]);
        }
    }
    return m;
}

// List of vectors, each of length `len`, as matrix columns.
QMatrix parse_columns(const ordered_json &v, std::size_t len, const char *what)
{
    if (!v.is_array()) {
        throw ParseError(std::string("'") + what + "' must be an array of vectors");
    }
    QMatrix m(len, v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (!v[j].is_array() || v[j].size() != len) {
            throw ParseError(std::string("'") + what + "' vectors have the wrong length");
        }
        for (std::size_t i = 0; i < len; ++i) {
            m(i, j) = get_rational(v[j][i]);
        }
    }
    return m;
}

ordered_json columns_json(const QMatrix &m)
{
    ordered_json out = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
        ordered_json col = ordered_json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            col.push_back(rational_to_string(m(i, j)));
        }
        out.push_back(col);
    }
    return out;
}

} // namespace

gen::LinearInstance parse_linear_instance(const std::string &text)
{
    ordered_json j = parse_text(text);
    int n = get_int(j, "n");
    if (n <= 0) {
        throw ParseError("'n' must be positive");
    }
    std::size_t un = static_cast<std::size_t>(n);
    gen::LinearInstance inst;
    if (j.contains("gc")) {
        inst.gc.op = parse_matrix(j.at("gc"), "gc");
    } else if (j.contains("I") && j.contains("P")) {
        QMatrix I = parse_matrix(j.at("I"), "I");
        QMatrix P = parse_matrix(j.at("P"), "P");
        if (I.rows() != un || I.cols() != un || P.rows() != un || P.cols() != un) {
            throw ParseError("'I' and 'P' must be n x n");
        }
        inst.gc = linear::make_complex_poisson_gc(I, P);
        if (j.contains("B")) {
            QMatrix B = parse_matrix(j.at("B"), "B");
            if (B.rows() != un || B.cols() != un) {
                throw ParseError("'B' must be n x n");
            }
            inst.gc = linear::b_transform(inst.gc, B);
        }
    } else {
        throw ParseError("need 'gc' or 'I' and 'P'");
    }
    if (inst.gc.op.rows() != 2 * un || inst.gc.op.cols() != 2 * un) {
        throw ParseError("'gc' must be 2n x 2n");
    }
    QMatrix S = parse_columns(require(j, "S_basis"), un, "S_basis");
    if (j.contains("tau_basis")) {
        inst.brane.S = S;
        inst.brane.tau = parse_columns(j.at("tau_basis"), 2 * un, "tau_basis");
        if (j.contains("F") && !j.at("F").is_null()) {
            inst.brane.F = parse_matrix(j.at("F"), "F");
        }
    } else {
        QMatrix F(S.cols(), S.cols());
        if (j.contains("F") && !j.at("F").is_null()) {
            F = parse_matrix(j.at("F"), "F");
        }
        inst.brane = linear::brane_tangent_from_F(S, F);
    }
    return inst;
}

std::string linear_instance_to_json(const gen::LinearInstance &inst)
{
    ordered_json j;
    j["n"] = inst.gc.n();
    j["gc"] = matrix_json(inst.gc.op);
    j["S_basis"] = columns_json(inst.brane.S);
    j["tau_basis"] = columns_json(inst.brane.tau);
    if (inst.brane.F) {
        j["F"] = matrix_json(*inst.brane.F);
    }
    return j.dump(2) + "\n";
}

std::string linear_report_to_json(const linear::LinearSplitting &split,
                                  const linear::SplitReport &rep)
{
    ordered_json j;
    j["ok"] = rep.ok();
    j["clauses"] = {{"U_isotropic", rep.U_isotropic}, {"U_invariant", rep.U_invariant},
                    {"U_covers_V", rep.U_covers_V},   {"block_form", rep.block_form},
                    {"I_complex", rep.I_complex},     {"S_complex", rep.S_complex},
                    {"tau_split", rep.tau_split}};
    j["witness"] = rep.witness;
    j["splitting"] = {{"U", columns_json(split.U)},     {"Bs", matrix_json(split.Bs)},
                      {"I", matrix_json(split.I)},      {"U_N", columns_json(split.U_N)},
                      {"U_P", columns_json(split.U_P)}, {"U_S", columns_json(split.U_S)}};
    return j.dump(2) + "\n";
}

namespace
{

ordered_json context_json(const JetContext &ctx)
{
    ordered_json j;
    j["n"] = ctx.n;
    j["k"] = ctx.k;
    j["N"] = ctx.N;
    j["r"] = rational_to_string(ctx.r);
    return j;
}

JetContext parse_context(const ordered_json &j)
{
    JetContext ctx;
    ctx.n = get_int(j, "n");
    ctx.k = get_int(j, "k");
    ctx.N = get_int(j, "N");
    ctx.r = j.contains("r") ? get_rational(j.at("r")) : Rational(1);
    try {
        ctx.validate();
    } catch (const std::exception &e) {
        throw ParseError(std::string("bad jet context: ") + e.what());
    }
    return ctx;
}

void put_monomial(ordered_json &t, Monomial m, int n)
{
    ordered_json z = ordered_json::array(), zb = ordered_json::array();
    for (int i = 0; i < n; ++i) {
        z.push_back(jet::mono_exp(m, i));
        zb.push_back(jet::mono_exp(m, n + i));
    }
    t["z_deg"] = z;
    t["zbar_deg"] = zb;
}

Monomial get_monomial(const ordered_json &t, int n)
{
    std::vector<int> z = get_int_array(t, "z_deg");
    std::vector<int> zb = get_int_array(t, "zbar_deg");
    if (static_cast<int>(z.size()) != n || static_cast<int>(zb.size()) != n) {
        throw ParseError("z_deg and zbar_deg need n entries");
    }
    for (int e : z) {
        if (e < 0 || e > 255) {
            throw ParseError("exponent out of range");
        }
    }
    for (int e : zb) {
        if (e < 0 || e > 255) {
            throw ParseError("exponent out of range");
        }
    }
    return jet::mono_make(z, zb, n);
}

Gauss get_coefficient(const ordered_json &t)
{
    Rational re = t.contains("re") ? get_rational(t.at("re")) : Rational(0);
    Rational im = t.contains("im") ? get_rational(t.at("im")) : Rational(0);
    return Gauss(re, im);
}

void put_coefficient(ordered_json &t, const Gauss &c)
{
    t["re"] = rational_to_string(c.re);
    t["im"] = rational_to_string(c.im);
}

ordered_json tensor_terms(const MixedTensor &t)
{
    int n = t.n();
    ordered_json terms = ordered_json::array();
    for (const auto &[w, f] : t.components()) {
        ordered_json p_idx = ordered_json::array(), q_idx = ordered_json::array();
        for (int a = 0; a < n; ++a) {
            if (w & jet::vector_bit(n, a)) {
                p_idx.push_back(a + 1);
            }
        }
        for (int b = 0; b < n; ++b) {
            if (w & jet::form_bit(n, b)) {
                q_idx.push_back(b + 1);
            }
        }
        std::string comp = std::to_string(jet::word_p(w, n)) + std::to_string(jet::word_q(w, n));
        for (const auto &[m, c] : f.terms()) {
            ordered_json term;
            term["component"] = comp;
            term["p_idx"] = p_idx;
            term["q_idx"] = q_idx;
            put_monomial(term, m, n);
            put_coefficient(term, c);
            terms.push_back(term);
        }
    }
    return terms;
}

// Word and sign of dzbar_{q...} ^ d/dz_{p...} in the listed order; sign 0 on a repeat.
std::pair<Word, int> ordered_word(const std::vector<int> &p_idx, const std::vector<int> &q_idx,
                                  int n)
{
    std::vector<int> bits;
    for (int b : q_idx) {
        if (b < 1 || b > n) {
            throw ParseError("q_idx out of range");
        }
        bits.push_back(b - 1);
    }
    for (int a : p_idx) {
        if (a < 1 || a > n) {
            throw ParseError("p_idx out of range");
        }
        bits.push_back(n + a - 1);
    }
    Word w = 0;
    int inversions = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (w & (Word{1} << bits[i])) {
            return {0, 0};
        }
        w |= Word{1} << bits[i];
        for (std::size_t j = i + 1; j < bits.size(); ++j) {
            inversions += bits[i] > bits[j];
        }
    }
    return {w, inversions % 2 ? -1 : 1};
}

MixedTensor parse_tensor_json(const ordered_json &j, const JetContext &ctx, bool deformation_only)
{
    MixedTensor out(ctx);
    const ordered_json &terms = require(j, "terms");
    if (!terms.is_array()) {
        throw ParseError("'terms' must be an array");
    }
    for (const auto &t : terms) {
        std::vector<int> p_idx = get_int_array(t, "p_idx");
        std::vector<int> q_idx = get_int_array(t, "q_idx");
        std::string comp = std::to_string(p_idx.size()) + std::to_string(q_idx.size());
        if (t.contains("component")) {
            if (!t.at("component").is_string()) {
                throw ParseError("'component' must be a string");
            }
            std::string given = t.at("component").get<std::string>();
            if (given != comp && given != "pq") {
                throw ParseError("component '" + given + "' does not match its indices");
            }
        }
        if (deformation_only && comp != "20" && comp != "11" && comp != "02") {
            throw ParseError("deformation terms must have bidegree 20, 11 or 02");
        }
        auto [w, sign] = ordered_word(p_idx, q_idx, ctx.n);
        if (sign == 0) {
            continue;
        }
        Monomial m = get_monomial(t, ctx.n);
        if (jet::mono_degree(m) > ctx.N) {
            throw ParseError("term degree exceeds N");
        }
        Gauss c = get_coefficient(t);
        out.add(w, JetFunction::monomial(ctx.n, ctx.N, m, sign > 0 ? c : -c));
    }
    return out;
}

ordered_json slot_terms(const jet::SlotVector &v, int n)
{
    ordered_json out = ordered_json::array();
    for (std::size_t s = 0; s < v.size(); ++s) {
        for (const auto &[m, c] : v[s].terms()) {
            ordered_json t;
            t["slot"] = s + 1;
            put_monomial(t, m, n);
            put_coefficient(t, c);
            out.push_back(t);
        }
    }
    return out;
}

void parse_slot_terms(const ordered_json &v, jet::SlotVector &out, const JetContext &ctx)
{
    if (!v.is_array()) {
        throw ParseError("field components must be an array");
    }
    for (const auto &t : v) {
        int s = get_int(t, "slot");
        if (s < 1 || s > 2 * ctx.n) {
            throw ParseError("slot out of range");
        }
        Monomial m = get_monomial(t, ctx.n);
        if (jet::mono_degree(m) > ctx.N) {
            throw ParseError("term degree exceeds N");
        }
        out[s - 1] += JetFunction::monomial(ctx.n, ctx.N, m, get_coefficient(t));
    }
}

ordered_json field_json(const jet::GeneralizedVectorField &V)
{
    ordered_json j = context_json(V.ctx);
    j["X"] = slot_terms(V.X, V.ctx.n);
    j["xi"] = slot_terms(V.xi, V.ctx.n);
    return j;
}

} // namespace

std::string tensor_to_json(const MixedTensor &t)
{
    ordered_json j = context_json(t.context());
    j["terms"] = tensor_terms(t);
    return j.dump(2) + "\n";
}

MixedTensor parse_tensor(const std::string &text)
{
    ordered_json j = parse_text(text);
    return parse_tensor_json(j, parse_context(j), false);
}

std::string deformation_to_json(const jet::Deformation &eps)
{
    return tensor_to_json(eps.total());
}

jet::Deformation parse_deformation(const std::string &text)
{
    ordered_json j = parse_text(text);
    JetContext ctx = parse_context(j);
    jet::Deformation eps = jet::Deformation::from_total(parse_tensor_json(j, ctx, true));
    eps.ctx = ctx;
    return eps;
}

std::string field_to_json(const jet::GeneralizedVectorField &V) { return field_json(V).dump(2) + "\n"; }

jet::GeneralizedVectorField parse_field(const std::string &text)
{
    ordered_json j = parse_text(text);
    JetContext ctx = parse_context(j);
    jet::GeneralizedVectorField V(ctx);
    if (j.contains("X")) {
        parse_slot_terms(j.at("X"), V.X, ctx);
    }
    if (j.contains("xi")) {
        parse_slot_terms(j.at("xi"), V.xi, ctx);
    }
    return V;
}

std::string flow_to_json(const jet::GeneralizedFlow &f)
{
    ordered_json j = context_json(f.ctx);
    ordered_json gens = ordered_json::array();
    for (const auto &V : f.generators) {
        ordered_json g;
        g["X"] = slot_terms(V.X, f.ctx.n);
        g["xi"] = slot_terms(V.xi, f.ctx.n);
        gens.push_back(g);
    }
    j["generators"] = gens;
    j["phi"] = slot_terms(f.phi, f.ctx.n);
    ordered_json B = ordered_json::array();
    for (const auto &[st, g] : f.B.components()) {
        for (const auto &[m, c] : g.terms()) {
            ordered_json t;
            t["s"] = st.first + 1;
            t["t"] = st.second + 1;
            put_monomial(t, m, f.ctx.n);
            put_coefficient(t, c);
            B.push_back(t);
        }
    }
    j["B"] = B;
    return j.dump(2) + "\n";
}

jet::NormalizationParams parse_params(const std::string &text)
{
    ordered_json j = parse_text(text);
    if (!j.is_object()) {
        throw ParseError("params must be an object");
    }
    jet::NormalizationParams p;
    if (j.contains("max_iterations")) {
        p.max_iterations = get_int(j, "max_iterations");
    }
    if (j.contains("target_order")) {
        p.target_order = get_int(j, "target_order");
    }
    if (j.contains("delta_schedule")) {
        const ordered_json &d = j.at("delta_schedule");
        if (!d.is_array()) {
            throw ParseError("'delta_schedule' must be an array");
        }
        p.delta_schedule.clear();
        for (const auto &e : d) {
            p.delta_schedule.push_back(get_rational(e));
        }
    }
    if (p.max_iterations < 0 || p.target_order < 0) {
        throw ParseError("params must be non-negative");
    }
    return p;
}

std::string params_to_json(const jet::NormalizationParams &p)
{
    ordered_json j;
    j["max_iterations"] = p.max_iterations;
    j["target_order"] = p.target_order;
    ordered_json d = ordered_json::array();
    for (const auto &q : p.delta_schedule) {
        d.push_back(rational_to_string(q));
    }
    j["delta_schedule"] = d;
    return j.dump(2) + "\n";
}

std::string csv_header()
{
    return "iteration,ord_eps11_02,norm20,norm11,norm02,mc_residual_norm,S_preserved,tau_preserved\n";
}

std::string csv_row(const jet::IterationRecord &r)
{
    std::ostringstream os;
    os << r.iteration << ',' << r.ord_eps11_02 << ',' << rational_to_string(r.norm20) << ','
       << rational_to_string(r.norm11) << ',' << rational_to_string(r.norm02) << ','
       << rational_to_string(r.mc_residual_norm) << ',' << (r.S_preserved ? "true" : "false")
       << ',' << (r.tau_preserved ? "true" : "false") << '\n';
    return os.str();
}

std::string normalization_csv(const std::vector<jet::IterationRecord> &rows)
{
    std::string out = csv_header();
    for (const auto &r : rows) {
        out += csv_row(r);
    }
    return out;
}

} // namespace gcb::io
