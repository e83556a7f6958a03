#include <loopk/lietorus.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace loopk
{

namespace
{

using Vec = std::vector<Cyclotomic>;

bool is_zero_root(const Root &r)
{
    return std::all_of(r.begin(), r.end(), [](int c) { return c == 0; });
}

bool is_zero_residue(const Residue &r)
{
    return is_zero_root(r);
}

// q-degree of b_k padded to the rank of delta.
Root padded_q(const GradedLieAlgebra &g, unsigned k, const RootSystem &delta)
{
    if (g.qrank() > delta.rank()) {
        throw invalid_input("Delta has rank " + std::to_string(delta.rank()) + " below the q-rank "
                            + std::to_string(g.qrank()) + "; align it first");
    }
    Root q = g.q(k);
    q.resize(delta.rank(), 0);
    return q;
}

Rational coroot_pairing(const RootSystem &delta, const Root &beta, const Root &alpha)
{
    return Rational(2) * delta.inner(beta, alpha) / delta.inner(alpha, alpha);
}

RootSystem permuted(const RootSystem &rs, const std::vector<unsigned> &p)
{
    const unsigned r = rs.rank();
    std::vector<Root> roots;
    for (const auto &root : rs.roots()) {
        Root x(r);
        for (unsigned i = 0; i < r; ++i) {
            x[p[i]] = root[i];
        }
        roots.push_back(std::move(x));
    }
    Matrix<Rational> gram(r, r, Rational{});
    for (unsigned i = 0; i < r; ++i) {
        for (unsigned j = 0; j < r; ++j) {
            gram(p[i], p[j]) = rs.gram()(i, j);
        }
    }
    return RootSystem(rs.label(), r, std::move(roots), std::move(gram));
}

std::string piece_str(const Root &alpha, const Residue &lambda)
{
    return "alpha=" + root_str(alpha) + " lambda=" + root_str(lambda);
}

// [x, y] with every shift set to zero; exact on residue-homogeneous inputs
// up to a common monomial.
Vec stripped_bracket(const GradedLieAlgebra &g, const Vec &x, const Vec &y)
{
    Vec r(g.size());
    for (unsigned i = 0; i < g.size(); ++i) {
        if (x[i].is_zero()) {
            continue;
        }
        for (unsigned j = 0; j < g.size(); ++j) {
            if (y[j].is_zero()) {
                continue;
            }
            for (const auto &t : g.bracket(i, j)) {
                r[t.k] += x[i] * y[j] * t.c;
            }
        }
    }
    return r;
}

std::string cokernel_str(const std::vector<long> &inv)
{
    if (inv.empty()) {
        return "trivial";
    }
    std::string s;
    for (std::size_t i = 0; i < inv.size(); ++i) {
        s += (i ? " + " : "") + (inv[i] == 0 ? std::string("Z") : "Z/" + std::to_string(inv[i]));
    }
    return s;
}

} // namespace

std::string LT4Witness::str() const
{
    std::ostringstream os;
    const std::string cs = c.is_rational() ? c.rational_part().str() : c.normalized().str();
    os << "witness " << piece_str(alpha, lambda) << " e=b" << e << "*x^" << root_str(e_shift) << " f=(" << cs
       << ")*b" << f << "*x^" << root_str(f_shift);
    return os.str();
}

bool LieTorusReport::pass() const
{
    return std::all_of(axioms.begin(), axioms.end(), [](const AxiomVerdict &v) { return v.pass; });
}

std::string LieTorusReport::str() const
{
    std::ostringstream os;
    os << "lie-torus-report\n";
    os << "delta " << delta << "\n";
    os << "nullity " << nullity << "\n";
    for (std::size_t i = 0; i < axioms.size(); ++i) {
        os << "LT" << i + 1 << ' ' << (axioms[i].pass ? "pass" : "fail");
        if (!axioms[i].detail.empty()) {
            os << ' ' << axioms[i].detail;
        }
        os << "\n";
        if (i == 3) {
            for (const auto &w : witnesses) {
                os << w.str() << "\n";
            }
        }
    }
    os << "overall " << (pass() ? "pass" : "fail") << "\n";
    return os.str();
}

RootSystem align_delta(const GradedLieAlgebra &g, const RootSystem &delta)
{
    const unsigned r = std::max(g.qrank(), delta.rank());
    const RootSystem base = delta.rank() < r ? delta.embedded(r) : delta;
    if (r > 8) {
        return base;
    }
    std::vector<Root> qs;
    for (unsigned k = 0; k < g.size(); ++k) {
        Root q = g.q(k);
        q.resize(r, 0);
        if (!is_zero_root(q)) {
            qs.push_back(std::move(q));
        }
    }
    std::vector<unsigned> p(r);
    std::iota(p.begin(), p.end(), 0u);
    std::vector<unsigned> best = p;
    long best_score = -1;
    do {
        const RootSystem cand = permuted(base, p);
        long score = 0;
        for (const auto &q : qs) {
            score += cand.contains(q) ? 1 : 0;
        }
        if (score > best_score) {
            best_score = score;
            best = p;
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return permuted(base, best);
}

AxiomVerdict check_lt1(const GradedLieAlgebra &g, const RootSystem &delta)
{
    for (unsigned k = 0; k < g.size(); ++k) {
        const Root q = padded_q(g, k, delta);
        if (!is_zero_root(q) && !delta.contains(q)) {
            return {false, "b" + std::to_string(k) + " has q-degree " + root_str(q) + " outside Delta"};
        }
    }
    return {};
}

AxiomVerdict check_lt2(const GradedLieAlgebra &g, const RootSystem &delta)
{
    const auto ind = indivisible_roots(delta);
    if (ind.empty()) {
        return {false, "anisotropic: Delta^x_ind is empty"};
    }
    std::set<Root> at_zero;
    for (unsigned k = 0; k < g.size(); ++k) {
        if (is_zero_residue(g.residue(k))) {
            at_zero.insert(padded_q(g, k, delta));
        }
    }
    for (const auto &a : ind) {
        if (!at_zero.count(a)) {
            Residue zero(g.nvars(), 0);
            return {false, "empty piece at " + piece_str(a, zero)};
        }
    }
    return {};
}

AxiomVerdict check_lt3(const GradedLieAlgebra &g, std::vector<long> *cokernel)
{
    const unsigned n = g.nvars();
    if (n == 0) {
        return {};
    }
    // lambda-support is {r_k + m z}; it generates the lattice spanned by the
    // residues together with m Z^n
    std::vector<std::vector<long>> rows;
    for (unsigned k = 0; k < g.size(); ++k) {
        rows.emplace_back(g.residue(k).begin(), g.residue(k).end());
    }
    for (unsigned i = 0; i < n; ++i) {
        std::vector<long> row(n, 0);
        row[i] = static_cast<long>(g.period());
        rows.push_back(std::move(row));
    }
    auto inv = smith_invariants(rows);
    inv.resize(n, 0);
    std::vector<long> bad;
    for (long d : inv) {
        if (d != 1) {
            bad.push_back(d);
        }
    }
    if (cokernel) {
        *cokernel = bad;
    }
    if (bad.empty()) {
        return {};
    }
    return {false, "cokernel " + cokernel_str(bad)};
}

bool verify_witness(const GradedLieAlgebra &g, const RootSystem &delta, const LT4Witness &w, std::string *why)
{
    auto fail = [&](const std::string &msg) {
        if (why) {
            *why = msg;
        }
        return false;
    };
    const unsigned n = g.size(), nv = g.nvars();
    const int m = static_cast<int>(g.period());
    if (w.e >= n || w.f >= n || w.e_shift.size() != nv || w.f_shift.size() != nv) {
        return fail("malformed witness");
    }
    if (w.c.is_zero()) {
        return fail("f is zero");
    }
    if (padded_q(g, w.e, delta) != w.alpha || padded_q(g, w.f, delta) != -w.alpha) {
        return fail("e or f has the wrong q-degree");
    }
    for (unsigned v = 0; v < nv; ++v) {
        const int le = g.residue(w.e)[v] + m * w.e_shift[v];
        const int lf = g.residue(w.f)[v] + m * w.f_shift[v];
        if (le + lf != 0 || ((le % m) + m) % m != w.lambda[v]) {
            return fail("e and f do not have opposite lambda-degrees");
        }
    }
    const LaurentPoly zero(nv);
    std::vector<LaurentPoly> e(n, zero), f(n, zero);
    e[w.e] = LaurentPoly::monomial(Cyclotomic(1), w.e_shift);
    f[w.f] = LaurentPoly::monomial(w.c, w.f_shift);
    const auto h = graded_bracket(g, e, f);
    for (unsigned l = 0; l < n; ++l) {
        std::vector<LaurentPoly> x(n, zero);
        x[l] = LaurentPoly(nv, Cyclotomic(1));
        const auto lhs = graded_bracket(g, h, x);
        const Rational p = coroot_pairing(delta, padded_q(g, l, delta), w.alpha);
        for (unsigned k = 0; k < n; ++k) {
            const LaurentPoly expected = k == l ? LaurentPoly(nv, Cyclotomic(p)) : zero;
            if (!(lhs[k] == expected)) {
                return fail("[[e, f], b" + std::to_string(l) + "] != " + p.str() + " b" + std::to_string(l));
            }
        }
    }
    return true;
}

AxiomVerdict check_lt4(const GradedLieAlgebra &g, const RootSystem &delta, std::vector<LT4Witness> *witnesses)
{
    const unsigned nv = g.nvars();
    const int m = static_cast<int>(g.period());
    std::map<std::pair<Root, Residue>, std::vector<unsigned>> pieces;
    for (unsigned k = 0; k < g.size(); ++k) {
        pieces[{padded_q(g, k, delta), g.residue(k)}].push_back(k);
    }
    for (const auto &[key, members] : pieces) {
        const auto &[alpha, lambda] = key;
        if (is_zero_root(alpha) || !delta.contains(alpha)) {
            continue;
        }
        if (members.size() > 1) {
            return {false, "piece " + piece_str(alpha, lambda) + " has dimension " + std::to_string(members.size())};
        }
        Residue opp(nv);
        for (unsigned v = 0; v < nv; ++v) {
            opp[v] = (m - lambda[v]) % m;
        }
        const auto it = pieces.find({-alpha, opp});
        if (it == pieces.end()) {
            return {false, "no opposite piece for " + piece_str(alpha, lambda)};
        }
        const unsigned i = members[0], j = it->second[0];
        Exponent f_shift(nv);
        for (unsigned v = 0; v < nv; ++v) {
            f_shift[v] = -(lambda[v] + opp[v]) / m;
        }
        // H0 = [b_i, b_j] without shifts; [H0, b_i] must be mu b_i
        Vec bi(g.size()), bj(g.size());
        bi[i] = Cyclotomic(1);
        bj[j] = Cyclotomic(1);
        const Vec h0 = stripped_bracket(g, bi, bj);
        const Vec hb = stripped_bracket(g, h0, bi);
        for (unsigned k = 0; k < g.size(); ++k) {
            if (k != i && !hb[k].is_zero()) {
                return {false, "[[e, f], e] is not a multiple of e at " + piece_str(alpha, lambda)};
            }
        }
        if (hb[i].is_zero()) {
            return {false, "[[e, f], e] = 0 at " + piece_str(alpha, lambda)};
        }
        LT4Witness w{alpha, lambda, i, Exponent(nv, 0), j, (Cyclotomic(2) * hb[i].inverse()).normalized(), f_shift};
        std::string why;
        if (!verify_witness(g, delta, w, &why)) {
            return {false, why + " at " + piece_str(alpha, lambda)};
        }
        if (witnesses) {
            witnesses->push_back(std::move(w));
        }
    }
    return {};
}

AxiomVerdict check_lt5(const GradedLieAlgebra &g)
{
    const unsigned n = g.size();
    std::vector<Vec> span;
    for (unsigned k = 0; k < n; ++k) {
        if (!is_zero_root(g.q(k))) {
            Vec v(n);
            v[k] = Cyclotomic(1);
            span.push_back(std::move(v));
        }
    }
    std::size_t r = span.empty() ? 0 : rank(from_columns(span, n, Cyclotomic{}));
    bool grew = true;
    while (grew && r < n) {
        grew = false;
        const std::size_t count = span.size();
        for (std::size_t a = 0; a < count && r < n; ++a) {
            for (std::size_t b = a + 1; b < count && r < n; ++b) {
                Vec w = stripped_bracket(g, span[a], span[b]);
                span.push_back(std::move(w));
                const std::size_t nr = rank(from_columns(span, n, Cyclotomic{}));
                if (nr > r) {
                    r = nr;
                    grew = true;
                } else {
                    span.pop_back();
                }
            }
        }
    }
    if (r == n) {
        return {};
    }
    return {false, "subalgebra generated by the alpha != 0 pieces has rank " + std::to_string(r) + " < "
                       + std::to_string(n)};
}

LieTorusReport check_lie_torus(const GradedLieAlgebra &g, const RootSystem &delta)
{
    LieTorusReport rep;
    rep.delta = delta.label();
    rep.nullity = g.nvars();
    const RootSystem d = align_delta(g, delta);
    rep.axioms[0] = check_lt1(g, d);
    rep.axioms[1] = check_lt2(g, d);
    rep.axioms[2] = check_lt3(g, &rep.cokernel);
    rep.axioms[3] = check_lt4(g, d, &rep.witnesses);
    rep.axioms[4] = check_lt5(g);
    return rep;
}

LieTorusReport discover_and_check(const GradedLieAlgebra &g)
{
    const RelativeGrading rg = relative_roots(g);
    if (rg.phi.empty()) {
        Matrix<Rational> gram = Matrix<Rational>::identity(g.qrank(), Rational{});
        gram *= Rational(2);
        LieTorusReport rep = check_lie_torus(g, RootSystem("none", g.qrank(), {}, gram));
        rep.axioms[1] = {false, "anisotropic: no nonzero q-degree"};
        return rep;
    }
    const std::string label = classify(rg.data.system());
    const bool identity_coords = std::all_of(rg.coords.begin(), rg.coords.end(),
                                             [](const auto &kv) { return kv.first == kv.second; });
    if (identity_coords && rg.data.system().rank() == g.qrank()) {
        const RootSystem &rs = rg.data.system();
        return check_lie_torus(g, RootSystem(label, rs.rank(), rs.roots(), rs.gram()));
    }
    return check_lie_torus(g, build_root_system(label));
}

} // namespace loopk
