#include <loopk/grading.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace loopk
{

namespace
{

using Vec = std::vector<Cyclotomic>;

std::string residue_str(const Residue &r)
{
    return root_str(r);
}

bool is_zero_vec(const Vec &v)
{
    return std::all_of(v.begin(), v.end(), [](const Cyclotomic &c) { return c.is_zero(); });
}

Matrix<Cyclotomic> rows_matrix(const std::vector<Vec> &rows, std::size_t n)
{
    Matrix<Cyclotomic> m(rows.size(), n, Cyclotomic{});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

// Reduced echelon basis of the span of the given vectors.
std::vector<Vec> canonical_basis(const std::vector<Vec> &vecs, std::size_t n)
{
    if (vecs.empty()) {
        return {};
    }
    Matrix<Cyclotomic> m = rows_matrix(vecs, n);
    const auto pivots = rref_in_place(m);
    std::vector<Vec> out;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        Vec row(n);
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = m(i, j).normalized();
        }
        out.push_back(std::move(row));
    }
    return out;
}

// Basis of {x in span(B) : A x = lambda x}, as vectors.
std::vector<Vec> eigen_part(const Matrix<Cyclotomic> &a, const Cyclotomic &lambda, const std::vector<Vec> &basis)
{
    const std::size_t n = a.rows();
    if (basis.empty()) {
        return {};
    }
    const Matrix<Cyclotomic> b = from_columns(basis, n, Cyclotomic{});
    Matrix<Cyclotomic> shifted = a;
    for (std::size_t i = 0; i < n; ++i) {
        shifted(i, i) -= lambda;
    }
    const auto ker = kernel(shifted * b);
    std::vector<Vec> out;
    for (const auto &c : ker) {
        out.push_back(b.apply(c));
    }
    return out;
}

Residue add_mod(const Residue &a, const Residue &b, unsigned m)
{
    Residue r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = (a[i] + b[i]) % static_cast<int>(m);
    }
    return r;
}

std::vector<Residue> all_residues(unsigned n, unsigned m)
{
    std::vector<Residue> out;
    Residue r(n, 0);
    while (true) {
        out.push_back(r);
        unsigned i = 0;
        while (i < n) {
            if (++r[i] < static_cast<int>(m)) {
                break;
            }
            r[i] = 0;
            ++i;
        }
        if (i == n) {
            break;
        }
    }
    return out;
}

// Monic minimal polynomial of v under a, coefficients c_0..c_{d-1} with
// a^d v = sum c_i a^i v.
std::vector<Cyclotomic> krylov_relation(const Matrix<Cyclotomic> &a, const Vec &v)
{
    std::vector<Vec> chain{v};
    while (chain.size() <= a.rows()) {
        Vec next = a.apply(chain.back());
        const auto sol = solve(from_columns(chain, a.rows(), Cyclotomic{}), next);
        if (sol) {
            return *sol;
        }
        chain.push_back(std::move(next));
    }
    throw math_error("krylov_relation: no relation found");
}

Rational horner(const std::vector<Rational> &p, const Rational &x)
{
    Rational acc;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

// Distinct rational eigenvalues of a on span(probes); math_error when some
// probe's minimal polynomial is not a product of distinct rational linear
// factors (the witness names the probe).
std::vector<Rational> rational_eigenvalues(const Matrix<Cyclotomic> &a, const std::vector<Vec> &probes)
{
    std::set<Rational> found;
    for (std::size_t k = 0; k < probes.size(); ++k) {
        const auto rel = krylov_relation(a, probes[k]);
        const std::size_t d = rel.size();
        // mu(x) = x^d - sum rel_i x^i, low degree first
        std::vector<Rational> mu(d + 1);
        for (std::size_t i = 0; i < d; ++i) {
            if (!rel[i].is_rational()) {
                throw math_error("ad-action has eigenvalues outside Q (probe " + std::to_string(k) + ")");
            }
            mu[i] = -rel[i].rational_part();
        }
        mu[d] = Rational(1);
        std::vector<Rational> roots;
        std::size_t z = 0;
        while (z < mu.size() && mu[z].is_zero()) {
            ++z;
        }
        if (z > 1) {
            throw math_error("ad-action is not semisimple: nilpotent part on probe " + std::to_string(k));
        }
        if (z == 1) {
            roots.push_back(Rational(0));
        }
        const std::vector<Rational> q(mu.begin() + static_cast<long>(z), mu.end());
        if (q.size() > 1) {
            mpz_class den = 1;
            Rational big;
            for (const auto &c : q) {
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get().get_den_mpz_t());
                const Rational absval = c.sign() < 0 ? -c : c;
                if (absval > big) {
                    big = absval;
                }
            }
            const Rational bound = (big + Rational(1)) * Rational(mpq_class(den));
            if (bound > Rational(200000)) {
                throw budget_exceeded("eigenvalue search range too large");
            }
            const long ymax = bound.to_int();
            const mpq_class dq(den);
            for (long y = 1; y <= ymax && roots.size() < d; ++y) {
                for (long s : {y, -y}) {
                    const Rational x(mpq_class(mpq_class(s) / dq));
                    if (horner(q, x).is_zero()) {
                        roots.push_back(x);
                    }
                }
            }
        }
        if (roots.size() != d) {
            throw math_error("ad-action is not diagonalizable over Q: minimal polynomial of probe " + std::to_string(k)
                             + " has degree " + std::to_string(d) + " but " + std::to_string(roots.size())
                             + " distinct rational roots");
        }
        found.insert(roots.begin(), roots.end());
    }
    return {found.begin(), found.end()};
}

Matrix<Cyclotomic> graded_ad(const GradedLieAlgebra &g, const Vec &c)
{
    const unsigned n = g.size();
    Matrix<Cyclotomic> a(n, n, Cyclotomic{});
    for (unsigned i = 0; i < n; ++i) {
        if (c[i].is_zero()) {
            continue;
        }
        for (unsigned j = 0; j < n; ++j) {
            for (const auto &t : g.bracket(i, j)) {
                for (int s : t.shift) {
                    if (s != 0) {
                        throw invalid_input("Cartan element is not of lambda-degree 0");
                    }
                }
                a(t.k, j) += c[i] * t.c;
            }
        }
    }
    return a;
}

std::string trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return std::string(s);
}

// Whitespace-separated tokens; brackets group.
std::vector<std::pair<std::string, int>> tokenize(std::string_view line)
{
    std::vector<std::pair<std::string, int>> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        if (i >= line.size()) {
            break;
        }
        const std::size_t start = i;
        int depth = 0;
        while (i < line.size() && (depth > 0 || !std::isspace(static_cast<unsigned char>(line[i])))) {
            if (line[i] == '[' || line[i] == '(') {
                ++depth;
            } else if (line[i] == ']' || line[i] == ')') {
                --depth;
            }
            ++i;
        }
        out.emplace_back(std::string(line.substr(start, i - start)), static_cast<int>(start) + 1);
    }
    return out;
}

std::vector<int> parse_int_tuple(const std::string &s, int line, int col)
{
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
        throw parse_error("expected integer tuple, got '" + s + "'", line, col);
    }
    std::vector<int> out;
    std::string body = s.substr(1, s.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const std::string t = trim(item);
            out.push_back(std::stoi(t, &used));
            if (used != t.size()) {
                throw std::invalid_argument(t);
            }
        } catch (const std::exception &) {
            throw parse_error("bad integer '" + item + "'", line, col);
        }
    }
    return out;
}

long parse_long(const std::string &s, int line, int col)
{
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used == s.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw parse_error("expected an integer, got '" + s + "'", line, col);
}

} // namespace

GradedLieAlgebra::GradedLieAlgebra(unsigned nvars, unsigned period, unsigned qrank, std::vector<Root> q,
                                   std::vector<Residue> residues, std::vector<std::vector<BracketTerm>> table)
    : m_nvars(nvars), m_period(period), m_qrank(qrank), m_q(std::move(q)), m_res(std::move(residues)),
      m_table(std::move(table))
{
    if (period == 0) {
        throw invalid_input("GradedLieAlgebra: period must be positive");
    }
    if (m_res.size() != m_q.size() || m_table.size() != m_q.size() * m_q.size()) {
        throw invalid_input("GradedLieAlgebra: inconsistent sizes");
    }
    for (std::size_t k = 0; k < m_q.size(); ++k) {
        if (m_q[k].size() != qrank || m_res[k].size() != nvars) {
            throw invalid_input("GradedLieAlgebra: degree of b_" + std::to_string(k) + " has wrong length");
        }
        for (int r : m_res[k]) {
            if (r < 0 || r >= static_cast<int>(period)) {
                throw invalid_input("GradedLieAlgebra: residue of b_" + std::to_string(k) + " out of range");
            }
        }
    }
    for (const auto &cell : m_table) {
        for (const auto &t : cell) {
            if (t.k >= m_q.size() || t.shift.size() != nvars) {
                throw invalid_input("GradedLieAlgebra: malformed structure constant");
            }
        }
    }
}

void GradedLieAlgebra::set_provenance(std::string base_label, std::vector<std::vector<Cyclotomic>> vectors,
                                      std::vector<std::vector<Rational>> weights)
{
    m_base_label = std::move(base_label);
    m_vectors = std::move(vectors);
    m_weights = std::move(weights);
}

unsigned GradedLieAlgebra::conductor() const
{
    unsigned c = 1;
    for (const auto &cell : m_table) {
        for (const auto &t : cell) {
            c = std::lcm(c, t.c.normalized().order());
        }
    }
    return c;
}

bool GradedLieAlgebra::grading_compatible(std::string *witness) const
{
    const int m = static_cast<int>(m_period);
    for (unsigned i = 0; i < size(); ++i) {
        for (unsigned j = 0; j < size(); ++j) {
            for (const auto &t : bracket(i, j)) {
                bool ok = m_q[i] + m_q[j] == m_q[t.k];
                for (unsigned v = 0; v < m_nvars && ok; ++v) {
                    ok = m_res[i][v] + m_res[j][v] == m_res[t.k][v] + m * t.shift[v];
                }
                if (!ok) {
                    if (witness) {
                        *witness = "[b_" + std::to_string(i) + ", b_" + std::to_string(j) + "] has a component on b_"
                                   + std::to_string(t.k) + " outside degree " + root_str(m_q[i] + m_q[j]);
                    }
                    return false;
                }
            }
        }
    }
    return true;
}

std::map<Residue, unsigned> GradedLieAlgebra::residue_dimensions() const
{
    std::map<Residue, unsigned> d;
    for (const auto &r : all_residues(m_nvars, m_period)) {
        d[r] = 0;
    }
    for (const auto &r : m_res) {
        ++d[r];
    }
    return d;
}

std::map<std::pair<Root, Residue>, std::vector<unsigned>> GradedLieAlgebra::pieces() const
{
    std::map<std::pair<Root, Residue>, std::vector<unsigned>> p;
    for (unsigned k = 0; k < size(); ++k) {
        p[{m_q[k], m_res[k]}].push_back(k);
    }
    return p;
}

GradedLieAlgebra GradedLieAlgebra::negated() const
{
    GradedLieAlgebra g(*this);
    for (auto &q : g.m_q) {
        q = -q;
    }
    return g;
}

std::string GradedLieAlgebra::str() const
{
    std::ostringstream os;
    os << "graded-lie-algebra\n";
    os << "base " << (m_base_label.empty() ? "-" : m_base_label) << "\n";
    os << "field Q(zeta_" << conductor() << ")\n";
    os << "nvars " << m_nvars << "\n";
    os << "period " << m_period << "\n";
    os << "qrank " << m_qrank << "\n";
    os << "size " << size() << "\n";
    for (unsigned k = 0; k < size(); ++k) {
        os << "b " << k << " q=" << root_str(m_q[k]) << " lambda=" << residue_str(m_res[k]) << "\n";
    }
    for (unsigned i = 0; i < size(); ++i) {
        for (unsigned j = i + 1; j < size(); ++j) {
            for (const auto &t : bracket(i, j)) {
                os << "bracket " << i << ' ' << j << ' ' << t.k << " shift=" << root_str(t.shift)
                   << " c=" << (t.c.is_rational() ? t.c.rational_part().str() : t.c.normalized().str()) << "\n";
            }
        }
    }
    os << "end\n";
    return os.str();
}

GradedLieAlgebra GradedLieAlgebra::parse(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    long nvars = -1, period = -1, qrank = -1, size = -1;
    std::string base = "-";
    std::vector<Root> q;
    std::vector<Residue> res;
    std::vector<std::tuple<unsigned, unsigned, BracketTerm>> brackets;
    bool header = false, ended = false;
    auto need = [&](bool cond, const std::string &msg, int col) {
        if (!cond) {
            throw parse_error(msg, lineno, col);
        }
    };
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(raw.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        need(!ended, "content after 'end'", 1);
        const auto toks = tokenize(line);
        const std::string &key = toks[0].first;
        if (!header) {
            need(key == "graded-lie-algebra", "expected 'graded-lie-algebra' header", 1);
            header = true;
            continue;
        }
        if (key == "base" || key == "field") {
            need(toks.size() >= 2, "missing value", 1);
            if (key == "base") {
                base = toks[1].first;
            }
        } else if (key == "nvars" || key == "period" || key == "qrank" || key == "size") {
            need(toks.size() == 2, "expected one value after '" + key + "'", 1);
            const long v = parse_long(toks[1].first, lineno, toks[1].second);
            need(v >= 0, "negative value", toks[1].second);
            (key == "nvars" ? nvars : key == "period" ? period : key == "qrank" ? qrank : size) = v;
        } else if (key == "b") {
            need(toks.size() == 4, "expected 'b <index> q=(...) lambda=(...)'", 1);
            need(parse_long(toks[1].first, lineno, toks[1].second) == static_cast<long>(q.size()),
                 "basis elements must be listed in order", toks[1].second);
            need(toks[2].first.rfind("q=", 0) == 0, "expected q=(...)", toks[2].second);
            need(toks[3].first.rfind("lambda=", 0) == 0, "expected lambda=(...)", toks[3].second);
            q.push_back(parse_int_tuple(toks[2].first.substr(2), lineno, toks[2].second));
            res.push_back(parse_int_tuple(toks[3].first.substr(7), lineno, toks[3].second));
        } else if (key == "bracket") {
            need(toks.size() == 6, "expected 'bracket i j k shift=(...) c=<number>'", 1);
            const long i = parse_long(toks[1].first, lineno, toks[1].second);
            const long j = parse_long(toks[2].first, lineno, toks[2].second);
            const long k = parse_long(toks[3].first, lineno, toks[3].second);
            need(i >= 0 && j >= 0 && k >= 0 && i < j, "bracket indices must satisfy 0 <= i < j", toks[1].second);
            need(toks[4].first.rfind("shift=", 0) == 0, "expected shift=(...)", toks[4].second);
            need(toks[5].first.rfind("c=", 0) == 0, "expected c=<number>", toks[5].second);
            BracketTerm t{static_cast<unsigned>(k), {}, parse_int_tuple(toks[4].first.substr(6), lineno, toks[4].second)};
            try {
                t.c = Cyclotomic::parse(toks[5].first.substr(2));
            } catch (const parse_error &e) {
                throw parse_error(e.what(), lineno, toks[5].second);
            }
            brackets.emplace_back(static_cast<unsigned>(i), static_cast<unsigned>(j), std::move(t));
        } else if (key == "end") {
            ended = true;
        } else {
            throw parse_error("unknown directive '" + key + "'", lineno, 1);
        }
    }
    if (!header || !ended) {
        throw parse_error("incomplete graded algebra (missing header or 'end')", lineno, 1);
    }
    if (nvars < 0 || period < 1 || qrank < 0 || size != static_cast<long>(q.size())) {
        throw parse_error("missing or inconsistent nvars/period/qrank/size", lineno, 1);
    }
    const std::size_t n = q.size();
    std::vector<std::vector<BracketTerm>> table(n * n);
    for (auto &[i, j, t] : brackets) {
        if (i >= n || j >= n || t.k >= n) {
            throw parse_error("bracket index out of range", lineno, 1);
        }
        // [b_j, b_i] = -[b_i, b_j]
        BracketTerm neg{t.k, -t.c, t.shift};
        table[i * n + j].push_back(t);
        table[j * n + i].push_back(neg);
    }
    GradedLieAlgebra g(static_cast<unsigned>(nvars), static_cast<unsigned>(period), static_cast<unsigned>(qrank),
                       std::move(q), std::move(res), std::move(table));
    if (base != "-") {
        g.m_base_label = base;
    }
    return g;
}

std::map<Residue, std::vector<std::vector<Cyclotomic>>> simultaneous_eigenspaces(const MultiloopSpec &spec)
{
    const ChevalleyAlgebra &alg = spec.base;
    const unsigned dim = alg.dim(), n = static_cast<unsigned>(spec.sigma.size()), m = spec.m;
    if (m == 0) {
        throw invalid_input("multiloop: order m must be positive");
    }
    for (unsigned j = 0; j < n; ++j) {
        const auto &s = spec.sigma[j];
        if (s.rows() != dim || s.cols() != dim) {
            throw invalid_input("multiloop: sigma_" + std::to_string(j + 1) + " has the wrong size");
        }
        Automorphism p = Automorphism::identity(dim, Cyclotomic{});
        for (unsigned k = 0; k < m; ++k) {
            p = p * s;
        }
        if (!p.is_identity()) {
            throw invalid_input("multiloop: sigma_" + std::to_string(j + 1) + "^" + std::to_string(m)
                                + " is not the identity");
        }
        if (!preserves_bracket(alg, s)) {
            throw invalid_input("multiloop: sigma_" + std::to_string(j + 1) + " is not an automorphism");
        }
        for (unsigned i = 0; i < j; ++i) {
            if (!(spec.sigma[i] * s == s * spec.sigma[i])) {
                throw invalid_input("multiloop: sigma_" + std::to_string(i + 1) + " and sigma_" + std::to_string(j + 1)
                                    + " do not commute");
            }
        }
    }
    std::map<Residue, std::vector<Vec>> blocks;
    {
        std::vector<Vec> all;
        for (unsigned k = 0; k < dim; ++k) {
            all.push_back(basis_vector(alg, k, Cyclotomic(1)));
        }
        blocks[Residue{}] = all;
    }
    for (unsigned j = 0; j < n; ++j) {
        std::map<Residue, std::vector<Vec>> next;
        for (const auto &[r, basis] : blocks) {
            std::size_t total = 0;
            for (unsigned k = 0; k < m; ++k) {
                auto part = eigen_part(spec.sigma[j], root_power(m, k), basis);
                total += part.size();
                Residue rk = r;
                rk.push_back(static_cast<int>(k));
                next[rk] = std::move(part);
            }
            if (total != basis.size()) {
                throw math_error("multiloop: sigma_" + std::to_string(j + 1) + " is not diagonalizable");
            }
        }
        blocks = std::move(next);
    }
    std::map<Residue, std::vector<Vec>> out;
    for (const auto &r : all_residues(n, m)) {
        out[r] = canonical_basis(blocks.count(r) ? blocks[r] : std::vector<Vec>{}, dim);
    }
    return out;
}

GradedLieAlgebra build_multiloop(const MultiloopSpec &spec)
{
    const ChevalleyAlgebra &alg = spec.base;
    const auto spaces = simultaneous_eigenspaces(spec);
    const unsigned n = static_cast<unsigned>(spec.sigma.size()), m = spec.m;
    std::vector<Vec> vecs;
    std::vector<Residue> res;
    std::map<Residue, std::vector<unsigned>> members;
    for (const auto &[r, basis] : spaces) {
        for (const auto &v : basis) {
            members[r].push_back(static_cast<unsigned>(vecs.size()));
            vecs.push_back(v);
            res.push_back(r);
        }
    }
    const unsigned size = static_cast<unsigned>(vecs.size());
    if (size != alg.dim()) {
        throw math_error("multiloop: eigenspaces do not span the algebra");
    }
    // pivot column of each canonical basis row
    std::vector<unsigned> pivot(size);
    for (unsigned k = 0; k < size; ++k) {
        unsigned p = 0;
        while (vecs[k][p].is_zero()) {
            ++p;
        }
        pivot[k] = p;
    }
    std::vector<std::vector<BracketTerm>> table(static_cast<std::size_t>(size) * size);
    for (unsigned i = 0; i < size; ++i) {
        for (unsigned j = 0; j < size; ++j) {
            const Vec w = bracket(alg, vecs[i], vecs[j]);
            if (is_zero_vec(w)) {
                continue;
            }
            const Residue r = add_mod(res[i], res[j], m);
            Exponent shift(n);
            for (unsigned v = 0; v < n; ++v) {
                shift[v] = (res[i][v] + res[j][v] - r[v]) / static_cast<int>(m);
            }
            Vec check(alg.dim());
            for (unsigned k : members[r]) {
                const Cyclotomic c = w[pivot[k]];
                if (c.is_zero()) {
                    continue;
                }
                table[i * size + j].push_back({k, c.normalized(), shift});
                for (unsigned x = 0; x < alg.dim(); ++x) {
                    check[x] += c * vecs[k][x];
                }
            }
            for (unsigned x = 0; x < alg.dim(); ++x) {
                if (!(check[x] == w[x])) {
                    throw math_error("multiloop: bracket leaves its eigenspace");
                }
            }
        }
    }
    GradedLieAlgebra g(n, m, 0, std::vector<Root>(size), res, std::move(table));
    g.set_provenance(alg.root_system().label(), vecs, std::vector<std::vector<Rational>>(size));
    return g;
}

std::vector<Cyclotomic> residue_zero_coordinates(const GradedLieAlgebra &g, const std::vector<Cyclotomic> &x)
{
    if (g.vectors().size() != g.size()) {
        throw invalid_input("residue_zero_coordinates: algebra has no base-algebra coordinates");
    }
    std::vector<unsigned> zero;
    std::vector<Vec> cols;
    for (unsigned k = 0; k < g.size(); ++k) {
        if (std::all_of(g.residue(k).begin(), g.residue(k).end(), [](int r) { return r == 0; })) {
            zero.push_back(k);
            cols.push_back(g.vectors()[k]);
        }
    }
    const auto sol = solve(from_columns(cols, x.size(), Cyclotomic{}), x);
    if (!sol) {
        throw invalid_input("element does not lie in the lambda-degree 0 part");
    }
    Vec out(g.size());
    for (std::size_t i = 0; i < zero.size(); ++i) {
        out[zero[i]] = (*sol)[i];
    }
    return out;
}

GradedLieAlgebra q_grading_from_cartan(const GradedLieAlgebra &g, const std::vector<std::vector<Cyclotomic>> &cartan,
                                       const Matrix<Rational> *transform)
{
    const unsigned n = g.size();
    std::vector<Matrix<Cyclotomic>> ads;
    for (const auto &c : cartan) {
        if (c.size() != n) {
            throw invalid_input("q_grading_from_cartan: element has wrong length");
        }
        for (unsigned k = 0; k < n; ++k) {
            if (!c[k].is_zero()
                && !std::all_of(g.residue(k).begin(), g.residue(k).end(), [](int r) { return r == 0; })) {
                throw invalid_input("q_grading_from_cartan: element is not in the lambda-degree 0 part");
            }
        }
        ads.push_back(graded_ad(g, c));
    }
    for (std::size_t p = 0; p < cartan.size(); ++p) {
        for (std::size_t q = p + 1; q < cartan.size(); ++q) {
            if (!is_zero_vec(ads[p].apply(cartan[q]))) {
                throw invalid_input("q_grading_from_cartan: Cartan elements " + std::to_string(p + 1) + " and "
                                    + std::to_string(q + 1) + " do not commute");
            }
        }
    }
    struct Block
    {
        Residue r;
        std::vector<Rational> w;
        std::vector<Vec> vecs;
    };
    std::vector<Block> blocks;
    for (const auto &[r, dim] : g.residue_dimensions()) {
        Block b{r, {}, {}};
        for (unsigned k = 0; k < n; ++k) {
            if (g.residue(k) == r) {
                Vec e(n);
                e[k] = Cyclotomic(1);
                b.vecs.push_back(std::move(e));
            }
        }
        if (!b.vecs.empty()) {
            blocks.push_back(std::move(b));
        }
    }
    for (std::size_t p = 0; p < ads.size(); ++p) {
        std::vector<Block> next;
        for (const auto &b : blocks) {
            const auto eig = rational_eigenvalues(ads[p], b.vecs);
            std::size_t total = 0;
            for (const auto &lambda : eig) {
                auto part = eigen_part(ads[p], Cyclotomic(lambda), b.vecs);
                if (part.empty()) {
                    continue;
                }
                total += part.size();
                Block nb{b.r, b.w, std::move(part)};
                nb.w.push_back(lambda);
                next.push_back(std::move(nb));
            }
            if (total != b.vecs.size()) {
                throw math_error("q_grading_from_cartan: Cartan element " + std::to_string(p + 1)
                                 + " is not diagonalizable on lambda-residue " + residue_str(b.r));
            }
        }
        blocks = std::move(next);
    }
    for (auto &b : blocks) {
        b.vecs = canonical_basis(b.vecs, n);
    }
    std::sort(blocks.begin(), blocks.end(), [](const Block &a, const Block &b) {
        if (a.r != b.r) {
            return a.r < b.r;
        }
        return a.w > b.w;
    });

    // q-degrees from the nonzero weights
    std::vector<std::vector<Rational>> nonzero;
    for (const auto &b : blocks) {
        if (std::any_of(b.w.begin(), b.w.end(), [](const Rational &x) { return !x.is_zero(); })) {
            nonzero.push_back(b.w);
        }
    }
    std::vector<std::vector<Rational>> mapped = nonzero;
    if (transform) {
        for (auto &w : mapped) {
            w = transform->apply(w);
        }
    }
    std::vector<Root> coords;
    const RootSystem rs = root_system_from_weights(mapped, coords);
    std::map<std::vector<Rational>, Root> q_of;
    for (std::size_t i = 0; i < nonzero.size(); ++i) {
        q_of[nonzero[i]] = coords[i];
    }
    const unsigned qrank = rs.rank();

    std::vector<Vec> newvecs;
    std::vector<Root> q;
    std::vector<Residue> res;
    std::vector<std::vector<Rational>> weights;
    for (const auto &b : blocks) {
        const auto it = q_of.find(b.w);
        for (const auto &v : b.vecs) {
            newvecs.push_back(v);
            q.push_back(it == q_of.end() ? Root(qrank, 0) : it->second);
            res.push_back(b.r);
            weights.push_back(b.w);
        }
    }
    // change of basis: column i of p holds new b_i in old coordinates
    const Matrix<Cyclotomic> p = from_columns(newvecs, n, Cyclotomic{});
    const Matrix<Cyclotomic> pinv = inverse(p);
    const int m = static_cast<int>(g.period());
    std::vector<std::vector<BracketTerm>> table(static_cast<std::size_t>(n) * n);
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) {
            Vec acc(n);
            for (unsigned a = 0; a < n; ++a) {
                if (newvecs[i][a].is_zero()) {
                    continue;
                }
                for (unsigned b = 0; b < n; ++b) {
                    if (newvecs[j][b].is_zero()) {
                        continue;
                    }
                    const Cyclotomic f = newvecs[i][a] * newvecs[j][b];
                    for (const auto &t : g.bracket(a, b)) {
                        acc[t.k] += f * t.c;
                    }
                }
            }
            if (is_zero_vec(acc)) {
                continue;
            }
            const Vec out = pinv.apply(acc);
            for (unsigned k = 0; k < n; ++k) {
                if (out[k].is_zero()) {
                    continue;
                }
                Exponent shift(g.nvars());
                for (unsigned v = 0; v < g.nvars(); ++v) {
                    shift[v] = (res[i][v] + res[j][v] - res[k][v]) / m;
                }
                table[i * n + j].push_back({k, out[k].normalized(), shift});
            }
        }
    }
    GradedLieAlgebra out(g.nvars(), g.period(), qrank, std::move(q), std::move(res), std::move(table));
    std::vector<Vec> basevecs;
    if (g.vectors().size() == n) {
        for (const auto &v : newvecs) {
            Vec bv(g.vectors()[0].size());
            for (unsigned a = 0; a < n; ++a) {
                if (v[a].is_zero()) {
                    continue;
                }
                for (std::size_t x = 0; x < bv.size(); ++x) {
                    bv[x] += v[a] * g.vectors()[a][x];
                }
            }
            for (auto &c : bv) {
                c = c.normalized();
            }
            basevecs.push_back(std::move(bv));
        }
    }
    out.set_provenance(g.base_label(), std::move(basevecs), std::move(weights));
    std::vector<Vec> torus;
    for (const auto &c : cartan) {
        Vec t = pinv.apply(c);
        for (auto &x : t) {
            x = x.normalized();
        }
        torus.push_back(std::move(t));
    }
    out.set_torus(std::move(torus));
    std::string witness;
    if (!out.grading_compatible(&witness)) {
        throw math_error("q_grading_from_cartan: " + witness);
    }
    return out;
}

std::vector<std::vector<Cyclotomic>> auto_cartan(const GradedLieAlgebra &g)
{
    const unsigned n = g.size();
    std::vector<Vec> chosen;
    std::vector<Matrix<Cyclotomic>> ads;
    for (unsigned k = 0; k < n; ++k) {
        if (!std::all_of(g.residue(k).begin(), g.residue(k).end(), [](int r) { return r == 0; })) {
            continue;
        }
        Vec x(n);
        x[k] = Cyclotomic(1);
        const auto ad = graded_ad(g, x);
        bool commutes = true;
        for (const auto &c : chosen) {
            commutes = commutes && is_zero_vec(ad.apply(c));
        }
        if (!commutes || ad.is_zero()) {
            continue;
        }
        std::vector<Vec> all;
        for (unsigned j = 0; j < n; ++j) {
            Vec e(n);
            e[j] = Cyclotomic(1);
            all.push_back(std::move(e));
        }
        try {
            rational_eigenvalues(ad, all);
        } catch (const math_error &) {
            continue;
        }
        chosen.push_back(std::move(x));
    }
    return chosen;
}

bool RelativeGrading::contains(const Root &a) const
{
    return coords.count(a) > 0;
}

SignHeight RelativeGrading::sign_height(const Root &a) const
{
    const auto it = coords.find(a);
    if (it == coords.end()) {
        throw invalid_input("relative root " + root_str(a) + " is not in Phi");
    }
    return height_and_sign(data, it->second);
}

std::vector<Root> RelativeGrading::positive() const
{
    std::vector<std::pair<int, Root>> tagged;
    for (const auto &a : phi) {
        const int idx = data.system().index_of(coords.at(a));
        if (idx < static_cast<int>(data.system().roots().size() / 2)) {
            tagged.emplace_back(idx, a);
        }
    }
    std::sort(tagged.begin(), tagged.end());
    std::vector<Root> out;
    for (auto &[i, a] : tagged) {
        out.push_back(a);
    }
    return out;
}

std::vector<Root> RelativeGrading::negative() const
{
    std::vector<Root> out;
    for (const auto &a : positive()) {
        out.push_back(-a);
    }
    return out;
}

std::vector<unsigned> RelativeGrading::root_space(const Root &a) const
{
    std::vector<unsigned> out;
    for (unsigned k = 0; k < algebra.size(); ++k) {
        if (algebra.q(k) == a) {
            out.push_back(k);
        }
    }
    return out;
}

RelativeGrading relative_roots(const GradedLieAlgebra &g)
{
    RelativeGrading rg;
    rg.algebra = g;
    std::set<Root> phi;
    for (unsigned k = 0; k < g.size(); ++k) {
        const Root &q = g.q(k);
        if (std::any_of(q.begin(), q.end(), [](int c) { return c != 0; })) {
            phi.insert(q);
        }
    }
    rg.phi.assign(phi.begin(), phi.end());
    std::vector<std::vector<Rational>> weights;
    for (const auto &a : rg.phi) {
        std::vector<Rational> w;
        for (int c : a) {
            w.push_back(Rational(c));
        }
        weights.push_back(std::move(w));
    }
    std::vector<Root> coords;
    rg.data = RelativeRootData(root_system_from_weights(weights, coords));
    for (std::size_t i = 0; i < rg.phi.size(); ++i) {
        rg.coords[rg.phi[i]] = coords[i];
    }
    return rg;
}

std::pair<std::vector<Root>, std::vector<Root>> opposite_unipotent_pair(const RelativeGrading &rg)
{
    if (rg.phi.empty()) {
        throw math_error("anisotropic: no proper parabolic");
    }
    return {rg.positive(), rg.negative()};
}

std::vector<ComponentInfo> component_report(const RelativeGrading &rg)
{
    const RootSystem &rs = rg.data.system();
    std::vector<ComponentInfo> out;
    if (rs.roots().empty()) {
        return out;
    }
    const std::string labels = classify(rs);
    std::vector<std::string> parts;
    std::stringstream ss(labels);
    std::string item;
    while (std::getline(ss, item, 'x')) {
        parts.push_back(item);
    }
    std::map<Root, Root> back;
    for (const auto &[a, c] : rg.coords) {
        back[c] = a;
    }
    const auto comps = rs.components();
    for (std::size_t i = 0; i < comps.size(); ++i) {
        ComponentInfo info{i < parts.size() ? parts[i] : "relative", static_cast<unsigned>(comps[i].size()), {}};
        const std::set<unsigned> in(comps[i].begin(), comps[i].end());
        for (const auto &r : rs.roots()) {
            bool inside = true;
            for (unsigned j = 0; j < rs.rank(); ++j) {
                inside = inside && (r[j] == 0 || in.count(j));
            }
            if (inside) {
                info.roots.push_back(back.at(r));
            }
        }
        out.push_back(std::move(info));
    }
    return out;
}

std::map<Residue, unsigned> base_change_dimensions(const GradedLieAlgebra &g)
{
    // after adjoining the m-th roots every b_k y^w sits in its own degree
    // r_k + m w, so each degree of the residue lattice is hit once per b_k
    std::map<Residue, unsigned> d;
    for (const auto &lambda : all_residues(g.nvars(), g.period())) {
        d[lambda] = g.size();
    }
    return d;
}

MultiloopFile parse_multiloop(std::string_view text)
{
    MultiloopFile f;
    std::istringstream in{std::string(text)};
    std::vector<std::string> lines;
    for (std::string raw; std::getline(in, raw);) {
        lines.push_back(raw);
    }
    bool have_type = false, have_cartan = false;
    long n = -1, m = -1;
    std::vector<std::pair<std::vector<std::pair<std::string, int>>, int>> sigma_lines;
    std::vector<std::vector<std::string>> sigma_matrix_rows;
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const int lineno = static_cast<int>(li) + 1;
        const std::string line = lines[li].substr(0, lines[li].find('#'));
        const auto toks = tokenize(line);
        if (toks.empty()) {
            continue;
        }
        const std::string &key = toks[0].first;
        auto need = [&](bool cond, const std::string &msg, int col) {
            if (!cond) {
                throw parse_error(msg, lineno, col);
            }
        };
        if (key == "type") {
            need(toks.size() == 3, "expected 'type <letter> <rank>'", 1);
            const long r = parse_long(toks[2].first, lineno, toks[2].second);
            need(r > 0, "rank must be positive", toks[2].second);
            try {
                f.spec.base = build_chevalley(build_root_system(toks[1].first, static_cast<unsigned>(r)));
            } catch (const invalid_input &e) {
                throw parse_error(e.what(), lineno, toks[1].second);
            } catch (const math_error &e) {
                throw parse_error(e.what(), lineno, toks[1].second);
            }
            have_type = true;
        } else if (key == "n" || key == "m") {
            need(toks.size() == 2, "expected one value after '" + key + "'", 1);
            const long v = parse_long(toks[1].first, lineno, toks[1].second);
            need(key == "n" ? v >= 0 : v >= 1, "value out of range", toks[1].second);
            (key == "n" ? n : m) = v;
        } else if (key == "sigma") {
            need(have_type, "'sigma' before 'type'", 1);
            need(toks.size() >= 2, "missing automorphism kind", 1);
            // matrix rows follow on the next lines
            std::vector<std::pair<std::string, int>> rest(toks.begin() + 1, toks.end());
            sigma_lines.emplace_back(rest, lineno);
            std::vector<std::string> rows;
            for (const auto &t : rest) {
                if (t.first == "matrix") {
                    for (unsigned r = 0; r < f.spec.base.dim(); ++r) {
                        need(li + 1 < lines.size(), "matrix needs " + std::to_string(f.spec.base.dim()) + " rows", 1);
                        rows.push_back(lines[++li]);
                    }
                }
            }
            sigma_matrix_rows.push_back(std::move(rows));
        } else if (key == "cartan") {
            need(toks.size() >= 2, "expected 'cartan auto|none|h ...'", 1);
            const std::string &mode = toks[1].first;
            if (mode == "auto" || mode == "none") {
                need(!have_cartan && toks.size() == 2, "conflicting cartan directives", 1);
                f.cartan_mode = mode == "auto" ? MultiloopFile::CartanMode::automatic : MultiloopFile::CartanMode::none;
            } else if (mode == "h") {
                need(have_type, "'cartan' before 'type'", 1);
                need(!have_cartan || f.cartan_mode == MultiloopFile::CartanMode::explicit_h,
                     "conflicting cartan directives", 1);
                need(toks.size() == 2 + f.spec.base.rank(),
                     "expected " + std::to_string(f.spec.base.rank()) + " coefficients", 1);
                std::vector<Rational> c;
                for (std::size_t i = 2; i < toks.size(); ++i) {
                    try {
                        c.push_back(Rational::parse(toks[i].first));
                    } catch (const parse_error &) {
                        throw parse_error("bad coefficient '" + toks[i].first + "'", lineno, toks[i].second);
                    }
                }
                f.cartan_mode = MultiloopFile::CartanMode::explicit_h;
                f.cartan_h.push_back(std::move(c));
            } else {
                throw parse_error("unknown cartan mode '" + mode + "'", lineno, toks[1].second);
            }
            have_cartan = true;
        } else {
            throw parse_error("unknown directive '" + key + "'", lineno, 1);
        }
    }
    if (!have_type) {
        throw parse_error("missing 'type' line", static_cast<int>(lines.size()), 1);
    }
    const ChevalleyAlgebra &alg = f.spec.base;
    const unsigned r = alg.rank();
    f.spec.m = m < 0 ? 1 : static_cast<unsigned>(m);
    if (n >= 0 && static_cast<std::size_t>(n) != sigma_lines.size()) {
        throw parse_error("n = " + std::to_string(n) + " but " + std::to_string(sigma_lines.size())
                              + " sigma lines given",
                          static_cast<int>(lines.size()), 1);
    }
    for (std::size_t s = 0; s < sigma_lines.size(); ++s) {
        const auto &[toks, lineno] = sigma_lines[s];
        Automorphism total = Automorphism::identity(alg.dim(), Cyclotomic{});
        std::size_t i = 0, matrix_used = 0;
        while (i < toks.size()) {
            const std::string kind = toks[i].first;
            const int col = toks[i].second;
            std::vector<std::pair<std::string, int>> args;
            ++i;
            while (i < toks.size() && toks[i].first != "*") {
                args.push_back(toks[i]);
                ++i;
            }
            if (i < toks.size()) {
                ++i;
            }
            Automorphism a;
            try {
                if (kind == "identity") {
                    if (!args.empty()) {
                        throw parse_error("identity takes no arguments", lineno, col);
                    }
                    a = Automorphism::identity(alg.dim(), Cyclotomic{});
                } else if (kind == "diagram") {
                    if (args.size() != r) {
                        throw parse_error("diagram needs " + std::to_string(r) + " entries", lineno, col);
                    }
                    std::vector<unsigned> pi;
                    for (const auto &t : args) {
                        const long v = parse_long(t.first, lineno, t.second);
                        if (v < 1 || v > static_cast<long>(r)) {
                            throw parse_error("diagram entry out of range", lineno, t.second);
                        }
                        pi.push_back(static_cast<unsigned>(v - 1));
                    }
                    a = diagram_automorphism(alg, pi);
                } else if (kind == "torus") {
                    if (args.size() != r) {
                        throw parse_error("torus needs " + std::to_string(r) + " values", lineno, col);
                    }
                    std::vector<Cyclotomic> vals;
                    for (const auto &t : args) {
                        try {
                            vals.push_back(Cyclotomic::parse(t.first));
                        } catch (const parse_error &) {
                            throw parse_error("bad torus value '" + t.first + "'", lineno, t.second);
                        }
                    }
                    a = torus_automorphism(alg, vals);
                } else if (kind == "chevalley") {
                    a = chevalley_involution(alg);
                } else if (kind == "matrix") {
                    const auto &rows = sigma_matrix_rows[s];
                    a = Automorphism(alg.dim(), alg.dim(), Cyclotomic{});
                    for (unsigned row = 0; row < alg.dim(); ++row) {
                        const int rl = lineno + static_cast<int>(matrix_used * alg.dim() + row) + 1;
                        const auto entries = tokenize(rows[matrix_used * alg.dim() + row]);
                        if (entries.size() != alg.dim()) {
                            throw parse_error("matrix row needs " + std::to_string(alg.dim()) + " entries", rl, 1);
                        }
                        for (unsigned c = 0; c < alg.dim(); ++c) {
                            try {
                                a(row, c) = Cyclotomic::parse(entries[c].first);
                            } catch (const parse_error &) {
                                throw parse_error("bad matrix entry '" + entries[c].first + "'", rl, entries[c].second);
                            }
                        }
                    }
                    ++matrix_used;
                } else {
                    throw parse_error("unknown automorphism kind '" + kind + "'", lineno, col);
                }
            } catch (const invalid_input &e) {
                throw parse_error(e.what(), lineno, col);
            } catch (const math_error &e) {
                throw parse_error(e.what(), lineno, col);
            }
            total = total * a;
        }
        f.spec.sigma.push_back(std::move(total));
    }
    return f;
}

GradedLieAlgebra build_from_file(const MultiloopFile &file)
{
    const GradedLieAlgebra g = build_multiloop(file.spec);
    const ChevalleyAlgebra &alg = file.spec.base;
    std::vector<Vec> cartan;
    switch (file.cartan_mode) {
    case MultiloopFile::CartanMode::none:
        break;
    case MultiloopFile::CartanMode::automatic:
        cartan = auto_cartan(g);
        break;
    case MultiloopFile::CartanMode::explicit_h:
        for (const auto &c : file.cartan_h) {
            Vec x(alg.dim());
            for (unsigned i = 0; i < alg.rank(); ++i) {
                x[alg.cartan_index(i)] = Cyclotomic(c[i]);
            }
            cartan.push_back(residue_zero_coordinates(g, x));
        }
        break;
    }
    // When the elements are r elements of the Chevalley Cartan with
    // coefficient matrix A, the weight of e_delta is w = A C^T delta; mapping
    // w back to delta keeps the base algebra's positive roots and simple-root
    // order.
    const unsigned r = alg.rank();
    std::optional<Matrix<Rational>> transform;
    if (cartan.size() == r) {
        Matrix<Rational> a(r, r, Rational{});
        bool in_cartan = true;
        for (unsigned p = 0; p < r && in_cartan; ++p) {
            Vec x(alg.dim());
            for (unsigned k = 0; k < g.size(); ++k) {
                if (cartan[p][k].is_zero()) {
                    continue;
                }
                for (unsigned y = 0; y < alg.dim(); ++y) {
                    x[y] += cartan[p][k] * g.vectors()[k][y];
                }
            }
            for (unsigned y = 0; y < alg.dim() && in_cartan; ++y) {
                if (alg.is_cartan(y)) {
                    in_cartan = x[y].is_rational();
                    if (in_cartan) {
                        a(p, y - alg.cartan_index(0)) = x[y].rational_part();
                    }
                } else {
                    in_cartan = x[y].is_zero();
                }
            }
        }
        if (in_cartan) {
            const auto c = alg.root_system().cartan_matrix();
            Matrix<Rational> act(r, r, Rational{});
            for (unsigned p = 0; p < r; ++p) {
                for (unsigned k = 0; k < r; ++k) {
                    Rational s;
                    for (unsigned i = 0; i < r; ++i) {
                        s += a(p, i) * Rational(c[k][i]);
                    }
                    act(p, k) = s;
                }
            }
            if (rank(act) == r) {
                transform = inverse(act);
            }
        }
    }
    return q_grading_from_cartan(g, cartan, transform ? &*transform : nullptr);
}

} // namespace loopk
