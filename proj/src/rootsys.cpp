#include <loopk/errors.hpp>
#include <loopk/rootsys.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace loopk
{

Root operator+(const Root &a, const Root &b)
{
    if (a.size() != b.size()) {
        throw invalid_input("root length mismatch");
    }
    Root r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] + b[i];
    }
    return r;
}

Root operator-(const Root &a)
{
    return scaled(a, -1);
}

Root scaled(const Root &a, int k)
{
    Root r(a);
    for (auto &x : r) {
        x *= k;
    }
    return r;
}

std::string root_str(const Root &r)
{
    std::string s = "(";
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i > 0) {
            s += ',';
        }
        s += std::to_string(r[i]);
    }
    return s + ")";
}

namespace
{

int height(const Root &r)
{
    int h = 0;
    for (int c : r) {
        h += c;
    }
    return h;
}

bool is_positive(const Root &r)
{
    bool nonzero = false;
    for (int c : r) {
        if (c < 0) {
            return false;
        }
        nonzero = nonzero || c != 0;
    }
    return nonzero;
}

// height ascending, then reverse-lexicographic
bool canonical_less(const Root &a, const Root &b)
{
    const int ha = height(a), hb = height(b);
    if (ha != hb) {
        return ha < hb;
    }
    return a > b;
}

bool is_all_zero(const Root &r)
{
    return std::all_of(r.begin(), r.end(), [](int c) { return c == 0; });
}

Matrix<Rational> gram_for(char type, unsigned r)
{
    Matrix<Rational> g(r, r, Rational{});
    auto edge = [&](unsigned i, unsigned j, long v) {
        g(i, j) = Rational(v);
        g(j, i) = Rational(v);
    };
    switch (type) {
    case 'A':
        for (unsigned i = 0; i < r; ++i) {
            g(i, i) = Rational(2);
            if (i + 1 < r) {
                edge(i, i + 1, -1);
            }
        }
        break;
    case 'B':
        // long roots have squared length 4, the last simple root is short
        for (unsigned i = 0; i < r; ++i) {
            g(i, i) = Rational(i + 1 < r ? 4 : 2);
            if (i + 1 < r) {
                edge(i, i + 1, -2);
            }
        }
        break;
    case 'C':
        for (unsigned i = 0; i < r; ++i) {
            g(i, i) = Rational(i + 1 < r ? 2 : 4);
            if (i + 2 < r) {
                edge(i, i + 1, -1);
            } else if (i + 1 < r) {
                edge(i, i + 1, -2);
            }
        }
        break;
    case 'D':
        for (unsigned i = 0; i < r; ++i) {
            g(i, i) = Rational(2);
        }
        for (unsigned i = 0; i + 2 < r; ++i) {
            edge(i, i + 1, -1);
        }
        edge(r - 3, r - 1, -1);
        break;
    case 'E':
        for (unsigned i = 0; i < r; ++i) {
            g(i, i) = Rational(2);
        }
        edge(0, 2, -1);
        edge(1, 3, -1);
        for (unsigned i = 2; i + 1 < r; ++i) {
            edge(i, i + 1, -1);
        }
        break;
    case 'F':
        g(0, 0) = Rational(4);
        g(1, 1) = Rational(4);
        g(2, 2) = Rational(2);
        g(3, 3) = Rational(2);
        edge(0, 1, -2);
        edge(1, 2, -2);
        edge(2, 3, -1);
        break;
    case 'G':
        g(0, 0) = Rational(2);
        g(1, 1) = Rational(6);
        edge(0, 1, -3);
        break;
    default:
        throw invalid_input(std::string("unknown root system type ") + type);
    }
    return g;
}

// Positive roots of a reduced system from its Cartan matrix, via root strings:
// for beta positive with beta - p alpha_i the bottom of the alpha_i-string,
// beta + alpha_i is a root iff p - <beta, alpha_i^vee> > 0.
std::vector<Root> positive_roots_from_cartan(const std::vector<std::vector<int>> &cartan)
{
    const unsigned r = static_cast<unsigned>(cartan.size());
    std::set<Root> found;
    std::deque<Root> queue;
    for (unsigned i = 0; i < r; ++i) {
        Root e(r, 0);
        e[i] = 1;
        found.insert(e);
        queue.push_back(e);
    }
    while (!queue.empty()) {
        const Root beta = queue.front();
        queue.pop_front();
        for (unsigned i = 0; i < r; ++i) {
            int p = 0;
            Root down = beta;
            while (true) {
                down[i] -= 1;
                if (!found.count(down)) {
                    break;
                }
                ++p;
            }
            int pair = 0;
            for (unsigned j = 0; j < r; ++j) {
                pair += beta[j] * cartan[j][i];
            }
            if (p - pair > 0) {
                Root up = beta;
                up[i] += 1;
                if (found.insert(up).second) {
                    queue.push_back(up);
                }
            }
        }
    }
    return {found.begin(), found.end()};
}

std::vector<std::vector<int>> cartan_from_gram(const Matrix<Rational> &g)
{
    const std::size_t r = g.rows();
    std::vector<std::vector<int>> c(r, std::vector<int>(r));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            c[i][j] = static_cast<int>((Rational(2) * g(i, j) / g(j, j)).to_int());
        }
    }
    return c;
}

} // namespace

RootSystem::RootSystem(std::string label, unsigned rank, std::vector<Root> roots, Matrix<Rational> gram)
    : m_label(std::move(label)), m_rank(rank), m_gram(std::move(gram))
{
    if (m_gram.rows() != rank || m_gram.cols() != rank) {
        throw invalid_input("RootSystem: Gram matrix has wrong shape");
    }
    std::set<Root> all;
    for (auto &r : roots) {
        if (r.size() != rank) {
            throw invalid_input("RootSystem: root " + root_str(r) + " has wrong length");
        }
        if (is_all_zero(r)) {
            throw invalid_input("RootSystem: the zero vector is not a root");
        }
        if (!is_positive(r) && !is_positive(-r)) {
            throw invalid_input("RootSystem: root " + root_str(r) + " has mixed-sign coordinates");
        }
        all.insert(r);
    }
    std::vector<Root> pos;
    for (const auto &r : all) {
        if (!all.count(-r)) {
            throw invalid_input("RootSystem: " + root_str(r) + " is a root but its negative is not");
        }
        if (is_positive(r)) {
            pos.push_back(r);
        }
    }
    std::sort(pos.begin(), pos.end(), canonical_less);
    m_roots = pos;
    for (const auto &r : pos) {
        m_roots.push_back(-r);
    }
    for (std::size_t i = 0; i < m_roots.size(); ++i) {
        m_index.emplace(m_roots[i], static_cast<int>(i));
    }
    for (const auto &a : pos) {
        if (inner(a, a).sign() <= 0) {
            throw invalid_input("RootSystem: form is not positive on " + root_str(a));
        }
        for (const auto &b : m_roots) {
            const Rational p = Rational(2) * inner(b, a) / inner(a, a);
            if (!p.is_integer() || std::labs(p.to_int()) > 4) {
                throw invalid_input("RootSystem: pairing <" + root_str(b) + ", " + root_str(a) + "^v> = " + p.str()
                                    + " is not an integer in [-4, 4]");
            }
        }
    }
}

std::vector<Root> RootSystem::positive_roots() const
{
    return {m_roots.begin(), m_roots.begin() + static_cast<long>(m_roots.size() / 2)};
}

bool RootSystem::contains(const Root &r) const
{
    return m_index.count(r) > 0;
}

int RootSystem::index_of(const Root &r) const
{
    auto it = m_index.find(r);
    return it == m_index.end() ? -1 : it->second;
}

Rational RootSystem::inner(const Root &a, const Root &b) const
{
    Rational s;
    for (unsigned i = 0; i < m_rank; ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (unsigned j = 0; j < m_rank; ++j) {
            if (b[j] != 0) {
                s += Rational(a[i] * b[j]) * m_gram(i, j);
            }
        }
    }
    return s;
}

int RootSystem::pairing(const Root &beta, const Root &alpha) const
{
    const Rational p = Rational(2) * inner(beta, alpha) / inner(alpha, alpha);
    if (!p.is_integer()) {
        throw math_error("pairing " + root_str(beta) + " with " + root_str(alpha) + " is not integral");
    }
    return static_cast<int>(p.to_int());
}

std::vector<std::vector<int>> RootSystem::cartan_matrix() const
{
    return cartan_from_gram(m_gram);
}

bool RootSystem::is_reduced() const
{
    for (const auto &r : m_roots) {
        if (contains(scaled(r, 2))) {
            return false;
        }
    }
    return true;
}

std::vector<std::vector<unsigned>> RootSystem::components() const
{
    std::vector<int> comp(m_rank, -1);
    std::vector<std::vector<unsigned>> out;
    for (unsigned s = 0; s < m_rank; ++s) {
        if (comp[s] >= 0) {
            continue;
        }
        std::vector<unsigned> members;
        std::deque<unsigned> q{s};
        comp[s] = static_cast<int>(out.size());
        while (!q.empty()) {
            const unsigned i = q.front();
            q.pop_front();
            members.push_back(i);
            for (unsigned j = 0; j < m_rank; ++j) {
                if (comp[j] < 0 && !m_gram(i, j).is_zero()) {
                    comp[j] = static_cast<int>(out.size());
                    q.push_back(j);
                }
            }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

RootSystem RootSystem::embedded(unsigned r) const
{
    if (r < m_rank) {
        throw invalid_input("RootSystem::embedded: target rank too small");
    }
    std::vector<Root> roots;
    for (auto root : m_roots) {
        root.resize(r, 0);
        roots.push_back(std::move(root));
    }
    Matrix<Rational> g(r, r, Rational{});
    for (unsigned i = 0; i < r; ++i) {
        for (unsigned j = 0; j < r; ++j) {
            g(i, j) = i < m_rank && j < m_rank ? m_gram(i, j) : Rational(i == j ? 2 : 0);
        }
    }
    return RootSystem(m_label, r, std::move(roots), std::move(g));
}

std::string RootSystem::str() const
{
    std::ostringstream os;
    os << m_label << " rank=" << m_rank << " roots=";
    for (std::size_t i = 0; i < m_roots.size(); ++i) {
        os << (i ? " " : "") << root_str(m_roots[i]);
    }
    return os.str();
}

RootSystem build_root_system(std::string_view type, unsigned rank)
{
    const std::string t(type);
    const std::string label = t + std::to_string(rank);
    const bool ok = (t == "A" && rank >= 1) || (t == "B" && rank >= 2) || (t == "C" && rank >= 3)
                    || (t == "D" && rank >= 4) || (t == "E" && rank >= 6 && rank <= 8) || (t == "F" && rank == 4)
                    || (t == "G" && rank == 2) || (t == "BC" && rank >= 1);
    if (!ok) {
        throw invalid_input("invalid root system type " + label);
    }
    const char base = t == "BC" ? (rank == 1 ? 'A' : 'B') : t[0];
    Matrix<Rational> gram = gram_for(base, rank);
    std::vector<Root> pos = positive_roots_from_cartan(cartan_from_gram(gram));
    if (t == "BC") {
        // double every short root
        Rational shortest;
        RootSystem tmp(label, rank, [&] {
            std::vector<Root> all = pos;
            for (const auto &r : pos) {
                all.push_back(-r);
            }
            return all;
        }(), gram);
        for (const auto &r : pos) {
            const Rational n = tmp.inner(r, r);
            if (shortest.is_zero() || n < shortest) {
                shortest = n;
            }
        }
        const std::size_t count = pos.size();
        for (std::size_t i = 0; i < count; ++i) {
            if (tmp.inner(pos[i], pos[i]) == shortest) {
                pos.push_back(scaled(pos[i], 2));
            }
        }
    }
    std::vector<Root> all = pos;
    for (const auto &r : pos) {
        all.push_back(-r);
    }
    return RootSystem(label, rank, std::move(all), std::move(gram));
}

RootSystem build_root_system(std::string_view label)
{
    // direct sums "X1xY2"
    std::vector<RootSystem> parts;
    std::size_t start = 0;
    while (start <= label.size()) {
        std::size_t end = label.find('x', start);
        if (end == std::string_view::npos) {
            end = label.size();
        }
        const std::string_view piece = label.substr(start, end - start);
        std::size_t k = 0;
        while (k < piece.size() && std::isalpha(static_cast<unsigned char>(piece[k]))) {
            ++k;
        }
        if (k == 0 || k == piece.size()) {
            throw invalid_input("malformed root system label '" + std::string(label) + "'");
        }
        for (std::size_t j = k; j < piece.size(); ++j) {
            if (!std::isdigit(static_cast<unsigned char>(piece[j]))) {
                throw invalid_input("malformed root system label '" + std::string(label) + "'");
            }
        }
        parts.push_back(build_root_system(piece.substr(0, k), static_cast<unsigned>(std::stoul(std::string(piece.substr(k))))));
        start = end + 1;
    }
    if (parts.size() == 1) {
        return parts[0];
    }
    unsigned rank = 0;
    for (const auto &p : parts) {
        rank += p.rank();
    }
    Matrix<Rational> g(rank, rank, Rational{});
    std::vector<Root> roots;
    unsigned off = 0;
    for (const auto &p : parts) {
        for (unsigned i = 0; i < p.rank(); ++i) {
            for (unsigned j = 0; j < p.rank(); ++j) {
                g(off + i, off + j) = p.gram()(i, j);
            }
        }
        for (const auto &r : p.roots()) {
            Root big(rank, 0);
            std::copy(r.begin(), r.end(), big.begin() + off);
            roots.push_back(std::move(big));
        }
        off += p.rank();
    }
    return RootSystem(std::string(label), rank, std::move(roots), std::move(g));
}

std::vector<Root> indivisible_roots(const RootSystem &rs)
{
    std::vector<Root> out;
    for (const auto &r : rs.roots()) {
        bool divisible = true;
        Root half(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (r[i] % 2 != 0) {
                divisible = false;
                break;
            }
            half[i] = r[i] / 2;
        }
        if (!divisible || !rs.contains(half)) {
            out.push_back(r);
        }
    }
    return out;
}

std::string classify(const RootSystem &rs)
{
    if (rs.roots().empty()) {
        return "empty";
    }
    std::string out;
    for (const auto &comp : rs.components()) {
        std::set<unsigned> in(comp.begin(), comp.end());
        std::vector<Root> roots;
        for (const auto &r : rs.roots()) {
            bool inside = true;
            for (unsigned i = 0; i < rs.rank(); ++i) {
                if (r[i] != 0 && !in.count(i)) {
                    inside = false;
                    break;
                }
            }
            if (inside) {
                roots.push_back(r);
            }
        }
        const long r = static_cast<long>(comp.size());
        const long n = static_cast<long>(roots.size());
        long divisible = 0, shortcount = 0;
        Rational shortest;
        for (const auto &x : roots) {
            const Rational len = rs.inner(x, x);
            if (shortest.is_zero() || len < shortest) {
                shortest = len;
            }
        }
        for (const auto &x : roots) {
            if (rs.contains(scaled(x, 2))) {
                ++divisible;
            }
            if (rs.inner(x, x) == shortest) {
                ++shortcount;
            }
        }
        std::string label = "relative";
        if (divisible > 0) {
            if (n == 2 * r * r + 2 * r) {
                label = "BC" + std::to_string(r);
            }
        } else if (n == r * (r + 1)) {
            label = "A" + std::to_string(r);
        } else if (r == 2 && n == 12) {
            label = "G2";
        } else if (r == 4 && n == 48) {
            label = "F4";
        } else if (n == 2 * r * r) {
            label = (shortcount == 2 * r ? "B" : "C") + std::to_string(r);
        } else if (r >= 4 && n == 2 * r * (r - 1)) {
            label = "D" + std::to_string(r);
        } else if ((r == 6 && n == 72) || (r == 7 && n == 126) || (r == 8 && n == 240)) {
            label = "E" + std::to_string(r);
        }
        out += (out.empty() ? "" : "x") + label;
    }
    return out;
}

namespace
{

int lex_sign(const std::vector<Rational> &w)
{
    for (const auto &c : w) {
        if (!c.is_zero()) {
            return c.sign();
        }
    }
    return 0;
}

} // namespace

RootSystem root_system_from_weights(const std::vector<std::vector<Rational>> &weights, std::vector<Root> &coords,
                                    const std::vector<Rational> *functional)
{
    coords.clear();
    if (weights.empty()) {
        return RootSystem("relative", 0, {}, Matrix<Rational>(0, 0, Rational{}));
    }
    const std::size_t dim = weights[0].size();
    std::set<std::vector<Rational>> all(weights.begin(), weights.end());
    std::vector<std::vector<Rational>> pos;
    for (const auto &w : all) {
        int s = lex_sign(w);
        if (s != 0 && functional) {
            Rational f;
            for (std::size_t i = 0; i < dim; ++i) {
                f += (*functional)[i] * w[i];
            }
            if (!f.is_zero()) {
                s = f.sign();
            }
        }
        if (s == 0) {
            throw invalid_input("root_system_from_weights: zero weight");
        }
        if (s > 0) {
            pos.push_back(w);
        }
    }
    std::set<std::vector<Rational>> posset(pos.begin(), pos.end());
    std::vector<std::vector<Rational>> simple;
    for (const auto &w : pos) {
        std::vector<Rational> half(w);
        for (auto &c : half) {
            c *= Rational(1, 2);
        }
        if (all.count(half)) {
            continue;
        }
        bool decomposable = false;
        for (const auto &a : pos) {
            std::vector<Rational> diff(w);
            for (std::size_t i = 0; i < dim; ++i) {
                diff[i] -= a[i];
            }
            if (posset.count(diff)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) {
            simple.push_back(w);
        }
    }
    std::sort(simple.begin(), simple.end(), std::greater<>());
    const unsigned r = static_cast<unsigned>(simple.size());
    const Matrix<Rational> s = from_columns(simple, dim, Rational{});
    if (rank(s) != r) {
        throw math_error("root_system_from_weights: simple weights are linearly dependent");
    }
    std::map<std::vector<Rational>, Root> coord_of;
    for (const auto &w : all) {
        const auto x = solve(s, w);
        if (!x) {
            throw math_error("root_system_from_weights: weight outside the span of the simple weights");
        }
        Root c(r);
        for (unsigned i = 0; i < r; ++i) {
            if (!(*x)[i].is_integer()) {
                throw math_error("root_system_from_weights: non-integral root coordinates");
            }
            c[i] = static_cast<int>((*x)[i].to_int());
        }
        coord_of.emplace(w, std::move(c));
    }
    Matrix<Rational> dual(r, r, Rational{});
    for (const auto &[w, c] : coord_of) {
        for (unsigned i = 0; i < r; ++i) {
            for (unsigned j = 0; j < r; ++j) {
                dual(i, j) += Rational(c[i] * c[j]);
            }
        }
    }
    Matrix<Rational> gram = inverse(dual);
    // rescale so the shortest simple root has squared length 2
    Rational shortest = gram(0, 0);
    for (unsigned i = 1; i < r; ++i) {
        if (gram(i, i) < shortest) {
            shortest = gram(i, i);
        }
    }
    gram *= Rational(2) / shortest;
    std::vector<Root> roots;
    for (const auto &w : weights) {
        coords.push_back(coord_of.at(w));
    }
    for (const auto &[w, c] : coord_of) {
        roots.push_back(c);
    }
    return RootSystem("relative", r, std::move(roots), std::move(gram));
}

RelativeRootData::RelativeRootData(RootSystem rs) : m_system(std::move(rs))
{
    long big = 0;
    for (const auto &r : m_system.roots()) {
        for (int c : r) {
            big = std::max(big, static_cast<long>(std::abs(c)));
        }
    }
    const long m = big + 1;
    m_functional.assign(m_system.rank(), 1);
    for (long i = static_cast<long>(m_system.rank()) - 2; i >= 0; --i) {
        m_functional[static_cast<std::size_t>(i)] = m_functional[static_cast<std::size_t>(i) + 1] * m;
    }
}

long RelativeRootData::evaluate(const Root &r) const
{
    long v = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        v += m_functional[i] * r[i];
    }
    return v;
}

SignHeight height_and_sign(const RelativeRootData &rrd, const Root &root)
{
    if (!rrd.system().contains(root)) {
        throw invalid_input("height_and_sign: " + root_str(root) + " is not a root");
    }
    const long f = rrd.evaluate(root);
    return {f > 0 ? 1 : -1, height(root)};
}

} // namespace loopk
