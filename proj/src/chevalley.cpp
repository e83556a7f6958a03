#include <loopk/chevalley.hpp>

#include <numeric>
#include <sstream>

namespace loopk
{

namespace
{

bool positive(const Root &r)
{
    for (int c : r) {
        if (c != 0) {
            return c > 0;
        }
    }
    return false;
}

bool all_zero(const Root &r)
{
    for (int c : r) {
        if (c != 0) {
            return false;
        }
    }
    return true;
}

} // namespace

ChevalleyAlgebra::ChevalleyAlgebra(RootSystem rs) : m_rs(std::move(rs))
{
    if (!m_rs.is_reduced()) {
        throw math_error("build_chevalley: root system " + m_rs.label() + " is not reduced");
    }
    const unsigned r = m_rs.rank();
    m_npos = static_cast<unsigned>(m_rs.roots().size() / 2);
    m_dim = 2 * m_npos + r;
    m_table.assign(static_cast<std::size_t>(m_dim) * m_dim, {});

    // coroot coefficients: h_d = sum_i k_i (a_i, a_i) / (d, d) h_i
    auto coroot = [&](const Root &d) {
        std::vector<Term> out;
        const Rational dd = m_rs.inner(d, d);
        for (unsigned i = 0; i < r; ++i) {
            if (d[i] == 0) {
                continue;
            }
            const Rational c = Rational(d[i]) * m_rs.gram()(i, i) / dd;
            if (!c.is_integer()) {
                throw math_error("build_chevalley: non-integral coroot coefficient");
            }
            out.push_back({cartan_index(i), c.to_int()});
        }
        return out;
    };

    for (unsigned i = 0; i < m_dim; ++i) {
        for (unsigned j = 0; j < m_dim; ++j) {
            auto &cell = m_table[i * m_dim + j];
            const bool hi = is_cartan(i), hj = is_cartan(j);
            if (hi && hj) {
                continue;
            }
            if (hi || hj) {
                const unsigned h = hi ? i : j, e = hi ? j : i;
                const Root b = weight(e);
                Root simple(r, 0);
                simple[h - m_npos] = 1;
                const long p = m_rs.pairing(b, simple);
                if (p != 0) {
                    cell.push_back({e, hi ? p : -p});
                }
                continue;
            }
            const Root a = weight(i), b = weight(j);
            const Root s = a + b;
            if (all_zero(s)) {
                cell = coroot(a);
            } else if (m_rs.contains(s)) {
                cell.push_back({root_index(s), compute_n(a, b)});
            }
        }
    }

    // Killing form: kappa(b_i, b_j) = sum_k coefficient of b_k in [b_i, [b_j, b_k]]
    m_killing = Matrix<Rational>(m_dim, m_dim, Rational{});
    for (unsigned i = 0; i < m_dim; ++i) {
        for (unsigned j = i; j < m_dim; ++j) {
            long tr = 0;
            for (unsigned k = 0; k < m_dim; ++k) {
                for (const auto &t1 : bracket(j, k)) {
                    for (const auto &t2 : bracket(i, t1.index)) {
                        if (t2.index == k) {
                            tr += t1.coeff * t2.coeff;
                        }
                    }
                }
            }
            m_killing(i, j) = Rational(tr);
            m_killing(j, i) = Rational(tr);
        }
    }
}

unsigned ChevalleyAlgebra::root_index(const Root &r) const
{
    const int k = m_rs.index_of(r);
    if (k < 0) {
        throw invalid_input("root_index: " + root_str(r) + " is not a root");
    }
    const auto u = static_cast<unsigned>(k);
    return u < m_npos ? u : u + rank();
}

Root ChevalleyAlgebra::weight(unsigned i) const
{
    if (i < m_npos) {
        return m_rs.roots()[i];
    }
    if (is_cartan(i)) {
        return Root(rank(), 0);
    }
    return m_rs.roots()[i - rank()];
}

long ChevalleyAlgebra::structure_constant(const Root &a, const Root &b) const
{
    const Root s = a + b;
    if (all_zero(s) || !m_rs.contains(s)) {
        return 0;
    }
    for (const auto &t : bracket(root_index(a), root_index(b))) {
        return t.coeff;
    }
    return 0;
}

long ChevalleyAlgebra::compute_n(const Root &a, const Root &b)
{
    const auto key = std::make_pair(a, b);
    if (auto it = m_n.find(key); it != m_n.end()) {
        return it->second;
    }
    long n;
    const bool pa = positive(a), pb = positive(b);
    if (pa && pb) {
        n = positive_n(a, b);
    } else if (!pa && !pb) {
        n = -positive_n(-a, -b);
    } else {
        // a + b + c = 0: N(a,b)/(c,c) = N(b,c)/(a,a) = N(c,a)/(b,b)
        const Root c = -(a + b);
        Rational v;
        if (positive(c) == pa) {
            v = m_rs.inner(c, c) / m_rs.inner(b, b) * Rational(compute_n(c, a));
        } else {
            v = m_rs.inner(c, c) / m_rs.inner(a, a) * Rational(compute_n(b, c));
        }
        if (!v.is_integer()) {
            throw math_error("build_chevalley: non-integral structure constant");
        }
        n = v.to_int();
    }
    m_n.emplace(key, n);
    return n;
}

long ChevalleyAlgebra::positive_n(const Root &r, const Root &s)
{
    if (m_rs.index_of(s) < m_rs.index_of(r)) {
        return -compute_n(s, r);
    }
    const Root xi = r + s;
    // extraspecial pair: first gamma in root order with xi - gamma positive
    // and gamma preceding xi - gamma
    Root gamma, delta;
    for (const auto &g : m_rs.positive_roots()) {
        const Root d = xi + (-g);
        if (positive(d) && m_rs.contains(d) && m_rs.index_of(g) < m_rs.index_of(d)) {
            gamma = g;
            delta = d;
            break;
        }
    }
    if (gamma == r) {
        long p = 0;
        Root down = s + (-r);
        while (m_rs.contains(down)) {
            ++p;
            down = down + (-r);
        }
        return p + 1;
    }
    Rational sum;
    const Root dr = delta + (-r);
    if (m_rs.contains(dr)) {
        sum += Rational(compute_n(delta, -r) * compute_n(gamma, -s)) / m_rs.inner(dr, dr);
    }
    const Root gr = gamma + (-r);
    if (m_rs.contains(gr)) {
        sum += Rational(compute_n(-r, gamma) * compute_n(delta, -s)) / m_rs.inner(gr, gr);
    }
    const Rational v = m_rs.inner(xi, xi) / Rational(compute_n(gamma, delta)) * sum;
    if (!v.is_integer()) {
        throw math_error("build_chevalley: non-integral structure constant");
    }
    return v.to_int();
}

std::string ChevalleyAlgebra::basis_label(unsigned i) const
{
    if (is_cartan(i)) {
        return "h" + std::to_string(i - m_npos + 1);
    }
    return "e" + root_str(weight(i));
}

bool ChevalleyAlgebra::jacobi_holds(unsigned *witness) const
{
    std::vector<long> acc(m_dim);
    for (unsigned i = 0; i < m_dim; ++i) {
        for (unsigned j = i + 1; j < m_dim; ++j) {
            for (unsigned k = j + 1; k < m_dim; ++k) {
                std::fill(acc.begin(), acc.end(), 0);
                const unsigned x[3] = {i, j, k};
                for (int c = 0; c < 3; ++c) {
                    const unsigned a = x[c], b = x[(c + 1) % 3], z = x[(c + 2) % 3];
                    for (const auto &t1 : bracket(a, b)) {
                        for (const auto &t2 : bracket(t1.index, z)) {
                            acc[t2.index] += t1.coeff * t2.coeff;
                        }
                    }
                }
                for (long v : acc) {
                    if (v != 0) {
                        if (witness) {
                            witness[0] = i;
                            witness[1] = j;
                            witness[2] = k;
                        }
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

std::string ChevalleyAlgebra::str() const
{
    std::ostringstream os;
    os << "chevalley " << m_rs.label() << " dim=" << m_dim << "\n";
    os << "basis";
    for (unsigned i = 0; i < m_dim; ++i) {
        os << ' ' << basis_label(i);
    }
    os << "\n";
    for (unsigned i = 0; i < m_dim; ++i) {
        for (unsigned j = i + 1; j < m_dim; ++j) {
            for (const auto &t : bracket(i, j)) {
                os << '(' << i << ", " << j << ", " << t.index << ", " << t.coeff << ")\n";
            }
        }
    }
    return os.str();
}

ChevalleyAlgebra build_chevalley(const RootSystem &rs)
{
    ChevalleyAlgebra alg(rs);
    unsigned w[3];
    if (!alg.jacobi_holds(w)) {
        throw math_error("build_chevalley: Jacobi identity fails on " + alg.basis_label(w[0]) + ", "
                         + alg.basis_label(w[1]) + ", " + alg.basis_label(w[2]));
    }
    return alg;
}

bool preserves_killing(const ChevalleyAlgebra &alg, const Automorphism &phi)
{
    const Matrix<Cyclotomic> k = alg.killing_form().map(Cyclotomic{}, [](const Rational &q) { return Cyclotomic(q); });
    Matrix<Cyclotomic> t(phi.cols(), phi.rows(), Cyclotomic{});
    for (std::size_t i = 0; i < phi.rows(); ++i) {
        for (std::size_t j = 0; j < phi.cols(); ++j) {
            t(j, i) = phi(i, j);
        }
    }
    return t * k * phi == k;
}

unsigned automorphism_order(const Automorphism &phi, unsigned bound)
{
    Automorphism p = phi;
    for (unsigned k = 1; k <= bound; ++k) {
        if (p.is_identity()) {
            return k;
        }
        p = p * phi;
    }
    return 0;
}

Automorphism automorphism_from_generators(const ChevalleyAlgebra &alg, const std::vector<std::vector<Cyclotomic>> &E,
                                          const std::vector<std::vector<Cyclotomic>> &F)
{
    const unsigned r = alg.rank(), n = alg.dim();
    if (E.size() != r || F.size() != r) {
        throw invalid_input("automorphism_from_generators: need one image per simple root");
    }
    const RootSystem &rs = alg.root_system();
    std::vector<std::vector<Cyclotomic>> img(n);
    auto simple = [&](unsigned i) {
        Root a(r, 0);
        a[i] = 1;
        return a;
    };
    for (unsigned i = 0; i < r; ++i) {
        img[alg.root_index(simple(i))] = E[i];
        img[alg.root_index(-simple(i))] = F[i];
        img[alg.cartan_index(i)] = bracket(alg, E[i], F[i]);
    }
    for (const auto &xi : rs.positive_roots()) {
        if (!img[alg.root_index(xi)].empty()) {
            continue;
        }
        for (unsigned i = 0; i < r; ++i) {
            const Root eta = xi + (-simple(i));
            if (!positive(eta) || !rs.contains(eta)) {
                continue;
            }
            const Cyclotomic np(alg.structure_constant(simple(i), eta));
            const Cyclotomic nn(alg.structure_constant(-simple(i), -eta));
            auto up = bracket(alg, E[i], img[alg.root_index(eta)]);
            auto down = bracket(alg, F[i], img[alg.root_index(-eta)]);
            for (auto &c : up) {
                c /= np;
            }
            for (auto &c : down) {
                c /= nn;
            }
            img[alg.root_index(xi)] = std::move(up);
            img[alg.root_index(-xi)] = std::move(down);
            break;
        }
    }
    Automorphism phi(n, n, Cyclotomic{});
    for (unsigned j = 0; j < n; ++j) {
        for (unsigned i = 0; i < n; ++i) {
            phi(i, j) = img[j][i];
        }
    }
    if (!preserves_bracket(alg, phi)) {
        throw math_error("automorphism_from_generators: images do not extend to an automorphism");
    }
    return phi;
}

Automorphism diagram_automorphism(const ChevalleyAlgebra &alg, const std::vector<unsigned> &pi)
{
    const unsigned r = alg.rank();
    if (pi.size() != r) {
        throw invalid_input("diagram_automorphism: permutation has wrong length");
    }
    std::vector<bool> hit(r, false);
    for (unsigned v : pi) {
        if (v >= r || hit[v]) {
            throw invalid_input("diagram_automorphism: not a permutation");
        }
        hit[v] = true;
    }
    const auto c = alg.root_system().cartan_matrix();
    for (unsigned i = 0; i < r; ++i) {
        for (unsigned j = 0; j < r; ++j) {
            if (c[pi[i]][pi[j]] != c[i][j]) {
                throw invalid_input("diagram_automorphism: permutation is not a diagram symmetry");
            }
        }
    }
    std::vector<std::vector<Cyclotomic>> E, F;
    for (unsigned i = 0; i < r; ++i) {
        Root a(r, 0);
        a[pi[i]] = 1;
        E.push_back(basis_vector(alg, alg.root_index(a), Cyclotomic(1)));
        F.push_back(basis_vector(alg, alg.root_index(-a), Cyclotomic(1)));
    }
    Automorphism phi = automorphism_from_generators(alg, E, F);
    unsigned order = 1;
    for (std::vector<unsigned> p = pi;; ++order) {
        bool id = true;
        for (unsigned i = 0; i < r; ++i) {
            id = id && p[i] == i;
        }
        if (id) {
            break;
        }
        for (auto &v : p) {
            v = pi[v];
        }
    }
    if (automorphism_order(phi, order) != order) {
        throw math_error("diagram_automorphism: no sign choice realizes the order of the symmetry");
    }
    return phi;
}

Automorphism torus_automorphism(const ChevalleyAlgebra &alg, const std::vector<Cyclotomic> &s)
{
    if (s.size() != alg.rank()) {
        throw invalid_input("torus_automorphism: need one value per simple root");
    }
    Automorphism phi = Automorphism::identity(alg.dim(), Cyclotomic{});
    for (unsigned i = 0; i < alg.dim(); ++i) {
        const Root d = alg.weight(i);
        Cyclotomic v(1);
        for (unsigned k = 0; k < alg.rank(); ++k) {
            if (s[k].is_zero()) {
                throw invalid_input("torus_automorphism: torus values must be nonzero");
            }
            const Cyclotomic base = d[k] >= 0 ? s[k] : s[k].inverse();
            for (int e = 0; e < std::abs(d[k]); ++e) {
                v *= base;
            }
        }
        phi(i, i) = v;
    }
    return phi;
}

Automorphism chevalley_involution(const ChevalleyAlgebra &alg)
{
    const unsigned r = alg.rank();
    std::vector<std::vector<Cyclotomic>> E, F;
    for (unsigned i = 0; i < r; ++i) {
        Root a(r, 0);
        a[i] = 1;
        E.push_back(basis_vector(alg, alg.root_index(-a), Cyclotomic(1)));
        F.push_back(basis_vector(alg, alg.root_index(a), Cyclotomic(1)));
    }
    return automorphism_from_generators(alg, E, F);
}

Automorphism inner_automorphism(const ChevalleyAlgebra &alg, const std::vector<Automorphism> &letters)
{
    Automorphism phi = Automorphism::identity(alg.dim(), Cyclotomic{});
    for (const auto &l : letters) {
        phi = phi * l;
    }
    return phi;
}

unsigned fixed_dimension(const Automorphism &phi)
{
    const Automorphism d = phi - Automorphism::identity(phi.rows(), Cyclotomic{});
    return static_cast<unsigned>(phi.rows() - rank(d));
}

} // namespace loopk
