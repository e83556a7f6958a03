#ifndef LOOPK_ELEMGROUP_HPP
#define LOOPK_ELEMGROUP_HPP

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <loopk/grading.hpp>
#include <loopk/series.hpp>

namespace loopk
{

// Structure constants as series with zero t-degree.
template <typename B>
TruncSeries<B> structure_scalar(const Cyclotomic &c, const Exponent &shift, const TruncSeries<B> &proto)
{
    return TruncSeries<B>::monomial(structure_scalar(c, shift, proto.proto()), 0, proto.precision());
}

inline std::string scalar_str(const Rational &x)
{
    return x.str();
}
inline std::string scalar_str(const Cyclotomic &x)
{
    return x.is_rational() ? x.rational_part().str() : x.normalized().str();
}
inline std::string scalar_str(const LaurentPoly &x)
{
    return x.str();
}
template <typename B>
std::string scalar_str(const TruncSeries<B> &x)
{
    return x.str();
}

inline Rational scalar_inverse(const Rational &x)
{
    return x.inverse();
}
inline Cyclotomic scalar_inverse(const Cyclotomic &x)
{
    return x.inverse();
}
inline LaurentPoly scalar_inverse(const LaurentPoly &x)
{
    return x.inverse();
}
template <typename B>
TruncSeries<B> scalar_inverse(const TruncSeries<B> &x)
{
    return x.inverse();
}

inline bool is_unit(const Rational &x)
{
    return !x.is_zero();
}
inline bool is_unit(const Cyclotomic &x)
{
    return !x.is_zero();
}
inline bool is_unit(const LaurentPoly &x)
{
    return x.is_monomial();
}
template <typename B>
bool is_unit(const TruncSeries<B> &x)
{
    return !x.is_zero() && is_unit(x.coeffs()[0]);
}

// Which ring the parameters of a word live in; A is the coefficient base.
enum class ScalarRing
{
    base,
    polynomial,
    power_series,
    laurent_polynomial,
    laurent_series
};

// "A", "A[t]", "A[[t]]", "A[t,t^-1]", "A((t))".
std::string ring_str(ScalarRing r);
ScalarRing parse_ring(std::string_view s);

// X_alpha(v) with v a coordinate vector in the b_k basis supported on V_alpha.
template <typename T>
struct Letter
{
    Root alpha;
    std::vector<T> v;
};

template <typename T>
struct RootElementWord
{
    ScalarRing ring = ScalarRing::base;
    std::vector<Letter<T>> letters;

    // "word <ring>", then per letter "letter <alpha>" followed by one
    // "b<k> <value>" line per nonzero coordinate, then "end".
    std::string str() const
    {
        std::ostringstream os;
        os << "word " << ring_str(ring) << "\n";
        for (const auto &l : letters) {
            os << "letter " << root_str(l.alpha) << "\n";
            for (std::size_t k = 0; k < l.v.size(); ++k) {
                using loopk::is_zero;
                if (!is_zero(l.v[k])) {
                    os << "  b" << k << ' ' << scalar_str(l.v[k]) << "\n";
                }
            }
        }
        os << "end\n";
        return os.str();
    }
};

// Heights used to order roots: the standard height in simple relative roots
// when it has constant sign on psi, otherwise the first small integer
// functional positive on psi. Throws invalid_input when none exists.
std::vector<long> positive_heights(const RelativeGrading &rg, const std::vector<Root> &psi);

// psi sorted by height, ties broken reverse-lexicographically.
std::vector<Root> height_order(const RelativeGrading &rg, std::vector<Root> psi);

// Largest k with ad_v^k possibly nonzero for v of q-degree alpha.
unsigned nilpotency_bound(const RelativeGrading &rg, const Root &alpha);

// Scalar-valued helpers over the coefficient ring T.
template <typename T>
T embed_scalar(const GradedLieAlgebra &g, const Cyclotomic &c, const T &proto)
{
    return structure_scalar(c, Exponent(g.nvars(), 0), proto);
}

template <typename T>
std::vector<T> zero_vector(const GradedLieAlgebra &g, const T &proto)
{
    return std::vector<T>(g.size(), zero_like(proto));
}

// Matrix of ad_v: column j is [v, b_j].
template <typename T>
Matrix<T> graded_ad(const GradedLieAlgebra &g, const std::vector<T> &v, const T &proto)
{
    using loopk::is_zero;
    Matrix<T> m(g.size(), g.size(), proto);
    for (unsigned i = 0; i < g.size(); ++i) {
        if (is_zero(v[i])) {
            continue;
        }
        for (unsigned j = 0; j < g.size(); ++j) {
            for (const auto &t : g.bracket(i, j)) {
                m(t.k, j) += v[i] * structure_scalar(t.c, t.shift, proto);
            }
        }
    }
    return m;
}

// phi([b_i, b_j]) == [phi b_i, phi b_j] for all basis pairs.
template <typename T>
bool graded_preserves_bracket(const GradedLieAlgebra &g, const Matrix<T> &phi)
{
    using loopk::is_zero;
    const T proto = phi.proto();
    std::vector<std::vector<T>> cols;
    for (unsigned j = 0; j < g.size(); ++j) {
        cols.push_back(column(phi, j));
    }
    for (unsigned i = 0; i < g.size(); ++i) {
        for (unsigned j = i + 1; j < g.size(); ++j) {
            std::vector<T> lhs(g.size(), zero_like(proto));
            for (const auto &t : g.bracket(i, j)) {
                const T c = structure_scalar(t.c, t.shift, proto);
                for (unsigned k = 0; k < g.size(); ++k) {
                    lhs[k] += phi(k, t.k) * c;
                }
            }
            const auto rhs = graded_bracket(g, cols[i], cols[j]);
            for (unsigned k = 0; k < g.size(); ++k) {
                if (!is_zero(lhs[k] - rhs[k])) {
                    return false;
                }
            }
        }
    }
    return true;
}

// exp(ad_v) for v in V_alpha (tensored with T); invalid_input when alpha is
// not a relative root or v has components outside V_alpha.
template <typename T>
Matrix<T> root_element(const RelativeGrading &rg, const Root &alpha, const std::vector<T> &v, const T &proto)
{
    using loopk::is_zero;
    const GradedLieAlgebra &g = rg.algebra;
    if (!rg.contains(alpha)) {
        throw invalid_input("root_element: " + root_str(alpha) + " is not a relative root");
    }
    if (v.size() != g.size()) {
        throw invalid_input("root_element: parameter has the wrong length");
    }
    for (unsigned k = 0; k < g.size(); ++k) {
        if (!is_zero(v[k]) && g.q(k) != alpha) {
            throw invalid_input("root_element: parameter is not homogeneous of degree " + root_str(alpha)
                                + " (component on b" + std::to_string(k) + ")");
        }
    }
    return exp_nilpotent(graded_ad(g, v, proto), g.size() + 1);
}

template <typename T>
Matrix<T> word_matrix(const RelativeGrading &rg, const RootElementWord<T> &w, const T &proto)
{
    Matrix<T> m = Matrix<T>::identity(rg.algebra.size(), proto);
    for (const auto &l : w.letters) {
        m = m * root_element(rg, l.alpha, l.v, proto);
    }
    return m;
}

template <typename T>
std::vector<T> negated(const std::vector<T> &v)
{
    std::vector<T> r(v);
    for (auto &x : r) {
        x = -x;
    }
    return r;
}

template <typename T>
bool is_zero_vector(const std::vector<T> &v)
{
    using loopk::is_zero;
    for (const auto &x : v) {
        if (!is_zero(x)) {
            return false;
        }
    }
    return true;
}

// Factors u = prod_gamma X_gamma(v_gamma) over psi in the given order (the
// height order when empty), which must be non-decreasing in height. Peels
// one letter at a time from the left, reading v_gamma off (u - 1) h for a
// torus element h with gamma(h) != 0. Zero letters are omitted. Throws
// math_error naming a residual entry when u is not in U_psi.
template <typename T>
std::vector<Letter<T>> unipotent_factor(const RelativeGrading &rg, Matrix<T> u, const std::vector<Root> &psi,
                                        std::vector<Root> order, const T &proto)
{
    using loopk::is_zero;
    const GradedLieAlgebra &g = rg.algebra;
    const unsigned n = g.size();
    if (order.empty()) {
        order = height_order(rg, psi);
    } else {
        const auto heights = positive_heights(rg, order);
        for (std::size_t i = 1; i < heights.size(); ++i) {
            if (heights[i] < heights[i - 1]) {
                throw invalid_input("unipotent_factor: order is not compatible with heights");
            }
        }
    }
    if (g.torus().empty() || g.weights().size() != n) {
        throw invalid_input("unipotent_factor: the algebra carries no torus elements");
    }
    std::vector<Letter<T>> out;
    for (const auto &gamma : order) {
        const auto space = rg.root_space(gamma);
        if (space.empty()) {
            throw invalid_input("unipotent_factor: " + root_str(gamma) + " has no root space");
        }
        const auto &w = g.weights()[space[0]];
        std::size_t p = 0;
        while (p < w.size() && w[p].is_zero()) {
            ++p;
        }
        if (p == w.size()) {
            throw math_error("unipotent_factor: no torus element separates " + root_str(gamma));
        }
        std::vector<T> h(n, zero_like(proto));
        for (unsigned k = 0; k < n; ++k) {
            h[k] = embed_scalar(g, g.torus()[p][k], proto);
        }
        const auto uh = u.apply(h);
        // (u - 1) h = -gamma(h) v_gamma + terms of larger height
        const T scale = scalar_like(Rational(-1) / w[p], proto);
        std::vector<T> v(n, zero_like(proto));
        for (unsigned k : space) {
            v[k] = (uh[k] - h[k]) * scale;
        }
        if (is_zero_vector(v)) {
            continue;
        }
        u = root_element(rg, gamma, negated(v), proto) * u;
        out.push_back({gamma, std::move(v)});
    }
    const T one = one_like(proto);
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) {
            const T d = u(i, j) - (i == j ? one : zero_like(proto));
            if (!is_zero(d)) {
                throw math_error("unipotent_factor: element is not in U_psi; residual entry (" + std::to_string(i)
                                 + ", " + std::to_string(j) + ") is " + scalar_str(d));
            }
        }
    }
    return out;
}

// Corrections q^i with X_a(v) X_a(w) = X_a(v + w) prod_{i > 1} X_{ia}(q^i(v, w)),
// one entry per multiple ia in Phi (possibly zero); empty when 2a is not a
// root.
template <typename T>
std::vector<Letter<T>> extract_q_maps(const RelativeGrading &rg, const Root &alpha, const std::vector<T> &v,
                                      const std::vector<T> &w, const T &proto)
{
    std::vector<T> sum(v);
    for (std::size_t k = 0; k < sum.size(); ++k) {
        sum[k] += w[k];
    }
    const Matrix<T> lhs = root_element(rg, alpha, v, proto) * root_element(rg, alpha, w, proto);
    const Matrix<T> residual = root_element(rg, alpha, negated(sum), proto) * lhs;
    std::vector<Root> psi;
    for (int i = 2; i <= 4; ++i) {
        if (rg.contains(scaled(alpha, i))) {
            psi.push_back(scaled(alpha, i));
        }
    }
    const auto found = unipotent_factor(rg, residual, psi, {}, proto);
    std::vector<Letter<T>> out;
    for (const auto &r : psi) {
        Letter<T> l{r, zero_vector(rg.algebra, proto)};
        for (const auto &f : found) {
            if (f.alpha == r) {
                l.v = f.v;
            }
        }
        out.push_back(std::move(l));
    }
    return out;
}

// Positive multiples (i, j) with i a + j b in Phi.
std::vector<std::pair<Root, std::pair<int, int>>> commutator_support(const RelativeGrading &rg, const Root &a,
                                                                     const Root &b);

// [X_a(u), X_b(v)] = X_a(u) X_b(v) X_a(u)^-1 X_b(v)^-1 factored over
// {i a + j b : i, j > 0} in height order; zero terms omitted. invalid_input
// when m a = -k b for some m, k >= 1.
template <typename T>
std::vector<Letter<T>> commutator_table(const RelativeGrading &rg, const Root &a, const Root &b, const std::vector<T> &u,
                                        const std::vector<T> &v, const T &proto)
{
    const auto support = commutator_support(rg, a, b);
    std::vector<Root> psi;
    for (const auto &[r, ij] : support) {
        if (std::find(psi.begin(), psi.end(), r) == psi.end()) {
            psi.push_back(r);
        }
    }
    const Matrix<T> comm = root_element(rg, a, u, proto) * root_element(rg, b, v, proto)
                           * root_element(rg, a, negated(u), proto) * root_element(rg, b, negated(v), proto);
    return unipotent_factor(rg, comm, psi, {}, proto);
}

// a(s) = prod s_i^{a_i} for units s_i.
template <typename T>
T character_value(const Root &a, const std::vector<T> &s, const T &proto)
{
    if (s.size() != a.size()) {
        throw invalid_input("torus point has " + std::to_string(s.size()) + " coordinates, expected "
                            + std::to_string(a.size()));
    }
    T r = one_like(proto);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!is_unit(s[i])) {
            throw invalid_input("torus point coordinate " + std::to_string(i) + " is not a unit");
        }
        const T base = a[i] < 0 ? scalar_inverse(s[i]) : s[i];
        for (int e = 0; e < std::abs(a[i]); ++e) {
            r = r * base;
        }
    }
    return r;
}

// Action of the grading torus: b_k -> q_k(s) b_k.
template <typename T>
Matrix<T> torus_matrix(const RelativeGrading &rg, const std::vector<T> &s, const T &proto)
{
    const GradedLieAlgebra &g = rg.algebra;
    Matrix<T> m(g.size(), g.size(), proto);
    for (unsigned k = 0; k < g.size(); ++k) {
        m(k, k) = character_value(g.q(k), s, proto);
    }
    return m;
}

// s X_a(v) s^-1 = X_a(a(s) v).
template <typename T>
Letter<T> torus_conjugate(const RelativeGrading &rg, const std::vector<T> &s, const Letter<T> &l, const T &proto)
{
    (void)rg;
    const T c = character_value(l.alpha, s, proto);
    Letter<T> r = l;
    for (auto &x : r.v) {
        x = c * x;
    }
    return r;
}

// t-valuation of a series vector; precision when all entries vanish.
template <typename B>
int vector_valuation(const std::vector<TruncSeries<B>> &v)
{
    int val = v.empty() ? 0 : v[0].precision();
    for (const auto &x : v) {
        val = std::min(val, x.valuation());
    }
    return val;
}

template <typename B>
int vector_precision(const std::vector<TruncSeries<B>> &v)
{
    int p = v.empty() ? 0 : v[0].precision();
    for (const auto &x : v) {
        p = std::min(p, x.precision());
    }
    return p;
}

// Upper bound for -val of the matrices of the letters (and of their
// multipliable-root corrections).
template <typename B>
int word_depth(const RelativeGrading &rg, const RootElementWord<TruncSeries<B>> &w)
{
    int d = 0;
    for (const auto &l : w.letters) {
        const int neg = std::max(0, -vector_valuation(l.v));
        d += static_cast<int>(nilpotency_bound(rg, l.alpha)) * neg;
        if (rg.contains(scaled(l.alpha, 2))) {
            d += static_cast<int>(nilpotency_bound(rg, scaled(l.alpha, 2))) * neg;
        }
    }
    return d;
}

template <typename B>
RootElementWord<TruncSeries<B>> truncated_word(const RootElementWord<TruncSeries<B>> &w, int precision)
{
    RootElementWord<TruncSeries<B>> r = w;
    for (auto &l : r.letters) {
        for (auto &x : l.v) {
            x = x.truncated(precision);
        }
    }
    return r;
}

template <typename B>
struct LoopFactorization
{
    // word == g1 g2 modulo t^precision
    RootElementWord<TruncSeries<B>> g1, g2;
    int precision = 0;
    // Degree at which tails were discarded, and the valuation bound D.
    int cut = 0;
    int depth = 0;

    std::string str() const
    {
        std::ostringstream os;
        os << "factorization precision=" << precision << " cut=" << cut << " depth=" << depth << "\n";
        os << "g1\n" << g1.str() << "g2\n" << g2.str();
        return os.str();
    }
};

// Throws math_error when some irreducible component of Phi has rank 1.
void require_higher_rank(const RelativeGrading &rg);

// Factors word = g1 g2 mod t^N with g1 over A[[t]] and g2 over A[t,t^-1].
// Letters are scanned left to right. Until the first letter with a
// negative-degree part, letters (or their degree >= 0 parts) go to g1 and
// negative parts to g2. Afterwards each letter is truncated below the cut
// N + 4D, D = word_depth, and appended to g2: the discarded tail is congruent
// to 1 modulo t^(cut - 2D) and moves to the left of g2 at a loss of at most
// 2D in valuation. Multipliable roots pick up X_2a(-[a, b]/2) when split.
template <typename B>
LoopFactorization<B> factor_loop_series(const RelativeGrading &rg, const RootElementWord<TruncSeries<B>> &word,
                                        int N)
{
    if (N < 1) {
        throw invalid_input("factor_loop_series: precision must be positive");
    }
    require_higher_rank(rg);
    LoopFactorization<B> res;
    res.precision = N;
    res.depth = word_depth(rg, word);
    res.cut = N + 4 * res.depth;
    res.g1.ring = ScalarRing::power_series;
    res.g2.ring = ScalarRing::laurent_polynomial;
    for (const auto &l : word.letters) {
        const int p = vector_precision(l.v);
        if (p < res.cut) {
            throw precision_exhausted("factor_loop_series: parameter precision " + std::to_string(p)
                                      + " is below the required " + std::to_string(res.cut));
        }
    }
    std::deque<Letter<TruncSeries<B>>> queue(word.letters.begin(), word.letters.end());
    while (!queue.empty()) {
        Letter<TruncSeries<B>> l = std::move(queue.front());
        queue.pop_front();
        if (is_zero_vector(l.v)) {
            continue;
        }
        if (res.g2.letters.empty()) {
            std::vector<TruncSeries<B>> neg, pos;
            for (const auto &x : l.v) {
                auto [lo, hi] = x.split_at(0);
                neg.push_back(std::move(lo));
                pos.push_back(std::move(hi));
            }
            if (is_zero_vector(neg)) {
                res.g1.letters.push_back(std::move(l));
                continue;
            }
            // X(a + b) = X(a) X(b) X_2a(-[a, b] / 2)
            const Root twice = scaled(l.alpha, 2);
            if (!is_zero_vector(pos)) {
                res.g1.letters.push_back({l.alpha, pos});
            }
            res.g2.letters.push_back({l.alpha, neg});
            if (rg.contains(twice) && !is_zero_vector(pos)) {
                auto c = graded_bracket(rg.algebra, pos, neg);
                for (auto &x : c) {
                    x *= Rational(-1, 2);
                }
                queue.push_front({twice, std::move(c)});
            }
        } else {
            std::vector<TruncSeries<B>> head;
            for (const auto &x : l.v) {
                head.push_back(x.split_at(res.cut).first);
            }
            if (!is_zero_vector(head)) {
                res.g2.letters.push_back({l.alpha, std::move(head)});
            }
        }
    }
    return res;
}

// matrix(a) == matrix(b) modulo t^N, computed with parameters truncated to
// N plus the depths of both words; precision_exhausted when the computed
// entries are not known modulo t^N.
template <typename B>
bool congruent_mod(const RelativeGrading &rg, const RootElementWord<TruncSeries<B>> &a,
                   const RootElementWord<TruncSeries<B>> &b, int N, const B &base_proto)
{
    const int work = N + word_depth(rg, a) + word_depth(rg, b);
    const TruncSeries<B> proto(work, base_proto);
    const auto ma = word_matrix(rg, truncated_word(a, work), proto);
    const auto mb = word_matrix(rg, truncated_word(b, work), proto);
    for (std::size_t i = 0; i < ma.rows(); ++i) {
        for (std::size_t j = 0; j < ma.cols(); ++j) {
            const auto d = ma(i, j) - mb(i, j);
            if (d.precision() < N) {
                throw precision_exhausted("congruence check: entry known only modulo t^" + std::to_string(d.precision()));
            }
            if (!d.truncated(N).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

template <typename B>
RootElementWord<TruncSeries<B>> concatenated(const RootElementWord<TruncSeries<B>> &a,
                                             const RootElementWord<TruncSeries<B>> &b)
{
    RootElementWord<TruncSeries<B>> r = a;
    r.ring = ScalarRing::laurent_series;
    r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
    return r;
}

// Certificate: g1 g2 == word mod t^N, g1 parameters of valuation >= 0, g2
// parameters with finitely many terms below the cut.
template <typename B>
bool verify_factorization(const RelativeGrading &rg, const RootElementWord<TruncSeries<B>> &word,
                          const LoopFactorization<B> &f, const B &base_proto, std::string *why = nullptr)
{
    auto fail = [&](const std::string &msg) {
        if (why) {
            *why = msg;
        }
        return false;
    };
    for (const auto &l : f.g1.letters) {
        if (vector_valuation(l.v) < 0) {
            return fail("g1 letter " + root_str(l.alpha) + " has negative valuation");
        }
    }
    for (const auto &l : f.g2.letters) {
        for (const auto &x : l.v) {
            if (!x.is_zero() && !x.split_at(f.cut).second.is_zero()) {
                return fail("g2 letter " + root_str(l.alpha) + " is not a Laurent polynomial below the cut");
            }
        }
    }
    if (!congruent_mod(rg, concatenated(f.g1, f.g2), word, f.precision, base_proto)) {
        return fail("g1 g2 differs from the word modulo t^" + std::to_string(f.precision));
    }
    return true;
}

// Random element of V_alpha with series coefficients c t^k, lo <= k < hi,
// c drawn by the generator; known modulo t^precision.
template <typename B, typename Gen>
std::vector<TruncSeries<B>> random_series_parameter(const RelativeGrading &rg, const Root &alpha, int lo, int hi,
                                                    int precision, Gen &&coeff, const B &base_proto)
{
    const TruncSeries<B> zero(precision, base_proto);
    std::vector<TruncSeries<B>> v(rg.algebra.size(), zero);
    for (unsigned k : rg.root_space(alpha)) {
        std::map<int, B> terms;
        for (int d = lo; d < hi; ++d) {
            terms[d] = coeff();
        }
        v[k] = TruncSeries<B>::from_terms(terms, precision, base_proto);
    }
    return v;
}

struct DepthVerdict
{
    bool pass = true;
    // N >= 3 (M + |Phi| |n|)
    bool bound_holds = true;
    unsigned samples = 0;
    std::string witness;
};

// Samples g = X_b(t^N w) (w of valuation >= 0, b random in Phi) and checks
// X_a(t^n u) g X_a(t^n u)^-1 == 1 modulo t^M.
template <typename B, typename Gen>
DepthVerdict depth_conjugation_check(const RelativeGrading &rg, const Root &alpha, int n,
                                     const std::vector<B> &u, int N, int M, unsigned samples, std::mt19937_64 &rng,
                                     Gen &&coeff, const B &base_proto)
{
    DepthVerdict out;
    const long phi = static_cast<long>(rg.phi.size());
    out.bound_holds = N >= 3 * (M + phi * std::abs(n));
    const int kmax = static_cast<int>(nilpotency_bound(rg, alpha));
    // conjugation by X_a(t^n u) lowers valuations by at most 2 kmax |n|
    const int work = std::max(N, M) + 2 * kmax * std::abs(std::min(n, 0)) + 1;
    const TruncSeries<B> proto(work, base_proto);
    std::vector<TruncSeries<B>> x(rg.algebra.size(), proto);
    for (std::size_t k = 0; k < u.size(); ++k) {
        x[k] = TruncSeries<B>::monomial(u[k], n, work);
    }
    const auto conj = root_element(rg, alpha, x, proto);
    const auto conj_inv = root_element(rg, alpha, negated(x), proto);
    std::uniform_int_distribution<std::size_t> pick(0, rg.phi.size() - 1);
    for (unsigned s = 0; s < samples; ++s) {
        const Root beta = rg.phi[pick(rng)];
        const auto w = random_series_parameter(rg, beta, N, N + 3, work, coeff, base_proto);
        const auto m = conj * root_element(rg, beta, w, proto) * conj_inv;
        ++out.samples;
        for (std::size_t i = 0; i < m.rows() && out.pass; ++i) {
            for (std::size_t j = 0; j < m.cols() && out.pass; ++j) {
                auto d = m(i, j);
                if (i == j) {
                    d -= one_like(proto);
                }
                if (d.precision() < M) {
                    throw precision_exhausted("depth check: entry known only modulo t^" + std::to_string(d.precision()));
                }
                if (!d.truncated(M).is_zero()) {
                    out.pass = false;
                    out.witness = "sample " + std::to_string(s) + " beta=" + root_str(beta) + " entry ("
                                  + std::to_string(i) + ", " + std::to_string(j) + ") has valuation "
                                  + std::to_string(d.valuation());
                }
            }
        }
        if (!out.pass) {
            break;
        }
    }
    return out;
}

// Text form written by RootElementWord::str(); parse_scalar converts one
// value string.
template <typename T, typename Parse>
RootElementWord<T> parse_word(std::string_view text, const GradedLieAlgebra &g, const T &proto, Parse &&parse_scalar)
{
    std::istringstream in{std::string(text)};
    RootElementWord<T> w;
    bool header = false, ended = false;
    int lineno = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) {
            continue;
        }
        line = line.substr(first);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) {
            line.pop_back();
        }
        if (ended) {
            throw parse_error("content after 'end'", lineno, 1);
        }
        if (!header) {
            if (line.rfind("word ", 0) != 0) {
                throw parse_error("expected 'word <ring>'", lineno, 1);
            }
            try {
                w.ring = parse_ring(line.substr(5));
            } catch (const invalid_input &e) {
                throw parse_error(e.what(), lineno, 6);
            }
            header = true;
        } else if (line == "end") {
            ended = true;
        } else if (line.rfind("letter ", 0) == 0) {
            const std::string a = line.substr(7);
            if (a.size() < 2 || a.front() != '(' || a.back() != ')') {
                throw parse_error("expected a root vector", lineno, 8);
            }
            Root alpha;
            std::stringstream ss(a.substr(1, a.size() - 2));
            for (std::string item; std::getline(ss, item, ',');) {
                try {
                    alpha.push_back(std::stoi(item));
                } catch (const std::exception &) {
                    throw parse_error("bad root coordinate '" + item + "'", lineno, 8);
                }
            }
            w.letters.push_back({alpha, zero_vector(g, proto)});
        } else if (line[0] == 'b') {
            if (w.letters.empty()) {
                throw parse_error("coordinate before any letter", lineno, 1);
            }
            const auto sp = line.find(' ');
            unsigned long k = 0;
            try {
                k = std::stoul(line.substr(1, sp - 1));
            } catch (const std::exception &) {
                throw parse_error("bad basis index", lineno, 2);
            }
            if (k >= g.size() || sp == std::string::npos) {
                throw parse_error("basis index out of range or missing value", lineno, 2);
            }
            try {
                w.letters.back().v[k] = parse_scalar(line.substr(sp + 1));
            } catch (const parse_error &e) {
                throw parse_error(e.what(), lineno, static_cast<int>(sp) + 2);
            } catch (const std::exception &e) {
                throw parse_error(e.what(), lineno, static_cast<int>(sp) + 2);
            }
        } else {
            throw parse_error("unknown line", lineno, 1);
        }
    }
    if (!header || !ended) {
        throw parse_error("incomplete word (missing header or 'end')", lineno, 1);
    }
    return w;
}

} // namespace loopk

#endif
