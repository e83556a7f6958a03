#include <loopk/elemgroup.hpp>

#include <algorithm>
#include <set>

namespace loopk
{

std::string ring_str(ScalarRing r)
{
    switch (r) {
    case ScalarRing::base:
        return "A";
    case ScalarRing::polynomial:
        return "A[t]";
    case ScalarRing::power_series:
        return "A[[t]]";
    case ScalarRing::laurent_polynomial:
        return "A[t,t^-1]";
    case ScalarRing::laurent_series:
        return "A((t))";
    }
    return "?";
}

ScalarRing parse_ring(std::string_view s)
{
    for (auto r : {ScalarRing::base, ScalarRing::polynomial, ScalarRing::power_series, ScalarRing::laurent_polynomial,
                   ScalarRing::laurent_series}) {
        if (ring_str(r) == s) {
            return r;
        }
    }
    throw invalid_input("unknown scalar ring '" + std::string(s) + "'");
}

std::vector<long> positive_heights(const RelativeGrading &rg, const std::vector<Root> &psi)
{
    std::vector<Root> coords;
    for (const auto &a : psi) {
        const auto it = rg.coords.find(a);
        if (it == rg.coords.end()) {
            throw invalid_input(root_str(a) + " is not a relative root");
        }
        coords.push_back(it->second);
    }
    if (psi.empty()) {
        return {};
    }
    const std::size_t r = coords[0].size();
    auto evaluate = [&](const std::vector<long> &f) {
        std::vector<long> h;
        for (const auto &c : coords) {
            long s = 0;
            for (std::size_t i = 0; i < r; ++i) {
                s += f[i] * c[i];
            }
            h.push_back(s);
        }
        return h;
    };
    auto all_positive = [](const std::vector<long> &h) {
        return std::all_of(h.begin(), h.end(), [](long x) { return x > 0; });
    };
    for (long sign : {1L, -1L}) {
        const auto h = evaluate(std::vector<long>(r, sign));
        if (all_positive(h)) {
            return h;
        }
    }
    // small integer functionals in a fixed enumeration order
    std::vector<long> f(r, -3);
    while (true) {
        const auto h = evaluate(f);
        if (all_positive(h)) {
            return h;
        }
        std::size_t i = 0;
        while (i < r && f[i] == 3) {
            f[i] = -3;
            ++i;
        }
        if (i == r) {
            break;
        }
        ++f[i];
    }
    throw invalid_input("no functional is positive on the given roots");
}

std::vector<Root> height_order(const RelativeGrading &rg, std::vector<Root> psi)
{
    const auto h = positive_heights(rg, psi);
    std::vector<std::pair<long, Root>> tagged;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        tagged.emplace_back(h[i], psi[i]);
    }
    std::sort(tagged.begin(), tagged.end(), [](const auto &a, const auto &b) {
        if (a.first != b.first) {
            return a.first < b.first;
        }
        return a.second > b.second;
    });
    std::vector<Root> out;
    for (auto &[x, r] : tagged) {
        out.push_back(std::move(r));
    }
    return out;
}

unsigned nilpotency_bound(const RelativeGrading &rg, const Root &alpha)
{
    const GradedLieAlgebra &g = rg.algebra;
    std::set<Root> support;
    for (unsigned k = 0; k < g.size(); ++k) {
        support.insert(g.q(k));
    }
    unsigned best = 0;
    for (const auto &q : support) {
        Root cur = q;
        for (unsigned k = 1; k <= g.size(); ++k) {
            cur = cur + alpha;
            if (!support.count(cur)) {
                break;
            }
            best = std::max(best, k);
        }
    }
    return best;
}

std::vector<std::pair<Root, std::pair<int, int>>> commutator_support(const RelativeGrading &rg, const Root &a,
                                                                     const Root &b)
{
    for (int m = 1; m <= 4; ++m) {
        for (int k = 1; k <= 4; ++k) {
            if (scaled(a, m) == -scaled(b, k)) {
                throw invalid_input("commutator_table: " + root_str(a) + " and " + root_str(b)
                                    + " are negatively proportional");
            }
        }
    }
    std::vector<std::pair<Root, std::pair<int, int>>> out;
    for (int i = 1; i <= 4; ++i) {
        for (int j = 1; j <= 4; ++j) {
            const Root r = scaled(a, i) + scaled(b, j);
            if (rg.contains(r)) {
                out.push_back({r, {i, j}});
            }
        }
    }
    return out;
}

void require_higher_rank(const RelativeGrading &rg)
{
    const auto comps = component_report(rg);
    if (comps.empty()) {
        throw math_error("factor_loop_series: no relative roots (anisotropic)");
    }
    for (const auto &c : comps) {
        if (c.rank < 2) {
            throw math_error("factor_loop_series: component " + c.label
                             + " has rank 1; the decomposition is not available in rank one");
        }
    }
}

} // namespace loopk
