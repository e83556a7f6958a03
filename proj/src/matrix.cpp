#include <loopk/matrix.hpp>

#include <cstdlib>
#include <numeric>

namespace loopk
{

std::vector<long> smith_invariants(std::vector<std::vector<long>> a)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<long> diag;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // pivot: smallest nonzero magnitude in the remaining block
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i) {
            for (std::size_t j = t; j < cols; ++j) {
                if (a[i][j] != 0 && (pi == rows || std::labs(a[i][j]) < std::labs(a[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi == rows) {
            break;
        }
        std::swap(a[t], a[pi]);
        for (auto &row : a) {
            std::swap(row[t], row[pj]);
        }
        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i) {
            const long q = a[i][t] / a[t][t];
            for (std::size_t j = t; j < cols; ++j) {
                a[i][j] -= q * a[t][j];
            }
            clean = clean && a[i][t] == 0;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
            const long q = a[t][j] / a[t][t];
            for (std::size_t i = t; i < rows; ++i) {
                a[i][j] -= q * a[i][t];
            }
            clean = clean && a[t][j] == 0;
        }
        if (!clean) {
            continue;
        }
        // the pivot must divide the whole remaining block
        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i) {
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[i][j] % a[t][t] != 0) {
                    for (std::size_t k = t; k < cols; ++k) {
                        a[t][k] += a[i][k];
                    }
                    divides = false;
                    break;
                }
            }
        }
        if (!divides) {
            continue;
        }
        diag.push_back(std::labs(a[t][t]));
        ++t;
    }
    return diag;
}

} // namespace loopk
