#pragma once

// Brute-force reference routines used by the tests. Deliberately naive and
// independent of the library's own ordering, canonicalization and propagators.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace testsupport {

using Vec = std::vector<int>;

inline bool lex_le(const Vec& a, const Vec& b) {
    return !std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

inline bool lex_lt(const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Multiset order by occurrence counts: compare counts from the largest value down.
inline int multiset_cmp(const Vec& a, const Vec& b) {
    std::map<int, int, std::greater<>> count;
    for (int v : a) ++count[v];
    for (int v : b) --count[v];
    for (const auto& [value, diff] : count) {
        if (diff > 0) return 1;
        if (diff < 0) return -1;
    }
    return 0;
}

// Every vector of length n over `values`, last position fastest.
inline std::vector<Vec> all_vectors(int n, const Vec& values) {
    std::vector<Vec> out;
    Vec idx(static_cast<std::size_t>(n), 0);
    while (true) {
        Vec v;
        for (int i : idx) v.push_back(values[static_cast<std::size_t>(i)]);
        out.push_back(v);
        int p = n - 1;
        while (p >= 0 && idx[static_cast<std::size_t>(p)] == static_cast<int>(values.size()) - 1) {
            idx[static_cast<std::size_t>(p)] = 0;
            --p;
        }
        if (p < 0) break;
        ++idx[static_cast<std::size_t>(p)];
    }
    return out;
}

inline Vec identity(int n) {
    Vec p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// Image m'[i][j] = m[rp[i]][cp[j]] of a row-major rows x cols matrix.
inline Vec permute(const Vec& m, int cols, const Vec& rp, const Vec& cp) {
    Vec out;
    for (int i : rp) {
        for (int j : cp) out.push_back(m[static_cast<std::size_t>(i * cols + j)]);
    }
    return out;
}

// Lex-smallest image under all row and column permutations.
inline Vec min_image(const Vec& m, int rows, int cols) {
    Vec best = m;
    Vec rp = identity(rows);
    do {
        Vec cp = identity(cols);
        do {
            best = std::min(best, permute(m, cols, rp, cp));
        } while (std::next_permutation(cp.begin(), cp.end()));
    } while (std::next_permutation(rp.begin(), rp.end()));
    return best;
}

inline bool same_orbit(const Vec& a, const Vec& b, int rows, int cols) {
    return min_image(a, rows, cols) == min_image(b, rows, cols);
}

inline std::size_t orbit_count(const std::vector<Vec>& solutions, int rows, int cols) {
    std::set<Vec> reps;
    for (const auto& s : solutions) reps.insert(min_image(s, rows, cols));
    return reps.size();
}

inline std::vector<Vec> all_grids(int rows, int cols, const Vec& values) {
    return all_vectors(rows * cols, values);
}

}  // namespace testsupport
