#include "matsym/ordering.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "matsym/error.hpp"

namespace matsym {

namespace {

void require_same_length(std::span<const int> u, std::span<const int> v) {
    if (u.size() != v.size()) {
        throw Error(ErrorCode::LengthMismatch,
                    "sequence lengths differ: " + std::to_string(u.size()) + " vs " +
                        std::to_string(v.size()));
    }
}

}  // namespace

std::string_view to_string(Ordering ord) {
    switch (ord) {
        case Ordering::Lt: return "Lt";
        case Ordering::Eq: return "Eq";
        case Ordering::Gt: return "Gt";
    }
    return "?";
}

Ordering lex_compare(std::span<const int> u, std::span<const int> v) {
    require_same_length(u, v);
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] < v[i]) return Ordering::Lt;
        if (u[i] > v[i]) return Ordering::Gt;
    }
    return Ordering::Eq;
}

Ordering multiset_compare(std::span<const int> u, std::span<const int> v) {
    require_same_length(u, v);
    std::vector<int> su(u.begin(), u.end());
    std::vector<int> sv(v.begin(), v.end());
    std::sort(su.begin(), su.end(), std::greater<>());
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return lex_compare(su, sv);
}

bool lex_le_all_permutations(std::span<const int> u, std::span<const int> v) {
    require_same_length(u, v);
    std::vector<int> sv(v.begin(), v.end());
    std::sort(sv.begin(), sv.end());
    return lex_compare(u, sv) != Ordering::Gt;
}

}  // namespace matsym
