#pragma once

#include <span>
#include <string_view>

namespace matsym {

enum class Ordering { Lt, Eq, Gt };

std::string_view to_string(Ordering ord);

// Dictionary order. Throws LengthMismatch.
Ordering lex_compare(std::span<const int> u, std::span<const int> v);

// Multiset order: sort both descending, then compare lexicographically.
// Eq exactly when u is a permutation of v. Throws LengthMismatch.
Ordering multiset_compare(std::span<const int> u, std::span<const int> v);

// u <=lex every permutation of v, i.e. u <=lex sortAscending(v).
bool lex_le_all_permutations(std::span<const int> u, std::span<const int> v);

}  // namespace matsym
