#include "matsym/decompose.hpp"

#include <algorithm>

#include "matsym/error.hpp"

namespace matsym::solver {

void decompose_lex_into(ConstraintSet& out, std::span<const int> x, std::span<const int> y, bool strict,
                        const std::function<const Domain&(int)>& domain_of, int cell_count) {
    if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "lex operands differ in length");
    const std::size_t n = x.size();
    if (n == 0) {
        if (strict) out.add(ConstraintTerm::linear_le({}, {}, -1));
        return;
    }
    const int slack = strict ? 1 : 0;

    // Index of chain variable b[i] (1-based); b[0] is the constant 1.
    std::vector<int> chain(n, -1);
    for (std::size_t i = 1; i < n; ++i) {
        chain[i] = cell_count + static_cast<int>(out.aux.size());
        out.aux.push_back(Domain{0, 1});
    }

    for (std::size_t pos = 0; pos < n; ++pos) {
        const int xv = x[pos];
        const int yv = y[pos];
        const Domain& dx = domain_of(xv);
        const Domain& dy = domain_of(yv);
        // Large enough to relax x - y + 1 <= 0 whenever the guard is off.
        const int relax = std::max(1, dx.max() - dy.min() + 1);
        const int prev = pos == 0 ? -1 : chain[pos];
        const bool last = pos + 1 == n;

        if (last) {
            // prev tied => x <= y (x < y when strict)
            if (prev < 0) {
                out.add(ConstraintTerm::linear_le({xv, yv}, {1, -1}, -slack));
            } else {
                out.add(ConstraintTerm::linear_le({xv, yv, prev}, {1, -1, relax}, relax - slack));
            }
            break;
        }

        const int cur = chain[pos + 1];
        const int eq_relax = std::max({0, dx.max() - dy.min(), dy.max() - dx.min()});
        // b[cur] = 1 => x == y
        out.add(ConstraintTerm::linear_le({xv, yv, cur}, {1, -1, eq_relax}, eq_relax));
        out.add(ConstraintTerm::linear_le({yv, xv, cur}, {1, -1, eq_relax}, eq_relax));
        if (prev < 0) {
            // b[prev] is constant 1: b[cur] = 0 => x < y
            out.add(ConstraintTerm::linear_le({xv, yv, cur}, {1, -1, -relax}, -1));
        } else {
            out.add(ConstraintTerm::linear_le({cur, prev}, {1, -1}, 0));
            out.add(ConstraintTerm::linear_le({xv, yv, prev, cur}, {1, -1, relax, -relax}, relax - 1));
        }
    }
}

namespace {

ConstraintSet decompose_one(const MatrixModel& model, std::span<const int> x, std::span<const int> y, bool strict) {
    for (int v : x) (void)model.domain(v);
    for (int v : y) (void)model.domain(v);
    ConstraintSet out;
    decompose_lex_into(out, x, y, strict, [&](int v) -> const Domain& { return model.domain(v); },
                       model.cell_count());
    return out;
}

}  // namespace

ConstraintSet decompose_lex_le(const MatrixModel& model, std::span<const int> x, std::span<const int> y) {
    return decompose_one(model, x, y, false);
}

ConstraintSet decompose_lex_lt(const MatrixModel& model, std::span<const int> x, std::span<const int> y) {
    return decompose_one(model, x, y, true);
}

ConstraintSet decompose_lex_terms(const MatrixModel& model, const ConstraintSet& set) {
    if (!set.aux.empty()) {
        throw Error(ErrorCode::MalformedTerm, "set already carries auxiliary variables");
    }
    ConstraintSet out;
    auto domain_of = [&](int v) -> const Domain& { return model.domain(v); };
    for (const auto& term : set.terms) {
        if (term.kind == TermKind::LexLe || term.kind == TermKind::LexLt) {
            decompose_lex_into(out, term.x, term.y, term.kind == TermKind::LexLt, domain_of, model.cell_count());
        } else {
            out.add(term);
        }
    }
    return out;
}

}  // namespace matsym::solver
