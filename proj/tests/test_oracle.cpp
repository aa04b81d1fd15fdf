#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "matsym/error.hpp"
#include "matsym/flatten.hpp"
#include "matsym/oracle.hpp"
#include "matsym/problems.hpp"
#include "matsym/symbreak.hpp"
#include "support.hpp"

using namespace matsym;
using namespace matsym::oracle;
namespace ts = testsupport;

namespace {

MatrixModel grid(std::vector<int> dims, Domain d = Domain{0, 1}) {
    const auto sym = SymmetrySpec::full(dims);
    return MatrixModel::build("g", std::move(dims), d, {}, sym);
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("enumeration") {
    auto m = grid({2, 2});
    auto all = enumerate_solutions(m);
    CHECK(all.size() == 16);
    CHECK(std::is_sorted(all.begin(), all.end()));
    ConstraintSet rows;
    rows.add(ConstraintTerm::linear_eq({0, 1}, {1, 1}, 1));
    rows.add(ConstraintTerm::linear_eq({2, 3}, {1, 1}, 1));
    auto m2 = MatrixModel::build("r", {2, 2}, Domain{0, 1}, rows, SymmetrySpec::full(std::vector{2, 2}));
    CHECK(enumerate_solutions(m2).size() == 4);
    try {
        enumerate_solutions(grid({4, 4}, Domain::range(0, 2)));
        FAIL("expected BudgetExceeded");
    } catch (const BudgetExceeded& e) {
        CHECK(e.budget() == "enumeration");
        CHECK(e.required() == "43046721");
    }
}

TEST_CASE("serial and parallel kernels agree") {
    auto m = problems::random_model({3, 3}, 3, 0.5, 11);
    auto s = enumerate_solutions(m, {}, Execution::Serial);
    auto p = enumerate_solutions(m, {}, Execution::Parallel);
    CHECK(s == p);
    auto full = enumerate_full_assignments(grid({3, 3}), {}, Execution::Serial);
    Canonicalizer canon(grid({3, 3}));
    CHECK(canon.canonical_all(full, Execution::Serial) == canon.canonical_all(full, Execution::Parallel));
}

TEST_CASE("orbit partition") {
    auto m = grid({2, 2});
    CHECK(partition_into_orbits(enumerate_solutions(m), m).orbits.size() == 7);

    std::vector<Assignment> perms;
    auto p = ts::identity(3);
    do {
        Assignment a(9, 0);
        for (int i = 0; i < 3; ++i) a[static_cast<std::size_t>(i * 3 + p[static_cast<std::size_t>(i)])] = 1;
        perms.push_back(a);
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(partition_into_orbits(perms, grid({3, 3})).orbits.size() == 1);

    auto none = m.with_symmetry(SymmetrySpec::none(m.dims()));
    CHECK(partition_into_orbits(enumerate_solutions(none), none).orbits.size() == 16);
}

TEST_CASE("canonical form matches brute-force minimum image") {
    for (auto [r, c] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {3, 2}, {4, 2}}) {
        auto m = grid({r, c});
        Canonicalizer canon(m);
        const auto all = ts::all_grids(r, c, {0, 1});
        std::set<Assignment> reps;
        for (const auto& a : all) {
            const auto k = canon.canonical(a);
            CHECK(k == ts::min_image(a, r, c));
            reps.insert(k);
        }
        CHECK(partition_into_orbits(all, m).orbits.size() == reps.size());
    }
}

TEST_CASE("canonical form with partial symmetry") {
    auto m = MatrixModel::build("p", {4, 3}, Domain::range(0, 2), {}, SymmetrySpec({{{0, 2}, {1, 3}}, {{0, 1}, {2}}}));
    Canonicalizer canon(m);
    std::mt19937 gen(3);
    for (int t = 0; t < 200; ++t) {
        Assignment a(12);
        for (auto& v : a) v = static_cast<int>(gen() % 3);
        Assignment best = a;
        for_each_group_element(m.symmetry(), m.dims(), [&](const std::vector<Permutation>& e) {
            best = std::min(best, apply_permutation(a, m.dims(), m.symmetry(), e));
            return true;
        });
        CHECK(canon.canonical(a) == best);
    }
}

TEST_CASE("orbits of the 2x2x2 cube") {
    const std::vector<int> dims{2, 2, 2};
    auto m = MatrixModel::build("cube", dims, Domain{0, 1}, {}, SymmetrySpec::full(dims));
    std::set<Assignment> reps;
    for (const auto& a : ts::all_vectors(8, {0, 1})) {
        Assignment best = a;
        for (int flips = 0; flips < 8; ++flips) {
            Assignment img(8);
            for (int i = 0; i < 8; ++i) img[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i ^ flips)];
            best = std::min(best, img);
        }
        reps.insert(best);
    }
    CHECK(partition_into_orbits(enumerate_solutions(m), m).orbits.size() == reps.size());
}

TEST_CASE("orbit partition ignores input order") {
    auto m = problems::random_model({3, 3}, 2, 0.3, 4);
    auto sols = enumerate_solutions(m);
    auto shuffled = sols;
    std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937(1));
    auto a = partition_into_orbits(sols, m);
    auto b = partition_into_orbits(shuffled, m);
    CHECK(a.canonical == b.canonical);
    REQUIRE(a.orbits.size() == b.orbits.size());
    for (std::size_t i = 0; i < a.orbits.size(); ++i) {
        CHECK(std::set<Assignment>(a.orbits[i].begin(), a.orbits[i].end()) ==
              std::set<Assignment>(b.orbits[i].begin(), b.orbits[i].end()));
    }
}

TEST_CASE("mapping between orbit members") {
    auto m = grid({3, 2});
    Canonicalizer canon(m);
    const Assignment a{0, 1, 0, 1, 1, 0};
    const Assignment b{0, 1, 1, 0, 1, 0};
    auto map = canon.find_mapping(a, b);
    REQUIRE(map.has_value());
    CHECK(apply_permutation(a, m.dims(), m.symmetry(), *map) == b);
    CHECK_FALSE(canon.find_mapping(a, Assignment{0, 0, 0, 0, 0, 1}).has_value());
}

TEST_CASE("scheme reports") {
    auto r = check_soundness(grid({2, 2}), symbreak::parse_scheme("doublelex"));
    CHECK(r.sound());
    CHECK(r.survivor_count == 7);
    CHECK(r.orbit_count == 7);
    CHECK(r.complete());

    auto r32 = check_soundness(grid({3, 2}), symbreak::parse_scheme("doublelex"));
    CHECK(r32.sound());
    CHECK_FALSE(r32.complete());
    CHECK(r32.orbits_with_multiple_survivors > 0);
    const std::pair<Assignment, Assignment> known{{0, 1, 0, 1, 1, 0}, {0, 1, 1, 0, 1, 0}};
    bool listed = false;
    for (const auto& [x, y] : r32.witness_pairs) {
        CHECK(ts::same_orbit(x, y, 3, 2));
        listed = listed || (x == known.first && y == known.second) || (x == known.second && y == known.first);
    }
    CHECK(!r32.witness_pairs.empty());
    MESSAGE("known 3x2 pair among reported witnesses: " << listed);

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto m = problems::random_model({3, 3}, 2, 0.3, seed);
        auto ll = check_soundness(m, symbreak::parse_scheme("lexleader"));
        CHECK(ll.complete());
        CHECK(ll.canonical_survivors == ll.survivor_count);
    }
}

TEST_CASE("report json") {
    auto m = grid({3, 2});
    auto j = to_json(check_soundness(m, symbreak::parse_scheme("doublelex")), m);
    CHECK(j["sound"] == true);
    CHECK(j["complete"] == false);
    CHECK(j["witness_pairs"].size() >= 1);
}

TEST_CASE("entailment") {
    using symbreak::parse_scheme;
    auto m = grid({2, 3});
    auto e = check_entailment(m, parse_scheme("lexleader"), parse_scheme("doublelex"));
    CHECK(e.holds);
    CHECK(e.counterexamples.empty());
    auto back = check_entailment(grid({3, 2}), parse_scheme("doublelex"), parse_scheme("lexleader"));
    CHECK_FALSE(back.holds);
    REQUIRE_FALSE(back.counterexamples.empty());
    auto ll = symbreak::generate(grid({3, 2}), parse_scheme("lexleader"));
    auto dl = symbreak::generate(grid({3, 2}), parse_scheme("doublelex"));
    for (const auto& c : back.counterexamples) {
        CHECK(holds(dl, c));
        CHECK_FALSE(holds(ll, c));
    }
}

TEST_CASE("incompleteness sweeps") {
    using symbreak::parse_scheme;
    const Domain bin{0, 1};
    auto dl = find_smallest_incompleteness_witness(parse_scheme("doublelex"), 9, bin);
    REQUIRE(dl.witness.has_value());
    CHECK(cell_count_of(dl.witness->dims) <= 6);
    CHECK(ts::same_orbit(dl.witness->first, dl.witness->second, dl.witness->dims[0], dl.witness->dims[1]));
    MESSAGE("doublelex witness dims " << dl.witness->dims[0] << "x" << dl.witness->dims[1]);

    CHECK_FALSE(find_smallest_incompleteness_witness(parse_scheme("lexleader"), 9, bin).witness.has_value());

    auto fp = find_smallest_incompleteness_witness(parse_scheme("first-pos"), 9, bin);
    REQUIRE(fp.witness.has_value());
    CHECK(fp.witness->dims[0] == 2);
    CHECK(fp.witness->dims[1] <= 2);

    auto rs = find_smallest_incompleteness_witness(parse_scheme("row-sum"), 4, bin);
    REQUIRE(rs.witness.has_value());
    CHECK(rs.witness->dims[0] == 2);
    CHECK(ts::same_orbit(rs.witness->first, rs.witness->second, 2, rs.witness->dims[1]));

    // 2x2: a pair whose two rows have equal sums survives twice
    auto rep = check_soundness(grid({2, 2}), parse_scheme("row-sum"), {});
    const Assignment a{0, 1, 1, 0}, b{1, 0, 0, 1};
    auto rsum = symbreak::generate(grid({2, 2}), parse_scheme("row-sum"));
    CHECK(holds(rsum, a));
    CHECK(holds(rsum, b));
    CHECK(ts::same_orbit(a, b, 2, 2));
    CHECK(rep.orbits_with_multiple_survivors >= 1);
}

TEST_CASE("leftover symmetry grows with size") {
    std::vector<std::uint64_t> extra;
    for (auto [r, c] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3}}) {
        auto rep = check_soundness(grid({r, c}), symbreak::parse_scheme("doublelex"));
        extra.push_back(rep.survivor_count - rep.orbit_count);
    }
    CHECK(extra[0] == 0);
    CHECK(extra[0] <= extra[1]);
    CHECK(extra[1] <= extra[2]);
}

TEST_CASE("survivor monotonicity across schemes") {
    using symbreak::parse_scheme;
    int violations = 0;
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        auto m = problems::random_model({3, 3}, 2, 0.3, seed);
        auto truth = compute_ground_truth(m);
        auto count = [&](const char* s) {
            return check_scheme(truth, symbreak::generate(m, parse_scheme(s)), s).survivor_count;
        };
        const auto ll = count("lexleader"), dla = count("doublelex+allperm"), dl = count("doublelex"),
                   rs = count("row-sum");
        if (!(ll <= dla && dla <= dl && dl <= rs)) {
            ++violations;
            MESSAGE("seed " << seed << ": lexleader " << ll << ", doublelex+allperm " << dla << ", doublelex " << dl
                            << ", row-sum " << rs);
        }
    }
    MESSAGE("monotonicity violations: " << violations);
}

TEST_CASE("multiset rows combined with lex orderings") {
    auto m = grid({2, 2}, Domain::range(0, 2));
    auto both_rows = check_soundness(m, symbreak::parse_scheme("multiset-rows+doublelex"));
    CHECK_FALSE(both_rows.sound());
    CHECK(both_rows.orbits_with_zero_survivors == 1);

    for (auto [r, c, d] : std::vector<std::tuple<int, int, int>>{{2, 2, 3}, {3, 2, 3}, {2, 3, 3}, {3, 3, 3}}) {
        auto g = grid({r, c}, Domain::range(0, d - 1));
        auto cons = symbreak::gen_multiset_rows(g);
        for (int j = 0; j + 1 < c; ++j) {
            cons.add(ConstraintTerm::lex_le(symbreak::col_cells(g, j), symbreak::col_cells(g, j + 1)));
        }
        auto rep = check_scheme(compute_ground_truth(g), cons, "multiset-rows+lex-cols");
        MESSAGE(r << "x" << c << " over " << d << " values: multiset rows with lex columns sound=" << rep.sound()
                  << " orbits=" << rep.orbit_count << " survivors=" << rep.survivor_count);
    }
}

TEST_CASE("group budget") {
    Budgets b;
    b.group = 4;
    CHECK_THROWS_AS(Canonicalizer(grid({2, 2, 2}), b), BudgetExceeded);
}

}  // TEST_SUITE
