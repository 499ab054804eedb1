#include "oracles.hh"

#include <posram/errors.hh>
#include <posram/factorial_tree.hh>

#include <doctest.h>

using namespace posram;

TEST_CASE("prefix comparison")
{
    CHECK(prefix_compare({ 1 }, { 1, 2 }) == PrefixRelation::prefix);
    CHECK(prefix_compare({ 1, 2 }, { 1 }) == PrefixRelation::extension);
    CHECK(prefix_compare({ 1, 2 }, { 2, 1 }) == PrefixRelation::incomparable);
    CHECK(prefix_compare({ 1, 2 }, { 1, 2 }) == PrefixRelation::equal);
    for (auto & s : std::vector<OrderedSubset>{ { 0 }, { 2, 1 }, { 3, 0, 1 } })
        CHECK(prefix_compare({}, s) == PrefixRelation::prefix);
    CHECK(underlying({ 3, 0 }) == 0b1001);
    CHECK(to_string(OrderedSubset{ 2, 0 }) == "(2,0)");
}

TEST_CASE("node counts follow the falling-factorial sum")
{
    for (unsigned k = 0 ; k <= 6 ; ++k) {
        std::uint64_t sum = 0;
        for (unsigned j = 0 ; j <= k ; ++j) {
            std::uint64_t falling = 1;
            for (unsigned i = 0 ; i < j ; ++i)
                falling *= k - i;
            sum += falling;
        }
        FactorialTree tree{ low_mask(k) };
        CHECK(tree.size() == sum);
        CHECK(factorial_tree_size(k) == sum);
        CHECK(tree.size() == oracle::strings_over(elements_of(low_mask(k))).size());
    }
    CHECK(FactorialTree{ 0b1111 }.size() == 65);
}

TEST_CASE("node order, parents and lookup")
{
    FactorialTree tree{ 0b10110 };
    auto nodes = oracle::strings_over({ 1, 2, 4 });
    std::sort(nodes.begin(), nodes.end(), [] (auto & a, auto & b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    CHECK(tree.nodes() == nodes);
    CHECK(tree.parent(0) == 0);
    for (std::size_t i = 1 ; i < tree.size() ; ++i) {
        auto & s = tree.node(i);
        auto & p = tree.node(tree.parent(i));
        CHECK(tree.parent(i) < i);
        CHECK(p.size() + 1 == s.size());
        CHECK(prefix_compare(p, s) == PrefixRelation::prefix);
        CHECK(tree.index_of(s) == i);
    }
    CHECK_THROWS_AS(tree.index_of({ 0 }), PreconditionError);
    CHECK_THROWS_AS(FactorialTree{ low_mask(8) }, CapExceeded);
}

TEST_CASE("the prefix order is an up-tree")
{
    auto p = FactorialTree{ 0b111 }.as_poset();
    CHECK(! validate(p));
    CHECK(has_chain_down_sets(p));
    CHECK(! has_chain_up_sets(p));
    for (std::size_t i = 0 ; i < p.size() ; ++i)
        CHECK(p.leq(0, i));
}
