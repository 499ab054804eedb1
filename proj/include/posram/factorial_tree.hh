#pragma once

#include <posram/lattice.hh>
#include <posram/poset.hh>

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace posram
{
    /// A string of distinct ground-set labels; the empty string is allowed.
    using OrderedSubset = std::vector<unsigned>;

    enum class PrefixRelation
    {
        prefix,
        extension,
        equal,
        incomparable
    };

    /// prefix: s is a strict prefix of t; extension: t is a strict prefix of s.
    auto prefix_compare(const OrderedSubset & s, const OrderedSubset & t) -> PrefixRelation;

    auto underlying(const OrderedSubset & s) -> Mask;

    auto to_string(const OrderedSubset & s) -> std::string;

    /// Largest alphabet for which a factorial tree is materialized.
    inline constexpr unsigned max_tree_alphabet = 7;

    /// Sum over j = 0..k of k!/(k-j)!.
    auto factorial_tree_size(unsigned k) -> std::uint64_t;

    /// All ordered subsets of a label set, by length and then
    /// lexicographically, so every parent precedes its children.
    class FactorialTree
    {
        private:
            Mask _alphabet;
            std::vector<OrderedSubset> _nodes;
            std::vector<std::size_t> _parent;
            std::map<OrderedSubset, std::size_t> _index;

        public:
            explicit FactorialTree(Mask alphabet);

            auto alphabet() const -> Mask { return _alphabet; }
            auto size() const -> std::size_t { return _nodes.size(); }
            auto node(std::size_t i) const -> const OrderedSubset & { return _nodes[i]; }
            auto nodes() const -> const std::vector<OrderedSubset> & { return _nodes; }

            /// Parent index; the root (empty string, index 0) is its own parent.
            auto parent(std::size_t i) const -> std::size_t { return _parent[i]; }

            /// Throws PreconditionError for a string that is not a node.
            auto index_of(const OrderedSubset & s) const -> std::size_t;

            /// The prefix order as an abstract poset, node numbering preserved.
            auto as_poset() const -> FinitePoset;
    };
}
