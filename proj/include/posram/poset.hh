#pragma once

#include <posram/coloring.hh>
#include <posram/lattice.hh>

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace posram
{
    /// Largest pattern the copy search accepts.
    inline constexpr std::size_t max_pattern_size = 16;

    /// A finite poset given by its full (reflexive) order relation.
    ///
    /// Nothing stops a caller from building a relation that is not a partial
    /// order; validate() reports which axiom fails. Every operation that needs
    /// a genuine poset says so.
    class FinitePoset
    {
        private:
            std::size_t _size = 0;
            std::size_t _stride = 0;
            std::vector<std::uint64_t> _bits;

        public:
            FinitePoset() = default;

            /// The discrete order on n elements (an antichain).
            explicit FinitePoset(std::size_t n);

            auto size() const -> std::size_t { return _size; }

            auto leq(std::size_t a, std::size_t b) const -> bool
            {
                return (_bits[a * _stride + b / 64] >> (b % 64)) & 1u;
            }

            auto less(std::size_t a, std::size_t b) const -> bool { return a != b && leq(a, b); }
            auto comparable(std::size_t a, std::size_t b) const -> bool { return leq(a, b) || leq(b, a); }

            void set_leq(std::size_t a, std::size_t b, bool value = true);

            /// Warshall closure; keeps reflexivity.
            void close_transitively();

            auto operator== (const FinitePoset &) const -> bool = default;
    };

    struct PosetViolation
    {
        enum class Axiom
        {
            reflexivity,
            antisymmetry,
            transitivity
        };

        Axiom axiom;
        std::size_t a, b, c;

        auto describe() const -> std::string;
    };

    /// The first violated axiom (scanning reflexivity, then antisymmetry, then
    /// transitivity, in lexicographic element order), or nothing.
    auto validate(const FinitePoset & p) -> std::optional<PosetViolation>;

    struct PatternKind
    {
        enum class Shape
        {
            lambda,
            vee,
            chain,
            cube,
            independent_chains,
            antichain
        };

        Shape shape;
        unsigned first = 0;
        unsigned second = 0;

        static auto lambda() -> PatternKind { return { Shape::lambda }; }
        static auto vee() -> PatternKind { return { Shape::vee }; }
        static auto chain(unsigned length) -> PatternKind { return { Shape::chain, length }; }
        static auto cube(unsigned dim) -> PatternKind { return { Shape::cube, dim }; }
        static auto independent_chains(unsigned count, unsigned length) -> PatternKind { return { Shape::independent_chains, count, length }; }
        static auto antichain(unsigned count) -> PatternKind { return { Shape::antichain, count }; }
    };

    /// Element numbering: lambda has bottoms 0, 1 and top 2; vee has bottom 0
    /// and tops 1, 2; chains count bottom-up; cubes by subset index;
    /// independent chains block by block, each bottom-up.
    auto standard_poset(const PatternKind & kind) -> FinitePoset;

    /// Names accepted by the CLI: lambda, vee, Q<k>, chain<l>, antichain<m>,
    /// chains<k>x<l>.
    auto parse_pattern_name(const std::string & name) -> std::optional<PatternKind>;

    /// Text format: element count on the first line, then one "a < b" line
    /// per cover pair. The transitive closure is taken on load. Throws
    /// FormatError on syntax errors or a relation that is not a partial order.
    auto read_poset(std::istream & in) -> FinitePoset;
    auto write_poset(std::ostream & out, const FinitePoset & p) -> void;

    /// Cover pairs a < b in lexicographic order.
    auto cover_pairs(const FinitePoset & p) -> std::vector<std::pair<std::size_t, std::size_t>>;

    /// The subposet of Q_N induced by a list of vertices, in list order.
    auto induced_poset(std::span<const Mask> vertices) -> FinitePoset;

    /// Disjoint union, second block numbered after the first.
    auto disjoint_union(const FinitePoset & a, const FinitePoset & b) -> FinitePoset;

    struct EmbeddingMap
    {
        FinitePoset pattern;
        GroundSet host;
        std::vector<Mask> images;
    };

    /// Injective and order-preserving in both directions.
    auto is_embedding(const EmbeddingMap & e) -> bool;

    /// Complete backtracking search for an induced copy of pattern among the
    /// host vertices. Host vertices are tried in increasing vertex order.
    /// Throws CapExceeded for patterns above max_pattern_size.
    auto induced_copy_search(const FinitePoset & pattern, std::span<const Subset> host_vertices) -> std::optional<EmbeddingMap>;
    auto induced_copy_search(const FinitePoset & pattern, GroundSet host, std::span<const Mask> host_vertices) -> std::optional<EmbeddingMap>;

    /// Whether some induced copy uses the anchor vertex (which must be in the
    /// list). Used by incremental searches, where a new copy must contain the
    /// vertex just added.
    auto has_copy_through(const FinitePoset & pattern, std::span<const Mask> host_vertices, Mask anchor) -> bool;

    /// Copy search into an abstract host poset; images are host element indices.
    auto induced_copy_search(const FinitePoset & pattern, const FinitePoset & host) -> std::optional<std::vector<std::size_t>>;

    /// Lambda-shape detection: if p is a copy of lambda, the element indices
    /// of its two bottoms and its top.
    auto lambda_shape(const FinitePoset & p) -> std::optional<std::array<std::size_t, 3>>;

    /// Some vertex w in the list with two incomparable list members strictly
    /// below it: (bottom, bottom, top), scanning w and then pairs in increasing
    /// vertex order.
    auto find_lambda_triple(std::span<const Mask> vertices) -> std::optional<std::array<Mask, 3>>;

    enum class StructureClass
    {
        independent_chains,
        independent_up_trees,
        contains_lambda,
        both
    };

    /// Lambda-free (every down-set a chain) and vee-free (every up-set a
    /// chain) decide the class; lambda-freeness takes precedence in naming, so
    /// a lambda-free poset containing a vee is independent_up_trees.
    auto classify_structure(const FinitePoset & p) -> StructureClass;

    auto has_chain_down_sets(const FinitePoset & p) -> bool;
    auto has_chain_up_sets(const FinitePoset & p) -> bool;

    auto to_string(StructureClass c) -> std::string;

    /// A monochromatic lambda (bottom, bottom, top) of the given color, with
    /// the least possible top and bottoms in increasing order.
    /// Linear in the number of vertices times N.
    auto find_monochromatic_lambda(const Coloring & c, Color color) -> std::optional<std::array<Mask, 3>>;

    /// Induced copy of pattern inside one color class. Lambda patterns use
    /// find_monochromatic_lambda instead of generic search.
    auto contains_pattern(const Coloring & c, const FinitePoset & pattern, Color color) -> std::optional<EmbeddingMap>;
}
