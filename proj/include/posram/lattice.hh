#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace posram
{
    /// A vertex of a Boolean lattice: element i of the ground set is bit i.
    using Mask = std::uint32_t;

    inline constexpr unsigned max_ground_size = 24;

    inline auto popcount(Mask m) -> unsigned
    {
        return static_cast<unsigned>(std::popcount(m));
    }

    inline auto is_subset(Mask a, Mask b) -> bool
    {
        return (a & ~b) == 0;
    }

    inline auto is_strict_subset(Mask a, Mask b) -> bool
    {
        return a != b && is_subset(a, b);
    }

    inline auto comparable(Mask a, Mask b) -> bool
    {
        return is_subset(a, b) || is_subset(b, a);
    }

    inline auto low_mask(unsigned bits) -> Mask
    {
        return bits >= 32 ? ~Mask{0} : (Mask{1} << bits) - 1;
    }

    class GroundSet
    {
        private:
            unsigned _size;

        public:
            /// Throws PreconditionError unless 1 <= size <= 24.
            explicit GroundSet(unsigned size);

            auto size() const -> unsigned { return _size; }
            auto full() const -> Mask { return low_mask(_size); }
            auto vertex_count() const -> std::size_t { return std::size_t{1} << _size; }
            auto contains(Mask m) const -> bool { return is_subset(m, full()); }

            auto operator== (const GroundSet &) const -> bool = default;
    };

    class Subset
    {
        private:
            GroundSet _host;
            Mask _members;

        public:
            /// Throws PreconditionError if members has a bit outside the host.
            Subset(GroundSet host, Mask members);

            /// Labels are 0-based element indices.
            static auto of(GroundSet host, std::initializer_list<unsigned> labels) -> Subset;

            auto host() const -> GroundSet { return _host; }
            auto mask() const -> Mask { return _members; }
            auto size() const -> unsigned { return popcount(_members); }
            auto contains(unsigned label) const -> bool { return label < 32 && ((_members >> label) & 1u); }
            auto elements() const -> std::vector<unsigned>;

            auto operator== (const Subset &) const -> bool = default;
    };

    enum class Relation
    {
        less,
        greater,
        equal,
        incomparable
    };

    auto compare_masks(Mask u, Mask v) -> Relation;

    /// Inclusion order. Throws HostMismatch on different ground sets.
    auto compare(const Subset & u, const Subset & v) -> Relation;

    /// A split of the ground set into an X-part and its complement, the Y-part.
    class Partition
    {
        private:
            GroundSet _host;
            Mask _x_part;

        public:
            Partition(GroundSet host, Mask x_part);

            /// Throws if the two parts overlap or do not cover the ground set.
            static auto from_parts(const Subset & x_part, const Subset & y_part) -> Partition;

            /// X = the first n elements, Y = the rest.
            static auto leading(GroundSet host, unsigned n) -> Partition;

            auto host() const -> GroundSet { return _host; }
            auto x_part() const -> Mask { return _x_part; }
            auto y_part() const -> Mask { return _host.full() & ~_x_part; }
            auto x_size() const -> unsigned { return popcount(_x_part); }
            auto y_size() const -> unsigned { return popcount(y_part()); }

            auto operator== (const Partition &) const -> bool = default;
    };

    struct SplitVertex
    {
        Subset x;
        Subset y;
        Partition partition;

        /// Throws PreconditionError if x or y leaves its part.
        SplitVertex(Subset x, Subset y, Partition partition);
    };

    auto decompose(const Subset & v, const Partition & p) -> SplitVertex;
    auto compose(const SplitVertex & s) -> Subset;

    auto binomial(unsigned n, unsigned r) -> std::uint64_t;

    /// The first m subsets of size floor(size/2) of {0..size-1} in colex order.
    /// Accepts size 0 (the single empty set). Throws PreconditionError when m
    /// exceeds the middle binomial.
    auto middle_layer(unsigned size, std::size_t m) -> std::vector<Mask>;

    auto sperner_antichain(GroundSet q, std::size_t m) -> std::vector<Subset>;

    /// All masks over {0..n-1} with exactly r bits, increasing (colex order).
    auto masks_of_weight(unsigned n, unsigned r) -> std::vector<Mask>;

    /// Order-preserving bijection between subsets of a part and 0..2^|part|-1.
    class PartIndex
    {
        private:
            std::vector<unsigned> _elements;

        public:
            explicit PartIndex(Mask part);

            auto size() const -> unsigned { return static_cast<unsigned>(_elements.size()); }
            auto count() const -> std::size_t { return std::size_t{1} << _elements.size(); }
            auto element(unsigned i) const -> unsigned { return _elements[i]; }
            auto elements() const -> const std::vector<unsigned> & { return _elements; }

            auto expand(std::size_t index) const -> Mask
            {
                Mask result = 0;
                for (unsigned i = 0 ; index != 0 ; ++i, index >>= 1)
                    if (index & 1u)
                        result |= Mask{1} << _elements[i];
                return result;
            }

            auto compress(Mask m) const -> std::size_t
            {
                std::size_t result = 0;
                for (unsigned i = 0 ; i < _elements.size() ; ++i)
                    if ((m >> _elements[i]) & 1u)
                        result |= std::size_t{1} << i;
                return result;
            }
    };

    auto elements_of(Mask m) -> std::vector<unsigned>;

    /// Zero-padded lowercase hex, ceil(n/4) digits (at least one), widened
    /// when m has bits beyond n so nothing is lost.
    auto mask_to_hex(Mask m, unsigned n) -> std::string;

    /// Throws FormatError on anything that is not a hex number fitting in 32 bits.
    auto mask_from_hex(const std::string & s) -> Mask;

    /// Human-readable "{0,2,5}".
    auto mask_to_string(Mask m) -> std::string;
}
