#pragma once

#include <posram/lattice.hh>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace posram
{
    enum class Color : std::uint8_t
    {
        red = 0,
        blue = 1
    };

    inline auto other(Color c) -> Color
    {
        return c == Color::blue ? Color::red : Color::blue;
    }

    auto to_string(Color c) -> std::string;
    auto parse_color(const std::string & s) -> std::optional<Color>;

    /// A total blue/red coloring of Q([N]), one bit per vertex (1 = blue).
    class Coloring
    {
        private:
            GroundSet _ground;
            std::vector<std::uint64_t> _blue;

        public:
            Coloring(GroundSet ground, Color fill);

            auto ground() const -> GroundSet { return _ground; }
            auto vertex_count() const -> std::size_t { return _ground.vertex_count(); }

            auto is_blue(Mask v) const -> bool { return (_blue[v >> 6] >> (v & 63u)) & 1u; }
            auto at(Mask v) const -> Color { return is_blue(v) ? Color::blue : Color::red; }

            /// Throws HostMismatch for a vertex over another ground set.
            auto get(const Subset & v) const -> Color;

            /// A copy with one vertex recolored.
            auto set(const Subset & v, Color c) const -> Coloring;

            /// In-place recolor, for builders that own the coloring.
            void assign(Mask v, Color c)
            {
                auto bit = std::uint64_t{1} << (v & 63u);
                if (c == Color::blue)
                    _blue[v >> 6] |= bit;
                else
                    _blue[v >> 6] &= ~bit;
            }

            auto count(Color c) const -> std::size_t;

            /// Vertices of one color, increasing.
            auto vertices_of(Color c) const -> std::vector<Mask>;

            auto operator== (const Coloring &) const -> bool = default;
    };

    namespace source
    {
        struct Constant
        {
            Color color;
        };

        /// by_level[i] colors every vertex of size i; needs N+1 entries.
        struct Layered
        {
            std::vector<Color> by_level;
        };

        /// Listed vertices blue, all others red.
        struct BlueSet
        {
            std::vector<Subset> vertices;
        };

        /// Each vertex blue with probability p, drawn from the seeded stream only.
        struct Random
        {
            std::optional<std::uint64_t> seed;
            double p = 0.5;
        };
    }

    using ColoringSource = std::variant<source::Constant, source::Layered, source::BlueSet, source::Random>;

    auto build(GroundSet ground, const ColoringSource & src) -> Coloring;

    /// PRC1: "PRC1 N=<n>" then ceil(2^N/4) hex digits, vertex 0 in the most
    /// significant bit of the first digit, 1 = blue, unused low bits zero.
    auto write_prc1(std::ostream & out, const Coloring & c) -> void;
    auto read_prc1(std::istream & in) -> Coloring;
    auto to_prc1(const Coloring & c) -> std::string;
    auto from_prc1(const std::string & text) -> Coloring;

    auto save_coloring(const std::string & path, const Coloring & c) -> void;
    auto load_coloring(const std::string & path) -> Coloring;

    /// The coloring of Q(part) obtained by reading c on {W | offset : W subset of part},
    /// with part relabelled to 0..|part|-1 in increasing order.
    auto restrict_coloring(const Coloring & c, Mask part, Mask offset) -> Coloring;
}
