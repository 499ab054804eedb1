#include <posram/coloring.hh>
#include <posram/errors.hh>
#include <posram/rng.hh>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

using std::string;
using std::vector;

namespace posram
{
    using std::to_string;

    auto to_string(Color c) -> string
    {
        return c == Color::blue ? "blue" : "red";
    }

    auto parse_color(const string & s) -> std::optional<Color>
    {
        if (s == "blue")
            return Color::blue;
        if (s == "red")
            return Color::red;
        return std::nullopt;
    }

    Coloring::Coloring(GroundSet ground, Color fill) :
        _ground(ground),
        _blue((ground.vertex_count() + 63) / 64, 0)
    {
        if (fill == Color::blue) {
            for (auto & w : _blue)
                w = ~std::uint64_t{0};
            if (ground.vertex_count() % 64 != 0)
                _blue.back() = (std::uint64_t{1} << (ground.vertex_count() % 64)) - 1;
        }
    }

    auto Coloring::get(const Subset & v) const -> Color
    {
        if (v.host() != _ground)
            throw HostMismatch{ "coloring lookup with a vertex over another ground set" };
        return at(v.mask());
    }

    auto Coloring::set(const Subset & v, Color c) const -> Coloring
    {
        if (v.host() != _ground)
            throw HostMismatch{ "coloring update with a vertex over another ground set" };
        Coloring result = *this;
        result.assign(v.mask(), c);
        return result;
    }

    auto Coloring::count(Color c) const -> std::size_t
    {
        std::size_t blue = 0;
        for (auto w : _blue)
            blue += static_cast<std::size_t>(std::popcount(w));
        return c == Color::blue ? blue : vertex_count() - blue;
    }

    auto Coloring::vertices_of(Color c) const -> vector<Mask>
    {
        vector<Mask> result;
        for (std::size_t v = 0 ; v < vertex_count() ; ++v)
            if (at(static_cast<Mask>(v)) == c)
                result.push_back(static_cast<Mask>(v));
        return result;
    }

    namespace
    {
        struct Builder
        {
            GroundSet ground;

            auto operator() (const source::Constant & s) const -> Coloring
            {
                return Coloring{ ground, s.color };
            }

            auto operator() (const source::Layered & s) const -> Coloring
            {
                if (s.by_level.size() != ground.size() + 1)
                    throw PreconditionError{ "layered coloring needs " + to_string(ground.size() + 1) + " levels" };
                Coloring result{ ground, Color::red };
                for (std::size_t v = 0 ; v < ground.vertex_count() ; ++v)
                    result.assign(static_cast<Mask>(v), s.by_level[popcount(static_cast<Mask>(v))]);
                return result;
            }

            auto operator() (const source::BlueSet & s) const -> Coloring
            {
                Coloring result{ ground, Color::red };
                for (auto & v : s.vertices) {
                    if (v.host() != ground)
                        throw HostMismatch{ "blue vertex over another ground set" };
                    result.assign(v.mask(), Color::blue);
                }
                return result;
            }

            auto operator() (const source::Random & s) const -> Coloring
            {
                if (! s.seed)
                    throw PreconditionError{ "random coloring needs an explicit seed" };
                if (! (s.p >= 0.0 && s.p <= 1.0))
                    throw PreconditionError{ "blue probability outside [0,1]" };
                std::mt19937_64 rng{ derive_seed(*s.seed, ground.size()) };
                Coloring result{ ground, Color::red };
                for (std::size_t v = 0 ; v < ground.vertex_count() ; ++v)
                    if (bernoulli(rng, s.p))
                        result.assign(static_cast<Mask>(v), Color::blue);
                return result;
            }
        };
    }

    auto build(GroundSet ground, const ColoringSource & src) -> Coloring
    {
        return std::visit(Builder{ ground }, src);
    }

    auto write_prc1(std::ostream & out, const Coloring & c) -> void
    {
        static const char digits[] = "0123456789abcdef";
        auto n = c.vertex_count();
        out << "PRC1 N=" << c.ground().size() << '\n';
        string payload((n + 3) / 4, '0');
        for (std::size_t d = 0 ; d < payload.size() ; ++d) {
            unsigned nibble = 0;
            for (unsigned b = 0 ; b < 4 ; ++b) {
                auto v = 4 * d + b;
                if (v < n && c.is_blue(static_cast<Mask>(v)))
                    nibble |= 8u >> b;
            }
            payload[d] = digits[nibble];
        }
        out << payload << '\n';
    }

    auto read_prc1(std::istream & in) -> Coloring
    {
        string header;
        if (! std::getline(in, header))
            throw FormatError{ "PRC1: empty input" };
        if (! header.empty() && header.back() == '\r')
            header.pop_back();
        if (header.rfind("PRC1 N=", 0) != 0)
            throw FormatError{ "PRC1: bad magic line '" + header + "'" };

        auto digits = header.substr(7);
        if (digits.empty() || digits.size() > 2 || digits.find_first_not_of("0123456789") != string::npos)
            throw FormatError{ "PRC1: bad dimension '" + digits + "'" };
        unsigned n = static_cast<unsigned>(std::stoul(digits));
        if (n < 1 || n > max_ground_size)
            throw FormatError{ "PRC1: dimension " + digits + " out of range" };
        GroundSet ground{ n };

        string payload;
        std::getline(in, payload);
        if (! payload.empty() && payload.back() == '\r')
            payload.pop_back();

        auto expected = (ground.vertex_count() + 3) / 4;
        if (payload.size() != expected)
            throw FormatError{ "PRC1: payload length " + to_string(payload.size()) + ", expected " + to_string(expected) };

        Coloring result{ ground, Color::red };
        for (std::size_t d = 0 ; d < payload.size() ; ++d) {
            char ch = payload[d];
            unsigned nibble;
            if (ch >= '0' && ch <= '9')
                nibble = ch - '0';
            else if (ch >= 'a' && ch <= 'f')
                nibble = ch - 'a' + 10;
            else if (ch >= 'A' && ch <= 'F')
                nibble = ch - 'A' + 10;
            else
                throw FormatError{ string{ "PRC1: non-hex payload character '" } + ch + "'" };

            for (unsigned b = 0 ; b < 4 ; ++b) {
                if (! (nibble & (8u >> b)))
                    continue;
                auto v = 4 * d + b;
                if (v >= ground.vertex_count())
                    throw FormatError{ "PRC1: padding bits set past the last vertex" };
                result.assign(static_cast<Mask>(v), Color::blue);
            }
        }

        string rest;
        while (std::getline(in, rest))
            if (rest.find_first_not_of(" \t\r") != string::npos)
                throw FormatError{ "PRC1: trailing data after payload" };

        return result;
    }

    auto to_prc1(const Coloring & c) -> string
    {
        std::ostringstream s;
        write_prc1(s, c);
        return s.str();
    }

    auto from_prc1(const string & text) -> Coloring
    {
        std::istringstream s{ text };
        return read_prc1(s);
    }

    auto save_coloring(const string & path, const Coloring & c) -> void
    {
        std::ofstream out{ path, std::ios::binary };
        if (! out)
            throw Error{ "cannot write " + path };
        write_prc1(out, c);
    }

    auto load_coloring(const string & path) -> Coloring
    {
        std::ifstream in{ path, std::ios::binary };
        if (! in)
            throw Error{ "cannot read " + path };
        return read_prc1(in);
    }

    auto restrict_coloring(const Coloring & c, Mask part, Mask offset) -> Coloring
    {
        PartIndex index{ part };
        GroundSet ground{ index.size() };
        Coloring result{ ground, Color::red };
        for (std::size_t i = 0 ; i < index.count() ; ++i)
            result.assign(static_cast<Mask>(i), c.at(index.expand(i) | offset));
        return result;
    }
}
