#include <posram/cert_io.hh>
#include <posram/errors.hh>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace posram
{
    using std::to_string;

    auto certificate_type(const Certificate & c) -> string
    {
        static const char * const names[] = { "xgood", "chain", "shrub", "pattern", "frameworks" };
        return names[c.index()];
    }

    auto certificate_host(const Certificate & c) -> GroundSet
    {
        struct Visitor
        {
            auto operator() (const XGoodCopyCert & x) const -> GroundSet { return x.partition.host(); }
            auto operator() (const BlueChainCert & x) const -> GroundSet { return x.partition.host(); }
            auto operator() (const ShrubCert & x) const -> GroundSet { return x.host; }
            auto operator() (const PatternCopyCert & x) const -> GroundSet { return x.copy.host; }
            auto operator() (const FrameworkBundle & x) const -> GroundSet { return x.host; }
        };
        return std::visit(Visitor{}, c);
    }

    auto as_cube_embedding(const XGoodCopyCert & cert) -> EmbeddingMap
    {
        return EmbeddingMap{ standard_poset(PatternKind::cube(cert.partition.x_size())), cert.partition.host(), cert.images };
    }

    namespace
    {
        auto color_name(const optional<Color> & c) -> string
        {
            return c ? to_string(*c) : "none";
        }

        struct Writer
        {
            std::ostream & out;
            unsigned n;

            auto hex(Mask m) const -> string { return mask_to_hex(m, n); }

            auto vertices(const vector<Mask> & vs) const -> void
            {
                for (auto v : vs)
                    out << "V " << hex(v) << '\n';
            }

            auto operator() (const XGoodCopyCert & c) const -> void
            {
                out << "X " << hex(c.partition.x_part()) << '\n';
                out << "COLOR " << color_name(c.color) << '\n';
                vertices(c.images);
            }

            auto operator() (const BlueChainCert & c) const -> void
            {
                out << "X " << hex(c.partition.x_part()) << '\n';
                out << "ORD";
                for (auto l : c.ordering)
                    out << ' ' << l;
                out << '\n';
                vertices(c.vertices);
            }

            auto operator() (const ShrubCert & c) const -> void
            {
                out << "Y " << hex(c.y_part) << '\n';
                out << "KIND " << (c.weak ? "weak" : "full") << '\n';
                out << "COLOR " << color_name(c.color) << '\n';
                vertices(c.images);
            }

            auto operator() (const PatternCopyCert & c) const -> void
            {
                out << "COLOR " << to_string(c.color) << '\n';
                out << "PATTERN " << c.copy.pattern.size() << '\n';
                for (auto [a, b] : cover_pairs(c.copy.pattern))
                    out << "LT " << a << ' ' << b << '\n';
                for (size_t i = 0 ; i < c.copy.images.size() ; ++i)
                    out << "MAP " << i << ' ' << hex(c.copy.images[i]) << '\n';
            }

            auto operator() (const FrameworkBundle & c) const -> void
            {
                out << "K " << c.k << '\n';
                out << "B " << c.block_size << '\n';
                for (auto & f : c.frameworks)
                    out << "F " << hex(f.y) << ' ' << hex(f.a) << ' ' << hex(f.x) << '\n';
            }
        };

        class Reader
        {
            private:
                vector<vector<string>> _lines;
                size_t _at = 0;

            public:
                explicit Reader(std::istream & in)
                {
                    string line;
                    while (std::getline(in, line)) {
                        if (! line.empty() && line.back() == '\r')
                            line.pop_back();
                        std::istringstream words{ line };
                        vector<string> tokens;
                        for (string w ; words >> w ; )
                            tokens.push_back(w);
                        if (! tokens.empty())
                            _lines.push_back(std::move(tokens));
                    }
                }

                auto done() const -> bool { return _at == _lines.size(); }

                auto peek_is(const string & key) const -> bool
                {
                    return _at < _lines.size() && _lines[_at][0] == key;
                }

                auto next(const string & key, size_t args) -> const vector<string> &
                {
                    if (_at == _lines.size())
                        throw FormatError{ "certificate: expected '" + key + "' line, found end of input" };
                    auto & line = _lines[_at];
                    if (line[0] != key)
                        throw FormatError{ "certificate: expected '" + key + "' line, found '" + line[0] + "'" };
                    if (args != size_t(-1) && line.size() != args + 1)
                        throw FormatError{ "certificate: '" + key + "' line takes " + std::to_string(args) + " fields" };
                    ++_at;
                    return line;
                }

                auto finish() const -> void
                {
                    if (! done())
                        throw FormatError{ "certificate: unexpected '" + _lines[_at][0] + "' line" };
                }
        };

        auto parse_unsigned(const string & s) -> unsigned
        {
            if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != string::npos)
                throw FormatError{ "certificate: bad number '" + s + "'" };
            return static_cast<unsigned>(std::stoul(s));
        }

        auto parse_optional_color(const string & s) -> optional<Color>
        {
            if (s == "none")
                return std::nullopt;
            if (auto c = parse_color(s))
                return c;
            throw FormatError{ "certificate: bad color '" + s + "'" };
        }

        auto read_vertices(Reader & r) -> vector<Mask>
        {
            vector<Mask> result;
            while (r.peek_is("V"))
                result.push_back(mask_from_hex(r.next("V", 1)[1]));
            return result;
        }

        auto make_partition(GroundSet host, Mask x) -> Partition
        {
            if (! host.contains(x))
                throw FormatError{ "certificate: X-part outside the ground set" };
            return Partition{ host, x };
        }
    }

    auto write_certificate(std::ostream & out, const Certificate & cert) -> void
    {
        auto host = certificate_host(cert);
        out << "CERT " << certificate_type(cert) << " N=" << host.size() << '\n';
        std::visit(Writer{ out, host.size() }, cert);
    }

    auto read_certificate(std::istream & in) -> Certificate
    {
        Reader r{ in };
        auto & header = r.next("CERT", 2);
        auto type = header[1];
        if (header[2].rfind("N=", 0) != 0)
            throw FormatError{ "certificate: header needs N=<n>" };
        auto n = parse_unsigned(header[2].substr(2));
        if (n < 1 || n > max_ground_size)
            throw FormatError{ "certificate: dimension " + std::to_string(n) + " out of range" };
        GroundSet host{ n };

        auto result = [&] () -> Certificate {
            if (type == "xgood") {
                auto p = make_partition(host, mask_from_hex(r.next("X", 1)[1]));
                auto color = parse_optional_color(r.next("COLOR", 1)[1]);
                return XGoodCopyCert{ p, read_vertices(r), color };
            }
            if (type == "chain") {
                auto p = make_partition(host, mask_from_hex(r.next("X", 1)[1]));
                auto & ord = r.next("ORD", size_t(-1));
                vector<unsigned> ordering;
                for (size_t i = 1 ; i < ord.size() ; ++i)
                    ordering.push_back(parse_unsigned(ord[i]));
                return BlueChainCert{ p, ordering, read_vertices(r) };
            }
            if (type == "shrub") {
                auto y = mask_from_hex(r.next("Y", 1)[1]);
                if (! host.contains(y))
                    throw FormatError{ "certificate: Y-part outside the ground set" };
                auto kind = r.next("KIND", 1)[1];
                if (kind != "full" && kind != "weak")
                    throw FormatError{ "certificate: bad shrub kind '" + kind + "'" };
                auto color = parse_optional_color(r.next("COLOR", 1)[1]);
                if (popcount(y) > max_tree_alphabet)
                    throw FormatError{ "certificate: shrub alphabet above " + std::to_string(max_tree_alphabet) };
                FactorialTree tree{ y };
                return ShrubCert{ host, y, tree.nodes(), read_vertices(r), kind == "weak", color };
            }
            if (type == "pattern") {
                auto color = parse_color(r.next("COLOR", 1)[1]);
                if (! color)
                    throw FormatError{ "certificate: pattern copies need a color" };
                auto m = parse_unsigned(r.next("PATTERN", 1)[1]);
                if (m > 4096)
                    throw FormatError{ "certificate: pattern too large" };
                FinitePoset pattern{ m };
                while (r.peek_is("LT")) {
                    auto & lt = r.next("LT", 2);
                    auto a = parse_unsigned(lt[1]), b = parse_unsigned(lt[2]);
                    if (a >= m || b >= m)
                        throw FormatError{ "certificate: pattern element out of range" };
                    pattern.set_leq(a, b);
                }
                pattern.close_transitively();
                vector<Mask> images;
                while (r.peek_is("MAP")) {
                    auto & map = r.next("MAP", 2);
                    if (parse_unsigned(map[1]) != images.size())
                        throw FormatError{ "certificate: MAP lines out of order" };
                    images.push_back(mask_from_hex(map[2]));
                }
                return PatternCopyCert{ EmbeddingMap{ pattern, host, images }, *color };
            }
            if (type == "frameworks") {
                auto k = parse_unsigned(r.next("K", 1)[1]);
                auto b = parse_unsigned(r.next("B", 1)[1]);
                FrameworkBundle bundle{ host, k, b, {} };
                while (r.peek_is("F")) {
                    auto & f = r.next("F", 3);
                    Framework fw{ mask_from_hex(f[1]), mask_from_hex(f[2]), 0, mask_from_hex(f[3]) };
                    fw.z = host.full() & ~fw.y & ~fw.a;
                    bundle.frameworks.push_back(fw);
                }
                return bundle;
            }
            throw FormatError{ "certificate: unknown type '" + type + "'" };
        }();
        r.finish();
        return result;
    }

    auto certificate_to_text(const Certificate & cert) -> string
    {
        std::ostringstream out;
        write_certificate(out, cert);
        return out.str();
    }

    auto certificate_from_text(const string & text) -> Certificate
    {
        std::istringstream in{ text };
        return read_certificate(in);
    }

    auto save_certificate(const string & path, const Certificate & cert) -> void
    {
        std::ofstream out{ path, std::ios::binary };
        if (! out)
            throw Error{ "cannot write " + path };
        write_certificate(out, cert);
    }

    auto load_certificate(const string & path) -> Certificate
    {
        std::ifstream in{ path, std::ios::binary };
        if (! in)
            throw Error{ "cannot read " + path };
        return read_certificate(in);
    }
}
