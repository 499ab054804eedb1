#include <posram/verify.hh>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

using std::size_t;
using std::string;
using std::vector;

namespace posram
{
    using std::to_string;

    namespace
    {
        using Bits = std::uint32_t;

        auto bits_in(Bits m) -> vector<unsigned>
        {
            vector<unsigned> result;
            for (unsigned i = 0 ; i < 32 ; ++i)
                if ((m >> i) & 1u)
                    result.push_back(i);
            return result;
        }

        auto weight(Bits m) -> unsigned
        {
            unsigned w = 0;
            for ( ; m ; m >>= 1)
                w += m & 1u;
            return w;
        }

        auto inside(Bits a, Bits b) -> bool
        {
            return (a | b) == b;
        }

        auto hex(Bits m) -> string
        {
            static const char digits[] = "0123456789abcdef";
            string s;
            do {
                s.insert(s.begin(), digits[m & 15u]);
                m >>= 4;
            } while (m);
            return s;
        }

        auto color_reason(bool want_blue) -> string
        {
            return want_blue ? "not-blue" : "not-red";
        }

        auto check_color(const Coloring & c, Bits v, Color want) -> bool
        {
            return c.is_blue(v) == (want == Color::blue);
        }

        // the subset of `labels` selected by the bits of `index`
        auto spread(const vector<unsigned> & labels, size_t index) -> Bits
        {
            Bits result = 0;
            for (size_t i = 0 ; i < labels.size() ; ++i)
                if ((index >> i) & 1u)
                    result |= Bits{1} << labels[i];
            return result;
        }

        auto check_xgood(const XGoodCopyCert & cert, const Coloring & c) -> Verdict
        {
            auto n = c.ground().size();
            if (cert.partition.host().size() != n)
                return Verdict::fail("host-mismatch", "certificate over " + to_string(cert.partition.host().size())
                    + " elements, coloring over " + to_string(n));

            Bits full = (n == 32) ? ~Bits{0} : ((Bits{1} << n) - 1);
            Bits xs = cert.partition.x_part();
            auto labels = bits_in(xs);
            size_t count = size_t{1} << labels.size();
            if (cert.images.size() != count)
                return Verdict::fail("malformed", to_string(cert.images.size()) + " images for " + to_string(count) + " subsets");

            for (size_t i = 0 ; i < count ; ++i)
                if (! inside(cert.images[i], full))
                    return Verdict::fail("malformed", "image " + to_string(i) + " leaves the ground set");

            for (size_t i = 0 ; i < count ; ++i)
                if ((cert.images[i] & xs) != spread(labels, i))
                    return Verdict::fail("not-x-good", "image of X-subset " + hex(spread(labels, i)) + " is " + hex(cert.images[i]));

            // covering pairs suffice; X-goodness gives reflection and injectivity
            for (size_t i = 0 ; i < count ; ++i)
                for (size_t b = 0 ; b < labels.size() ; ++b)
                    if (! ((i >> b) & 1u) && ! inside(cert.images[i], cert.images[i | (size_t{1} << b)]))
                        return Verdict::fail("not-order-preserving", "image " + hex(cert.images[i]) + " not below "
                            + hex(cert.images[i | (size_t{1} << b)]));

            if (cert.color)
                for (size_t i = 0 ; i < count ; ++i)
                    if (! check_color(c, cert.images[i], *cert.color))
                        return Verdict::fail(color_reason(*cert.color == Color::blue), "vertex " + hex(cert.images[i]));

            return Verdict::pass();
        }

        auto check_chain(const BlueChainCert & cert, const Coloring & c) -> Verdict
        {
            auto n = c.ground().size();
            if (cert.partition.host().size() != n)
                return Verdict::fail("host-mismatch", "certificate over " + to_string(cert.partition.host().size())
                    + " elements, coloring over " + to_string(n));

            Bits full = (Bits{1} << n) - 1;
            Bits xs = cert.partition.x_part();
            Bits ys = full & ~xs;

            Bits seen = 0;
            for (auto l : cert.ordering) {
                if (l >= 32 || ! ((ys >> l) & 1u) || ((seen >> l) & 1u))
                    return Verdict::fail("bad-ordering", "label " + to_string(l));
                seen |= Bits{1} << l;
            }
            if (seen != ys)
                return Verdict::fail("bad-ordering", "ordering does not cover the Y-part");

            if (cert.vertices.size() != cert.ordering.size() + 1)
                return Verdict::fail("malformed", to_string(cert.vertices.size()) + " chain vertices for "
                    + to_string(cert.ordering.size()) + " Y-labels");

            Bits prefix = 0;
            for (size_t i = 0 ; i < cert.vertices.size() ; ++i) {
                auto v = cert.vertices[i];
                if (! inside(v, full))
                    return Verdict::fail("malformed", "vertex " + hex(v) + " leaves the ground set");
                if ((v & ys) != prefix)
                    return Verdict::fail("wrong-y-part", "vertex " + to_string(i) + " = " + hex(v));
                if (i + 1 < cert.vertices.size())
                    prefix |= Bits{1} << cert.ordering[i];
            }

            for (size_t i = 0 ; i + 1 < cert.vertices.size() ; ++i)
                if (! inside(cert.vertices[i] & xs, cert.vertices[i + 1] & xs))
                    return Verdict::fail("not-nested", "X-parts of vertices " + to_string(i) + " and " + to_string(i + 1));

            for (auto v : cert.vertices)
                if (! c.is_blue(v))
                    return Verdict::fail("not-blue", "vertex " + hex(v));

            return Verdict::pass();
        }

        // all duplicate-free strings over labels, by length then lexicographically
        auto all_strings(const vector<unsigned> & labels) -> vector<vector<unsigned>>
        {
            vector<vector<unsigned>> result{ {} };
            size_t begin = 0;
            for (size_t len = 1 ; len <= labels.size() ; ++len) {
                size_t end = result.size();
                for (size_t p = begin ; p < end ; ++p)
                    for (auto l : labels)
                        if (std::find(result[p].begin(), result[p].end(), l) == result[p].end()) {
                            auto s = result[p];
                            s.push_back(l);
                            result.push_back(s);
                        }
                begin = end;
            }
            return result;
        }

        auto is_prefix(const vector<unsigned> & s, const vector<unsigned> & t) -> bool
        {
            return s.size() <= t.size() && std::equal(s.begin(), s.end(), t.begin());
        }

        auto set_of(const vector<unsigned> & s) -> Bits
        {
            Bits r = 0;
            for (auto l : s)
                r |= Bits{1} << l;
            return r;
        }

        auto check_shrub(const ShrubCert & cert, const Coloring & c) -> Verdict
        {
            auto n = c.ground().size();
            if (cert.host.size() != n)
                return Verdict::fail("host-mismatch", "certificate over " + to_string(cert.host.size())
                    + " elements, coloring over " + to_string(n));

            Bits full = (Bits{1} << n) - 1;
            if (! inside(cert.y_part, full))
                return Verdict::fail("malformed", "Y-part leaves the ground set");
            for (auto v : cert.images)
                if (! inside(v, full))
                    return Verdict::fail("malformed", "image " + hex(v) + " leaves the ground set");

            if (auto v = verify_shrub_structure(cert.y_part, cert.nodes, cert.images, cert.weak) ; ! v)
                return v;

            if (cert.color)
                for (auto v : cert.images)
                    if (! check_color(c, v, *cert.color))
                        return Verdict::fail(color_reason(*cert.color == Color::blue), "vertex " + hex(v));

            return Verdict::pass();
        }

        auto check_pattern(const PatternCopyCert & cert, const Coloring & c) -> Verdict
        {
            auto n = c.ground().size();
            if (cert.copy.host.size() != n)
                return Verdict::fail("host-mismatch", "certificate over " + to_string(cert.copy.host.size())
                    + " elements, coloring over " + to_string(n));

            Bits full = (Bits{1} << n) - 1;
            auto & p = cert.copy.pattern;
            auto m = p.size();
            if (cert.copy.images.size() != m)
                return Verdict::fail("malformed", to_string(cert.copy.images.size()) + " images for " + to_string(m) + " pattern elements");
            for (auto v : cert.copy.images)
                if (! inside(v, full))
                    return Verdict::fail("malformed", "image " + hex(v) + " leaves the ground set");

            for (size_t a = 0 ; a < m ; ++a) {
                if (! p.leq(a, a))
                    return Verdict::fail("malformed", "pattern is not reflexive");
                for (size_t b = 0 ; b < m ; ++b) {
                    if (a != b && p.leq(a, b) && p.leq(b, a))
                        return Verdict::fail("malformed", "pattern is not antisymmetric");
                    for (size_t d = 0 ; d < m ; ++d)
                        if (p.leq(a, b) && p.leq(b, d) && ! p.leq(a, d))
                            return Verdict::fail("malformed", "pattern is not transitive");
                }
            }

            for (size_t a = 0 ; a < m ; ++a)
                for (size_t b = a + 1 ; b < m ; ++b)
                    if (cert.copy.images[a] == cert.copy.images[b])
                        return Verdict::fail("not-injective", "elements " + to_string(a) + " and " + to_string(b));

            for (size_t a = 0 ; a < m ; ++a)
                for (size_t b = 0 ; b < m ; ++b)
                    if (p.leq(a, b) != inside(cert.copy.images[a], cert.copy.images[b]))
                        return Verdict::fail("not-induced", "elements " + to_string(a) + " and " + to_string(b));

            for (auto v : cert.copy.images)
                if (! check_color(c, v, cert.color))
                    return Verdict::fail(color_reason(cert.color == Color::blue), "vertex " + hex(v));

            return Verdict::pass();
        }

        auto choose(unsigned n, unsigned r) -> std::uint64_t
        {
            if (r > n)
                return 0;
            std::uint64_t result = 1;
            for (unsigned i = 1 ; i <= r ; ++i)
                result = result * (n - r + i) / i;
            return result;
        }

        // the canonical shrub on (y, a), recomputed from its defining formula
        auto canonical_images(Bits y, Bits a, unsigned block) -> vector<Bits>
        {
            auto ys = bits_in(y);
            auto as = bits_in(a);
            auto k = static_cast<unsigned>(ys.size());

            vector<Bits> blocks(k, 0);
            for (unsigned i = 0 ; i < k ; ++i)
                for (unsigned t = 0 ; t < block ; ++t)
                    blocks[i] |= Bits{1} << as[i * block + t];

            // j-th half-size subset of a block, colex
            vector<Bits> halves;
            for (Bits m = 0 ; m < (Bits{1} << block) && halves.size() < k ; ++m)
                if (weight(m) == block / 2)
                    halves.push_back(m);

            auto piece = [&] (unsigned i, unsigned j) -> Bits {
                auto members = bits_in(blocks[i]);
                Bits r = 0;
                for (unsigned t = 0 ; t < block ; ++t)
                    if ((halves[j] >> t) & 1u)
                        r |= Bits{1} << members[t];
                return r;
            };

            vector<unsigned> positions(k);
            for (unsigned i = 0 ; i < k ; ++i)
                positions[i] = i;

            vector<Bits> result;
            for (auto & s : all_strings(positions)) {
                Bits v = 0;
                for (size_t t = 0 ; t < s.size() ; ++t) {
                    v |= Bits{1} << ys[s[t]];
                    v |= (t == 0) ? blocks[s[0]] : piece((s[0] + t) % k, s[t]);
                }
                result.push_back(v);
            }
            return result;
        }

        auto check_bundle(const FrameworkBundle & cert, const Coloring & c) -> Verdict
        {
            auto n = c.ground().size();
            if (cert.host.size() != n)
                return Verdict::fail("host-mismatch", "certificate over " + to_string(cert.host.size())
                    + " elements, coloring over " + to_string(n));

            Bits full = (Bits{1} << n) - 1;
            auto k = cert.k;
            if (k < 1 || k > max_verified_shrub_alphabet)
                return Verdict::fail("malformed", "k = " + to_string(k));
            if (choose(cert.block_size, cert.block_size / 2) < k)
                return Verdict::fail("malformed", "block size " + to_string(cert.block_size) + " too small for k = " + to_string(k));
            if (cert.frameworks.size() != choose(n, k))
                return Verdict::fail("coverage", to_string(cert.frameworks.size()) + " frameworks for "
                    + to_string(choose(n, k)) + " choices of Y");

            for (size_t i = 0 ; i < cert.frameworks.size() ; ++i) {
                auto & f = cert.frameworks[i];
                if (weight(f.y) != k || ! inside(f.y, full))
                    return Verdict::fail("coverage", "framework " + to_string(i) + " has Y = " + hex(f.y));
                if (i > 0 && f.y <= cert.frameworks[i - 1].y)
                    return Verdict::fail("coverage", "framework " + to_string(i) + " out of order or repeated");
                if ((f.y & f.a) || (f.y & f.z) || (f.a & f.z) || (f.y | f.a | f.z) != full)
                    return Verdict::fail("malformed", "framework " + hex(f.y) + ": Y, A, Z do not partition the ground set");
                if (! inside(f.x, f.z))
                    return Verdict::fail("malformed", "framework " + hex(f.y) + ": X leaves Z");
                if (weight(f.a) != k * cert.block_size)
                    return Verdict::fail("malformed", "framework " + hex(f.y) + ": |A| = " + to_string(weight(f.a)));
            }

            for (auto & f1 : cert.frameworks)
                for (auto & f2 : cert.frameworks)
                    if (f1.y != f2.y && (f1.x & f2.z & ~f2.x) == 0)
                        return Verdict::fail("separation", "frameworks " + hex(f1.y) + " and " + hex(f2.y));

            vector<vector<Bits>> shrubs;
            for (auto & f : cert.frameworks) {
                auto images = canonical_images(f.y, f.a, cert.block_size);
                for (auto & v : images)
                    v |= f.x;
                shrubs.push_back(std::move(images));
            }

            {
                vector<unsigned> positions(k);
                for (unsigned i = 0 ; i < k ; ++i)
                    positions[i] = i;
                auto strings = all_strings(positions);
                for (size_t f = 0 ; f < shrubs.size() ; ++f)
                    for (size_t i = 0 ; i < strings.size() ; ++i)
                        for (size_t j = 0 ; j < strings.size() ; ++j)
                            if (i != j && is_prefix(strings[i], strings[j]) != inside(shrubs[f][i], shrubs[f][j]))
                                return Verdict::fail("shrub-invalid", "framework " + hex(cert.frameworks[f].y) + ", nodes "
                                    + to_string(i) + " and " + to_string(j));
            }

            vector<bool> covered(size_t{1} << n, false);
            for (auto & s : shrubs)
                for (auto v : s) {
                    if (! c.is_blue(v))
                        return Verdict::fail("not-blue", "vertex " + hex(v));
                    covered[v] = true;
                }

            for (size_t i = 0 ; i < shrubs.size() ; ++i)
                for (size_t j = i + 1 ; j < shrubs.size() ; ++j)
                    for (auto u : shrubs[i])
                        for (auto w : shrubs[j])
                            if (inside(u, w) || inside(w, u))
                                return Verdict::fail("not-independent", "vertices " + hex(u) + " and " + hex(w));

            for (size_t v = 0 ; v < covered.size() ; ++v)
                if (c.is_blue(static_cast<Bits>(v)) && ! covered[v])
                    return Verdict::fail("stray-blue", "vertex " + hex(static_cast<Bits>(v)));

            return Verdict::pass();
        }
    }

    auto verify_shrub_structure(Mask y_part, const vector<OrderedSubset> & nodes, const vector<Mask> & images, bool weak) -> Verdict
    {
        auto labels = bits_in(y_part);
        if (labels.size() > max_verified_shrub_alphabet)
            return Verdict::fail("too-large", to_string(labels.size()) + " Y-labels");

        auto strings = all_strings(labels);
        if (nodes != strings)
            return Verdict::fail("malformed", "node list is not the factorial tree of the Y-part");
        if (images.size() != strings.size())
            return Verdict::fail("malformed", to_string(images.size()) + " images for " + to_string(strings.size()) + " nodes");

        for (size_t i = 0 ; i < strings.size() ; ++i)
            if ((images[i] & y_part) != set_of(strings[i]))
                return Verdict::fail("not-y-good", "node " + to_string(i) + " image " + hex(images[i]));

        if (! weak) {
            auto sorted = images;
            std::sort(sorted.begin(), sorted.end());
            auto dup = std::adjacent_find(sorted.begin(), sorted.end());
            if (dup != sorted.end())
                return Verdict::fail("not-injective", "image " + hex(*dup) + " repeated");
        }

        for (size_t i = 0 ; i < strings.size() ; ++i)
            for (size_t j = 0 ; j < strings.size() ; ++j) {
                if (i == j)
                    continue;
                bool prefix = is_prefix(strings[i], strings[j]);
                bool below = inside(images[i], images[j]) && images[i] != images[j];
                if (prefix && ! below)
                    return Verdict::fail("not-order-preserving", "nodes " + to_string(i) + " and " + to_string(j));
                if (! weak && ! prefix && inside(images[i], images[j]))
                    return Verdict::fail("not-order-reflecting", "nodes " + to_string(i) + " and " + to_string(j));
            }

        return Verdict::pass();
    }

    auto verify_certificate(const Certificate & cert, const Coloring & c) -> Verdict
    {
        if (auto p = std::get_if<XGoodCopyCert>(&cert))
            return check_xgood(*p, c);
        if (auto p = std::get_if<BlueChainCert>(&cert))
            return check_chain(*p, c);
        if (auto p = std::get_if<ShrubCert>(&cert))
            return check_shrub(*p, c);
        if (auto p = std::get_if<PatternCopyCert>(&cert))
            return check_pattern(*p, c);
        return check_bundle(std::get<FrameworkBundle>(cert), c);
    }
}
