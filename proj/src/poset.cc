#include <posram/poset.hh>
#include <posram/errors.hh>

#include <algorithm>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>

using std::optional;
using std::size_t;
using std::span;
using std::string;
using std::vector;

namespace posram
{
    using std::to_string;

    FinitePoset::FinitePoset(size_t n) :
        _size(n),
        _stride((n + 63) / 64),
        _bits(n * ((n + 63) / 64), 0)
    {
        for (size_t i = 0 ; i < n ; ++i)
            set_leq(i, i);
    }

    void FinitePoset::set_leq(size_t a, size_t b, bool value)
    {
        auto bit = std::uint64_t{1} << (b % 64);
        if (value)
            _bits[a * _stride + b / 64] |= bit;
        else
            _bits[a * _stride + b / 64] &= ~bit;
    }

    void FinitePoset::close_transitively()
    {
        for (size_t k = 0 ; k < _size ; ++k)
            for (size_t i = 0 ; i < _size ; ++i)
                if (leq(i, k))
                    for (size_t w = 0 ; w < _stride ; ++w)
                        _bits[i * _stride + w] |= _bits[k * _stride + w];
    }

    auto PosetViolation::describe() const -> string
    {
        switch (axiom) {
            case Axiom::reflexivity:
                return "reflexivity fails at " + to_string(a);
            case Axiom::antisymmetry:
                return "antisymmetry fails: " + to_string(a) + " <= " + to_string(b) + " <= " + to_string(a);
            case Axiom::transitivity:
                return "transitivity fails: " + to_string(a) + " <= " + to_string(b) + " <= " + to_string(c)
                    + " but not " + to_string(a) + " <= " + to_string(c);
        }
        throw InternalError{ "unknown poset axiom" };
    }

    auto validate(const FinitePoset & p) -> optional<PosetViolation>
    {
        auto n = p.size();
        for (size_t a = 0 ; a < n ; ++a)
            if (! p.leq(a, a))
                return PosetViolation{ PosetViolation::Axiom::reflexivity, a, a, a };
        for (size_t a = 0 ; a < n ; ++a)
            for (size_t b = a + 1 ; b < n ; ++b)
                if (p.leq(a, b) && p.leq(b, a))
                    return PosetViolation{ PosetViolation::Axiom::antisymmetry, a, b, a };
        for (size_t a = 0 ; a < n ; ++a)
            for (size_t b = 0 ; b < n ; ++b)
                if (p.leq(a, b))
                    for (size_t c = 0 ; c < n ; ++c)
                        if (p.leq(b, c) && ! p.leq(a, c))
                            return PosetViolation{ PosetViolation::Axiom::transitivity, a, b, c };
        return std::nullopt;
    }

    namespace
    {
        auto chain_poset(size_t n) -> FinitePoset
        {
            FinitePoset p{ n };
            for (size_t a = 0 ; a < n ; ++a)
                for (size_t b = a ; b < n ; ++b)
                    p.set_leq(a, b);
            return p;
        }
    }

    auto standard_poset(const PatternKind & kind) -> FinitePoset
    {
        using Shape = PatternKind::Shape;
        switch (kind.shape) {
            case Shape::lambda: {
                FinitePoset p{ 3 };
                p.set_leq(0, 2);
                p.set_leq(1, 2);
                return p;
            }

            case Shape::vee: {
                FinitePoset p{ 3 };
                p.set_leq(0, 1);
                p.set_leq(0, 2);
                return p;
            }

            case Shape::chain:
                if (kind.first < 1)
                    throw PreconditionError{ "chain length must be at least 1" };
                if (kind.first > 4096)
                    throw CapExceeded{ "chain length above 4096" };
                return chain_poset(kind.first);

            case Shape::cube: {
                if (kind.first < 1)
                    throw PreconditionError{ "cube dimension must be at least 1" };
                if (kind.first > 12)
                    throw CapExceeded{ "cube dimension above 12" };
                size_t n = size_t{1} << kind.first;
                FinitePoset p{ n };
                for (size_t a = 0 ; a < n ; ++a)
                    for (size_t b = 0 ; b < n ; ++b)
                        if ((a & ~b) == 0)
                            p.set_leq(a, b);
                return p;
            }

            case Shape::independent_chains: {
                if (kind.first < 1 || kind.second < 1)
                    throw PreconditionError{ "independent chains need count and length at least 1" };
                if (size_t{kind.first} * kind.second > 4096)
                    throw CapExceeded{ "independent chains above 4096 elements" };
                FinitePoset p{ size_t{kind.first} * kind.second };
                for (size_t c = 0 ; c < kind.first ; ++c)
                    for (size_t a = 0 ; a < kind.second ; ++a)
                        for (size_t b = a ; b < kind.second ; ++b)
                            p.set_leq(c * kind.second + a, c * kind.second + b);
                return p;
            }

            case Shape::antichain:
                if (kind.first < 1)
                    throw PreconditionError{ "antichain size must be at least 1" };
                if (kind.first > 4096)
                    throw CapExceeded{ "antichain size above 4096" };
                return FinitePoset{ kind.first };
        }
        throw InternalError{ "unknown pattern shape" };
    }

    auto parse_pattern_name(const string & name) -> optional<PatternKind>
    {
        static const std::regex cube_re{ "[Qq]([0-9]{1,2})" };
        static const std::regex chain_re{ "chain([0-9]{1,4})" };
        static const std::regex antichain_re{ "antichain([0-9]{1,4})" };
        static const std::regex chains_re{ "chains([0-9]{1,4})x([0-9]{1,4})" };

        if (name == "lambda" || name == "Lambda")
            return PatternKind::lambda();
        if (name == "vee" || name == "V")
            return PatternKind::vee();

        std::smatch m;
        if (std::regex_match(name, m, cube_re))
            return PatternKind::cube(std::stoul(m[1]));
        if (std::regex_match(name, m, chain_re))
            return PatternKind::chain(std::stoul(m[1]));
        if (std::regex_match(name, m, antichain_re))
            return PatternKind::antichain(std::stoul(m[1]));
        if (std::regex_match(name, m, chains_re))
            return PatternKind::independent_chains(std::stoul(m[1]), std::stoul(m[2]));
        return std::nullopt;
    }

    auto read_poset(std::istream & in) -> FinitePoset
    {
        string line;
        size_t line_number = 0;
        optional<FinitePoset> result;

        while (std::getline(in, line)) {
            ++line_number;
            if (auto hash = line.find('#') ; hash != string::npos)
                line.erase(hash);
            if (line.find_first_not_of(" \t\r") == string::npos)
                continue;

            std::istringstream fields{ line };
            if (! result) {
                long long n;
                string extra;
                if (! (fields >> n) || (fields >> extra) || n < 1 || n > 4096)
                    throw FormatError{ "poset line " + to_string(line_number) + ": expected an element count" };
                result.emplace(static_cast<size_t>(n));
                continue;
            }

            long long a, b;
            string op, extra;
            if (! (fields >> a >> op >> b) || op != "<" || (fields >> extra))
                throw FormatError{ "poset line " + to_string(line_number) + ": expected 'a < b'" };
            if (a < 0 || b < 0 || static_cast<size_t>(a) >= result->size() || static_cast<size_t>(b) >= result->size())
                throw FormatError{ "poset line " + to_string(line_number) + ": element out of range" };
            if (a == b)
                throw FormatError{ "poset line " + to_string(line_number) + ": strict relation on one element" };
            result->set_leq(a, b);
        }

        if (! result)
            throw FormatError{ "poset: missing element count" };
        result->close_transitively();
        if (auto v = validate(*result))
            throw FormatError{ "poset: " + v->describe() };
        return *result;
    }

    auto write_poset(std::ostream & out, const FinitePoset & p) -> void
    {
        out << p.size() << '\n';
        for (auto & [a, b] : cover_pairs(p))
            out << a << " < " << b << '\n';
    }

    auto cover_pairs(const FinitePoset & p) -> vector<std::pair<size_t, size_t>>
    {
        vector<std::pair<size_t, size_t>> result;
        for (size_t a = 0 ; a < p.size() ; ++a)
            for (size_t b = 0 ; b < p.size() ; ++b) {
                if (! p.less(a, b))
                    continue;
                bool cover = true;
                for (size_t c = 0 ; c < p.size() && cover ; ++c)
                    if (p.less(a, c) && p.less(c, b))
                        cover = false;
                if (cover)
                    result.emplace_back(a, b);
            }
        return result;
    }

    auto induced_poset(span<const Mask> vertices) -> FinitePoset
    {
        FinitePoset p{ vertices.size() };
        for (size_t a = 0 ; a < vertices.size() ; ++a)
            for (size_t b = 0 ; b < vertices.size() ; ++b)
                if (is_subset(vertices[a], vertices[b]))
                    p.set_leq(a, b);
        return p;
    }

    auto disjoint_union(const FinitePoset & a, const FinitePoset & b) -> FinitePoset
    {
        FinitePoset p{ a.size() + b.size() };
        for (size_t i = 0 ; i < a.size() ; ++i)
            for (size_t j = 0 ; j < a.size() ; ++j)
                p.set_leq(i, j, a.leq(i, j));
        for (size_t i = 0 ; i < b.size() ; ++i)
            for (size_t j = 0 ; j < b.size() ; ++j)
                p.set_leq(a.size() + i, a.size() + j, b.leq(i, j));
        return p;
    }

    auto is_embedding(const EmbeddingMap & e) -> bool
    {
        auto n = e.pattern.size();
        if (e.images.size() != n)
            return false;
        for (auto v : e.images)
            if (! e.host.contains(v))
                return false;
        for (size_t a = 0 ; a < n ; ++a)
            for (size_t b = 0 ; b < n ; ++b) {
                if (a != b && e.images[a] == e.images[b])
                    return false;
                if (e.pattern.leq(a, b) != is_subset(e.images[a], e.images[b]))
                    return false;
            }
        return true;
    }

    namespace
    {
        // Backtracking over pattern elements in a static most-constrained-first
        // order. HostLeq answers "host element i below-or-equal host element j".
        template <typename HostLeq_>
        class CopySearch
        {
            private:
                const FinitePoset & _pattern;
                size_t _host_size;
                HostLeq_ _host_leq;
                vector<size_t> _order;
                vector<size_t> _image;
                vector<bool> _used;
                optional<size_t> _anchor;

                auto consistent(size_t depth, size_t candidate) const -> bool
                {
                    auto a = _order[depth];
                    for (size_t d = 0 ; d < depth ; ++d) {
                        auto b = _order[d];
                        auto h = _image[b];
                        if (_pattern.leq(a, b) != _host_leq(candidate, h))
                            return false;
                        if (_pattern.leq(b, a) != _host_leq(h, candidate))
                            return false;
                    }
                    return true;
                }

                auto extend(size_t depth) -> bool
                {
                    if (depth == _order.size())
                        return ! _anchor || _used[*_anchor];

                    // with an anchor, the last pattern element is forced onto it
                    if (_anchor && depth + 1 == _order.size() && ! _used[*_anchor]) {
                        if (! consistent(depth, *_anchor))
                            return false;
                        _image[_order[depth]] = *_anchor;
                        return true;
                    }

                    for (size_t h = 0 ; h < _host_size ; ++h) {
                        if (_used[h] || ! consistent(depth, h))
                            continue;
                        _used[h] = true;
                        _image[_order[depth]] = h;
                        if (extend(depth + 1))
                            return true;
                        _used[h] = false;
                    }
                    return false;
                }

            public:
                CopySearch(const FinitePoset & pattern, size_t host_size, HostLeq_ host_leq, optional<size_t> anchor = std::nullopt) :
                    _pattern(pattern),
                    _host_size(host_size),
                    _host_leq(host_leq),
                    _image(pattern.size(), 0),
                    _used(host_size, false),
                    _anchor(anchor)
                {
                    if (pattern.size() > max_pattern_size)
                        throw CapExceeded{ "pattern of " + to_string(pattern.size()) + " elements exceeds the search cap of "
                            + to_string(max_pattern_size) };

                    vector<size_t> degree(pattern.size(), 0);
                    for (size_t a = 0 ; a < pattern.size() ; ++a)
                        for (size_t b = 0 ; b < pattern.size() ; ++b)
                            if (a != b && pattern.comparable(a, b))
                                ++degree[a];

                    // grow the order greedily: most links into the placed
                    // prefix, then highest degree, then lowest index
                    vector<bool> placed(pattern.size(), false);
                    for (size_t step = 0 ; step < pattern.size() ; ++step) {
                        size_t best = pattern.size();
                        size_t best_links = 0;
                        for (size_t a = 0 ; a < pattern.size() ; ++a) {
                            if (placed[a])
                                continue;
                            size_t links = 0;
                            for (auto b : _order)
                                if (pattern.comparable(a, b))
                                    ++links;
                            if (best == pattern.size() || links > best_links
                                    || (links == best_links && degree[a] > degree[best])) {
                                best = a;
                                best_links = links;
                            }
                        }
                        placed[best] = true;
                        _order.push_back(best);
                    }
                }

                auto run() -> optional<vector<size_t>>
                {
                    if (_pattern.size() > _host_size)
                        return std::nullopt;
                    if (_pattern.size() == 0)
                        return vector<size_t>{};
                    if (extend(0))
                        return _image;
                    return std::nullopt;
                }
        };

        template <typename HostLeq_>
        auto make_search(const FinitePoset & pattern, size_t host_size, HostLeq_ leq, optional<size_t> anchor = std::nullopt)
        {
            return CopySearch<HostLeq_>{ pattern, host_size, leq, anchor };
        }

        auto sorted_unique(span<const Mask> vertices) -> vector<Mask>
        {
            vector<Mask> result{ vertices.begin(), vertices.end() };
            std::sort(result.begin(), result.end());
            result.erase(std::unique(result.begin(), result.end()), result.end());
            return result;
        }
    }

    auto induced_copy_search(const FinitePoset & pattern, GroundSet host, span<const Mask> host_vertices) -> optional<EmbeddingMap>
    {
        for (auto v : host_vertices)
            if (! host.contains(v))
                throw HostMismatch{ "host vertex " + mask_to_string(v) + " outside the ground set" };

        auto vertices = sorted_unique(host_vertices);
        auto search = make_search(pattern, vertices.size(), [&] (size_t i, size_t j) {
            return is_subset(vertices[i], vertices[j]);
        });
        auto found = search.run();
        if (! found)
            return std::nullopt;

        EmbeddingMap result{ pattern, host, {} };
        for (auto i : *found)
            result.images.push_back(vertices[i]);
        return result;
    }

    auto induced_copy_search(const FinitePoset & pattern, span<const Subset> host_vertices) -> optional<EmbeddingMap>
    {
        if (host_vertices.empty())
            return pattern.size() == 0 ? optional<EmbeddingMap>{ EmbeddingMap{ pattern, GroundSet{ 1 }, {} } } : std::nullopt;

        auto host = host_vertices.front().host();
        vector<Mask> masks;
        for (auto & v : host_vertices) {
            if (v.host() != host)
                throw HostMismatch{ "host vertices over different ground sets" };
            masks.push_back(v.mask());
        }
        return induced_copy_search(pattern, host, masks);
    }

    auto has_copy_through(const FinitePoset & pattern, span<const Mask> host_vertices, Mask anchor) -> bool
    {
        auto anchor_at = std::find(host_vertices.begin(), host_vertices.end(), anchor);
        if (anchor_at == host_vertices.end())
            throw PreconditionError{ "anchor vertex not among the host vertices" };

        auto search = make_search(pattern, host_vertices.size(), [&] (size_t i, size_t j) {
            return is_subset(host_vertices[i], host_vertices[j]);
        }, static_cast<size_t>(anchor_at - host_vertices.begin()));
        return search.run().has_value();
    }

    auto induced_copy_search(const FinitePoset & pattern, const FinitePoset & host) -> optional<vector<size_t>>
    {
        auto search = make_search(pattern, host.size(), [&] (size_t i, size_t j) {
            return host.leq(i, j);
        });
        return search.run();
    }

    auto lambda_shape(const FinitePoset & p) -> optional<std::array<size_t, 3>>
    {
        if (p.size() != 3)
            return std::nullopt;
        for (size_t top = 0 ; top < 3 ; ++top) {
            size_t a = (top + 1) % 3, b = (top + 2) % 3;
            if (a > b)
                std::swap(a, b);
            if (p.less(a, top) && p.less(b, top) && ! p.comparable(a, b) && ! p.leq(top, a) && ! p.leq(top, b))
                return std::array<size_t, 3>{ a, b, top };
        }
        return std::nullopt;
    }

    auto find_lambda_triple(span<const Mask> vertices) -> optional<std::array<Mask, 3>>
    {
        auto sorted = sorted_unique(vertices);
        for (auto w : sorted) {
            vector<Mask> below;
            for (auto v : sorted)
                if (is_strict_subset(v, w))
                    below.push_back(v);
            for (size_t i = 0 ; i < below.size() ; ++i)
                for (size_t j = i + 1 ; j < below.size() ; ++j)
                    if (! comparable(below[i], below[j]))
                        return std::array<Mask, 3>{ below[i], below[j], w };
        }
        return std::nullopt;
    }

    auto has_chain_down_sets(const FinitePoset & p) -> bool
    {
        vector<size_t> down;
        for (size_t x = 0 ; x < p.size() ; ++x) {
            down.clear();
            for (size_t y = 0 ; y < p.size() ; ++y)
                if (p.less(y, x))
                    down.push_back(y);
            for (size_t i = 0 ; i < down.size() ; ++i)
                for (size_t j = i + 1 ; j < down.size() ; ++j)
                    if (! p.comparable(down[i], down[j]))
                        return false;
        }
        return true;
    }

    auto has_chain_up_sets(const FinitePoset & p) -> bool
    {
        vector<size_t> up;
        for (size_t x = 0 ; x < p.size() ; ++x) {
            up.clear();
            for (size_t y = 0 ; y < p.size() ; ++y)
                if (p.less(x, y))
                    up.push_back(y);
            for (size_t i = 0 ; i < up.size() ; ++i)
                for (size_t j = i + 1 ; j < up.size() ; ++j)
                    if (! p.comparable(up[i], up[j]))
                        return false;
        }
        return true;
    }

    auto classify_structure(const FinitePoset & p) -> StructureClass
    {
        bool lambda_free = has_chain_down_sets(p);
        bool vee_free = has_chain_up_sets(p);
        if (lambda_free)
            return vee_free ? StructureClass::independent_chains : StructureClass::independent_up_trees;
        return vee_free ? StructureClass::contains_lambda : StructureClass::both;
    }

    auto to_string(StructureClass c) -> string
    {
        switch (c) {
            case StructureClass::independent_chains: return "independent_chains";
            case StructureClass::independent_up_trees: return "independent_up_trees";
            case StructureClass::contains_lambda: return "contains_lambda";
            case StructureClass::both: return "both";
        }
        throw InternalError{ "unknown structure class" };
    }

    auto find_monochromatic_lambda(const Coloring & c, Color color) -> optional<std::array<Mask, 3>>
    {
        // top[v]: largest class member below v when those members form a
        // chain, none when there are none, bad otherwise
        constexpr Mask none = 0xffffffffu, bad = 0xfffffffeu;
        auto count = c.vertex_count();
        vector<Mask> top(count, none);

        for (size_t index = 0 ; index < count ; ++index) {
            auto v = static_cast<Mask>(index);
            Mask below = none;
            for (Mask rest = v ; rest != 0 && below != bad ; rest &= rest - 1) {
                auto t = top[v & ~(rest & (~rest + 1))];
                if (t == none)
                    continue;
                if (t == bad || below == none || is_subset(below, t))
                    below = t;
                else if (! is_subset(t, below))
                    below = bad;
            }

            if (c.at(v) != color) {
                top[index] = below;
                continue;
            }
            if (below != bad) {
                top[index] = v;
                continue;
            }

            // descend to a vertex whose own down-set is not a chain although
            // every child's is; two child tops there are incomparable
            Mask u = v;
            for (bool moved = true ; moved ; ) {
                moved = false;
                for (Mask rest = u ; rest != 0 ; rest &= rest - 1) {
                    auto child = u & ~(rest & (~rest + 1));
                    if (top[child] == bad) {
                        u = child;
                        moved = true;
                        break;
                    }
                }
            }
            for (Mask r1 = u ; r1 != 0 ; r1 &= r1 - 1) {
                auto t1 = top[u & ~(r1 & (~r1 + 1))];
                if (t1 == none)
                    continue;
                for (Mask r2 = r1 & (r1 - 1) ; r2 != 0 ; r2 &= r2 - 1) {
                    auto t2 = top[u & ~(r2 & (~r2 + 1))];
                    if (t2 != none && ! comparable(t1, t2))
                        return std::array<Mask, 3>{ std::min(t1, t2), std::max(t1, t2), v };
                }
            }
            throw InternalError{ "lambda scan lost its witness pair" };
        }
        return std::nullopt;
    }

    auto contains_pattern(const Coloring & c, const FinitePoset & pattern, Color color) -> optional<EmbeddingMap>
    {
        if (auto shape = lambda_shape(pattern)) {
            auto triple = find_monochromatic_lambda(c, color);
            if (! triple)
                return std::nullopt;
            EmbeddingMap result{ pattern, c.ground(), vector<Mask>(3) };
            for (size_t i = 0 ; i < 3 ; ++i)
                result.images[(*shape)[i]] = (*triple)[i];
            return result;
        }

        auto vertices = c.vertices_of(color);
        return induced_copy_search(pattern, c.ground(), vertices);
    }
}
