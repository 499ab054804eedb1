#include <posram/embedding.hh>
#include <posram/errors.hh>
#include <posram/verify.hh>

#include <algorithm>
#include <map>
#include <string>

using std::optional;
using std::size_t;
using std::span;
using std::string;
using std::variant;
using std::vector;

namespace posram
{
    using std::to_string;

    namespace
    {
        auto ensure_valid(const Certificate & cert, const Coloring & c, const string & what) -> void
        {
            auto verdict = verify_certificate(cert, c);
            if (! verdict)
                throw InternalError{ what + " produced an invalid certificate: " + verdict.reason + " (" + verdict.detail + ")" };
        }

        auto check_ordering(const Partition & p, span<const unsigned> ordering) -> void
        {
            Mask seen = 0;
            for (auto l : ordering) {
                if (l >= p.host().size() || ! ((p.y_part() >> l) & 1u) || ((seen >> l) & 1u))
                    throw PreconditionError{ "ordering is not a permutation of the Y-part (label " + to_string(l) + ")" };
                seen |= Mask{1} << l;
            }
            if (seen != p.y_part())
                throw PreconditionError{ "ordering does not cover the Y-part" };
        }
    }

    auto normalize_to_good(const EmbeddingMap & cube) -> XGoodCopyCert
    {
        auto size = cube.pattern.size();
        unsigned n = 0;
        while ((size_t{1} << n) < size)
            ++n;
        if (n == 0 || (size_t{1} << n) != size || ! (cube.pattern == standard_poset(PatternKind::cube(n))))
            throw PreconditionError{ "normalize_to_good needs an embedding of a cube" };
        if (! is_embedding(cube))
            throw PreconditionError{ "normalize_to_good: input is not an embedding" };
        if (cube.host.size() <= n)
            throw PreconditionError{ "normalize_to_good needs a host larger than the cube dimension" };

        Mask top = static_cast<Mask>(size - 1);
        vector<unsigned> rep(n);
        Mask x_set = 0;
        for (unsigned a = 0 ; a < n ; ++a) {
            Mask candidates = cube.images[Mask{1} << a] & ~cube.images[top & ~(Mask{1} << a)];
            if (candidates == 0)
                throw InternalError{ "normalize_to_good: no representative for generator " + to_string(a) };
            rep[a] = static_cast<unsigned>(std::countr_zero(candidates));
            if ((x_set >> rep[a]) & 1u)
                throw InternalError{ "normalize_to_good: representatives collide" };
            x_set |= Mask{1} << rep[a];
        }

        PartIndex index{ x_set };
        XGoodCopyCert result{ Partition{ cube.host, x_set }, vector<Mask>(index.count()), std::nullopt };
        for (size_t b = 0 ; b < index.count() ; ++b) {
            auto members = index.expand(b);
            size_t source = 0;
            for (unsigned a = 0 ; a < n ; ++a)
                if ((members >> rep[a]) & 1u)
                    source |= size_t{1} << a;
            result.images[b] = cube.images[source];
        }

        ensure_valid(result, Coloring{ cube.host, Color::red }, "normalize_to_good");
        return result;
    }

    auto shift_search(const Coloring & c, const Partition & p, span<const unsigned> ordering) -> variant<XGoodCopyCert, BlueChainCert>
    {
        if (c.ground() != p.host())
            throw HostMismatch{ "shift_search: coloring and partition over different ground sets" };
        check_ordering(p, ordering);

        auto k = static_cast<unsigned>(ordering.size());
        vector<Mask> prefix(k + 1, 0);
        for (unsigned i = 0 ; i < k ; ++i)
            prefix[i + 1] = prefix[i] | (Mask{1} << ordering[i]);

        PartIndex xs{ p.x_part() };
        auto count = xs.count();
        vector<unsigned> label(count), lower(count);
        vector<size_t> back(count, 0);

        for (size_t idx = 0 ; idx < count ; ++idx) {
            // the largest label among maximal proper subsets, lowest index on ties
            unsigned lp = 0;
            size_t u = idx;
            for (size_t rest = idx ; rest != 0 ; rest &= rest - 1) {
                auto child = idx & ~(rest & (~rest + 1));
                if (u == idx || label[child] > lp || (label[child] == lp && child < u)) {
                    lp = label[child];
                    u = child;
                }
            }
            lower[idx] = lp;
            back[idx] = u;

            auto x = xs.expand(idx);
            unsigned l = lp;
            while (l <= k && c.is_blue(x | prefix[l]))
                ++l;

            if (l <= k) {
                label[idx] = l;
                for (size_t rest = idx ; rest != 0 ; rest &= rest - 1)
                    if (label[idx & ~(rest & (~rest + 1))] > l)
                        throw InternalError{ "shift_search: label monotonicity violated" };
                continue;
            }

            // every (X, Y(l)) with l >= lp is blue: splice the chain below U
            BlueChainCert chain{ p, vector<unsigned>(ordering.begin(), ordering.end()), vector<Mask>(k + 1) };
            size_t at = idx;
            unsigned upto = k + 1;
            for (;;) {
                for (unsigned i = lower[at] ; i < upto ; ++i)
                    chain.vertices[i] = xs.expand(at) | prefix[i];
                if (lower[at] == 0)
                    break;
                upto = lower[at];
                at = back[at];
            }
            ensure_valid(chain, c, "shift_search");
            return chain;
        }

        XGoodCopyCert copy{ p, vector<Mask>(count), Color::red };
        for (size_t idx = 0 ; idx < count ; ++idx)
            copy.images[idx] = xs.expand(idx) | prefix[label[idx]];
        ensure_valid(copy, c, "shift_search");
        return copy;
    }

    auto avoid_subposet(const Partition & p, span<const Mask> bad) -> optional<XGoodCopyCert>
    {
        Coloring derived{ p.host(), Color::red };
        for (auto v : bad) {
            if (! p.host().contains(v))
                throw HostMismatch{ "avoid_subposet: vertex " + mask_to_string(v) + " outside the ground set" };
            derived.assign(v, Color::blue);
        }

        auto ordering = elements_of(p.y_part());
        auto result = shift_search(derived, p, ordering);
        if (auto copy = std::get_if<XGoodCopyCert>(&result)) {
            copy->color = std::nullopt;
            return *copy;
        }
        return std::nullopt;
    }

    auto pigeonhole_q2_witness(const Coloring & c, const Partition & p) -> variant<PatternCopyCert, XGoodCopyCert>
    {
        auto n = p.x_size(), k = p.y_size();
        if (k > max_q2_orderings_size)
            throw CapExceeded{ "pigeonhole_q2_witness enumerates at most " + to_string(max_q2_orderings_size) + "! orderings" };
        std::uint64_t factorial = 1;
        for (unsigned i = 2 ; i <= k ; ++i)
            factorial *= i;
        if (2 * n >= 64 || factorial <= (std::uint64_t{1} << (2 * n)))
            throw PreconditionError{ "pigeonhole_q2_witness needs k! > 2^(2n); here k = " + to_string(k) + ", n = " + to_string(n) };

        auto ordering = elements_of(p.y_part());
        std::map<std::uint64_t, BlueChainCert> seen;
        do {
            auto result = shift_search(c, p, ordering);
            if (auto copy = std::get_if<XGoodCopyCert>(&result))
                return *copy;

            auto chain = std::get<BlueChainCert>(std::move(result));
            auto key = (std::uint64_t{chain.vertices.front() & p.x_part()} << 32) | (chain.vertices.back() & p.x_part());
            auto earlier = seen.find(key);
            if (earlier == seen.end()) {
                seen.emplace(key, std::move(chain));
                continue;
            }

            auto & first = earlier->second;
            for (unsigned i = 1 ; i < k ; ++i) {
                auto y1 = first.vertices[i] & p.y_part(), y2 = chain.vertices[i] & p.y_part();
                if (y1 == y2)
                    continue;
                PatternCopyCert q2{ EmbeddingMap{ standard_poset(PatternKind::cube(2)), c.ground(),
                    { first.vertices.front(), first.vertices[i], chain.vertices[i], first.vertices.back() } }, Color::blue };
                ensure_valid(q2, c, "pigeonhole_q2_witness");
                return q2;
            }
            throw InternalError{ "pigeonhole_q2_witness: distinct orderings with identical prefixes" };
        } while (std::next_permutation(ordering.begin(), ordering.end()));

        throw InternalError{ "pigeonhole_q2_witness: pigeonhole failed to produce a collision" };
    }

    auto sperner_width(unsigned k) -> unsigned
    {
        unsigned width = 0;
        while (binomial(width, width / 2) < k)
            width += 2;
        return width;
    }

    auto chains_vs_cube(const Coloring & c, unsigned n, unsigned k, unsigned l) -> variant<PatternCopyCert, XGoodCopyCert>
    {
        if (n < 1 || k < 1 || l < 1)
            throw PreconditionError{ "chains_vs_cube needs n, k, l >= 1" };
        auto width = sperner_width(k);
        if (c.ground().size() < n + l + width)
            throw PreconditionError{ "chains_vs_cube: ground set of size " + to_string(c.ground().size()) + " is smaller than n + l + K = "
                + to_string(n + l + width) };

        auto xn = n + l;
        auto layer = middle_layer(width, k);

        vector<Mask> chain_images;
        for (unsigned i = 0 ; i < k ; ++i) {
            Mask yi = layer[i] << xn;

            // longest blue chain inside {X | yi}
            size_t count = size_t{1} << xn;
            vector<unsigned> longest(count, 0);
            vector<Mask> prev(count, 0);
            optional<Mask> top;
            for (Mask x = 0 ; x < count ; ++x) {
                unsigned best = 0;
                Mask from = x;
                for (Mask rest = x ; rest != 0 ; rest &= rest - 1) {
                    auto child = x & ~(rest & (~rest + 1));
                    if (from == x || longest[child] > best) {
                        best = longest[child];
                        from = child;
                    }
                }
                longest[x] = best + (c.is_blue(x | yi) ? 1 : 0);
                prev[x] = from;
                if (! top && longest[x] >= l)
                    top = x;
            }

            if (! top) {
                vector<Mask> bad;
                for (Mask x = 0 ; x < count ; ++x)
                    if (c.is_blue(x | yi))
                        bad.push_back(x);
                auto inner = avoid_subposet(Partition::leading(GroundSet{ xn }, n), bad);
                if (! inner)
                    throw InternalError{ "chains_vs_cube: shift search failed inside a sublattice" };
                XGoodCopyCert red{ Partition::leading(c.ground(), n), {}, Color::red };
                for (auto v : inner->images)
                    red.images.push_back(v | yi);
                ensure_valid(red, c, "chains_vs_cube");
                return red;
            }

            vector<Mask> chain;
            for (Mask x = *top ; ; x = prev[x]) {
                if (c.is_blue(x | yi))
                    chain.push_back(x | yi);
                if (x == prev[x])
                    break;
            }
            std::reverse(chain.begin(), chain.end());
            chain.resize(l);
            chain_images.insert(chain_images.end(), chain.begin(), chain.end());
        }

        PatternCopyCert blue{ EmbeddingMap{ standard_poset(PatternKind::independent_chains(k, l)), c.ground(), chain_images }, Color::blue };
        ensure_valid(blue, c, "chains_vs_cube");
        return blue;
    }
}
