#include <posram/lattice.hh>
#include <posram/errors.hh>

#include <algorithm>
#include <string>

using std::size_t;
using std::string;
using std::vector;

namespace posram
{
    using std::to_string;

    GroundSet::GroundSet(unsigned size) :
        _size(size)
    {
        if (size < 1 || size > max_ground_size)
            throw PreconditionError{ "ground set size " + to_string(size) + " outside 1.." + to_string(max_ground_size) };
    }

    Subset::Subset(GroundSet host, Mask members) :
        _host(host),
        _members(members)
    {
        if (! host.contains(members))
            throw PreconditionError{ "subset " + mask_to_string(members) + " leaves a ground set of size " + to_string(host.size()) };
    }

    auto Subset::of(GroundSet host, std::initializer_list<unsigned> labels) -> Subset
    {
        Mask m = 0;
        for (auto l : labels) {
            if (l >= host.size())
                throw PreconditionError{ "label " + to_string(l) + " outside the ground set" };
            m |= Mask{1} << l;
        }
        return Subset{ host, m };
    }

    auto Subset::elements() const -> vector<unsigned>
    {
        return elements_of(_members);
    }

    auto compare_masks(Mask u, Mask v) -> Relation
    {
        if (u == v)
            return Relation::equal;
        if (is_subset(u, v))
            return Relation::less;
        if (is_subset(v, u))
            return Relation::greater;
        return Relation::incomparable;
    }

    auto compare(const Subset & u, const Subset & v) -> Relation
    {
        if (u.host() != v.host())
            throw HostMismatch{ "compare: subsets over different ground sets" };
        return compare_masks(u.mask(), v.mask());
    }

    Partition::Partition(GroundSet host, Mask x_part) :
        _host(host),
        _x_part(x_part)
    {
        if (! host.contains(x_part))
            throw PreconditionError{ "partition X-part leaves the ground set" };
    }

    auto Partition::from_parts(const Subset & x_part, const Subset & y_part) -> Partition
    {
        if (x_part.host() != y_part.host())
            throw HostMismatch{ "partition parts over different ground sets" };
        if ((x_part.mask() & y_part.mask()) != 0)
            throw PreconditionError{ "partition parts intersect" };
        if ((x_part.mask() | y_part.mask()) != x_part.host().full())
            throw PreconditionError{ "partition parts do not cover the ground set" };
        return Partition{ x_part.host(), x_part.mask() };
    }

    auto Partition::leading(GroundSet host, unsigned n) -> Partition
    {
        if (n > host.size())
            throw PreconditionError{ "X-part larger than the ground set" };
        return Partition{ host, low_mask(n) };
    }

    SplitVertex::SplitVertex(Subset x_, Subset y_, Partition partition_) :
        x(x_),
        y(y_),
        partition(partition_)
    {
        if (x.host() != partition.host() || y.host() != partition.host())
            throw HostMismatch{ "split vertex parts over a different ground set" };
        if (! is_subset(x.mask(), partition.x_part()) || ! is_subset(y.mask(), partition.y_part()))
            throw PreconditionError{ "split vertex part leaves its side of the partition" };
    }

    auto decompose(const Subset & v, const Partition & p) -> SplitVertex
    {
        if (v.host() != p.host())
            throw HostMismatch{ "decompose: vertex and partition over different ground sets" };
        return SplitVertex{ Subset{ v.host(), v.mask() & p.x_part() }, Subset{ v.host(), v.mask() & p.y_part() }, p };
    }

    auto compose(const SplitVertex & s) -> Subset
    {
        return Subset{ s.partition.host(), s.x.mask() | s.y.mask() };
    }

    auto binomial(unsigned n, unsigned r) -> std::uint64_t
    {
        if (r > n)
            return 0;
        r = std::min(r, n - r);
        std::uint64_t result = 1;
        for (unsigned i = 1 ; i <= r ; ++i)
            result = result * (n - r + i) / i;
        return result;
    }

    auto masks_of_weight(unsigned n, unsigned r) -> vector<Mask>
    {
        vector<Mask> result;
        if (r > n)
            return result;
        if (r == 0) {
            result.push_back(0);
            return result;
        }
        std::uint64_t limit = std::uint64_t{1} << n;
        // Gosper's hack enumerates same-weight masks in increasing order
        for (std::uint64_t m = (std::uint64_t{1} << r) - 1 ; m < limit ; ) {
            result.push_back(static_cast<Mask>(m));
            std::uint64_t c = m & (~m + 1);
            std::uint64_t s = m + c;
            m = (((s ^ m) >> 2) / c) | s;
        }
        return result;
    }

    auto middle_layer(unsigned size, size_t m) -> vector<Mask>
    {
        if (size > max_ground_size)
            throw CapExceeded{ "middle layer of a ground set larger than " + to_string(max_ground_size) };
        auto bound = binomial(size, size / 2);
        if (m > bound)
            throw PreconditionError{ "antichain of " + to_string(m) + " sets requested, but the middle layer of a "
                + to_string(size) + "-set has only " + to_string(bound) };
        auto layer = masks_of_weight(size, size / 2);
        layer.resize(m);
        return layer;
    }

    auto sperner_antichain(GroundSet q, size_t m) -> vector<Subset>
    {
        vector<Subset> result;
        for (auto mask : middle_layer(q.size(), m))
            result.emplace_back(q, mask);
        return result;
    }

    PartIndex::PartIndex(Mask part) :
        _elements(elements_of(part))
    {
    }

    auto elements_of(Mask m) -> vector<unsigned>
    {
        vector<unsigned> result;
        for ( ; m != 0 ; m &= m - 1)
            result.push_back(static_cast<unsigned>(std::countr_zero(m)));
        return result;
    }

    auto mask_to_hex(Mask m, unsigned n) -> string
    {
        static const char digits[] = "0123456789abcdef";
        unsigned width = std::max(1u, (n + 3) / 4);
        while (width < 8 && (m >> (4 * width)) != 0)
            ++width;
        string result(width, '0');
        for (unsigned i = 0 ; i < width ; ++i)
            result[width - 1 - i] = digits[(m >> (4 * i)) & 0xfu];
        return result;
    }

    auto mask_from_hex(const string & s) -> Mask
    {
        if (s.empty() || s.size() > 8)
            throw FormatError{ "bad hex subset '" + s + "'" };
        Mask result = 0;
        for (char c : s) {
            unsigned d;
            if (c >= '0' && c <= '9')
                d = c - '0';
            else if (c >= 'a' && c <= 'f')
                d = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F')
                d = c - 'A' + 10;
            else
                throw FormatError{ "bad hex subset '" + s + "'" };
            result = (result << 4) | d;
        }
        return result;
    }

    auto mask_to_string(Mask m) -> string
    {
        string result = "{";
        bool first = true;
        for (auto e : elements_of(m)) {
            if (! first)
                result += ",";
            result += to_string(e);
            first = false;
        }
        return result + "}";
    }
}
