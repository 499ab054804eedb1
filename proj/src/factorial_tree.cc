#include <posram/factorial_tree.hh>
#include <posram/errors.hh>

#include <algorithm>

using std::size_t;
using std::string;
using std::vector;

namespace posram
{
    using std::to_string;

    auto prefix_compare(const OrderedSubset & s, const OrderedSubset & t) -> PrefixRelation
    {
        auto common = std::min(s.size(), t.size());
        if (! std::equal(s.begin(), s.begin() + common, t.begin()))
            return PrefixRelation::incomparable;
        if (s.size() == t.size())
            return PrefixRelation::equal;
        return s.size() < t.size() ? PrefixRelation::prefix : PrefixRelation::extension;
    }

    auto underlying(const OrderedSubset & s) -> Mask
    {
        Mask result = 0;
        for (auto l : s)
            result |= Mask{1} << l;
        return result;
    }

    auto to_string(const OrderedSubset & s) -> string
    {
        string result = "(";
        for (size_t i = 0 ; i < s.size() ; ++i)
            result += (i ? "," : "") + std::to_string(s[i]);
        return result + ")";
    }

    auto factorial_tree_size(unsigned k) -> std::uint64_t
    {
        std::uint64_t total = 0, term = 1;
        for (unsigned j = 0 ; j <= k ; ++j) {
            total += term;
            term *= k - j;
        }
        return total;
    }

    FactorialTree::FactorialTree(Mask alphabet) :
        _alphabet(alphabet)
    {
        auto labels = elements_of(alphabet);
        if (labels.size() > max_tree_alphabet)
            throw CapExceeded{ "factorial tree on " + std::to_string(labels.size()) + " labels exceeds the cap of "
                + std::to_string(max_tree_alphabet) };

        _nodes.emplace_back();
        _parent.push_back(0);
        size_t level_begin = 0;
        for (size_t length = 1 ; length <= labels.size() ; ++length) {
            size_t level_end = _nodes.size();
            for (size_t p = level_begin ; p < level_end ; ++p) {
                auto used = underlying(_nodes[p]);
                for (auto l : labels) {
                    if ((used >> l) & 1u)
                        continue;
                    auto child = _nodes[p];
                    child.push_back(l);
                    _nodes.push_back(std::move(child));
                    _parent.push_back(p);
                }
            }
            level_begin = level_end;
        }

        for (size_t i = 0 ; i < _nodes.size() ; ++i)
            _index.emplace(_nodes[i], i);
    }

    auto FactorialTree::index_of(const OrderedSubset & s) const -> size_t
    {
        auto i = _index.find(s);
        if (i == _index.end())
            throw PreconditionError{ "ordered subset " + to_string(s) + " is not in the factorial tree" };
        return i->second;
    }

    auto FactorialTree::as_poset() const -> FinitePoset
    {
        FinitePoset p{ _nodes.size() };
        for (size_t i = 0 ; i < _nodes.size() ; ++i)
            for (size_t j = 0 ; j < _nodes.size() ; ++j)
                if (auto r = prefix_compare(_nodes[i], _nodes[j]) ; r == PrefixRelation::prefix || r == PrefixRelation::equal)
                    p.set_leq(i, j);
        return p;
    }
}
