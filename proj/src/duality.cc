#include <posram/duality.hh>
#include <posram/errors.hh>
#include <posram/factorial_tree.hh>
#include <posram/poset.hh>
#include <posram/verify.hh>

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>

using std::optional;
using std::size_t;
using std::string;
using std::variant;
using std::vector;

namespace posram
{
    using std::to_string;

    namespace
    {
        constexpr std::uint8_t embeddable = 1, some_y_above = 2, all_x_above = 4;

        auto require_lambda_free(const Coloring & c) -> void
        {
            if (auto t = find_monochromatic_lambda(c, Color::blue))
                throw BlueLambdaPresent{ "coloring has a blue lambda: " + mask_to_string((*t)[0]) + ", "
                    + mask_to_string((*t)[1]) + " below " + mask_to_string((*t)[2]) };
        }

        auto ensure_valid(const Certificate & cert, const Coloring & c, const string & what) -> void
        {
            auto verdict = verify_certificate(cert, c);
            if (! verdict)
                throw InternalError{ what + " produced an invalid certificate: " + verdict.reason + " (" + verdict.detail + ")" };
        }

        // supersets of base inside base | free, by size and then by index
        template <typename Pred_>
        auto first_superset(Mask base, Mask free, Pred_ pred, unsigned min_extra) -> optional<Mask>
        {
            PartIndex index{ free };
            for (unsigned w = min_extra ; w <= index.size() ; ++w)
                for (auto m : masks_of_weight(index.size(), w))
                    if (auto candidate = base | index.expand(m) ; pred(candidate))
                        return candidate;
            return std::nullopt;
        }

        class Engine
        {
            private:
                const Coloring & _c;
                const Partition & _p;
                const EmbeddabilityTable & _table;
                std::map<std::uint64_t, vector<Mask>> _witnesses;

            public:
                Engine(const Coloring & c, const Partition & p, const EmbeddabilityTable & table) :
                    _c(c),
                    _p(p),
                    _table(table)
                {
                }

                // for a blue embeddable (x, y): the strict Y-superset to delegate to
                auto delegate_y(Mask x, Mask y) const -> Mask
                {
                    auto found = first_superset(y, _p.y_part() & ~y, [&] (Mask y2) { return _table.at(x, y2); }, 1);
                    if (! found)
                        throw InternalError{ "embeddability table: blue entry without an embeddable Y-superset" };
                    return *found;
                }

                // a blue, non-embeddable (x', y) with x' above x, smallest then lowest
                auto climb(Mask x, Mask y) const -> Mask
                {
                    auto found = first_superset(x, _p.x_part() & ~x, [&] (Mask x2) {
                        return _c.is_blue(x2 | y) && ! _table.at(x2, y);
                    }, 0);
                    if (! found)
                        throw InternalError{ "no blue non-embeddable vertex above a non-embeddable one" };
                    return *found;
                }

                // images of the witnessing map for (x, y), indexed by the
                // compressed index of X' \ x within the X-part outside x
                auto witness(Mask x, Mask y) -> const vector<Mask> &
                {
                    auto key = (std::uint64_t{x} << 32) | y;
                    if (auto i = _witnesses.find(key) ; i != _witnesses.end())
                        return i->second;
                    if (! _table.at(x, y))
                        throw InternalError{ "witness requested for a non-embeddable vertex" };

                    if (_c.is_blue(x | y)) {
                        auto images = witness(x, delegate_y(x, y));
                        return _witnesses.emplace(key, std::move(images)).first->second;
                    }

                    constexpr Mask none = 0xffffffffu, several = 0xfffffffeu;
                    PartIndex rest{ _p.x_part() & ~x };
                    vector<Mask> minimal(rest.count(), none);
                    vector<Mask> images(rest.count());
                    for (size_t s = 0 ; s < rest.count() ; ++s) {
                        Mask xs = x | rest.expand(s);
                        Mask found = none;
                        for (size_t r = s ; r != 0 && found != several ; r &= r - 1) {
                            auto m = minimal[s & ~(r & (~r + 1))];
                            if (m == none)
                                continue;
                            if (m == several || (found != none && found != m))
                                found = several;
                            else
                                found = m;
                        }
                        if (found == none && _c.is_blue(xs | y))
                            found = xs;
                        minimal[s] = found;

                        if (found == none)
                            images[s] = xs | y;
                        else if (found == several)
                            images[s] = xs | _p.y_part();
                        else {
                            auto & inner = witness(found, y);
                            images[s] = inner[PartIndex{ _p.x_part() & ~found }.compress(xs & ~found)];
                        }
                    }
                    return _witnesses.emplace(key, std::move(images)).first->second;
                }

                auto red_copy() -> XGoodCopyCert
                {
                    XGoodCopyCert copy{ _p, witness(0, 0), Color::red };
                    ensure_valid(copy, _c, "red_xgood_copy");
                    return copy;
                }

                auto shrub() const -> ShrubCert
                {
                    if (_table.at(0))
                        throw PreconditionError{ "blue_shrub_extract needs (0, 0) to be non-embeddable" };
                    FactorialTree tree{ _p.y_part() };
                    ShrubCert result{ _p.host(), _p.y_part(), tree.nodes(), vector<Mask>(tree.size()), false, Color::blue };
                    vector<Mask> xs(tree.size());
                    for (size_t i = 0 ; i < tree.size() ; ++i) {
                        auto y = underlying(tree.node(i));
                        xs[i] = climb(i == 0 ? 0 : xs[tree.parent(i)], y);
                        result.images[i] = xs[i] | y;
                    }
                    ensure_valid(result, _c, "blue_shrub_extract");
                    return result;
                }
        };
    }

    EmbeddabilityTable::EmbeddabilityTable(const Coloring & c, const Partition & p, bool lambda_checked) :
        _partition(p),
        _flags(c.vertex_count(), 0)
    {
        if (c.ground() != p.host())
            throw HostMismatch{ "embeddability table: coloring and partition over different ground sets" };
        if (! lambda_checked)
            require_lambda_free(c);

        auto xs = p.x_part(), ys = p.y_part();
        for (size_t index = c.vertex_count() ; index-- > 0 ; ) {
            auto v = static_cast<Mask>(index);
            std::uint8_t flags = 0;

            for (Mask free = ys & ~v ; free != 0 ; free &= free - 1)
                if (_flags[v | (free & (~free + 1))] & (embeddable | some_y_above)) {
                    flags |= some_y_above;
                    break;
                }

            flags |= all_x_above;
            for (Mask free = xs & ~v ; free != 0 ; free &= free - 1) {
                auto up = _flags[v | (free & (~free + 1))];
                if ((up & (embeddable | all_x_above)) != (embeddable | all_x_above)) {
                    flags &= ~all_x_above;
                    break;
                }
            }

            if (c.is_blue(v) ? (flags & some_y_above) : (flags & all_x_above))
                flags |= embeddable;
            _flags[index] = flags;
        }
    }

    auto embeddable_table(const Coloring & c, const Partition & p) -> EmbeddabilityTable
    {
        return EmbeddabilityTable{ c, p };
    }

    auto embeddable_oracle(const Coloring & c, const Partition & p, Mask x, Mask y) -> bool
    {
        if (c.ground() != p.host())
            throw HostMismatch{ "embeddable_oracle: coloring and partition over different ground sets" };
        if (p.x_size() > max_oracle_part || p.y_size() > max_oracle_part)
            throw CapExceeded{ "embeddable_oracle is limited to parts of size " + to_string(max_oracle_part) };
        if (! is_subset(x, p.x_part()) || ! is_subset(y, p.y_part()))
            throw PreconditionError{ "embeddable_oracle: (X, Y) does not split along the partition" };

        // the up-set of x, listed so that subsets come first
        vector<Mask> domain;
        for (Mask s = 0 ; s <= p.x_part() ; ++s)
            if (is_subset(s, p.x_part()) && is_subset(x, s))
                domain.push_back(s);
        auto y_options = vector<Mask>{};
        for (Mask s = 0 ; s <= p.y_part() ; ++s)
            if (is_subset(s, p.y_part()))
                y_options.push_back(s);

        vector<Mask> chosen(domain.size());
        auto extend = [&] (auto & self, size_t i) -> bool {
            if (i == domain.size())
                return true;
            for (auto ys : y_options) {
                Mask image = domain[i] | ys;
                if (c.is_blue(image))
                    continue;
                if (i == 0 && ! is_subset(y, ys))
                    continue;
                bool fits = true;
                for (size_t j = 0 ; j < i && fits ; ++j) {
                    bool below = is_subset(domain[j], domain[i]);
                    if (below != is_subset(chosen[j], image))
                        fits = false;
                    if (is_subset(image, chosen[j]))
                        fits = false;
                }
                if (! fits)
                    continue;
                chosen[i] = image;
                if (self(self, i + 1))
                    return true;
            }
            return false;
        };
        return extend(extend, 0);
    }

    auto red_xgood_copy(const Coloring & c, const Partition & p) -> optional<XGoodCopyCert>
    {
        EmbeddabilityTable table{ c, p };
        if (! table.at(0))
            return std::nullopt;
        return Engine{ c, p, table }.red_copy();
    }

    auto blue_shrub_extract(const Coloring & c, const Partition & p) -> ShrubCert
    {
        EmbeddabilityTable table{ c, p };
        return Engine{ c, p, table }.shrub();
    }

    namespace
    {
        auto decide(const Coloring & c, const Partition & p, const EmbeddabilityTable & table) -> variant<RedBranch, BlueBranch>
        {
            Engine engine{ c, p, table };
            if (table.at(0))
                return RedBranch{ engine.red_copy() };
            return BlueBranch{ engine.shrub() };
        }
    }

    auto duality(const Coloring & c, const Partition & p) -> variant<RedBranch, BlueBranch>
    {
        EmbeddabilityTable table{ c, p };
        return decide(c, p, table);
    }

    auto full_duality_scan(const Coloring & c, unsigned n, unsigned k, unsigned jobs) -> variant<ScanRedCube, ScanShrubs>
    {
        auto size = c.ground().size();
        if (n + k != size)
            throw PreconditionError{ "full_duality_scan needs n + k = N (" + to_string(n) + " + " + to_string(k) + " != " + to_string(size) + ")" };
        require_lambda_free(c);

        auto ys = masks_of_weight(size, k);
        vector<optional<variant<RedBranch, BlueBranch>>> outcomes(ys.size());
        std::atomic<size_t> next{ 0 }, first_red{ ys.size() };
        std::exception_ptr failure;
        std::mutex failure_lock;

        auto work = [&] {
            try {
                for (size_t i ; (i = next++) < ys.size() ; ) {
                    if (i > first_red.load())
                        continue;
                    Partition p{ c.ground(), c.ground().full() & ~ys[i] };
                    EmbeddabilityTable table{ c, p, true };
                    outcomes[i] = decide(c, p, table);
                    if (std::holds_alternative<RedBranch>(*outcomes[i]))
                        for (auto seen = first_red.load() ; i < seen && ! first_red.compare_exchange_weak(seen, i) ; )
                            ;
                }
            }
            catch (...) {
                std::lock_guard<std::mutex> guard{ failure_lock };
                if (! failure)
                    failure = std::current_exception();
                next = ys.size();
            }
        };

        jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(ys.size())));
        if (jobs == 1)
            work();
        else {
            vector<std::thread> workers;
            for (unsigned j = 0 ; j < jobs ; ++j)
                workers.emplace_back(work);
            for (auto & w : workers)
                w.join();
        }
        if (failure)
            std::rethrow_exception(failure);

        if (first_red < ys.size())
            return ScanRedCube{ ys[first_red], std::get<RedBranch>(*outcomes[first_red]).copy };

        ScanShrubs result;
        for (size_t i = 0 ; i < ys.size() ; ++i)
            result.shrubs.emplace_back(ys[i], std::get<BlueBranch>(std::move(*outcomes[i])).shrub);
        return result;
    }
}
