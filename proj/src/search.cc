#include <posram/search.hh>
#include <posram/errors.hh>

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

using std::optional;
using std::size_t;
using std::vector;

namespace posram
{
    using std::to_string;

    namespace
    {
        auto is_good(const Coloring & c, const FinitePoset & blue_pattern, const FinitePoset & red_pattern) -> bool
        {
            return ! contains_pattern(c, blue_pattern, Color::blue) && ! contains_pattern(c, red_pattern, Color::red);
        }

        auto enumerate(const FinitePoset & blue_pattern, const FinitePoset & red_pattern, GroundSet ground) -> optional<Coloring>
        {
            auto vertices = ground.vertex_count();
            std::uint64_t codes = std::uint64_t{1} << vertices;
            for (std::uint64_t code = 0 ; code < codes ; ++code) {
                Coloring c{ ground, Color::red };
                for (size_t v = 0 ; v < vertices ; ++v)
                    if ((code >> v) & 1u)
                        c.assign(static_cast<Mask>(v), Color::blue);
                if (is_good(c, blue_pattern, red_pattern))
                    return c;
            }
            return std::nullopt;
        }

        class Backtracker
        {
            private:
                const FinitePoset & _blue_pattern;
                const FinitePoset & _red_pattern;
                const vector<Mask> & _order;
                vector<Mask> _blue, _red;

            public:
                Backtracker(const FinitePoset & blue_pattern, const FinitePoset & red_pattern, const vector<Mask> & order) :
                    _blue_pattern(blue_pattern),
                    _red_pattern(red_pattern),
                    _order(order)
                {
                }

                // colors the vertex, reporting whether no forbidden copy appears
                auto place(Mask v, Color c) -> bool
                {
                    auto & cls = (c == Color::blue) ? _blue : _red;
                    cls.push_back(v);
                    return ! has_copy_through(c == Color::blue ? _blue_pattern : _red_pattern, cls, v);
                }

                auto undo(Color c) -> void
                {
                    (c == Color::blue ? _blue : _red).pop_back();
                }

                auto run(size_t depth) -> bool
                {
                    if (depth == _order.size())
                        return true;
                    for (auto c : { Color::blue, Color::red }) {
                        bool ok = place(_order[depth], c);
                        if (ok && run(depth + 1))
                            return true;
                        undo(c);
                    }
                    return false;
                }

                auto blue() const -> const vector<Mask> & { return _blue; }
        };

        auto backtrack(const FinitePoset & blue_pattern, const FinitePoset & red_pattern, GroundSet ground, unsigned jobs) -> optional<Coloring>
        {
            vector<Mask> order;
            for (Mask v = 0 ; v < ground.vertex_count() ; ++v)
                order.push_back(v);
            std::stable_sort(order.begin(), order.end(), [] (Mask a, Mask b) { return popcount(a) < popcount(b); });

            size_t depth = std::min<size_t>(order.size(), 6);
            size_t prefixes = size_t{1} << depth;
            vector<optional<vector<Mask>>> found(prefixes);
            std::atomic<size_t> next{ 0 }, best{ prefixes };
            std::exception_ptr failure;
            std::mutex failure_lock;

            auto work = [&] {
                try {
                    for (size_t i ; (i = next++) < prefixes ; ) {
                        if (i > best.load())
                            continue;
                        Backtracker search{ blue_pattern, red_pattern, order };
                        bool ok = true;
                        for (size_t t = 0 ; t < depth && ok ; ++t)
                            ok = search.place(order[t], ((i >> (depth - 1 - t)) & 1u) ? Color::red : Color::blue);
                        if (! ok || ! search.run(depth))
                            continue;
                        found[i] = search.blue();
                        for (auto seen = best.load() ; i < seen && ! best.compare_exchange_weak(seen, i) ; )
                            ;
                    }
                }
                catch (...) {
                    std::lock_guard<std::mutex> guard{ failure_lock };
                    if (! failure)
                        failure = std::current_exception();
                    next = prefixes;
                }
            };

            jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(prefixes)));
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

            if (best == prefixes)
                return std::nullopt;
            Coloring c{ ground, Color::red };
            for (auto v : *found[best])
                c.assign(v, Color::blue);
            return c;
        }
    }

    auto good_coloring_search(const FinitePoset & blue_pattern, const FinitePoset & red_pattern, unsigned n,
            SearchMode mode, unsigned jobs) -> optional<Coloring>
    {
        if (n > max_search_dimension)
            throw CapExceeded{ "exhaustive search is limited to dimension " + to_string(max_search_dimension) };
        if (blue_pattern.size() == 0 || red_pattern.size() == 0)
            throw PreconditionError{ "good_coloring_search needs non-empty patterns" };
        if (mode == SearchMode::automatic)
            mode = (n <= max_enumeration_dimension) ? SearchMode::enumerate : SearchMode::backtrack;
        if (mode == SearchMode::enumerate && n > max_enumeration_dimension)
            throw CapExceeded{ "full enumeration is limited to dimension " + to_string(max_enumeration_dimension) };

        GroundSet ground{ n };
        auto result = (mode == SearchMode::enumerate) ? enumerate(blue_pattern, red_pattern, ground)
            : backtrack(blue_pattern, red_pattern, ground, jobs);
        if (result && ! is_good(*result, blue_pattern, red_pattern))
            throw InternalError{ "good_coloring_search returned a coloring with a forbidden copy" };
        return result;
    }

    auto ramsey_number(const FinitePoset & blue_pattern, const FinitePoset & red_pattern, unsigned nmax, unsigned jobs) -> RamseyResult
    {
        if (nmax > max_search_dimension)
            throw CapExceeded{ "ramsey_number searches at most dimension " + to_string(max_search_dimension) };
        if (blue_pattern.size() == 0 || red_pattern.size() == 0)
            throw PreconditionError{ "ramsey_number needs non-empty patterns" };

        RamseyResult result{ blue_pattern, red_pattern, std::nullopt, 0, {} };

        // Q_0 is a single vertex: it is good unless both patterns are single points
        if (blue_pattern.size() == 1 && red_pattern.size() == 1) {
            result.value = 0;
            result.lower_bound = 0;
            return result;
        }

        for (unsigned n = 1 ; n <= nmax ; ++n) {
            auto witness = good_coloring_search(blue_pattern, red_pattern, n, SearchMode::automatic, jobs);
            bool absent = ! witness;
            result.witnesses.emplace(n, std::move(witness));
            if (absent) {
                result.value = n;
                result.lower_bound = n;
                return result;
            }
        }
        result.lower_bound = nmax + 1;
        return result;
    }
}
