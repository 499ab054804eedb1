#pragma once

#include <posram/coloring.hh>
#include <posram/poset.hh>

#include <map>
#include <optional>

namespace posram
{
    /// Largest dimension the exhaustive searches accept.
    inline constexpr unsigned max_search_dimension = 5;

    /// Largest dimension searched by enumerating every coloring.
    inline constexpr unsigned max_enumeration_dimension = 4;

    enum class SearchMode
    {
        automatic,
        enumerate,
        backtrack
    };

    /// A coloring of Q_N with no blue copy of blue_pattern and no red copy of
    /// red_pattern, or nothing if none exists. Enumeration tries colorings in
    /// increasing code order (bit v of the code set means vertex v blue).
    /// Backtracking colors vertices by (size, index), blue before red, and
    /// prunes as soon as the vertex just colored completes a forbidden copy.
    /// With jobs > 1 the top-level branches are shared among workers and the
    /// first branch in search order that holds a witness wins, so the answer
    /// does not depend on jobs. Automatic uses enumeration up to dimension 4.
    auto good_coloring_search(const FinitePoset & blue_pattern, const FinitePoset & red_pattern, unsigned n,
            SearchMode mode = SearchMode::automatic, unsigned jobs = 1) -> std::optional<Coloring>;

    struct RamseyResult
    {
        FinitePoset blue_pattern;
        FinitePoset red_pattern;
        std::optional<unsigned> value;
        unsigned lower_bound = 0;

        /// Good coloring or nothing for each dimension N >= 1 searched.
        std::map<unsigned, std::optional<Coloring>> witnesses;
    };

    /// The least N <= nmax with no good coloring of Q_N, or only the bound
    /// nmax + 1 when every searched dimension has one.
    auto ramsey_number(const FinitePoset & blue_pattern, const FinitePoset & red_pattern, unsigned nmax, unsigned jobs = 1) -> RamseyResult;
}
