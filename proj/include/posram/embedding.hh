#pragma once

#include <posram/certificates.hh>
#include <posram/coloring.hh>
#include <posram/lattice.hh>
#include <posram/poset.hh>

#include <optional>
#include <span>
#include <variant>

namespace posram
{
    /// Re-indexes a cube embedding so that it becomes X-good for an n-element
    /// X of the host: each generator a gets the lowest label of
    /// phi({a}) \ phi([n] \ {a}) as its representative.
    auto normalize_to_good(const EmbeddingMap & cube) -> XGoodCopyCert;

    /// Either a red X-good copy of Q(X) with phi(X) = (X, Y(l_X)), or a blue
    /// chain (X_0, Y(0)) < ... < (X_k, Y(k)) along the given ordering of the
    /// Y-part. The result is checked before it is returned.
    auto shift_search(const Coloring & c, const Partition & p, std::span<const unsigned> ordering)
        -> std::variant<XGoodCopyCert, BlueChainCert>;

    /// An X-good copy of Q(X) containing no listed vertex, found by running
    /// shift_search with bad = blue and the ascending Y-ordering. Absent only
    /// if the bad vertices contain a chain of |Y| + 1 vertices.
    auto avoid_subposet(const Partition & p, std::span<const Mask> bad) -> std::optional<XGoodCopyCert>;

    /// Largest Y-part for which every ordering is enumerated.
    inline constexpr unsigned max_q2_orderings_size = 8;

    /// Runs shift_search over orderings of the Y-part in lexicographic order.
    /// Returns the first red X-good copy, or a blue Q_2 built from two blue
    /// chains that share their endpoints. Needs k! > 4^n.
    auto pigeonhole_q2_witness(const Coloring & c, const Partition & p) -> std::variant<PatternCopyCert, XGoodCopyCert>;

    /// Smallest even K with C(K, K/2) >= k.
    auto sperner_width(unsigned k) -> unsigned;

    /// X = elements 0..n+l-1, Y = the next K = sperner_width(k) elements, Y_i
    /// the colex middle layer of Y. Either k independent blue chains of l
    /// vertices, one inside each sublattice {X' | Y_i}, or a red copy of Q_n
    /// that is good for the first n elements.
    auto chains_vs_cube(const Coloring & c, unsigned n, unsigned k, unsigned l) -> std::variant<PatternCopyCert, XGoodCopyCert>;
}
