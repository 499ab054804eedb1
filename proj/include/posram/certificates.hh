#pragma once

#include <posram/coloring.hh>
#include <posram/factorial_tree.hh>
#include <posram/lattice.hh>
#include <posram/poset.hh>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace posram
{
    /// An X-good embedding of Q(X) for X = partition.x_part(). images[i] is
    /// the image of the subset of X with compressed index i (PartIndex order).
    struct XGoodCopyCert
    {
        Partition partition;
        std::vector<Mask> images;
        std::optional<Color> color;
    };

    /// Blue chain (X_0, Y(0)) < ... < (X_k, Y(k)) where Y(i) holds the first
    /// i labels of the ordering. vertices[i] is the whole vertex X_i | Y(i).
    struct BlueChainCert
    {
        Partition partition;
        std::vector<unsigned> ordering;
        std::vector<Mask> vertices;
    };

    /// A Y-good image of the factorial tree on y_part; nodes in FactorialTree
    /// order. A weak shrub only promises strict containment along prefixes.
    struct ShrubCert
    {
        GroundSet host;
        Mask y_part;
        std::vector<OrderedSubset> nodes;
        std::vector<Mask> images;
        bool weak = false;
        std::optional<Color> color;
    };

    /// A monochromatic induced copy of an arbitrary pattern.
    struct PatternCopyCert
    {
        EmbeddingMap copy;
        Color color;
    };

    /// Y, A_Y, Z_Y, X_Y, pairwise disjoint apart from X inside Z, and
    /// Y | A | Z the whole ground set.
    struct Framework
    {
        Mask y;
        Mask a;
        Mask z;
        Mask x;

        auto operator== (const Framework &) const -> bool = default;
    };

    /// One framework per k-subset Y, in colex order of Y. The coloring it
    /// certifies is blue exactly on the union of the shifted canonical shrubs.
    struct FrameworkBundle
    {
        GroundSet host;
        unsigned k;
        unsigned block_size;
        std::vector<Framework> frameworks;
    };

    using Certificate = std::variant<XGoodCopyCert, BlueChainCert, ShrubCert, PatternCopyCert, FrameworkBundle>;

    /// "xgood", "chain", "shrub", "pattern" or "frameworks".
    auto certificate_type(const Certificate & c) -> std::string;

    auto certificate_host(const Certificate & c) -> GroundSet;

    /// The same copy as an embedding of the cube, pattern element i being the
    /// subset with compressed index i.
    auto as_cube_embedding(const XGoodCopyCert & cert) -> EmbeddingMap;
}
