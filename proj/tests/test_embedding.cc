#include "oracles.hh"

#include <posram/embedding.hh>
#include <posram/errors.hh>
#include <posram/rng.hh>
#include <posram/verify.hh>

#include <doctest.h>

#include <algorithm>

using namespace posram;

namespace
{
    auto all_orderings(Mask y) -> std::vector<std::vector<unsigned>>
    {
        auto labels = elements_of(y);
        std::vector<std::vector<unsigned>> result;
        do
            result.push_back(labels);
        while (std::next_permutation(labels.begin(), labels.end()));
        return result;
    }

    auto check_shift(const Coloring & c, const Partition & p, const std::vector<unsigned> & ordering) -> void
    {
        auto result = shift_search(c, p, ordering);
        if (auto red = std::get_if<XGoodCopyCert>(&result)) {
            CHECK(red->color == Color::red);
            CHECK(verify_certificate(*red, c));
            CHECK(oracle::red_xgood_exists(c, p.x_part()));
        }
        else {
            auto & chain = std::get<BlueChainCert>(result);
            CHECK(chain.ordering == ordering);
            CHECK(verify_certificate(chain, c));
        }
    }
}

TEST_CASE("normalize_to_good examples")
{
    GroundSet g{ 4 };
    auto cube = standard_poset(PatternKind::cube(2));

    auto identity = normalize_to_good(EmbeddingMap{ cube, g, { 0, 1, 2, 3 } });
    CHECK(identity.partition.x_part() == 0b0011);
    CHECK(identity.images == std::vector<Mask>{ 0, 1, 2, 3 });

    auto shifted = normalize_to_good(EmbeddingMap{ cube, g, { 4, 5, 6, 7 } });
    CHECK(shifted.partition.x_part() == 0b0011);
    CHECK(shifted.images == std::vector<Mask>{ 4, 5, 6, 7 });
    CHECK(verify_certificate(shifted, Coloring{ g, Color::red }));

    CHECK_THROWS_AS(normalize_to_good(EmbeddingMap{ cube, g, { 0, 1, 1, 3 } }), PreconditionError);
    CHECK_THROWS_AS(normalize_to_good(EmbeddingMap{ standard_poset(PatternKind::lambda()), g, { 1, 2, 3 } }), PreconditionError);
}

TEST_CASE("normalize_to_good on random cube embeddings")
{
    std::mt19937_64 rng{ 17 };
    for (int t = 0 ; t < 500 ; ++t) {
        unsigned size = 6 + static_cast<unsigned>(uniform_below(rng, 4));
        unsigned n = 1 + static_cast<unsigned>(uniform_below(rng, 3));
        GroundSet g{ size };
        // phi(S) = base | union of disjoint nonempty blocks B_a for a in S
        std::vector<Mask> blocks(n, 0);
        Mask base = 0;
        for (unsigned e = 0 ; e < size ; ++e) {
            auto slot = uniform_below(rng, n + 2);
            if (e < n)
                slot = e;
            if (slot < n)
                blocks[slot] |= Mask{1} << e;
            else if (slot == n)
                base |= Mask{1} << e;
        }
        std::vector<Mask> images(std::size_t{1} << n);
        for (std::size_t s = 0 ; s < images.size() ; ++s) {
            images[s] = base;
            for (unsigned a = 0 ; a < n ; ++a)
                if ((s >> a) & 1u)
                    images[s] |= blocks[a];
        }
        auto cert = normalize_to_good(EmbeddingMap{ standard_poset(PatternKind::cube(n)), g, images });
        CHECK(verify_certificate(cert, Coloring{ g, Color::red }));
        CHECK(cert.partition.x_size() == n);
        for (unsigned a = 0 ; a < n ; ++a)
            CHECK(popcount(cert.partition.x_part() & blocks[a]) == 1);
    }
}

TEST_CASE("shift_search on constant colorings")
{
    GroundSet g{ 4 };
    auto p = Partition::leading(g, 2);
    std::vector<unsigned> ordering{ 3, 2 };

    auto red = shift_search(Coloring{ g, Color::red }, p, ordering);
    auto & copy = std::get<XGoodCopyCert>(red);
    CHECK(copy.images == std::vector<Mask>{ 0, 1, 2, 3 });

    auto blue = shift_search(Coloring{ g, Color::blue }, p, ordering);
    auto & chain = std::get<BlueChainCert>(blue);
    CHECK(chain.vertices == std::vector<Mask>{ 0, 0b1000, 0b1100 });

    CHECK_THROWS_AS(shift_search(Coloring{ g, Color::red }, p, std::vector<unsigned>{ 3 }), PreconditionError);
    CHECK_THROWS_AS(shift_search(Coloring{ g, Color::red }, p, std::vector<unsigned>{ 3, 1 }), PreconditionError);
    CHECK_THROWS_AS(shift_search(Coloring{ GroundSet{ 3 }, Color::red }, p, ordering), HostMismatch);
}

TEST_CASE("shift_search totality on Q_3, every partition and ordering")
{
    GroundSet g{ 3 };
    for (std::uint64_t code = 0 ; code < 256 ; ++code) {
        auto c = oracle::coloring_from_code(3, code);
        for (Mask x = 0 ; x < 8 ; ++x) {
            Partition p{ g, x };
            for (auto & ordering : all_orderings(p.y_part()))
                check_shift(c, p, ordering);
        }
    }
}

TEST_CASE("shift_search totality on Q_4 with leading splits")
{
    GroundSet g{ 4 };
    for (std::uint64_t code = 0 ; code < 65536 ; code += 7) {
        auto c = oracle::coloring_from_code(4, code);
        for (unsigned n : { 1u, 2u }) {
            auto p = Partition::leading(g, n);
            for (auto & ordering : all_orderings(p.y_part()))
                check_shift(c, p, ordering);
        }
    }
}

TEST_CASE("avoid_subposet")
{
    GroundSet g3{ 3 };
    auto p3 = Partition::leading(g3, 2);
    auto free = avoid_subposet(p3, std::vector<Mask>{});
    REQUIRE(free);
    CHECK(free->images == std::vector<Mask>{ 0, 1, 2, 3 });
    CHECK(! free->color);

    std::vector<Mask> antichain{ 0b001, 0b010, 0b100 };
    auto around = avoid_subposet(p3, antichain);
    REQUIRE(around);
    for (auto v : around->images)
        CHECK(std::find(antichain.begin(), antichain.end(), v) == antichain.end());

    GroundSet g2{ 2 };
    CHECK(! avoid_subposet(Partition::leading(g2, 1), std::vector<Mask>{ 0, 1, 3 }));
    CHECK_THROWS_AS(avoid_subposet(p3, std::vector<Mask>{ 8 }), HostMismatch);
}

TEST_CASE("pigeonhole_q2_witness examples")
{
    GroundSet g{ 4 };
    auto p = Partition::leading(g, 1);
    auto blue = Coloring{ g, Color::blue };
    auto q2 = pigeonhole_q2_witness(blue, p);
    auto & copy = std::get<PatternCopyCert>(q2);
    CHECK(copy.color == Color::blue);
    CHECK(verify_certificate(copy, blue));
    auto & im = copy.copy.images;
    CHECK(is_strict_subset(im[0], im[1]));
    CHECK(is_strict_subset(im[0], im[2]));
    CHECK(! comparable(im[1], im[2]));
    CHECK(is_strict_subset(im[1], im[3]));
    CHECK(is_strict_subset(im[2], im[3]));

    auto red = Coloring{ g, Color::red };
    CHECK(std::holds_alternative<XGoodCopyCert>(pigeonhole_q2_witness(red, p)));

    CHECK_THROWS_AS(pigeonhole_q2_witness(red, Partition::leading(g, 2)), PreconditionError);
}

TEST_CASE("sperner widths")
{
    CHECK(sperner_width(1) == 0);
    CHECK(sperner_width(2) == 2);
    CHECK(sperner_width(3) == 4);
    CHECK(sperner_width(6) == 4);
    CHECK(sperner_width(7) == 6);
}

TEST_CASE("chains_vs_cube")
{
    GroundSet g{ 6 };
    auto blue = Coloring{ g, Color::blue };
    auto chains = chains_vs_cube(blue, 1, 2, 2);
    auto & copy = std::get<PatternCopyCert>(chains);
    CHECK(copy.copy.pattern == standard_poset(PatternKind::independent_chains(2, 2)));
    CHECK(verify_certificate(copy, blue));

    auto red = Coloring{ g, Color::red };
    auto cube = chains_vs_cube(red, 1, 2, 2);
    CHECK(verify_certificate(std::get<XGoodCopyCert>(cube), red));

    CHECK_THROWS_AS(chains_vs_cube(red, 3, 2, 2), PreconditionError);
    CHECK_THROWS_AS(chains_vs_cube(red, 0, 2, 2), PreconditionError);

    for (std::uint64_t seed = 0 ; seed < 500 ; ++seed) {
        auto c = build(g, source::Random{ seed, 0.5 });
        auto result = chains_vs_cube(c, 1, 2, 1);
        if (auto b = std::get_if<PatternCopyCert>(&result))
            CHECK(verify_certificate(*b, c));
        else
            CHECK(verify_certificate(std::get<XGoodCopyCert>(result), c));
    }
}
