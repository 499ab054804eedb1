#include <posram/duality.hh>
#include <posram/errors.hh>
#include <posram/shrub.hh>
#include <posram/verify.hh>

#include <doctest.h>

#include <sstream>

using namespace posram;

namespace
{
    auto colex_half(unsigned block, unsigned j) -> Mask
    {
        unsigned seen = 0;
        for (Mask m = 0 ; ; ++m)
            if (popcount(m) == block / 2 && seen++ == j)
                return m;
    }
}

TEST_CASE("minimum block sizes")
{
    CHECK(min_block_size(1) == 0);
    CHECK(min_block_size(2) == 2);
    CHECK(min_block_size(3) == 3);
    CHECK(min_block_size(4) == 4);
    CHECK(min_block_size(6) == 4);
    CHECK(min_block_size(7) == 5);
    CHECK(min_block_size(256) == 11);
    CHECK(min_block_size(252) == 10);
    CHECK_THROWS_AS(min_block_size(0), PreconditionError);
}

TEST_CASE("canonical shrubs validate for k = 1..5")
{
    for (unsigned k = 1 ; k <= 5 ; ++k) {
        auto l = min_block_size(k);
        Mask a = low_mask(k * l);
        Mask y = low_mask(k + k * l) & ~a;
        auto images = canonical_shrub_images(y, a, l);
        FactorialTree tree{ y };
        CHECK(images.size() == factorial_tree_size(k));
        CHECK(verify_shrub_structure(y, tree.nodes(), images));
        if (k + k * l <= max_ground_size) {
            GroundSet host{ k + k * l };
            auto s = canonical_shrub(host, y, a);
            CHECK(s.images == images);
            CHECK(verify_certificate(s, Coloring{ host, Color::red }));
        }

        // maximal nodes land on pairwise incomparable vertices
        std::vector<Mask> tops;
        for (std::size_t i = 0 ; i < tree.size() ; ++i)
            if (tree.node(i).size() == k)
                tops.push_back(images[i]);
        for (std::size_t i = 0 ; i < tops.size() ; ++i)
            for (std::size_t j = i + 1 ; j < tops.size() ; ++j)
                CHECK(! comparable(tops[i], tops[j]));
    }
}

TEST_CASE("the k = 4 worked examples")
{
    // A = {0..15} in blocks A_i = {4i..4i+3}, Y = {16..19} with y_i = 16 + i
    GroundSet host{ 20 };
    Mask a = low_mask(16);
    Mask y = host.full() & ~a;
    auto s = canonical_shrub(host, y, a);
    FactorialTree tree{ y };

    auto block = [] (unsigned i) { return Mask{0xf} << (4 * i); };
    auto piece = [] (unsigned i, unsigned j) { return colex_half(4, j) << (4 * i); };
    auto label = [] (unsigned i) { return Mask{1} << (16 + i); };

    // (y_2, y_3, y_1) -> A_2 | A_3^3 | A_0^1 | {y_1, y_2, y_3}
    auto first = s.images[tree.index_of({ 18, 19, 17 })];
    CHECK(first == (block(2) | piece(3, 3) | piece(0, 1) | label(1) | label(2) | label(3)));

    // (y_3, y_1) -> A_3 | A_0^1 | {y_1, y_3}
    auto second = s.images[tree.index_of({ 19, 17 })];
    CHECK(second == (block(3) | piece(0, 1) | label(1) | label(3)));

    // (y_0, y_1, y_2) -> A_0 | A_1^1 | A_2^2 | {y_0, y_1, y_2}
    auto third = s.images[tree.index_of({ 16, 17, 18 })];
    CHECK(third == (block(0) | piece(1, 1) | piece(2, 2) | label(0) | label(1) | label(2)));

    CHECK(s.images[0] == 0);
    CHECK(s.images[tree.index_of({ 16 })] == (block(0) | label(0)));
}

TEST_CASE("canonical shrub preconditions")
{
    GroundSet host{ 8 };
    CHECK_THROWS_AS(canonical_shrub(host, 0b11000000, 0b01001111), PreconditionError);
    CHECK_THROWS_AS(canonical_shrub(host, 0b11000000, 0b00000111), PreconditionError);
    CHECK_THROWS_AS(canonical_shrub(host, 0b11000000, 0b00001111, 1), PreconditionError);
    CHECK_THROWS_AS(canonical_shrub(host, 0, 0b1111), PreconditionError);
    CHECK_NOTHROW(canonical_shrub(host, 0b11000000, 0b00111111, 3));
}

TEST_CASE("framework shrubs are shifted and blue")
{
    GroundSet host{ 8 };
    Framework f{ 0b00000011, 0b00111100, 0b11000000, 0b10000000 };
    auto s = framework_shrub(host, f, 2);
    CHECK(s.color == Color::blue);
    for (auto v : s.images)
        CHECK(is_subset(f.x, v));
}

TEST_CASE("lower bound construction for k = 2")
{
    LowerBoundParams params{ 20, 2, 2, 1, 100 };
    auto built = lower_bound_coloring(params);
    CHECK(built.shrubs.size() == 190);
    CHECK(built.bundle.frameworks.size() == 190);
    CHECK(built.passes >= 1);
    CHECK(verify_certificate(built.bundle, built.coloring));

    auto report = verify_lower_bound(built.coloring, built.shrubs, 18, 2);
    CHECK(report.ok);
    REQUIRE(! report.lines.empty());
    CHECK(report.lines.back() == "certified: R(Lambda, Q_18) >= 21");

    // separation makes every pair of shifted shrubs incomparable
    for (std::size_t i = 0 ; i < built.bundle.frameworks.size() ; ++i)
        for (std::size_t j = 0 ; j < built.bundle.frameworks.size() ; ++j) {
            if (i == j)
                continue;
            auto & f1 = built.bundle.frameworks[i];
            auto & f2 = built.bundle.frameworks[j];
            CHECK((f1.x & f2.z & ~f2.x) != 0);
        }

    auto again = lower_bound_coloring(params);
    CHECK(again.coloring == built.coloring);
    CHECK(again.bundle.frameworks == built.bundle.frameworks);
}

TEST_CASE("lower bound construction for k = 1")
{
    auto built = lower_bound_coloring(LowerBoundParams{ 5, 1, 0, 3, 100 });
    for (auto & s : built.shrubs)
        CHECK(s.images.size() == 2);
    auto report = verify_lower_bound(built.coloring, built.shrubs, 4, 1);
    CHECK(report.ok);
    CHECK(report.lines.back() == "certified: R(Lambda, Q_4) >= 6");
}

TEST_CASE("k = 1 needs more than four elements")
{
    // four separated frameworks with |Z| = 3 cannot exist
    for (std::uint64_t seed = 1 ; seed <= 3 ; ++seed)
        CHECK_THROWS_AS(lower_bound_coloring(LowerBoundParams{ 4, 1, 0, seed, 50 }), BudgetExhausted);
}

TEST_CASE("lower bound parameter errors")
{
    CHECK_THROWS_AS(lower_bound_coloring(LowerBoundParams{ 6, 2, 2, 1, 10 }), PreconditionError);
    CHECK_THROWS_AS(lower_bound_coloring(LowerBoundParams{ 12, 2, 1, 1, 10 }), PreconditionError);
    CHECK_THROWS_AS(lower_bound_coloring(LowerBoundParams{ 12, 2, 2, 1, 0 }), PreconditionError);
    CHECK_THROWS_AS(lower_bound_coloring(LowerBoundParams{ 12, 2, 2, 1, 100 }), BudgetExhausted);
    CHECK_THROWS_AS(lower_bound_coloring(LowerBoundParams{ 24, 8, 5, 1, 1 }), CapExceeded);
}

TEST_CASE("verify_lower_bound catches injected faults")
{
    auto built = lower_bound_coloring(LowerBoundParams{ 20, 2, 2, 1, 100 });

    auto flipped = built.coloring;
    auto victim = built.shrubs[5].images[3];
    flipped.assign(victim, Color::red);
    auto report = verify_lower_bound(flipped, built.shrubs, 18, 2);
    CHECK(! report.ok);
    CHECK(report.failure.rfind("(a)", 0) == 0);
    CHECK(report.failure.find("not-blue") != std::string::npos);

    // two hand-built 2-chains sharing their bottom
    GroundSet small{ 5 };
    std::vector<ShrubCert> pair{
        framework_shrub(small, Framework{ 0b00001, 0, 0b11110, 0 }, 0),
        framework_shrub(small, Framework{ 0b00010, 0, 0b11101, 0 }, 0) };
    auto both = Coloring{ small, Color::red };
    for (auto & s : pair)
        for (auto v : s.images)
            both.assign(v, Color::blue);
    auto overlap = verify_lower_bound(both, pair, 4, 1);
    CHECK(! overlap.ok);
    CHECK(overlap.failure.rfind("(b)", 0) == 0);

    auto missing = built.shrubs;
    missing.pop_back();
    auto gap = verify_lower_bound(built.coloring, missing, 18, 2);
    CHECK(! gap.ok);
    CHECK(gap.failure.rfind("(d)", 0) == 0);

    CHECK_THROWS_AS(verify_lower_bound(built.coloring, built.shrubs, 17, 2), PreconditionError);
}

TEST_CASE("framework bundle text format")
{
    auto built = lower_bound_coloring(LowerBoundParams{ 20, 2, 2, 1, 100 });
    std::stringstream s;
    write_framework_bundle(s, built.bundle);
    auto back = read_framework_bundle(s);
    CHECK(back.host == built.bundle.host);
    CHECK(back.k == 2);
    CHECK(back.block_size == 2);
    CHECK(back.frameworks == built.bundle.frameworks);

    std::istringstream bad{ "FRAMEWORKS N=20 k=2\n" };
    CHECK_THROWS_AS(read_framework_bundle(bad), FormatError);
    std::istringstream junk{ "FRAMEWORKS N=4 k=1 block=0\n1 2\n" };
    CHECK_THROWS_AS(read_framework_bundle(junk), FormatError);
}
