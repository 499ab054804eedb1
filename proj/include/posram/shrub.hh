#pragma once

#include <posram/certificates.hh>
#include <posram/coloring.hh>
#include <posram/lattice.hh>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace posram
{
    /// Smallest l with C(l, floor(l/2)) >= k.
    auto min_block_size(unsigned k) -> unsigned;

    /// The shrub tau on Y in Q(A | Y): tau(()) = {} and
    /// tau((y_i1, ..., y_ij)) = A_i1 | A_{i1+1}^{i2} | ... | A_{i1+j-1}^{ij} | {y's},
    /// indices mod k. Blocks A_0..A_{k-1} are consecutive runs of l =
    /// min_block_size(k) elements of A in label order; A_i^j is the j-th colex
    /// floor(l/2)-subset of A_i. Uncolored; checked before return.
    auto canonical_shrub(GroundSet host, Mask y, Mask a) -> ShrubCert;

    /// Same construction with an explicit block size >= min_block_size(k).
    auto canonical_shrub(GroundSet host, Mask y, Mask a, unsigned block_size) -> ShrubCert;

    /// The images of the same construction in factorial tree order, on bare
    /// labels (up to 31) with no ground set attached.
    auto canonical_shrub_images(Mask y, Mask a, unsigned block_size) -> std::vector<Mask>;

    /// The shrub of one framework: the canonical shrub on (Y, A_Y), every
    /// vertex shifted up by X_Y, colored blue.
    auto framework_shrub(GroundSet host, const Framework & f, unsigned block_size) -> ShrubCert;

    struct LowerBoundParams
    {
        unsigned ground_size;
        unsigned k;
        unsigned block_size;
        std::uint64_t seed;
        unsigned budget;
    };

    struct LowerBoundConstruction
    {
        Coloring coloring;
        FrameworkBundle bundle;
        std::vector<ShrubCert> shrubs;
        unsigned passes;
    };

    /// Largest number of k-subsets for which frameworks are drawn.
    inline constexpr std::uint64_t max_frameworks = 20000;

    /// Draws one random framework per k-subset Y (A_Y uniform, each element of
    /// Z_Y in X_Y with probability 1/2, one seeded stream per Y), then repairs
    /// separation failures, X_{Y1} & Z_{Y2} inside X_{Y2}, pass by pass: each
    /// failing ordered pair triggers one seeded min-conflicts move on one of
    /// its two frameworks. Colors the union of the shifted shrubs blue.
    /// Throws BudgetExhausted naming a failing pair after `budget` passes.
    auto lower_bound_coloring(const LowerBoundParams & params) -> LowerBoundConstruction;

    struct LowerBoundReport
    {
        bool ok = true;
        std::string failure;
        std::vector<std::string> lines;
    };

    /// Checks (a) every shrub is a valid blue Y-shrub, (b) shrubs for
    /// different Y are independent, (c) the blue class is a collection of
    /// independent up-trees, (d) every k-subset has a shrub, then states the
    /// bound. For N <= 4 also (e) searches for a red Q_n directly.
    auto verify_lower_bound(const Coloring & c, std::span<const ShrubCert> shrubs, unsigned n, unsigned k) -> LowerBoundReport;

    /// "FRAMEWORKS N=<n> k=<k> block=<l>", then one "<Y> <A> <X>" hex line
    /// per framework.
    auto write_framework_bundle(std::ostream & out, const FrameworkBundle & b) -> void;
    auto read_framework_bundle(std::istream & in) -> FrameworkBundle;
}
