#pragma once

#include <posram/certificates.hh>
#include <posram/coloring.hh>
#include <posram/lattice.hh>

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace posram
{
    /// Embeddability of every vertex (X, Y) for one partition, indexed by the
    /// whole vertex X | Y. Filled from the top of the lattice down: a blue
    /// vertex is embeddable iff some (X, Y') with Y' strictly above Y is; a red
    /// vertex iff every (X', Y) with X' strictly above X is.
    class EmbeddabilityTable
    {
        private:
            Partition _partition;
            std::vector<std::uint8_t> _flags;

        public:
            /// Throws BlueLambdaPresent unless the caller has already
            /// established that the coloring has no blue lambda.
            EmbeddabilityTable(const Coloring & c, const Partition & p, bool lambda_checked = false);

            auto partition() const -> const Partition & { return _partition; }
            auto at(Mask vertex) const -> bool { return _flags[vertex] & 1u; }
            auto at(Mask x, Mask y) const -> bool { return at(x | y); }
    };

    auto embeddable_table(const Coloring & c, const Partition & p) -> EmbeddabilityTable;

    /// Largest X- and Y-part the brute-force oracle accepts.
    inline constexpr unsigned max_oracle_part = 3;

    /// Embeddability straight from the definition: backtracking over red,
    /// X-good, order-preserving maps on the up-set of X. Does not assume the
    /// coloring is lambda-free.
    auto embeddable_oracle(const Coloring & c, const Partition & p, Mask x, Mask y) -> bool;

    /// A red X-good copy of Q(X), or nothing exactly when (0, 0) is not
    /// embeddable.
    auto red_xgood_copy(const Coloring & c, const Partition & p) -> std::optional<XGoodCopyCert>;

    /// A blue Y-shrub, grown node by node through blue non-embeddable
    /// vertices. Needs (0, 0) not embeddable.
    auto blue_shrub_extract(const Coloring & c, const Partition & p) -> ShrubCert;

    struct RedBranch
    {
        XGoodCopyCert copy;
    };

    struct BlueBranch
    {
        ShrubCert shrub;
    };

    auto duality(const Coloring & c, const Partition & p) -> std::variant<RedBranch, BlueBranch>;

    struct ScanRedCube
    {
        Mask y;
        XGoodCopyCert copy;
    };

    struct ScanShrubs
    {
        std::vector<std::pair<Mask, ShrubCert>> shrubs;
    };

    /// Runs duality for every k-subset Y (colex order) with X its complement.
    /// Returns the red copy for the first Y that has one, or a blue Y-shrub
    /// for every Y. Worker threads share nothing but the coloring.
    auto full_duality_scan(const Coloring & c, unsigned n, unsigned k, unsigned jobs = 1) -> std::variant<ScanRedCube, ScanShrubs>;
}
