#pragma once

#include <posram/certificates.hh>
#include <posram/coloring.hh>

#include <string>
#include <vector>

namespace posram
{
    /// Result of an independent certificate check. reason is a short stable
    /// code (for example "not-blue" or "not-injective"), detail names the
    /// offending vertex or pair.
    struct Verdict
    {
        bool ok = true;
        std::string reason;
        std::string detail;

        explicit operator bool() const { return ok; }

        static auto pass() -> Verdict { return Verdict{}; }
        static auto fail(std::string reason, std::string detail) -> Verdict { return Verdict{ false, std::move(reason), std::move(detail) }; }
    };

    /// Re-checks every invariant of the certificate against the coloring from
    /// scratch. Deliberately shares no code with the constructing engines.
    auto verify_certificate(const Certificate & cert, const Coloring & c) -> Verdict;

    /// The shrub conditions that do not involve a coloring: Y-goodness,
    /// injectivity and prefix order in both directions (only strict
    /// containment along prefixes for a weak shrub). Works for labels up to
    /// 31, beyond the size of any materialized lattice.
    auto verify_shrub_structure(Mask y_part, const std::vector<OrderedSubset> & nodes, const std::vector<Mask> & images,
            bool weak = false) -> Verdict;

    /// Largest shrub alphabet the verifier accepts (it checks all node pairs).
    inline constexpr unsigned max_verified_shrub_alphabet = 7;
}
