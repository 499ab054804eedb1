#include <posram/shrub.hh>
#include <posram/errors.hh>
#include <posram/factorial_tree.hh>
#include <posram/poset.hh>
#include <posram/rng.hh>
#include <posram/verify.hh>

#include <algorithm>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

using std::size_t;
using std::string;
using std::vector;

namespace posram
{
    using std::to_string;

    auto min_block_size(unsigned k) -> unsigned
    {
        if (k < 1)
            throw PreconditionError{ "min_block_size needs k >= 1" };
        unsigned l = 0;
        while (binomial(l, l / 2) < k)
            ++l;
        return l;
    }

    auto canonical_shrub(GroundSet host, Mask y, Mask a) -> ShrubCert
    {
        return canonical_shrub(host, y, a, min_block_size(popcount(y)));
    }

    auto canonical_shrub_images(Mask y, Mask a, unsigned block_size) -> vector<Mask>
    {
        if ((y & a) != 0)
            throw PreconditionError{ "canonical_shrub: A meets Y" };
        auto k = popcount(y);
        if (k < 1)
            throw PreconditionError{ "canonical_shrub needs a non-empty Y" };
        if (block_size < min_block_size(k))
            throw PreconditionError{ "canonical_shrub: block size " + to_string(block_size) + " below min_block_size("
                + to_string(k) + ") = " + to_string(min_block_size(k)) };
        if (popcount(a) < k * block_size)
            throw PreconditionError{ "canonical_shrub: |A| = " + to_string(popcount(a)) + " but k * l = " + to_string(k * block_size)
                + " block elements are needed" };

        auto labels = elements_of(y);
        auto members = elements_of(a);
        vector<Mask> blocks(k, 0);
        for (unsigned i = 0 ; i < k ; ++i)
            for (unsigned t = 0 ; t < block_size ; ++t)
                blocks[i] |= Mask{1} << members[i * block_size + t];

        auto halves = middle_layer(block_size, k);
        auto piece = [&] (unsigned i, unsigned j) {
            PartIndex block{ blocks[i] };
            return block.expand(halves[j]);
        };

        vector<unsigned> position(32, 0);
        for (unsigned i = 0 ; i < k ; ++i)
            position[labels[i]] = i;

        FactorialTree tree{ y };
        vector<Mask> images(tree.size(), 0);
        for (size_t n = 0 ; n < tree.size() ; ++n) {
            auto & s = tree.node(n);
            Mask v = underlying(s);
            for (size_t t = 0 ; t < s.size() ; ++t) {
                auto first = position[s[0]];
                v |= (t == 0) ? blocks[first] : piece((first + t) % k, position[s[t]]);
            }
            images[n] = v;
        }
        return images;
    }

    auto canonical_shrub(GroundSet host, Mask y, Mask a, unsigned block_size) -> ShrubCert
    {
        if (! host.contains(y) || ! host.contains(a))
            throw PreconditionError{ "canonical_shrub: Y or A leaves the ground set" };
        auto images = canonical_shrub_images(y, a, block_size);
        ShrubCert result{ host, y, FactorialTree{ y }.nodes(), std::move(images), false, std::nullopt };
        auto verdict = verify_certificate(result, Coloring{ host, Color::red });
        if (! verdict)
            throw InternalError{ "canonical_shrub produced an invalid shrub: " + verdict.reason + " (" + verdict.detail + ")" };
        return result;
    }

    auto framework_shrub(GroundSet host, const Framework & f, unsigned block_size) -> ShrubCert
    {
        auto shrub = canonical_shrub(host, f.y, f.a, block_size);
        for (auto & v : shrub.images)
            v |= f.x;
        shrub.color = Color::blue;
        return shrub;
    }

    namespace
    {
        class Repair
        {
            private:
                Mask _full;
                vector<Framework> & _f;
                std::mt19937_64 & _rng;

            public:
                Repair(Mask full, vector<Framework> & f, std::mt19937_64 & rng) :
                    _full(full),
                    _f(f),
                    _rng(rng)
                {
                }

                static auto separated(Mask x1, Mask z2, Mask x2) -> bool
                {
                    return (x1 & z2 & ~x2) != 0;
                }

                auto cost(size_t t, Mask x, Mask a) const -> size_t
                {
                    Mask z = _full & ~_f[t].y & ~a;
                    size_t c = 0;
                    for (size_t j = 0 ; j < _f.size() ; ++j) {
                        if (j == t)
                            continue;
                        c += ! separated(x, _f[j].z, _f[j].x);
                        c += ! separated(_f[j].x, z, x);
                    }
                    return c;
                }

                // one min-conflicts move: flip a Z element in or out of X, or
                // swap an A element with a Z element; sometimes a random move
                auto move(size_t t) -> void
                {
                    auto & f = _f[t];
                    vector<std::pair<Mask, Mask>> candidates;
                    for (auto e : elements_of(f.z))
                        candidates.emplace_back(f.x ^ (Mask{1} << e), f.a);
                    for (auto out : elements_of(f.a))
                        for (auto in : elements_of(f.z)) {
                            Mask a = (f.a & ~(Mask{1} << out)) | (Mask{1} << in);
                            candidates.emplace_back(f.x & ~a, a);
                        }

                    std::pair<Mask, Mask> pick;
                    if (uniform_below(_rng, 10) < 2)
                        pick = candidates[uniform_below(_rng, candidates.size())];
                    else {
                        size_t best = std::numeric_limits<size_t>::max();
                        vector<std::pair<Mask, Mask>> tied;
                        for (auto & c : candidates) {
                            auto v = cost(t, c.first, c.second);
                            if (v < best) {
                                best = v;
                                tied.assign(1, c);
                            }
                            else if (v == best)
                                tied.push_back(c);
                        }
                        pick = tied[uniform_below(_rng, tied.size())];
                    }

                    f.x = pick.first;
                    f.a = pick.second;
                    f.z = _full & ~f.y & ~f.a;
                }
        };
    }

    auto lower_bound_coloring(const LowerBoundParams & params) -> LowerBoundConstruction
    {
        GroundSet host{ params.ground_size };
        auto n = params.ground_size, k = params.k, l = params.block_size;
        if (k < 1 || k >= n)
            throw PreconditionError{ "lower_bound_coloring needs 1 <= k < N" };
        if (k > max_tree_alphabet)
            throw CapExceeded{ "lower_bound_coloring: k above " + to_string(max_tree_alphabet) };
        if (l < min_block_size(k))
            throw PreconditionError{ "block size " + to_string(l) + " below min_block_size(" + to_string(k) + ") = "
                + to_string(min_block_size(k)) };
        if (n <= k + k * l)
            throw PreconditionError{ "parameters infeasible: N = k + k * blocksize leaves Z empty" };
        if (params.budget < 1)
            throw PreconditionError{ "lower_bound_coloring needs a budget of at least one pass" };
        if (binomial(n, k) > max_frameworks)
            throw CapExceeded{ "C(N, k) = " + to_string(binomial(n, k)) + " frameworks exceed the cap of " + to_string(max_frameworks) };

        auto ys = masks_of_weight(n, k);
        Mask full = host.full();
        vector<Framework> frameworks;
        for (size_t i = 0 ; i < ys.size() ; ++i) {
            std::mt19937_64 rng{ derive_seed(params.seed, i) };
            auto rest = elements_of(full & ~ys[i]);
            Mask a = 0;
            for (unsigned t = 0 ; t < k * l ; ++t) {
                auto j = t + uniform_below(rng, rest.size() - t);
                std::swap(rest[t], rest[j]);
                a |= Mask{1} << rest[t];
            }
            Mask z = full & ~ys[i] & ~a;
            Mask x = 0;
            for (auto e : elements_of(z))
                if (coin(rng))
                    x |= Mask{1} << e;
            frameworks.push_back(Framework{ ys[i], a, z, x });
        }

        std::mt19937_64 repair_rng{ derive_seed(params.seed, ~std::uint64_t{0}) };
        Repair repair{ full, frameworks, repair_rng };
        for (unsigned pass = 1 ; pass <= params.budget ; ++pass) {
            size_t failures = 0;
            for (size_t i = 0 ; i < frameworks.size() ; ++i)
                for (size_t j = 0 ; j < frameworks.size() ; ++j)
                    if (i != j && ! Repair::separated(frameworks[i].x, frameworks[j].z, frameworks[j].x)) {
                        ++failures;
                        repair.move(coin(repair_rng) ? i : j);
                    }
            if (failures != 0)
                continue;

            LowerBoundConstruction result{ Coloring{ host, Color::red }, FrameworkBundle{ host, k, l, frameworks }, {}, pass };
            for (auto & f : frameworks) {
                result.shrubs.push_back(framework_shrub(host, f, l));
                for (auto v : result.shrubs.back().images)
                    result.coloring.assign(v, Color::blue);
            }
            return result;
        }

        for (auto & f1 : frameworks)
            for (auto & f2 : frameworks)
                if (f1.y != f2.y && ! Repair::separated(f1.x, f2.z, f2.x))
                    throw BudgetExhausted{ "budget of " + to_string(params.budget) + " passes exhausted; Y = " + mask_to_string(f1.y)
                        + " and Y = " + mask_to_string(f2.y) + " are still not separated" };
        throw InternalError{ "lower_bound_coloring: budget exhausted without a failing pair" };
    }

    auto verify_lower_bound(const Coloring & c, std::span<const ShrubCert> shrubs, unsigned n, unsigned k) -> LowerBoundReport
    {
        auto size = c.ground().size();
        if (n + k != size)
            throw PreconditionError{ "verify_lower_bound needs n + k = N" };

        LowerBoundReport report;
        auto fail = [&] (string why) {
            report.ok = false;
            report.failure = std::move(why);
            report.lines.push_back("FAIL " + report.failure);
            return report;
        };

        for (auto & s : shrubs) {
            if (popcount(s.y_part) != k)
                return fail("(a) shrub for Y = " + mask_to_string(s.y_part) + " has the wrong Y size");
            auto blue = s;
            blue.color = Color::blue;
            blue.weak = false;
            auto verdict = verify_certificate(blue, c);
            if (! verdict)
                return fail("(a) shrub for Y = " + mask_to_string(s.y_part) + ": " + verdict.reason + ", " + verdict.detail);
        }
        report.lines.push_back("(a) " + to_string(shrubs.size()) + " shrubs valid and blue");

        for (size_t i = 0 ; i < shrubs.size() ; ++i)
            for (size_t j = i + 1 ; j < shrubs.size() ; ++j)
                for (auto u : shrubs[i].images)
                    for (auto w : shrubs[j].images)
                        if (comparable(u, w))
                            return fail("(b) shrubs for Y = " + mask_to_string(shrubs[i].y_part) + " and Y = " + mask_to_string(shrubs[j].y_part)
                                + " share the comparable pair " + mask_to_string(u) + ", " + mask_to_string(w));
        report.lines.push_back("(b) shrubs pairwise independent");

        if (auto t = find_monochromatic_lambda(c, Color::blue))
            return fail("(c) blue lambda " + mask_to_string((*t)[0]) + ", " + mask_to_string((*t)[1]) + " below " + mask_to_string((*t)[2]));
        auto blue = c.vertices_of(Color::blue);
        if (blue.size() <= 4096) {
            auto structure = classify_structure(induced_poset(blue));
            if (structure != StructureClass::independent_up_trees && structure != StructureClass::independent_chains)
                return fail("(c) blue class classified as " + to_string(structure));
            report.lines.push_back("(c) blue class of " + to_string(blue.size()) + " vertices: " + to_string(structure));
        }
        else
            report.lines.push_back("(c) blue class of " + to_string(blue.size()) + " vertices: lambda-free");

        std::set<Mask> covered;
        for (auto & s : shrubs)
            covered.insert(s.y_part);
        for (auto y : masks_of_weight(size, k))
            if (! covered.count(y))
                return fail("(d) no shrub for Y = " + mask_to_string(y));
        report.lines.push_back("(d) every one of the " + to_string(covered.size()) + " choices of Y has a blue shrub");

        if (size <= 4) {
            if (auto copy = contains_pattern(c, standard_poset(PatternKind::cube(n)), Color::red))
                return fail("(e) red Q_" + to_string(n) + " found directly");
            report.lines.push_back("(e) exhaustive search finds no red Q_" + to_string(n));
        }

        report.lines.push_back("certified: R(Lambda, Q_" + to_string(n) + ") >= " + to_string(size + 1));
        return report;
    }

    auto write_framework_bundle(std::ostream & out, const FrameworkBundle & b) -> void
    {
        auto n = b.host.size();
        out << "FRAMEWORKS N=" << n << " k=" << b.k << " block=" << b.block_size << '\n';
        for (auto & f : b.frameworks)
            out << mask_to_hex(f.y, n) << ' ' << mask_to_hex(f.a, n) << ' ' << mask_to_hex(f.x, n) << '\n';
    }

    auto read_framework_bundle(std::istream & in) -> FrameworkBundle
    {
        string line;
        if (! std::getline(in, line))
            throw FormatError{ "framework bundle: empty input" };
        unsigned n, k, l;
        char trailing;
        if (std::sscanf(line.c_str(), "FRAMEWORKS N=%u k=%u block=%u %c", &n, &k, &l, &trailing) != 3)
            throw FormatError{ "framework bundle: bad header '" + line + "'" };
        if (n < 1 || n > max_ground_size)
            throw FormatError{ "framework bundle: dimension out of range" };

        FrameworkBundle bundle{ GroundSet{ n }, k, l, {} };
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == string::npos)
                continue;
            std::istringstream fields{ line };
            string y, a, x, extra;
            if (! (fields >> y >> a >> x) || (fields >> extra))
                throw FormatError{ "framework bundle: bad line '" + line + "'" };
            Framework f{ mask_from_hex(y), mask_from_hex(a), 0, mask_from_hex(x) };
            if (! bundle.host.contains(f.y | f.a | f.x))
                throw FormatError{ "framework bundle: subset outside the ground set in '" + line + "'" };
            f.z = bundle.host.full() & ~f.y & ~f.a;
            bundle.frameworks.push_back(f);
        }
        return bundle;
    }
}
