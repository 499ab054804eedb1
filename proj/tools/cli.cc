#include "cli.hh"

#include <posram/cert_io.hh>
#include <posram/coloring.hh>
#include <posram/duality.hh>
#include <posram/embedding.hh>
#include <posram/errors.hh>
#include <posram/poset.hh>
#include <posram/search.hh>
#include <posram/shrub.hh>
#include <posram/verify.hh>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

using std::optional;
using std::string;
using std::vector;

namespace posram::cli
{
    namespace
    {
        class Usage : public Error
        {
            public:
                using Error::Error;
        };

        auto load_pattern(const string & spec) -> FinitePoset
        {
            if (auto kind = parse_pattern_name(spec))
                return standard_poset(*kind);
            std::ifstream in{ spec };
            if (! in)
                throw Usage{ "'" + spec + "' is neither a pattern name nor a readable poset file" };
            return read_poset(in);
        }

        auto split_numbers(const string & text) -> vector<unsigned>
        {
            vector<unsigned> result;
            std::istringstream in{ text };
            for (string part ; std::getline(in, part, ',') ; ) {
                if (part.empty() || part.find_first_not_of("0123456789") != string::npos || part.size() > 9)
                    throw Usage{ "bad number list '" + text + "'" };
                result.push_back(static_cast<unsigned>(std::stoul(part)));
            }
            return result;
        }

        auto parse_split(const string & text, const Coloring & c) -> Partition
        {
            auto parts = split_numbers(text);
            if (parts.size() != 2)
                throw Usage{ "--split takes n,k" };
            if (parts[0] + parts[1] != c.ground().size())
                throw Usage{ "--split " + text + " does not add up to the dimension " + std::to_string(c.ground().size()) };
            return Partition::leading(c.ground(), parts[0]);
        }

        auto emit(const Certificate & cert, const string & path, std::ostream & out) -> void
        {
            if (path.empty())
                write_certificate(out, cert);
            else
                save_certificate(path, cert);
        }

        auto describe(const vector<Mask> & vs) -> string
        {
            string result;
            for (auto v : vs)
                result += (result.empty() ? "" : " ") + mask_to_string(v);
            return result;
        }

        struct Options
        {
            string coloring, pattern, color = "blue", cert, split, ordering, prefix = "lowerbound";
            string blue = "Q1", red = "Q1", certificate, out_path;
            unsigned n = 0, k = 0, block = 0, budget = 100, nmax = 3, jobs = 1, ground = 0;
            std::uint64_t seed = 0;
            double p = 0.5;
            bool have_block = false, have_seed = false;
        };
    }

    auto run(const vector<string> & args, std::ostream & out, std::ostream & err) -> int
    {
        CLI::App app{ "posram: poset Ramsey toolkit for Boolean lattices" };
        app.require_subcommand(1);
        Options o;

        auto verify = app.add_subcommand("verify", "search one color class of a coloring for a pattern");
        verify->add_option("coloring", o.coloring, "PRC1 coloring file")->required();
        verify->add_option("--pattern", o.pattern, "pattern name or poset file")->required();
        verify->add_option("--color", o.color, "red or blue");
        verify->add_option("--cert", o.cert, "write the copy found here");

        auto shift = app.add_subcommand("shift", "red X-good cube or blue chain along an ordering of Y");
        shift->add_option("--coloring", o.coloring)->required();
        shift->add_option("--split", o.split, "n,k with X the first n elements")->required();
        shift->add_option("--ordering", o.ordering, "comma-separated Y labels (default increasing)");
        shift->add_option("--cert", o.cert);

        auto duality_cmd = app.add_subcommand("duality", "red X-good cube or blue Y-shrub");
        duality_cmd->add_option("--coloring", o.coloring)->required();
        duality_cmd->add_option("--split", o.split)->required();
        duality_cmd->add_option("--cert", o.cert);

        auto scan = app.add_subcommand("scan", "duality over every k-subset Y");
        scan->add_option("--coloring", o.coloring)->required();
        scan->add_option("--n", o.n)->required();
        scan->add_option("--k", o.k)->required();
        scan->add_option("--jobs", o.jobs);
        scan->add_option("--cert", o.cert, "certificate file prefix");

        auto shrub = app.add_subcommand("shrub", "canonical shrubs");
        shrub->require_subcommand(1);
        auto shrub_build = shrub->add_subcommand("build", "canonical shrub on Y = the top k labels, A = the rest");
        shrub_build->add_option("--k", o.k)->required();
        shrub_build->add_option("--blocksize", o.block);
        shrub_build->add_option("--cert", o.cert);

        auto lower = app.add_subcommand("lowerbound", "random frameworks with repair, then verification");
        lower->add_option("--N", o.ground)->required();
        lower->add_option("--k", o.k)->required();
        lower->add_option("--seed", o.seed)->required();
        lower->add_option("--budget", o.budget);
        lower->add_option("--blocksize", o.block);
        lower->add_option("--out", o.prefix, "output file prefix");

        auto ramsey = app.add_subcommand("ramsey", "exact small poset Ramsey numbers");
        ramsey->add_option("--blue", o.blue)->required();
        ramsey->add_option("--red", o.red)->required();
        ramsey->add_option("--nmax", o.nmax);
        ramsey->add_option("--jobs", o.jobs);
        ramsey->add_option("--witness", o.prefix, "write the largest good coloring here");

        auto check = app.add_subcommand("check", "verify a certificate against a coloring");
        check->add_option("certificate", o.certificate)->required();
        check->add_option("coloring", o.coloring)->required();

        auto random = app.add_subcommand("random", "seeded random coloring");
        random->add_option("--N", o.ground)->required();
        random->add_option("--seed", o.seed)->required();
        random->add_option("--p", o.p, "probability of blue");
        random->add_option("--out", o.out_path)->required();

        try {
            vector<string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }
        catch (const CLI::CallForHelp &) {
            out << app.help();
            return 0;
        }
        catch (const CLI::ParseError & e) {
            err << "usage error: " << e.what() << '\n';
            return 2;
        }
        o.have_block = (shrub_build->count("--blocksize") + lower->count("--blocksize")) != 0;

        try {
            if (*verify) {
                auto c = load_coloring(o.coloring);
                auto color = parse_color(o.color);
                if (! color)
                    throw Usage{ "--color takes red or blue" };
                auto copy = contains_pattern(c, load_pattern(o.pattern), *color);
                if (! copy) {
                    out << "absent: no " << o.color << " copy of " << o.pattern << '\n';
                    return 1;
                }
                out << "found: " << o.color << " copy of " << o.pattern << ": " << describe(copy->images) << '\n';
                if (! o.cert.empty())
                    save_certificate(o.cert, PatternCopyCert{ *copy, *color });
                return 0;
            }

            if (*shift) {
                auto c = load_coloring(o.coloring);
                auto p = parse_split(o.split, c);
                auto ordering = o.ordering.empty() ? elements_of(p.y_part()) : split_numbers(o.ordering);
                auto result = shift_search(c, p, ordering);
                if (auto copy = std::get_if<XGoodCopyCert>(&result)) {
                    out << "red X-good copy of Q_" << p.x_size() << '\n';
                    emit(*copy, o.cert, out);
                }
                else {
                    auto & chain = std::get<BlueChainCert>(result);
                    out << "blue chain: " << describe(chain.vertices) << '\n';
                    emit(chain, o.cert, out);
                }
                return 0;
            }

            if (*duality_cmd) {
                auto c = load_coloring(o.coloring);
                auto p = parse_split(o.split, c);
                auto result = duality(c, p);
                if (auto red = std::get_if<RedBranch>(&result)) {
                    out << "red X-good copy of Q_" << p.x_size() << '\n';
                    emit(red->copy, o.cert, out);
                }
                else {
                    auto & blue = std::get<BlueBranch>(result);
                    out << "blue Y-shrub with " << blue.shrub.images.size() << " vertices\n";
                    emit(blue.shrub, o.cert, out);
                }
                return 0;
            }

            if (*scan) {
                auto c = load_coloring(o.coloring);
                auto result = full_duality_scan(c, o.n, o.k, o.jobs);
                if (auto red = std::get_if<ScanRedCube>(&result)) {
                    out << "red Q_" << o.n << " for Y = " << mask_to_string(red->y) << '\n';
                    if (! o.cert.empty())
                        save_certificate(o.cert + ".cert", red->copy);
                    return 0;
                }
                auto & shrubs = std::get<ScanShrubs>(result).shrubs;
                out << "blue shrubs for all " << shrubs.size() << " choices of Y: no red Q_" << o.n << '\n';
                if (! o.cert.empty())
                    for (auto & [y, s] : shrubs)
                        save_certificate(o.cert + "_" + mask_to_hex(y, c.ground().size()) + ".cert", s);
                return 0;
            }

            if (*shrub_build) {
                if (o.k < 1)
                    throw Usage{ "--k must be at least 1" };
                auto block = o.have_block ? o.block : min_block_size(o.k);
                auto size = o.k + o.k * block;
                if (size > max_ground_size)
                    throw Usage{ "ground set of size " + std::to_string(size) + " is too large" };
                GroundSet host{ size };
                Mask a = low_mask(o.k * block);
                Mask y = host.full() & ~a;
                auto s = canonical_shrub(host, y, a, block);
                out << "canonical shrub: N = " << size << ", " << s.images.size() << " nodes\n";
                emit(s, o.cert, out);
                return 0;
            }

            if (*lower) {
                auto block = o.have_block ? o.block : min_block_size(o.k);
                auto built = lower_bound_coloring(LowerBoundParams{ o.ground, o.k, block, o.seed, o.budget });
                save_coloring(o.prefix + ".prc", built.coloring);
                save_certificate(o.prefix + ".cert", built.bundle);
                {
                    std::ofstream bundle{ o.prefix + ".frameworks", std::ios::binary };
                    write_framework_bundle(bundle, built.bundle);
                }
                out << "repair finished after " << built.passes << " passes\n";
                auto report = verify_lower_bound(built.coloring, built.shrubs, o.ground - o.k, o.k);
                for (auto & line : report.lines)
                    out << line << '\n';
                return report.ok ? 0 : 1;
            }

            if (*ramsey) {
                auto result = ramsey_number(load_pattern(o.blue), load_pattern(o.red), o.nmax, o.jobs);
                for (auto & [n, w] : result.witnesses)
                    out << "N = " << n << (w ? "  good coloring found" : "  no good coloring") << '\n';
                if (result.value)
                    out << "R = " << *result.value << '\n';
                else
                    out << "R >= " << result.lower_bound << '\n';
                out << "R " << o.blue << ' ' << o.red << " = " << (result.value ? "" : ">=") << result.lower_bound << '\n';
                if (ramsey->count("--witness"))
                    for (auto i = result.witnesses.rbegin() ; i != result.witnesses.rend() ; ++i)
                        if (i->second) {
                            save_coloring(o.prefix, *i->second);
                            break;
                        }
                return result.value ? 0 : 1;
            }

            if (*check) {
                auto c = load_coloring(o.coloring);
                optional<Certificate> loaded;
                try {
                    loaded = load_certificate(o.certificate);
                }
                catch (const FormatError & e) {
                    out << "FAIL malformed: " << e.what() << '\n';
                    return 1;
                }
                auto & cert = *loaded;
                auto verdict = verify_certificate(cert, c);
                if (verdict) {
                    out << "PASS " << certificate_type(cert) << '\n';
                    return 0;
                }
                out << "FAIL " << verdict.reason << ": " << verdict.detail << '\n';
                return 1;
            }

            if (*random) {
                auto c = build(GroundSet{ o.ground }, source::Random{ o.seed, o.p });
                save_coloring(o.out_path, c);
                out << "wrote " << o.out_path << ": " << c.count(Color::blue) << " blue, " << c.count(Color::red) << " red\n";
                return 0;
            }
        }
        catch (const BudgetExhausted & e) {
            out << "FAIL budget-exhausted: " << e.what() << '\n';
            return 1;
        }
        catch (const std::exception & e) {
            err << "error: " << e.what() << '\n';
            return 2;
        }
        return 2;
    }
}
