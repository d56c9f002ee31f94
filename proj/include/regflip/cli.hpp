#ifndef REGFLIP_CLI_HPP
#define REGFLIP_CLI_HPP

#include <cstddef>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "enumeration.hpp"
#include "flip.hpp"
#include "io.hpp"
#include "point_config.hpp"
#include "regularity.hpp"
#include "symmetry.hpp"
#include "triangulation.hpp"

namespace regflip::cli {

enum ExitCode : int { ok = 0, usage = 1, parse = 2, semantic = 3, resource = 4 };

struct EnumerateOptions {
    std::string input;
    SearchMode mode = SearchMode::regular_only;
    bool print = false;
    bool stats = false;
    bool orbits = false;
    bool baseline = false;
    std::size_t flip_cache = 10000;
    std::size_t node_budget = 0;
};

/** Raised by the commands for semantic errors that are not exceptions elsewhere. */
class SemanticError : public std::runtime_error {
public:
    explicit SemanticError(const std::string& what) : std::runtime_error(what) {}
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::ios_base::failure("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct LoadedInput {
    PointConfiguration config;
    std::optional<SymmetryGroup> group;
};

inline LoadedInput load_input(const std::string& path) {
    auto doc = parse_input(read_file(path));
    PointConfiguration config(std::move(doc.points));
    std::optional<SymmetryGroup> group;
    if (doc.has_symmetry)
        group = expand_group(config, doc.symmetry);
    return {std::move(config), std::move(group)};
}

inline Triangulation load_triangulation(const PointConfiguration& config, const std::string& path) {
    auto t = parse_triangulation(read_file(path));
    auto report = validate(config, t);
    if (!report)
        throw SemanticError("invalid triangulation: " + report.message);
    return t;
}

inline void print_stats(std::ostream& out, const SearchStats& s) {
    out << "nodes: " << s.nodes << '\n'
        << "flips_evaluated: " << s.flips_evaluated << '\n'
        << "flip_list_requests: " << s.flip_list_requests << '\n'
        << "cache_hits: " << s.cache_hits << '\n'
        << "cache_misses: " << s.cache_misses << '\n'
        << "candidates: " << s.screening.candidates << '\n'
        << "reductions_lone_sign: " << s.screening.lone_sign << '\n'
        << "reductions_pair: " << s.screening.pair << '\n'
        << "reductions_one_vs_many: " << s.screening.one_vs_many << '\n'
        << "reductions_one_sided: " << s.screening.one_sided << '\n'
        << "reductions_targeted: " << s.screening.targeted << '\n'
        << "screened_rays: " << s.screening.screened << '\n'
        << "sole_generator: " << s.screening.sole << '\n'
        << "direct_decisions: " << s.screening.direct << '\n'
        << "scalar_tests: " << s.screening.scalar_tests << '\n'
        << "lps_solved: " << s.screening.lps_solved << '\n';
}

/// Runs `body`, mapping library exceptions to exit codes with a message on `err`.
template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return parse;
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << '\n';
        return resource;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return semantic;
    } catch (const SymmetryError& e) {
        err << "symmetry error: " << e.what() << '\n';
        return semantic;
    } catch (const SemanticError& e) {
        err << e.what() << '\n';
        return semantic;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
}

inline int enumerate(const EnumerateOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        auto in = load_input(opt.input);
        const bool count_orbits = opt.orbits && in.group.has_value();
        if (opt.orbits && !in.group)
            err << "note: --orbits ignored, input has no symmetry\n";

        SearchOptions so;
        so.mode = opt.mode;
        so.flip_cache = opt.flip_cache;
        so.node_budget = opt.node_budget;

        std::size_t count = 0;
        std::size_t canonical = 0;
        std::set<Triangulation> forms;
        // the regular triangulations form a union of orbits, so counting canonical
        // representatives needs no memory; other enumerations keep the forms
        const bool streaming = so.mode == SearchMode::regular_only;
        auto visit = [&](const Triangulation& t, const GkzVector& g) {
            ++count;
            if (so.node_budget && count > so.node_budget)
                throw ResourceError("enumeration exceeded " + std::to_string(so.node_budget) + " triangulations");
            if (opt.print)
                out << t.str() << ' ' << format_vector(g) << '\n';
            if (count_orbits) {
                if (streaming)
                    canonical += is_canonical(t, *in.group) ? 1 : 0;
                else
                    forms.insert(canonical_form(t, *in.group));
            }
        };

        SearchStats stats;
        if (opt.baseline) {
            for (const auto& n : baseline_dfs(in.config, so, &stats))
                visit(n.triangulation, n.gkz);
        } else {
            stats = reverse_search(in.config, so, [&](const Triangulation& t, const GkzVector& g, std::size_t) {
                        visit(t, g);
                    }).stats;
        }
        out << "triangulations: " << count << '\n';
        if (count_orbits)
            out << "orbits: " << (streaming ? canonical : forms.size()) << '\n';
        if (opt.stats)
            print_stats(out, stats);
        return static_cast<int>(ok);
    });
}

inline int regular(const std::string& input, const std::string& triangulation, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        auto in = load_input(input);
        auto t = load_triangulation(in.config, triangulation);
        auto v = is_regular(in.config, t);
        if (v.regular) {
            out << "regular\n" << "heights: " << format_vector(v.heights) << '\n';
        } else {
            out << "non-regular\n" << "certificate: " << format_vector(v.certificate) << '\n';
            for (const auto& row : v.rows)
                out << "row: " << format_vector(row) << '\n';
        }
        return static_cast<int>(ok);
    });
}

inline int flips(const std::string& input, const std::string& triangulation, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        auto in = load_input(input);
        auto t = load_triangulation(in.config, triangulation);
        auto list = find_flips(in.config, t);
        const bool source_regular = is_regular(in.config, t).regular;
        std::vector<bool> verdicts;
        if (source_regular)
            verdicts = regular_flips(list);
        out << "flips: " << list.size() << '\n';
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto& f = list[i];
            out << f.circuit_str() << " delta " << format_vector(f.delta) << " target " << apply_flip(t, f).str()
                << ' ' << (source_regular ? (verdicts[i] ? "regular" : "non-regular") : "unknown") << '\n';
        }
        return static_cast<int>(ok);
    });
}

} // namespace regflip::cli

#endif // REGFLIP_CLI_HPP
