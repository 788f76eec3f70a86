#include "cqs/cli.hpp"

#include "cqs/errors.hpp"
#include "cqs/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <ostream>

namespace cqs {

namespace {

std::int64_t parse_bound(const std::string& text, std::int64_t min) {
    Integer v = parse_integer(text);
    if (v < min) throw ParseError("bound must be at least " + std::to_string(min) + ", got " + text);
    if (v > std::numeric_limits<std::int64_t>::max()) throw ParseError("bound too large: " + text);
    return static_cast<std::int64_t>(v);
}

int cmd_convert(const std::string& input, const std::string& to, bool all, bool as_json, std::ostream& out) {
    const SingularityForm form = parse_form(input);
    const std::string canonical = format(canonical_class(form));
    std::vector<FormTag> targets;
    if (all || to.empty())
        targets = {FormTag::nq, FormTag::abc, FormTag::cone, FormTag::interval, FormTag::cf};
    else
        targets = {parse_form_tag(to)};

    if (as_json) {
        nlohmann::json j;
        for (FormTag t : targets) j[std::string(tag_name(t))] = format(convert(form, t));
        j["canonical_class"] = canonical;
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    for (FormTag t : targets) out << format(convert(form, t)) << '\n';
    out << "canonical class: " << canonical << '\n';
    return kExitOk;
}

int cmd_analyze(const std::string& input, const AnalyzeOptions& opts, bool as_json, bool as_csv, std::ostream& out) {
    const ReportDocument doc = analyze(input, opts);
    if (as_json)
        out << to_json(doc) << '\n';
    else if (as_csv)
        write_csv(out, doc);
    else
        write_text(out, doc);
    return kExitOk;
}

int cmd_cayley(const std::string& input, bool as_json, std::ostream& out) {
    const Singularity s = Singularity::from(parse_form(input));
    const CayleyFamily f = cayley_family(s.interval);
    if (as_json)
        out << cayley_to_json(f) << '\n';
    else
        write_cayley_text(out, f);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cyclic quotient surface singularities: representations, T^1 and its qG/V/W/VW subspaces", "cqs"};
    app.require_subcommand(1);

    std::string input;
    std::string to;
    std::string bound_text;
    bool all = false;
    bool as_json = false;
    bool as_csv = false;
    bool all_q = false;
    unsigned jobs = 1;
    std::string fault;
    AnalyzeOptions analyze_opts;

    CLI::App* convert = app.add_subcommand("convert", "Convert between the five descriptions");
    convert->add_option("form", input, "e.g. nq:20/11, abc:5,4,3, cone:(1,0),(-11,20), interval:-2/5,2/5, cf:3,2,2,2,3")
        ->required();
    convert->add_option("--to", to, "Target description: nq, abc, cone, interval, cf");
    convert->add_flag("--all", all, "Print all five descriptions");
    convert->add_flag("--json", as_json, "JSON output");

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "Full report: Hilbert basis, equations, graded T^1");
    analyze_cmd->add_option("form", input, "Singularity in any description")->required();
    auto* json_flag = analyze_cmd->add_flag("--json", as_json, "JSON output");
    analyze_cmd->add_flag("--csv", as_csv, "Per-degree CSV output")->excludes(json_flag);
    analyze_cmd->add_flag("--allow-degenerate", analyze_opts.allow_degenerate,
                          "Report A_{n-1} singularities without the deformation data");
    analyze_cmd->add_flag("--cayley", analyze_opts.cayley, "Include the Cayley family");

    CLI::App* scan = app.add_subcommand("scan", "CSV of totals for all classes with n <= n_max");
    scan->add_option("n_max", bound_text, "Largest n")->required();
    scan->add_flag("--all-q", all_q, "Keep both q and q' of each isomorphism class");
    scan->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);

    CLI::App* verify_cmd = app.add_subcommand("verify", "Check closed forms against lattice oracles for n <= n_max");
    verify_cmd->add_option("n_max", bound_text, "Largest n")->required();
    verify_cmd->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--inject-fault", fault, "Corrupt a closed form (self-test)")->group("");

    CLI::App* cayley = app.add_subcommand("cayley", "Cayley cone of the qG family over affine d-space");
    cayley->add_option("form", input, "Singularity in any description")->required();
    cayley->add_flag("--json", as_json, "JSON output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitParse;
    }

    try {
        if (convert->parsed()) return cmd_convert(input, to, all, as_json, out);
        if (analyze_cmd->parsed()) return cmd_analyze(input, analyze_opts, as_json, as_csv, out);
        if (cayley->parsed()) return cmd_cayley(input, as_json, out);
        if (scan->parsed()) {
            write_scan(out, parse_bound(bound_text, 2), {all_q, jobs});
            return kExitOk;
        }
        if (verify_cmd->parsed()) {
            VerifyOptions opts{jobs, std::nullopt};
            if (!fault.empty()) {
                if (fault != "vw-bound" && fault != "qg-bound") throw ParseError("unknown fault '" + fault + "'");
                opts.inject_fault = fault;
            }
            const VerifySummary s = verify(parse_bound(bound_text, 2), opts);
            write_verify(out, s);
            return s.ok() ? kExitOk : kExitVerifyFailed;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const OracleBoundExceeded& e) {
        err << "bound error: " << e.what() << '\n';
        return kExitParse;
    } catch (const DegenerateClass& e) {
        err << "degenerate class: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const std::invalid_argument& e) {
        err << "invalid singularity: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitVerifyFailed;
    }
    return kExitParse;
}

}  // namespace cqs
