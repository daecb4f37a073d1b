#include "genhilbert/cli.hpp"

#include "genhilbert/certify.hpp"
#include "genhilbert/io.hpp"
#include "genhilbert/kernel.hpp"
#include "genhilbert/measure.hpp"
#include "genhilbert/norm.hpp"
#include "genhilbert/operator.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <iostream>
#include <optional>

namespace genhilbert::cli
{

namespace
{

/// Usage or input problems: exit code 2.
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct Options
{
    std::string measure_path;
    std::string sequence_path;
    std::string output; // empty: the subcommand's default
    std::string method = "truncated";
    std::string p_text;
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    Index size      = 0;
    Index rows      = 0;
    Index terms     = 0;
    Index trials    = 100;
    std::uint64_t seed = 0;
    double tol      = 1e-10;
    std::vector<double> eps;
    std::vector<Index> sizes;
    bool quiet = false;
};

Measure load_measure(const std::string &path)
{
    std::string text;
    try
    {
        text = read_file(path);
    }
    catch (const std::runtime_error &e)
    {
        throw UsageError(e.what());
    }
    try
    {
        return parse_measure(text);
    }
    catch (const MeasureError &e)
    {
        throw UsageError(std::string("invalid measure: ") + e.what());
    }
}

PExponent parse_p(const std::string &text)
{
    try
    {
        return PExponent::parse(text);
    }
    catch (const std::exception &e)
    {
        throw UsageError(e.what());
    }
}

std::string values_json(const Vector<double> &v)
{
    std::string out = "{\"values\":[";
    for (Index i = 0; i < v.size(); ++i)
    {
        if (i > 0)
        {
            out += ',';
        }
        out += format_real(v[i]);
    }
    return out + "]}";
}

int cmd_entry(const Options &o, std::ostream &out)
{
    const auto mu = load_measure(o.measure_path);
    out << format_real(entry<double>(mu, o.n, o.k)) << '\n';
    return exit_ok;
}

int cmd_section(const Options &o, std::ostream &out)
{
    const auto mu      = load_measure(o.measure_path);
    const auto section = finite_section<double>(mu, o.size);
    if (o.output == "csv")
    {
        out << section_to_csv(section);
    }
    else
    {
        out << section_to_json(section) << '\n';
    }
    return exit_ok;
}

int cmd_apply(const Options &o, std::ostream &out)
{
    const auto mu = load_measure(o.measure_path);
    SequenceFile file;
    try
    {
        file = parse_sequence_csv(read_file(o.sequence_path));
    }
    catch (const std::exception &e)
    {
        throw UsageError(e.what());
    }
    SequenceVector a = file.sequence;
    if (o.terms > 0 && o.terms < a.size())
    {
        a = SequenceVector(Vector<double>(a.values.head(o.terms)), a.nonneg);
    }
    const Index rows = o.rows > 0 ? o.rows : std::max<Index>(a.size(), 1);

    Vector<double> d;
    if (o.method == "truncated")
    {
        d = apply_truncated(mu, a, rows).values;
    }
    else if (o.method == "quadrature")
    {
        d = apply_via_quadrature(mu, a, rows).values;
    }
    else
    {
        const auto scale = mu.lebesgue_scale();
        if (!scale)
        {
            throw std::domain_error(
                "the fast method needs a multiple of Lebesgue measure");
        }
        d = *scale * hankel_fast_apply(a.values, rows);
    }
    if (o.output == "json")
    {
        out << values_json(d) << '\n';
    }
    else
    {
        out << sequence_to_csv(d, file.p_header);
    }
    return exit_ok;
}

int cmd_norm(const Options &o, std::ostream &out)
{
    const auto mu  = load_measure(o.measure_path);
    const auto p   = parse_p(o.p_text);
    const auto val = norm_integral(mu, p);
    NormVerdict verdict;
    verdict.p = p;
    if (val.is_finite())
    {
        verdict.norm = val.value;
    }
    else
    {
        verdict.status = BoundStatus::Unbounded;
        verdict.reason = UnboundedReason::DivergentIntegral;
    }
    out << to_json(verdict) << '\n';
    return exit_ok;
}

int cmd_classify(const Options &o, std::ostream &out)
{
    const auto mu = load_measure(o.measure_path);
    out << to_json(classify_boundedness(mu, parse_p(o.p_text))) << '\n';
    return exit_ok;
}

int cmd_certify(const Options &o, std::ostream &out, std::ostream &err)
{
    const auto mu = load_measure(o.measure_path);
    const auto p  = parse_p(o.p_text);
    PowerIterationOptions opts;
    opts.tol        = o.tol;
    const auto t0   = std::chrono::steady_clock::now();
    const auto report = convergence_sweep(mu, p, o.eps, o.sizes, opts);
    if (!o.quiet)
    {
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        err << "certify: " << report.ratios.size() << " ratio cells, "
            << report.sigma_max_series.size() << " section norms in " << dt.count()
            << " s\n";
    }
    if (o.output == "csv")
    {
        out << ratios_csv(report) << '\n' << sigma_csv(report);
    }
    else
    {
        out << to_json(report) << '\n';
    }
    return exit_ok;
}

int cmd_hilbert_check(const Options &o, std::ostream &out)
{
    const auto p = parse_p(o.p_text);
    const auto result =
        hilbert_check(p, o.trials, o.seed, o.terms > 0 ? o.terms : 64);
    nlohmann::ordered_json doc;
    doc["p"]          = p.value();
    doc["constant"]   = classical_constant(p);
    doc["trials"]     = result.trials;
    doc["seed"]       = o.seed;
    doc["max_ratio"]  = result.max_ratio;
    doc["violations"] = result.violations;
    out << doc.dump() << '\n';
    return result.violations == 0 ? exit_ok : exit_domain_error;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Generalized Hilbert operators: entries, norms and certificates",
                 "genhilbert"};
    app.require_subcommand(1);
    Options o;

    auto add_output = [&](CLI::App *cmd, const std::string &fallback) {
        cmd->add_option("--output", o.output, "output format (default " + fallback + ")")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_flag("--quiet", o.quiet, "suppress progress on stderr");
    };
    auto add_measure = [&](CLI::App *cmd) {
        cmd->add_option("--measure", o.measure_path, "measure file (JSON)")->required();
    };
    auto add_p = [&](CLI::App *cmd) {
        cmd->add_option("--p", o.p_text, "exponent p >= 1 or 'inf'")->required();
    };

    auto *entry_cmd = app.add_subcommand("entry", "single matrix entry C_{n,k}");
    add_measure(entry_cmd);
    entry_cmd->add_option("--n", o.n, "row index")->required();
    entry_cmd->add_option("--k", o.k, "column index")->required();
    add_output(entry_cmd, "json");

    auto *section_cmd = app.add_subcommand("section", "dense N x N section");
    add_measure(section_cmd);
    section_cmd->add_option("--N", o.size, "section size")->required()->check(
        CLI::PositiveNumber);
    add_output(section_cmd, "json");

    auto *apply_cmd = app.add_subcommand("apply", "apply the operator to a sequence");
    add_measure(apply_cmd);
    apply_cmd->add_option("--sequence", o.sequence_path, "sequence CSV")->required();
    apply_cmd->add_option("--rows", o.rows, "number of output rows");
    apply_cmd->add_option("--terms", o.terms, "use only the first terms of the input");
    apply_cmd->add_option("--method", o.method, "truncated | quadrature | fast")
        ->check(CLI::IsMember({"truncated", "quadrature", "fast"}));
    add_output(apply_cmd, "csv");

    auto *norm_cmd = app.add_subcommand("norm", "closed-form norm integral N_p");
    add_measure(norm_cmd);
    add_p(norm_cmd);
    add_output(norm_cmd, "json");

    auto *classify_cmd =
        app.add_subcommand("classify", "boundedness verdict including endpoint atoms");
    add_measure(classify_cmd);
    add_p(classify_cmd);
    add_output(classify_cmd, "json");

    auto *certify_cmd =
        app.add_subcommand("certify", "extremal lower bounds and section norms");
    add_measure(certify_cmd);
    add_p(certify_cmd);
    certify_cmd->add_option("--eps", o.eps, "epsilon grid")->required()->delimiter(',');
    certify_cmd->add_option("--N", o.sizes, "size grid (K = N)")->required()->delimiter(
        ',');
    certify_cmd->add_option("--tol", o.tol, "power iteration tolerance");
    add_output(certify_cmd, "json");

    auto *check_cmd = app.add_subcommand(
        "hilbert-check", "random test of the classical Hilbert inequality");
    add_p(check_cmd);
    check_cmd->add_option("--trials", o.trials, "number of sequence pairs");
    check_cmd->add_option("--seed", o.seed, "SplitMix64 seed");
    check_cmd->add_option("--terms", o.terms, "maximum sequence length");
    add_output(check_cmd, "json");

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp &)
    {
        out << app.help();
        return exit_ok;
    }
    catch (const CLI::ParseError &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage_error;
    }

    if (o.output.empty())
    {
        o.output = apply_cmd->parsed() ? "csv" : "json";
    }

    try
    {
        if (entry_cmd->parsed())
            return cmd_entry(o, out);
        if (section_cmd->parsed())
            return cmd_section(o, out);
        if (apply_cmd->parsed())
            return cmd_apply(o, out);
        if (norm_cmd->parsed())
            return cmd_norm(o, out);
        if (classify_cmd->parsed())
            return cmd_classify(o, out);
        if (certify_cmd->parsed())
            return cmd_certify(o, out, err);
        if (check_cmd->parsed())
            return cmd_hilbert_check(o, out);
    }
    catch (const UsageError &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage_error;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_domain_error;
    }
    return exit_usage_error;
}

} // namespace genhilbert::cli
