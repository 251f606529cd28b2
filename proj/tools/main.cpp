#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cesaro/parse.hpp"
#include "cesaro/table_io.hpp"

namespace {

using namespace cesaro;

constexpr std::uint64_t kProbeSeed = 0x5eed5eed;

struct OutputTarget {
    std::string path;    // empty = stdout
    std::string format;  // "csv" or "json"

    void write(const std::string& body) const {
        if (path.empty()) {
            std::cout << body;
            return;
        }
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open output file: " + path);
        os << body;
    }
};

Cplx parse_complex(const std::string& text) {
    // a, bi, a+bi, a-bi with decimal/exponent reals
    std::size_t i = 0;
    auto read_real = [&](bool allow_sign) -> double {
        std::size_t start = i;
        if (allow_sign && i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
        while (i < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.'))
            ++i;
        if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
            ++i;
            if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        }
        return std::stod(text.substr(start, i - start));
    };
    double first = read_real(true);
    if (i < text.size() && text[i] == 'i' && i + 1 == text.size()) return {0.0, first};
    if (i == text.size()) return {first, 0.0};
    double second = read_real(true);
    if (i >= text.size() || text[i] != 'i' || i + 1 != text.size())
        throw std::runtime_error("malformed complex number: " + text);
    return {first, second};
}

std::vector<double> parse_numbers(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

GridOptions grid_from_opts(const std::vector<std::string>& kvs) {
    GridOptions g;
    for (const auto& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || !g.set(kv.substr(0, eq), kv.substr(eq + 1)))
            throw std::runtime_error("unknown grid option: " + kv);
    }
    return g;
}

std::vector<std::string> base_header(const std::string& command,
                                     const std::vector<std::pair<std::string, std::string>>& params,
                                     const GridOptions& opts) {
    std::vector<std::string> h{"command=" + command};
    for (const auto& [k, v] : params) h.push_back(k + "=" + v);
    h.push_back("grid " + opts.echo());
    std::ostringstream seed;
    seed << "probe_seed=0x" << std::hex << kProbeSeed;
    h.push_back(seed.str());
    return h;
}

std::vector<std::pair<std::string, std::string>> header_to_meta(
    const std::vector<std::string>& header) {
    std::vector<std::pair<std::string, std::string>> meta;
    for (const auto& line : header) {
        const auto eq = line.find('=');
        if (eq != std::string::npos)
            meta.emplace_back(line.substr(0, eq), line.substr(eq + 1));
        else
            meta.emplace_back("note", line);
    }
    return meta;
}

// {meta, rows} JSON with string meta values and uniform row objects.
std::string rows_json(const std::vector<std::string>& header,
                      const std::vector<std::string>& keys,
                      const std::vector<std::vector<std::string>>& rows,
                      const std::vector<bool>& quoted) {
    std::string s = "{\n  \"meta\": {";
    bool first = true;
    for (const auto& [k, v] : header_to_meta(header)) {
        if (!first) s += ",";
        first = false;
        s += "\n    \"" + k + "\": \"" + v + "\"";
    }
    s += "\n  },\n  \"rows\": [";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) s += ",";
        s += "\n    {";
        for (std::size_t j = 0; j < keys.size(); ++j) {
            if (j) s += ", ";
            s += "\"" + keys[j] + "\": ";
            s += quoted[j] ? "\"" + rows[i][j] + "\"" : rows[i][j];
        }
        s += "}";
    }
    s += "\n  ]\n}\n";
    return s;
}

int run_norm(const std::string& fexpr, double gamma, const GridOptions& opts,
             const OutputTarget& out) {
    const FunctionModel f = parse_expression(fexpr);
    const NormEstimate est = weighted_sup_norm(f, gamma, opts);
    const std::vector<ProfileRow> profile =
        boundary_profile(f, gamma, default_radii(opts.j_max), opts);

    auto header = base_header("norm", {{"f", fexpr}, {"gamma", fmt9(gamma)}}, opts);
    header.push_back("value=" + fmt9(est.value));
    header.push_back("argmax_re=" + fmt9(est.argmax_z.real()));
    header.push_back("argmax_im=" + fmt9(est.argmax_z.imag()));
    header.push_back("radial_resolution=" + std::to_string(est.radial_resolution));
    header.push_back("angular_resolution=" + std::to_string(est.angular_resolution));
    header.push_back(std::string("stable=") + (est.stable ? "1" : "0"));

    std::ostringstream body;
    if (out.format == "json")
        body << profile_json(profile, header_to_meta(header));
    else
        write_profile_csv(body, profile, header);
    out.write(body.str());

    bool unreliable = !est.stable;
    for (const auto& row : profile) unreliable = unreliable || !row.reliable;
    return unreliable ? 1 : 0;
}

int run_membership(const std::string& fexpr, double gamma, const GridOptions& opts,
                   const OutputTarget& out) {
    const FunctionModel f = parse_expression(fexpr);
    const MembershipPair growth = classify_membership(f, gamma, opts);
    const MembershipVerdict od_big = optimal_domain_membership(f, gamma, Space::kBig, opts);
    const MembershipVerdict od_little = optimal_domain_membership(f, gamma, Space::kLittle, opts);

    const auto header = base_header("membership", {{"f", fexpr}, {"gamma", fmt9(gamma)}}, opts);
    const std::vector<MembershipVerdict> verdicts{growth.big, growth.little, od_big, od_little};

    std::vector<std::vector<std::string>> rows;
    for (const auto& v : verdicts)
        rows.push_back({v.space.name(), verdict_name(v.verdict),
                        v.method == Method::kAnalytic ? "analytic" : "numeric",
                        fmt9(v.evidence.pole_exponent), std::to_string(v.evidence.log_power),
                        fmt9(v.evidence.slope), v.evidence.note});

    std::ostringstream body;
    if (out.format == "json") {
        body << rows_json(header, {"space", "verdict", "method", "exponent", "log_power", "slope", "note"},
                          rows, {true, true, true, false, false, false, true});
    } else {
        CsvWriter w(body);
        for (const auto& h : header) w.comment(h);
        w.columns({"space", "verdict", "method", "exponent", "log_power", "slope", "note"});
        for (auto r : rows) {
            r[0] = "\"" + r[0] + "\"";
            r[6] = "\"" + r[6] + "\"";
            w.row(r);
        }
    }
    out.write(body.str());

    for (const auto& v : verdicts)
        if (v.verdict == Verdict::kIndeterminate) return 1;
    return 0;
}

int run_apply(const std::string& fexpr, const std::string& op, unsigned n, std::size_t nmax,
              const GridOptions& opts, const OutputTarget& out) {
    const FunctionModel f = parse_expression(fexpr);
    OperatorPipeline pipe(f);
    if (op == "C")
        pipe = pipe.then(OperatorPipeline::ApplyC{});
    else if (op == "Cinv")
        pipe = pipe.then(OperatorPipeline::ApplyCInverse{});
    else if (op == "mean")
        pipe = pipe.then(OperatorPipeline::Mean{n});
    else if (op == "power")
        pipe = pipe.then(OperatorPipeline::Power{n});
    else
        throw std::runtime_error("unknown --op (use C, Cinv, mean, power): " + op);

    const std::vector<Cplx> coef = coefficients(pipe.realized(), nmax);
    const auto header = base_header("apply",
                                    {{"f", fexpr},
                                     {"op", op},
                                     {"n", std::to_string(n)},
                                     {"nmax", std::to_string(nmax)}},
                                    opts);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < coef.size(); ++k)
        rows.push_back({std::to_string(k), fmt9(coef[k].real()), fmt9(coef[k].imag())});

    std::ostringstream body;
    if (out.format == "json") {
        body << rows_json(header, {"n", "re", "im"}, rows, {false, false, false});
    } else {
        CsvWriter w(body);
        for (const auto& h : header) w.comment(h);
        w.columns({"n", "re", "im"});
        for (const auto& r : rows) w.row(r);
    }
    out.write(body.str());
    return 0;
}

int run_solve(const std::string& hexpr, const Cplx lambda, double gamma, std::size_t nmax,
              const GridOptions& opts, const OutputTarget& out) {
    const FunctionModel h = parse_expression(hexpr);
    const bool unit = lambda == Cplx(1.0);
    const FunctionModel f =
        unit ? solve_identity_minus_C(h) : solve_lambda_resolvent(h, lambda, nmax);

    // Residual of (lambda I - C) f = h over the emitted range.
    const std::vector<Cplx> fc = coefficients(f, nmax);
    const std::vector<Cplx> cf = coefficients(apply_cesaro(f), nmax);
    const std::vector<Cplx> hc = coefficients(h, nmax);
    double residual = 0.0;
    for (std::size_t k = 0; k <= nmax; ++k)
        residual = std::max(residual, std::abs(lambda * fc[k] - cf[k] - hc[k]));

    auto header = base_header("solve",
                              {{"h", hexpr},
                               {"lambda_re", fmt9(lambda.real())},
                               {"lambda_im", fmt9(lambda.imag())},
                               {"gamma", fmt9(gamma)},
                               {"nmax", std::to_string(nmax)}},
                              opts);
    header.push_back(std::string("method=") +
                     (unit ? "identity_minus_C_formula" : "forward_substitution"));
    header.push_back("residual_max=" + fmt9(residual));

    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k <= nmax; ++k)
        rows.push_back({std::to_string(k), fmt9(fc[k].real()), fmt9(fc[k].imag())});

    std::ostringstream body;
    if (out.format == "json") {
        body << rows_json(header, {"n", "re", "im"}, rows, {false, false, false});
    } else {
        CsvWriter w(body);
        for (const auto& hl : header) w.comment(hl);
        w.columns({"n", "re", "im"});
        for (const auto& r : rows) w.row(r);
    }
    out.write(body.str());
    return residual <= 1e-10 ? 0 : 1;
}

int run_portrait(double gamma, const std::vector<double>& grid_spec,
                 const std::vector<std::size_t>& sections, Space space, const GridOptions& opts,
                 const OutputTarget& out) {
    if (grid_spec.size() != 5)
        throw std::runtime_error("--grid expects re_min,re_max,im_min,im_max,step");
    PortraitGrid grid{grid_spec[0], grid_spec[1], grid_spec[2], grid_spec[3], grid_spec[4]};
    const auto rows = portrait(grid, gamma, sections, space, opts);

    std::ostringstream sect;
    for (std::size_t i = 0; i < sections.size(); ++i) sect << (i ? "," : "") << sections[i];
    const auto header = base_header("portrait",
                                    {{"gamma", fmt9(gamma)},
                                     {"grid", fmt9(grid.re_min) + "," + fmt9(grid.re_max) + "," +
                                                  fmt9(grid.im_min) + "," + fmt9(grid.im_max) +
                                                  "," + fmt9(grid.step)},
                                     {"sections", sect.str()},
                                     {"space", space == Space::kBig ? "big" : "little"}},
                                    opts);
    std::ostringstream body;
    if (out.format == "json")
        body << portrait_json(rows, sections, header_to_meta(header));
    else
        write_portrait_csv(body, rows, sections, header);
    out.write(body.str());
    return 0;
}

int run_ergodic(const std::string& kind, const std::string& fexpr, double gamma, unsigned nmax,
                const GridOptions& opts, const OutputTarget& out) {
    ConvergenceTable table;
    std::vector<std::pair<std::string, std::string>> params{
        {"kind", kind}, {"gamma", fmt9(gamma)}, {"nmax", std::to_string(nmax)}};
    if (kind == "power_norm") {
        table = power_norm_table(gamma, nmax, default_witnesses(gamma), opts);
    } else if (kind == "mean_norm") {
        table = mean_norm_table(gamma, nmax, default_witnesses(gamma), opts);
    } else if (kind == "mean_residual") {
        params.push_back({"f", fexpr});
        table = mean_convergence(parse_expression(fexpr), gamma, nmax, opts);
    } else if (kind == "successive_diff") {
        params.push_back({"f", fexpr});
        table = successive_difference(parse_expression(fexpr), gamma, nmax, opts);
    } else {
        throw std::runtime_error(
            "unknown --kind (use power_norm, mean_norm, mean_residual, successive_diff)");
    }
    const auto header = base_header("ergodic", params, opts);
    std::ostringstream body;
    if (out.format == "json")
        body << convergence_json(table, header_to_meta(header));
    else
        write_convergence_csv(body, table, header);
    out.write(body.str());
    return 0;
}

int run_catalog(double gamma, bool check, const GridOptions& opts, const OutputTarget& out) {
    const auto entries = witness_catalog(gamma);
    std::vector<CatalogRow> rows;
    bool mismatch = false, indeterminate = false;
    for (const auto& e : entries) {
        for (const auto& [space, expected] : e.expected) {
            CatalogRow row;
            row.name = e.name;
            row.gamma = e.gamma;
            row.space = space.name();
            row.expected = verdict_name(expected);
            row.provenance = e.provenance;
            if (check) {
                const MembershipVerdict v = check_witness(e, space, opts);
                row.computed = verdict_name(v.verdict);
                row.method = v.method == Method::kAnalytic ? "analytic" : "numeric";
                row.checked = true;
                mismatch = mismatch || row.computed != row.expected;
                indeterminate = indeterminate || v.verdict == Verdict::kIndeterminate;
            }
            rows.push_back(std::move(row));
        }
    }
    const auto header =
        base_header("catalog", {{"gamma", fmt9(gamma)}, {"check", check ? "1" : "0"}}, opts);
    std::ostringstream body;
    if (out.format == "json")
        body << catalog_json(rows, header_to_meta(header));
    else
        write_catalog_csv(body, rows, header);
    out.write(body.str());
    return (mismatch || indeterminate) ? 1 : 0;
}

int run_opnorm(double gamma, unsigned nmax, const GridOptions& opts, const OutputTarget& out) {
    const double bound = theoretical_norm_bound(gamma);
    const ConvergenceTable table = power_norm_table(gamma, nmax, default_witnesses(gamma), opts);
    auto header =
        base_header("opnorm", {{"gamma", fmt9(gamma)}, {"nmax", std::to_string(nmax)}}, opts);
    header.push_back("theoretical_norm_bound=" + fmt9(bound));
    std::ostringstream body;
    if (out.format == "json")
        body << convergence_json(table, header_to_meta(header));
    else
        write_convergence_csv(body, table, header);
    out.write(body.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for the averaging operator on weighted growth spaces"};
    app.require_subcommand(1);

    std::string fexpr = "1", hexpr = "z", op = "C", kind = "power_norm", lambda_text = "1";
    std::string grid_text = "-0.5,1.5,-0.5,0.5,0.25", sections_text = "128,512,2048";
    std::string space_text = "big", out_path, format = "csv";
    double gamma = 1.0;
    unsigned n = 1;
    std::size_t nmax = 32;
    bool check = false;
    std::vector<std::string> opt_kvs;

    app.set_help_flag("--help", "print help");  // frees -h for the --h flag

    auto add_common = [&](CLI::App* cmd) {
        cmd->set_help_flag("--help", "print help");
        cmd->add_option("--gamma", gamma, "weight exponent gamma > 0");
        cmd->add_option("--opt", opt_kvs, "grid option key=value (repeatable)");
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    };

    auto* norm = app.add_subcommand("norm", "weighted sup norm and boundary profile");
    add_common(norm);
    norm->add_option("--f", fexpr, "function expression")->required();

    auto* membership = app.add_subcommand("membership", "verdicts for all four spaces");
    add_common(membership);
    membership->add_option("--f", fexpr, "function expression")->required();

    auto* apply = app.add_subcommand("apply", "coefficients of C / C^-1 / mean / power");
    add_common(apply);
    apply->add_option("--f", fexpr, "function expression")->required();
    apply->add_option("--op", op, "C | Cinv | mean | power");
    apply->add_option("--n", n, "iterate count for mean/power");
    apply->add_option("--nmax", nmax, "last coefficient index");

    auto* solve = app.add_subcommand("solve", "resolvent system (lambda I - C) f = h");
    add_common(solve);
    solve->add_option("--h", hexpr, "right-hand side expression")->required();
    solve->add_option("--lambda", lambda_text, "complex lambda, e.g. 0.7+0.3i");
    solve->add_option("--nmax", nmax, "last coefficient index");

    auto* portrait_cmd = app.add_subcommand("portrait", "section resolvent-norm grid");
    add_common(portrait_cmd);
    portrait_cmd->add_option("--grid", grid_text, "re_min,re_max,im_min,im_max,step");
    portrait_cmd->add_option("--sections", sections_text, "comma-separated section sizes");
    portrait_cmd->add_option("--space", space_text, "big|little")
        ->check(CLI::IsMember({"big", "little"}));

    auto* ergodic_cmd = app.add_subcommand("ergodic", "convergence tables");
    add_common(ergodic_cmd);
    ergodic_cmd->add_option("--kind", kind,
                            "power_norm | mean_norm | mean_residual | successive_diff");
    ergodic_cmd->add_option("--f", fexpr, "witness for residual/difference kinds");
    ergodic_cmd->add_option("--nmax", nmax, "largest iterate");

    auto* catalog_cmd = app.add_subcommand("catalog", "witness expectations (optionally verified)");
    add_common(catalog_cmd);
    catalog_cmd->add_flag("--check", check, "also run the classifiers and compare");

    auto* opnorm_cmd = app.add_subcommand("opnorm", "power-norm table and the norm bound");
    add_common(opnorm_cmd);
    opnorm_cmd->add_option("--nmax", nmax, "largest power");

    CLI11_PARSE(app, argc, argv);

    try {
        const GridOptions opts = grid_from_opts(opt_kvs);
        const OutputTarget out{out_path, format};
        if (gamma <= 0.0) throw std::runtime_error("--gamma must be positive");
        if (norm->parsed()) return run_norm(fexpr, gamma, opts, out);
        if (membership->parsed()) return run_membership(fexpr, gamma, opts, out);
        if (apply->parsed()) return run_apply(fexpr, op, n, nmax, opts, out);
        if (solve->parsed())
            return run_solve(hexpr, parse_complex(lambda_text), gamma, nmax, opts, out);
        if (portrait_cmd->parsed()) {
            std::vector<std::size_t> sections;
            for (double s : parse_numbers(sections_text))
                sections.push_back(static_cast<std::size_t>(s));
            return run_portrait(gamma, parse_numbers(grid_text), sections,
                                space_text == "little" ? Space::kLittle : Space::kBig, opts, out);
        }
        if (ergodic_cmd->parsed())
            return run_ergodic(kind, fexpr, gamma, static_cast<unsigned>(nmax), opts, out);
        if (catalog_cmd->parsed()) return run_catalog(gamma, check, opts, out);
        if (opnorm_cmd->parsed()) return run_opnorm(gamma, static_cast<unsigned>(nmax), opts, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
