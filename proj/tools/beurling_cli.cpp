// Batch front-end: every library area as a subcommand, with reproducible
// configs (flags + optional JSON file, flags win) and CSV/JSON artifacts.
//
// Exit codes: 0 success, 2 validation/usage error (nothing written),
// 3 numerical failure (error budget exceeded, non-convergence).

#include "beurling/construction.hpp"
#include "beurling/mean_values.hpp"
#include "beurling/number_system.hpp"
#include "beurling/point_measure.hpp"
#include "beurling/quadrature.hpp"
#include "beurling/reference_zeta.hpp"
#include "beurling/util.hpp"
#include "beurling/zeros.hpp"
#include "beurling/zeta_eval.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace beurling;

namespace {

cplx parse_complex(const std::string& text) {
    // "a", "a+bi", "a-bi" (also accepts trailing 'j').
    std::string s = text;
    if (!s.empty() && (s.back() == 'i' || s.back() == 'j')) {
        s.pop_back();
        std::size_t split = std::string::npos;
        for (std::size_t k = s.size(); k-- > 1;) {
            if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        if (split == std::string::npos)
            throw validation_error("cannot parse complex number '" + text + "'");
        return {std::stod(s.substr(0, split)), std::stod(s.substr(split))};
    }
    return {std::stod(s), 0.0};
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(std::stod(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (out.empty()) throw validation_error("empty list");
    return out;
}

struct Artifacts {
    fs::path dir;
    std::vector<std::string> written;

    std::ofstream open(const std::string& name) {
        fs::create_directories(dir);
        std::ofstream os(dir / name, std::ios::binary);
        if (!os) throw error("cannot open output file " + (dir / name).string());
        written.push_back((dir / name).string());
        return os;
    }
};

void print_summary(const std::string& subcommand, const json& params, const Artifacts& art,
                   const json& metrics, std::optional<std::uint64_t> seed = {}) {
    json out;
    out["subcommand"] = subcommand;
    out["params"] = params;
    out["outputs"] = art.written;
    out["metrics"] = metrics;
    if (seed) out["seed"] = *seed;
    std::cout << out.dump() << "\n";
}

// Shared system/evaluator selection.
struct SystemOptions {
    std::string kind = "rational";    // rational | rescaled | primes | construct
    double x_max = 1e5;
    double theta = 0.0;
    std::string primes_file;
    double quad_tol = 1e-6;
    bool use_reference = false;    // evaluate via the oracle instead of the table
};

void add_system_options(CLI::App* cmd, SystemOptions& so) {
    cmd->add_option("--system", so.kind, "rational | rescaled | primes | construct")
        ->default_val(so.kind);
    cmd->add_option("--x-max", so.x_max, "table/measure support cutoff")->default_val(so.x_max);
    cmd->add_option("--theta", so.theta, "theta for rescaled/construct systems")
        ->default_val(so.theta);
    cmd->add_option("--primes-file", so.primes_file, "CSV value,multiplicity (kind=primes)");
    cmd->add_option("--quad-tol", so.quad_tol)->default_val(so.quad_tol);
    cmd->add_flag("--reference", so.use_reference,
                  "use the closed-form oracle zeta for rational/rescaled");
}

struct BuiltEvaluator {
    Evaluator eval;
    double theta = 0.0;
};

BuiltEvaluator make_evaluator(const SystemOptions& so) {
    if (so.kind == "rational") {
        if (so.use_reference) return {reference_zeta_evaluator(), 0.0};
        auto sys = rational_system(so.x_max);
        auto cfg = make_continuation_config(sys, 0.0, so.quad_tol);
        return {continuation_evaluator(sys, cfg), 0.0};
    }
    if (so.kind == "rescaled") {
        if (so.use_reference) return {rescaled_reference_evaluator(so.theta), so.theta};
        auto ext = rescaled_system(so.theta, so.x_max);
        auto dN = std::make_shared<PointMeasure>(ext.dN);
        auto cfg = make_continuation_config(*dN, so.theta, ext.known_density, so.quad_tol);
        return {continuation_evaluator(dN, cfg, "rescaled-continued"), so.theta};
    }
    if (so.kind == "construct") {
        auto out = std::make_shared<const ConstructionOutput>(
            build_construction(so.theta, so.x_max));
        return {construction_evaluator(out), so.theta};
    }
    if (so.kind == "primes") {
        std::ifstream is(so.primes_file);
        if (!is) throw validation_error("cannot read --primes-file " + so.primes_file);
        auto sys = build_system(read_primes_csv(is), so.x_max);
        auto cfg = make_continuation_config(sys, so.theta, so.quad_tol);
        return {continuation_evaluator(sys, cfg), so.theta};
    }
    throw validation_error("unknown --system kind '" + so.kind + "'");
}

// ---------------------------------------------------------------------------
// Subcommand runners
// ---------------------------------------------------------------------------

int run_system(const SystemOptions& so, Artifacts& art) {
    json params{{"system", so.kind}, {"x_max", so.x_max}, {"theta", so.theta}};
    json metrics;
    if (so.kind == "rescaled") {
        const auto ext = rescaled_system(so.theta, so.x_max);
        {
            auto os = art.open("dN.csv");
            write_measure_csv(os, ext.dN);
        }
        {
            auto os = art.open("dPi.csv");
            write_measure_csv(os, ext.dPi);
        }
        const auto rep = well_behaved_report(ext.dN, so.theta, ext.known_density);
        metrics = {{"atoms", ext.dN.size()},
                   {"N_at_x_max", ext.dN.cumulative(so.x_max)},
                   {"A", rep.A_hat},
                   {"C_hat", rep.C_hat}};
    } else {
        NumberSystem sys = [&] {
            if (so.kind == "rational") return rational_system(so.x_max);
            if (so.kind == "primes") {
                std::ifstream is(so.primes_file);
                if (!is) throw validation_error("cannot read --primes-file " + so.primes_file);
                return build_system(read_primes_csv(is), so.x_max);
            }
            throw validation_error("system: unsupported kind '" + so.kind + "'");
        }();
        {
            auto os = art.open("system.csv");
            write_system_csv(os, sys);
        }
        const auto rep = well_behaved_report(sys, so.theta);
        metrics = {{"rows", sys.table().size()},
                   {"N_at_x_max", sys.N(so.x_max)},
                   {"A_hat", rep.A_hat},
                   {"C_hat", rep.C_hat},
                   {"tail_mean", rep.tail_mean}};
    }
    print_summary("system", params, art, metrics);
    return 0;
}

int run_zeta(const SystemOptions& so, double sigma, double t_min, double t_max,
             std::size_t t_count, Artifacts& art) {
    if (!(t_count >= 1)) throw validation_error("zeta: --t-count must be >= 1");
    const auto be = make_evaluator(so);
    std::vector<EvalResult> vals(t_count);
    std::vector<double> ts(t_count);
    for (std::size_t i = 0; i < t_count; ++i)
        ts[i] = t_count == 1 ? t_min
                             : t_min + (t_max - t_min) * double(i) / double(t_count - 1);
    parallel_chunks(t_count, 1, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) vals[i] = be.eval.value({sigma, ts[i]});
    });
    {
        auto os = art.open("zeta.csv");
        os << "sigma,t,re,im,err\n";
        for (std::size_t i = 0; i < t_count; ++i)
            os << fmt_double(sigma) << ',' << fmt_double(ts[i]) << ','
               << fmt_double(vals[i].value.real()) << ',' << fmt_double(vals[i].value.imag())
               << ',' << fmt_double(vals[i].err) << '\n';
    }
    double max_err = 0.0;
    for (const auto& v : vals) max_err = std::max(max_err, v.err);
    print_summary("zeta",
                  json{{"system", so.kind},
                       {"x_max", so.x_max},
                       {"theta", so.theta},
                       {"sigma", sigma},
                       {"t_min", t_min},
                       {"t_max", t_max},
                       {"t_count", t_count}},
                  art, json{{"max_err", max_err}, {"evaluator", be.eval.label}});
    return 0;
}

const char* zero_class_name(ZeroClass c) {
    switch (c) {
        case ZeroClass::TypeI: return "TypeI";
        case ZeroClass::TypeII: return "TypeII";
        case ZeroClass::Neither: return "Neither";
        default: return "Unclassified";
    }
}

int run_zeros(const SystemOptions& so, const std::string& rect_text, bool classify, double X,
              double Y, Artifacts& art) {
    const auto r = parse_list(rect_text);
    if (r.size() != 4) throw validation_error("zeros: --rect needs alpha,sigma_right,t_low,t_high");
    const Rectangle rect{r[0], r[1], r[2], r[3]};
    rect.validate(so.theta);
    const auto be = make_evaluator(so);
    auto records = localize_zeros(be.eval, rect, so.theta);

    if (classify) {
        if (so.kind == "rational") {
            const auto sys = rational_system(so.x_max);
            for (auto& z : records)
                z.classification = classify_zero(be.eval, sys, so.theta, z.rho, X, Y, so.quad_tol,
                                                 1e3 * z.residual + 1e-6)
                                       .cls;
        } else if (so.kind == "rescaled") {
            const auto ext = rescaled_system(so.theta, so.x_max);
            const auto coeffs = mollified_coeffs(ext.dN, X);
            const auto muX = mu_measure_upto(ext.dN, X);
            for (auto& z : records)
                z.classification = classify_zero(be.eval, coeffs, muX, so.theta, z.rho, X, Y,
                                                 so.quad_tol, 1e3 * z.residual + 1e-6)
                                       .cls;
        } else {
            throw validation_error("zeros: --classify supports rational/rescaled systems");
        }
    }
    {
        auto os = art.open("zeros.csv");
        os << "beta,gamma,residual,classification\n";
        for (const auto& z : records)
            os << fmt_double(z.rho.real()) << ',' << fmt_double(z.rho.imag()) << ','
               << fmt_double(z.residual) << ',' << zero_class_name(z.classification) << '\n';
    }
    print_summary("zeros",
                  json{{"system", so.kind},
                       {"x_max", so.x_max},
                       {"theta", so.theta},
                       {"rect", rect_text},
                       {"classify", classify},
                       {"X", X},
                       {"Y", Y}},
                  art, json{{"count", records.size()}});
    return 0;
}

int run_density(const SystemOptions& so, const std::string& alphas_text,
                const std::string& Ts_text, Artifacts& art) {
    const auto alphas = parse_list(alphas_text);
    const auto Ts = parse_list(Ts_text);
    const auto be = make_evaluator(so);
    const auto table = density_table(be.eval, alphas, Ts, so.theta);
    const auto fit = fit_density_exponent(table, so.theta);
    {
        auto os = art.open("density.csv");
        os << "alpha,T,count,c_hat,c_paper\n";
        for (std::size_t i = 0; i < table.alphas.size(); ++i)
            for (std::size_t j = 0; j < table.Ts.size(); ++j)
                os << fmt_double(table.alphas[i]) << ',' << fmt_double(table.Ts[j]) << ','
                   << table.counts[i][j] << ','
                   << (fit[i].c_hat ? fmt_double(*fit[i].c_hat) : std::string()) << ','
                   << fmt_double(fit[i].c_paper) << '\n';
    }
    json fits = json::array();
    for (const auto& row : fit) {
        json jr{{"alpha", row.alpha}, {"c_paper", row.c_paper}};
        if (row.c_hat) jr["c_hat"] = *row.c_hat;
        fits.push_back(jr);
    }
    json metrics{{"fit", fits},
                 {"asymptotic_at_T_max",
                  critical_line_count_asymptotic(so.theta, table.Ts.back())}};
    print_summary("density",
                  json{{"system", so.kind},
                       {"x_max", so.x_max},
                       {"theta", so.theta},
                       {"alphas", alphas_text},
                       {"Ts", Ts_text}},
                  art, metrics);
    return 0;
}

int run_meanvalue(const SystemOptions& so, const std::string& check, double N, double T,
                  double eta, double delta, double sigma, double two_k, double nu,
                  std::uint64_t seed, std::size_t trials, Artifacts& art) {
    json params{{"system", so.kind}, {"x_max", so.x_max},   {"check", check},
                {"N", N},            {"T", T},              {"eta", eta},
                {"delta", delta},    {"sigma", sigma},      {"two_k", two_k},
                {"nu", nu},          {"trials", trials}};
    json metrics;

    auto seeded_points = [&](rng64& rng, std::size_t count, double spacing) {
        std::vector<double> ts;
        double t = rng.uniform(0.0, 1.0);
        for (std::size_t i = 0; i < count; ++i) {
            ts.push_back(t);
            t += spacing + rng.uniform(0.0, spacing);
        }
        return ts;
    };

    if (check == "mvt" || check == "bombieri" || check == "discrete") {
        const auto sys = rational_system(so.x_max);
        std::vector<double> freqs;
        for (const auto& row : sys.table()) {
            if (row.value < N) continue;
            if (row.value > 2.0 * N) break;
            freqs.push_back(row.value);
        }
        double max_ratio = 0.0;
        std::vector<std::string> lines;
        for (std::size_t k = 0; k < trials; ++k) {
            rng64 rng(seed + k);
            std::vector<cplx> coeffs;
            for (std::size_t i = 0; i < freqs.size(); ++i) coeffs.push_back(rng.unit_disc());
            const DirichletPolynomial S(freqs, coeffs);
            MeanValueReport rep;
            if (check == "mvt")
                rep = mvt_check(S, 0.0, T, eta, sys);
            else if (check == "discrete")
                rep = discrete_mvt_check(S, seeded_points(rng, 30, delta), eta, delta, sys);
            else
                rep = bombieri_check(S, N, seeded_points(rng, 30, 1.0), sys);
            rep.seed = seed + k;
            lines.push_back(to_json(rep));
            max_ratio = std::max(max_ratio, rep.ratio);
        }
        auto os = art.open("reports.jsonl");
        for (const auto& l : lines) os << l << '\n';
        metrics = {{"max_ratio", max_ratio}};
    } else if (check == "moment") {
        const auto be = make_evaluator(so);
        const auto m = vertical_moment(be.eval, sigma, T, two_k, so.quad_tol);
        metrics = {{"moment", m.value},
                   {"err_budget", m.err_budget},
                   {"moment_over_logT", m.value / std::log(T)}};
    } else if (check == "gallagher") {
        const auto be = make_evaluator(so);
        rng64 rng(seed);
        std::vector<double> ts;
        double t = -T + rng.uniform(0.0, 1.0);
        while (t <= T) {
            ts.push_back(t);
            t += delta + rng.uniform(0.0, delta);
        }
        const auto rep = gallagher_check(be.eval, sigma, ts, T, delta, so.quad_tol);
        auto os = art.open("reports.jsonl");
        os << to_json(rep) << '\n';
        metrics = {{"ratio", rep.ratio}, {"points", ts.size()}};
    } else if (check == "montgomery") {
        const auto sys = rational_system(so.x_max);
        std::vector<std::uint64_t> seeds;
        for (std::size_t k = 0; k < trials; ++k) seeds.push_back(seed + k);
        const auto rep = montgomery_experiment(sys, N, T, nu, seeds, so.quad_tol);
        auto os = art.open("reports.jsonl");
        for (const auto& tr : rep.trials) os << to_json(tr) << '\n';
        metrics = {{"max_ratio", rep.max_ratio},
                   {"nu", nu},
                   {"note", "conjecture exploration, evidence only"}};
    } else {
        throw validation_error("meanvalue: unknown --check '" + check + "'");
    }
    print_summary("meanvalue", params, art, metrics, seed);
    return 0;
}

int run_identity(const SystemOptions& so, const std::string& s_text, double X, double Y,
                 Artifacts& art) {
    const cplx s = parse_complex(s_text);
    if (so.kind != "rational")
        throw validation_error("identity: only the rational system is wired up");
    const auto sys = rational_system(so.x_max);
    auto cfg = make_continuation_config(sys, 0.0, so.quad_tol);
    const auto rep = smoothing_identity(sys, cfg, s, X, Y);
    {
        auto os = art.open("identity.json");
        json j{{"s", s_text},
               {"X", X},
               {"Y", Y},
               {"residual", rep.residual},
               {"err", rep.err},
               {"Z", rep.Z},
               {"lhs", {rep.lhs.real(), rep.lhs.imag()}},
               {"rhs", {rep.rhs.real(), rep.rhs.imag()}}};
        os << j.dump(2) << '\n';
    }
    print_summary("identity",
                  json{{"system", so.kind},
                       {"x_max", so.x_max},
                       {"s", s_text},
                       {"X", X},
                       {"Y", Y}},
                  art,
                  json{{"residual", rep.residual},
                       {"err", rep.err},
                       {"within_tolerance", rep.residual <= 1e-4 + rep.err}});
    return 0;
}

int run_construct(const SystemOptions& so, Artifacts& art) {
    const auto out = build_construction(so.theta, so.x_max);
    const auto rep = verify_density(out);
    const auto dump = [&](const char* name, const PointMeasure& m) {
        auto os = art.open(name);
        write_measure_csv(os, m);
    };
    dump("piP.csv", out.piP);
    dump("piR.csv", out.piR);
    dump("dPiR.csv", out.dPiR);
    dump("dNR.csv", out.dNR);
    dump("dMR.csv", out.dMR);
    dump("dNP.csv", out.dNP);
    {
        auto os = art.open("construct.json");
        json j{{"theta", out.theta},
               {"x_max", out.x_max},
               {"A_expected", out.A_expected},
               {"zetaR_at_1", out.zetaR_at_1},
               {"zetaR_at_1_err", out.zetaR_at_1_err},
               {"density_constant", rep.density_constant},
               {"slope", rep.slope},
               {"slope_rel_err", rep.slope_rel_err},
               {"Li_ratio_max", out.Li_ratio_max},
               {"NR_ratio_max", out.NR_ratio_max}};
        os << j.dump(2) << '\n';
    }
    print_summary("construct", json{{"theta", so.theta}, {"x_max", so.x_max}}, art,
                  json{{"A_expected", out.A_expected},
                       {"zetaR_at_1", out.zetaR_at_1},
                       {"density_constant", rep.density_constant},
                       {"slope_rel_err", rep.slope_rel_err}});
    return 0;
}

int run_classify(const SystemOptions& so, const std::string& rho_text, double X, double Y,
                 Artifacts& art) {
    const cplx rho = parse_complex(rho_text);
    const auto be = make_evaluator(so);
    ClassifyReport rep;
    if (so.kind == "rational") {
        rep = classify_zero(be.eval, rational_system(so.x_max), so.theta, rho, X, Y, so.quad_tol);
    } else if (so.kind == "rescaled") {
        const auto ext = rescaled_system(so.theta, so.x_max);
        rep = classify_zero(be.eval, mollified_coeffs(ext.dN, X), mu_measure_upto(ext.dN, X),
                            so.theta, rho, X, Y, so.quad_tol);
    } else {
        throw validation_error("classify: supports rational/rescaled systems");
    }
    {
        auto os = art.open("classify.json");
        json j{{"rho", rho_text},
               {"X", X},
               {"Y", Y},
               {"class", zero_class_name(rep.cls)},
               {"type1", rep.type1},
               {"type2", rep.type2},
               {"type2_evaluated", rep.type2_evaluated}};
        os << j.dump(2) << '\n';
    }
    print_summary("classify",
                  json{{"system", so.kind},
                       {"x_max", so.x_max},
                       {"theta", so.theta},
                       {"rho", rho_text},
                       {"X", X},
                       {"Y", Y}},
                  art,
                  json{{"class", zero_class_name(rep.cls)},
                       {"type1", rep.type1},
                       {"type2", rep.type2}});
    return 0;
}

// Expands --config into "--key=value" tokens placed right after the
// subcommand, so explicitly passed flags (parsed later, TakeLast) override
// the file.  Unknown keys are rejected against the subcommand's options.
std::vector<std::string> expand_config(const CLI::App& app, int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string cfg_path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") cfg_path = args[i + 1];
    if (cfg_path.empty()) return args;

    std::ifstream is(cfg_path);
    if (!is) throw validation_error("cannot read --config " + cfg_path);
    json cfg = json::parse(is, nullptr, true);
    if (!cfg.is_object()) throw validation_error("--config must hold a JSON object");

    std::string sub;
    if (cfg.contains("subcommand")) {
        sub = cfg["subcommand"].get<std::string>();
        cfg.erase("subcommand");
    }
    std::size_t insert_at = 0;
    if (!args.empty() && !args[0].empty() && args[0][0] != '-') {
        if (!sub.empty() && args[0] != sub)
            throw validation_error("config subcommand '" + sub + "' conflicts with '" +
                                   args[0] + "'");
        sub = args[0];
        insert_at = 1;
    } else if (!sub.empty()) {
        args.insert(args.begin(), sub);
        insert_at = 1;
    } else {
        throw validation_error("config: no subcommand given");
    }

    const CLI::App* target = app.get_subcommand_no_throw(sub);
    if (!target) throw validation_error("config: unknown subcommand '" + sub + "'");
    std::vector<std::string> injected;
    for (auto& [key, value] : cfg.items()) {
        if (!target->get_option_no_throw("--" + key))
            throw validation_error("config: unknown key '" + key + "'");
        std::string v;
        if (value.is_string())
            v = value.get<std::string>();
        else if (value.is_boolean())
            v = value.get<bool>() ? "true" : "false";
        else
            v = value.dump();
        injected.push_back("--" + key + "=" + v);
    }
    args.insert(args.begin() + std::ptrdiff_t(insert_at), injected.begin(), injected.end());
    return args;
}

}    // namespace

int main(int argc, char** argv) {
    CLI::App app{"Beurling generalized number systems: zeta evaluation, zero counting, "
                 "mean value harnesses, and the rescaled-zero construction"};
    app.require_subcommand(1);

    std::string out_dir = "out";
    unsigned threads = 0;
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override)")
        ->expected(1);

    SystemOptions so;
    double sigma = 1.5, t_min = 0.0, t_max = 30.0;
    std::size_t t_count = 61;
    std::string rect_text = "0.4,0.9,5,30";
    bool classify_flag = false;
    double X = 20.0, Y = 50.0;
    std::string alphas_text = "0.6", Ts_text = "25,50";
    std::string check = "mvt", s_text = "0.75+5i", rho_text = "0.5+14.134725i";
    double N = 64.0, T = 100.0, eta = 0.05, delta = 1.0, mv_sigma = 0.75, two_k = 2.0,
           nu = 1.0;
    std::uint64_t seed = 1;
    std::size_t trials = 10;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_dir, "artifact directory")->default_val(out_dir);
        cmd->add_option("--threads", threads, "max worker threads (0 = hardware)")
            ->default_val(threads);
        cmd->add_option("--config", config_path, "JSON config file (flags override)");
        add_system_options(cmd, so);
    };

    CLI::App* c_system = app.add_subcommand("system", "build a system and export its table");
    add_common(c_system);

    CLI::App* c_zeta = app.add_subcommand("zeta", "evaluate zeta_P along a vertical segment");
    add_common(c_zeta);
    c_zeta->add_option("--sigma", sigma)->default_val(sigma);
    c_zeta->add_option("--t-min", t_min)->default_val(t_min);
    c_zeta->add_option("--t-max", t_max)->default_val(t_max);
    c_zeta->add_option("--t-count", t_count)->default_val(t_count);

    CLI::App* c_zeros = app.add_subcommand("zeros", "localize zeros in a rectangle");
    add_common(c_zeros);
    c_zeros->add_option("--rect", rect_text, "alpha,sigma_right,t_low,t_high")
        ->default_val(rect_text);
    c_zeros->add_flag("--classify", classify_flag, "attach type I/II classification");
    c_zeros->add_option("--X", X)->default_val(X);
    c_zeros->add_option("--Y", Y)->default_val(Y);

    CLI::App* c_density = app.add_subcommand("density", "zero-density table N(alpha, T)");
    add_common(c_density);
    c_density->add_option("--alphas", alphas_text)->default_val(alphas_text);
    c_density->add_option("--Ts", Ts_text)->default_val(Ts_text);

    CLI::App* c_mean = app.add_subcommand("meanvalue", "mean value and moment harnesses");
    add_common(c_mean);
    c_mean->add_option("--check", check, "mvt | discrete | bombieri | gallagher | moment | montgomery")
        ->default_val(check);
    c_mean->add_option("--N", N)->default_val(N);
    c_mean->add_option("--T", T)->default_val(T);
    c_mean->add_option("--eta", eta)->default_val(eta);
    c_mean->add_option("--delta", delta)->default_val(delta);
    c_mean->add_option("--sigma", mv_sigma)->default_val(mv_sigma);
    c_mean->add_option("--two-k", two_k)->default_val(two_k);
    c_mean->add_option("--nu", nu)->default_val(nu);
    c_mean->add_option("--seed", seed)->default_val(seed);
    c_mean->add_option("--trials", trials)->default_val(trials);

    CLI::App* c_identity = app.add_subcommand("identity", "Gamma-smoothed six-term identity");
    add_common(c_identity);
    c_identity->add_option("--s", s_text, "complex point, e.g. 0.75+5i")->required();
    c_identity->add_option("--X", X)->default_val(X);
    c_identity->add_option("--Y", Y)->default_val(Y);

    CLI::App* c_construct = app.add_subcommand("construct", "rescaled-zero prime system");
    add_common(c_construct);

    CLI::App* c_classify = app.add_subcommand("classify", "type I/II dichotomy at a zero");
    add_common(c_classify);
    c_classify->add_option("--rho", rho_text, "refined zero, e.g. 0.5+14.134725i")->required();
    c_classify->add_option("--X", X)->default_val(X);
    c_classify->add_option("--Y", Y)->default_val(Y);

    // Later occurrences win, so config-file tokens yield to explicit flags.
    for (CLI::App* sub : app.get_subcommands({}))
        for (CLI::Option* opt : sub->get_options())
            if (opt->get_expected_max() == 1) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    try {
        try {
            std::vector<std::string> args = expand_config(app, argc, argv);
            std::reverse(args.begin(), args.end());    // CLI11 vector parse contract
            app.parse(std::move(args));
        } catch (const CLI::ParseError& e) {
            app.exit(e);
            return 2;
        }

        set_max_threads(threads);
        Artifacts art{fs::path(out_dir), {}};

        if (app.got_subcommand(c_system)) return run_system(so, art);
        if (app.got_subcommand(c_zeta))
            return run_zeta(so, sigma, t_min, t_max, t_count, art);
        if (app.got_subcommand(c_zeros))
            return run_zeros(so, rect_text, classify_flag, X, Y, art);
        if (app.got_subcommand(c_density)) return run_density(so, alphas_text, Ts_text, art);
        if (app.got_subcommand(c_mean))
            return run_meanvalue(so, check, N, T, eta, delta, mv_sigma, two_k, nu, seed, trials,
                                 art);
        if (app.got_subcommand(c_identity)) return run_identity(so, s_text, X, Y, art);
        if (app.got_subcommand(c_construct)) return run_construct(so, art);
        if (app.got_subcommand(c_classify)) return run_classify(so, rho_text, X, Y, art);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const beurling::error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
