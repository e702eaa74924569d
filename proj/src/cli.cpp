#include "lg/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <json.hpp>

#include "lg/csv.hpp"
#include "lg/errors.hpp"
#include "lg/gof.hpp"
#include "lg/moments.hpp"

namespace lg::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNonConvergence = 3;

std::string fmt(double v, int sig) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", sig, v);
    return buf;
}
std::string fmt6(double v) { return fmt(v, 6); }
std::string fmt17(double v) { return fmt(v, 17); }

double json_safe(double v) {
    // nlohmann::json serializes NaN/inf as null; keep that behavior explicit.
    return v;
}

std::string command_name(Command c) {
    switch (c) {
        case Command::Eval: return "eval";
        case Command::Sample: return "sample";
        case Command::Fit: return "fit";
        case Command::Compare: return "compare";
        case Command::Shape: return "shape";
        case Command::Curves: return "curves";
        case Command::Moments: return "moments";
    }
    return "?";
}

std::string format_name(Format f) {
    switch (f) {
        case Format::Json: return "json";
        case Format::Csv: return "csv";
        case Format::Table: return "table";
    }
    return "?";
}

std::string curve_name(CurveKind k) {
    switch (k) {
        case CurveKind::Lorenz: return "lorenz";
        case CurveKind::Bonferroni: return "bonferroni";
        case CurveKind::TTT: return "ttt";
        case CurveKind::Hazard: return "hazard";
        case CurveKind::MRL: return "mrl";
    }
    return "?";
}

json config_echo(const RunConfig& cfg) {
    json echo;
    echo["format"] = format_name(cfg.format);
    if (cfg.params) {
        echo["p"] = cfg.params->p;
        echo["theta"] = cfg.params->theta;
    }
    if (cfg.input_path) echo["input"] = *cfg.input_path;
    switch (cfg.command) {
        case Command::Sample:
            echo["n"] = cfg.n;
            echo["seed"] = cfg.seed;
            break;
        case Command::Eval:
            if (cfg.xi) echo["xi"] = *cfg.xi;
            break;
        case Command::Curves:
            echo["curve"] = curve_name(cfg.curve);
            echo["points"] = cfg.points;
            break;
        case Command::Fit:
            echo["method"] = cfg.method == FitMethod::EM ? "em" : "newton";
            echo["tol"] = cfg.em.tol_param;
            echo["max_iter"] = cfg.em.max_iter;
            break;
        default:
            break;
    }
    return echo;
}

void emit_json(const RunConfig& cfg, const json& result, const json& diagnostics,
               std::ostream& out) {
    json doc;
    doc["command"] = command_name(cfg.command);
    doc["config_echo"] = config_echo(cfg);
    doc["result"] = result;
    doc["diagnostics"] = diagnostics;
    out << doc.dump(2) << "\n";
}

// ---- eval ----------------------------------------------------------------

int run_eval(const RunConfig& cfg, std::ostream& out) {
    const LGParams& par = *cfg.params;
    json result;
    json diag;

    std::vector<double> ys;
    if (cfg.input_path) {
        ys = ingest_csv(*cfg.input_path).original_order();
    }
    std::optional<double> q;
    if (cfg.xi) {
        q = quantile(par, *cfg.xi, cfg.quantile_tol);
    }

    if (cfg.format == Format::Json) {
        if (q) {
            result["quantile"] = {{"xi", *cfg.xi},
                                  {"value", *q},
                                  {"cdf_roundtrip", cdf(par, *q)}};
        }
        if (!ys.empty()) {
            json rows = json::array();
            for (double y : ys) {
                rows.push_back({{"y", y},
                                {"pdf", pdf(par, y)},
                                {"cdf", cdf(par, y)},
                                {"survival", survival(par, y)},
                                {"hazard", hazard(par, y)},
                                {"reversed_hazard", y > 0.0 ? reversed_hazard(par, y)
                                                            : std::numeric_limits<double>::infinity()}});
            }
            result["points"] = rows;
        }
        emit_json(cfg, result, diag, out);
        return kExitOk;
    }

    if (q) {
        if (cfg.format == Format::Csv) {
            out << "xi,quantile,cdf_roundtrip\n"
                << fmt17(*cfg.xi) << "," << fmt17(*q) << "," << fmt17(cdf(par, *q)) << "\n";
        } else {
            out << "quantile(" << fmt6(*cfg.xi) << ") = " << fmt6(*q)
                << "   [cdf roundtrip " << fmt6(cdf(par, *q)) << "]\n";
        }
    }
    if (!ys.empty()) {
        out << "y,pdf,cdf,survival,hazard,reversed_hazard\n";
        for (double y : ys) {
            out << fmt(y, 12) << "," << fmt(pdf(par, y), 12) << "," << fmt(cdf(par, y), 12)
                << "," << fmt(survival(par, y), 12) << "," << fmt(hazard(par, y), 12) << ","
                << fmt(y > 0.0 ? reversed_hazard(par, y) : INFINITY, 12) << "\n";
        }
    }
    return kExitOk;
}

// ---- sample ----------------------------------------------------------------

int run_sample(const RunConfig& cfg, std::ostream& out) {
    const Sample s = sample(*cfg.params, cfg.n, cfg.seed);
    if (cfg.format == Format::Json) {
        json result;
        result["n"] = s.size();
        result["seed"] = cfg.seed;
        json draws = json::array();
        for (double v : s.original_order()) draws.push_back(v);
        result["draws"] = draws;
        emit_json(cfg, result, json::object(), out);
        return kExitOk;
    }
    for (double v : s.original_order()) out << fmt17(v) << "\n";
    return kExitOk;
}

// ---- fit ----------------------------------------------------------------

json fit_to_json(const FitResult& fit) {
    json j;
    j["model"] = "LG";
    j["method"] = fit.method == FitMethod::EM ? "em" : "newton";
    j["params"] = {{"theta", fit.params.theta}, {"p", fit.params.p}};
    j["std_errors"] = {{"theta", json_safe(fit.std_errors[1])},
                       {"p", json_safe(fit.std_errors[0])}};
    if (std::isfinite(fit.std_errors[0]) && std::isfinite(fit.std_errors[1])) {
        const auto [ci_p, ci_t] = wald_ci(fit, 0.05);
        j["ci95"] = {{"theta", {ci_t.lo, ci_t.hi}}, {"p", {ci_p.lo, ci_p.hi}}};
    }
    j["loglik"] = fit.loglik;
    j["neg2loglik"] = fit.neg2loglik;
    j["iterations"] = fit.iterations;
    j["converged"] = fit.converged;
    return j;
}

int run_fit(const RunConfig& cfg, std::ostream& out) {
    const Sample data = ingest_csv(*cfg.input_path);
    const FitResult fit = cfg.method == FitMethod::EM
                              ? fit_em(data, default_init(data), cfg.em)
                              : fit_direct(data, default_init(data));
    json diag;
    if (!fit.message.empty()) diag["message"] = fit.message;
    if (fit.fd_hessian_used) diag["fd_hessian_used"] = true;
    if (fit.converged) {
        const LrResult lr = lr_test(data, fit);
        diag["lr_test_vs_lindley"] = {{"statistic", lr.statistic},
                                      {"df", lr.df},
                                      {"p_value", lr.p_value},
                                      {"lindley_theta", lr.restricted_theta}};
    }

    if (cfg.format == Format::Json) {
        emit_json(cfg, fit_to_json(fit), diag, out);
    } else {
        out << "LG fit (" << (fit.method == FitMethod::EM ? "EM" : "Newton") << ", n=" << data.size()
            << ")\n";
        out << "  theta = " << fmt6(fit.params.theta) << " (se " << fmt6(fit.std_errors[1])
            << ")\n";
        out << "  p     = " << fmt6(fit.params.p) << " (se " << fmt6(fit.std_errors[0]) << ")\n";
        if (std::isfinite(fit.std_errors[0]) && std::isfinite(fit.std_errors[1])) {
            const auto [ci_p, ci_t] = wald_ci(fit, 0.05);
            out << "  95% CI theta: [" << fmt6(ci_t.lo) << ", " << fmt6(ci_t.hi) << "]\n";
            out << "  95% CI p:     [" << fmt6(ci_p.lo) << ", " << fmt6(ci_p.hi) << "]\n";
        }
        out << "  loglik = " << fmt6(fit.loglik) << "  (-2logL = " << fmt6(fit.neg2loglik)
            << ")\n";
        out << "  iterations = " << fit.iterations
            << ", converged = " << (fit.converged ? "yes" : "no") << "\n";
        if (!fit.message.empty()) out << "  note: " << fit.message << "\n";
    }
    return fit.converged ? kExitOk : kExitNonConvergence;
}

// ---- compare ----------------------------------------------------------------

int run_compare(const RunConfig& cfg, std::ostream& out) {
    const Sample data = ingest_csv(*cfg.input_path);
    const auto reports = compare_models(data, ModelSpec::all());

    if (cfg.format == Format::Json) {
        json rows = json::array();
        for (const auto& rep : reports) {
            json row;
            row["model"] = model_label(rep.fit.spec.name);
            row["k"] = rep.fit.spec.k;
            row["converged"] = rep.fit.converged;
            json params = json::object();
            json ses = json::object();
            for (std::size_t i = 0; i < rep.fit.params.size(); ++i) {
                params[rep.fit.labels[i]] = rep.fit.params[i];
                ses[rep.fit.labels[i]] = json_safe(rep.fit.std_errors[i]);
            }
            row["mles"] = params;
            row["std_errors"] = ses;
            row["ks"] = json_safe(rep.ks);
            row["ks_pvalue"] = json_safe(rep.ks_pvalue);
            row["neg2loglik"] = json_safe(rep.neg2loglik);
            row["aic"] = json_safe(rep.aic);
            row["aicc"] = json_safe(rep.aicc);
            row["bic"] = json_safe(rep.bic);
            row["ad"] = json_safe(rep.ad);
            row["cm"] = json_safe(rep.cm);
            if (!rep.diagnostics.empty()) row["diagnostics"] = rep.diagnostics;
            rows.push_back(row);
        }
        json diag;
        diag["note"] =
            "statistics use estimated parameters plugged into the fitted cdf "
            "(no small-sample correction)";
        emit_json(cfg, {{"rows", rows}}, diag, out);
        return kExitOk;
    }

    const char* sep = cfg.format == Format::Csv ? "," : "  ";
    if (cfg.format == Format::Csv) {
        out << "model,params,ks,ks_pvalue,neg2loglik,aic,aicc,bic,ad,cm\n";
    } else {
        out << "Model comparison (n=" << data.size()
            << "; plug-in statistics, lower is better; rows sorted by AIC)\n";
        out << "model" << sep << "params" << sep << "K-S" << sep << "p-value" << sep
            << "-2logL" << sep << "AIC" << sep << "AICC" << sep << "BIC" << sep << "AD" << sep
            << "CM\n";
    }
    for (const auto& rep : reports) {
        std::string params;
        for (std::size_t i = 0; i < rep.fit.params.size(); ++i) {
            if (i) params += cfg.format == Format::Csv ? ";" : " ";
            params += rep.fit.labels[i] + "=" + fmt6(rep.fit.params[i]) + "(" +
                      fmt6(rep.fit.std_errors[i]) + ")";
        }
        out << model_label(rep.fit.spec.name) << sep << params << sep << fmt6(rep.ks) << sep
            << fmt6(rep.ks_pvalue) << sep << fmt6(rep.neg2loglik) << sep << fmt6(rep.aic)
            << sep << fmt6(rep.aicc) << sep << fmt6(rep.bic) << sep << fmt6(rep.ad) << sep
            << fmt6(rep.cm);
        if (!rep.diagnostics.empty()) out << sep << rep.diagnostics;
        out << "\n";
    }
    return kExitOk;
}

// ---- shape ----------------------------------------------------------------

int run_shape(const RunConfig& cfg, std::ostream& out) {
    const LGParams& par = *cfg.params;
    const DensityShape ds = classify_density(par);
    const HazardShape hs = classify_hazard(par);

    if (cfg.format == Format::Json) {
        json result;
        result["density"] = {
            {"kind", ds.kind == DensityShape::Kind::Decreasing ? "decreasing" : "unimodal"},
            {"threshold", ds.threshold}};
        if (ds.mode) result["density"]["mode"] = *ds.mode;
        json tp = json::array();
        for (double v : hs.turning_points) tp.push_back(v);
        result["hazard"] = {
            {"theorem_branch", hs.theorem_branch == HazardShape::TheoremBranch::Bathtub
                                   ? "bathtub"
                                   : "increasing-then-bathtub"},
            {"threshold", hs.threshold},
            {"pattern", hs.pattern()},
            {"turning_points", tp},
            {"matches_theorem", hs.matches_theorem}};
        emit_json(cfg, result, json::object(), out);
        return kExitOk;
    }

    out << "density: "
        << (ds.kind == DensityShape::Kind::Decreasing ? "decreasing" : "unimodal")
        << " (threshold p vs " << fmt6(ds.threshold) << ")";
    if (ds.mode) out << ", mode at y = " << fmt6(*ds.mode);
    out << "\n";
    out << "hazard: " << hs.pattern() << " (theorem branch: "
        << (hs.theorem_branch == HazardShape::TheoremBranch::Bathtub
                ? "bathtub"
                : "increasing-then-bathtub")
        << ", threshold p vs " << fmt6(hs.threshold)
        << ", matches theorem: " << (hs.matches_theorem ? "yes" : "no") << ")\n";
    if (!hs.turning_points.empty()) {
        out << "hazard turning points:";
        for (double v : hs.turning_points) out << " " << fmt6(v);
        out << "\n";
    }
    return kExitOk;
}

// ---- curves ----------------------------------------------------------------

int run_curves(const RunConfig& cfg, std::ostream& out) {
    const auto rows = curve_grid(*cfg.params, cfg.curve, cfg.points, cfg.series);
    if (cfg.format == Format::Json) {
        json arr = json::array();
        for (const auto& row : rows) {
            arr.push_back({{"y", row.y}, {"u", row.u}, {"value", row.value}});
        }
        emit_json(cfg, {{"curve", curve_name(cfg.curve)}, {"points", arr}}, json::object(), out);
        return kExitOk;
    }
    out << "y,u,value\n";
    for (const auto& row : rows) {
        out << fmt(row.y, 12) << "," << fmt(row.u, 12) << "," << fmt(row.value, 12) << "\n";
    }
    return kExitOk;
}

// ---- moments ----------------------------------------------------------------

int run_moments(const RunConfig& cfg, std::ostream& out) {
    const LGParams& par = *cfg.params;
    const SeriesControl& ctl = cfg.series;
    double m[5] = {0, 0, 0, 0, 0};
    for (int r = 1; r <= 4; ++r) m[r] = raw_moment(par, r, ctl).value;
    const double variance = m[2] - m[1] * m[1];
    const double gini = gini_index(par, ctl);
    const double d1 = mean_deviation_about_mean(par, ctl);
    const double d2 = mean_deviation_about_median(par, ctl);

    if (cfg.format == Format::Json) {
        json result;
        result["raw_moments"] = {m[1], m[2], m[3], m[4]};
        result["mean"] = m[1];
        result["variance"] = variance;
        result["gini"] = gini;
        result["mean_deviation_about_mean"] = d1;
        result["mean_deviation_about_median"] = d2;
        emit_json(cfg, result, json::object(), out);
        return kExitOk;
    }
    if (cfg.format == Format::Csv) {
        out << "quantity,value\n";
        for (int r = 1; r <= 4; ++r) out << "E[Y^" << r << "]," << fmt(m[r], 12) << "\n";
        out << "variance," << fmt(variance, 12) << "\n";
        out << "gini," << fmt(gini, 12) << "\n";
        out << "mean_deviation_mean," << fmt(d1, 12) << "\n";
        out << "mean_deviation_median," << fmt(d2, 12) << "\n";
        return kExitOk;
    }
    out << "moments for p=" << fmt6(par.p) << ", theta=" << fmt6(par.theta) << "\n";
    for (int r = 1; r <= 4; ++r) out << "  E[Y^" << r << "] = " << fmt6(m[r]) << "\n";
    out << "  variance = " << fmt6(variance) << "\n";
    out << "  Gini index = " << fmt6(gini) << "\n";
    out << "  mean deviation about mean = " << fmt6(d1) << "\n";
    out << "  mean deviation about median = " << fmt6(d2) << "\n";
    return kExitOk;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        switch (cfg.command) {
            case Command::Eval: return run_eval(cfg, out);
            case Command::Sample: return run_sample(cfg, out);
            case Command::Fit: return run_fit(cfg, out);
            case Command::Compare: return run_compare(cfg, out);
            case Command::Shape: return run_shape(cfg, out);
            case Command::Curves: return run_curves(cfg, out);
            case Command::Moments: return run_moments(cfg, out);
        }
        err << "unknown command\n";
        return kExitValidation;
    } catch (const convergence_error& e) {
        if (cfg.format == Format::Json) {
            err << json{{"error", {{"type", "non_convergence"}, {"message", e.what()}}}}.dump()
                << "\n";
        } else {
            err << "non-convergence: " << e.what() << "\n";
        }
        return kExitNonConvergence;
    } catch (const std::exception& e) {
        if (cfg.format == Format::Json) {
            err << json{{"error", {{"type", "validation"}, {"message", e.what()}}}}.dump()
                << "\n";
        } else {
            err << "error: " << e.what() << "\n";
        }
        return kExitValidation;
    }
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lindley-geometric lifetime distribution toolkit"};
    app.require_subcommand(1);

    std::string format = "table";
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();

    struct Raw {
        double p = 0.0;
        double theta = 1.0;
        bool has_p = false;
        bool has_theta = false;
        std::string input;
        std::uint64_t seed = 0;
        std::size_t n = 0;
        double xi = 0.5;
        bool has_xi = false;
        std::string curve = "lorenz";
        int points = 200;
        std::string method = "em";
        double tol = 1e-7;
        int max_iter = 2000;
    } raw;

    auto add_params = [&](CLI::App* sub, bool required) {
        auto* po = sub->add_option("--p", raw.p, "concentration parameter (p < 1)");
        auto* to = sub->add_option("--theta", raw.theta, "rate-like parameter (theta > 0)");
        if (required) {
            po->required();
            to->required();
        }
        po->each([&](const std::string&) { raw.has_p = true; });
        to->each([&](const std::string&) { raw.has_theta = true; });
    };

    auto* c_eval = app.add_subcommand("eval", "Evaluate pdf/cdf/survival/hazard or a quantile");
    add_params(c_eval, true);
    c_eval->add_option("--xi", raw.xi, "quantile level in (0,1)")
        ->each([&](const std::string&) { raw.has_xi = true; });
    c_eval->add_option("--input", raw.input, "file of evaluation points (one per line)");

    auto* c_sample = app.add_subcommand("sample", "Draw a pseudo-random sample");
    add_params(c_sample, true);
    c_sample->add_option("--n", raw.n, "number of draws")->required();
    c_sample->add_option("--seed", raw.seed, "RNG seed")->envname("LG_SEED");

    auto* c_fit = app.add_subcommand("fit", "Fit LG to CSV lifetime data");
    c_fit->add_option("--input", raw.input, "CSV file, one lifetime per line")->required();
    c_fit->add_option("--method", raw.method, "em or newton")
        ->check(CLI::IsMember({"em", "newton"}));
    c_fit->add_option("--tol", raw.tol, "EM parameter tolerance");
    c_fit->add_option("--max-iter", raw.max_iter, "EM iteration cap");

    auto* c_compare = app.add_subcommand("compare", "Fit and rank LG, EL, Lindley, Weibull, Exp");
    c_compare->add_option("--input", raw.input, "CSV file, one lifetime per line")->required();

    auto* c_shape = app.add_subcommand("shape", "Classify density and hazard shapes");
    add_params(c_shape, true);

    auto* c_curves = app.add_subcommand("curves", "Emit a plot-ready curve grid");
    add_params(c_curves, true);
    c_curves->add_option("--curve", raw.curve, "curve to emit")
        ->check(CLI::IsMember({"lorenz", "bonferroni", "ttt", "hazard", "mrl"}));
    c_curves->add_option("--points", raw.points, "grid size")->check(CLI::PositiveNumber);

    auto* c_moments = app.add_subcommand("moments", "Raw moments, variance, Gini, mean deviations");
    add_params(c_moments, true);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    RunConfig cfg;
    if (format == "json") cfg.format = Format::Json;
    else if (format == "csv") cfg.format = Format::Csv;
    else cfg.format = Format::Table;

    try {
        if (raw.has_p || raw.has_theta) {
            cfg.params = LGParams(raw.p, raw.theta);
        }
        if (!raw.input.empty()) cfg.input_path = raw.input;
        cfg.seed = raw.seed;
        cfg.n = raw.n;
        if (raw.has_xi) cfg.xi = raw.xi;
        cfg.points = raw.points;
        cfg.method = raw.method == "newton" ? FitMethod::DirectNewton : FitMethod::EM;
        cfg.em.tol_param = raw.tol;
        cfg.em.max_iter = raw.max_iter;
        if (raw.curve == "lorenz") cfg.curve = CurveKind::Lorenz;
        else if (raw.curve == "bonferroni") cfg.curve = CurveKind::Bonferroni;
        else if (raw.curve == "ttt") cfg.curve = CurveKind::TTT;
        else if (raw.curve == "hazard") cfg.curve = CurveKind::Hazard;
        else cfg.curve = CurveKind::MRL;

        if (app.got_subcommand(c_eval)) {
            cfg.command = Command::Eval;
            if (!raw.has_xi && raw.input.empty()) {
                throw std::invalid_argument("eval: provide --xi and/or --input");
            }
        } else if (app.got_subcommand(c_sample)) {
            cfg.command = Command::Sample;
        } else if (app.got_subcommand(c_fit)) {
            cfg.command = Command::Fit;
        } else if (app.got_subcommand(c_compare)) {
            cfg.command = Command::Compare;
        } else if (app.got_subcommand(c_shape)) {
            cfg.command = Command::Shape;
        } else if (app.got_subcommand(c_curves)) {
            cfg.command = Command::Curves;
        } else if (app.got_subcommand(c_moments)) {
            cfg.command = Command::Moments;
        }
    } catch (const std::exception& e) {
        if (cfg.format == Format::Json) {
            err << json{{"error", {{"type", "validation"}, {"message", e.what()}}}}.dump()
                << "\n";
        } else {
            err << "error: " << e.what() << "\n";
        }
        return kExitValidation;
    }

    return run(cfg, out, err);
}

}  // namespace lg::cli
