#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "invstat/invstat.hpp"

namespace invstat::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::vector<double> rhos{0.05, -0.05};
    std::vector<std::int64_t> window_lengths = default_window_lengths();
    int bins = 8;
    std::optional<std::uint64_t> seed;
    int replicates = 1;
    std::string algorithm = to_string(scramble_algorithm::fisher_yates_mt19937_64);
    std::string out;
    std::string format = "both"; // json | csv | both
    std::int64_t t_max = 0;      // 0 = span of the observed waits
    std::int64_t min_crossings = 30;
    bool leave_one_out = false;
    bool equalize = false;
    bool emit_series = false;
    std::string model; // simulate: gbm | regime
    GbmSpec gbm;
    RegimeSpec regime;
};

bool want_json(const RunConfig& c) { return c.format != "csv"; }
bool want_csv(const RunConfig& c) { return c.format != "json"; }

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
}

std::string rho_tag(double rho) {
    return (rho < 0 ? "m" : "p") + format_double(std::fabs(rho));
}

// Canonical flag list that reproduces this run exactly; embedded in every
// output so a run can be replayed from its own report.
std::vector<std::string> canonical_argv(const RunConfig& c) {
    std::vector<std::string> argv{c.command};
    auto flag = [&](const std::string& name, const std::string& value) {
        argv.push_back(name);
        argv.push_back(value);
    };
    for (const auto& in : c.inputs) flag("--input", in);
    if (c.command == "fpt" || c.command == "scramble")
        for (const double r : c.rhos) flag("--rho", format_double(r));
    if (c.command == "fpt" || c.command == "scramble") {
        flag("--t-max", std::to_string(c.t_max));
        flag("--min-crossings", std::to_string(c.min_crossings));
    }
    if (c.command == "scramble") {
        flag("--seed", std::to_string(*c.seed));
        flag("--replicates", std::to_string(c.replicates));
        flag("--algorithm", c.algorithm);
        if (c.emit_series) argv.push_back("--emit-series");
    }
    if (c.command == "index" && c.leave_one_out) argv.push_back("--leave-one-out");
    if (c.command == "dependence") {
        std::string ls;
        for (const auto L : c.window_lengths) ls += (ls.empty() ? "" : ",") + std::to_string(L);
        flag("--window-lengths", ls);
        flag("--bins", std::to_string(c.bins));
        if (c.equalize) {
            argv.push_back("--equalize");
            flag("--seed", std::to_string(*c.seed));
        }
    }
    if (c.command == "simulate") {
        flag("--model", c.model);
        flag("--seed", std::to_string(*c.seed));
        if (c.model == "gbm") {
            flag("--mu", format_double(c.gbm.mu));
            flag("--sigma", format_double(c.gbm.sigma));
            flag("--days", std::to_string(c.gbm.days));
        } else {
            flag("--stocks", std::to_string(c.regime.stocks));
            flag("--days", std::to_string(c.regime.days));
            flag("--p-down", format_double(c.regime.p_down));
            flag("--regime-mean-length", format_double(c.regime.regime_mean_length));
            flag("--rho-up", format_double(c.regime.rho_up));
            flag("--rho-down", format_double(c.regime.rho_down));
            flag("--drift-up", format_double(c.regime.drift_up));
            flag("--drift-down", format_double(c.regime.drift_down));
            flag("--sigma", format_double(c.regime.sigma));
        }
    }
    flag("--out", c.out);
    flag("--format", c.format);
    return argv;
}

json config_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["argv"] = canonical_argv(c);
    if (!c.inputs.empty()) j["inputs"] = c.inputs;
    if (c.command == "fpt" || c.command == "scramble") {
        j["rho"] = c.rhos;
        j["t_max"] = c.t_max;
        j["min_crossings"] = c.min_crossings;
    }
    if (c.command == "scramble") {
        j["seed"] = *c.seed;
        j["replicates"] = c.replicates;
        j["algorithm"] = c.algorithm;
    }
    if (c.command == "dependence") {
        j["window_lengths"] = c.window_lengths;
        j["bins"] = c.bins;
        j["equalize"] = c.equalize;
        if (c.equalize) j["seed"] = *c.seed;
    }
    if (c.command == "simulate") {
        j["model"] = c.model;
        j["seed"] = *c.seed;
        if (c.model == "gbm") {
            j["mu"] = c.gbm.mu;
            j["sigma"] = c.gbm.sigma;
            j["days"] = c.gbm.days;
        } else {
            j["stocks"] = c.regime.stocks;
            j["days"] = c.regime.days;
            j["p_down"] = c.regime.p_down;
            j["regime_mean_length"] = c.regime.regime_mean_length;
            j["rho_up"] = c.regime.rho_up;
            j["rho_down"] = c.regime.rho_down;
            j["drift_up"] = c.regime.drift_up;
            j["drift_down"] = c.regime.drift_down;
            j["sigma"] = c.regime.sigma;
        }
    }
    j["out"] = c.out;
    j["format"] = c.format;
    return j;
}

std::string config_comment(const RunConfig& c) {
    json j;
    j["version"] = toolkit_version;
    j["config"] = config_json(c);
    return "invstat-config: " + j.dump();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error(path.string() + ": cannot open for writing");
    out << text;
}

void write_summary(const RunConfig& c, json body) {
    json j;
    j["version"] = toolkit_version;
    j["config"] = config_json(c);
    j.update(body);
    write_text(fs::path(c.out) / "summary.json", j.dump(2) + "\n");
}

fs::path ensure_out_dir(const RunConfig& c) {
    if (c.out.empty()) throw validation_error("--out is required");
    fs::path dir(c.out);
    fs::create_directories(dir);
    return dir;
}

PricePanel load_panel(const RunConfig& c, PanelAlignment* alignment = nullptr) {
    if (c.inputs.size() == 1) return read_price_panel(c.inputs[0]);
    auto [panel, align] = read_panel_from_series_files(c.inputs);
    if (alignment) *alignment = align;
    return panel;
}

// ---------------------------------------------------------------- fpt ----

struct BarrierAnalysis {
    double rho = 0.0;
    FptSamples samples;
    std::int64_t crossings = 0; // pooled over replicates in the scramble pipeline
    EmpiricalPmf pmf;
    std::optional<GenGammaFit> fit;
    std::string fit_skip_reason;
    std::int64_t mode_empirical = 0;
    std::optional<double> mode_fitted;
};

BarrierAnalysis analyze_barrier(const PriceSeries& series, double rho, std::int64_t t_max) {
    BarrierAnalysis a;
    a.rho = rho;
    a.samples = first_passage_times(series, Barrier(rho));
    a.crossings = static_cast<std::int64_t>(a.samples.waits.size());
    a.pmf = empirical_pmf(a.samples, t_max); // throws numeric_error when nothing crosses
    GenGammaFitOptions fit_opts;
    if (a.pmf.positive_support_points() >= fit_opts.min_support_points) {
        a.fit = fit_gen_gamma(a.pmf, fit_opts);
        const ModeEstimates modes = most_likely_time(*a.fit, a.pmf);
        a.mode_empirical = modes.empirical;
        a.mode_fitted = modes.fitted;
    } else {
        a.fit_skip_reason = "only " + std::to_string(a.pmf.positive_support_points()) +
                            " support points with positive mass, need >= " +
                            std::to_string(fit_opts.min_support_points);
        a.mode_empirical = empirical_mode(a.pmf);
    }
    return a;
}

json barrier_json(const BarrierAnalysis& a) {
    json j;
    j["rho"] = a.rho;
    j["starts_total"] = a.samples.starts_total;
    j["starts_censored"] = a.samples.starts_censored;
    j["crossings"] = a.crossings;
    j["t_max"] = a.pmf.t_max;
    j["truncated"] = a.pmf.truncated;
    if (a.pmf.truncated) j["truncated_samples"] = a.pmf.truncated_samples;
    j["empirical_mode"] = a.mode_empirical;
    if (a.fit) {
        json f;
        f["a"] = a.fit->params.a;
        f["d"] = a.fit->params.d;
        f["p"] = a.fit->params.p;
        f["t0"] = a.fit->params.t0;
        f["objective"] = a.fit->objective;
        f["converged"] = a.fit->converged;
        if (a.mode_fitted) f["mode"] = *a.mode_fitted;
        j["gen_gamma_fit"] = f;
    } else {
        j["fit_skipped"] = a.fit_skip_reason;
    }
    return j;
}

void write_pmf_csv(const fs::path& path, const RunConfig& c, const BarrierAnalysis& a) {
    std::string text = "# " + config_comment(c) + "\n";
    text += "t,mass,fitted_density\n";
    for (std::int64_t t = 1; t <= a.pmf.t_max; ++t) {
        text += std::to_string(t);
        text += ',';
        text += format_double(a.pmf.at(t));
        text += ',';
        text += a.fit ? format_double(gen_gamma_pdf(static_cast<double>(t), a.fit->params))
                      : "nan";
        text += '\n';
    }
    write_text(path, text);
}

// Pairs +rho / -rho barriers of equal magnitude into asymmetry summaries.
json asymmetry_json(const std::vector<BarrierAnalysis>& analyses, std::int64_t min_crossings) {
    json list = json::array();
    std::map<double, std::pair<const BarrierAnalysis*, const BarrierAnalysis*>> by_abs;
    for (const auto& a : analyses) {
        auto& slot = by_abs[std::fabs(a.rho)];
        (a.rho > 0 ? slot.first : slot.second) = &a;
    }
    for (const auto& [abs_rho, pair] : by_abs) {
        if (!pair.first || !pair.second) continue;
        json j;
        j["rho_abs"] = abs_rho;
        j["definition"] = "empirical_mode(+rho) - empirical_mode(-rho); toolkit convention";
        const std::int64_t up_n = pair.first->crossings;
        const std::int64_t down_n = pair.second->crossings;
        if (up_n < min_crossings || down_n < min_crossings) {
            const bool up_deficient = up_n < min_crossings;
            j["unavailable"] =
                "barrier rho=" + format_double(up_deficient ? abs_rho : -abs_rho) + ": only " +
                std::to_string(up_deficient ? up_n : down_n) + " crossings, need >= " +
                std::to_string(min_crossings);
        } else {
            j["value"] = static_cast<double>(pair.first->mode_empirical -
                                             pair.second->mode_empirical);
            if (pair.first->mode_fitted && pair.second->mode_fitted)
                j["fitted_mode_difference"] = *pair.first->mode_fitted - *pair.second->mode_fitted;
        }
        list.push_back(j);
    }
    return list;
}

int cmd_fpt(const RunConfig& c) {
    ensure_out_dir(c);
    const PriceSeries series = read_price_series(c.inputs.at(0));
    std::vector<BarrierAnalysis> analyses;
    for (const double rho : c.rhos) analyses.push_back(analyze_barrier(series, rho, c.t_max));

    if (want_csv(c))
        for (const auto& a : analyses)
            write_pmf_csv(fs::path(c.out) / ("fpt_" + rho_tag(a.rho) + ".csv"), c, a);
    if (want_json(c)) {
        json body;
        body["series"] = {{"label", series.label()}, {"days", series.days()}};
        body["barriers"] = json::array();
        for (const auto& a : analyses) body["barriers"].push_back(barrier_json(a));
        body["asymmetry"] = asymmetry_json(analyses, c.min_crossings);
        write_summary(c, body);
    }
    return 0;
}

// ----------------------------------------------------------- scramble ----

int cmd_scramble(const RunConfig& c) {
    ensure_out_dir(c);
    const PriceSeries series = read_price_series(c.inputs.at(0));
    const ReturnSeries returns = log_returns(series);
    std::vector<double> sorted_input = returns.values();
    std::sort(sorted_input.begin(), sorted_input.end());

    const scramble_algorithm algorithm = parse_scramble_algorithm(c.algorithm);
    bool multiset_preserved = true;
    std::vector<std::uint64_t> seeds;
    std::map<double, std::vector<EmpiricalPmf>> pmfs_by_rho;
    json replicate_blocks = json::array();

    for (int r = 0; r < c.replicates; ++r) {
        const std::uint64_t replicate_seed = *c.seed + static_cast<std::uint64_t>(r);
        seeds.push_back(replicate_seed);
        const ScrambleSpec spec{replicate_seed, algorithm};
        const ReturnSeries permuted = permute_returns(returns, spec);
        std::vector<double> sorted_permuted = permuted.values();
        std::sort(sorted_permuted.begin(), sorted_permuted.end());
        multiset_preserved = multiset_preserved && (sorted_permuted == sorted_input);
        const PriceSeries scrambled = reconstruct(permuted, series.label() + "~scrambled");

        if (c.emit_series)
            write_price_series((fs::path(c.out) / ("scrambled_r" + std::to_string(r) + ".csv")).string(),
                               scrambled, {config_comment(c)});

        json block;
        block["seed"] = replicate_seed;
        block["barriers"] = json::array();
        for (const double rho : c.rhos) {
            const FptSamples samples = first_passage_times(scrambled, Barrier(rho));
            const EmpiricalPmf pmf = empirical_pmf(samples, c.t_max);
            json b;
            b["rho"] = rho;
            b["crossings"] = samples.waits.size();
            b["starts_censored"] = samples.starts_censored;
            b["empirical_mode"] = empirical_mode(pmf);
            block["barriers"].push_back(b);
            pmfs_by_rho[rho].push_back(pmf);
        }
        replicate_blocks.push_back(block);
    }

    // Pooled view: average the replicate distributions, then fit and
    // summarize exactly like the fpt pipeline.
    std::vector<BarrierAnalysis> averaged;
    for (const double rho : c.rhos) {
        BarrierAnalysis a;
        a.rho = rho;
        a.pmf = average_pmfs(pmfs_by_rho.at(rho));
        a.crossings = a.pmf.n_samples; // pooled over replicates
        a.samples.rho = rho;
        GenGammaFitOptions fit_opts;
        if (a.pmf.positive_support_points() >= fit_opts.min_support_points) {
            a.fit = fit_gen_gamma(a.pmf, fit_opts);
            const ModeEstimates modes = most_likely_time(*a.fit, a.pmf);
            a.mode_empirical = modes.empirical;
            a.mode_fitted = modes.fitted;
        } else {
            a.fit_skip_reason = "only " + std::to_string(a.pmf.positive_support_points()) +
                                " support points with positive mass";
            a.mode_empirical = empirical_mode(a.pmf);
        }
        averaged.push_back(std::move(a));
    }

    if (want_csv(c))
        for (const auto& a : averaged)
            write_pmf_csv(fs::path(c.out) / ("scramble_" + rho_tag(a.rho) + ".csv"), c, a);
    if (want_json(c)) {
        json body;
        body["series"] = {{"label", series.label()}, {"days", series.days()}};
        body["replicates"] = c.replicates;
        body["seeds"] = seeds;
        body["return_multiset_preserved"] = multiset_preserved;
        body["replicate_results"] = replicate_blocks;
        body["averaged_barriers"] = json::array();
        for (const auto& a : averaged) {
            json j = barrier_json(a);
            j.erase("starts_total"); // pooled pmf has no single scan behind it
            j.erase("starts_censored");
            body["averaged_barriers"].push_back(j);
        }
        body["asymmetry"] = asymmetry_json(averaged, c.min_crossings);
        write_summary(c, body);
    }
    return 0;
}

// -------------------------------------------------------------- index ----

int cmd_index(const RunConfig& c) {
    ensure_out_dir(c);
    PanelAlignment alignment;
    const PricePanel panel = load_panel(c, &alignment);
    const PriceSeries index = build_index(panel);

    write_price_series((fs::path(c.out) / "index.csv").string(), index, {config_comment(c)});
    if (c.leave_one_out)
        for (std::size_t n = 0; n < panel.stocks(); ++n)
            write_price_series(
                (fs::path(c.out) / ("loo_" + panel.name(n) + ".csv")).string(),
                leave_one_out_index(panel, n), {config_comment(c)});

    if (want_json(c)) {
        json body;
        body["stocks"] = panel.names();
        body["days"] = panel.days();
        body["index_day0"] = index.front();
        if (!alignment.dropped_per_file.empty()) {
            json dropped = json::object();
            for (const auto& [file, n] : alignment.dropped_per_file) dropped[file] = n;
            body["aligned_days"] = panel.size();
            body["dropped_days_per_file"] = dropped;
        }
        write_summary(c, body);
    }
    return 0;
}

// --------------------------------------------------------- dependence ----

int cmd_dependence(const RunConfig& c) {
    ensure_out_dir(c);
    const PricePanel panel = load_panel(c);
    DependenceOptions opts;
    opts.binning.bins_per_margin = c.bins;
    opts.equalize_sets = c.equalize;
    opts.equalize_seed = c.seed.value_or(0);
    const DependenceReport report = dependence_sweep(panel, c.window_lengths, opts);

    if (want_csv(c)) {
        std::string text = "# " + config_comment(c) + "\n";
        text += "L,M_U,M_D,C_U,C_D,U_days,D_days\n";
        for (const auto& row : report.rows) {
            if (!row.feasible) continue;
            text += std::to_string(row.L) + ',' + format_double(row.measures.mean_mi_up) + ',' +
                    format_double(row.measures.mean_mi_down) + ',' +
                    format_double(row.measures.mean_corr_up) + ',' +
                    format_double(row.measures.mean_corr_down) + ',' +
                    std::to_string(row.measures.up_days) + ',' +
                    std::to_string(row.measures.down_days) + '\n';
        }
        write_text(fs::path(c.out) / "dependence.csv", text);
    }
    if (want_json(c)) {
        json body;
        body["estimator"] = {{"mutual_information", "plug-in"},
                             {"binning", binning_scheme_id},
                             {"bins_per_margin", c.bins},
                             {"log_base", "e (nats)"},
                             {"min_samples_per_set", 10 * c.bins},
                             {"equalize_sets", c.equalize}};
        body["stocks"] = panel.names();
        body["rows"] = json::array();
        for (const auto& row : report.rows) {
            json j;
            j["L"] = row.L;
            j["feasible"] = row.feasible;
            if (row.feasible) {
                j["M_U"] = row.measures.mean_mi_up;
                j["M_D"] = row.measures.mean_mi_down;
                j["C_U"] = row.measures.mean_corr_up;
                j["C_D"] = row.measures.mean_corr_down;
                j["U_days"] = row.measures.up_days;
                j["D_days"] = row.measures.down_days;
            } else {
                j["skip_reason"] = row.skip_reason;
            }
            body["rows"].push_back(j);
        }
        write_summary(c, body);
    }
    return 0;
}

// ------------------------------------------------------------ simulate ----

int cmd_simulate(const RunConfig& c) {
    if (c.out.empty()) throw validation_error("--out is required");
    const fs::path out(c.out);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    if (c.model == "gbm") {
        GbmSpec spec = c.gbm;
        spec.seed = *c.seed;
        write_price_series(c.out, generate_gbm(spec), {config_comment(c)});
    } else if (c.model == "regime") {
        RegimeSpec spec = c.regime;
        spec.seed = *c.seed;
        write_price_panel(c.out, generate_regime_panel(spec).panel, {config_comment(c)});
    } else {
        throw validation_error("unknown model '" + c.model + "' (expected gbm or regime)");
    }
    return 0;
}

// -------------------------------------------------------------- driver ----

void add_common_flags(CLI::App* cmd, RunConfig& c, bool out_is_dir = true) {
    cmd->add_option("--out", c.out, out_is_dir ? "Output directory" : "Output CSV file")
        ->required();
    cmd->add_option("--format", c.format, "Outputs to write: json, csv or both")
        ->check(CLI::IsMember({"json", "csv", "both"}))
        ->capture_default_str();
}

} // namespace

int run(const std::vector<std::string>& args) {
    RunConfig c;
    CLI::App app{"invstat: inverse-statistics toolkit for daily price series"};
    app.require_subcommand(1);

    CLI::App* fpt = app.add_subcommand(
        "fpt", "First-passage-time distributions, generalized gamma fits, asymmetry");
    fpt->add_option("--input", c.inputs, "Series CSV")->required()->expected(1);
    fpt->add_option("--rho", c.rhos, "Log-return barrier levels (repeatable)")
        ->delimiter(',')
        ->capture_default_str();
    fpt->add_option("--t-max", c.t_max, "Truncate pmf support (0 = auto)")
        ->capture_default_str();
    fpt->add_option("--min-crossings", c.min_crossings,
                    "Crossings required per barrier for the asymmetry statistic")
        ->capture_default_str();
    add_common_flags(fpt, c);

    CLI::App* scr = app.add_subcommand(
        "scramble", "Analyze seeded permutation surrogates with the fpt pipeline");
    scr->add_option("--input", c.inputs, "Series CSV")->required()->expected(1);
    scr->add_option("--rho", c.rhos, "Log-return barrier levels")
        ->delimiter(',')
        ->capture_default_str();
    scr->add_option("--seed", c.seed, "Scramble seed (default: OS entropy, recorded)");
    scr->add_option("--replicates", c.replicates, "Scrambled realizations to average over")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    scr->add_option("--algorithm", c.algorithm, "Permutation algorithm")
        ->check(CLI::IsMember({"fisher-yates-mt19937_64", "identity"}))
        ->capture_default_str();
    scr->add_flag("--emit-series", c.emit_series, "Also write each scrambled series");
    scr->add_option("--t-max", c.t_max, "Truncate pmf support (0 = auto)")
        ->capture_default_str();
    scr->add_option("--min-crossings", c.min_crossings,
                    "Crossings required per barrier for the asymmetry statistic")
        ->capture_default_str();
    add_common_flags(scr, c);

    CLI::App* idx = app.add_subcommand(
        "index", "Equal-weight artificial index from a price panel");
    idx->add_option("--input", c.inputs, "Wide panel CSV, or one series CSV per stock")
        ->required()
        ->expected(1, -1);
    idx->add_flag("--leave-one-out", c.leave_one_out, "Also write every n-th index");
    add_common_flags(idx, c);

    CLI::App* dep = app.add_subcommand(
        "dependence", "Mean mutual information and correlation over up/down windows");
    dep->add_option("--input", c.inputs, "Wide panel CSV, or one series CSV per stock")
        ->required()
        ->expected(1, -1);
    dep->add_option("--window-lengths", c.window_lengths, "Window lengths L to sweep")
        ->delimiter(',');
    dep->add_option("--bins", c.bins, "Quantile bins per margin for the plug-in estimator")
        ->check(CLI::Range(2, 1000))
        ->capture_default_str();
    dep->add_flag("--equalize", c.equalize,
                  "Subsample the larger of U/D to the smaller one's size (seeded)");
    dep->add_option("--seed", c.seed, "Subsampling seed when --equalize is set");
    add_common_flags(dep, c);

    CLI::App* sim = app.add_subcommand("simulate", "Seeded synthetic series and panels");
    sim->add_option("--model", c.model, "gbm or regime")
        ->required()
        ->check(CLI::IsMember({"gbm", "regime"}));
    sim->add_option("--seed", c.seed, "Generator seed (default: OS entropy, recorded)");
    sim->add_option("--mu", c.gbm.mu, "GBM drift per day")->capture_default_str();
    sim->add_option("--sigma", c.gbm.sigma, "Daily volatility")->capture_default_str();
    sim->add_option("--days", c.gbm.days, "Return days T")->capture_default_str();
    sim->add_option("--stocks", c.regime.stocks, "Regime panel: number of stocks")
        ->capture_default_str();
    sim->add_option("--p-down", c.regime.p_down, "Daily chance the up regime flips down")
        ->capture_default_str();
    sim->add_option("--regime-mean-length", c.regime.regime_mean_length,
                    "Mean downturn length in days")
        ->capture_default_str();
    sim->add_option("--rho-up", c.regime.rho_up, "Cross-correlation in the up regime")
        ->capture_default_str();
    sim->add_option("--rho-down", c.regime.rho_down, "Cross-correlation in downturns")
        ->capture_default_str();
    sim->add_option("--drift-up", c.regime.drift_up, "Drift per day in the up regime")
        ->capture_default_str();
    sim->add_option("--drift-down", c.regime.drift_down, "Drift per day in downturns")
        ->capture_default_str();
    add_common_flags(sim, c, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help and friends
            return app.exit(e);
        }
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*fpt) c.command = "fpt";
        if (*scr) c.command = "scramble";
        if (*idx) c.command = "index";
        if (*dep) c.command = "dependence";
        if (*sim) c.command = "simulate";

        // analysis commands draw no hidden entropy; generators get a fresh
        // recorded seed when none is given
        if ((c.command == "scramble" || c.command == "simulate") && !c.seed)
            c.seed = entropy_seed();
        if (c.command == "dependence" && c.equalize && !c.seed) c.seed = entropy_seed();

        // GBM days flag doubles for the regime model
        c.regime.days = c.gbm.days;

        if (c.command == "fpt") return cmd_fpt(c);
        if (c.command == "scramble") return cmd_scramble(c);
        if (c.command == "index") return cmd_index(c);
        if (c.command == "dependence") return cmd_dependence(c);
        if (c.command == "simulate") return cmd_simulate(c);
        throw validation_error("no command given");
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace invstat::cli
