#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "predpower/distinguishability.hpp"
#include "predpower/errors.hpp"
#include "predpower/estimation.hpp"
#include "predpower/montecarlo.hpp"
#include "predpower/superposition.hpp"
#include "predpower/transforms.hpp"
#include "sim_config.hpp"
#include "table.hpp"

namespace predpower::cli {
namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EstimateArgs {
    std::int64_t clicks = 0;
    std::int64_t runs = 0;
    bool adjusted = false;
};

struct TransformArgs {
    std::string name;
    std::optional<double> p;
    std::optional<double> chi;
    std::int64_t runs = 1;
    std::optional<double> scale;
    std::optional<double> offset;
};

struct DistinguishArgs {
    std::int64_t clicks = 0;
    std::int64_t runs = 0;
    double separation = 1.0;
};

struct ScanArgs {
    std::string transform;
    std::int64_t max_runs = 0;
};

struct TwoArmArgs {
    std::int64_t left_clicks = 0;
    std::int64_t left_runs = 0;
    std::int64_t right_clicks = 0;
    std::int64_t right_runs = 0;
};

struct PredictArgs {
    TwoArmArgs arms;
    std::string mode;
    std::optional<std::string> sign;
    std::optional<double> phi;
    bool clamp = false;
    std::string metric = "chi";
};

struct InferArgs {
    TwoArmArgs arms;
    double p_tot = 0.0;
};

struct SimulateArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
};

void add_arm_options(CLI::App& cmd, TwoArmArgs& arms) {
    cmd.add_option("--nl", arms.left_clicks, "Clicks with only the left path open")->required();
    cmd.add_option("--l", arms.left_runs, "Runs with only the left path open")->required();
    cmd.add_option("--nr", arms.right_clicks, "Clicks with only the right path open")->required();
    cmd.add_option("--r", arms.right_runs, "Runs with only the right path open")->required();
}

std::uint64_t fallback_seed() {
    const char* text = std::getenv(kSeedEnvVar);
    if (text == nullptr || *text == '\0') {
        return kDefaultSeed;
    }
    std::uint64_t seed = 0;
    const std::string_view view(text);
    const auto [end, ec] = std::from_chars(view.data(), view.data() + view.size(), seed);
    if (ec != std::errc{} || end != view.data() + view.size()) {
        throw ValidationError(std::string(kSeedEnvVar) + " must be an unsigned integer, got '" +
                              std::string(view) + "'");
    }
    return seed;
}

Table cmd_estimate(const EstimateArgs& args) {
    const TrialRecord record(args.clicks, args.runs);
    const auto est = estimate(record, args.adjusted ? Estimator::adjusted : Estimator::plain);
    Table table{{"clicks", "runs", "p", "delta_p"}, {}};
    table.add({record.clicks(), record.runs(), est.p, est.delta_p});
    return table;
}

Table cmd_transform(const TransformArgs& args) {
    const bool custom = args.scale || args.offset;
    if (custom && args.name != "arcsin") {
        throw ValidationError("--C and --D apply only to the arcsin transform");
    }
    const Transform transform =
        custom ? arcsin_transform(args.scale.value_or(kCanonicalScale),
                                  args.offset.value_or(kCanonicalOffset))
               : builtin_transform(args.name);

    if (args.chi) {
        if (args.p) {
            throw ValidationError("give either --p or --chi, not both");
        }
        Table table{{"transform", "chi", "p"}, {}};
        table.add({transform.name(), *args.chi, transform.inverse(*args.chi)});
        return table;
    }
    if (!args.p) {
        throw ValidationError("transform needs --p (forward) or --chi (inverse)");
    }

    const auto est = estimate_at(*args.p, args.runs);
    Table table{{"transform", "p", "value", "derivative", "runs", "propagated"}, {}};
    std::vector<Cell> row = {transform.name(), est.p,        transform(est.p),
                             transform.derivative(est.p), est.runs, propagate(est, transform)};
    if (args.name == "amplitude") {
        const auto alpha = amplitude_from_p(est.p, est.runs);
        table.columns.insert(table.columns.end(), {"alpha_re", "alpha_im", "delta_alpha"});
        row.insert(row.end(), {alpha.re(), alpha.im(), alpha.delta});
    }
    table.add(std::move(row));
    return table;
}

Table cmd_distinguish(const DistinguishArgs& args) {
    const TrialRecord record(args.clicks, args.runs);
    Table table{{"clicks", "runs", "theta", "theta_quadrature", "chi", "distinguishable"}, {}};
    table.add({record.clicks(), record.runs(), theta_of(record).theta,
               theta_by_quadrature(record).theta, theta_chi_correspondence(record),
               count_distinguishable(record.runs(), args.separation)});
    return table;
}

Table cmd_scan(const ScanArgs& args) {
    const auto violations = monotonicity_scan(builtin_transform(args.transform), args.max_runs);
    Table table{{"runs", "clicks", "continuation", "delta_before", "delta_after"}, {}};
    for (const auto& v : violations) {
        table.add({v.runs, v.clicks,
                   std::string(v.continuation == Detector::first ? "detector1" : "detector2"),
                   v.delta_before, v.delta_after});
    }
    return table;
}

std::pair<ArmMeasurement, ArmMeasurement> measure(const TwoArmArgs& arms) {
    return {measure_arm(TrialRecord(arms.left_clicks, arms.left_runs)),
            measure_arm(TrialRecord(arms.right_clicks, arms.right_runs))};
}

Table cmd_predict(const PredictArgs& args) {
    const auto [left, right] = measure(args.arms);
    Prediction prediction;
    Cell sign_cell;
    Cell phi_cell;
    if (args.mode == "real") {
        if (!args.sign || args.phi) {
            throw ValidationError("real mode needs --sign plus|minus and takes no --phi");
        }
        if (args.metric != "chi") {
            throw ValidationError("real mode reports only the chi metric");
        }
        const Sign sign = *args.sign == "plus" ? Sign::plus : Sign::minus;
        prediction = predict_real(left, right, sign);
        sign_cell = *args.sign;
    } else {
        if (!args.phi || args.sign) {
            throw ValidationError("complex mode needs --phi and takes no --sign");
        }
        prediction = predict_complex(
            left, right, *args.phi, args.clamp ? RangePolicy::clamp : RangePolicy::reject,
            args.metric == "chi" ? UncertaintyMetric::chi : UncertaintyMetric::amplitude);
        phi_cell = std::get<Phase>(prediction.mode).radians;
    }

    Table table{{"mode", "p_left", "p_right", "sign", "phi", "p_tot_raw", "p_tot", "clamped",
                 "delta_chi_tot", "metric", "delta_p_tot"},
                {}};
    table.add({args.mode, left.est.p, right.est.p, sign_cell, phi_cell, prediction.p_tot_raw,
               prediction.p_tot, prediction.clamped, prediction.delta_chi_tot, args.metric,
               prediction.delta_p_tot});
    return table;
}

Table cmd_infer_phase(const InferArgs& args) {
    const auto [left, right] = measure(args.arms);
    const auto phase = infer_phase(left, right, args.p_tot);
    Table table{{"p_left", "p_right", "p_tot", "phi", "phi_mirrored"}, {}};
    table.add({left.est.p, right.est.p, args.p_tot, phase.principal, phase.mirrored});
    return table;
}

struct SimulateResult {
    Table table;
    bool all_ok = true;
};

SimulateResult cmd_simulate(const SimulateArgs& args) {
    std::ifstream file(args.config);
    if (!file) {
        throw IoError("cannot read config '" + args.config + "'");
    }
    auto configs = parse_sim_config(file, args.config, args.seed, fallback_seed());
    for (auto& config : configs) {
        config.threads = args.threads;
        validate(config);
    }
    const auto entries = sweep(configs);

    SimulateResult result;
    result.table.columns = {"kind",         "transform",    "p",
                            "N",            "p_right",      "N_right",
                            "sign",         "replications", "seed",
                            "empirical_mean", "empirical_sd", "predicted_sd",
                            "relative_error", "error"};
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const auto& config = configs[i];
        std::vector<Cell> row;
        if (const auto* single = std::get_if<SingleArmExperiment>(&config.experiment)) {
            row = {std::string("single"), single->transform, single->p, single->runs,
                   std::monostate{}, std::monostate{}, std::monostate{}};
        } else {
            const auto& two = std::get<TwoArmExperiment>(config.experiment);
            row = {std::string("two-arm"), std::string("arcsin"), two.p_left, two.left_runs,
                   two.p_right, two.right_runs,
                   std::string(two.sign == Sign::plus ? "plus" : "minus")};
        }
        row.emplace_back(config.replications);
        row.emplace_back(static_cast<std::int64_t>(config.seed));
        if (const auto& entry = entries[i]; entry.ok()) {
            row.insert(row.end(), {entry.report->empirical_mean, entry.report->empirical_sd,
                                   entry.report->predicted_sd, entry.report->relative_error,
                                   std::monostate{}});
        } else {
            result.all_ok = false;
            row.insert(row.end(), {std::monostate{}, std::monostate{}, std::monostate{},
                                   std::monostate{}, entry.error});
        }
        result.table.add(std::move(row));
    }
    return result;
}

void emit(const Table& table, Format format, const std::string& output, std::ostream& out) {
    std::ostringstream buffer;
    write_table(buffer, table, format);
    if (output.empty() || output == "-") {
        out << buffer.str();
        return;
    }
    std::ofstream file(output, std::ios::binary | std::ios::trunc);
    if (!file || !(file << buffer.str()) || !file.flush()) {
        throw IoError("cannot write output '" + output + "'");
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Estimate, transform, combine and simulate binomial click data", "predpower"};
    app.require_subcommand(1);

    std::string format_name = "csv";
    std::string output;
    app.add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    app.add_option("-o,--output", output, "Output file (default: standard output)");

    EstimateArgs estimate_args;
    auto* estimate_cmd = app.add_subcommand("estimate", "Probability and uncertainty from counts");
    estimate_cmd->add_option("--clicks", estimate_args.clicks, "Clicks in detector 1")->required();
    estimate_cmd->add_option("--runs", estimate_args.runs, "Number of runs")->required();
    estimate_cmd->add_flag("--adjusted", estimate_args.adjusted,
                           "Use (clicks + 1/2) / (runs + 1) instead of clicks / runs");

    TransformArgs transform_args;
    auto* transform_cmd = app.add_subcommand("transform", "Evaluate a built-in transform");
    transform_cmd->add_option("--name", transform_args.name, "Transform name")
        ->required()
        ->check(CLI::IsMember(builtin_transform_names()));
    transform_cmd->add_option("--p", transform_args.p, "Probability (forward map)");
    transform_cmd->add_option("--chi", transform_args.chi, "Transformed value (inverse map)");
    transform_cmd->add_option("--runs", transform_args.runs, "Runs for the propagated uncertainty");
    transform_cmd->add_option("--C", transform_args.scale, "arcsin scale C");
    transform_cmd->add_option("--D", transform_args.offset, "arcsin offset D");

    DistinguishArgs distinguish_args;
    auto* distinguish_cmd = app.add_subcommand("distinguish", "Distinguishability coordinate theta");
    distinguish_cmd->add_option("--clicks", distinguish_args.clicks, "Clicks in detector 1")->required();
    distinguish_cmd->add_option("--runs", distinguish_args.runs, "Number of runs")->required();
    distinguish_cmd->add_option("--separation", distinguish_args.separation,
                                "Cell width along theta");

    ScanArgs scan_args;
    auto* scan_cmd = app.add_subcommand("scan", "List runs where one more run does not shrink the uncertainty");
    scan_cmd->add_option("--transform", scan_args.transform, "Transform name")
        ->required()
        ->check(CLI::IsMember(builtin_transform_names()));
    scan_cmd->add_option("--max-runs", scan_args.max_runs, "Largest N scanned")->required();

    PredictArgs predict_args;
    auto* predict_cmd = app.add_subcommand("predict", "Predict the both-paths-open probability");
    add_arm_options(*predict_cmd, predict_args.arms);
    predict_cmd->add_option("--mode", predict_args.mode, "real or complex")
        ->required()
        ->check(CLI::IsMember({"real", "complex"}));
    predict_cmd->add_option("--sign", predict_args.sign, "Real mode sign")
        ->check(CLI::IsMember({"plus", "minus"}));
    predict_cmd->add_option("--phi", predict_args.phi, "Complex mode phase in radians");
    predict_cmd->add_flag("--clamp", predict_args.clamp, "Clamp an out-of-range prediction into [0,1]");
    predict_cmd->add_option("--metric", predict_args.metric, "Uncertainty metric: chi or amplitude")
        ->check(CLI::IsMember({"chi", "amplitude"}));

    InferArgs infer_args;
    auto* infer_cmd = app.add_subcommand("infer-phase", "Phase consistent with a measured p_tot");
    add_arm_options(*infer_cmd, infer_args.arms);
    infer_cmd->add_option("--p-tot", infer_args.p_tot, "Measured both-open probability")->required();

    SimulateArgs simulate_args;
    auto* simulate_cmd = app.add_subcommand("simulate", "Run a Monte Carlo sweep from a JSON config");
    simulate_cmd->add_option("--config", simulate_args.config, "Sweep config file")->required();
    simulate_cmd->add_option("--seed", simulate_args.seed, "Base seed (overrides the config)");
    simulate_cmd->add_option("--threads", simulate_args.threads, "Worker threads (0: all cores)");

    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "predpower: error: " << e.what() << '\n';
        return kValidationFailure;
    }

    const Format format = format_name == "jsonl" ? Format::jsonl : Format::csv;
    try {
        int status = kSuccess;
        Table table;
        if (estimate_cmd->parsed()) {
            table = cmd_estimate(estimate_args);
        } else if (transform_cmd->parsed()) {
            table = cmd_transform(transform_args);
        } else if (distinguish_cmd->parsed()) {
            table = cmd_distinguish(distinguish_args);
        } else if (scan_cmd->parsed()) {
            table = cmd_scan(scan_args);
        } else if (predict_cmd->parsed()) {
            table = cmd_predict(predict_args);
        } else if (infer_cmd->parsed()) {
            table = cmd_infer_phase(infer_args);
        } else {
            auto result = cmd_simulate(simulate_args);
            table = std::move(result.table);
            if (!result.all_ok) {
                err << "predpower: error: some simulations failed; see the error column\n";
                status = kValidationFailure;
            }
        }
        emit(table, format, output, out);
        return status;
    } catch (const OutOfModelError& e) {
        err << "predpower: out-of-model: raw p_tot=" << format_double(e.raw_value())
            << " lies outside [0,1]; pass --clamp to report a clamped value\n";
        return kOutOfModel;
    } catch (const InconsistentDataError& e) {
        err << "predpower: out-of-model: " << e.what() << '\n';
        return kOutOfModel;
    } catch (const DivergentIntegralError& e) {
        err << "predpower: out-of-model: " << e.what() << '\n';
        return kOutOfModel;
    } catch (const NonDifferentiableError& e) {
        err << "predpower: out-of-model: " << e.what() << '\n';
        return kOutOfModel;
    } catch (const ValidationError& e) {
        err << "predpower: error: " << e.what() << '\n';
        return kValidationFailure;
    } catch (const IoError& e) {
        err << "predpower: io error: " << e.what() << '\n';
        return kIoFailure;
    }
}

}  // namespace predpower::cli
