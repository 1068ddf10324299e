#include "sim_config.hpp"

#include <set>

#include <json.hpp>

namespace predpower::cli {
namespace {

using nlohmann::json;

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& field, const std::string& message) const {
        throw ConfigError(source_ + ": " + field + ": " + message);
    }

    void only_keys(const json& object, const std::string& path,
                   const std::set<std::string>& allowed) const {
        for (const auto& [key, value] : object.items()) {
            if (!allowed.contains(key)) {
                fail(path + key, "unknown field");
            }
        }
    }

    std::int64_t positive_integer(const json& value, const std::string& field) const {
        if (!value.is_number_integer() || value.get<std::int64_t>() < 1) {
            fail(field, "expected a positive integer");
        }
        return value.get<std::int64_t>();
    }

    double probability(const json& value, const std::string& field) const {
        if (!value.is_number()) {
            fail(field, "expected a number in [0,1]");
        }
        const double p = value.get<double>();
        if (!(p >= 0.0 && p <= 1.0)) {
            fail(field, "expected a number in [0,1]");
        }
        return p;
    }

    std::string text(const json& value, const std::string& field) const {
        if (!value.is_string()) {
            fail(field, "expected a string");
        }
        return value.get<std::string>();
    }

    const json& required(const json& object, const std::string& key, const std::string& path) const {
        if (!object.contains(key)) {
            fail(path + key, "missing");
        }
        return object.at(key);
    }

private:
    std::string source_;
};

}  // namespace

std::vector<SimConfig> parse_sim_config(std::istream& in, const std::string& source,
                                        std::optional<std::uint64_t> seed_override,
                                        std::uint64_t fallback_seed) {
    const Reader reader(source);

    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(source + ": " + e.what());
    }
    if (!root.is_object()) {
        reader.fail("(root)", "expected an object");
    }
    reader.only_keys(root, "", {"seed", "replications", "experiments"});

    std::uint64_t seed = fallback_seed;
    if (root.contains("seed")) {
        const auto& value = root.at("seed");
        if (!value.is_number_unsigned()) {
            reader.fail("seed", "expected a nonnegative integer");
        }
        seed = value.get<std::uint64_t>();
    }
    if (seed_override) {
        seed = *seed_override;
    }

    std::optional<std::int64_t> default_replications;
    if (root.contains("replications")) {
        default_replications = reader.positive_integer(root.at("replications"), "replications");
    }

    const auto& experiments = reader.required(root, "experiments", "");
    if (!experiments.is_array() || experiments.empty()) {
        reader.fail("experiments", "expected a nonempty array");
    }

    std::vector<SimConfig> configs;
    for (std::size_t i = 0; i < experiments.size(); ++i) {
        const std::string path = "experiments[" + std::to_string(i) + "].";
        const json& entry = experiments[i];
        if (!entry.is_object()) {
            reader.fail(path.substr(0, path.size() - 1), "expected an object");
        }

        std::int64_t replications = 0;
        if (entry.contains("replications")) {
            replications = reader.positive_integer(entry.at("replications"), path + "replications");
        } else if (default_replications) {
            replications = *default_replications;
        } else {
            reader.fail(path + "replications", "missing (and no top-level default)");
        }
        if (replications < 2) {
            reader.fail(path + "replications", "must be at least 2");
        }

        const std::string kind = reader.text(reader.required(entry, "kind", path), path + "kind");
        if (kind == "single") {
            reader.only_keys(entry, path, {"kind", "transform", "runs", "p", "replications"});
            SingleArmExperiment base;
            base.runs = reader.positive_integer(reader.required(entry, "runs", path), path + "runs");
            if (entry.contains("transform")) {
                base.transform = reader.text(entry.at("transform"), path + "transform");
                try {
                    builtin_transform(base.transform);
                } catch (const ValidationError& e) {
                    reader.fail(path + "transform", e.what());
                }
            }
            const json& p = reader.required(entry, "p", path);
            std::vector<double> grid;
            if (p.is_array()) {
                if (p.empty()) {
                    reader.fail(path + "p", "expected a nonempty array");
                }
                for (std::size_t k = 0; k < p.size(); ++k) {
                    grid.push_back(reader.probability(p[k], path + "p[" + std::to_string(k) + "]"));
                }
            } else {
                grid.push_back(reader.probability(p, path + "p"));
            }
            for (double value : grid) {
                SingleArmExperiment experiment = base;
                experiment.p = value;
                configs.push_back({experiment, replications, seed + configs.size()});
            }
        } else if (kind == "two-arm") {
            reader.only_keys(entry, path,
                             {"kind", "p_left", "p_right", "left_runs", "right_runs", "sign",
                              "replications"});
            TwoArmExperiment experiment;
            experiment.p_left =
                reader.probability(reader.required(entry, "p_left", path), path + "p_left");
            experiment.p_right =
                reader.probability(reader.required(entry, "p_right", path), path + "p_right");
            experiment.left_runs =
                reader.positive_integer(reader.required(entry, "left_runs", path), path + "left_runs");
            experiment.right_runs = reader.positive_integer(reader.required(entry, "right_runs", path),
                                                            path + "right_runs");
            if (entry.contains("sign")) {
                const std::string sign = reader.text(entry.at("sign"), path + "sign");
                if (sign != "plus" && sign != "minus") {
                    reader.fail(path + "sign", "expected \"plus\" or \"minus\"");
                }
                experiment.sign = sign == "plus" ? Sign::plus : Sign::minus;
            }
            configs.push_back({experiment, replications, seed + configs.size()});
        } else {
            reader.fail(path + "kind", "expected \"single\" or \"two-arm\"");
        }
    }
    return configs;
}

}  // namespace predpower::cli
