#include "byzgd/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace byzgd::harness {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
    }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    return obj.at(key).get<T>();
}

Vector parse_w_star(const json& node, std::size_t d) {
    if (node.is_array()) {
        Vector w = node.get<Vector>();
        if (w.size() != d)
            throw ConfigError("config: w_star length does not match d");
        return w;
    }
    if (node.is_object()) {
        check_keys(node, "data.w_star", {"norm"});
        double norm = node.at("norm").get<double>();
        Vector w(d, norm / std::sqrt(static_cast<double>(d)));
        return w;
    }
    throw ConfigError("config: w_star must be an array or {\"norm\": x}");
}

void parse_data(const json& node, ExperimentConfig& cfg) {
    check_keys(node, "data",
               {"generator", "d", "n", "m", "sigma", "feature_law", "w_star", "seed"});
    std::string gen = node.at("generator").get<std::string>();
    if (gen == "rademacher_regression")
        cfg.generator = data::GeneratorKind::RademacherRegression;
    else if (gen == "gaussian_regression")
        cfg.generator = data::GeneratorKind::GaussianRegression;
    else if (gen == "logistic")
        cfg.generator = data::GeneratorKind::Logistic;
    else
        throw ConfigError("config: unknown generator '" + gen + "'");

    cfg.data.d = node.at("d").get<std::size_t>();
    cfg.data.n = node.at("n").get<std::size_t>();
    cfg.data.m = node.at("m").get<std::size_t>();
    cfg.data.sigma = get_or(node, "sigma", 0.0);
    cfg.data.seed = get_or<uint64_t>(node, "seed", 0);

    std::string law = get_or<std::string>(node, "feature_law",
        cfg.generator == data::GeneratorKind::GaussianRegression ? "gaussian" : "rademacher");
    if (law == "rademacher")
        cfg.data.feature_law = data::FeatureLaw::Rademacher;
    else if (law == "gaussian")
        cfg.data.feature_law = data::FeatureLaw::StandardGaussian;
    else
        throw ConfigError("config: unknown feature_law '" + law + "'");

    cfg.data.w_star = parse_w_star(node.at("w_star"), cfg.data.d);
}

void parse_attack(const json& node, ExperimentConfig& cfg) {
    check_keys(node, "attack", {"variant", "scale", "vector"});
    std::string variant = node.at("variant").get<std::string>();
    auto& atk = cfg.attack;
    if (variant == "none") atk.kind = attack::AttackKind::None;
    else if (variant == "label_flip") atk.kind = attack::AttackKind::LabelFlip;
    else if (variant == "random_labels") atk.kind = attack::AttackKind::RandomLabels;
    else if (variant == "sign_flip") atk.kind = attack::AttackKind::SignFlip;
    else if (variant == "constant_vector") atk.kind = attack::AttackKind::ConstantVector;
    else if (variant == "gaussian_message") atk.kind = attack::AttackKind::GaussianMessage;
    else throw ConfigError("config: unknown attack variant '" + variant + "'");

    atk.scale = get_or(node, "scale", 1.0);
    if (node.contains("vector")) atk.constant = node.at("vector").get<Vector>();
    if (atk.kind == attack::AttackKind::ConstantVector && atk.constant.empty())
        throw ConfigError("config: constant_vector attack requires 'vector'");
}

void parse_rule(const json& node, ExperimentConfig& cfg) {
    check_keys(node, "rule", {"variant", "beta"});
    std::string variant = node.at("variant").get<std::string>();
    if (variant == "mean") {
        cfg.rule = agg::AggregationRule::mean();
    } else if (variant == "median") {
        cfg.rule = agg::AggregationRule::median();
    } else if (variant == "trimmed_mean") {
        cfg.rule = agg::AggregationRule::trimmed_mean(node.at("beta").get<double>());
    } else {
        throw ConfigError("config: unknown rule variant '" + variant + "'");
    }
}

void parse_gd(const json& node, ExperimentConfig& cfg) {
    check_keys(node, "gd", {"eta", "rounds", "domain_radius", "w0", "minibatch_fraction"});
    cfg.gd.eta = get_or(node, "eta", 0.0);
    cfg.gd.rounds = node.at("rounds").get<std::size_t>();
    cfg.gd.domain_radius = get_or(node, "domain_radius", 0.0);
    cfg.gd.minibatch_fraction = get_or(node, "minibatch_fraction", 0.0);
    if (node.contains("w0")) cfg.gd.w0 = node.at("w0").get<Vector>();
}

void parse_erm(const json& node, ExperimentConfig& cfg) {
    check_keys(node, "erm", {"eta", "max_iters", "grad_tol"});
    cfg.erm.eta = get_or(node, "eta", 0.0);
    cfg.erm.max_iters = get_or<std::size_t>(node, "max_iters", 100000);
    cfg.erm.grad_tol = get_or(node, "grad_tol", 1e-8);
}

void parse_sweep(const json& node, ExperimentConfig& cfg) {
    check_keys(node, "sweep", {"axis", "values"});
    std::string axis = node.at("axis").get<std::string>();
    const json& values = node.at("values");
    if (axis == "alpha") {
        cfg.sweep_axis = SweepAxis::Alpha;
        cfg.alpha_values = values.get<std::vector<double>>();
        if (cfg.alpha_values.empty())
            throw ConfigError("config: sweep over alpha needs values");
    } else if (axis == "sample_size") {
        cfg.sweep_axis = SweepAxis::SampleSize;
        for (const auto& pair : values) {
            if (!pair.is_array() || pair.size() != 2)
                throw ConfigError("config: sample_size values must be [n, m] pairs");
            cfg.nm_values.emplace_back(pair[0].get<std::size_t>(),
                                       pair[1].get<std::size_t>());
        }
        if (cfg.nm_values.empty())
            throw ConfigError("config: sweep over sample_size needs values");
    } else {
        throw ConfigError("config: unknown sweep axis '" + axis + "'");
    }
}

} // namespace

void ExperimentConfig::validate() const {
    data.validate();
    if (seeds.empty())
        throw ConfigError("config: seeds must be nonempty");
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw ConfigError("config: alpha must be in [0, 1)");
    if (!one_round && gd.rounds < 1)
        throw ConfigError("config: gd.rounds must be >= 1");
    if (rule.kind == agg::RuleKind::CoordinateTrimmedMean &&
        !(rule.beta >= 0.0 && rule.beta < 0.5))
        throw ConfigError("config: trimmed-mean beta must be in [0, 1/2)");
    if (attack.kind == attack::AttackKind::ConstantVector &&
        attack.constant.size() != data.d)
        throw ConfigError("config: constant attack vector dimension mismatch");
}

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    if (!root.is_object())
        throw ConfigError("config: top level must be an object");
    check_keys(root, "top level",
               {"scenario", "data", "alpha", "attack", "rule", "gd", "one_round",
                "erm", "seeds", "sweep"});

    ExperimentConfig cfg;
    cfg.scenario = get_or<std::string>(root, "scenario", "experiment");
    if (!root.contains("data"))
        throw ConfigError("config: missing 'data' section");
    parse_data(root.at("data"), cfg);
    cfg.alpha = get_or(root, "alpha", 0.0);
    if (root.contains("attack")) parse_attack(root.at("attack"), cfg);
    if (root.contains("rule")) parse_rule(root.at("rule"), cfg);
    cfg.one_round = get_or(root, "one_round", false);
    if (root.contains("gd")) parse_gd(root.at("gd"), cfg);
    else if (!cfg.one_round)
        throw ConfigError("config: missing 'gd' section");
    if (root.contains("erm")) parse_erm(root.at("erm"), cfg);
    if (!root.contains("seeds"))
        throw ConfigError("config: missing 'seeds'");
    cfg.seeds = root.at("seeds").get<std::vector<uint64_t>>();
    if (root.contains("sweep")) parse_sweep(root.at("sweep"), cfg);
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open config", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace byzgd::harness
