#ifndef LQA_BOOST_HPP
#define LQA_BOOST_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lqa/entail.hpp"

namespace lqa {

enum class Answer { no, yes };

inline const char* answer_str(Answer a) { return a == Answer::yes ? "YES" : "NO"; }

struct Instance {
    FeatureVector features;
    Answer label;
};

/// One-feature threshold classifier: left_label for values <= threshold,
/// right_label otherwise. threshold = lowest() acts as a constant stump.
struct Stump {
    int feature = 0;
    double threshold = std::numeric_limits<double>::lowest();
    Answer left_label = Answer::no;
    Answer right_label = Answer::yes;

    Answer classify(const FeatureVector& f) const {
        return f[static_cast<size_t>(feature)] <= threshold ? left_label : right_label;
    }
};

struct BoostConfig {
    int iterations = 10;
    int seed = 1;            // stored for config parity; training is deterministic
    int weight_threshold = 100;  // 100 = no weight trimming
};

struct BoostModel {
    std::vector<std::pair<Stump, double>> rounds;  // (stump, vote weight alpha)
    BoostConfig config;
};

/// Exhaustive weighted-error minimization over every feature and every
/// midpoint threshold (plus a constant-stump sentinel). Ties resolve to the
/// lowest feature index, then the lowest threshold.
inline Stump train_stump(const std::vector<Instance>& instances,
                         const std::vector<double>& weights) {
    if (instances.empty()) throw std::invalid_argument("train_stump: no instances");

    Stump best;
    double best_error = std::numeric_limits<double>::infinity();

    auto consider = [&](int f, double thr) {
        double left_yes = 0.0, left_no = 0.0, right_yes = 0.0, right_no = 0.0;
        for (size_t i = 0; i < instances.size(); ++i) {
            bool left = instances[i].features[static_cast<size_t>(f)] <= thr;
            double w = weights[i];
            if (instances[i].label == Answer::yes)
                (left ? left_yes : right_yes) += w;
            else
                (left ? left_no : right_no) += w;
        }
        Answer ll = left_yes >= left_no ? Answer::yes : Answer::no;
        Answer rl = right_yes >= right_no ? Answer::yes : Answer::no;
        double error = std::min(left_yes, left_no) + std::min(right_yes, right_no);
        if (error < best_error) {
            best_error = error;
            best = Stump{f, thr, ll, rl};
        }
    };

    const size_t dims = instances[0].features.size();
    for (int f = 0; f < static_cast<int>(dims); ++f) {
        std::vector<double> values;
        values.reserve(instances.size());
        for (const auto& inst : instances) values.push_back(inst.features[static_cast<size_t>(f)]);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());

        consider(f, std::numeric_limits<double>::lowest());
        for (size_t i = 0; i + 1 < values.size(); ++i)
            consider(f, (values[i] + values[i + 1]) / 2.0);
    }
    return best;
}

/// AdaBoost.M1 with reweighting only (no re-sampling). Rounds with weighted
/// error >= 0.5 are discarded and stop training; zero error is clamped to
/// keep the vote weight finite.
inline BoostModel train_boost(const std::vector<Instance>& instances,
                              const BoostConfig& config = {},
                              std::vector<double>* weight_sums = nullptr) {
    if (instances.empty()) throw std::invalid_argument("train_boost: no instances");
    BoostModel model;
    model.config = config;

    const size_t n = instances.size();
    std::vector<double> weights(n, 1.0 / static_cast<double>(n));

    bool has_yes = false, has_no = false;
    for (const auto& inst : instances) (inst.label == Answer::yes ? has_yes : has_no) = true;
    if (!has_yes || !has_no) {
        Stump constant;
        constant.left_label = constant.right_label = instances[0].label;
        double eps = 1e-10;
        model.rounds.emplace_back(constant, 0.5 * std::log((1.0 - eps) / eps));
        return model;
    }

    for (int round = 0; round < config.iterations; ++round) {
        Stump stump = train_stump(instances, weights);
        double eps = 0.0;
        for (size_t i = 0; i < n; ++i)
            if (stump.classify(instances[i].features) != instances[i].label) eps += weights[i];
        if (eps >= 0.5) break;
        if (eps <= 0.0) eps = 1e-10;
        double alpha = 0.5 * std::log((1.0 - eps) / eps);
        model.rounds.emplace_back(stump, alpha);

        double total = 0.0;
        for (size_t i = 0; i < n; ++i) {
            bool correct = stump.classify(instances[i].features) == instances[i].label;
            weights[i] *= std::exp(correct ? -alpha : alpha);
            total += weights[i];
        }
        for (auto& w : weights) w /= total;
        if (weight_sums) {
            double sum = 0.0;
            for (double w : weights) sum += w;
            weight_sums->push_back(sum);
        }
    }
    return model;
}

/// Weighted vote over the rounds. A zero vote sum resolves to YES.
inline std::pair<Answer, double> predict(const BoostModel& model, const FeatureVector& features) {
    if (model.rounds.empty()) throw std::invalid_argument("predict: empty model");
    double sum = 0.0, total = 0.0;
    for (const auto& [stump, alpha] : model.rounds) {
        sum += stump.classify(features) == Answer::yes ? alpha : -alpha;
        total += alpha;
    }
    Answer label = sum >= 0.0 ? Answer::yes : Answer::no;
    double margin = total > 0.0 ? std::abs(sum) / total : 0.0;
    return {label, margin};
}

inline constexpr const char* kBoostFormatVersion = "lqa-boost-model/1";

inline nlohmann::json boost_to_json(const BoostModel& model) {
    nlohmann::json rounds = nlohmann::json::array();
    for (const auto& [stump, alpha] : model.rounds) {
        rounds.push_back({{"feature_index", stump.feature},
                          {"threshold", stump.threshold},
                          {"left", answer_str(stump.left_label)},
                          {"right", answer_str(stump.right_label)},
                          {"alpha", alpha}});
    }
    return {{"format", kBoostFormatVersion},
            {"config",
             {{"iterations", model.config.iterations},
              {"seed", model.config.seed},
              {"weight_threshold", model.config.weight_threshold}}},
            {"rounds", rounds}};
}

inline BoostModel boost_from_json(const nlohmann::json& j) {
    if (!j.contains("format") || j.at("format").get<std::string>() != kBoostFormatVersion)
        throw std::runtime_error("boost model file format mismatch");
    BoostModel model;
    model.config.iterations = j.at("config").at("iterations").get<int>();
    model.config.seed = j.at("config").at("seed").get<int>();
    model.config.weight_threshold = j.at("config").at("weight_threshold").get<int>();
    for (const auto& jr : j.at("rounds")) {
        Stump s;
        s.feature = jr.at("feature_index").get<int>();
        s.threshold = jr.at("threshold").get<double>();
        s.left_label = jr.at("left").get<std::string>() == "YES" ? Answer::yes : Answer::no;
        s.right_label = jr.at("right").get<std::string>() == "YES" ? Answer::yes : Answer::no;
        model.rounds.emplace_back(s, jr.at("alpha").get<double>());
    }
    return model;
}

}  // namespace lqa

#endif
