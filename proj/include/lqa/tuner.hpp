#ifndef LQA_TUNER_HPP
#define LQA_TUNER_HPP

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lqa/eval.hpp"
#include "lqa/ranker.hpp"

namespace lqa {

struct TuneStep {
    std::string param;
    double old_value;
    double new_value;
    double f_measure;
};

struct TuneTrace {
    std::vector<TuneStep> steps;
    RankerParams final_params;
    int evaluations = 0;
};

using TuneObjective = std::function<double(const RankerParams&)>;

namespace detail {

inline double get_param(const RankerParams& p, const std::string& name) {
    if (name == "confidence_thresh") return p.confidence_thresh;
    if (name == "k") return p.k;
    if (name == "reference_thresh") return p.reference_thresh;
    return p.i_q;
}

inline void set_param(RankerParams& p, const std::string& name, double value) {
    if (name == "confidence_thresh") {
        p.confidence_thresh = std::clamp(value, 0.0, 1.0);
    } else if (name == "k") {
        p.k = static_cast<int>(std::clamp(value, 1.0, 5.0));
    } else if (name == "reference_thresh") {
        p.reference_thresh = std::clamp(value, 0.0, 1.0);
    } else {
        p.i_q = std::clamp(value, 0.0, 1.0);
        p.i_art = 1.0 - p.i_q;
    }
}

}  // namespace detail

/// Coordinate-descent hill climb over the objective. Parameters are visited
/// in the fixed order ct, k, rt, i_q; each gets a coarse pass (r = 0.1, or
/// r = 1 for k which gets no fine pass) then a fine pass (r = 0.01). At each
/// step both directions are probed and the larger improvement wins, ties
/// preferring the increase. The evaluation budget is a hard stop.
inline std::pair<RankerParams, TuneTrace> tune(const TuneObjective& objective,
                                               RankerParams initial, int budget = 500,
                                               int sweeps = 1) {
    TuneTrace trace;
    RankerParams current = initial;

    auto eval = [&](const RankerParams& p, bool& exhausted) {
        if (trace.evaluations >= budget) {
            exhausted = true;
            return -std::numeric_limits<double>::infinity();
        }
        ++trace.evaluations;
        return objective(p);
    };

    bool exhausted = false;
    double f_current = eval(current, exhausted);

    const std::vector<std::string> order = {"confidence_thresh", "k", "reference_thresh", "i_q"};
    for (int sweep = 0; sweep < sweeps && !exhausted; ++sweep) {
        for (const auto& name : order) {
            if (exhausted) break;
            std::vector<double> step_sizes =
                name == "k" ? std::vector<double>{1.0} : std::vector<double>{0.1, 0.01};
            for (double r : step_sizes) {
                auto probe = [&](double delta) {
                    double value = detail::get_param(current, name);
                    RankerParams cand = current;
                    detail::set_param(cand, name, value + delta);
                    if (detail::get_param(cand, name) == value)  // clamped in place
                        return std::pair<double, RankerParams>{
                            -std::numeric_limits<double>::infinity(), cand};
                    return std::pair<double, RankerParams>{eval(cand, exhausted), cand};
                };
                auto accept = [&](const RankerParams& cand, double f) {
                    trace.steps.push_back({name, detail::get_param(current, name),
                                           detail::get_param(cand, name), f});
                    current = cand;
                    f_current = f;
                };

                // pick the better of the two directions first
                auto [f_up, up] = probe(r);
                if (exhausted) break;
                auto [f_down, down] = probe(-r);
                if (exhausted) break;
                if (std::max(f_up, f_down) <= f_current) continue;  // no strict improvement
                double direction = f_up >= f_down ? r : -r;
                accept(f_up >= f_down ? up : down, std::max(f_up, f_down));

                // then keep stepping that way while it improves
                while (!exhausted) {
                    auto [f_next, next] = probe(direction);
                    if (exhausted || f_next <= f_current) break;
                    accept(next, f_next);
                }
            }
        }
    }

    trace.final_params = current;
    return {current, trace};
}

/// Leave-one-out retrieval F-measure objective with base sets, document
/// frequencies and question sets cached per n-gram size.
class LooRetrievalObjective {
  public:
    LooRetrievalObjective(const Corpus& corpus, const std::vector<TrainingPair>& pairs,
                          const TermDictionary& dictionary = {},
                          const PipeTables& tables = PipeTables::builtin())
        : corpus_(&corpus), pairs_(&pairs), dictionary_(dictionary),
          cache_(corpus, pairs, tables) {
        if (pairs.empty()) throw std::invalid_argument("tuner: empty pair list");
    }

    double operator()(const RankerParams& params) const {
        auto it = folds_by_k_.find(params.k);
        if (it == folds_by_k_.end())
            it = folds_by_k_
                     .emplace(params.k, std::make_shared<RetrievalFolds>(*corpus_, *pairs_,
                                                                         params.k, cache_))
                     .first;
        const RetrievalFolds& folds = *it->second;

        EvalCounts counts;
        for (size_t i = 0; i < pairs_->size(); ++i) {
            NGramSet q_set = expand_question(folds.question_set(i), dictionary_);
            RankedList ranked = folds.rank_fold(i, params, q_set);
            std::vector<std::string> retrieved = filter(ranked, folds.full_model(), params);
            std::set<std::string> gold((*pairs_)[i].relevant.begin(),
                                       (*pairs_)[i].relevant.end());
            for (const auto& id : retrieved)
                if (gold.count(id)) ++counts.cr;
            counts.rt += static_cast<long long>(retrieved.size());
            counts.rl += static_cast<long long>(gold.size());
        }
        return metrics(counts).f_measure;
    }

  private:
    const Corpus* corpus_;
    const std::vector<TrainingPair>* pairs_;
    TermDictionary dictionary_;
    TokenCache cache_;
    mutable std::map<int, std::shared_ptr<RetrievalFolds>> folds_by_k_;
};

/// The paper's starting point for the adjustment procedure.
inline RankerParams tuning_start() {
    RankerParams p;
    p.k = 1;
    p.i_q = 0.8;
    p.i_art = 0.2;
    p.confidence_thresh = 0.5;
    p.reference_thresh = 0.5;
    return p;
}

inline std::pair<RankerParams, TuneTrace> tune(const Corpus& corpus,
                                               const std::vector<TrainingPair>& pairs,
                                               RankerParams initial = tuning_start(),
                                               int budget = 500, int sweeps = 1,
                                               const TermDictionary& dictionary = {},
                                               const PipeTables& tables = PipeTables::builtin()) {
    if (pairs.size() < 2) throw std::invalid_argument("tune: need at least 2 pairs");
    LooRetrievalObjective objective(corpus, pairs, dictionary, tables);
    return tune(std::cref(objective), initial, budget, sweeps);
}

}  // namespace lqa

#endif
