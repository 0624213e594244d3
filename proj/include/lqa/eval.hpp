#ifndef LQA_EVAL_HPP
#define LQA_EVAL_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lqa/boost.hpp"
#include "lqa/corpus.hpp"
#include "lqa/entail.hpp"
#include "lqa/ranker.hpp"

namespace lqa {

struct EvalCounts {
    long long cr = 0;  // correctly retrieved articles over all queries
    long long rt = 0;  // retrieved articles over all queries
    long long rl = 0;  // relevant articles over all queries
    long long cq = 0;  // correctly answered queries
    long long q = 0;   // total queries
};

struct EvalMetrics {
    double precision = 0.0, recall = 0.0, f_measure = 0.0, accuracy = 0.0;
};

/// P = Cr/Rt, R = Cr/Rl, F = 2PR/(P+R), A = Cq/Q; zero denominators yield 0.
inline EvalMetrics metrics(const EvalCounts& c) {
    EvalMetrics m;
    m.precision = c.rt > 0 ? static_cast<double>(c.cr) / static_cast<double>(c.rt) : 0.0;
    m.recall = c.rl > 0 ? static_cast<double>(c.cr) / static_cast<double>(c.rl) : 0.0;
    m.f_measure = (m.precision + m.recall) > 0.0
                      ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
                      : 0.0;
    m.accuracy = c.q > 0 ? static_cast<double>(c.cq) / static_cast<double>(c.q) : 0.0;
    return m;
}

struct PerQuery {
    std::string qid;
    std::vector<std::string> retrieved;
    std::vector<std::string> gold;
    std::optional<Answer> predicted;
    std::optional<Answer> gold_label;
};

struct EvalReport {
    EvalMetrics m;
    EvalCounts counts;
    std::vector<PerQuery> per_query;
};

inline nlohmann::json report_to_json(const EvalReport& r) {
    nlohmann::json per_query = nlohmann::json::array();
    for (const auto& pq : r.per_query) {
        nlohmann::json j{{"qid", pq.qid}, {"retrieved", pq.retrieved}, {"gold", pq.gold}};
        if (pq.predicted) j["predicted"] = answer_str(*pq.predicted);
        if (pq.gold_label) j["gold_label"] = answer_str(*pq.gold_label);
        per_query.push_back(std::move(j));
    }
    return {{"precision", r.m.precision},
            {"recall", r.m.recall},
            {"f_measure", r.m.f_measure},
            {"accuracy", r.m.accuracy},
            {"counts",
             {{"cr", r.counts.cr},
              {"rt", r.counts.rt},
              {"rl", r.counts.rl},
              {"cq", r.counts.cq},
              {"q", r.counts.q}}},
            {"per_query", per_query}};
}

/// Lemma token lists for every article and question, computed once and shared
/// across fold evaluations and n-gram sizes.
struct TokenCache {
    std::map<std::string, std::vector<std::string>, ArticleIdLess> article_lemmas;
    std::vector<std::vector<std::string>> question_lemmas;

    TokenCache(const Corpus& corpus, const std::vector<TrainingPair>& pairs,
               const PipeTables& tables = PipeTables::builtin()) {
        for (const auto& [id, art] : corpus.articles)
            article_lemmas[id] = lemma_tokens(art.full_text(), tables);
        question_lemmas.reserve(pairs.size());
        for (const auto& p : pairs) question_lemmas.push_back(lemma_tokens(p.question, tables));
    }
};

/// Leave-one-out retrieval machinery for a fixed n-gram size k. Base sets and
/// document frequencies are fold-invariant; only articles that the held-out
/// pair expands differ between the full model and a fold's model.
class RetrievalFolds {
  public:
    RetrievalFolds(const Corpus& corpus, const std::vector<TrainingPair>& pairs, int k,
                   const TokenCache& cache) {
        model_.n_articles = static_cast<int>(corpus.articles.size());
        std::map<std::string, NGramSet, ArticleIdLess> base;
        for (const auto& [id, art] : corpus.articles) {
            base[id] = ngram_set(cache.article_lemmas.at(id), k);
            model_.links[id] = art.refs;
        }
        for (const auto& [id, set] : base)
            for (const auto& gram : set) ++model_.df[gram];

        ref_expanded_ = base;
        for (const auto& [id, art] : corpus.articles)
            for (const auto& ref : art.refs)
                if (auto it = base.find(ref); it != base.end())
                    ref_expanded_[id].insert(it->second.begin(), it->second.end());

        q_sets_.reserve(pairs.size());
        for (size_t i = 0; i < pairs.size(); ++i) {
            q_sets_.push_back(ngram_set(cache.question_lemmas[i], k));
            for (const auto& rel : pairs[i].relevant)
                if (ref_expanded_.count(rel)) pairs_for_article_[rel].push_back(i);
        }

        model_.per_article = ref_expanded_;
        for (const auto& [id, idxs] : pairs_for_article_)
            for (size_t i : idxs)
                model_.per_article[id].insert(q_sets_[i].begin(), q_sets_[i].end());
    }

    /// Model with all training expansion applied.
    const NGramModel& full_model() const { return model_; }

    const NGramSet& question_set(size_t i) const { return q_sets_[i]; }

    /// The article set in effect for fold `exclude`: identical to the full
    /// model except for articles the excluded pair expanded.
    NGramSet fold_article_set(size_t exclude, const std::string& id) const {
        auto it = pairs_for_article_.find(id);
        bool touched = false;
        if (it != pairs_for_article_.end())
            for (size_t i : it->second)
                if (i == exclude) touched = true;
        if (!touched) return model_.per_article.at(id);
        NGramSet set = ref_expanded_.at(id);
        for (size_t i : it->second)
            if (i != exclude) set.insert(q_sets_[i].begin(), q_sets_[i].end());
        return set;
    }

    RankedList rank_fold(size_t exclude, const RankerParams& params, const NGramSet& q_set,
                         size_t limit = kFilterPoolSize) const {
        RankedList all;
        all.reserve(model_.per_article.size());
        for (const auto& [id, full_set] : model_.per_article) {
            const NGramSet* a_set = &full_set;
            NGramSet overlay;
            auto it = pairs_for_article_.find(id);
            if (it != pairs_for_article_.end() &&
                std::find(it->second.begin(), it->second.end(), exclude) != it->second.end()) {
                overlay = fold_article_set(exclude, id);
                a_set = &overlay;
            }
            all.push_back({id, score_sets(params, q_set, *a_set)});
        }
        std::stable_sort(all.begin(), all.end(), [](const RankedEntry& a, const RankedEntry& b) {
            if (a.score != b.score) return a.score > b.score;
            return ArticleIdLess{}(a.id, b.id);
        });
        if (all.size() > limit) all.resize(limit);
        return all;
    }

    double score_sets(const RankerParams& params, const NGramSet& q_set,
                      const NGramSet& a_set) const {
        if (q_set.empty()) return 0.0;
        double sum = 0.0;
        bool any = false;
        for (const auto& t : q_set)
            if (a_set.count(t)) {
                sum += idf(model_, t);
                any = true;
            }
        if (!any) return 0.0;
        return sum / (params.i_q * static_cast<double>(q_set.size()) +
                      params.i_art * static_cast<double>(a_set.size()));
    }

  private:
    NGramModel model_;  // per_article holds the fully expanded sets
    std::map<std::string, NGramSet, ArticleIdLess> ref_expanded_;
    std::vector<NGramSet> q_sets_;
    std::map<std::string, std::vector<size_t>, ArticleIdLess> pairs_for_article_;
};

inline EvalReport loo_retrieval(const Corpus& corpus, const std::vector<TrainingPair>& pairs,
                                const RankerParams& params, const TermDictionary& dictionary = {},
                                const PipeTables& tables = PipeTables::builtin()) {
    if (pairs.size() < 2) throw std::invalid_argument("loo_retrieval: need at least 2 pairs");
    TokenCache cache(corpus, pairs, tables);
    RetrievalFolds folds(corpus, pairs, params.k, cache);

    EvalReport report;
    for (size_t i = 0; i < pairs.size(); ++i) {
        NGramSet q_set = expand_question(folds.question_set(i), dictionary);
        RankedList ranked = folds.rank_fold(i, params, q_set);
        std::vector<std::string> retrieved = filter(ranked, folds.full_model(), params);

        std::set<std::string> gold(pairs[i].relevant.begin(), pairs[i].relevant.end());
        for (const auto& id : retrieved)
            if (gold.count(id)) ++report.counts.cr;
        report.counts.rt += static_cast<long long>(retrieved.size());
        report.counts.rl += static_cast<long long>(gold.size());
        ++report.counts.q;
        report.per_query.push_back({pairs[i].qid, retrieved, pairs[i].relevant, {}, {}});
    }
    report.m = metrics(report.counts);
    return report;
}

inline double top_n_recall(const Corpus& corpus, const std::vector<TrainingPair>& pairs,
                           const RankerParams& params, size_t n,
                           const TermDictionary& dictionary = {},
                           const PipeTables& tables = PipeTables::builtin()) {
    if (n < 1) throw std::invalid_argument("top_n_recall: n must be >= 1");
    TokenCache cache(corpus, pairs, tables);
    RetrievalFolds folds(corpus, pairs, params.k, cache);
    EvalCounts counts;
    for (size_t i = 0; i < pairs.size(); ++i) {
        NGramSet q_set = expand_question(folds.question_set(i), dictionary);
        RankedList ranked = folds.rank_fold(i, params, q_set, n);
        std::set<std::string> gold(pairs[i].relevant.begin(), pairs[i].relevant.end());
        for (const auto& e : ranked)
            if (gold.count(e.id)) ++counts.cr;
        counts.rl += static_cast<long long>(gold.size());
    }
    return counts.rl > 0 ? static_cast<double>(counts.cr) / static_cast<double>(counts.rl) : 0.0;
}

namespace detail {

/// Concatenated full text of the pair's resolved evidence articles.
inline std::string evidence_text(const Corpus& corpus, const std::vector<std::string>& ids) {
    std::string text;
    for (const auto& id : ids) {
        auto it = corpus.articles.find(id);
        if (it == corpus.articles.end()) continue;
        if (!text.empty()) text += " ";
        text += it->second.full_text();
    }
    return text;
}

/// Macro-averaged P/R/F over {YES, NO} plus accuracy.
inline EvalMetrics macro_metrics(const std::vector<Answer>& predicted,
                                 const std::vector<Answer>& gold) {
    long long tp[2] = {0, 0}, fp[2] = {0, 0}, fn[2] = {0, 0}, correct = 0;
    for (size_t i = 0; i < predicted.size(); ++i) {
        int p = predicted[i] == Answer::yes ? 1 : 0;
        int g = gold[i] == Answer::yes ? 1 : 0;
        if (p == g) {
            ++tp[p];
            ++correct;
        } else {
            ++fp[p];
            ++fn[g];
        }
    }
    double prec = 0.0, rec = 0.0, f = 0.0;
    for (int c = 0; c < 2; ++c) {
        double pc = tp[c] + fp[c] > 0 ? static_cast<double>(tp[c]) / (tp[c] + fp[c]) : 0.0;
        double rc = tp[c] + fn[c] > 0 ? static_cast<double>(tp[c]) / (tp[c] + fn[c]) : 0.0;
        double fc = pc + rc > 0.0 ? 2.0 * pc * rc / (pc + rc) : 0.0;
        prec += pc / 2.0;
        rec += rc / 2.0;
        f += fc / 2.0;
    }
    EvalMetrics m;
    m.precision = prec;
    m.recall = rec;
    m.f_measure = f;
    m.accuracy = predicted.empty()
                     ? 0.0
                     : static_cast<double>(correct) / static_cast<double>(predicted.size());
    return m;
}

}  // namespace detail

/// Leave-one-out predictions for one-instance-per-pair entailment data.
inline std::vector<Answer> loo_predict(const std::vector<Instance>& instances,
                                       const BoostConfig& config = {}) {
    std::vector<Answer> out;
    out.reserve(instances.size());
    for (size_t i = 0; i < instances.size(); ++i) {
        std::vector<Instance> train;
        train.reserve(instances.size() - 1);
        for (size_t j = 0; j < instances.size(); ++j)
            if (j != i) train.push_back(instances[j]);
        BoostModel model = train_boost(train, config);
        out.push_back(predict(model, instances[i].features).first);
    }
    return out;
}

/// Extracts the per-pair entailment instances (phase two: gold relevant
/// articles as evidence). `concat_evidence = false` yields one instance per
/// (question, article) pair instead.
inline std::vector<Instance> entailment_instances(const Corpus& corpus,
                                                  const std::vector<TrainingPair>& pairs,
                                                  const NGramModel& model,
                                                  const EmbeddingTable& emb,
                                                  const PipeTables& tables = PipeTables::builtin(),
                                                  bool all_pairs_w2v = false) {
    std::vector<Instance> out;
    for (const auto& p : pairs) {
        if (!p.label) throw std::invalid_argument("entailment requires labeled pairs: " + p.qid);
        std::string evidence = detail::evidence_text(corpus, p.relevant);
        out.push_back({extract(p.question, evidence, model, emb, tables, all_pairs_w2v),
                       *p.label ? Answer::yes : Answer::no});
    }
    return out;
}

inline EvalReport loo_entailment(const Corpus& corpus, const std::vector<TrainingPair>& pairs,
                                 const NGramModel& model, const EmbeddingTable& emb,
                                 const BoostConfig& config = {},
                                 const PipeTables& tables = PipeTables::builtin(),
                                 bool concat_evidence = true) {
    EvalReport report;
    std::vector<Answer> gold;
    std::vector<Answer> predicted;

    if (concat_evidence) {
        std::vector<Instance> instances = entailment_instances(corpus, pairs, model, emb, tables);
        predicted = loo_predict(instances, config);
        for (const auto& inst : instances) gold.push_back(inst.label);
    } else {
        // one instance per (question, article); a question's prediction is the
        // sign of its articles' summed signed margins
        struct Item {
            Instance inst;
            size_t pair_index;
        };
        std::vector<Item> items;
        for (size_t i = 0; i < pairs.size(); ++i) {
            const auto& p = pairs[i];
            if (!p.label) throw std::invalid_argument("entailment requires labeled pairs: " + p.qid);
            gold.push_back(*p.label ? Answer::yes : Answer::no);
            for (const auto& id : p.relevant) {
                auto it = corpus.articles.find(id);
                if (it == corpus.articles.end()) continue;
                items.push_back({{extract(p.question, it->second.full_text(), model, emb, tables),
                                  *p.label ? Answer::yes : Answer::no},
                                 i});
            }
        }
        for (size_t i = 0; i < pairs.size(); ++i) {
            std::vector<Instance> train;
            for (const auto& item : items)
                if (item.pair_index != i) train.push_back(item.inst);
            BoostModel bm = train_boost(train, config);
            double vote = 0.0;
            for (const auto& item : items)
                if (item.pair_index == i) {
                    auto [label, margin] = predict(bm, item.inst.features);
                    vote += label == Answer::yes ? margin : -margin;
                }
            predicted.push_back(vote >= 0.0 ? Answer::yes : Answer::no);
        }
    }

    report.m = detail::macro_metrics(predicted, gold);
    report.counts.q = static_cast<long long>(pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i) {
        if (predicted[i] == gold[i]) ++report.counts.cq;
        report.per_query.push_back(
            {pairs[i].qid, {}, pairs[i].relevant, predicted[i], gold[i]});
    }
    return report;
}

/// Phase three: retrieval supplies the evidence, the classifier (trained on
/// gold-evidence features of the other pairs) answers.
inline EvalReport loo_combined(const Corpus& corpus, const std::vector<TrainingPair>& pairs,
                               const RankerParams& params, const NGramModel& model,
                               const EmbeddingTable& emb, const BoostConfig& config = {},
                               const TermDictionary& dictionary = {},
                               const PipeTables& tables = PipeTables::builtin()) {
    if (pairs.size() < 2) throw std::invalid_argument("loo_combined: need at least 2 pairs");
    TokenCache cache(corpus, pairs, tables);
    RetrievalFolds folds(corpus, pairs, params.k, cache);
    std::vector<Instance> instances = entailment_instances(corpus, pairs, model, emb, tables);

    EvalReport report;
    std::vector<Answer> gold, predicted;
    for (size_t i = 0; i < pairs.size(); ++i) {
        NGramSet q_set = expand_question(folds.question_set(i), dictionary);
        RankedList ranked = folds.rank_fold(i, params, q_set);
        std::vector<std::string> retrieved = filter(ranked, folds.full_model(), params);

        std::vector<Instance> train;
        for (size_t j = 0; j < instances.size(); ++j)
            if (j != i) train.push_back(instances[j]);
        BoostModel bm = train_boost(train, config);

        std::string evidence = detail::evidence_text(corpus, retrieved);
        FeatureVector fv = extract(pairs[i].question, evidence, model, emb, tables);
        Answer answer = predict(bm, fv).first;

        gold.push_back(*pairs[i].label ? Answer::yes : Answer::no);
        predicted.push_back(answer);
        if (answer == gold.back()) ++report.counts.cq;
        ++report.counts.q;

        std::set<std::string> gold_ids(pairs[i].relevant.begin(), pairs[i].relevant.end());
        for (const auto& id : retrieved)
            if (gold_ids.count(id)) ++report.counts.cr;
        report.counts.rt += static_cast<long long>(retrieved.size());
        report.counts.rl += static_cast<long long>(gold_ids.size());
        report.per_query.push_back({pairs[i].qid, retrieved, pairs[i].relevant, answer,
                                    gold.back()});
    }
    report.m = detail::macro_metrics(predicted, gold);
    EvalMetrics retrieval = metrics(report.counts);
    // accuracy comes from the answers; P/R/F here report the retrieval side
    report.m.precision = retrieval.precision;
    report.m.recall = retrieval.recall;
    report.m.f_measure = retrieval.f_measure;
    return report;
}

/// F-measure drop from zeroing out each feature, via leave-one-out entailment.
inline std::map<std::string, double> feature_ablation(const std::vector<Instance>& instances,
                                                      const BoostConfig& config = {}) {
    std::vector<Answer> gold;
    for (const auto& inst : instances) gold.push_back(inst.label);
    double f_all = detail::macro_metrics(loo_predict(instances, config), gold).f_measure;

    std::map<std::string, double> out;
    for (size_t f = 0; f < kFeatureCount; ++f) {
        std::vector<Instance> ablated = instances;
        for (auto& inst : ablated) inst.features[f] = 0.0;
        double f_without = detail::macro_metrics(loo_predict(ablated, config), gold).f_measure;
        out[kFeatureNames[f]] = f_all - f_without;
    }
    return out;
}

}  // namespace lqa

#endif
