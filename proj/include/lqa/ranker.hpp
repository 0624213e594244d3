#ifndef LQA_RANKER_HPP
#define LQA_RANKER_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lqa/corpus.hpp"
#include "lqa/textpipe.hpp"

namespace lqa {

struct RankerParams {
    int k = 3;
    double i_q = 0.965;
    double i_art = 0.035;
    double confidence_thresh = 0.32;
    double reference_thresh = 0.2;

    bool operator==(const RankerParams&) const = default;
};

/// Per-article n-gram sets after expansion, plus corpus-wide document
/// frequencies. df is computed over the unexpanded base sets and never
/// mutated afterwards.
struct NGramModel {
    std::map<std::string, NGramSet, ArticleIdLess> per_article;
    std::map<std::string, int> df;
    int n_articles = 0;
    std::map<std::string, IdSet, ArticleIdLess> links;
};

using TermDictionary = std::map<std::string, std::set<std::string>>;

struct RankedEntry {
    std::string id;
    double score;
};

using RankedList = std::vector<RankedEntry>;

inline constexpr size_t kFilterPoolSize = 10;

/// Builds the article model: base n-gram sets, document frequencies over the
/// base sets, one-level reference expansion, then training-pair expansion.
inline NGramModel build_model(const Corpus& corpus, const RankerParams& params,
                              const std::vector<TrainingPair>* training = nullptr,
                              const PipeTables& tables = PipeTables::builtin()) {
    NGramModel model;
    model.n_articles = static_cast<int>(corpus.articles.size());

    std::map<std::string, NGramSet, ArticleIdLess> base;
    for (const auto& [id, art] : corpus.articles) {
        base[id] = process(art.full_text(), params.k, tables);
        model.links[id] = art.refs;
    }
    for (const auto& [id, set] : base)
        for (const auto& gram : set) ++model.df[gram];

    model.per_article = base;
    for (const auto& [id, art] : corpus.articles)
        for (const auto& ref : art.refs)
            if (auto it = base.find(ref); it != base.end())
                model.per_article[id].insert(it->second.begin(), it->second.end());

    if (training) {
        for (const auto& pair : *training) {
            NGramSet q_set = process(pair.question, params.k, tables);
            for (const auto& rel : pair.relevant)
                if (auto it = model.per_article.find(rel); it != model.per_article.end())
                    it->second.insert(q_set.begin(), q_set.end());
        }
    }
    return model;
}

/// idf(t) = ln(N / df_t). Unseen terms fall back to df = 1.
inline double idf(const NGramModel& model, const std::string& term) {
    int df = 1;
    if (auto it = model.df.find(term); it != model.df.end()) df = it->second;
    return std::log(static_cast<double>(model.n_articles) / df);
}

inline double score(const NGramModel& model, const RankerParams& params, const NGramSet& q_set,
                    const std::string& article_id) {
    auto it = model.per_article.find(article_id);
    if (it == model.per_article.end())
        throw std::invalid_argument("score: unknown article id " + article_id);
    if (q_set.empty()) return 0.0;
    const NGramSet& a_set = it->second;

    double sum = 0.0;
    bool any = false;
    // summation order fixed over the question set for bitwise determinism
    for (const auto& t : q_set) {
        if (a_set.count(t)) {
            sum += idf(model, t);
            any = true;
        }
    }
    if (!any) return 0.0;
    double denom = params.i_q * static_cast<double>(q_set.size()) +
                   params.i_art * static_cast<double>(a_set.size());
    return sum / denom;
}

/// Single-pass dictionary expansion of a question n-gram set.
inline NGramSet expand_question(const NGramSet& q_set, const TermDictionary& dictionary) {
    NGramSet out = q_set;
    for (const auto& [key, assoc] : dictionary)
        if (q_set.count(key)) out.insert(assoc.begin(), assoc.end());
    return out;
}

/// Scores every article against an already-expanded question set and returns
/// the best `limit` entries, ties broken by ascending article id.
inline RankedList rank_set(const NGramModel& model, const RankerParams& params,
                           const NGramSet& q_set, size_t limit = kFilterPoolSize) {
    RankedList all;
    all.reserve(model.per_article.size());
    for (const auto& [id, _] : model.per_article)
        all.push_back({id, score(model, params, q_set, id)});
    std::stable_sort(all.begin(), all.end(), [](const RankedEntry& a, const RankedEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        return ArticleIdLess{}(a.id, b.id);
    });
    if (all.size() > limit) all.resize(limit);
    return all;
}

inline RankedList rank(const NGramModel& model, const RankerParams& params,
                       const std::string& question, const TermDictionary& dictionary = {},
                       const PipeTables& tables = PipeTables::builtin(),
                       size_t limit = kFilterPoolSize) {
    NGramSet q_set = expand_question(process(question, params.k, tables), dictionary);
    return rank_set(model, params, q_set, limit);
}

/// Filtering step: the top-1 article is always returned; when its score
/// strictly exceeds confidence_thresh, articles it references that score
/// strictly above reference_thresh are appended in rank order.
inline std::vector<std::string> filter(const RankedList& ranked, const NGramModel& model,
                                       const RankerParams& params) {
    if (ranked.empty()) return {};
    std::vector<std::string> out{ranked.front().id};
    if (ranked.front().score > params.confidence_thresh) {
        auto links_it = model.links.find(ranked.front().id);
        if (links_it != model.links.end()) {
            for (size_t i = 1; i < ranked.size() && i < kFilterPoolSize; ++i) {
                if (links_it->second.count(ranked[i].id) &&
                    ranked[i].score > params.reference_thresh)
                    out.push_back(ranked[i].id);
            }
        }
    }
    return out;
}

inline constexpr const char* kModelFormatVersion = "lqa-ngram-model/1";

inline nlohmann::json model_to_json(const NGramModel& model) {
    nlohmann::json per_article = nlohmann::json::object();
    for (const auto& [id, set] : model.per_article)
        per_article[id] = std::vector<std::string>(set.begin(), set.end());
    nlohmann::json links = nlohmann::json::object();
    for (const auto& [id, refs] : model.links)
        links[id] = std::vector<std::string>(refs.begin(), refs.end());
    return {{"format", kModelFormatVersion},
            {"n_articles", model.n_articles},
            {"per_article", per_article},
            {"df", model.df},
            {"links", links}};
}

inline NGramModel model_from_json(const nlohmann::json& j) {
    if (!j.contains("format") || j.at("format").get<std::string>() != kModelFormatVersion)
        throw std::runtime_error("model file format mismatch: expected " +
                                 std::string(kModelFormatVersion));
    NGramModel model;
    model.n_articles = j.at("n_articles").get<int>();
    for (const auto& [id, grams] : j.at("per_article").items())
        model.per_article[id] = NGramSet(grams.begin(), grams.end());
    for (const auto& [gram, df] : j.at("df").items()) model.df[gram] = df.get<int>();
    for (const auto& [id, refs] : j.at("links").items()) {
        model.links[id];  // keep articles with no references present
        for (const auto& r : refs) model.links[id].insert(r.get<std::string>());
    }
    return model;
}

inline nlohmann::json params_to_json(const RankerParams& p) {
    return {{"k", p.k},
            {"i_q", p.i_q},
            {"i_art", p.i_art},
            {"confidence_thresh", p.confidence_thresh},
            {"reference_thresh", p.reference_thresh}};
}

inline RankerParams params_from_json(const nlohmann::json& j) {
    RankerParams p;
    p.k = j.at("k").get<int>();
    p.i_q = j.at("i_q").get<double>();
    p.i_art = j.at("i_art").get<double>();
    p.confidence_thresh = j.at("confidence_thresh").get<double>();
    p.reference_thresh = j.at("reference_thresh").get<double>();
    return p;
}

inline TermDictionary dictionary_from_json(const nlohmann::json& j) {
    TermDictionary dict;
    for (const auto& [key, vals] : j.items())
        for (const auto& v : vals) dict[key].insert(v.get<std::string>());
    return dict;
}

inline TermDictionary load_dictionary(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dictionary file: " + path);
    return dictionary_from_json(nlohmann::json::parse(in));
}

}  // namespace lqa

#endif
