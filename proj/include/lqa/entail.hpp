#ifndef LQA_ENTAIL_HPP
#define LQA_ENTAIL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "lqa/embed.hpp"
#include "lqa/ranker.hpp"
#include "lqa/textpipe.hpp"

namespace lqa {

inline constexpr size_t kFeatureCount = 15;

inline constexpr std::array<const char*, kFeatureCount> kFeatureNames = {
    "manhattan",     "euclidean",     "cosine",        "matching",     "dice",
    "jaccard",       "jaro",          "damerau_levenshtein", "levenshtein", "lcs",
    "avg_tfidf",     "avg_tf_q_in_s", "avg_tf_s_in_q", "word_overlap", "avg_word2vec"};

using FeatureVector = std::array<double, kFeatureCount>;

/// Both fragments after the preprocessing pipeline; the texts are the lemma
/// token lists joined by single spaces.
struct PreparedPair {
    std::vector<std::string> q_tokens, a_tokens;
    std::string q_text, a_text;
};

namespace strmetric {

/// Raw Levenshtein distance (character level).
inline size_t levenshtein(const std::string& a, const std::string& b) {
    const size_t n = a.size(), m = b.size();
    std::vector<size_t> prev(m + 1), cur(m + 1);
    for (size_t j = 0; j <= m; ++j) prev[j] = j;
    for (size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        for (size_t j = 1; j <= m; ++j) {
            size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

/// Raw Damerau-Levenshtein distance with adjacent transpositions
/// (optimal string alignment).
inline size_t damerau_levenshtein(const std::string& a, const std::string& b) {
    const size_t n = a.size(), m = b.size();
    std::vector<std::vector<size_t>> d(n + 1, std::vector<size_t>(m + 1));
    for (size_t i = 0; i <= n; ++i) d[i][0] = i;
    for (size_t j = 0; j <= m; ++j) d[0][j] = j;
    for (size_t i = 1; i <= n; ++i) {
        for (size_t j = 1; j <= m; ++j) {
            size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost});
            if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1])
                d[i][j] = std::min(d[i][j], d[i - 2][j - 2] + 1);
        }
    }
    return d[n][m];
}

/// Jaro similarity, matching window max(len)/2 - 1.
inline double jaro(const std::string& a, const std::string& b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    const size_t n = a.size(), m = b.size();
    const size_t window = std::max(n, m) / 2 == 0 ? 0 : std::max(n, m) / 2 - 1;
    std::vector<bool> a_used(n, false), b_used(m, false);
    size_t matches = 0;
    for (size_t i = 0; i < n; ++i) {
        size_t lo = i > window ? i - window : 0;
        size_t hi = std::min(m, i + window + 1);
        for (size_t j = lo; j < hi; ++j) {
            if (!b_used[j] && a[i] == b[j]) {
                a_used[i] = b_used[j] = true;
                ++matches;
                break;
            }
        }
    }
    if (matches == 0) return 0.0;
    size_t transpositions = 0, k = 0;
    for (size_t i = 0; i < n; ++i) {
        if (!a_used[i]) continue;
        while (!b_used[k]) ++k;
        if (a[i] != b[k]) ++transpositions;
        ++k;
    }
    double mm = static_cast<double>(matches);
    return (mm / n + mm / m + (mm - transpositions / 2.0) / mm) / 3.0;
}

/// Length of the longest common contiguous substring.
inline size_t lcs_substring(const std::string& a, const std::string& b) {
    if (a.empty() || b.empty()) return 0;
    std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    size_t best = 0;
    for (size_t i = 1; i <= a.size(); ++i) {
        for (size_t j = 1; j <= b.size(); ++j) {
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
            best = std::max(best, cur[j]);
        }
        std::swap(prev, cur);
    }
    return best;
}

}  // namespace strmetric

inline PreparedPair prepare(const std::string& question, const std::string& article_text,
                            const PipeTables& tables = PipeTables::builtin()) {
    PreparedPair p;
    p.q_tokens = lemma_tokens(question, tables);
    p.a_tokens = lemma_tokens(article_text, tables);
    auto join = [](const std::vector<std::string>& toks) {
        std::string s;
        for (size_t i = 0; i < toks.size(); ++i) {
            if (i) s += ' ';
            s += toks[i];
        }
        return s;
    };
    p.q_text = join(p.q_tokens);
    p.a_text = join(p.a_tokens);
    return p;
}

namespace detail {

inline std::map<std::string, int> tf_counts(const std::vector<std::string>& tokens) {
    std::map<std::string, int> tf;
    for (const auto& t : tokens) ++tf[t];
    return tf;
}

}  // namespace detail

/// The nine distance-group features, in feature order.
inline std::array<double, 9> distance_features(const PreparedPair& p) {
    auto q_tf = detail::tf_counts(p.q_tokens);
    auto a_tf = detail::tf_counts(p.a_tokens);

    double manhattan = 0.0, euclidean = 0.0, dot = 0.0, qn = 0.0, an = 0.0;
    size_t inter = 0, uni = 0;
    {
        auto qi = q_tf.begin();
        auto ai = a_tf.begin();
        while (qi != q_tf.end() || ai != a_tf.end()) {
            int qc = 0, ac = 0;
            if (ai == a_tf.end() || (qi != q_tf.end() && qi->first < ai->first)) {
                qc = (qi++)->second;
            } else if (qi == q_tf.end() || ai->first < qi->first) {
                ac = (ai++)->second;
            } else {
                qc = (qi++)->second;
                ac = (ai++)->second;
                ++inter;
            }
            ++uni;
            manhattan += std::abs(qc - ac);
            euclidean += static_cast<double>(qc - ac) * (qc - ac);
            dot += static_cast<double>(qc) * ac;
            qn += static_cast<double>(qc) * qc;
            an += static_cast<double>(ac) * ac;
        }
    }
    euclidean = std::sqrt(euclidean);

    const bool both_empty = p.q_tokens.empty() && p.a_tokens.empty();
    double cosine;
    if (both_empty)
        cosine = 1.0;
    else if (qn == 0.0 || an == 0.0)
        cosine = 0.0;
    else
        cosine = dot / (std::sqrt(qn) * std::sqrt(an));

    double matching = static_cast<double>(inter);
    double dice = both_empty ? 1.0
                             : 2.0 * static_cast<double>(inter) /
                                   static_cast<double>(q_tf.size() + a_tf.size());
    double jaccard =
        uni == 0 ? 0.0 : 1.0 - static_cast<double>(inter) / static_cast<double>(uni);

    double jaro = strmetric::jaro(p.q_text, p.a_text);
    size_t max_len = std::max(p.q_text.size(), p.a_text.size());
    double dl = 0.0, lev = 0.0;
    if (max_len > 0) {
        dl = static_cast<double>(strmetric::damerau_levenshtein(p.q_text, p.a_text)) / max_len;
        lev = static_cast<double>(strmetric::levenshtein(p.q_text, p.a_text)) / max_len;
    }
    return {manhattan, euclidean, cosine, matching, dice, jaccard, jaro, dl, lev};
}

/// The five statistical-group features, in feature order. The model supplies
/// document frequencies for the TF-IDF average.
inline std::array<double, 5> statistical_features(const PreparedPair& p, const NGramModel& model) {
    auto q_tf = detail::tf_counts(p.q_tokens);
    auto a_tf = detail::tf_counts(p.a_tokens);

    double lcs = 0.0;
    if (!p.q_text.empty() && !p.a_text.empty()) {
        lcs = static_cast<double>(strmetric::lcs_substring(p.q_text, p.a_text)) /
              static_cast<double>(std::min(p.q_text.size(), p.a_text.size()));
    }

    double tfidf_sum = 0.0, tf_q_in_s = 0.0;
    size_t present = 0, overlap = 0;
    for (const auto& [tok, _] : q_tf) {
        auto it = a_tf.find(tok);
        if (it != a_tf.end()) {
            tfidf_sum += static_cast<double>(it->second) * idf(model, tok);
            tf_q_in_s += it->second;
            ++present;
            ++overlap;
        }
    }
    double avg_tfidf = present ? tfidf_sum / static_cast<double>(present) : 0.0;
    double avg_tf_q_in_s = q_tf.empty() ? 0.0 : tf_q_in_s / static_cast<double>(q_tf.size());

    double tf_s_in_q = 0.0;
    for (const auto& [tok, _] : a_tf) {
        auto it = q_tf.find(tok);
        if (it != q_tf.end()) tf_s_in_q += it->second;
    }
    double avg_tf_s_in_q = a_tf.empty() ? 0.0 : tf_s_in_q / static_cast<double>(a_tf.size());

    return {lcs, avg_tfidf, avg_tf_q_in_s, avg_tf_s_in_q, static_cast<double>(overlap)};
}

inline FeatureVector extract(const std::string& question, const std::string& article_text,
                             const NGramModel& model, const EmbeddingTable& emb,
                             const PipeTables& tables = PipeTables::builtin(),
                             bool all_pairs_w2v = false) {
    PreparedPair p = prepare(question, article_text, tables);
    auto dist = distance_features(p);
    auto stat = statistical_features(p, model);
    FeatureVector v{};
    std::copy(dist.begin(), dist.end(), v.begin());
    std::copy(stat.begin(), stat.end(), v.begin() + dist.size());
    v[14] = avg_similarity(emb, p.q_tokens, p.a_tokens, all_pairs_w2v);
    return v;
}

}  // namespace lqa

#endif
