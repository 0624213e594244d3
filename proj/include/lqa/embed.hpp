#ifndef LQA_EMBED_HPP
#define LQA_EMBED_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace lqa {

struct EmbeddingTable {
    int dim = 0;
    std::unordered_map<std::string, std::vector<double>> vectors;
};

/// Loads word vectors in the plain text format: an optional "<count> <dim>"
/// header, then one "word v1 ... vD" line per entry. Duplicates: last wins.
inline EmbeddingTable load_embeddings(std::istream& in, std::ostream* warn = nullptr) {
    EmbeddingTable table;
    std::string line;
    size_t lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        std::vector<double> vec;
        double v;
        while (ls >> v) vec.push_back(v);
        if (first) {
            first = false;
            // header line: two integer fields, the second being the dimension
            if (vec.size() == 1) {
                char* end = nullptr;
                long count = std::strtol(word.c_str(), &end, 10);
                if (end && *end == '\0' && count >= 0) {
                    table.dim = static_cast<int>(vec[0]);
                    continue;
                }
            }
        }
        if (vec.empty())
            throw std::runtime_error("vector file line " + std::to_string(lineno) +
                                     ": no components");
        if (table.dim == 0) table.dim = static_cast<int>(vec.size());
        if (static_cast<int>(vec.size()) != table.dim)
            throw std::runtime_error("vector file line " + std::to_string(lineno) +
                                     ": expected " + std::to_string(table.dim) +
                                     " components, got " + std::to_string(vec.size()));
        for (double c : vec)
            if (!std::isfinite(c))
                throw std::runtime_error("vector file line " + std::to_string(lineno) +
                                         ": non-finite component");
        if (table.vectors.count(word) && warn)
            *warn << "warning: duplicate vector for \"" << word << "\", last wins\n";
        table.vectors[word] = std::move(vec);
    }
    return table;
}

inline EmbeddingTable load_embeddings(const std::string& path, std::ostream* warn = nullptr) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open vector file: " + path);
    return load_embeddings(in, warn);
}

/// Cosine of the two word vectors; 0 if either word is missing or zero-norm.
inline double embedding_cos(const EmbeddingTable& table, const std::string& w1,
                            const std::string& w2) {
    auto i1 = table.vectors.find(w1);
    auto i2 = table.vectors.find(w2);
    if (i1 == table.vectors.end() || i2 == table.vectors.end()) return 0.0;
    double dot = 0.0, n1 = 0.0, n2 = 0.0;
    for (size_t i = 0; i < i1->second.size(); ++i) {
        dot += i1->second[i] * i2->second[i];
        n1 += i1->second[i] * i1->second[i];
        n2 += i2->second[i] * i2->second[i];
    }
    if (n1 == 0.0 || n2 == 0.0) return 0.0;
    return dot / (std::sqrt(n1) * std::sqrt(n2));
}

/// Best-match average: for each distinct question token with a vector, the
/// maximum non-negative cosine against the article tokens, then the mean.
/// The all-pairs mean is available for ablation.
inline double avg_similarity(const EmbeddingTable& table, const std::vector<std::string>& q_tokens,
                             const std::vector<std::string>& a_tokens, bool all_pairs = false) {
    if (q_tokens.empty() || a_tokens.empty()) return 0.0;
    std::set<std::string> q_set(q_tokens.begin(), q_tokens.end());
    std::set<std::string> a_set(a_tokens.begin(), a_tokens.end());

    if (all_pairs) {
        double sum = 0.0;
        size_t n = 0;
        for (const auto& q : q_set)
            for (const auto& a : a_set) {
                sum += std::max(0.0, embedding_cos(table, q, a));
                ++n;
            }
        return n ? sum / static_cast<double>(n) : 0.0;
    }

    double sum = 0.0;
    size_t covered = 0;
    for (const auto& q : q_set) {
        if (!table.vectors.count(q)) continue;
        double best = 0.0;
        for (const auto& a : a_set) best = std::max(best, embedding_cos(table, q, a));
        sum += std::max(0.0, best);
        ++covered;
    }
    return covered ? sum / static_cast<double>(covered) : 0.0;
}

}  // namespace lqa

#endif
