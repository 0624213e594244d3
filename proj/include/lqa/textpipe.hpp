#ifndef LQA_TEXTPIPE_HPP
#define LQA_TEXTPIPE_HPP

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lqa/builtin_data.hpp"

namespace lqa {

/// Mixed-size n-gram set: space-joined lemma sequences of length 1..k.
using NGramSet = std::set<std::string>;

/// Stopword list and lemma exception table. Defaults are embedded;
/// either can be overridden from a file.
struct PipeTables {
    std::unordered_set<std::string> stopwords;
    std::unordered_map<std::string, std::string> lemma_exceptions;

    static PipeTables parse(std::string_view stopword_lines, std::string_view exception_lines) {
        PipeTables t;
        std::istringstream stops{std::string(stopword_lines)};
        std::string line;
        while (std::getline(stops, line))
            if (!line.empty()) t.stopwords.insert(line);
        std::istringstream exc{std::string(exception_lines)};
        while (std::getline(exc, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            std::string form, lemma;
            if (ls >> form >> lemma) t.lemma_exceptions[form] = lemma;
        }
        return t;
    }

    static const PipeTables& builtin() {
        static const PipeTables t = parse(data::kStopwords, data::kLemmaExceptions);
        return t;
    }

    static PipeTables load(const std::optional<std::string>& stopword_path,
                           const std::optional<std::string>& exception_path) {
        auto slurp = [](const std::string& path) {
            std::ifstream in(path);
            if (!in) throw std::runtime_error("cannot open " + path);
            std::ostringstream out;
            out << in.rdbuf();
            return out.str();
        };
        std::string stops{data::kStopwords};
        std::string exc{data::kLemmaExceptions};
        if (stopword_path) stops = slurp(*stopword_path);
        if (exception_path) exc = slurp(*exception_path);
        return parse(stops, exc);
    }
};

namespace detail {

inline bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

inline bool punct_only(const std::string& tok) {
    return !tok.empty() && std::all_of(tok.begin(), tok.end(), is_punct);
}

inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

inline bool ends_with(const std::string& s, std::string_view suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

inline bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// After stripping -ing/-ed: undo consonant doubling, restore a dropped final e.
inline std::string fix_stem(std::string stem) {
    size_t n = stem.size();
    if (n >= 3) {
        char last = stem[n - 1], prev = stem[n - 2];
        if (last == prev && !is_vowel(last) && last != 'l' && last != 's') {
            stem.pop_back();
            return stem;
        }
    }
    if (n >= 3) {
        char last = stem[n - 1];
        bool e_dropped = last == 'g' || last == 'v' || last == 'c' || last == 'u' ||
                         last == 'z' || (last == 's' && stem[n - 2] != 's');
        if (e_dropped) stem += 'e';
    }
    return stem;
}

}  // namespace detail

/// Splits on whitespace, then separates leading and trailing punctuation
/// characters into single-character tokens. Case is preserved.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::istringstream in{std::string(text)};
    std::string chunk;
    while (in >> chunk) {
        size_t b = 0, e = chunk.size();
        while (b < e && detail::is_punct(chunk[b])) ++b;
        while (e > b && detail::is_punct(chunk[e - 1])) --e;
        for (size_t i = 0; i < b; ++i) out.push_back(std::string(1, chunk[i]));
        if (e > b) out.push_back(chunk.substr(b, e - b));
        for (size_t i = e; i < chunk.size(); ++i) out.push_back(std::string(1, chunk[i]));
    }
    return out;
}

inline std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                                 const PipeTables& tables = PipeTables::builtin()) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& tok : tokens) {
        if (detail::punct_only(tok)) continue;
        if (tables.stopwords.count(detail::lower(tok))) continue;
        out.push_back(tok);
    }
    return out;
}

/// Lowercases, then applies the exceptions table followed by suffix rules.
/// Idempotent on its own outputs.
inline std::string lemmatize(const std::string& token,
                             const PipeTables& tables = PipeTables::builtin()) {
    using namespace detail;
    std::string w = lower(token);
    if (auto it = tables.lemma_exceptions.find(w); it != tables.lemma_exceptions.end())
        return it->second;
    if (ends_with(w, "ies") && w.size() > 4)
        return w.substr(0, w.size() - 3) + "y";
    if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is"))
        return w;
    if (w.size() > 3 && (ends_with(w, "sses") || ends_with(w, "xes") || ends_with(w, "zes") ||
                         ends_with(w, "ches") || ends_with(w, "shes") || ends_with(w, "oes")))
        return w.substr(0, w.size() - 2);
    if (ends_with(w, "s") && w.size() > 3)
        return w.substr(0, w.size() - 1);
    if (ends_with(w, "eed"))
        return w;
    if (ends_with(w, "ing") && w.size() > 5)
        return fix_stem(w.substr(0, w.size() - 3));
    if (ends_with(w, "ed") && w.size() > 4)
        return fix_stem(w.substr(0, w.size() - 2));
    return w;
}

inline NGramSet ngram_set(const std::vector<std::string>& lemmas, int k) {
    if (k < 1) throw std::invalid_argument("ngram_set: k must be >= 1");
    NGramSet grams;
    for (int n = 1; n <= k; ++n) {
        if (lemmas.size() < static_cast<size_t>(n)) break;
        for (size_t i = 0; i + n <= lemmas.size(); ++i) {
            std::string key = lemmas[i];
            for (size_t j = 1; j < static_cast<size_t>(n); ++j) key += " " + lemmas[i + j];
            grams.insert(std::move(key));
        }
    }
    return grams;
}

/// tokenize -> remove_stopwords -> lemmatize, yielding the token sequence
/// n-grams are formed over.
inline std::vector<std::string> lemma_tokens(std::string_view text,
                                             const PipeTables& tables = PipeTables::builtin()) {
    std::vector<std::string> out;
    for (const auto& tok : remove_stopwords(tokenize(text), tables))
        out.push_back(lemmatize(tok, tables));
    return out;
}

inline NGramSet process(std::string_view text, int k,
                        const PipeTables& tables = PipeTables::builtin()) {
    return ngram_set(lemma_tokens(text, tables), k);
}

}  // namespace lqa

#endif
