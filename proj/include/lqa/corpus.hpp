#ifndef LQA_CORPUS_HPP
#define LQA_CORPUS_HPP

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace lqa {

/// Orders article ids by their leading number, then lexicographically,
/// so "9" < "10" and "255" < "255-2".
struct ArticleIdLess {
    static long numeric_prefix(const std::string& id) {
        return std::strtol(id.c_str(), nullptr, 10);
    }
    bool operator()(const std::string& a, const std::string& b) const {
        long na = numeric_prefix(a), nb = numeric_prefix(b);
        if (na != nb) return na < nb;
        return a < b;
    }
};

using IdSet = std::set<std::string, ArticleIdLess>;

struct Article {
    std::string id;
    std::optional<std::string> title;
    std::string body;
    IdSet refs;

    /// Content used downstream: title text (if any) concatenated before the body.
    std::string full_text() const {
        return title ? *title + " " + body : body;
    }

    bool operator==(const Article&) const = default;
};

struct Corpus {
    std::map<std::string, Article, ArticleIdLess> articles;
    // (article id, referenced id) pairs whose target is absent from the corpus
    std::vector<std::pair<std::string, std::string>> unresolved;

    bool operator==(const Corpus&) const = default;
};

struct TrainingPair {
    std::string qid;
    std::string question;
    std::vector<std::string> relevant;
    std::optional<bool> label;  // true = YES, false = NO; absent for retrieval-only pairs
    std::vector<std::string> unresolved;  // relevant ids that did not resolve

    bool operator==(const TrainingPair&) const = default;
};

/// Extracts article ids cited by a body of text. Recognized patterns:
/// "Article N", "Articles N and M", "Articles N to M" (range inclusive).
inline IdSet detect_references(const std::string& body) {
    static const std::regex pat(
        R"(Articles?\s+(\d+(?:-\d+)?)(?:\s+(and|to)\s+(\d+(?:-\d+)?))?)");
    IdSet out;
    for (std::sregex_iterator it(body.begin(), body.end(), pat), end; it != end; ++it) {
        const std::smatch& m = *it;
        std::string first = m[1].str();
        out.insert(first);
        if (!m[2].matched) continue;
        std::string second = m[3].str();
        if (m[2].str() == "and") {
            out.insert(second);
        } else {  // "to": expand the numeric range inclusively
            long lo = ArticleIdLess::numeric_prefix(first);
            long hi = ArticleIdLess::numeric_prefix(second);
            for (long n = lo; n <= hi; ++n) out.insert(std::to_string(n));
        }
    }
    return out;
}

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline bool is_title_line(const std::string& line) {
    std::string t = trim(line);
    return t.size() >= 2 && t.front() == '(' && t.back() == ')';
}

}  // namespace detail

/// Parses the canonical statute text format: an article starts at a line
/// matching "Article <id>"; a directly preceding fully-parenthesized line is
/// its title; the body runs to the next header or EOF.
inline Corpus parse_statutes(const std::string& text) {
    static const std::regex header(R"(^Article\s*(\d+(?:-\d+)?)(.*)$)");

    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines.push_back(line);
        }
    }

    Corpus corpus;
    std::optional<Article> current;
    std::vector<std::string> body_lines;

    auto finalize = [&]() {
        if (!current) return;
        std::ostringstream body;
        for (size_t i = 0; i < body_lines.size(); ++i) {
            if (i) body << "\n";
            body << body_lines[i];
        }
        current->body = detail::trim(body.str());
        if (current->body.empty())
            throw std::runtime_error("article " + current->id + " has an empty body");
        current->refs = detect_references(current->body);
        current->refs.erase(current->id);
        if (corpus.articles.count(current->id))
            throw std::runtime_error("duplicate article id " + current->id);
        corpus.articles.emplace(current->id, std::move(*current));
        current.reset();
        body_lines.clear();
    };

    for (size_t i = 0; i < lines.size(); ++i) {
        std::smatch m;
        if (std::regex_match(lines[i], m, header)) {
            // the previous line, if fully parenthesized, titles this article
            std::optional<std::string> title;
            if (i > 0 && detail::is_title_line(lines[i - 1])) {
                std::string t = detail::trim(lines[i - 1]);
                title = t.substr(1, t.size() - 2);
                if (current && !body_lines.empty()) body_lines.pop_back();
            }
            finalize();
            current = Article{m[1].str(), title, "", {}};
            std::string rest = detail::trim(m[2].str());
            if (!rest.empty()) body_lines.push_back(rest);
        } else if (current) {
            body_lines.push_back(lines[i]);
        }
    }
    finalize();

    for (auto& [id, art] : corpus.articles)
        for (const auto& ref : art.refs)
            if (!corpus.articles.count(ref)) corpus.unresolved.emplace_back(id, ref);
    return corpus;
}

inline nlohmann::json corpus_to_json(const Corpus& c) {
    nlohmann::json arts = nlohmann::json::array();
    for (const auto& [id, a] : c.articles) {
        nlohmann::json j{{"id", a.id}, {"body", a.body},
                         {"refs", std::vector<std::string>(a.refs.begin(), a.refs.end())}};
        if (a.title) j["title"] = *a.title;
        arts.push_back(std::move(j));
    }
    nlohmann::json unresolved = nlohmann::json::array();
    for (const auto& [from, to] : c.unresolved) unresolved.push_back({from, to});
    return {{"articles", arts}, {"unresolved", unresolved}};
}

inline Corpus corpus_from_json(const nlohmann::json& j) {
    Corpus c;
    for (const auto& ja : j.at("articles")) {
        Article a;
        a.id = ja.at("id").get<std::string>();
        a.body = ja.at("body").get<std::string>();
        if (ja.contains("title")) a.title = ja.at("title").get<std::string>();
        for (const auto& r : ja.at("refs")) a.refs.insert(r.get<std::string>());
        c.articles.emplace(a.id, std::move(a));
    }
    for (const auto& ju : j.at("unresolved"))
        c.unresolved.emplace_back(ju.at(0).get<std::string>(), ju.at(1).get<std::string>());
    return c;
}

/// Loads the JSONL pair format. Unresolvable relevant ids are warned about and
/// flagged on the pair; malformed records are hard errors naming the line.
inline std::vector<TrainingPair> load_pairs(std::istream& in, const Corpus& corpus,
                                            std::ostream* warn = nullptr) {
    std::vector<TrainingPair> pairs;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error("pair file line " + std::to_string(lineno) +
                                     ": invalid JSON: " + e.what());
        }
        TrainingPair p;
        try {
            p.qid = j.at("qid").get<std::string>();
            p.question = j.at("question").get<std::string>();
            p.relevant = j.at("relevant").get<std::vector<std::string>>();
            if (j.contains("label")) {
                std::string l = j.at("label").get<std::string>();
                if (l == "Y") p.label = true;
                else if (l == "N") p.label = false;
                else throw std::runtime_error("label must be \"Y\" or \"N\"");
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("pair file line " + std::to_string(lineno) + ": " + e.what());
        }
        if (p.relevant.empty())
            throw std::runtime_error("pair file line " + std::to_string(lineno) +
                                     ": empty relevant set");
        for (const auto& id : p.relevant) {
            if (!corpus.articles.count(id)) {
                p.unresolved.push_back(id);
                if (warn)
                    *warn << "warning: pair " << p.qid << " references unknown article " << id
                          << "\n";
            }
        }
        pairs.push_back(std::move(p));
    }
    return pairs;
}

inline std::vector<TrainingPair> load_pairs(const std::string& path, const Corpus& corpus,
                                            std::ostream* warn = nullptr) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pair file: " + path);
    return load_pairs(in, corpus, warn);
}

}  // namespace lqa

#endif
