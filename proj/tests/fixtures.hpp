#ifndef LQA_TESTS_FIXTURES_HPP
#define LQA_TESTS_FIXTURES_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lqa/corpus.hpp"

namespace fixtures {

inline std::string data_dir() { return LQA_DATA_DIR; }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("fixture missing: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline lqa::Corpus statutes() {
    return lqa::parse_statutes(slurp(data_dir() + "/statutes_fixture.txt"));
}

inline std::vector<lqa::TrainingPair> pairs(const lqa::Corpus& corpus) {
    return lqa::load_pairs(data_dir() + "/pairs_fixture.jsonl", corpus, nullptr);
}

/// Tiny corpus with controlled vocabulary. Articles: "1" {alpha beta},
/// "2" {beta gamma} referencing 1, "3" {delta}.
inline lqa::Corpus tiny() {
    return lqa::parse_statutes(
        "Article 1 The alpha duty binds the beta party.\n"
        "Article 2 The beta duty follows Article 1 concerning the gamma claim.\n"
        "Article 3 The delta rule stands alone.\n");
}

}  // namespace fixtures

#endif
