#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qgstat {

/// Word over the alphabet {1..l}.
using Word = std::vector<int>;

bool is_lyndon(const Word& word);

/// All Lyndon words over {1..l} with length <= max_len, in lexicographic order
/// (Duval's successor algorithm).
std::vector<Word> lyndon_words(int alphabet_size, int max_len);

/// Letter multiset [1^m_1, ..., l^m_l] stored as multiplicities m_1..m_l.
using LetterMultiset = std::vector<int>;

struct LyndonTuple {
    std::vector<Word> words;  // pairwise distinct, lexicographically decreasing
    int content_size = 0;     // |M|

    int word_count() const { return static_cast<int>(words.size()); }
    int index() const { return content_size - word_count(); }
    bool odd() const { return index() % 2 != 0; }
};

/// "(2)(12)(1)"-style rendering.
std::string to_string(const LyndonTuple& tuple);

/// Every set of distinct Lyndon words whose letters add up to exactly M,
/// ordered by word count then rendering.
std::vector<LyndonTuple> lyndon_tuples(const LetterMultiset& multiset);

struct ParityCensus {
    std::int64_t even = 0;
    std::int64_t odd = 0;
};

ParityCensus tuple_parity_census(const LetterMultiset& multiset);

/// sum over sigma in S_l of (-1)^(number of cycles of sigma).
std::int64_t permutation_cycle_parity_sum(int l);

}  // namespace qgstat
