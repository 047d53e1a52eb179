#include "qgstat/lyndon.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace qgstat {

bool is_lyndon(const Word& word) {
    const std::size_t n = word.size();
    if (n == 0) return false;
    for (std::size_t shift = 1; shift < n; ++shift) {
        // compare word with its rotation by `shift`
        bool smaller = false;
        for (std::size_t i = 0; i < n; ++i) {
            const int a = word[i];
            const int b = word[(i + shift) % n];
            if (a != b) {
                smaller = a < b;
                break;
            }
        }
        if (!smaller) return false;
    }
    return true;
}

std::vector<Word> lyndon_words(int alphabet_size, int max_len) {
    if (alphabet_size < 1 || max_len < 1) throw std::invalid_argument("lyndon_words: need l >= 1 and max_len >= 1");
    std::vector<Word> out;
    Word w{1};
    while (!w.empty()) {
        out.push_back(w);
        // Repeat w periodically up to max_len, strip trailing maximal letters,
        // then bump the last letter.
        const std::size_t period = w.size();
        while (static_cast<int>(w.size()) < max_len) w.push_back(w[w.size() - period]);
        while (!w.empty() && w.back() == alphabet_size) w.pop_back();
        if (!w.empty()) ++w.back();
    }
    return out;
}

std::string to_string(const LyndonTuple& tuple) {
    std::string s;
    for (const Word& w : tuple.words) {
        s += '(';
        for (int letter : w) s += std::to_string(letter);
        s += ')';
    }
    return s;
}

namespace {

LetterMultiset content_of(const Word& w, std::size_t letters) {
    LetterMultiset c(letters, 0);
    for (int x : w) ++c[static_cast<std::size_t>(x - 1)];
    return c;
}

}  // namespace

std::vector<LyndonTuple> lyndon_tuples(const LetterMultiset& multiset) {
    if (multiset.empty()) throw std::invalid_argument("lyndon_tuples: empty alphabet");
    for (int m : multiset) {
        if (m < 0) throw std::invalid_argument("lyndon_tuples: negative multiplicity");
    }
    const int total = std::accumulate(multiset.begin(), multiset.end(), 0);
    if (total == 0) throw std::invalid_argument("lyndon_tuples: empty multiset");
    const std::size_t letters = multiset.size();

    // Candidate words: Lyndon words whose content fits inside M.
    std::vector<Word> candidates;
    std::vector<LetterMultiset> contents;
    for (Word& w : lyndon_words(static_cast<int>(letters), total)) {
        LetterMultiset c = content_of(w, letters);
        bool fits = true;
        for (std::size_t i = 0; i < letters && fits; ++i) fits = c[i] <= multiset[i];
        if (fits) {
            candidates.push_back(std::move(w));
            contents.push_back(std::move(c));
        }
    }

    std::vector<LyndonTuple> out;
    LetterMultiset remaining = multiset;
    std::vector<std::size_t> picked;
    std::function<void(std::size_t, int)> choose = [&](std::size_t from, int left) {
        if (left == 0) {
            LyndonTuple t;
            t.content_size = total;
            for (std::size_t idx : picked) t.words.push_back(candidates[idx]);
            std::sort(t.words.begin(), t.words.end(), std::greater<>());
            out.push_back(std::move(t));
            return;
        }
        for (std::size_t i = from; i < candidates.size(); ++i) {
            const auto& c = contents[i];
            bool fits = true;
            for (std::size_t k = 0; k < letters && fits; ++k) fits = c[k] <= remaining[k];
            if (!fits) continue;
            for (std::size_t k = 0; k < letters; ++k) remaining[k] -= c[k];
            picked.push_back(i);
            choose(i + 1, left - static_cast<int>(candidates[i].size()));
            picked.pop_back();
            for (std::size_t k = 0; k < letters; ++k) remaining[k] += c[k];
        }
    };
    choose(0, total);

    std::sort(out.begin(), out.end(), [](const LyndonTuple& a, const LyndonTuple& b) {
        if (a.word_count() != b.word_count()) return a.word_count() < b.word_count();
        return to_string(a) < to_string(b);
    });
    return out;
}

ParityCensus tuple_parity_census(const LetterMultiset& multiset) {
    ParityCensus census;
    for (const auto& t : lyndon_tuples(multiset)) (t.odd() ? census.odd : census.even)++;
    return census;
}

std::int64_t permutation_cycle_parity_sum(int l) {
    if (l < 1 || l > 12) throw std::invalid_argument("permutation_cycle_parity_sum: need 1 <= l <= 12");
    std::vector<int> perm(static_cast<std::size_t>(l));
    std::iota(perm.begin(), perm.end(), 0);
    std::int64_t sum = 0;
    do {
        std::vector<bool> seen(perm.size(), false);
        int cycles = 0;
        for (std::size_t i = 0; i < perm.size(); ++i) {
            if (seen[i]) continue;
            ++cycles;
            for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) seen[j] = true;
        }
        sum += cycles % 2 == 0 ? 1 : -1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

}  // namespace qgstat
