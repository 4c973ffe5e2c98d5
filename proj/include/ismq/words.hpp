#pragma once

#include "ismq/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ismq {

// A finite word over {1, ..., alphabet_size}. Letters are 1-based everywhere
// they are visible; the empty word is the one with no letters.
class Word {
public:
    // placeholder with no alphabet; assign a real word before use
    Word() : alphabet_(0) {}
    explicit Word(unsigned alphabet_size);
    Word(unsigned alphabet_size, std::vector<unsigned> letters);

    unsigned alphabet_size() const noexcept { return alphabet_; }
    std::size_t length() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }

    // 1-based letter at 0-based position.
    unsigned operator[](std::size_t pos) const { return letters_[pos]; }
    std::span<const unsigned> letters() const noexcept { return letters_; }

    Word child(unsigned letter) const;
    Word prefix(std::size_t n) const;

    std::string str() const;

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;

private:
    unsigned alphabet_;
    std::vector<unsigned> letters_;
};

Word concat(const Word& a, const Word& b);

// Drops the last letter. Throws on the empty word.
Word predecessor(const Word& w);

enum class Relation { equal, prefix_of, extends, incomparable };

// prefix_of: a is a strict prefix of b; extends: b is a strict prefix of a.
Relation relation(const Word& a, const Word& b);

inline bool comparable(const Word& a, const Word& b) {
    return relation(a, b) != Relation::incomparable;
}

// All words of length n (lexicographic order).
std::vector<Word> all_words(unsigned alphabet_size, std::size_t n);

// Words of length |w| + h having w as prefix.
std::vector<Word> descendants(const Word& w, std::size_t h);

// Per-letter multiplicative data: weights (p_i or t_j) and contraction
// ratios (s_i or c_j), both in (0, 1).
struct WeightSystem {
    std::vector<Rational> weights;
    std::vector<Rational> ratios;

    WeightSystem() = default;
    WeightSystem(std::vector<Rational> w, std::vector<Rational> c);

    unsigned alphabet_size() const noexcept { return static_cast<unsigned>(weights.size()); }
};

// Product of values along the word; the empty word gives 1.
Rational product(const Word& w, std::span<const Rational> values);

inline Rational weight(const Word& w, const WeightSystem& ws) { return product(w, ws.weights); }
inline Rational ratio(const Word& w, const WeightSystem& ws) { return product(w, ws.ratios); }

struct Antichain {
    unsigned alphabet_size = 0;
    std::vector<Word> members;
    bool maximal = false;

    std::size_t min_length() const;
    std::size_t max_length() const;
};

struct AntichainCheck {
    enum class Verdict { valid_maximal, valid_nonmaximal, invalid };

    Verdict verdict = Verdict::invalid;
    std::optional<std::pair<Word, Word>> comparable_pair;
    std::optional<Word> uncovered;

    bool maximal() const noexcept { return verdict == Verdict::valid_maximal; }
};

// Pairwise incomparability plus coverage of every word of length L(members).
// Throws on empty input or on a member from another alphabet.
AntichainCheck check_maximal_antichain(std::span<const Word> members, unsigned alphabet_size);

}  // namespace ismq

namespace ismq {

// Every strict prefix (including the empty word) of some member, sorted
// lexicographically without duplicates. For a finite maximal antichain these
// are exactly the interior nodes of its prefix tree.
std::vector<Word> strict_prefixes(std::span<const Word> members);

}  // namespace ismq
