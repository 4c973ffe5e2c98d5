#include "ismq/words.hpp"

#include "ismq/error.hpp"

#include <algorithm>

namespace ismq {

Word::Word(unsigned alphabet_size) : alphabet_(alphabet_size) {
    if (alphabet_size == 0) throw Error("bad_word", "alphabet size must be positive");
}

Word::Word(unsigned alphabet_size, std::vector<unsigned> letters)
    : alphabet_(alphabet_size), letters_(std::move(letters)) {
    if (alphabet_size == 0) throw Error("bad_word", "alphabet size must be positive");
    for (unsigned a : letters_)
        if (a < 1 || a > alphabet_)
            throw Error("bad_word", "letter " + std::to_string(a) + " outside [1, " +
                                        std::to_string(alphabet_) + "]");
}

Word Word::child(unsigned letter) const {
    if (letter < 1 || letter > alphabet_)
        throw Error("bad_word", "letter " + std::to_string(letter) + " outside alphabet");
    Word out(*this);
    out.letters_.push_back(letter);
    return out;
}

Word Word::prefix(std::size_t n) const {
    if (n > letters_.size()) throw Error("bad_word", "prefix longer than word");
    return Word(alphabet_, std::vector<unsigned>(letters_.begin(), letters_.begin() + n));
}

std::string Word::str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(letters_[i]);
    }
    return out + ")";
}

Word concat(const Word& a, const Word& b) {
    if (a.alphabet_size() != b.alphabet_size())
        throw Error("alphabet_mismatch", "cannot concatenate words over different alphabets");
    std::vector<unsigned> letters(a.letters().begin(), a.letters().end());
    letters.insert(letters.end(), b.letters().begin(), b.letters().end());
    return Word(a.alphabet_size(), std::move(letters));
}

Word predecessor(const Word& w) {
    if (w.empty()) throw Error("empty_word", "the empty word has no predecessor");
    return w.prefix(w.length() - 1);
}

Relation relation(const Word& a, const Word& b) {
    if (a.alphabet_size() != b.alphabet_size())
        throw Error("alphabet_mismatch", "cannot compare words over different alphabets");
    const std::size_t n = std::min(a.length(), b.length());
    if (!std::equal(a.letters().begin(), a.letters().begin() + n, b.letters().begin()))
        return Relation::incomparable;
    if (a.length() == b.length()) return Relation::equal;
    return a.length() < b.length() ? Relation::prefix_of : Relation::extends;
}

std::vector<Word> all_words(unsigned alphabet_size, std::size_t n) {
    return descendants(Word(alphabet_size), n);
}

std::vector<Word> descendants(const Word& w, std::size_t h) {
    std::vector<Word> level{w};
    for (std::size_t d = 0; d < h; ++d) {
        std::vector<Word> next;
        next.reserve(level.size() * w.alphabet_size());
        for (const Word& u : level)
            for (unsigned a = 1; a <= w.alphabet_size(); ++a) next.push_back(u.child(a));
        level = std::move(next);
    }
    return level;
}

WeightSystem::WeightSystem(std::vector<Rational> w, std::vector<Rational> c)
    : weights(std::move(w)), ratios(std::move(c)) {
    if (weights.empty() || weights.size() != ratios.size())
        throw Error("bad_weights", "weights and ratios must be nonempty and of equal length");
    Rational total = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        // a single-letter system may carry weight exactly 1
        if (weights[i] <= 0 || weights[i] > 1 || ratios[i] <= 0 || ratios[i] >= 1)
            throw Error("bad_weights", "weights must lie in (0, 1] and ratios in (0, 1)");
        total += weights[i];
    }
    if (total > 1) throw Error("bad_weights", "weights sum to more than 1");
}

Rational product(const Word& w, std::span<const Rational> values) {
    if (w.alphabet_size() != values.size())
        throw Error("alphabet_mismatch", "word alphabet does not match the value table");
    Rational out = 1;
    for (unsigned a : w.letters()) out *= values[a - 1];
    return out;
}

std::size_t Antichain::min_length() const {
    std::size_t n = members.empty() ? 0 : members.front().length();
    for (const Word& w : members) n = std::min(n, w.length());
    return n;
}

std::size_t Antichain::max_length() const {
    std::size_t n = 0;
    for (const Word& w : members) n = std::max(n, w.length());
    return n;
}

namespace {

// Lexicographically first word of length `depth` having no prefix among the
// sorted antichain slice [lo, hi), all of whose members extend `prefix`.
std::optional<Word> first_uncovered(const Word& prefix, std::span<const Word> slice,
                                    std::size_t depth) {
    if (slice.empty()) {
        Word w = prefix;
        while (w.length() < depth) w = w.child(1);
        return w;
    }
    if (slice.front() == prefix) return std::nullopt;
    const std::size_t pos = prefix.length();
    auto it = slice.begin();
    for (unsigned a = 1; a <= prefix.alphabet_size(); ++a) {
        auto end = std::find_if(it, slice.end(), [&](const Word& w) { return w[pos] != a; });
        if (auto hole = first_uncovered(prefix.child(a), std::span<const Word>(it, end), depth))
            return hole;
        it = end;
    }
    return std::nullopt;
}

}  // namespace

AntichainCheck check_maximal_antichain(std::span<const Word> members, unsigned alphabet_size) {
    if (members.empty()) throw Error("empty_antichain", "antichain check needs at least one word");
    for (const Word& w : members)
        if (w.alphabet_size() != alphabet_size)
            throw Error("alphabet_mismatch", "antichain member " + w.str() + " uses another alphabet");

    std::vector<Word> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());

    AntichainCheck out;
    // In lexicographic order every extension of u follows u directly or after
    // other extensions of u, so adjacent pairs expose any comparable pair.
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        if (comparable(sorted[i], sorted[i + 1])) {
            out.verdict = AntichainCheck::Verdict::invalid;
            out.comparable_pair = std::make_pair(sorted[i], sorted[i + 1]);
            return out;
        }
    }

    std::size_t depth = 0;
    for (const Word& w : sorted) depth = std::max(depth, w.length());
    BigInt covered = 0;
    BigInt full;
    mpz_ui_pow_ui(full.get_mpz_t(), alphabet_size, depth);
    for (const Word& w : sorted) {
        BigInt c;
        mpz_ui_pow_ui(c.get_mpz_t(), alphabet_size, depth - w.length());
        covered += c;
    }
    if (covered == full) {
        out.verdict = AntichainCheck::Verdict::valid_maximal;
        return out;
    }
    out.verdict = AntichainCheck::Verdict::valid_nonmaximal;
    out.uncovered = first_uncovered(Word(alphabet_size), sorted, depth);
    return out;
}

}  // namespace ismq

namespace ismq {

std::vector<Word> strict_prefixes(std::span<const Word> members) {
    std::vector<Word> out;
    for (const Word& w : members)
        for (std::size_t n = 0; n < w.length(); ++n) out.push_back(w.prefix(n));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace ismq
