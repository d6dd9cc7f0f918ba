#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace opn {

/// Letters are single printable characters. Words are plain strings; an
/// omega-word is always given in ultimately-periodic form (LassoWord).
using Letter = char;
using Word = std::string;

/// Ordered set of letters. Order is the declaration order from the source
/// (kept stable so serialization round-trips), lookup is linear — alphabets
/// here have a handful of letters.
class Alphabet {
  public:
    Alphabet() = default;

    explicit Alphabet(std::string letters) : letters_(std::move(letters)) {
        for (size_t i = 0; i < letters_.size(); ++i) {
            for (size_t j = i + 1; j < letters_.size(); ++j) {
                if (letters_[i] == letters_[j]) {
                    throw std::invalid_argument("alphabet: duplicate letter '" +
                                                std::string(1, letters_[i]) + "'");
                }
            }
        }
    }

    bool contains(Letter a) const { return letters_.find(a) != std::string::npos; }
    bool empty() const { return letters_.empty(); }
    size_t size() const { return letters_.size(); }
    Letter at(size_t i) const { return letters_.at(i); }
    const std::string& letters() const { return letters_; }

    bool contains_all(const Word& w) const {
        return std::all_of(w.begin(), w.end(), [&](Letter a) { return contains(a); });
    }

    /// Union keeping left-then-right declaration order.
    Alphabet merged_with(const Alphabet& other) const {
        std::string out = letters_;
        for (Letter a : other.letters_) {
            if (out.find(a) == std::string::npos) out.push_back(a);
        }
        return Alphabet(out);
    }

    bool operator==(const Alphabet& other) const { return letters_ == other.letters_; }

  private:
    std::string letters_;
};

/// Ultimately periodic omega-word u·v^ω. The cycle v must be nonempty.
struct LassoWord {
    Word spoke;  // u
    Word cycle;  // v, |v| >= 1

    LassoWord() = default;
    LassoWord(Word u, Word v) : spoke(std::move(u)), cycle(std::move(v)) {
        if (cycle.empty()) throw std::invalid_argument("lasso word: empty cycle");
    }

    /// Letter at absolute position i (0-based) of u·v^ω.
    Letter at(size_t i) const {
        if (i < spoke.size()) return spoke[i];
        return cycle[(i - spoke.size()) % cycle.size()];
    }

    /// Finite prefix of length n.
    Word prefix(size_t n) const {
        Word out;
        out.reserve(n);
        for (size_t i = 0; i < n; ++i) out.push_back(at(i));
        return out;
    }

    /// The suffix starting at absolute position q, again as a lasso
    /// (word from position q on equals v[o..]·v^ω once q is inside the cycle).
    LassoWord suffix(size_t q) const {
        if (q < spoke.size()) return LassoWord(spoke.substr(q), cycle);
        size_t o = (q - spoke.size()) % cycle.size();
        return LassoWord(cycle.substr(o), cycle);
    }

    bool operator==(const LassoWord& other) const {
        return spoke == other.spoke && cycle == other.cycle;
    }
};

}  // namespace opn
