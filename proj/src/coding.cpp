#include "opn/coding.hpp"

#include <stdexcept>

namespace opn {

Word flatten(const CodedPrefix& p) {
    Word out;
    for (const CodedBlock& b : p.blocks) {
        out.push_back(b.separator);
        out.append(b.zeros, kZero);
        out.push_back(b.payload);
    }
    if (p.trailing) {
        out.push_back(p.trailing->separator);
        out.append(p.trailing->zeros, kZero);
    }
    return out;
}

namespace {

CodedBlock canonical_block(uint32_t i, Letter payload) {
    if (!is_payload_letter(payload))
        throw std::invalid_argument(std::string("encode: reserved letter '") + payload +
                                    "' cannot be a payload");
    return CodedBlock{separator_for_block(i), i, payload};
}

}  // namespace

CodedPrefix encode_prefix(const Word& x, uint32_t blocks) {
    if (blocks > x.size())
        throw std::invalid_argument("encode_prefix: word shorter than requested block count");
    CodedPrefix p;
    for (uint32_t i = 1; i <= blocks; ++i) p.blocks.push_back(canonical_block(i, x[i - 1]));
    p.consumed = flatten(p).size();
    return p;
}

CodedPrefix encode_lasso(const LassoWord& x, uint32_t blocks) {
    CodedPrefix p;
    for (uint32_t i = 1; i <= blocks; ++i) p.blocks.push_back(canonical_block(i, x.at(i - 1)));
    p.consumed = flatten(p).size();
    return p;
}

CodedPrefix decode_prefix(const Word& w) {
    CodedPrefix p;
    size_t pos = 0;
    uint32_t block = 1;
    auto fail = [&](size_t at, std::string msg) {
        p.error = DecodeError{at, std::move(msg)};
        p.consumed = at;
    };

    while (pos < w.size()) {
        Letter expected = separator_for_block(block);
        if (w[pos] != expected) {
            if (block == 1)
                fail(pos, "first letter must be 'A'");
            else
                fail(pos, std::string("expected separator '") + expected + "'");
            return p;
        }
        PartialBlock partial{expected, 0};
        ++pos;
        while (pos < w.size() && w[pos] == kZero) {
            ++partial.zeros;
            ++pos;
        }
        if (pos == w.size()) {
            p.trailing = partial;
            p.consumed = pos;
            return p;
        }
        if (partial.zeros == 0) {
            p.trailing = partial;
            fail(pos, "zero-run of length zero (expected at least one '0')");
            return p;
        }
        if (!is_payload_letter(w[pos])) {
            p.trailing = partial;
            fail(pos, std::string("separator '") + w[pos] + "' where a payload letter is due");
            return p;
        }
        p.blocks.push_back(CodedBlock{partial.separator, partial.zeros, w[pos]});
        ++pos;
        ++block;
    }
    p.consumed = pos;
    return p;
}

std::optional<uint32_t> first_deviant_block(const CodedPrefix& p) {
    for (size_t i = 0; i < p.blocks.size(); ++i) {
        if (p.blocks[i].zeros != i + 1) return static_cast<uint32_t>(i + 1);
    }
    return std::nullopt;
}

Alphabet coded_alphabet(const Alphabet& sigma) {
    if (sigma.empty()) throw std::invalid_argument("coded alphabet: empty payload alphabet");
    for (Letter a : sigma.letters()) {
        if (is_reserved_letter(a))
            throw std::invalid_argument(std::string("coded alphabet: reserved letter '") + a +
                                        "' cannot be a payload letter");
    }
    std::string letters{kSepOdd, kZero, kSepEven};
    return Alphabet(letters).merged_with(sigma);
}

ShapeAutomaton shape_automaton(const Alphabet& sigma) {
    ShapeAutomaton r;
    r.alphabet = coded_alphabet(sigma);
    r.state_names = {"start", "sepA", "zerosA", "payA", "sepB", "zerosB", "payB"};
    r.initial = 0;
    r.accepting = {3, 6};
    r.step_table.assign(r.num_states() * r.alphabet.size(), -1);
    auto set = [&](StateId q, Letter a, StateId t) {
        r.step_table[q * r.alphabet.size() + r.alphabet.letters().find(a)] =
            static_cast<int32_t>(t);
    };
    set(0, kSepOdd, 1);
    set(1, kZero, 2);
    set(2, kZero, 2);
    set(3, kSepEven, 4);
    set(4, kZero, 5);
    set(5, kZero, 5);
    set(6, kSepOdd, 1);
    for (Letter a : sigma.letters()) {
        set(2, a, 3);
        set(5, a, 6);
    }
    return r;
}

PrefixDistance prefix_distance(const Word& u, const Word& v) {
    size_t l = 0;
    while (l < u.size() && l < v.size() && u[l] == v[l]) ++l;
    if (l == u.size() && l == v.size()) return PrefixDistance{true, 0};
    return PrefixDistance{false, static_cast<uint32_t>(l)};
}

PrefixStatus escape1_status(const Word& prefix) {
    // The complement condition is "first four letters spell A 0 payload B".
    for (size_t i = 0; i < prefix.size() && i < 4; ++i) {
        bool fits = (i == 0 && prefix[i] == kSepOdd) || (i == 1 && prefix[i] == kZero) ||
                    (i == 2 && is_payload_letter(prefix[i])) ||
                    (i == 3 && prefix[i] == kSepEven);
        if (!fits) return PrefixStatus::Witnessed;
    }
    return prefix.size() >= 4 ? PrefixStatus::Excluded : PrefixStatus::Undecided;
}

bool in_escape1(const LassoWord& w) {
    return escape1_status(w.prefix(4)) == PrefixStatus::Witnessed;
}

bool escape2_witness_in(const Word& w) {
    for (size_t i = 0; i < w.size(); ++i) {
        if (w[i] != kSepOdd && w[i] != kSepEven) continue;
        size_t j = i + 1;
        while (j < w.size() && w[j] == kZero) ++j;
        size_t n = j - (i + 1);
        if (n == 0 || j >= w.size() || !is_payload_letter(w[j])) continue;
        size_t jj = j + 1;
        Letter opposite = (w[i] == kSepOdd) ? kSepEven : kSepOdd;
        if (jj >= w.size() || w[jj] != opposite) continue;
        size_t q = jj + 1;
        while (q < w.size() && w[q] == kZero) ++q;
        size_t m = q - (jj + 1);
        if (m == 0 || q >= w.size() || !is_payload_letter(w[q])) continue;
        if (m <= n) return true;
    }
    return false;
}

bool in_escape2(const LassoWord& w) {
    Word window = w.spoke + w.cycle + w.cycle + w.cycle;
    return escape2_witness_in(window);
}

bool in_escape(const LassoWord& w) { return in_escape1(w) || in_escape2(w); }

bool code_prefix_compatible(const Word& prefix) {
    uint32_t block = 1;
    uint32_t zeros_seen = 0;
    enum { Sep, Zeros, Payload } expect = Sep;
    for (Letter c : prefix) {
        switch (expect) {
            case Sep:
                if (c != separator_for_block(block)) return false;
                zeros_seen = 0;
                expect = Zeros;
                break;
            case Zeros:
                if (c != kZero) return false;
                if (++zeros_seen == block) expect = Payload;
                break;
            case Payload:
                if (!is_payload_letter(c)) return false;
                ++block;
                expect = Sep;
                break;
        }
    }
    return true;
}

}  // namespace opn
