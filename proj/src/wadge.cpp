#include "opn/wadge.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

namespace opn {

Letter committed_letter(const CommittedWord& w, size_t i) {
    if (w.kind == CommittedWord::Kind::Lasso) return w.word.at(i);
    // Coded image: block n occupies n+2 letters (separator, n zeros, payload).
    uint32_t n = 1;
    size_t pos = i;
    while (pos >= static_cast<size_t>(n) + 2) {
        pos -= static_cast<size_t>(n) + 2;
        ++n;
    }
    if (pos == 0) return separator_for_block(n);
    if (pos <= n) return kZero;
    return w.word.at(n - 1);
}

Word committed_prefix(const CommittedWord& w, size_t len) {
    Word out;
    out.reserve(len);
    for (size_t i = 0; i < len; ++i) out.push_back(committed_letter(w, i));
    return out;
}

TriBool to_tribool(const Verdict& v) {
    switch (v.kind) {
        case VerdictKind::Accept: return TriBool::True;
        case VerdictKind::Reject: return TriBool::False;
        case VerdictKind::Unknown: return TriBool::Unknown;
    }
    return TriBool::Unknown;
}

TriBool to_tribool(const CodedEvidence& e) {
    switch (e.kind) {
        case CodedEvidenceKind::Accepting: return TriBool::True;
        case CodedEvidenceKind::Dead: return TriBool::False;
        case CodedEvidenceKind::Indecisive: return TriBool::Unknown;
    }
    return TriBool::Unknown;
}

Oracle make_machine_oracle(CounterMachine m, MemberBounds bounds) {
    return [m = std::move(m), bounds](const CommittedWord& w) -> TriBool {
        if (w.kind != CommittedWord::Kind::Lasso) return TriBool::Unknown;
        return to_tribool(lasso_member(m, w.word, bounds));
    };
}

Oracle make_union_oracle(std::shared_ptr<const SimulatorWithEscape> we, MemberBounds bounds,
                         uint32_t code_blocks, CodedMemberOptions copts) {
    if (!we) throw std::invalid_argument("union oracle: null machine");
    return [we = std::move(we), bounds, code_blocks, copts](const CommittedWord& w) -> TriBool {
        if (w.kind == CommittedWord::Kind::Lasso)
            return to_tribool(lasso_member(we->machine, w.word, bounds));
        return to_tribool(coded_evidence(*we, w.word, code_blocks, copts));
    };
}

Oracle empty_oracle() {
    return [](const CommittedWord&) { return TriBool::False; };
}

Oracle full_oracle() {
    return [](const CommittedWord&) { return TriBool::True; };
}

namespace {

TriBool negate(TriBool t) {
    switch (t) {
        case TriBool::True: return TriBool::False;
        case TriBool::False: return TriBool::True;
        default: return TriBool::Unknown;
    }
}

/// First position of any of `letters` in the lasso, scanning the spoke and
/// one copy of the cycle (a letter occurring at all occurs there). Returns
/// the tail after that position, or nothing.
std::optional<LassoWord> tail_after_first(const LassoWord& w, const std::string& letters,
                                          Letter* hit) {
    for (size_t i = 0; i < w.spoke.size(); ++i) {
        if (letters.find(w.spoke[i]) == std::string::npos) continue;
        *hit = w.spoke[i];
        return LassoWord(w.spoke.substr(i + 1), w.cycle);
    }
    for (size_t i = 0; i < w.cycle.size(); ++i) {
        if (letters.find(w.cycle[i]) == std::string::npos) continue;
        *hit = w.cycle[i];
        // The tail after a position inside the cycle is the cycle's rest
        // followed by the cycle repeating.
        return LassoWord(w.cycle.substr(i + 1), w.cycle);
    }
    return std::nullopt;
}

}  // namespace

Oracle sum_oracle(Oracle inner, Oracle outer, const std::string& plus_letters,
                  const std::string& minus_letters) {
    if (plus_letters.empty() || minus_letters.empty())
        throw std::invalid_argument("sum oracle: both fresh letter sets must be nonempty");
    for (Letter c : plus_letters)
        if (minus_letters.find(c) != std::string::npos)
            throw std::invalid_argument("sum oracle: plus and minus letters must be disjoint");
    std::string fresh = plus_letters + minus_letters;
    return [inner = std::move(inner), outer = std::move(outer), plus_letters,
            fresh = std::move(fresh)](const CommittedWord& w) -> TriBool {
        // Coded commitments stay inside the code alphabet, which never
        // contains fresh letters.
        if (w.kind != CommittedWord::Kind::Lasso) return outer(w);
        Letter hit = 0;
        std::optional<LassoWord> tail = tail_after_first(w.word, fresh, &hit);
        if (!tail) return outer(w);
        CommittedWord rest;
        rest.kind = CommittedWord::Kind::Lasso;
        rest.word = *tail;
        TriBool inside = inner(rest);
        return plus_letters.find(hit) != std::string::npos ? inside : negate(inside);
    };
}

Oracle nested_empty_sum_oracle(Oracle base, uint32_t levels) {
    if (levels > 2)
        throw std::invalid_argument("nested empty sum oracle: at most two levels are defined");
    Oracle cur = std::move(base);
    if (levels >= 1)
        cur = sum_oracle(empty_oracle(), std::move(cur), std::string(1, kMarkPlus),
                         std::string(1, kMarkMinusInner));
    if (levels >= 2)
        cur = sum_oracle(empty_oracle(), std::move(cur), std::string(1, kMarkPlusOuter),
                         std::string(1, kMarkMinus));
    return cur;
}

Oracle split_oracle(const Alphabet& sigma1, const Alphabet& sigma2, Oracle first, Oracle second) {
    if (sigma1.size() == 0 || sigma2.size() == 0)
        throw std::invalid_argument("split oracle: both alphabets must be nonempty");
    for (Letter c : sigma1.letters())
        if (sigma2.contains(c))
            throw std::invalid_argument("split oracle: the alphabets must be disjoint");
    return [sigma1, sigma2, first = std::move(first),
            second = std::move(second)](const CommittedWord& w) -> TriBool {
        if (w.kind != CommittedWord::Kind::Lasso) return TriBool::Unknown;
        const LassoWord& lw = w.word;
        Letter head = lw.at(0);
        CommittedWord tail;
        tail.kind = CommittedWord::Kind::Lasso;
        tail.word = lw.spoke.empty() ? LassoWord(lw.cycle.substr(1), lw.cycle)
                                     : LassoWord(lw.spoke.substr(1), lw.cycle);
        if (sigma1.contains(head)) return first(tail);
        if (sigma2.contains(head)) return second(tail);
        return TriBool::False;  // a word outside sigma1·Y^w and sigma2·Y^w is in neither part
    };
}

namespace {

class CopyStrategy final : public Strategy {
  public:
    explicit CopyStrategy(const CommittedWord& p1) : p1_(p1) {
        if (p1.kind != CommittedWord::Kind::Lasso)
            throw std::invalid_argument("copy strategy: player one must commit a lasso");
        for (Letter c : p1.word.spoke + p1.word.cycle)
            if (!is_payload_letter(c))
                throw std::invalid_argument("copy strategy: player one's word must use payload letters");
    }

    Word on_letter(Letter a) override {
        ++n_;
        Word out(1, separator_for_block(n_));
        out.append(n_, kZero);
        out.push_back(a);
        return out;
    }

    CommittedWord commit() override {
        CommittedWord out;
        out.kind = CommittedWord::Kind::HCode;
        out.word = p1_.word;
        return out;
    }

  private:
    CommittedWord p1_;
    uint32_t n_ = 0;
};

class ThreeCaseStrategy final : public Strategy {
  public:
    ThreeCaseStrategy(const CommittedWord& p1, Letter filler) : p1_(p1), filler_(filler) {
        const std::string marks{kMarkPlus, kMarkMinusInner, kMarkPlusOuter, kMarkMinus};
        if (!is_payload_letter(filler) || marks.find(filler) != std::string::npos)
            throw std::invalid_argument("three-case strategy: filler must be a payload letter");
        for (Letter c : p1.word.spoke + p1.word.cycle)
            if (marks.find(c) != std::string::npos)
                throw std::invalid_argument("three-case strategy: player one's word must not use marks");
    }

    Word on_letter(Letter a) override {
        alpha_.push_back(a);
        Word out;
        if (mode_ == Mode::MinusDone || mode_ == Mode::MinusAfterPlus) return out;

        const bool witnessed =
            escape1_status(alpha_) == PrefixStatus::Witnessed || escape2_witness_in(alpha_);
        if (witnessed) {
            out.push_back(kMarkMinus);
            mode_ = (mode_ == Mode::PlusWait) ? Mode::MinusAfterPlus : Mode::MinusDone;
            beta_ += out;
            return out;
        }
        if (mode_ == Mode::Copy) {
            if (!code_prefix_compatible(alpha_)) {
                out.push_back(kMarkPlus);
                mode_ = Mode::PlusWait;
                beta_ += out;
                return out;
            }
            CodedPrefix p = decode_prefix(alpha_);
            while (copied_ < p.blocks.size()) {
                out.push_back(p.blocks[copied_].payload);
                ++copied_;
            }
            beta_ += out;
        }
        return out;
    }

    CommittedWord commit() override {
        if (p1_.kind == CommittedWord::Kind::HCode) {
            // A code-following opponent never evades and never leaves the
            // code, so the mode is still Copy and the played letters are a
            // prefix of the decoded word; commit that word itself.
            CommittedWord out;
            out.kind = CommittedWord::Kind::Lasso;
            out.word = p1_.word;
            return out;
        }
        Word tail;
        switch (mode_) {
            case Mode::Copy:
                // Still code-compatible: an ultimately periodic word cannot
                // be a coded image, so membership in the union language is
                // exactly evasion, decided by the bounded window.
                tail.push_back(in_escape(p1_.word) ? kMarkMinus : kMarkPlus);
                break;
            case Mode::PlusWait:
                if (in_escape(p1_.word)) tail.push_back(kMarkMinus);
                break;
            case Mode::MinusDone:
            case Mode::MinusAfterPlus:
                break;
        }
        CommittedWord out;
        out.kind = CommittedWord::Kind::Lasso;
        out.word = LassoWord(beta_ + tail, Word(1, filler_));
        return out;
    }

  private:
    enum class Mode : uint8_t { Copy, MinusDone, PlusWait, MinusAfterPlus };

    CommittedWord p1_;
    Letter filler_;
    Word alpha_;
    Word beta_;
    Mode mode_ = Mode::Copy;
    size_t copied_ = 0;
};

}  // namespace

std::unique_ptr<Strategy> make_copy_strategy(const CommittedWord& p1) {
    return std::make_unique<CopyStrategy>(p1);
}

std::unique_ptr<Strategy> make_three_case_strategy(const CommittedWord& p1, Letter filler) {
    return std::make_unique<ThreeCaseStrategy>(p1, filler);
}

Transcript play_wadge(const CommittedWord& p1, Strategy& p2, const Oracle& in_first,
                      const Oracle& in_second, uint32_t rounds) {
    Transcript tr;
    tr.alpha = p1;
    for (uint32_t i = 0; i < rounds; ++i) {
        Letter a = committed_letter(p1, i);
        Word reply = p2.on_letter(a);
        tr.alpha_prefix.push_back(a);
        tr.beta_prefix += reply;
        tr.rounds.push_back(PlayRound{a, std::move(reply)});
    }
    tr.beta = p2.commit();
    if (committed_prefix(tr.beta, tr.beta_prefix.size()) != tr.beta_prefix)
        throw std::logic_error("player two's commitment does not extend its played letters");

    tr.alpha_in = in_first(tr.alpha);
    tr.beta_in = in_second(tr.beta);
    if (tr.alpha_in == TriBool::Unknown || tr.beta_in == TriBool::Unknown)
        tr.outcome = PlayOutcome::Undetermined;
    else
        tr.outcome = (tr.alpha_in == tr.beta_in) ? PlayOutcome::PlayerTwoWins
                                                 : PlayOutcome::PlayerOneWins;
    return tr;
}

}  // namespace opn
