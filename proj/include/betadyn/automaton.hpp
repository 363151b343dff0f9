// Lexicographic admissibility, the follower automaton of the beta-shift,
// full-word detection, and zero-run statistics.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "betadyn/expansion.hpp"

namespace betadyn {

struct AdmissibilityResult {
    bool admissible;
    long long failing_shift; // first shift whose suffix violates the criterion; -1 if none
};

// A finite word is admissible iff each suffix is lexicographically <= the
// same-length prefix of eps*(1,beta). A suffix that ties eps* through the
// whole materialized depth with digits left over raises DepthError.
AdmissibilityResult is_admissible(const BetaParameter& beta, const DigitWord& w);

// Follower automaton over the period digits e of eps*: state j is the length
// of the longest suffix of the read word matching a prefix of eps* (reduced
// mod the period). From state j, digit d > e[j] rejects, d == e[j] advances,
// d < e[j] resets to state 0.
class ParryAutomaton {
  public:
    const BetaParameter& base() const { return base_; }
    double base_value() const { return base_.value(); }
    int state_count() const { return static_cast<int>(e_.size()); }
    int preamble() const { return 0; } // both constructions are purely periodic
    int period_length() const { return static_cast<int>(e_.size()); }
    const DigitWord& period_digits() const { return e_; }
    int alphabet_max() const { return base_.alphabet_max(); }
    bool truncated() const { return truncation_m_ > 0; }
    int truncation_m() const { return truncation_m_; }

    Digit allowed_max(int state) const { return e_[static_cast<std::size_t>(state)]; }
    std::optional<int> step(int state, Digit d) const;
    // Final state after consuming w, or nullopt if some prefix is inadmissible.
    std::optional<int> run(const DigitWord& w, int start_state = 0) const;

    // {states, allowed_digits, next_state} with -1 for reject.
    std::string to_json() const;

  private:
    friend ParryAutomaton build_automaton(const BetaParameter&);
    friend ParryAutomaton build_truncated_automaton(const BetaParameter&, int);
    ParryAutomaton() = default;

    BetaParameter base_;
    DigitWord e_;
    int truncation_m_ = 0;
};

// Exact automaton for an Integer or SimpleParry base; DomainError for NonSimple
// (use build_truncated_automaton there). Validates the accepted language
// against is_admissible by bounded exhaustive enumeration when the state
// count is at most 16.
ParryAutomaton build_automaton(const BetaParameter& beta);

// Automaton of the truncated base beta_m for the largest valid m' <= m
// (valid: eps*_{m'} >= 1 and the digit equation root exceeds 1). The automaton
// is tagged with m' and carries the synthesized beta_{m'} as its base.
ParryAutomaton build_truncated_automaton(const BetaParameter& beta, int m);

// Root of 1 = sum_i digits[i] * x^-(i+1) in (1, digits[0]+1), by bisection to
// 1e-13. DomainError if sum(digits) < 2 or the last digit is 0.
double simple_parry_root(const DigitWord& greedy_prefix);

// True iff every admissible word concatenates behind w, i.e. the follower
// state after w is 0. DomainError if w is inadmissible; DepthError when the
// materialized eps* cannot decide (NonSimple only).
bool is_full(const BetaParameter& beta, const DigitWord& w);

// w followed by the minimal number of zeros making it full.
DigitWord pad_to_full(const BetaParameter& beta, const DigitWord& w);

struct ZeroRunProfile {
    std::vector<int> l;   // l[i]: zeros directly after eps*_{i+1} (run capped at the horizon)
    std::vector<int> M_n; // running maxima of l
    int M = 0;            // padding length: M_n.back() + 1
    int b0_bound = 0;     // max l over the inspected depth
    int b0_depth = 0;     // the inspected depth (boundedness is a flag, never a certainty)
};

ZeroRunProfile zero_run_profile(const BetaParameter& beta, int depth);

// Uniform random walk on the automaton: from each state an allowed digit is
// drawn uniformly. Every emitted prefix is admissible for the automaton base.
class RandomAdmissibleStream final : public DigitStream {
  public:
    RandomAdmissibleStream(ParryAutomaton automaton, std::uint64_t seed);
    Digit next() override;

  private:
    ParryAutomaton automaton_;
    std::mt19937_64 rng_;
    int state_ = 0;
};

} // namespace betadyn
