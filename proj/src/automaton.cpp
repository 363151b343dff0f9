#include "betadyn/automaton.hpp"

#include <algorithm>
#include <sstream>

#include "betadyn/detail.hpp"

namespace betadyn {
namespace {

void check_alphabet(const BetaParameter& beta, const DigitWord& w) {
    for (Digit d : w)
        if (d < 0 || d > beta.alphabet_max())
            throw DomainError("digit outside alphabet");
}

// One follower step against eps* itself (works for every Parry class; state is
// the current match length, reduced into the period when eps* is periodic).
// Returns -1 on reject.
int chain_advance(const BetaParameter& beta, int state, Digit d) {
    Digit e = beta.star_digit(state + 1);
    if (d > e)
        return -1;
    if (d < e)
        return 0;
    int ns = state + 1;
    if (beta.star_periodic())
        ns %= beta.period();
    return ns;
}

int chain_state_of(const BetaParameter& beta, const DigitWord& w) {
    check_alphabet(beta, w);
    int state = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        state = chain_advance(beta, state, w[i]);
        if (state < 0)
            throw DomainError("word is not admissible (fails at position " + std::to_string(i) +
                              ")");
    }
    return state;
}

// Exhaustive comparison of the automaton language against the lexicographic
// criterion, over all words short enough to enumerate cheaply.
void validate_language(const ParryAutomaton& a) {
    int amax = a.alphabet_max();
    long long budget = 300000;
    int n_max = 0;
    long long total = 1;
    while (n_max < 12) {
        total *= amax + 1;
        if (total > budget)
            break;
        ++n_max;
    }
    if (n_max == 0)
        return;

    DigitWord prefix;
    std::vector<int> states = {0};
    // DFS over all words of length <= n_max; both languages are prefix-closed,
    // so disagreement is detectable at the first divergent prefix.
    auto descend = [&](auto&& self, int depth_left) -> void {
        if (depth_left == 0)
            return;
        for (Digit d = 0; d <= amax; ++d) {
            prefix.push_back(d);
            std::optional<int> ns = a.step(states.back(), d);
            bool direct = is_admissible(a.base(), prefix).admissible;
            if (ns.has_value() != direct)
                throw SpecError("automaton disagrees with the lexicographic criterion on a word "
                                "of length " +
                                std::to_string(prefix.size()));
            if (ns) {
                states.push_back(*ns);
                self(self, depth_left - 1);
                states.pop_back();
            }
            prefix.pop_back();
        }
    };
    descend(descend, n_max);
}

} // namespace

AdmissibilityResult is_admissible(const BetaParameter& beta, const DigitWord& w) {
    check_alphabet(beta, w);
    long long n = static_cast<long long>(w.size());
    for (long long shift = 0; shift < n; ++shift) {
        for (long long j = 0; shift + j < n; ++j) {
            Digit d = w[static_cast<std::size_t>(shift + j)];
            Digit e = beta.star_digit(j + 1); // DepthError if the tie outruns the horizon
            if (d > e)
                return {false, shift};
            if (d < e)
                break;
        }
    }
    return {true, -1};
}

std::optional<int> ParryAutomaton::step(int state, Digit d) const {
    if (state < 0 || state >= state_count())
        throw DomainError("invalid automaton state");
    Digit e = e_[static_cast<std::size_t>(state)];
    if (d < 0 || d > alphabet_max())
        throw DomainError("digit outside alphabet");
    if (d > e)
        return std::nullopt;
    if (d < e)
        return 0;
    return (state + 1) % state_count();
}

std::optional<int> ParryAutomaton::run(const DigitWord& w, int start_state) const {
    if (start_state < 0 || start_state >= state_count())
        throw DomainError("invalid automaton state");
    int state = start_state;
    for (Digit d : w) {
        std::optional<int> ns = step(state, d);
        if (!ns)
            return std::nullopt;
        state = *ns;
    }
    return state;
}

std::string ParryAutomaton::to_json() const {
    std::ostringstream os;
    os << "{\"states\":" << state_count() << ",\"allowed_digits\":[";
    for (int j = 0; j < state_count(); ++j)
        os << (j ? "," : "") << static_cast<int>(e_[static_cast<std::size_t>(j)]);
    os << "],\"next_state\":[";
    for (int j = 0; j < state_count(); ++j) {
        os << (j ? "," : "") << "[";
        for (Digit d = 0; d <= alphabet_max(); ++d) {
            std::optional<int> ns = step(j, d);
            os << (d ? "," : "") << (ns ? *ns : -1);
        }
        os << "]";
    }
    os << "]}";
    return os.str();
}

ParryAutomaton build_automaton(const BetaParameter& beta) {
    if (beta.parry_class() == ParryClass::NonSimple)
        throw DomainError("no exact automaton for a non-Parry base; truncate first");
    int p = beta.period();
    if (p < 1 || p > beta.depth())
        throw DepthError("materialized expansion of 1 does not close the period");
    ParryAutomaton a;
    a.base_ = beta;
    a.e_.assign(beta.one_digits().begin(), beta.one_digits().begin() + p);
    if (p <= 16)
        validate_language(a);
    return a;
}

double simple_parry_root(const DigitWord& greedy_prefix) {
    if (greedy_prefix.empty() || greedy_prefix.front() < 1)
        throw DomainError("digit word must start with a digit >= 1");
    if (greedy_prefix.back() < 1)
        throw DomainError("digit word must end with a digit >= 1");
    long long sum = 0;
    for (Digit d : greedy_prefix) {
        if (d < 0)
            throw DomainError("negative digit");
        sum += d;
    }
    if (sum < 2)
        throw DomainError("digit equation has no root above 1");

    auto f = [&](long double x) {
        long double acc = 0.0L;
        for (auto it = greedy_prefix.rbegin(); it != greedy_prefix.rend(); ++it)
            acc = (acc + *it) / x;
        return acc - 1.0L;
    };
    long double lo = 1.0L + 1e-9L;
    long double hi = static_cast<long double>(greedy_prefix.front()) + 1.0L;
    if (!(f(lo) > 0.0L) || !(f(hi) < 0.0L))
        throw ConvergenceError("bisection bracket failed for the digit equation");
    for (int it = 0; it < 200 && hi - lo > 1e-15L; ++it) {
        long double mid = (lo + hi) / 2.0L;
        if (f(mid) > 0.0L)
            lo = mid;
        else
            hi = mid;
    }
    return static_cast<double>((lo + hi) / 2.0L);
}

ParryAutomaton build_truncated_automaton(const BetaParameter& beta, int m) {
    if (m < 1)
        throw DomainError("truncation index must be at least 1");
    int horizon = beta.star_periodic() ? m : std::min(m, beta.depth());
    int mv = 0;
    long long prefix_sum = 0;
    std::vector<long long> sums(static_cast<std::size_t>(horizon) + 1, 0);
    for (int i = 1; i <= horizon; ++i) {
        prefix_sum += beta.star_digit(i);
        sums[static_cast<std::size_t>(i)] = prefix_sum;
    }
    for (int i = horizon; i >= 1; --i) {
        if (beta.star_digit(i) >= 1 && sums[static_cast<std::size_t>(i)] >= 2) {
            mv = i;
            break;
        }
    }
    if (mv == 0)
        throw DomainError("no valid truncation index at or below m");

    DigitWord greedy(static_cast<std::size_t>(mv));
    for (int i = 1; i <= mv; ++i)
        greedy[static_cast<std::size_t>(i - 1)] = beta.star_digit(i);
    double root = simple_parry_root(greedy);
    DigitWord period(greedy);
    period.back() -= 1;

    BetaParameter bm =
        beta_from_simple_period(root, period, std::max(64, 2 * mv), beta.precision());
    ParryAutomaton a;
    a.base_ = bm;
    a.e_.assign(bm.one_digits().begin(), bm.one_digits().begin() + bm.period());
    a.truncation_m_ = mv;
    if (a.state_count() <= 16)
        validate_language(a);
    return a;
}

bool is_full(const BetaParameter& beta, const DigitWord& w) {
    return chain_state_of(beta, w) == 0;
}

DigitWord pad_to_full(const BetaParameter& beta, const DigitWord& w) {
    int state = chain_state_of(beta, w);
    DigitWord out(w);
    while (state != 0) {
        state = chain_advance(beta, state, 0);
        out.push_back(0);
    }
    return out;
}

ZeroRunProfile zero_run_profile(const BetaParameter& beta, int depth) {
    if (depth < 1)
        throw DomainError("depth must be at least 1");
    if (depth > beta.depth())
        throw DomainError("profile depth exceeds the materialized expansion of 1");
    ZeroRunProfile prof;
    prof.l.resize(static_cast<std::size_t>(depth));
    prof.M_n.resize(static_cast<std::size_t>(depth));
    bool periodic = beta.star_periodic();
    int running = 0;
    for (int n = 1; n <= depth; ++n) {
        int run = 0;
        if (periodic) {
            while (beta.star_digit(n + 1 + run) == 0)
                ++run; // some period digit is nonzero, so this terminates
        } else {
            while (n + 1 + run <= beta.depth() && beta.star_digit(n + 1 + run) == 0)
                ++run; // capped at the materialized horizon
        }
        prof.l[static_cast<std::size_t>(n - 1)] = run;
        running = std::max(running, run);
        prof.M_n[static_cast<std::size_t>(n - 1)] = running;
    }
    prof.M = running + 1;
    prof.b0_bound = running;
    prof.b0_depth = depth;
    return prof;
}

RandomAdmissibleStream::RandomAdmissibleStream(ParryAutomaton automaton, std::uint64_t seed)
    : automaton_(std::move(automaton)), rng_(seed) {}

Digit RandomAdmissibleStream::next() {
    Digit hi = automaton_.allowed_max(state_);
    Digit d = static_cast<Digit>(
        detail::uniform_below(rng_, static_cast<std::uint64_t>(hi) + 1));
    state_ = *automaton_.step(state_, d);
    return d;
}

} // namespace betadyn
