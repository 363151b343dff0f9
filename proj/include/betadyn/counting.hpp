// Admissible-word counting with digit-sum constraints, beta_m roots, entropy
// curves, the ergodic digit mean, the maximal digit average, and the
// dimension-spectrum assembly.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>

#include "betadyn/automaton.hpp"

namespace betadyn {

using BigInt = boost::multiprecision::cpp_int;

// Digit-sum constraint. Exact and Closed take integer endpoints and are
// validated strictly; Open takes real endpoints (the entropy windows
// n(alpha-delta) < s < n(alpha+delta)) and clamps to the meaningful integer
// window. Endpoint comparisons are integer-exact in all three forms.
struct SumConstraint {
    enum class Kind { Exact, Closed, Open };
    Kind kind = Kind::Exact;
    long long p = 0, q = 0; // Exact: p; Closed: [p,q]
    double lo = 0, hi = 0;  // Open: (lo, hi)

    static SumConstraint exact(long long p) { return {Kind::Exact, p, p, 0, 0}; }
    static SumConstraint closed(long long p, long long q) { return {Kind::Closed, p, q, 0, 0}; }
    static SumConstraint open(double lo, double hi) { return {Kind::Open, 0, 0, lo, hi}; }
};

enum class CountBackend { ExactBigInt, LogDomain };

// ExactBigInt up to n = 4096, LogDomain beyond.
CountBackend pick_backend(long long n);

// Digit-sum marginal of the admissible n-word count: for each s, the number of
// n-words accepted by the automaton with digit sum s (optionally restricted to
// words whose M-zero padding is full). Exact big integers or scaled doubles.
class SumMarginal {
  public:
    long long n() const { return n_; }
    long long max_sum() const { return max_sum_; }
    CountBackend backend() const { return backend_; }

    // Count of words with sum in [a, b] (clamped to [0, max_sum]).
    BigInt range_count(long long a, long long b) const; // ExactBigInt backend only
    double range_log2(long long a, long long b) const;  // -HUGE_VAL when empty
    BigInt total_count() const;
    double total_log2() const;

  private:
    friend SumMarginal sum_marginal(const ParryAutomaton&, long long, CountBackend, int);
    long long n_ = 0;
    long long max_sum_ = 0;
    CountBackend backend_ = CountBackend::ExactBigInt;
    std::vector<BigInt> exact_;              // by sum; empty for LogDomain
    std::vector<std::pair<double, long long>> scaled_; // value = first * 2^second
};

// full_pad_M < 0: no fullness restriction. full_pad_M >= 0: count only words
// whose automaton state after the word leads to state 0 under M zeros.
SumMarginal sum_marginal(const ParryAutomaton& a, long long n, CountBackend backend,
                         int full_pad_M = -1);

// card Sigma^n of the automaton language (exact big integer).
BigInt count_words(const ParryAutomaton& a, long long n);
BigInt count_words(const BetaParameter& beta, long long n);

// Words with constrained digit sum.
BigInt count_with_sum(const ParryAutomaton& a, long long n, const SumConstraint& c);
BigInt count_with_sum(const BetaParameter& beta, long long n, const SumConstraint& c);

// N-words with constrained digit sum whose M-zero padding is full.
BigInt count_full_words(const ParryAutomaton& a, long long N, int M, const SumConstraint& c);
BigInt count_full_words(const BetaParameter& beta, long long N, int M, const SumConstraint& c);

// log2 of a positive big integer (-HUGE_VAL for zero).
double log2_big(const BigInt& v);

// Unbiased uniform draw from [0, bound); deterministic across platforms.
BigInt uniform_bigint_below(std::mt19937_64& rng, const BigInt& bound);

// Uniform sampler over {w of length N : digit sum = target, w 0^M full}.
// M < 0 disables the fullness requirement.
class FullWordSampler {
  public:
    FullWordSampler(const ParryAutomaton& a, int N, int M, long long target_sum);
    const BigInt& count() const { return total_; }
    DigitWord sample(std::mt19937_64& rng) const;

  private:
    const ParryAutomaton a_;
    int N_;
    long long target_;
    BigInt total_;
    // suffix_[t][state][r]: completions of length N-t from state with sum r
    std::vector<std::vector<std::vector<BigInt>>> suffix_;
};

// beta_m: root of 1 = sum_{i<=m} eps*_i x^-i, to 1e-13. DomainError when
// eps*_m = 0 or the root would not exceed 1.
double solve_beta_m(const BetaParameter& beta, int m);

enum class EntropyVariant { TwoSided, Lower, Upper };

struct EntropyCurve {
    std::vector<double> alpha_grid;
    std::vector<double> values;                // at the last schedule point
    std::vector<std::vector<double>> by_delta; // [delta index][alpha index]
    std::vector<double> delta_schedule;
    long long n = 0;
    int m_used = 0; // truncation index; 0 when the exact automaton was used
    EntropyVariant variant = EntropyVariant::TwoSided;
    double beta = 0; // normalizing base (the original beta, not beta_m)
};

// h_hat(alpha) = log count(n, window) / (n log beta), per schedule delta.
// TwoSided counts n(alpha-delta) < s < n(alpha+delta) (at alpha = 0 the exact
// s = 0 bin, so the reported value is 0); Lower counts s > n(alpha-delta);
// Upper counts s < n(alpha+delta). Values are clamped to [0, 1]. Parry bases
// use their exact automaton; otherwise the beta_m truncation at m_depth.
EntropyCurve entropy_curve(const BetaParameter& beta, const std::vector<double>& alpha_grid,
                           long long n, const std::vector<double>& delta_schedule, int m_depth,
                           EntropyVariant variant = EntropyVariant::TwoSided, int threads = 1);

std::vector<double> default_delta_schedule(); // {0.05, 0.02, 0.01, 0.005}
long long default_entropy_n(double delta_min);
int default_entropy_m(const BetaParameter& beta); // 0 for Parry bases, else 24

struct AlphaStarEstimate {
    double value = 0;
    double err = 0; // standard error (Birkhoff) or tail bound (quadrature); 0 when exact
};

// (beta-1)/2; integer bases only.
AlphaStarEstimate alpha_star_closed_form(const BetaParameter& beta);
// Mean first digit along a seeded random orbit, stderr from 1000 batch means.
AlphaStarEstimate alpha_star_birkhoff(const BetaParameter& beta, std::uint64_t seed,
                                      long long n_digits);
// Integral of the first digit against the piecewise-constant invariant density
// sum_{k: x < T^k(1)} beta^-k, integrated exactly over its breakpoints; err is
// the truncation tail bound (0 when the orbit of 1 terminates).
AlphaStarEstimate alpha_star_quadrature(const BetaParameter& beta);

enum class LambdaMethod { MaxMeanCycle, BruteForce };

// Maximal mean digit over automaton cycles. MaxMeanCycle is exact (integer
// rational comparisons over the cycle family through state 0); BruteForce
// maximizes sum/n over accepted n-words.
double lambda_max(const ParryAutomaton& a, LambdaMethod method, int brute_n = 20);

struct SpectrumParams {
    std::vector<double> delta_schedule; // empty: D8 default
    long long n = 0;                    // 0: default from the schedule
    int m_depth = 0;                    // 0: default_entropy_m
    int threads = 1;
};

struct SpectrumCurve {
    std::vector<double> alpha_grid;
    std::vector<double> dim_er;    // h(alpha) up to alpha*, then 1 up to lambda, then 0
    std::vector<double> dim_lower; // 1 up to alpha*, then h(alpha)
    std::vector<double> dim_upper; // h(alpha) up to alpha*, then 1
    double alpha_star = 0, alpha_star_err = 0;
    double lambda = 0;
    double continuity_gap = 0; // |h_hat(alpha*) - 1|
    EntropyCurve entropy;      // the underlying two-sided curve
};

SpectrumCurve er_spectrum(const BetaParameter& beta, const std::vector<double>& alpha_grid,
                          const SpectrumParams& params = {});

} // namespace betadyn
