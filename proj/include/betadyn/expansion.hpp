// Greedy beta-expansions: digits of points in [0,1), the expansion of 1,
// and the Parry classification of the base.
#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "betadyn/errors.hpp"

namespace betadyn {

using Digit = int;
using DigitWord = std::vector<Digit>;

// High-precision scalar used by the escalation ladder and for 30-digit base constants.
using HighPrec = boost::multiprecision::cpp_bin_float_100;

struct PrecisionConfig {
    double guard_band = 1e-12;      // digit decisions closer than this to an integer escalate
    int max_precision_bits = 512;   // escalation ladder cap
    double termination_eps = 1e-12; // orbit-of-1 termination threshold
};

enum class ParryClass { Integer, SimpleParry, NonSimple };

const char* to_string(ParryClass c);

// Immutable description of a base: value, alphabet, quasi-greedy expansion of 1
// materialized to a depth, Parry class, and the orbit of 1 (used by the
// invariant-density quadrature).
class BetaParameter {
  public:
    double value() const { return beta_; }
    const HighPrec& value_hp() const { return beta_hp_; }
    int alphabet_max() const { return alphabet_max_; }
    ParryClass parry_class() const { return class_; }
    // Period of the quasi-greedy expansion of 1; 0 for NonSimple.
    int period() const { return period_; }
    int depth() const { return depth_; }
    const PrecisionConfig& precision() const { return precision_; }

    // eps*(1,beta) materialized to depth().
    const std::vector<Digit>& one_digits() const { return one_digits_; }
    // eps*_i, 1-indexed. Extends past depth via the period for Integer/SimpleParry;
    // throws DepthError past depth for NonSimple.
    Digit star_digit(long long i) const;
    bool star_periodic() const { return period_ > 0; }

    // T^k(1) for k = 0.. (terminates at the first zero for Integer/SimpleParry,
    // runs to depth for NonSimple). orbit_of_one()[0] == 1.
    const std::vector<double>& orbit_of_one() const { return orbit_of_one_; }

  private:
    friend BetaParameter expansion_of_one(const HighPrec&, double, int, PrecisionConfig);
    friend BetaParameter beta_from_simple_period(double, const DigitWord&, int, PrecisionConfig);

    double beta_ = 0;
    HighPrec beta_hp_;
    int alphabet_max_ = 0;
    ParryClass class_ = ParryClass::NonSimple;
    int period_ = 0;
    int depth_ = 0;
    PrecisionConfig precision_;
    std::vector<Digit> one_digits_;
    std::vector<double> orbit_of_one_;
};

// Computes eps*(1,beta) and classifies the base. beta must exceed 1 + termination_eps.
BetaParameter expansion_of_one(double beta, int depth = 64, PrecisionConfig cfg = {});
// Same, from a decimal literal (keeps more than double precision, e.g. named constants).
BetaParameter expansion_of_one(std::string_view beta_decimal, int depth = 64,
                               PrecisionConfig cfg = {});

// Named bases resolved to 30 significant digits: golden, tribonacci, plastic, supergolden.
// Returns the decimal literal; throws DomainError for unknown names.
std::string named_beta(std::string_view name);

// Synthesizes the base whose quasi-greedy expansion of 1 is the given purely
// periodic word (the beta_m truncations). value must be the root of the digit
// equation 1 = sum (period-with-last-incremented)[i] x^-i; the period must be
// self-maximal with period[0] >= 1. A single-digit period (c) yields the
// integer base c+1.
BetaParameter beta_from_simple_period(double value, const DigitWord& period, int depth = 64,
                                      PrecisionConfig cfg = {});

// First n greedy digits of x in [0,1). Digits near a branch point escalate
// through the precision ladder; uncertifiable digits raise PrecisionError.
DigitWord expand(const BetaParameter& beta, double x, int n);

// One step of the beta-transformation T(x) = beta*x - floor(beta*x).
double transform(const BetaParameter& beta, double x);

// pi_beta: sum of digits[i] * beta^-(i+1) for i < cutoff (cutoff < 0 means all).
double evaluate(const BetaParameter& beta, const DigitWord& digits, long long cutoff = -1);

// Deterministic digit source; every emitted prefix is admissible for its base.
class DigitStream {
  public:
    virtual ~DigitStream() = default;
    virtual Digit next() = 0;
};

// Greedy digits of the orbit of a point.
class OrbitDigitStream final : public DigitStream {
  public:
    OrbitDigitStream(const BetaParameter& beta, double x0);
    ~OrbitDigitStream() override;
    Digit next() override;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Fixed word repeated forever (test/CLI helper; caller owns admissibility).
class PeriodicWordStream final : public DigitStream {
  public:
    explicit PeriodicWordStream(DigitWord word);
    Digit next() override;

  private:
    DigitWord word_;
    std::size_t pos_ = 0;
};

double evaluate(const BetaParameter& beta, DigitStream& stream, long long cutoff);

} // namespace betadyn
