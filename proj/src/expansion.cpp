#include "betadyn/expansion.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace betadyn {
namespace {

using F50 = boost::multiprecision::cpp_bin_float_50;
using F100 = HighPrec;

// Escalation ladder: long double, then 50- and 100-digit binary floats.
struct LadderLevel {
    int bits;
    double eps_rel;
};
constexpr LadderLevel kLadder[] = {{64, 1.1e-19}, {166, 1e-50}, {332, 1e-100}};
constexpr int kLevels = 3;

enum class StepKind { Emit, Terminated, Escalate };

struct StepRes {
    StepKind kind;
    Digit digit = 0;
};

// One greedy step: p = beta*y, decide the digit, update y and the error radius.
// snap_mode is the expansion-of-1 convention: a product within termination_eps of an
// integer >= 1 (with the interval radius confirming) becomes that digit and terminates.
template <typename Real>
StepRes step_once(const Real& beta, Real& y, double& radius, int level, bool snap_mode,
                  const PrecisionConfig& cfg) {
    using std::floor;
    if (y == 0) // exact fixed point: the tail is all zeros
        return {StepKind::Emit, 0};
    Real p = beta * y;
    Real m_r = floor(p + Real(0.5)); // nearest integer, p >= 0
    Real diff = p - m_r;
    double m_d = static_cast<double>(m_r);
    double dist = std::fabs(static_cast<double>(diff));
    double beta_d = static_cast<double>(beta);
    radius = beta_d * radius + kLadder[level].eps_rel * (static_cast<double>(p) + 1.0);

    if (snap_mode && m_d >= 1.0 && dist < cfg.termination_eps) {
        if (radius >= cfg.termination_eps * 0.5)
            return {StepKind::Escalate};
        return {StepKind::Terminated, static_cast<Digit>(m_d)};
    }
    Digit d;
    if (level == 0) {
        if (dist < cfg.guard_band)
            return {StepKind::Escalate};
        d = static_cast<Digit>(static_cast<double>(floor(p)));
    } else if (dist == 0.0) {
        // Exact integer hit at escalated precision: the orbit arithmetic was
        // exact (binary-rational base and point), so floor(p) = m.
        d = static_cast<Digit>(m_d);
    } else {
        if (dist < 8.0 * radius)
            return {StepKind::Escalate}; // interval straddles the branch point
        d = (diff >= 0) ? static_cast<Digit>(m_d) : static_cast<Digit>(m_d) - 1;
    }
    y = p - Real(d);
    if (y < 0)
        y = Real(0);
    if (y >= 1)
        throw SpecError("orbit left [0,1): internal digit decision error");
    return {StepKind::Emit, d};
}

struct OrbitOutcome {
    std::vector<Digit> digits;
    std::vector<double> orbit; // y before step 0, then after each emitted digit
    bool terminated = false;
    int level_used = 0;
};

template <typename Real>
bool run_level(const Real& beta, Real y, long long n_digits, bool snap_mode,
               const PrecisionConfig& cfg, int level, OrbitOutcome& out) {
    out.digits.clear();
    out.orbit.clear();
    out.terminated = false;
    out.orbit.push_back(static_cast<double>(y));
    double radius = 0.0;
    for (long long k = 0; k < n_digits; ++k) {
        StepRes s = step_once(beta, y, radius, level, snap_mode, cfg);
        if (s.kind == StepKind::Escalate)
            return false;
        out.digits.push_back(s.digit);
        if (s.kind == StepKind::Terminated) {
            out.orbit.push_back(0.0);
            out.terminated = true;
            return true;
        }
        out.orbit.push_back(static_cast<double>(y));
    }
    return true;
}

OrbitOutcome run_guarded_orbit(const HighPrec& beta_hp, const HighPrec& y0, long long n_digits,
                               bool snap_mode, const PrecisionConfig& cfg) {
    OrbitOutcome out;
    for (int level = 0; level < kLevels; ++level) {
        if (level > 0 && kLadder[level].bits > cfg.max_precision_bits)
            throw PrecisionError("digit decision not certifiable within the precision cap");
        bool done = false;
        if (level == 0)
            done = run_level(static_cast<long double>(beta_hp), static_cast<long double>(y0),
                             n_digits, snap_mode, cfg, level, out);
        else if (level == 1)
            done = run_level(F50(beta_hp), F50(y0), n_digits, snap_mode, cfg, level, out);
        else
            done = run_level(beta_hp, y0, n_digits, snap_mode, cfg, level, out);
        if (done) {
            out.level_used = level;
            return out;
        }
    }
    throw PrecisionError("digit decision not certifiable at maximum precision");
}

bool self_maximal_violation(const std::vector<Digit>& e, bool periodic, long long* bad_shift) {
    // sigma^k(e) <= e lexicographically for every shift k, over the available window.
    long long n = static_cast<long long>(e.size());
    auto at = [&](long long i) { return periodic ? e[i % n] : e[i]; };
    long long horizon = periodic ? 2 * n : n;
    for (long long k = 1; k < n; ++k) {
        for (long long j = 0; k + j < horizon && j < horizon; ++j) {
            if (!periodic && k + j >= n)
                break;
            Digit a = at(k + j), b = at(j);
            if (a > b) {
                *bad_shift = k;
                return true;
            }
            if (a < b)
                break;
        }
    }
    return false;
}

} // namespace

const char* to_string(ParryClass c) {
    switch (c) {
    case ParryClass::Integer: return "integer";
    case ParryClass::SimpleParry: return "simple-parry";
    default: return "non-simple";
    }
}

Digit BetaParameter::star_digit(long long i) const {
    if (i < 1)
        throw DomainError("star_digit index is 1-based");
    if (period_ > 0)
        return one_digits_[static_cast<std::size_t>((i - 1) % period_)];
    if (i > depth_)
        throw DepthError("expansion of 1 materialized only to depth " + std::to_string(depth_));
    return one_digits_[static_cast<std::size_t>(i - 1)];
}

BetaParameter expansion_of_one(const HighPrec& beta_hp, double beta_d, int depth,
                               PrecisionConfig cfg) {
    if (depth < 1)
        throw DomainError("depth must be at least 1");
    if (!(beta_d > 1.0 + cfg.termination_eps))
        throw DomainError("beta must exceed 1");

    BetaParameter bp;
    bp.beta_hp_ = beta_hp;
    bp.beta_ = beta_d;
    bp.depth_ = depth;
    bp.precision_ = cfg;

    double nearest = std::round(beta_d);
    if (nearest >= 2.0 && std::fabs(beta_d - nearest) < cfg.termination_eps) {
        // Integer base: quasi-greedy expansion of 1 is (beta-1) repeated.
        int b = static_cast<int>(nearest);
        bp.beta_ = nearest;
        bp.beta_hp_ = HighPrec(b);
        bp.class_ = ParryClass::Integer;
        bp.period_ = 1;
        bp.alphabet_max_ = b - 1;
        bp.one_digits_.assign(static_cast<std::size_t>(depth), b - 1);
        bp.orbit_of_one_ = {1.0, 0.0};
        return bp;
    }

    OrbitOutcome run = run_guarded_orbit(beta_hp, HighPrec(1), depth, /*snap=*/true, cfg);
    bp.alphabet_max_ = run.digits.at(0); // floor(beta) for a non-integer base
    bp.orbit_of_one_ = run.orbit;

    long long bad = 0;
    if (run.terminated) {
        // Greedy expansion of 1 is finite: periodize with the last digit decremented.
        int p = static_cast<int>(run.digits.size());
        std::vector<Digit> period(run.digits);
        period.back() -= 1;
        bool all_zero = true;
        for (Digit d : period)
            all_zero = all_zero && d == 0;
        if (all_zero)
            throw SpecError("degenerate expansion of 1");
        if (self_maximal_violation(period, /*periodic=*/true, &bad))
            throw PrecisionError("detected termination yields a non-self-maximal period");
        bp.class_ = ParryClass::SimpleParry;
        bp.period_ = p;
        bp.one_digits_.resize(static_cast<std::size_t>(depth));
        for (int i = 0; i < depth; ++i)
            bp.one_digits_[static_cast<std::size_t>(i)] = period[static_cast<std::size_t>(i % p)];
    } else {
        if (self_maximal_violation(run.digits, /*periodic=*/false, &bad))
            throw PrecisionError("computed expansion of 1 is not self-maximal at shift " +
                                 std::to_string(bad));
        bp.class_ = ParryClass::NonSimple;
        bp.period_ = 0;
        bp.one_digits_ = std::move(run.digits);
    }
    return bp;
}

BetaParameter expansion_of_one(double beta, int depth, PrecisionConfig cfg) {
    return expansion_of_one(HighPrec(beta), beta, depth, cfg);
}

BetaParameter expansion_of_one(std::string_view beta_decimal, int depth, PrecisionConfig cfg) {
    HighPrec hp;
    try {
        hp = HighPrec(std::string(beta_decimal));
    } catch (const std::exception&) {
        throw DomainError("cannot parse beta literal: " + std::string(beta_decimal));
    }
    return expansion_of_one(hp, static_cast<double>(hp), depth, cfg);
}

BetaParameter beta_from_simple_period(double value, const DigitWord& period, int depth,
                                      PrecisionConfig cfg) {
    if (period.empty())
        throw DomainError("period must be nonempty");
    if (depth < 1)
        throw DomainError("depth must be at least 1");
    for (Digit d : period)
        if (d < 0 || d > period.front())
            throw DomainError("period digits must lie in [0, period[0]]");
    if (period.front() < 1)
        throw DomainError("period must start with a digit >= 1");
    if (period.size() == 1)
        return expansion_of_one(static_cast<double>(period.front()) + 1.0, depth, cfg);

    long long bad = 0;
    std::vector<Digit> p(period);
    if (self_maximal_violation(p, /*periodic=*/true, &bad))
        throw DomainError("period is not self-maximal at shift " + std::to_string(bad));
    if (!(value > 1.0 && value < static_cast<double>(period.front()) + 1.0))
        throw DomainError("base value inconsistent with the leading digit");

    BetaParameter bp;
    bp.beta_ = value;
    bp.beta_hp_ = HighPrec(value);
    bp.class_ = ParryClass::SimpleParry;
    bp.period_ = static_cast<int>(period.size());
    bp.depth_ = depth;
    bp.precision_ = cfg;
    bp.alphabet_max_ = period.front();
    bp.one_digits_.resize(static_cast<std::size_t>(depth));
    for (int i = 0; i < depth; ++i)
        bp.one_digits_[static_cast<std::size_t>(i)] =
            period[static_cast<std::size_t>(i) % period.size()];

    // Orbit of 1 from the greedy word (period with the last digit incremented):
    // T^k(1) = sum_{i>k} g_i beta^{k-i}.
    DigitWord greedy(period);
    greedy.back() += 1;
    int m = static_cast<int>(greedy.size());
    bp.orbit_of_one_.assign(static_cast<std::size_t>(m) + 1, 0.0);
    bp.orbit_of_one_[0] = 1.0;
    for (int k = 1; k < m; ++k) {
        long double acc = 0.0L;
        for (int i = m - 1; i >= k; --i)
            acc = (acc + greedy[static_cast<std::size_t>(i)]) / static_cast<long double>(value);
        double v = static_cast<double>(acc);
        bp.orbit_of_one_[static_cast<std::size_t>(k)] = std::min(1.0, std::max(0.0, v));
    }
    return bp;
}

std::string named_beta(std::string_view name) {
    static const std::map<std::string, std::string, std::less<>> table = {
        {"golden", "1.61803398874989484820458683437"},
        {"tribonacci", "1.83928675521416113255185256465"},
        {"plastic", "1.32471795724474602596090885448"},
        {"supergolden", "1.46557123187676802665673122522"},
    };
    auto it = table.find(name);
    if (it == table.end())
        throw DomainError("unknown named base: " + std::string(name));
    return it->second;
}

DigitWord expand(const BetaParameter& beta, double x, int n) {
    if (!(x >= 0.0 && x < 1.0))
        throw DomainError("x must lie in [0,1)");
    if (n < 0)
        throw DomainError("digit count must be nonnegative");
    if (n == 0)
        return {};
    OrbitOutcome run =
        run_guarded_orbit(beta.value_hp(), HighPrec(x), n, /*snap=*/false, beta.precision());
    for (Digit d : run.digits)
        if (d < 0 || d > beta.alphabet_max())
            throw SpecError("digit escaped the alphabet");
    return run.digits;
}

double transform(const BetaParameter& beta, double x) {
    if (!(x >= 0.0 && x < 1.0))
        throw DomainError("x must lie in [0,1)");
    OrbitOutcome run =
        run_guarded_orbit(beta.value_hp(), HighPrec(x), 1, /*snap=*/false, beta.precision());
    return run.orbit.back();
}

double evaluate(const BetaParameter& beta, const DigitWord& digits, long long cutoff) {
    long long n = static_cast<long long>(digits.size());
    if (cutoff >= 0 && cutoff < n)
        n = cutoff;
    for (long long i = 0; i < n; ++i)
        if (digits[static_cast<std::size_t>(i)] < 0 ||
            digits[static_cast<std::size_t>(i)] > beta.alphabet_max())
            throw DomainError("digit outside alphabet");
    long double acc = 0.0L;
    long double b = static_cast<long double>(beta.value());
    for (long long i = n - 1; i >= 0; --i)
        acc = (acc + digits[static_cast<std::size_t>(i)]) / b;
    return static_cast<double>(acc);
}

double evaluate(const BetaParameter& beta, DigitStream& stream, long long cutoff) {
    if (cutoff < 0)
        throw DomainError("stream evaluation needs a nonnegative cutoff");
    DigitWord w;
    w.reserve(static_cast<std::size_t>(cutoff));
    for (long long i = 0; i < cutoff; ++i)
        w.push_back(stream.next());
    return evaluate(beta, w, -1);
}

// Orbit stream: level-0 stepping with per-digit high-precision resolution of
// guard-band hits. The emitted digit is always the true greedy digit of the
// current (exactly known) state, which keeps every prefix admissible.
struct OrbitDigitStream::Impl {
    HighPrec beta_hp;
    long double beta_ld;
    long double y;
    PrecisionConfig cfg;
    int alphabet_max;

    Digit step() {
        if (y == 0.0L) // exact fixed point
            return 0;
        long double p = beta_ld * y;
        long double m = std::floor(p + 0.5L);
        long double dist = std::fabs(p - m);
        Digit d;
        if (dist < static_cast<long double>(cfg.guard_band)) {
            // Resolve this one digit from the exact current state.
            if (kLadder[2].bits > cfg.max_precision_bits)
                throw PrecisionError("stream digit not certifiable within the precision cap");
            HighPrec p_hp = beta_hp * HighPrec(y);
            HighPrec m_hp = boost::multiprecision::floor(p_hp + HighPrec(0.5));
            HighPrec diff = p_hp - m_hp;
            double dist_hp = std::fabs(static_cast<double>(diff));
            if (dist_hp == 0.0)
                d = static_cast<Digit>(static_cast<double>(m_hp)); // exact integer hit
            else if (dist_hp < 8.0 * kLadder[2].eps_rel * (static_cast<double>(p_hp) + 1.0))
                throw PrecisionError("stream state sits on a branch point");
            else
                d = (diff >= 0) ? static_cast<Digit>(static_cast<double>(m_hp))
                                : static_cast<Digit>(static_cast<double>(m_hp)) - 1;
            y = static_cast<long double>(p_hp - HighPrec(d));
        } else {
            d = static_cast<Digit>(std::floor(p));
            y = p - static_cast<long double>(d);
        }
        if (y < 0.0L)
            y = 0.0L;
        if (y >= 1.0L)
            y = std::nextafterl(1.0L, 0.0L);
        if (d < 0 || d > alphabet_max)
            throw SpecError("stream digit escaped the alphabet");
        return d;
    }
};

OrbitDigitStream::OrbitDigitStream(const BetaParameter& beta, double x0) : impl_(new Impl) {
    if (!(x0 >= 0.0 && x0 < 1.0))
        throw DomainError("x must lie in [0,1)");
    impl_->beta_hp = beta.value_hp();
    impl_->beta_ld = static_cast<long double>(beta.value_hp());
    impl_->y = static_cast<long double>(x0);
    impl_->cfg = beta.precision();
    impl_->alphabet_max = beta.alphabet_max();
}

OrbitDigitStream::~OrbitDigitStream() = default;

Digit OrbitDigitStream::next() { return impl_->step(); }

PeriodicWordStream::PeriodicWordStream(DigitWord word) : word_(std::move(word)) {
    if (word_.empty())
        throw DomainError("periodic stream needs a nonempty word");
}

Digit PeriodicWordStream::next() {
    Digit d = word_[pos_];
    pos_ = (pos_ + 1) % word_.size();
    return d;
}

} // namespace betadyn
