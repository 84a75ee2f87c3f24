#include "spcd/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "spcd/detail/overloaded.hpp"
#include "spcd/error.hpp"

namespace spcd {

namespace {

using detail::overloaded;

constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2.0;
// Polynomial sign regions wider than this are scanned only for degree <= 2,
// where they have a closed form.
constexpr double kMaxScan = 1.0e7;

// Neumaier compensated summation; also tracks sum |x| for rounding bounds.
struct Accumulator {
    double sum = 0.0;
    double comp = 0.0;
    double abs_sum = 0.0;
    std::size_t count = 0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
        abs_sum += std::abs(x);
        ++count;
    }

    [[nodiscard]] double value() const { return sum + comp; }

    // Compensated summation error plus one rounding per computed term.
    [[nodiscard]] double rounding_bound() const {
        const double n = static_cast<double>(count);
        return 2.0 * kUnit * std::abs(value()) + (2.0 * kUnit + n * kUnit * kUnit) * abs_sum;
    }
};

struct Estimate {
    double value = 0.0;
    double bound = 0.0;
};

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

SeriesVerdict infinite_with_sign(double s) {
    return s > 0.0 ? SeriesVerdict::diverges_plus() : SeriesVerdict::diverges_minus();
}

// sum_{i >= 0} (x0 + step * i)^{-p} for p > 1, x0 >= 1: explicit terms i < count
// plus the trapezoid/integral bracket on the remainder (valid because
// x^{-p} is decreasing and convex, with decreasing second derivative).
Estimate power_progression(double p, double x0, double step, std::size_t count) {
    Accumulator acc;
    for (std::size_t i = count; i-- > 0;) {
        acc.add(std::pow(x0 + step * static_cast<double>(i), -p));
    }
    const double xm = x0 + step * static_cast<double>(count);
    const double f = std::pow(xm, -p);
    const double integral = xm * f / ((p - 1.0) * step);
    const double d1 = p * f / xm;
    const double d2 = p * (p + 1.0) * f / (xm * xm);
    const double lower = integral + 0.5 * f;
    const double width = (step / 12.0) * (d1 + step * d2);
    const double remainder = lower + 0.5 * width;
    Estimate e;
    e.value = acc.value() + remainder;
    e.bound = 0.5 * width + acc.rounding_bound() + 8.0 * kUnit * remainder;
    return e;
}

// sum_{j >= first} c (-1)^j (j + 1)^{-p} for p > 0.
Estimate alternating_sum(double c, double p, std::size_t first, std::size_t count) {
    Accumulator acc;
    for (std::size_t i = count; i-- > 0;) {
        const std::size_t j = first + i;
        const double mag = c / std::pow(static_cast<double>(j) + 1.0, p);
        acc.add(j % 2 == 0 ? mag : -mag);
    }
    // Remainder from index jm: magnitude r with b/2 <= r <= (b + delta)/2,
    // b = (jm+1)^{-p}, delta = b - (jm+2)^{-p} (convex decreasing magnitudes).
    const std::size_t jm = first + count;
    const double x = static_cast<double>(jm) + 1.0;
    const double b = std::pow(x, -p);
    const double delta = -b * std::expm1(p * std::log1p(-1.0 / (x + 1.0)));
    const double r = 0.5 * b + 0.25 * delta;
    const double signed_r = (jm % 2 == 0 ? 1.0 : -1.0) * c * r;
    Estimate e;
    e.value = acc.value() + signed_r;
    e.bound = std::abs(c) * 0.25 * delta + acc.rounding_bound() + 8.0 * kUnit * std::abs(signed_r);
    return e;
}

std::size_t explicit_tail_terms(const SequenceSpec& spec, const SumOptions& opts) {
    return opts.depth > spec.head_size() ? opts.depth - spec.head_size() : 0;
}

double eval_poly(const std::vector<double>& c, long double x) {
    long double acc = 0.0L;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + static_cast<long double>(*it);
    return static_cast<double>(acc);
}

// Integer indices j >= first where a polynomial with positive leading
// coefficient is negative (a finite set), together with any exact zeros.
struct SignRegion {
    bool any_negative = false;
    bool any_zero = false;
    Estimate negative_sum;
};

// Largest integer j >= first with p(j) < 0 is below this (Cauchy root bound).
double cauchy_bound(const std::vector<double>& c) {
    const double lead = c.back();
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) m = std::max(m, std::abs(c[i] / lead));
    return 1.0 + m;
}

SignRegion scan_region(const std::vector<double>& c, std::size_t first, std::size_t last) {
    SignRegion r;
    Accumulator acc;
    for (std::size_t j = first; j <= last; ++j) {
        const double v = eval_poly(c, static_cast<long double>(j));
        if (v < 0.0) {
            r.any_negative = true;
            acc.add(v);
        } else if (v == 0.0) {
            r.any_zero = true;
        }
    }
    r.negative_sum.value = acc.value();
    r.negative_sum.bound = acc.rounding_bound() + 4.0 * kUnit * acc.abs_sum;
    return r;
}

// Closed form for degree 1 or 2 when the region is too wide to scan.
SignRegion closed_form_region(const std::vector<double>& c, std::size_t first) {
    SignRegion r;
    long double lo_root = 0.0L;
    long double hi_root = 0.0L;
    if (c.size() == 2) {
        lo_root = -std::numeric_limits<long double>::infinity();
        hi_root = -static_cast<long double>(c[0]) / c[1];
    } else {
        const long double a = c[2];
        const long double b = c[1];
        const long double cc = c[0];
        const long double disc = b * b - 4.0L * a * cc;
        if (disc < 0.0L) return r;
        const long double sq = std::sqrt(disc);
        // Stable root pair.
        const long double qv = -0.5L * (b + (b >= 0.0L ? sq : -sq));
        long double r1 = qv / a;
        long double r2 = (qv != 0.0L) ? cc / qv : r1;
        if (r1 > r2) std::swap(r1, r2);
        lo_root = r1;
        hi_root = r2;
    }
    const long double first_ld = static_cast<long double>(first);
    long double lo = std::max(first_ld, std::floor(lo_root) + 1.0L);
    long double hi = std::ceil(hi_root) - 1.0L;
    auto val = [&](long double j) { return eval_poly(c, j); };
    // Root rounding can misplace the boundary by one.
    while (lo > first_ld && val(lo - 1.0L) < 0.0) lo -= 1.0L;
    while (lo <= hi && val(lo) >= 0.0) lo += 1.0L;
    while (val(hi + 1.0L) < 0.0) hi += 1.0L;
    while (hi >= lo && val(hi) >= 0.0) hi -= 1.0L;
    for (long double z : {std::round(lo_root), std::round(hi_root)}) {
        if (std::isfinite(static_cast<double>(z)) && z >= first_ld && val(z) == 0.0) r.any_zero = true;
    }
    if (hi < lo) return r;
    r.any_negative = true;
    const long double n = hi - lo + 1.0L;
    const long double s1 = (lo + hi) * n / 2.0L;
    // sum_{j=lo}^{hi} j^2 = S(hi) - S(lo - 1), S(x) = x(x+1)(2x+1)/6
    auto sq_sum = [](long double x) { return x * (x + 1.0L) * (2.0L * x + 1.0L) / 6.0L; };
    const long double s2 = (c.size() == 3) ? sq_sum(hi) - sq_sum(lo - 1.0L) : 0.0L;
    long double total = static_cast<long double>(c[0]) * n + static_cast<long double>(c[1]) * s1;
    if (c.size() == 3) total += static_cast<long double>(c[2]) * s2;
    long double abs_est = std::abs(static_cast<long double>(c[0])) * n +
                          std::abs(static_cast<long double>(c[1])) * std::abs(s1);
    if (c.size() == 3) abs_est += std::abs(static_cast<long double>(c[2])) * s2;
    r.negative_sum.value = static_cast<double>(total);
    r.negative_sum.bound = static_cast<double>(abs_est) * 16.0 * kUnit;
    return r;
}

// Requires c.size() >= 2 and c.back() > 0.
SignRegion positive_leading_region(const std::vector<double>& c, std::size_t first) {
    const double bound = cauchy_bound(c);
    if (bound < static_cast<double>(first)) return {};
    if (bound - static_cast<double>(first) <= kMaxScan) {
        return scan_region(c, first, static_cast<std::size_t>(std::floor(bound)));
    }
    if (c.size() <= 3) return closed_form_region(c, first);
    throw InvalidSpec("polynomial sign region too wide to decide (degree > 2, Cauchy bound " +
                      std::to_string(bound) + ")");
}

SeriesVerdict combine(const Accumulator& head, const SeriesVerdict& tail) {
    if (!tail.converged()) return tail;
    const double value = head.value() + tail.value();
    const double bound = tail.remainder_bound() + head.rounding_bound() + 2.0 * kUnit * std::abs(value);
    return SeriesVerdict::converges(value, tail.absolutely(), bound);
}

SeriesVerdict polynomial_sum(const std::vector<double>& c) {
    if (c.empty()) return SeriesVerdict::converges(0.0, true, 0.0);
    // Any nonzero polynomial is eventually bounded away from 0 with the sign of
    // its leading coefficient.
    return infinite_with_sign(c.back());
}

SeriesVerdict tail_sum(const SequenceSpec& spec, const SumOptions& opts) {
    const std::size_t origin = spec.tail_origin();
    const std::size_t count = explicit_tail_terms(spec, opts);
    return std::visit(
        overloaded{
            [&](const tail::Geometric& t) {
                if (t.a == 0.0) return SeriesVerdict::converges(0.0, true, 0.0);
                if (std::abs(t.q) < 1.0) {
                    const double v = t.a / (1.0 - t.q);
                    return SeriesVerdict::converges(v, true, 4.0 * kUnit * std::abs(v));
                }
                if (t.q >= 1.0) return infinite_with_sign(t.a);
                return SeriesVerdict::oscillates();
            },
            [&](const tail::PowerLaw& t) {
                if (t.c == 0.0) return SeriesVerdict::converges(0.0, true, 0.0);
                if (t.p <= 1.0) return infinite_with_sign(t.c);
                const Estimate e =
                    power_progression(t.p, static_cast<double>(origin) + 1.0, 1.0, count);
                return SeriesVerdict::converges(t.c * e.value, true, std::abs(t.c) * e.bound);
            },
            [&](const tail::AlternatingPowerLaw& t) {
                if (t.c == 0.0) return SeriesVerdict::converges(0.0, true, 0.0);
                if (t.p <= 0.0) return SeriesVerdict::oscillates();
                const Estimate e = alternating_sum(t.c, t.p, origin, count);
                return SeriesVerdict::converges(e.value, t.p > 1.0, e.bound);
            },
            [&](const auto& t) { return polynomial_sum(polynomial_coefficients(TailClass{t})); },
        },
        spec.tail());
}

SeriesVerdict tail_negative_part(const SequenceSpec& spec, const SumOptions& opts) {
    const std::size_t origin = spec.tail_origin();
    const std::size_t count = explicit_tail_terms(spec, opts);
    const SeriesVerdict none = SeriesVerdict::converges(0.0, true, 0.0);
    return std::visit(
        overloaded{
            [&](const tail::Geometric& t) {
                if (t.a == 0.0) return none;
                if (t.q == 0.0) {
                    return t.a < 0.0 ? SeriesVerdict::converges(t.a, true, 0.0) : none;
                }
                if (t.q > 0.0) {
                    if (t.a > 0.0) return none;
                    if (t.q >= 1.0) return SeriesVerdict::diverges_minus();
                    const double v = t.a / (1.0 - t.q);
                    return SeriesVerdict::converges(v, true, 4.0 * kUnit * std::abs(v));
                }
                // Alternating signs: negatives form a geometric series with ratio q^2.
                const double q2 = t.q * t.q;
                if (q2 >= 1.0) return SeriesVerdict::diverges_minus();
                const double first = t.a > 0.0 ? t.a * t.q : t.a;
                const double v = first / (1.0 - q2);
                return SeriesVerdict::converges(v, true, 6.0 * kUnit * std::abs(v));
            },
            [&](const tail::PowerLaw& t) {
                if (t.c >= 0.0) return none;
                if (t.p <= 1.0) return SeriesVerdict::diverges_minus();
                const Estimate e =
                    power_progression(t.p, static_cast<double>(origin) + 1.0, 1.0, count);
                return SeriesVerdict::converges(t.c * e.value, true, std::abs(t.c) * e.bound);
            },
            [&](const tail::AlternatingPowerLaw& t) {
                if (t.c == 0.0) return none;
                if (t.p <= 1.0) return SeriesVerdict::diverges_minus();
                // Negative terms sit at one parity of the formula index.
                const std::size_t parity = t.c > 0.0 ? 1 : 0;
                const std::size_t j1 = (origin % 2 == parity) ? origin : origin + 1;
                const Estimate e =
                    power_progression(t.p, static_cast<double>(j1) + 1.0, 2.0, count / 2);
                return SeriesVerdict::converges(-std::abs(t.c) * e.value, true,
                                                std::abs(t.c) * e.bound);
            },
            [&](const auto& t) {
                const std::vector<double> c = polynomial_coefficients(TailClass{t});
                if (c.empty()) return none;
                if (c.back() < 0.0) return SeriesVerdict::diverges_minus();
                if (c.size() == 1) return none;
                const SignRegion r = positive_leading_region(c, origin);
                if (!r.any_negative) return none;
                return SeriesVerdict::converges(r.negative_sum.value, true, r.negative_sum.bound);
            },
        },
        spec.tail());
}

bool tail_has_negative(const SequenceSpec& spec) {
    return std::visit(overloaded{
                          [](const tail::Geometric& t) { return t.a < 0.0 || (t.a > 0.0 && t.q < 0.0); },
                          [](const tail::PowerLaw& t) { return t.c < 0.0; },
                          [](const tail::AlternatingPowerLaw& t) { return t.c != 0.0; },
                          [&](const auto& t) {
                              const std::vector<double> c = polynomial_coefficients(TailClass{t});
                              if (c.empty()) return false;
                              if (c.back() < 0.0) return true;
                              if (c.size() == 1) return false;
                              return positive_leading_region(c, spec.tail_origin()).any_negative;
                          },
                      },
                      spec.tail());
}

// Assumes no negative tail factor.
bool tail_has_zero(const SequenceSpec& spec) {
    return std::visit(overloaded{
                          [](const tail::Geometric& t) { return t.a == 0.0 || t.q == 0.0; },
                          [](const tail::PowerLaw& t) { return t.c == 0.0; },
                          [](const tail::AlternatingPowerLaw& t) { return t.c == 0.0; },
                          [&](const auto& t) {
                              const std::vector<double> c = polynomial_coefficients(TailClass{t});
                              if (c.empty()) return true;
                              if (c.size() == 1) return false;
                              return positive_leading_region(c, spec.tail_origin()).any_zero;
                          },
                      },
                      spec.tail());
}

ExtendedMeasure limit_of_constant(double c, double log_head) {
    if (c < 1.0) return ExtendedMeasure::zero();
    if (c > 1.0) return ExtendedMeasure::infinite();
    return ExtendedMeasure::from_log(log_head);
}

ExtendedMeasure direct_product(const SequenceSpec& spec) {
    const auto& head = spec.head();
    if (std::any_of(head.begin(), head.end(), [](double v) { return v < 0.0; }) ||
        tail_has_negative(spec)) {
        throw NegativeFactor("ordinary product needs nonnegative factors (tail class " +
                             tail_name(spec.tail()) + ")");
    }
    if (std::any_of(head.begin(), head.end(), [](double v) { return v == 0.0; }) ||
        tail_has_zero(spec)) {
        return ExtendedMeasure::zero();
    }
    Accumulator log_head;
    for (double v : head) log_head.add(std::log(v));
    const double lh = log_head.value();
    // All tail factors are strictly positive from here on.
    return std::visit(overloaded{
                          [&](const tail::Geometric& t) {
                              if (t.q == 1.0) return limit_of_constant(t.a, lh);
                              return t.q < 1.0 ? ExtendedMeasure::zero() : ExtendedMeasure::infinite();
                          },
                          [&](const tail::PowerLaw& t) {
                              if (t.p == 0.0) return limit_of_constant(t.c, lh);
                              return t.p > 0.0 ? ExtendedMeasure::zero() : ExtendedMeasure::infinite();
                          },
                          [&](const tail::AlternatingPowerLaw&) -> ExtendedMeasure {
                              throw std::logic_error("alternating factors passed the sign check");
                          },
                          [&](const auto& t) {
                              const std::vector<double> c = polynomial_coefficients(TailClass{t});
                              if (c.size() == 1) return limit_of_constant(c[0], lh);
                              return ExtendedMeasure::infinite();
                          },
                      },
                      spec.tail());
}

ExtendedMeasure measure_from_sum(const SeriesVerdict& v) {
    switch (v.kind()) {
        case SeriesVerdict::Kind::ConvergesTo:
            return ExtendedMeasure::from_log(v.value());
        case SeriesVerdict::Kind::DivergesPlus:
            return ExtendedMeasure::infinite();
        case SeriesVerdict::Kind::DivergesMinus:
            return ExtendedMeasure::zero();
        case SeriesVerdict::Kind::Oscillates:
            break;
    }
    return ExtendedMeasure::undefined();
}

// Limit of the log partial sums along block boundaries when the full series
// oscillates. Only Geometric(q <= -1) and AlternatingPowerLaw(p <= 0) tails
// oscillate; along boundaries of fixed parity their partial sums either
// settle (|ratio| = 1, p = 0) or run off with the sign of the last term.
ExtendedMeasure blocked_oscillating(const AlphaBlocking& alpha, const SequenceSpec& logs) {
    const std::size_t h = logs.head_size();
    const std::optional<int> parity = alpha.eventual_boundary_parity(h + 1);
    if (!parity) return ExtendedMeasure::undefined();
    // m = number of tail terms before a boundary B; its parity is fixed.
    const int m_parity = static_cast<int>((static_cast<std::size_t>(*parity) + h) % 2);
    const std::size_t origin = logs.tail_origin();
    Accumulator head;
    for (double v : logs.head()) head.add(v);

    return std::visit(
        overloaded{
            [&](const tail::Geometric& t) {
                if (t.q == -1.0) {
                    return ExtendedMeasure::from_log(head.value() + (m_parity == 1 ? t.a : 0.0));
                }
                // last term a q^{m-1}, q < 0
                const double s = sign_of(t.a) * (m_parity == 1 ? 1.0 : -1.0);
                return s > 0.0 ? ExtendedMeasure::infinite() : ExtendedMeasure::zero();
            },
            [&](const tail::AlternatingPowerLaw& t) {
                const std::size_t origin_parity = origin % 2;
                if (t.p == 0.0) {
                    const double first_sign = origin_parity == 0 ? 1.0 : -1.0;
                    return ExtendedMeasure::from_log(head.value() +
                                                     (m_parity == 1 ? t.c * first_sign : 0.0));
                }
                // last formula index origin + m - 1
                const std::size_t last_parity =
                    (origin_parity + static_cast<std::size_t>(m_parity) + 1) % 2;
                const double s = sign_of(t.c) * (last_parity == 0 ? 1.0 : -1.0);
                return s > 0.0 ? ExtendedMeasure::infinite() : ExtendedMeasure::zero();
            },
            [](const auto&) -> ExtendedMeasure {
                throw std::logic_error("tail class cannot oscillate");
            },
        },
        logs.tail());
}

bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v; }

}  // namespace

SeriesVerdict SeriesVerdict::converges(double value, bool absolutely, double remainder_bound) {
    SeriesVerdict v(Kind::ConvergesTo);
    v.value_ = value;
    v.absolutely_ = absolutely;
    v.bound_ = remainder_bound;
    return v;
}

std::string to_string(SeriesVerdict::Kind kind) {
    switch (kind) {
        case SeriesVerdict::Kind::ConvergesTo:
            return "converges";
        case SeriesVerdict::Kind::DivergesPlus:
            return "diverges_plus";
        case SeriesVerdict::Kind::DivergesMinus:
            return "diverges_minus";
        case SeriesVerdict::Kind::Oscillates:
            break;
    }
    return "oscillates";
}

SeriesVerdict classify_sum(const SequenceSpec& spec, const SumOptions& opts) {
    Accumulator head;
    for (double v : spec.head()) head.add(v);
    return combine(head, tail_sum(spec, opts));
}

SeriesVerdict negative_part_sum(const SequenceSpec& spec, const SumOptions& opts) {
    Accumulator head;
    for (double v : spec.head()) {
        if (v < 0.0) head.add(v);
    }
    return combine(head, tail_negative_part(spec, opts));
}

AlphaBlocking::AlphaBlocking() : AlphaBlocking(SequenceSpec({}, tail::Constant{1.0})) {}

AlphaBlocking::AlphaBlocking(SequenceSpec sizes) : sizes_(std::move(sizes)) {
    for (double v : sizes_.head()) {
        if (!is_integer(v) || v < 1.0) throw InvalidSpec("alpha block sizes must be positive integers");
    }
    const auto& t = sizes_.tail();
    if (const auto* c = std::get_if<tail::Constant>(&t)) {
        if (!is_integer(c->c) || c->c < 1.0) {
            throw InvalidSpec("alpha block sizes must be positive integers");
        }
    } else if (const auto* a = std::get_if<tail::AffineLinear>(&t)) {
        const double first = a->s * static_cast<double>(sizes_.tail_origin()) + a->b;
        if (!is_integer(a->s) || !is_integer(a->b) || a->s < 0.0 || first < 1.0) {
            throw InvalidSpec("alpha block sizes must be positive integers");
        }
    } else {
        throw InvalidSpec("alpha block-size tail must be constant or affine_linear, got " +
                          tail_name(t));
    }
}

AlphaBlocking AlphaBlocking::uniform(std::size_t n) {
    return AlphaBlocking(SequenceSpec({}, tail::Constant{static_cast<double>(n)}));
}

std::size_t AlphaBlocking::block_size(std::size_t k) const {
    return static_cast<std::size_t>(sizes_.term(k));
}

std::size_t AlphaBlocking::block_begin(std::size_t k) const {
    std::size_t total = 0;
    const std::size_t h = std::min(k, sizes_.head_size());
    for (std::size_t i = 0; i < h; ++i) total += static_cast<std::size_t>(sizes_.head()[i]);
    if (k <= sizes_.head_size()) return total;
    const std::size_t n = k - sizes_.head_size();
    const std::size_t j0 = sizes_.tail_origin();
    if (const auto* c = std::get_if<tail::Constant>(&sizes_.tail())) {
        return total + n * static_cast<std::size_t>(c->c);
    }
    const auto& a = std::get<tail::AffineLinear>(sizes_.tail());
    // sum_{j=j0}^{j0+n-1} (s j + b)
    const auto s = static_cast<std::size_t>(a.s);
    const auto b = static_cast<long long>(a.b);
    const std::size_t sum_j = n * j0 + n * (n - 1) / 2;
    return total + s * sum_j + static_cast<std::size_t>(static_cast<long long>(n) * b);
}

std::optional<int> AlphaBlocking::eventual_boundary_parity(std::size_t min_boundary) const {
    std::size_t k0 = sizes_.head_size();
    while (block_end(k0) < min_boundary) ++k0;
    const int p0 = static_cast<int>(block_end(k0) % 2);
    for (std::size_t k = k0 + 1; k < k0 + 4; ++k) {
        if (static_cast<int>(block_end(k) % 2) != p0) return std::nullopt;
    }
    return p0;
}

ProductFactors ProductFactors::direct(SequenceSpec values) {
    return ProductFactors(Form::Direct, std::move(values));
}

ProductFactors ProductFactors::exponential(SequenceSpec logs) {
    return ProductFactors(Form::Exponential, std::move(logs));
}

double ProductFactors::factor(std::size_t k) const {
    const double v = spec_.term(k);
    return form_ == Form::Direct ? v : std::exp(v);
}

ExtendedMeasure ordinary_product(const ProductFactors& factors, const SumOptions& opts) {
    if (factors.form() == ProductFactors::Form::Direct) return direct_product(factors.spec());
    return measure_from_sum(classify_sum(factors.spec(), opts));
}

ExtendedMeasure ordinary_alpha_product(const AlphaBlocking& alpha, const ProductFactors& factors,
                                       const SumOptions& opts) {
    // Nonnegative direct products always have a limit, and so does every
    // subsequence of a convergent or properly divergent log-sum.
    if (factors.form() == ProductFactors::Form::Direct) return direct_product(factors.spec());
    const SeriesVerdict v = classify_sum(factors.spec(), opts);
    if (v.kind() != SeriesVerdict::Kind::Oscillates) return measure_from_sum(v);
    return blocked_oscillating(alpha, factors.spec());
}

}  // namespace spcd
