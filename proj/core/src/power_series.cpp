#include "fracid/power_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracid/errors.hpp"
#include "fracid/special.hpp"

namespace fracid {

namespace {

void require_order(double mu, const char* who) {
    if (!(mu > 0.0 && mu < 1.0)) throw DomainError(std::string(who) + ": order must lie in (0,1)");
}

}  // namespace

PowerSeries::PowerSeries(std::vector<Term> terms) : terms_(std::move(terms)) { normalize(); }

PowerSeries PowerSeries::constant(double c) { return PowerSeries({{c, 0.0}}); }

PowerSeries PowerSeries::monomial(double coef, double exponent) { return PowerSeries({{coef, exponent}}); }

void PowerSeries::normalize() {
    for (auto& term : terms_) {
        if (!std::isfinite(term.coef) || !std::isfinite(term.exponent))
            throw DomainError("PowerSeries: non-finite coefficient or exponent");
        const double nearest = std::round(term.exponent);
        if (std::abs(term.exponent - nearest) <= kMergeTolerance) term.exponent = nearest;
        if (!(term.exponent > -1.0)) throw DomainError("PowerSeries: exponents must exceed -1");
    }
    std::stable_sort(terms_.begin(), terms_.end(),
                     [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (const auto& term : terms_) {
        if (!merged.empty() && term.exponent - merged.back().exponent <= kMergeTolerance)
            merged.back().coef += term.coef;
        else
            merged.push_back(term);
    }
    std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
    terms_ = std::move(merged);
}

double PowerSeries::operator()(double t) const {
    if (!(t >= 0.0)) throw DomainError("PowerSeries: evaluation requires t >= 0");
    double sum = 0.0;
    for (const auto& term : terms_) {
        if (term.exponent == 0.0) {
            sum += term.coef;
        } else if (t == 0.0) {
            if (term.exponent < 0.0) throw DomainError("PowerSeries: negative exponent evaluated at t = 0");
        } else {
            sum += term.coef * std::pow(t, term.exponent);
        }
    }
    return sum;
}

double PowerSeries::constant_term() const {
    for (const auto& term : terms_)
        if (term.exponent == 0.0) return term.coef;
    return 0.0;
}

double PowerSeries::min_exponent() const {
    return terms_.empty() ? std::numeric_limits<double>::infinity() : terms_.front().exponent;
}

bool PowerSeries::is_polynomial() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) {
        return t.exponent >= 0.0 && t.exponent == std::round(t.exponent);
    });
}

PowerSeries PowerSeries::operator-() const { return *this * -1.0; }

PowerSeries& PowerSeries::operator+=(const PowerSeries& other) {
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    normalize();
    return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& other) { return *this += -other; }

PowerSeries& PowerSeries::operator*=(double s) {
    for (auto& term : terms_) term.coef *= s;
    normalize();
    return *this;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    std::vector<Term> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a.terms())
        for (const auto& y : b.terms()) out.push_back({x.coef * y.coef, x.exponent + y.exponent});
    return PowerSeries(std::move(out));
}

PowerSeries caputo_series(const PowerSeries& s, double mu) {
    require_order(mu, "caputo_series");
    std::vector<Term> out;
    for (const auto& term : s.terms()) {
        if (term.exponent < 0.0) throw DomainError("caputo_series: input exponents must be >= 0");
        if (term.exponent == 0.0) continue;
        const double g = term.exponent;
        out.push_back({term.coef * std::exp(log_gamma(g + 1.0) - log_gamma(g + 1.0 - mu)), g - mu});
    }
    return PowerSeries(std::move(out));
}

PowerSeries rl_convolve(double theta, const PowerSeries& s) {
    if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("rl_convolve: order must be positive");
    std::vector<Term> out;
    for (const auto& term : s.terms()) {
        const double g = term.exponent;
        out.push_back({term.coef * std::exp(log_gamma(g + 1.0) - log_gamma(g + 1.0 + theta)), g + theta});
    }
    return PowerSeries(std::move(out));
}

PowerSeries kernel_convolve(const PowerSeries& k, const PowerSeries& s) {
    std::vector<Term> out;
    for (const auto& x : k.terms()) {
        for (const auto& y : s.terms()) {
            const double p = x.exponent;
            const double q = y.exponent;
            const double beta = std::exp(log_gamma(p + 1.0) + log_gamma(q + 1.0) - log_gamma(p + q + 2.0));
            out.push_back({x.coef * y.coef * beta, p + q + 1.0});
        }
    }
    return PowerSeries(std::move(out));
}

PowerSeries caputo_product(const PowerSeries& rho, const PowerSeries& s, double mu) {
    if (!rho.is_polynomial()) throw DomainError("caputo_product: multiplier must be a polynomial in t");
    return caputo_series(rho * s, mu);
}

}  // namespace fracid
