#include "fracid/model.hpp"

#include <algorithm>
#include <cmath>

// pchip.hpp in Boost 1.74 calls isnan unqualified; math.h puts it in the global namespace.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

#include "fracid/errors.hpp"

namespace fracid {

std::size_t OperatorSpec::lead_index() const {
    for (std::size_t i = 0; i < terms.size(); ++i)
        if (terms[i].kind == OrderKind::UnknownLead) return i;
    throw ConfigError("operator has no unknown lead order");
}

std::size_t OperatorSpec::target_index() const {
    for (std::size_t i = 0; i < terms.size(); ++i)
        if (terms[i].kind == OrderKind::UnknownSecond) return i;
    throw ConfigError("operator has no unknown second order");
}

bool OperatorSpec::target_coefficient_unknown() const { return !terms.at(target_index()).coefficient.has_value(); }

void OperatorSpec::validate() const {
    int leads = 0;
    int seconds = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& term = terms[i];
        if (term.sign != 1.0 && term.sign != -1.0) throw ConfigError("operator term sign must be +1 or -1");
        switch (term.kind) {
            case OrderKind::UnknownLead: ++leads; break;
            case OrderKind::UnknownSecond: ++seconds; break;
            case OrderKind::Known:
                if (!(term.order > 0.0 && term.order < 1.0))
                    throw ConfigError("known fractional orders must lie in (0,1)");
                break;
        }
        if (!term.coefficient && term.kind != OrderKind::UnknownSecond)
            throw ConfigError("only the targeted second term may carry an unknown constant coefficient");
        if (term.coefficient) {
            if (term.coefficient->min_exponent() < 0.0)
                throw ConfigError("operator coefficients must have non-negative exponents");
            if (type == FdoType::TypeII && !term.coefficient->is_polynomial())
                throw ConfigError("type II coefficients must be polynomials in t");
        }
    }
    if (leads != 1) throw ConfigError("operator needs exactly one unknown lead order");
    if (seconds != 1) throw ConfigError("operator needs exactly one unknown second order");
    const auto& lead = terms[lead_index()];
    if (!(lead.sign * (*lead.coefficient)(0.0) > 0.0))
        throw ConfigError("lead coefficient must be positive at t = 0");
}

struct TimeFunction::Table {
    std::vector<double> t;
    std::vector<double> v;
    std::unique_ptr<boost::math::interpolators::pchip<std::vector<double>>> interp;
};

TimeFunction::TimeFunction(PowerSeries series) : series_(std::move(series)) {}

TimeFunction TimeFunction::tabulated(std::vector<double> t, std::vector<double> values) {
    if (t.size() != values.size()) throw ConfigError("tabulated function: size mismatch");
    if (t.size() < 4) throw ConfigError("tabulated function: at least four samples required");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1])) throw ConfigError("tabulated function: times must be strictly increasing");
    auto table = std::make_shared<Table>();
    table->t = t;
    table->v = values;
    table->interp = std::make_unique<boost::math::interpolators::pchip<std::vector<double>>>(std::move(t),
                                                                                              std::move(values));
    TimeFunction f;
    f.table_ = std::move(table);
    return f;
}

double TimeFunction::operator()(double t) const {
    if (!table_) return series_(t);
    if (t < table_->t.front() || t > table_->t.back())
        throw DomainError("tabulated function evaluated outside its sample range");
    return (*table_->interp)(t);
}

const std::vector<double>& TimeFunction::table_times() const {
    if (!table_) throw ConfigError("time function is not tabulated");
    return table_->t;
}

const std::vector<double>& TimeFunction::table_values() const {
    if (!table_) throw ConfigError("time function is not tabulated");
    return table_->v;
}

void ModelSpec::validate() const {
    op.validate();
    if (d != 0 && d != 1) throw ConfigError("flag d must be 0 or 1");
    if (a0.min_exponent() < 0.0 || b0.min_exponent() < 0.0)
        throw ConfigError("a0 and b0 must have non-negative exponents");
    if (boundary_trace.min_exponent() < 0.0) throw ConfigError("boundary trace must have non-negative exponents");
    if (!std::isfinite(psi0)) throw ConfigError("psi0 must be finite");
}

}  // namespace fracid
