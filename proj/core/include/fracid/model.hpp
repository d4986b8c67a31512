#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "fracid/power_series.hpp"

namespace fracid {

enum class FdoType { TypeI, TypeII };

enum class OrderKind { Known, UnknownLead, UnknownSecond };

// One term  sign * rho(t) D^nu  (Type I)  or  sign * D^nu (rho(t) .)  (Type II).
// An empty coefficient marks an unknown constant.
struct FdoTerm {
    OrderKind kind = OrderKind::Known;
    double order = 0.0;  // only read for known orders
    std::optional<PowerSeries> coefficient;
    double sign = 1.0;
};

struct OperatorSpec {
    FdoType type = FdoType::TypeI;
    std::vector<FdoTerm> terms;

    std::size_t lead_index() const;
    std::size_t target_index() const;
    bool target_coefficient_unknown() const;
    void validate() const;
};

// A scalar function of time: closed-form series or a sampled table with
// monotone cubic (PCHIP) interpolation.
class TimeFunction {
public:
    TimeFunction() = default;
    TimeFunction(PowerSeries series);  // NOLINT(google-explicit-constructor)
    static TimeFunction tabulated(std::vector<double> t, std::vector<double> values);

    double operator()(double t) const;
    bool is_series() const { return !table_; }
    const PowerSeries& series() const { return series_; }
    const std::vector<double>& table_times() const;
    const std::vector<double>& table_values() const;

private:
    struct Table;
    PowerSeries series_;
    std::shared_ptr<const Table> table_;
};

struct ModelSpec {
    OperatorSpec op;
    PowerSeries a0;
    PowerSeries b0;
    std::optional<PowerSeries> kernel;
    TimeFunction gbar;
    PowerSeries boundary_trace;
    int d = 0;
    double psi0 = 0.0;

    void validate() const;
};

}  // namespace fracid
