#include "fracid/basis.hpp"

#include <cmath>
#include <string>

#include "fracid/errors.hpp"
#include "fracid/special.hpp"

namespace fracid {

PowerSeries jacobi_shifted(int m, double a, double t_K) {
    if (m < 0 || m > 20) throw DomainError("jacobi_shifted: degree must lie in [0, 20]");
    if (!(a > 0.0 && a < 1.0)) throw DomainError("jacobi_shifted: weight exponent must lie in (0,1)");
    if (!(t_K > 0.0)) throw DomainError("jacobi_shifted: horizon must be positive");
    // P_m(s) = sum_i C(m,i) C(m-a, m-i) (s-1)^{m-i} s^i,  s = t / t_K.
    std::vector<Term> terms;
    for (int i = 0; i <= m; ++i) {
        const double w = binomial(m, i) * binomial(m - a, m - i);
        for (int l = 0; l <= m - i; ++l) {
            const double sign = ((m - i - l) % 2 == 0) ? 1.0 : -1.0;
            const int power = l + i;
            terms.push_back({w * binomial(m - i, l) * sign / std::pow(t_K, power), static_cast<double>(power)});
        }
    }
    return PowerSeries(std::move(terms));
}

DesignBasis::DesignBasis(std::vector<double> power_exponents, int jacobi_count, double weight_exponent,
                         double horizon)
    : betas_(std::move(power_exponents)), jacobi_count_(jacobi_count), a_(weight_exponent), t_K_(horizon) {
    if (jacobi_count_ < 0) throw ConfigError("DesignBasis: negative Jacobi count");
    if (!(a_ > 0.0 && a_ < 1.0)) throw ConfigError("DesignBasis: weight exponent must lie in (0,1)");
    if (!(t_K_ > 0.0)) throw ConfigError("DesignBasis: horizon must be positive");
    for (std::size_t i = 0; i < betas_.size(); ++i) {
        if (!(betas_[i] > 0.0 && betas_[i] <= 1.0))
            throw ConfigError("DesignBasis: power exponents must lie in (0,1]");
        if (i > 0 && !(betas_[i] > betas_[i - 1]))
            throw ConfigError("DesignBasis: power exponents must be strictly increasing");
    }
    if (betas_.empty() && jacobi_count_ == 0) throw ConfigError("DesignBasis: empty basis");
    for (double b : betas_) elements_.push_back(PowerSeries::monomial(1.0, b));
    for (int m = 0; m < jacobi_count_; ++m) elements_.push_back(jacobi_shifted(m, a_, t_K_));
}

PowerSeries DesignBasis::combine(const Eigen::VectorXd& q) const {
    if (q.size() != size()) throw ConfigError("DesignBasis::combine: coefficient count mismatch");
    std::vector<Term> terms;
    for (int j = 0; j < size(); ++j)
        for (const auto& term : elements_[static_cast<std::size_t>(j)].terms())
            terms.push_back({q[j] * term.coef, term.exponent});
    return PowerSeries(std::move(terms));
}

std::vector<double> uniform_betas(int count) {
    if (count < 1) throw ConfigError("uniform_betas: count must be positive");
    std::vector<double> out;
    for (int i = 1; i <= count; ++i) out.push_back(static_cast<double>(i) / count);
    return out;
}

Eigen::MatrixXd design_matrix(const DesignBasis& basis, const std::vector<double>& times) {
    Eigen::MatrixXd E(static_cast<Eigen::Index>(times.size()), basis.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (i > 0 && times[i] < times[i - 1]) throw ConfigError("design_matrix: times must be ascending");
        for (int j = 0; j < basis.size(); ++j) E(static_cast<Eigen::Index>(i), j) = basis.element(j)(times[i]);
    }
    return E;
}

Eigen::MatrixXd gram_matrix(const DesignBasis& basis) {
    const int n = basis.size();
    const double a = basis.weight_exponent();
    const double tK = basis.horizon();
    Eigen::MatrixXd H(n, n);
    for (int l = 0; l < n; ++l) {
        for (int m = l; m < n; ++m) {
            // Jacobi expansions cancel heavily, so the sum is carried in extended precision.
            long double sum = 0.0L;
            for (const auto& x : basis.element(l).terms()) {
                for (const auto& y : basis.element(m).terms()) {
                    const long double e = static_cast<long double>(x.exponent) + y.exponent + 1.0L - a;
                    if (!(e > 0.0L))
                        throw ConfigError("gram_matrix: divergent weighted integral (exponent " +
                                          std::to_string(static_cast<double>(e)) + ")");
                    sum += static_cast<long double>(x.coef) * y.coef * std::pow(static_cast<long double>(tK), e) / e;
                }
            }
            H(l, m) = static_cast<double>(sum);
            H(m, l) = H(l, m);
        }
    }
    return H;
}

}  // namespace fracid
