#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace maxmedian {

enum class Family { Pareto, ShiftedExponential, Gaussian };

// Reward law of one arm. Immutable once built; construct through the factories,
// which enforce the parameter domain of each family.
//
//   Pareto(a, lambda):             P(X > x) = min(1, a x^-lambda),  lambda > 1
//   ShiftedExponential(a, lambda): P(X > x) = min(1, a e^{-lambda x}) for x >= 0,
//                                  with an atom of mass 1 - a at 0 when a < 1
//   Gaussian(mu, sigma)
class DistributionSpec {
public:
    static DistributionSpec pareto(double a, double lambda);
    static DistributionSpec shifted_exponential(double a, double lambda);
    static DistributionSpec gaussian(double mu, double sigma);

    Family family() const noexcept { return family_; }
    double a() const noexcept { return a_; }
    double lambda() const noexcept { return lambda_; }
    double mu() const noexcept { return mu_; }
    double sigma() const noexcept { return sigma_; }

    friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;

private:
    DistributionSpec(Family family, double a, double lambda, double mu, double sigma)
        : family_(family), a_(a), lambda_(lambda), mu_(mu), sigma_(sigma) {}

    Family family_;
    double a_ = 1.0;
    double lambda_ = 1.0;
    double mu_ = 0.0;
    double sigma_ = 1.0;
};

// Inverse-CDF draw from exactly one uniform u in (0,1). For Pareto and
// ShiftedExponential small u maps to large rewards (survival(sample(u)) == u away
// from the atom); the Gaussian draw is mu + sigma * normal_quantile(u).
double sample(const DistributionSpec& spec, double u);

double survival(const DistributionSpec& spec, double x);

inline double cdf(const DistributionSpec& spec, double x) { return 1.0 - survival(spec, x); }

// Large-t approximation of E[max of t i.i.d. draws]:
//   ShiftedExponential: (ln t + ln a + gamma) / lambda
//   Pareto:             a^{1/lambda} Gamma(1 - 1/lambda) t^{1/lambda}
// Gaussian has no closed form here and returns nullopt.
std::optional<double> expected_max_asymptotic(const DistributionSpec& spec, std::uint64_t t);

// Standard normal quantile, Wichura's AS241 (PPND16). Relative accuracy ~1e-16.
double normal_quantile(double p);

// Short human-readable form, e.g. "pareto(a=1, lambda=2.1)".
std::string describe(const DistributionSpec& spec);

}  // namespace maxmedian
