#include "maxmedian/distributions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "maxmedian/error.hpp"

namespace maxmedian {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw PreconditionError(what);
}

double poly(const double* c, int n, double x) {
    double r = c[n - 1];
    for (int i = n - 2; i >= 0; --i) r = r * x + c[i];
    return r;
}

}  // namespace

DistributionSpec DistributionSpec::pareto(double a, double lambda) {
    require(std::isfinite(a) && a > 0.0, "pareto: a must be positive");
    require(std::isfinite(lambda) && lambda > 1.0, "pareto: lambda must exceed 1 (finite mean)");
    return {Family::Pareto, a, lambda, 0.0, 1.0};
}

DistributionSpec DistributionSpec::shifted_exponential(double a, double lambda) {
    require(std::isfinite(a) && a > 0.0, "exp: a must be positive");
    require(std::isfinite(lambda) && lambda > 0.0, "exp: lambda must be positive");
    return {Family::ShiftedExponential, a, lambda, 0.0, 1.0};
}

DistributionSpec DistributionSpec::gaussian(double mu, double sigma) {
    require(std::isfinite(mu), "gauss: mu must be finite");
    require(std::isfinite(sigma) && sigma > 0.0, "gauss: sigma must be positive");
    return {Family::Gaussian, 1.0, 1.0, mu, sigma};
}

double sample(const DistributionSpec& spec, double u) {
    if (!(u > 0.0 && u < 1.0)) throw PreconditionError("sample: u must lie strictly inside (0,1)");
    switch (spec.family()) {
        case Family::Pareto:
            return std::pow(spec.a() / u, 1.0 / spec.lambda());
        case Family::ShiftedExponential:
            return std::max(0.0, (std::log(spec.a()) - std::log(u)) / spec.lambda());
        case Family::Gaussian:
            return spec.mu() + spec.sigma() * normal_quantile(u);
    }
    return 0.0;
}

double survival(const DistributionSpec& spec, double x) {
    switch (spec.family()) {
        case Family::Pareto:
            if (x <= 0.0) return 1.0;
            return std::min(1.0, spec.a() * std::pow(x, -spec.lambda()));
        case Family::ShiftedExponential:
            if (x < 0.0) return 1.0;
            return std::min(1.0, spec.a() * std::exp(-spec.lambda() * x));
        case Family::Gaussian:
            return 0.5 * std::erfc((x - spec.mu()) / (spec.sigma() * std::numbers::sqrt2));
    }
    return 0.0;
}

std::optional<double> expected_max_asymptotic(const DistributionSpec& spec, std::uint64_t t) {
    if (t < 1) throw PreconditionError("expected_max_asymptotic: t must be >= 1");
    const double tt = static_cast<double>(t);
    switch (spec.family()) {
        case Family::ShiftedExponential:
            return (std::log(tt) + std::log(spec.a()) + std::numbers::egamma) / spec.lambda();
        case Family::Pareto: {
            const double inv = 1.0 / spec.lambda();
            return std::pow(spec.a(), inv) * std::tgamma(1.0 - inv) * std::pow(tt, inv);
        }
        case Family::Gaussian:
            return std::nullopt;
    }
    return std::nullopt;
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw PreconditionError("normal_quantile: p must lie in (0,1)");

    static constexpr double a[] = {3.3871328727963666080e0, 1.3314166789178437745e2,
                                   1.9715909503065514427e3, 1.3731693765509461125e4,
                                   4.5921953931549871457e4, 6.7265770927008700853e4,
                                   3.3430575583588128105e4, 2.5090809287301226727e3};
    static constexpr double b[] = {1.0,
                                   4.2313330701600911252e1, 6.8718700749205790830e2,
                                   5.3941960214247511077e3, 2.1213794301586595867e4,
                                   3.9307895800092710610e4, 2.8729085735721942674e4,
                                   5.2264952788528545610e3};
    static constexpr double c[] = {1.42343711074968357734e0, 4.63033784615654529590e0,
                                   5.76949722146069140550e0, 3.64784832476320460504e0,
                                   1.27045825245236838258e0, 2.41780725177450611770e-1,
                                   2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static constexpr double d[] = {1.0,
                                   2.05319162663775882187e0, 1.67638483018380384940e0,
                                   6.89767334985100004550e-1, 1.48103976427480074590e-1,
                                   1.51986665636164571966e-2, 5.47593808499534494600e-4,
                                   1.05075007164441684324e-9};
    static constexpr double e[] = {6.65790464350110377720e0, 5.46378491116411436990e0,
                                   1.78482653991729133580e0, 2.96560571828504891230e-1,
                                   2.65321895265761230930e-2, 1.24266094738807843860e-3,
                                   2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static constexpr double f[] = {1.0,
                                   5.99832206555887937690e-1, 1.36929880922735805310e-1,
                                   1.48753612908506148525e-2, 7.86869131145613259100e-4,
                                   1.84631831751005468180e-5, 1.42151175831644588870e-7,
                                   2.04426310338993978564e-15};

    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * poly(a, 8, r) / poly(b, 8, r);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = poly(c, 8, r) / poly(d, 8, r);
    } else {
        r -= 5.0;
        val = poly(e, 8, r) / poly(f, 8, r);
    }
    return q < 0.0 ? -val : val;
}

std::string describe(const DistributionSpec& spec) {
    std::ostringstream os;
    switch (spec.family()) {
        case Family::Pareto:
            os << "pareto(a=" << spec.a() << ", lambda=" << spec.lambda() << ")";
            break;
        case Family::ShiftedExponential:
            os << "exp(a=" << spec.a() << ", lambda=" << spec.lambda() << ")";
            break;
        case Family::Gaussian:
            os << "gauss(mu=" << spec.mu() << ", sigma=" << spec.sigma() << ")";
            break;
    }
    return os.str();
}

}  // namespace maxmedian
