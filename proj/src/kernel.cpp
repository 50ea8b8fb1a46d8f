#include "kconc/kernel.hpp"

#include "kconc/error.hpp"

#include <cmath>
#include <sstream>

namespace kconc {

std::string to_string(ProfileKind kind)
{
    return kind == ProfileKind::distance ? "distance" : "inner_product";
}

std::string to_string(GramScaling scaling)
{
    return scaling == GramScaling::raw ? "raw" : "one_over_n";
}

GramScaling parse_scaling(const std::string& text)
{
    if (text == "raw") {
        return GramScaling::raw;
    }
    if (text == "one_over_n") {
        return GramScaling::one_over_n;
    }
    throw ConfigError("unknown Gram scaling '" + text + "' (expected raw or one_over_n)");
}

KernelSpec KernelSpec::gaussian(double sigma)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ConfigError("gaussian kernel needs bandwidth sigma > 0");
    }
    KernelSpec k;
    k.family_ = KernelFamily::gaussian;
    k.kind_ = ProfileKind::distance;
    k.name_ = "gaussian";
    k.sigma_ = sigma;
    return k;
}

KernelSpec KernelSpec::linear()
{
    KernelSpec k;
    k.family_ = KernelFamily::linear;
    k.kind_ = ProfileKind::inner_product;
    k.name_ = "linear";
    return k;
}

KernelSpec KernelSpec::polynomial(int degree, double offset)
{
    if (degree < 1) {
        throw ConfigError("polynomial kernel needs degree >= 1");
    }
    if (!(offset >= 0.0) || !std::isfinite(offset)) {
        throw ConfigError("polynomial kernel needs offset c >= 0");
    }
    KernelSpec k;
    k.family_ = KernelFamily::polynomial;
    k.kind_ = ProfileKind::inner_product;
    k.name_ = "polynomial";
    k.degree_ = degree;
    k.offset_ = offset;
    return k;
}

KernelSpec KernelSpec::custom(std::string name, ProfileKind kind, Profile profile,
                              std::optional<double> lipschitz)
{
    if (!profile) {
        throw ConfigError("custom kernel '" + name + "' has no profile function");
    }
    if (lipschitz && (!(*lipschitz > 0.0) || !std::isfinite(*lipschitz))) {
        throw ConfigError("custom kernel '" + name + "' declares a non-positive Lipschitz constant");
    }
    KernelSpec k;
    k.family_ = KernelFamily::custom;
    k.kind_ = kind;
    k.name_ = std::move(name);
    k.custom_ = std::move(profile);
    k.declared_lipschitz_ = lipschitz;
    return k;
}

bool KernelSpec::is_mercer() const
{
    return family_ != KernelFamily::custom;
}

double KernelSpec::profile(double t) const
{
    switch (family_) {
    case KernelFamily::gaussian:
        return std::exp(-t / (2.0 * sigma_ * sigma_));
    case KernelFamily::linear:
        return t;
    case KernelFamily::polynomial:
        return std::pow(t + offset_, degree_);
    case KernelFamily::custom:
        return custom_(t);
    }
    return 0.0;
}

double KernelSpec::argument(const Eigen::Ref<const Eigen::VectorXd>& x,
                            const Eigen::Ref<const Eigen::VectorXd>& y) const
{
    if (kind_ == ProfileKind::distance) {
        return (x - y).squaredNorm();
    }
    return x.dot(y);
}

std::string KernelSpec::describe() const
{
    std::ostringstream out;
    out.precision(17);
    switch (family_) {
    case KernelFamily::gaussian:
        out << "gaussian:" << sigma_;
        break;
    case KernelFamily::linear:
        out << "linear";
        break;
    case KernelFamily::polynomial:
        out << "polynomial:" << degree_ << ':' << offset_;
        break;
    case KernelFamily::custom:
        out << "custom:" << name_;
        break;
    }
    return out.str();
}

double lipschitz(const KernelSpec& spec, std::optional<double> domain_bound)
{
    switch (spec.family()) {
    case KernelFamily::gaussian:
        // |f'(t)| = exp(-t/(2s^2)) / (2s^2) peaks at t = 0 on t >= 0
        return 1.0 / (2.0 * spec.sigma() * spec.sigma());
    case KernelFamily::linear:
        return 1.0;
    case KernelFamily::polynomial: {
        if (spec.degree() == 1) {
            return 1.0;
        }
        if (!domain_bound) {
            throw ConfigError("polynomial kernel Lipschitz constant needs a domain bound B on |t|");
        }
        const double b = std::abs(*domain_bound);
        const double value = spec.degree() * std::pow(b + spec.offset(), spec.degree() - 1);
        if (!(value > 0.0)) {
            throw DegenerateError("polynomial kernel Lipschitz constant is zero on the domain");
        }
        return value;
    }
    case KernelFamily::custom:
        if (!spec.declared_lipschitz()) {
            throw ConfigError("custom kernel '" + spec.name() + "' must declare its Lipschitz constant");
        }
        return *spec.declared_lipschitz();
    }
    return 0.0;
}

double profile_domain_bound(const KernelSpec& spec, const SampleSet& samples)
{
    const auto& x = samples.rows();
    double bound = 0.0;
    for (Index i = 0; i < samples.n(); ++i) {
        for (Index j = i; j < samples.n(); ++j) {
            bound = std::max(bound, std::abs(spec.argument(x.row(i).transpose(), x.row(j).transpose())));
        }
    }
    return bound;
}

double lipschitz(const KernelSpec& spec, const SampleSet& samples)
{
    if (spec.family() == KernelFamily::polynomial) {
        return lipschitz(spec, profile_domain_bound(spec, samples));
    }
    return lipschitz(spec);
}

double diag_sup(const SampleSet& samples, const KernelSpec& spec)
{
    const auto& x = samples.rows();
    double r2 = -std::numeric_limits<double>::infinity();
    for (Index i = 0; i < samples.n(); ++i) {
        r2 = std::max(r2, spec(x.row(i).transpose(), x.row(i).transpose()));
    }
    return r2;
}

GramMatrix gram(const SampleSet& samples, const KernelSpec& spec, GramScaling scaling)
{
    const Index n = samples.n();
    GramMatrix g{Eigen::MatrixXd(n, n), scaling, spec};
    const double divisor = scaling == GramScaling::one_over_n ? static_cast<double>(n) : 1.0;
    const Eigen::MatrixXd& x = samples.rows();
    for (Index i = 0; i < n; ++i) {
        for (Index j = i; j < n; ++j) {
            const double v = spec(x.row(i).transpose(), x.row(j).transpose());
            if (!std::isfinite(v)) {
                throw DataError("non-finite kernel value at pair (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
            }
            g.entries(i, j) = v / divisor;
            g.entries(j, i) = g.entries(i, j);
        }
    }
    return g;
}

}  // namespace kconc
