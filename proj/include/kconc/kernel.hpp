#pragma once

#include "kconc/dataset.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>

namespace kconc {

/// How the scalar profile f enters k: f(|x - y|^2) or f(x^T y).
enum class ProfileKind { distance, inner_product };

enum class KernelFamily { gaussian, linear, polynomial, custom };

enum class GramScaling { raw, one_over_n };

std::string to_string(ProfileKind kind);
std::string to_string(GramScaling scaling);
GramScaling parse_scaling(const std::string& text);

/// A kernel k(x, y) = f(t) with t either a squared distance or an inner
/// product. Built-in families carry a closed-form Lipschitz constant; custom
/// profiles must declare one (a class constant C_X is admitted the same way).
class KernelSpec {
public:
    using Profile = std::function<double(double)>;

    /// f(t) = exp(-t / (2 sigma^2)) on squared distances.
    static KernelSpec gaussian(double sigma);
    /// f(t) = t on inner products.
    static KernelSpec linear();
    /// f(t) = (t + offset)^degree on inner products.
    static KernelSpec polynomial(int degree, double offset);
    static KernelSpec custom(std::string name, ProfileKind kind, Profile profile,
                             std::optional<double> lipschitz);

    KernelFamily family() const { return family_; }
    ProfileKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    double sigma() const { return sigma_; }
    int degree() const { return degree_; }
    double offset() const { return offset_; }
    std::optional<double> declared_lipschitz() const { return declared_lipschitz_; }

    /// Mercer families (gaussian, linear, polynomial with c >= 0).
    bool is_mercer() const;

    double profile(double t) const;

    /// The scalar the profile is applied to: |x - y|^2 or x^T y.
    double argument(const Eigen::Ref<const Eigen::VectorXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& y) const;

    double operator()(const Eigen::Ref<const Eigen::VectorXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& y) const
    {
        return profile(argument(x, y));
    }

    /// Compact form such as "gaussian:1", "linear", "polynomial:2:1".
    std::string describe() const;

private:
    KernelFamily family_ = KernelFamily::linear;
    ProfileKind kind_ = ProfileKind::inner_product;
    std::string name_;
    double sigma_ = 0.0;
    int degree_ = 1;
    double offset_ = 0.0;
    Profile custom_;
    std::optional<double> declared_lipschitz_;
};

/// sup |f'| over the profile domain. Polynomial kernels need a bound B on
/// |t| (the domain is [-B, B]); distance kernels use t >= 0.
double lipschitz(const KernelSpec& spec, std::optional<double> domain_bound = std::nullopt);

/// Largest |t| the profile sees on this sample (max squared distance for
/// distance kernels, max |x_i^T x_j| for inner-product kernels).
double profile_domain_bound(const KernelSpec& spec, const SampleSet& samples);

/// Lipschitz constant with the domain bound taken from the data.
double lipschitz(const KernelSpec& spec, const SampleSet& samples);

/// R^2 = max_i k(x_i, x_i) on the unscaled kernel.
double diag_sup(const SampleSet& samples, const KernelSpec& spec);

struct GramMatrix {
    Eigen::MatrixXd entries;
    GramScaling scaling = GramScaling::raw;
    KernelSpec kernel;

    Index n() const { return entries.rows(); }
    double scale() const
    {
        return scaling == GramScaling::one_over_n ? 1.0 / static_cast<double>(n()) : 1.0;
    }
};

/// entries(i, j) = scale * k(x_i, x_j); upper triangle evaluated and mirrored.
/// Throws DataError naming (i, j) on a non-finite kernel value.
GramMatrix gram(const SampleSet& samples, const KernelSpec& spec, GramScaling scaling);

}  // namespace kconc
