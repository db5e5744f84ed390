#ifndef DIRSHIFT_MODEL_OPERATOR_HPP
#define DIRSHIFT_MODEL_OPERATOR_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "dirshift/disk.hpp"

namespace dirshift {

/// Weight sequence alpha_1, alpha_2, ... with validated monotonicity
/// alpha_j >= alpha_{j+1} > 0 over a declared horizon (the model condition
/// requires nonincreasing weights; violations are rejected at construction).
class WeightSequence {
public:
    static WeightSequence checked(std::function<double(int)> rule, std::string label,
                                  int horizon);

    double alpha(int n) const;  // n >= 1, n <= horizon
    int horizon() const { return horizon_; }
    const std::string& label() const { return label_; }

private:
    WeightSequence(std::function<double(int)> rule, std::string label, int horizon)
        : rule_(std::move(rule)), label_(std::move(label)), horizon_(horizon) {}
    std::function<double(int)> rule_;
    std::string label_;
    int horizon_ = 0;
};

/// The Dirichlet backward-shift weights alpha_n = sqrt((n+1)/n).
WeightSequence dirichlet_weights(int horizon);

/// b_n = alpha_n^-2 ... alpha_1^-2, computed in log space.
double mueller_b(const WeightSequence& alpha, int n);

enum class ModelVerdict { Yes, No, Inconclusive };

struct ModelCheckReport {
    std::vector<double> terms;         // ||T^n||^2 b_n
    std::vector<double> partial_sums;  // nondecreasing
    double limit_estimate = 0.0;       // last partial sum + tail estimate
    double tail_estimate = 0.0;
    ModelVerdict satisfied = ModelVerdict::Inconclusive;
    int terms_used = 0;
    bool flat_terms = false;  // terms not decaying: the untruncated sum diverges
};

/// Partial sums of ||T^n||^2 b_n against the bound 1.  `literal_first_power`
/// replaces ||T^n|| by ||T|| in every term (the literal reading of the model
/// condition, kept for comparison).
ModelCheckReport mueller_sum(const Eigen::MatrixXcd& t, const WeightSequence& alpha,
                             int max_terms, bool literal_first_power = false);

/// Vector-wise variant: partial sums of b_n ||T^n x||^2 against ||x||^2.
ModelCheckReport mueller_sum_vectorwise(const Eigen::MatrixXcd& t, const WeightSequence& alpha,
                                        const Eigen::VectorXcd& x, int max_terms);

struct EigenspaceResult {
    Eigen::MatrixXcd basis;  // orthonormal columns spanning ker(T - lambda)
    int dimension = 0;
    double residual = 0.0;   // ||(T - lambda) basis||
    double gap = 0.0;        // smallest kept / largest null singular value
    std::vector<double> singular_values;
};

/// Null space of T - lambda by SVD; columns with singular value below
/// rank_tolerance * sigma_max form the basis.  Throws rank_error (carrying the
/// spectrum) when the gap across the threshold is under 10.
EigenspaceResult eigen_space(const Eigen::MatrixXcd& t, Complex lambda,
                             double rank_tolerance = 1e-8);

struct RestrictionResult {
    Eigen::MatrixXcd compressed;       // restriction in an orthonormal basis of the span
    Eigen::MatrixXcd span_basis;       // orthonormal columns of the span
    double invariance_residual = 0.0;  // ||(I - QQ*)(D* x I)Q||
};

/// Span of kernel-vector generators embed_kernel(mu_i) (x) e_i inside the
/// truncated tensor space, with the compression of (backward shift (x) I).
RestrictionResult restrict_to_kernel_span(const std::vector<DiskPoint>& mu_samples,
                                          const std::vector<Eigen::VectorXcd>& directions,
                                          int truncation);

/// Largest singular value; full SVD up to 400 rows, power iteration beyond.
double operator_norm(const Eigen::MatrixXcd& m);

/// Truncated Dirichlet backward shift, optionally scaled.
Eigen::MatrixXcd truncated_backward_shift(int truncation, double scale = 1.0);

}  // namespace dirshift

#endif
