#include "dirshift/model_operator.hpp"

#include <cmath>
#include <limits>

#include "dirshift/coeff_space.hpp"

namespace dirshift {

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

double power_iteration_norm(const Eigen::MatrixXcd& m, double tol = 1e-12) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(m.cols()).normalized();
    double prev = 0.0;
    for (int it = 0; it < 1000; ++it) {
        Eigen::VectorXcd w = m.adjoint() * (m * v);
        const double nw = w.norm();
        if (nw == 0.0) return 0.0;
        v = w / nw;
        const double est = std::sqrt(nw);
        if (std::abs(est - prev) <= tol * est) return est;
        prev = est;
    }
    return prev;
}

ModelVerdict decide(const ModelCheckReport& rep, bool converged, double budget) {
    for (double p : rep.partial_sums)
        if (p > budget) return ModelVerdict::No;
    if (converged && rep.limit_estimate <= budget) return ModelVerdict::Yes;
    return ModelVerdict::Inconclusive;
}

// Shared accumulation: term_for(n) supplies ||.||^2 b_n; stops on convergence
// (relative term below 1e-14 with a geometric tail estimate) or max_terms.
ModelCheckReport accumulate_terms(const std::function<double(int)>& term_for, int max_terms,
                                  double budget) {
    ModelCheckReport rep;
    double sum = 0.0;
    bool converged = false;
    for (int n = 1; n <= max_terms; ++n) {
        const double t = term_for(n);
        rep.terms.push_back(t);
        sum += t;
        rep.partial_sums.push_back(sum);
        if (t == 0.0) {  // nilpotent tail: sum is exact
            converged = true;
            rep.tail_estimate = 0.0;
            break;
        }
        if (rep.terms.size() >= 2 && t < 1e-14 * sum) {
            const double ratio = t / rep.terms[rep.terms.size() - 2];
            if (ratio < 1.0) {
                rep.tail_estimate = t * ratio / (1.0 - ratio);
                converged = true;
                break;
            }
        }
    }
    rep.terms_used = static_cast<int>(rep.terms.size());
    rep.limit_estimate = sum + rep.tail_estimate;
    // Non-decaying terms mean the untruncated series diverges.  Trailing
    // zeros are a truncation artifact (nilpotent finite sections), so the
    // plateau test looks at the last nonzero stretch.
    size_t end = rep.terms.size();
    while (end > 0 && rep.terms[end - 1] == 0.0) --end;
    if (end >= 4) {
        int non_decaying = 0;
        for (size_t i = end - 3; i < end; ++i)
            if (rep.terms[i] >= 0.9 * rep.terms[i - 1]) ++non_decaying;
        rep.flat_terms = (non_decaying == 3) && rep.terms[end - 1] > 1e-12;
    }
    rep.satisfied = decide(rep, converged, budget);
    return rep;
}

}  // namespace

WeightSequence WeightSequence::checked(std::function<double(int)> rule, std::string label,
                                       int horizon) {
    if (horizon < 1) throw std::invalid_argument("WeightSequence: horizon must be >= 1");
    double prev = 0.0;
    for (int j = 1; j <= horizon; ++j) {
        const double a = rule(j);
        if (!(a > 0.0))
            throw std::invalid_argument("WeightSequence '" + label + "': alpha_" +
                                        std::to_string(j) + " = " + std::to_string(a) +
                                        " is not positive");
        if (j > 1 && a > prev)
            throw std::invalid_argument("WeightSequence '" + label + "': alpha_" +
                                        std::to_string(j) + " exceeds alpha_" +
                                        std::to_string(j - 1));
        prev = a;
    }
    return WeightSequence(std::move(rule), std::move(label), horizon);
}

double WeightSequence::alpha(int n) const {
    if (n < 1 || n > horizon_)
        throw std::out_of_range("WeightSequence '" + label_ + "': index " + std::to_string(n) +
                                " outside validated horizon " + std::to_string(horizon_));
    return rule_(n);
}

WeightSequence dirichlet_weights(int horizon) {
    return WeightSequence::checked(
        [](int n) { return std::sqrt((n + 1.0) / n); }, "dirichlet", horizon);
}

double mueller_b(const WeightSequence& alpha, int n) {
    if (n < 1) throw std::invalid_argument("mueller_b: n must be >= 1");
    double log_b = 0.0;
    for (int j = 1; j <= n; ++j) log_b -= 2.0 * std::log(alpha.alpha(j));
    return std::exp(log_b);
}

double operator_norm(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    if (m.rows() <= 400 && m.cols() <= 400)
        return m.jacobiSvd().singularValues()(0);
    return power_iteration_norm(m);
}

Eigen::MatrixXcd truncated_backward_shift(int truncation, double scale) {
    return scale * build_shift_matrices(truncation).backward;
}

ModelCheckReport mueller_sum(const Eigen::MatrixXcd& t, const WeightSequence& alpha,
                             int max_terms, bool literal_first_power) {
    if (t.rows() != t.cols()) throw std::invalid_argument("mueller_sum: matrix not square");
    max_terms = std::min(max_terms, alpha.horizon());
    const double norm_t_sq = [&] {
        const double n = operator_norm(t);
        return n * n;
    }();
    Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(t.rows(), t.cols());
    double log_b = 0.0;
    auto term_for = [&](int n) {
        power = power * t;
        log_b -= 2.0 * std::log(alpha.alpha(n));
        if (literal_first_power) return norm_t_sq * std::exp(log_b);
        const double nn = operator_norm(power);
        return nn * nn * std::exp(log_b);
    };
    return accumulate_terms(term_for, max_terms, 1.0);
}

ModelCheckReport mueller_sum_vectorwise(const Eigen::MatrixXcd& t, const WeightSequence& alpha,
                                        const Eigen::VectorXcd& x, int max_terms) {
    if (t.rows() != t.cols() || t.cols() != x.size())
        throw std::invalid_argument("mueller_sum_vectorwise: dimension mismatch");
    max_terms = std::min(max_terms, alpha.horizon());
    Eigen::VectorXcd v = x;
    double log_b = 0.0;
    auto term_for = [&](int n) {
        v = t * v;
        log_b -= 2.0 * std::log(alpha.alpha(n));
        return v.squaredNorm() * std::exp(log_b);
    };
    return accumulate_terms(term_for, max_terms, x.squaredNorm());
}

EigenspaceResult eigen_space(const Eigen::MatrixXcd& t, Complex lambda, double rank_tolerance) {
    if (t.rows() != t.cols()) throw std::invalid_argument("eigen_space: matrix not square");
    const Eigen::Index n = t.rows();
    Eigen::MatrixXcd shifted = t - lambda * Eigen::MatrixXcd::Identity(n, n);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(shifted, Eigen::ComputeFullV);
    const Eigen::VectorXd sigma = svd.singularValues();  // descending

    EigenspaceResult out;
    out.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
    const double sigma_max = sigma(0);
    const double threshold = rank_tolerance * std::max(sigma_max, 1e-300);

    Eigen::Index first_null = n;
    for (Eigen::Index i = 0; i < n; ++i)
        if (sigma(i) <= threshold) {
            first_null = i;
            break;
        }
    out.dimension = static_cast<int>(n - first_null);

    const double largest_null = (first_null < n) ? sigma(first_null) : 0.0;
    const double smallest_kept = (first_null > 0) ? sigma(first_null - 1) : 0.0;
    if (out.dimension == 0 || largest_null == 0.0)
        out.gap = std::numeric_limits<double>::infinity();
    else if (first_null == 0)
        out.gap = std::numeric_limits<double>::infinity();  // the whole matrix is near zero
    else
        out.gap = smallest_kept / largest_null;

    if (std::isfinite(out.gap) && out.gap < 10.0)
        throw rank_error("eigen_space: ambiguous numerical rank, gap = " +
                             std::to_string(out.gap),
                         out.singular_values);

    out.basis = svd.matrixV().rightCols(out.dimension);
    out.residual = out.dimension > 0 ? operator_norm(shifted * out.basis) : 0.0;
    return out;
}

RestrictionResult restrict_to_kernel_span(const std::vector<DiskPoint>& mu_samples,
                                          const std::vector<Eigen::VectorXcd>& directions,
                                          int truncation) {
    if (mu_samples.empty() || mu_samples.size() != directions.size())
        throw std::invalid_argument("restrict_to_kernel_span: need matching nonempty lists");
    for (size_t i = 0; i < mu_samples.size(); ++i)
        for (size_t j = i + 1; j < mu_samples.size(); ++j)
            if (mu_samples[i].value() == mu_samples[j].value())
                throw std::invalid_argument("restrict_to_kernel_span: repeated sample point");
    const Eigen::Index dim_e = directions[0].size();
    for (const auto& e : directions) {
        if (e.size() != dim_e)
            throw std::invalid_argument("restrict_to_kernel_span: direction dims differ");
        if (std::abs(e.norm() - 1.0) > 1e-10)
            throw std::invalid_argument("restrict_to_kernel_span: directions must be unit");
    }

    const Eigen::Index k = static_cast<Eigen::Index>(mu_samples.size());
    Eigen::MatrixXcd generators(truncation * dim_e, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const auto v = embed_kernel(mu_samples[i], truncation).vec.coords;
        generators.col(i) = kron(v, directions[i]);
    }

    Eigen::MatrixXcd normalized = generators;
    for (Eigen::Index i = 0; i < k; ++i) normalized.col(i).normalize();
    Eigen::JacobiSVD<Eigen::MatrixXcd> cond_svd(normalized);
    if (cond_svd.singularValues()(k - 1) < 1e-8)
        throw span_error("restrict_to_kernel_span: generators nearly dependent, sigma_min = " +
                         std::to_string(cond_svd.singularValues()(k - 1)));

    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(generators);
    const Eigen::MatrixXcd q =
        qr.householderQ() * Eigen::MatrixXcd::Identity(generators.rows(), k);

    const Eigen::MatrixXcd op =
        kron(build_shift_matrices(truncation).backward,
             Eigen::MatrixXcd::Identity(dim_e, dim_e));
    const Eigen::MatrixXcd op_q = op * q;
    RestrictionResult out;
    out.compressed = q.adjoint() * op_q;
    out.invariance_residual = operator_norm(op_q - q * (q.adjoint() * op_q));
    out.span_basis = q;
    return out;
}

}  // namespace dirshift
