#include "olid/ocsvm.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <list>
#include <numeric>
#include <unordered_map>

#include <fmt/format.h>

#include "olid/errors.hpp"

namespace olid {

void TrainConfig::validate() const {
    if (!(nu > 0.0 && nu <= 1.0)) {
        throw InvalidConfig(fmt::format("nu must be in (0, 1], got {}", nu));
    }
    if (!(tol > 0.0)) {
        throw InvalidConfig(fmt::format("tol must be positive, got {}", tol));
    }
    if (ngram_order == 0) {
        throw InvalidConfig("ngram_order must be at least 1");
    }
    hash.validate();
}

std::uint64_t TrainConfig::iteration_cap(std::size_t n) const noexcept {
    return max_iter != 0 ? max_iter : std::uint64_t{10000} * n;
}

namespace {

// LRU cache of kernel columns Q[:, i] = <x_k, x_i> for all k.
class KernelColumns {
public:
    KernelColumns(std::span<const SparseVector> points, std::size_t cache_bytes)
        : points_(points) {
        const std::size_t column_bytes = std::max<std::size_t>(points.size() * sizeof(double), 1);
        capacity_ = std::max<std::size_t>(cache_bytes / column_bytes, 2);
    }

    // The returned reference stays valid across the next call as capacity >= 2.
    const std::vector<double>& column(std::size_t i) {
        if (auto it = index_.find(i); it != index_.end()) {
            lru_.splice(lru_.begin(), lru_, it->second);
            return it->second->values;
        }
        if (index_.size() >= capacity_) {
            index_.erase(lru_.back().owner);
            lru_.pop_back();
        }
        lru_.push_front(Slot{i, compute(i)});
        index_.emplace(i, lru_.begin());
        return lru_.front().values;
    }

private:
    struct Slot {
        std::size_t owner;
        std::vector<double> values;
    };

    std::vector<double> compute(std::size_t i) const {
        std::vector<double> col(points_.size());
        const SparseVector& xi = points_[i];
        for (std::size_t k = 0; k < points_.size(); ++k) {
            col[k] = points_[k].dot(xi);
        }
        return col;
    }

    std::span<const SparseVector> points_;
    std::size_t capacity_;
    std::list<Slot> lru_;
    std::unordered_map<std::size_t, std::list<Slot>::iterator> index_;
};

struct ViolatingPair {
    std::size_t up = 0;    // alpha may increase; minimal gradient
    std::size_t down = 0;  // alpha may decrease; maximal gradient
    double gap = 0.0;
};

// Lowest index wins ties on both sides.
ViolatingPair select_pair(const std::vector<double>& alpha, const std::vector<double>& grad,
                          double upper) {
    double min_up = std::numeric_limits<double>::infinity();
    double max_down = -std::numeric_limits<double>::infinity();
    ViolatingPair p;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        if (alpha[k] < upper && grad[k] < min_up) {
            min_up = grad[k];
            p.up = k;
        }
        if (alpha[k] > 0.0 && grad[k] > max_down) {
            max_down = grad[k];
            p.down = k;
        }
    }
    p.gap = max_down - min_up;
    return p;
}

std::vector<double> dense_weights(std::span<const SparseVector> points, std::span<const double> alpha,
                                  std::uint32_t dim) {
    std::vector<double> w(dim, 0.0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (alpha[i] == 0.0) {
            continue;
        }
        for (const auto& [index, value] : points[i].entries()) {
            w[index] += alpha[i] * value;
        }
    }
    return w;
}

// Offset from KKT: G_i = rho on free alphas, G_i >= rho at 0, G_i <= rho at C.
double recover_rho(const std::vector<double>& alpha, const std::vector<double>& grad, double upper) {
    double free_sum = 0.0;
    std::size_t free_count = 0;
    double at_lower_min = std::numeric_limits<double>::infinity();
    double at_upper_max = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        if (alpha[k] <= 0.0) {
            at_lower_min = std::min(at_lower_min, grad[k]);
        } else if (alpha[k] >= upper) {
            at_upper_max = std::max(at_upper_max, grad[k]);
        } else {
            free_sum += grad[k];
            ++free_count;
        }
    }
    if (free_count > 0) {
        return free_sum / static_cast<double>(free_count);
    }
    if (std::isinf(at_lower_min)) {
        return at_upper_max;  // nu = 1: everything sits at the upper bound
    }
    return 0.5 * (at_lower_min + at_upper_max);
}

#ifndef NDEBUG
void assert_feasible(const std::vector<double>& alpha, double upper) {
    double sum = 0.0;
    for (const double a : alpha) {
        assert(a >= 0.0 && a <= upper + 1e-12);
        sum += a;
    }
    assert(std::abs(sum - 1.0) <= 1e-9);
}
#endif

}  // namespace

double dual_objective(std::span<const SparseVector> points, std::span<const double> alpha) {
    if (alpha.size() != points.size()) {
        throw DimensionMismatch("alpha length differs from point count");
    }
    double obj = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (alpha[i] == 0.0) {
            continue;
        }
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (alpha[j] != 0.0) {
                obj += alpha[i] * alpha[j] * points[i].dot(points[j]);
            }
        }
    }
    return 0.5 * obj;
}

DualSolution solve_dual(std::span<const SparseVector> points, double nu, double tol,
                        std::uint64_t max_iter, const SolverOptions& options) {
    const std::size_t n = points.size();
    if (n < 2) {
        throw InsufficientData(fmt::format("need at least 2 training points, got {}", n));
    }
    if (!(nu > 0.0 && nu <= 1.0)) {
        throw InvalidConfig(fmt::format("nu must be in (0, 1], got {}", nu));
    }
    if (!(tol > 0.0)) {
        throw InvalidConfig(fmt::format("tol must be positive, got {}", tol));
    }
    const std::uint32_t dim = points.front().dim();
    for (const auto& p : points) {
        if (p.dim() != dim) {
            throw DimensionMismatch(fmt::format("training vectors have dims {} and {}", dim, p.dim()));
        }
    }

    DualSolution sol;
    const double upper = 1.0 / (nu * static_cast<double>(n));
    sol.upper_bound = upper;
    sol.alpha.assign(n, 1.0 / static_cast<double>(n));
    auto& alpha = sol.alpha;

    std::vector<double> grad(n);
    {
        const std::vector<double> w = dense_weights(points, alpha, dim);
        for (std::size_t k = 0; k < n; ++k) {
            grad[k] = points[k].dot(w);
        }
    }
    std::vector<double> diag(n);
    for (std::size_t k = 0; k < n; ++k) {
        diag[k] = points[k].squared_norm();
    }

    double objective = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        objective += 0.5 * alpha[k] * grad[k];
    }

    KernelColumns kernel(points, options.cache_bytes);
    constexpr double kTau = 1e-12;

    if (max_iter == 0) {
        max_iter = std::uint64_t{10000} * n;
    }
    std::uint64_t iter = 0;
    ViolatingPair pair = select_pair(alpha, grad, upper);
    while (pair.gap > tol && iter < max_iter) {
        const std::size_t i = pair.up;
        const std::size_t j = pair.down;
        const std::vector<double>& qi = kernel.column(i);
        const std::vector<double>& qj = kernel.column(j);

        const double curvature = diag[i] + diag[j] - 2.0 * qi[j];
        const double room_up = upper - alpha[i];
        const double room_down = alpha[j];
        const double step =
            std::min({pair.gap / std::max(curvature, kTau), room_up, room_down});
        const bool i_hits_bound = step == room_up;
        const bool j_hits_bound = step == room_down;

        alpha[i] = i_hits_bound ? upper : alpha[i] + step;
        alpha[j] = j_hits_bound ? 0.0 : alpha[j] - step;
        for (std::size_t k = 0; k < n; ++k) {
            grad[k] += step * (qi[k] - qj[k]);
        }
        objective += -step * pair.gap + 0.5 * step * step * curvature;
        ++iter;

#ifndef NDEBUG
        assert_feasible(alpha, upper);
#endif
        pair = select_pair(alpha, grad, upper);
        if (options.on_update) {
            options.on_update(SolverProgress{iter, objective, pair.gap, alpha});
        }
    }

    sol.iterations = iter;
    sol.converged = pair.gap <= tol;

    // Refresh the gradient from the materialized w so rho and the reported
    // decision values agree exactly with what the model computes.
    const std::vector<double> w = dense_weights(points, alpha, dim);
    for (std::size_t k = 0; k < n; ++k) {
        grad[k] = points[k].dot(w);
    }
    sol.max_violation = select_pair(alpha, grad, upper).gap;
    sol.rho = recover_rho(alpha, grad, upper);
    sol.objective = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sol.objective += 0.5 * alpha[k] * grad[k];
        if (alpha[k] > 0.0) {
            ++sol.support_vectors;
        }
        if (alpha[k] >= upper) {
            ++sol.bound_support_vectors;
        }
    }
    sol.gradient = std::move(grad);
    return sol;
}

OneClassModel::OneClassModel(TrainConfig config, std::vector<double> weights, double rho,
                             std::uint64_t n_train, std::uint64_t sv_count, bool converged,
                             std::uint64_t iterations)
    : config_(config),
      weights_(std::move(weights)),
      rho_(rho),
      n_train_(n_train),
      sv_count_(sv_count),
      converged_(converged),
      iterations_(iterations) {
    config_.validate();
    if (weights_.size() != config_.hash.dim()) {
        throw DimensionMismatch(fmt::format("weight vector has {} entries, hash space is {}",
                                            weights_.size(), config_.hash.dim()));
    }
}

double OneClassModel::decision(const SparseVector& x) const {
    return x.dot(std::span<const double>(weights_)) - rho_;
}

SparseVector OneClassModel::featurize(const Sentence& sentence) const {
    return olid::featurize(sentence, config_.ngram_order, config_.hash);
}

Prediction OneClassModel::predict(const Sentence& sentence) const {
    const double score = decision(featurize(sentence));
    return Prediction{score > 0.0 ? Label::InLanguage : Label::Outlier, score};
}

Prediction OneClassModel::predict(std::string_view raw) const {
    return predict(normalize(raw));
}

double TrainResult::training_outlier_fraction(double tol) const noexcept {
    if (dual.gradient.empty()) {
        return 0.0;
    }
    const auto outliers = std::count_if(dual.gradient.begin(), dual.gradient.end(),
                                        [&](double g) { return g - dual.rho < -tol; });
    return static_cast<double>(outliers) / static_cast<double>(dual.gradient.size());
}

TrainResult train_vectors(std::span<const SparseVector> vectors, const TrainConfig& config,
                          const SolverOptions& options) {
    config.validate();
    const std::uint32_t dim = config.hash.dim();
    for (const auto& v : vectors) {
        if (v.dim() != dim) {
            throw DimensionMismatch(
                fmt::format("training vector has dim {}, config expects {}", v.dim(), dim));
        }
    }
    DualSolution dual =
        solve_dual(vectors, config.nu, config.tol, config.iteration_cap(vectors.size()), options);
    std::vector<double> w = dense_weights(vectors, dual.alpha, dim);
    OneClassModel model(config, std::move(w), dual.rho, vectors.size(), dual.support_vectors,
                        dual.converged, dual.iterations);
    return TrainResult{std::move(model), std::move(dual)};
}

OneClassModel train(std::span<const SparseVector> vectors, const TrainConfig& config) {
    return train_vectors(vectors, config).model;
}

TrainResult train_sentences(std::span<const Sentence> sentences, const TrainConfig& config,
                            const SolverOptions& options) {
    config.validate();
    std::vector<SparseVector> vectors;
    vectors.reserve(sentences.size());
    for (const auto& s : sentences) {
        vectors.push_back(featurize(s, config.ngram_order, config.hash));
    }
    return train_vectors(vectors, config, options);
}

}  // namespace olid
