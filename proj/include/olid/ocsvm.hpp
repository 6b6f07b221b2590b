/**
 * Linear one-class nu-SVM.
 *
 * Training solves the dual
 *
 *     minimize    1/2 sum_ij a_i a_j <x_i, x_j>
 *     subject to  0 <= a_i <= 1/(nu n),  sum_i a_i = 1
 *
 * with pairwise (SMO) updates on the maximal violating pair. The primal
 * weight vector w = sum_i a_i x_i is materialized densely, so scoring a
 * sparse input costs O(nnz). The decision function is f(x) = <w, x> - rho;
 * f(x) > 0 means in-language.
 *
 * At most a fraction nu of the training points end up with f < 0 and at
 * least a fraction nu are support vectors.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "olid/hashvec.hpp"

namespace olid {

struct TrainConfig {
    double nu = 0.05;
    double tol = 1e-4;
    /// Cap on pairwise updates; 0 selects 10000 * n.
    std::uint64_t max_iter = 0;
    unsigned ngram_order = 4;
    HashConfig hash;

    /// Throws InvalidConfig unless 0 < nu <= 1, tol > 0, ngram_order >= 1
    /// and the hash config is valid.
    void validate() const;
    std::uint64_t iteration_cap(std::size_t n) const noexcept;

    friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

/// Snapshot handed to SolverOptions::on_update after every pairwise update.
struct SolverProgress {
    std::uint64_t iteration = 0;
    double objective = 0.0;
    double max_violation = 0.0;
    std::span<const double> alpha;
};

struct SolverOptions {
    /// Memory budget for cached kernel columns.
    std::size_t cache_bytes = std::size_t{256} << 20;
    std::function<void(const SolverProgress&)> on_update;
};

struct DualSolution {
    std::vector<double> alpha;
    /// (Q alpha)_i = <w, x_i>, recomputed from w after the last update.
    std::vector<double> gradient;
    double upper_bound = 0.0;  ///< 1 / (nu n)
    double rho = 0.0;
    double objective = 0.0;
    double max_violation = 0.0;
    std::uint64_t iterations = 0;
    bool converged = false;
    std::size_t support_vectors = 0;
    std::size_t bound_support_vectors = 0;
};

/// Solves the one-class dual over arbitrary same-dimension vectors.
/// max_iter == 0 selects 10000 * n updates.
/// Throws InsufficientData for fewer than two points, DimensionMismatch for
/// mixed dimensions and InvalidConfig for nu outside (0, 1] or tol <= 0.
DualSolution solve_dual(std::span<const SparseVector> points, double nu, double tol,
                        std::uint64_t max_iter, const SolverOptions& options = {});

/// 1/2 a^T Q a evaluated directly; used for reporting and checks.
double dual_objective(std::span<const SparseVector> points, std::span<const double> alpha);

enum class Label { InLanguage, Outlier };

struct Prediction {
    Label label = Label::Outlier;
    double score = 0.0;
};

class OneClassModel {
public:
    OneClassModel(TrainConfig config, std::vector<double> weights, double rho, std::uint64_t n_train,
                  std::uint64_t sv_count, bool converged, std::uint64_t iterations);

    const TrainConfig& config() const noexcept { return config_; }
    std::span<const double> weights() const noexcept { return weights_; }
    double rho() const noexcept { return rho_; }
    std::uint64_t n_train() const noexcept { return n_train_; }
    std::uint64_t sv_count() const noexcept { return sv_count_; }
    bool converged() const noexcept { return converged_; }
    std::uint64_t iterations() const noexcept { return iterations_; }
    std::uint32_t dim() const noexcept { return static_cast<std::uint32_t>(weights_.size()); }

    /// <w, x> - rho. Throws DimensionMismatch.
    double decision(const SparseVector& x) const;
    /// Featurizes an already normalized sentence with the model's settings.
    SparseVector featurize(const Sentence& sentence) const;
    Prediction predict(const Sentence& sentence) const;
    /// normalize -> extract_ngrams -> vectorize -> decision, threshold 0.
    /// Throws InvalidEncoding for malformed UTF-8.
    Prediction predict(std::string_view raw) const;

private:
    TrainConfig config_;
    std::vector<double> weights_;
    double rho_;
    std::uint64_t n_train_;
    std::uint64_t sv_count_;
    bool converged_;
    std::uint64_t iterations_;
};

struct TrainResult {
    OneClassModel model;
    DualSolution dual;

    /// Fraction of training points with decision < -tol.
    double training_outlier_fraction(double tol) const noexcept;
};

/// Trains on pre-featurized vectors; every vector must have dim 2^hash_bits.
TrainResult train_vectors(std::span<const SparseVector> vectors, const TrainConfig& config,
                          const SolverOptions& options = {});

OneClassModel train(std::span<const SparseVector> vectors, const TrainConfig& config);

/// Featurizes sentences with the config's n-gram order and hash settings,
/// then trains.
TrainResult train_sentences(std::span<const Sentence> sentences, const TrainConfig& config,
                            const SolverOptions& options = {});

}  // namespace olid
