#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grate/config.hpp"
#include "grate/matrix.hpp"
#include "grate/rng.hpp"

namespace grate {

/// Factorized model state: the student feature matrix S (M x K), one
/// temporal knowledge factor slice per aggregated attempt (K x C), the
/// concept-to-problem mapping Q (C x N, column-stochastic), per-student
/// and per-problem biases, and a fixed global offset.
struct ModelParams {
    Matrix s;                    // M x K, entries in [0,1] after projection
    std::vector<Matrix> a;       // T-tilde slices, each K x C
    Matrix q;                    // C x N, columns sum to 1 after projection
    std::vector<double> bias_u;  // length M
    std::vector<double> bias_i;  // length N
    double mu = 0.0;             // fixed to the training-set mean
    LinkKind link = LinkKind::IdentityClamped;

    int num_students() const { return static_cast<int>(s.rows()); }
    int num_problems() const { return static_cast<int>(q.cols()); }
    int num_slices() const { return static_cast<int>(a.size()); }
    int feature_dim() const { return static_cast<int>(s.cols()); }
    int concept_dim() const { return static_cast<int>(q.rows()); }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Per-slice student-by-concept knowledge matrices, K_t = S * A_t.
struct KnowledgeState {
    std::vector<Matrix> slices; // each M x C
};

enum class SliceInit { CopyLast, FreshRandom };

double apply_link(LinkKind link, double z);

/// Derivative of the link at affine score z (for IdentityClamped this is
/// the subgradient: 1 inside (0,1), 0 outside).
double link_derivative(LinkKind link, double z);

/// Affine score s_u . A_t . q_i + b_u + b_i + mu, before the link.
double raw_score(const ModelParams& params, int student, int slice, int problem);

/// Predicted performance of `student` on `problem` at aggregated
/// attempt `slice`. Always in [0,1]. Throws on out-of-range indices.
double predict(const ModelParams& params, int student, int slice, int problem);

/// Knowledge tensor: one M x C matrix S * A_t per slice.
KnowledgeState knowledge(const ModelParams& params);

/// Fresh parameters: factor entries uniform in [0, 0.2], Q columns
/// normalized to sum 1, biases zero, mu = train_mean. Deterministic in
/// the seed. Throws on zero dimensions.
ModelParams init_params(const TrainConfig& config, int students, int problems,
                        int initial_slices, std::uint64_t seed, double train_mean);

/// Grow the temporal factor list by one slice, either duplicating the
/// last slice (warm start) or drawing fresh uniform [0, 0.2] entries.
void append_slice(ModelParams& params, SliceInit mode, std::uint64_t seed = 0);

/// JSON checkpoint round-trip.
std::string params_to_json(const ModelParams& params);
ModelParams params_from_json(const std::string& text);

} // namespace grate
