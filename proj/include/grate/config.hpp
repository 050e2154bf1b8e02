#pragma once

#include <cstdint>
#include <stdexcept>

namespace grate {

/// Link applied to the affine score. Logistic squashes R -> (0,1);
/// IdentityClamped clips the score to [0,1] (real-valued datasets).
enum class LinkKind { IdentityClamped, Logistic };

enum class DecayKind { InverseSqrt, Multiplicative };

struct SgdConfig {
    double lr0 = 0.1;
    DecayKind decay = DecayKind::InverseSqrt;
    double gamma = 0.95;  // multiplicative decay factor, in (0, 1]
    int max_epochs = 200;
    double tol = 1e-5;    // relative loss-improvement stop; 0 disables
    std::uint64_t shuffle_seed = 0;
    bool project_each_step = false;

    void validate() const {
        if (lr0 <= 0.0) throw std::invalid_argument("lr0 must be positive");
        if (max_epochs < 1) throw std::invalid_argument("max_epochs must be >= 1");
        if (tol < 0.0) throw std::invalid_argument("tol must be >= 0");
        if (decay == DecayKind::Multiplicative && (gamma <= 0.0 || gamma > 1.0))
            throw std::invalid_argument("gamma must be in (0, 1]");
    }
};

/// Which consecutive slice pairs enter the rank penalty.
struct RankPairStrategy {
    enum class Kind { Full, Window, Sampled };
    Kind kind = Kind::Full;
    int window = 1;          // Window: number of trailing pairs
    int sample_count = 1;    // Sampled: pairs drawn per evaluation
    std::uint64_t seed = 0;  // Sampled: draw seed

    static RankPairStrategy full() { return {}; }
    static RankPairStrategy windowed(int w) {
        RankPairStrategy s;
        s.kind = Kind::Window;
        s.window = w;
        return s;
    }
    static RankPairStrategy sampled(int n, std::uint64_t seed) {
        RankPairStrategy s;
        s.kind = Kind::Sampled;
        s.sample_count = n;
        s.seed = seed;
        return s;
    }
};

/// Model dimensions, regularization, and ablation switches for one run.
struct TrainConfig {
    int k = 3;               // student latent feature dimension
    int c = 9;               // latent concept count
    double lambda_s = 0.001; // student factor regularizer
    double lambda_a = 0.001; // knowledge slice regularizer
    double eta = 0.1;        // rank penalty trade-off

    LinkKind link = LinkKind::IdentityClamped;
    bool use_aggregation = true; // off = W/O-Agg ablation (identity map, unit weights)
    bool use_rank = true;        // off = W/O-Rank ablation (eta treated as 0)

    RankPairStrategy rank_pairs;
    SgdConfig sgd;
    int online_epochs = 200;  // refit budget per online round
    int utility_epochs = 30;  // reduced budget for utility candidate refits
    std::uint64_t seed = 0;

    double effective_eta() const { return use_rank ? eta : 0.0; }

    void validate() const {
        if (k < 1 || c < 1) throw std::invalid_argument("k and c must be >= 1");
        if (lambda_s < 0 || lambda_a < 0) throw std::invalid_argument("regularizers must be >= 0");
        if (eta < 0) throw std::invalid_argument("eta must be >= 0");
        sgd.validate();
    }
};

} // namespace grate
