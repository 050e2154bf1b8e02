#include "grate/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace grate {

double apply_link(LinkKind link, double z) {
    if (link == LinkKind::Logistic) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    return std::clamp(z, 0.0, 1.0);
}

double link_derivative(LinkKind link, double z) {
    if (link == LinkKind::Logistic) {
        const double p = 1.0 / (1.0 + std::exp(-z));
        return p * (1.0 - p);
    }
    return (z > 0.0 && z < 1.0) ? 1.0 : 0.0;
}

double raw_score(const ModelParams& params, int student, int slice, int problem) {
    if (student < 0 || student >= params.num_students() || slice < 0 ||
        slice >= params.num_slices() || problem < 0 || problem >= params.num_problems()) {
        throw std::out_of_range("predict index out of range");
    }
    const Matrix& at = params.a[static_cast<std::size_t>(slice)];
    const double* su = params.s.row(static_cast<std::size_t>(student));
    const std::size_t kdim = params.s.cols();
    const std::size_t cdim = params.q.rows();
    double z = 0.0;
    for (std::size_t k = 0; k < kdim; ++k) {
        double ak_q = 0.0;
        for (std::size_t c = 0; c < cdim; ++c) {
            ak_q += at(k, c) * params.q(c, static_cast<std::size_t>(problem));
        }
        z += su[k] * ak_q;
    }
    return z + params.bias_u[static_cast<std::size_t>(student)] +
           params.bias_i[static_cast<std::size_t>(problem)] + params.mu;
}

double predict(const ModelParams& params, int student, int slice, int problem) {
    return apply_link(params.link, raw_score(params, student, slice, problem));
}

KnowledgeState knowledge(const ModelParams& params) {
    KnowledgeState state;
    state.slices.reserve(params.a.size());
    const std::size_t m = params.s.rows();
    const std::size_t kdim = params.s.cols();
    for (const Matrix& at : params.a) {
        Matrix ks(m, at.cols());
        for (std::size_t u = 0; u < m; ++u) {
            for (std::size_t c = 0; c < at.cols(); ++c) {
                double v = 0.0;
                for (std::size_t k = 0; k < kdim; ++k) {
                    v += params.s(u, k) * at(k, c);
                }
                ks(u, c) = v;
            }
        }
        state.slices.push_back(std::move(ks));
    }
    return state;
}

namespace {

void fill_uniform(Matrix& m, Rng& rng, double lo, double hi) {
    for (double& x : m.data()) x = rng.uniform(lo, hi);
}

void normalize_columns(Matrix& q) {
    for (std::size_t i = 0; i < q.cols(); ++i) {
        double sum = 0.0;
        for (std::size_t c = 0; c < q.rows(); ++c) sum += q(c, i);
        if (sum <= 0.0) {
            const double uniform = 1.0 / static_cast<double>(q.rows());
            for (std::size_t c = 0; c < q.rows(); ++c) q(c, i) = uniform;
        } else {
            for (std::size_t c = 0; c < q.rows(); ++c) q(c, i) /= sum;
        }
    }
}

} // namespace

ModelParams init_params(const TrainConfig& config, int students, int problems,
                        int initial_slices, std::uint64_t seed, double train_mean) {
    if (students < 1 || problems < 1 || initial_slices < 1) {
        throw std::invalid_argument("init_params requires positive dimensions");
    }
    config.validate();
    Rng rng(mix_seed(seed, 0x6d6f64656cULL));
    ModelParams p;
    p.link = config.link;
    p.mu = train_mean;
    p.s = Matrix(static_cast<std::size_t>(students), static_cast<std::size_t>(config.k));
    fill_uniform(p.s, rng, 0.0, 0.2);
    p.a.reserve(static_cast<std::size_t>(initial_slices));
    for (int t = 0; t < initial_slices; ++t) {
        Matrix at(static_cast<std::size_t>(config.k), static_cast<std::size_t>(config.c));
        fill_uniform(at, rng, 0.0, 0.2);
        p.a.push_back(std::move(at));
    }
    p.q = Matrix(static_cast<std::size_t>(config.c), static_cast<std::size_t>(problems));
    fill_uniform(p.q, rng, 0.0, 0.2);
    normalize_columns(p.q);
    p.bias_u.assign(static_cast<std::size_t>(students), 0.0);
    p.bias_i.assign(static_cast<std::size_t>(problems), 0.0);
    return p;
}

void append_slice(ModelParams& params, SliceInit mode, std::uint64_t seed) {
    if (params.a.empty()) {
        throw std::invalid_argument("append_slice requires at least one existing slice");
    }
    if (mode == SliceInit::CopyLast) {
        params.a.push_back(params.a.back());
    } else {
        Rng rng(mix_seed(seed, 0x736c696365ULL));
        Matrix at(params.a.back().rows(), params.a.back().cols());
        fill_uniform(at, rng, 0.0, 0.2);
        params.a.push_back(std::move(at));
    }
}

namespace {

nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
    const std::size_t rows = j.size();
    const std::size_t cols = rows > 0 ? j.at(0).size() : 0;
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<double>();
    }
    return m;
}

} // namespace

std::string params_to_json(const ModelParams& params) {
    nlohmann::json j;
    j["dims"] = {{"students", params.num_students()},
                 {"slices", params.num_slices()},
                 {"problems", params.num_problems()},
                 {"k", params.feature_dim()},
                 {"c", params.concept_dim()}};
    j["link"] = params.link == LinkKind::Logistic ? "logistic" : "clamp";
    j["mu"] = params.mu;
    j["s"] = matrix_to_json(params.s);
    nlohmann::json slices = nlohmann::json::array();
    for (const Matrix& at : params.a) slices.push_back(matrix_to_json(at));
    j["a"] = std::move(slices);
    j["q"] = matrix_to_json(params.q);
    j["bias_u"] = params.bias_u;
    j["bias_i"] = params.bias_i;
    return j.dump(2);
}

ModelParams params_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ModelParams p;
    p.link = j.at("link").get<std::string>() == "logistic" ? LinkKind::Logistic
                                                           : LinkKind::IdentityClamped;
    p.mu = j.at("mu").get<double>();
    p.s = matrix_from_json(j.at("s"));
    for (const auto& slice : j.at("a")) p.a.push_back(matrix_from_json(slice));
    p.q = matrix_from_json(j.at("q"));
    p.bias_u = j.at("bias_u").get<std::vector<double>>();
    p.bias_i = j.at("bias_i").get<std::vector<double>>();
    return p;
}

} // namespace grate
