#include "radiot/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "radiot/errors.hpp"
#include "radiot/rng.hpp"

namespace radiot {

double softplus(double x) {
    // ln(1 + e^x) = max(x, 0) + log1p(e^(-|x|))
    return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double sigmoid(double x) {
    double s;
    if (x >= 0.0) {
        double e = std::exp(-x);
        s = 1.0 / (1.0 + e);
    } else {
        double e = std::exp(x);
        s = e / (1.0 + e);
    }
    // Keep the open-interval (0,1) contract where double rounding would
    // saturate (|x| beyond ~37).
    constexpr double lo = 4.9406564584124654e-324;
    if (s <= 0.0) return lo;
    if (s >= 1.0) return 1.0 - 1.1102230246251565e-16;
    return s;
}

double softplus_prime(double x) { return sigmoid(x); }

double sigmoid_prime(double x) {
    double s = sigmoid(x);
    return s * (1.0 - s);
}

void Architecture::validate() const {
    if (layer_sizes.size() < 3)
        throw ConfigError("architecture needs at least one hidden layer");
    for (std::size_t n : layer_sizes)
        if (n == 0) throw ConfigError("architecture has an empty layer");
    if (layer_sizes.front() != layer_sizes.back())
        throw ConfigError("autoencoder input and output sizes must match");
    std::size_t hidden = layer_sizes.size() - 2;
    if (hidden % 2 == 0)
        throw ConfigError("autoencoder needs an odd number of hidden layers");
    // Bottleneck: the middle layer is strictly the smallest.
    std::size_t mid = layer_sizes.size() / 2;
    for (std::size_t i = 0; i < layer_sizes.size(); ++i)
        if (i != mid && layer_sizes[mid] >= layer_sizes[i])
            throw ConfigError("bottleneck layer must be strictly the smallest");
}

Architecture default_architecture(std::size_t input_size, Activation act) {
    Architecture arch;
    auto pct = [&](double f) {
        return static_cast<std::size_t>(std::llround(f * static_cast<double>(input_size)));
    };
    std::size_t side = pct(0.875);
    std::size_t mid = std::min(pct(0.75), side > 0 ? side - 1 : 0);
    if (mid == 0)
        throw ConfigError("input size " + std::to_string(input_size) +
                          " is too small for the default architecture");
    arch.layer_sizes = {input_size, side, mid, side, input_size};
    arch.hidden_activation = act;
    arch.validate();
    return arch;
}

void ModelParams::validate() const {
    arch.validate();
    if (layers.size() != arch.layer_sizes.size() - 1)
        throw ConfigError("model layer count does not match architecture");
    for (std::size_t l = 0; l < layers.size(); ++l) {
        std::size_t fan_in = arch.layer_sizes[l];
        std::size_t fan_out = arch.layer_sizes[l + 1];
        if (layers[l].weights.size() != fan_in * fan_out ||
            layers[l].biases.size() != fan_out)
            throw ConfigError("model layer " + std::to_string(l) +
                              " has inconsistent dimensions");
    }
}

ModelParams init_params(const Architecture& arch, std::uint64_t seed) {
    arch.validate();
    ModelParams p;
    p.arch = arch;
    p.meta.seed = seed;
    Rng rng(mix_seed(seed, 0x1617));
    for (std::size_t l = 0; l + 1 < arch.layer_sizes.size(); ++l) {
        std::size_t fan_in = arch.layer_sizes[l];
        std::size_t fan_out = arch.layer_sizes[l + 1];
        Layer layer;
        double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        layer.weights.resize(fan_in * fan_out);
        for (auto& w : layer.weights) w = rng.uniform(-limit, limit);
        layer.biases.assign(fan_out, 0.0);
        p.layers.push_back(std::move(layer));
    }
    return p;
}

namespace {

double activate(Activation act, double z) {
    return act == Activation::softplus ? softplus(z) : sigmoid(z);
}

double activate_prime(Activation act, double z) {
    return act == Activation::softplus ? softplus_prime(z) : sigmoid_prime(z);
}

// Forward pass keeping pre-activations and activations for backprop.
struct ForwardTrace {
    std::vector<std::vector<double>> pre;   // z per layer (layers.size() entries)
    std::vector<std::vector<double>> post;  // a per layer, post[0] = input
};

void forward_trace(const ModelParams& p, std::span<const double> x, ForwardTrace& t) {
    const auto& sizes = p.arch.layer_sizes;
    t.pre.resize(p.layers.size());
    t.post.resize(sizes.size());
    t.post[0].assign(x.begin(), x.end());

    for (std::size_t l = 0; l < p.layers.size(); ++l) {
        std::size_t fan_in = sizes[l];
        std::size_t fan_out = sizes[l + 1];
        const Layer& layer = p.layers[l];
        auto& z = t.pre[l];
        z.assign(layer.biases.begin(), layer.biases.end());
        const std::vector<double>& a = t.post[l];
        for (std::size_t o = 0; o < fan_out; ++o) {
            const double* wrow = layer.weights.data() + o * fan_in;
            double acc = z[o];
            for (std::size_t i = 0; i < fan_in; ++i) acc += wrow[i] * a[i];
            z[o] = acc;
        }
        auto& out = t.post[l + 1];
        out.resize(fan_out);
        bool last = (l + 1 == p.layers.size());
        if (last && !p.arch.sigmoid_output) {
            out = z;
        } else if (last) {
            for (std::size_t o = 0; o < fan_out; ++o) out[o] = sigmoid(z[o]);
        } else {
            for (std::size_t o = 0; o < fan_out; ++o)
                out[o] = activate(p.arch.hidden_activation, z[o]);
        }
    }
}

double sample_mse(const ModelParams& p, std::span<const double> x, ForwardTrace& t) {
    forward_trace(p, x, t);
    const auto& out = t.post.back();
    double acc = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        double d = out[i] - x[i];
        acc += d * d;
    }
    return acc / static_cast<double>(out.size());
}

// Accumulates the gradient of the batch-mean sample MSE for one sample.
void backprop_accumulate(const ModelParams& p, const ForwardTrace& t,
                         double batch_scale, std::vector<Layer>& grads) {
    const auto& sizes = p.arch.layer_sizes;
    const std::size_t L = p.layers.size();
    const auto& out = t.post.back();
    const auto& x = t.post.front();

    // delta at the output: d(loss)/d(z_L)
    std::vector<double> delta(out.size());
    double denom = static_cast<double>(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        double g = 2.0 * (out[i] - x[i]) / denom * batch_scale;
        if (p.arch.sigmoid_output) g *= sigmoid_prime(t.pre[L - 1][i]);
        delta[i] = g;
    }

    for (std::size_t l = L; l-- > 0;) {
        std::size_t fan_in = sizes[l];
        std::size_t fan_out = sizes[l + 1];
        const auto& a_prev = t.post[l];
        Layer& g = grads[l];
        for (std::size_t o = 0; o < fan_out; ++o) {
            g.biases[o] += delta[o];
            double* grow = g.weights.data() + o * fan_in;
            for (std::size_t i = 0; i < fan_in; ++i) grow[i] += delta[o] * a_prev[i];
        }
        if (l == 0) break;
        const Layer& layer = p.layers[l];
        std::vector<double> prev_delta(fan_in, 0.0);
        for (std::size_t o = 0; o < fan_out; ++o) {
            const double* wrow = layer.weights.data() + o * fan_in;
            for (std::size_t i = 0; i < fan_in; ++i) prev_delta[i] += wrow[i] * delta[o];
        }
        for (std::size_t i = 0; i < fan_in; ++i)
            prev_delta[i] *= activate_prime(p.arch.hidden_activation, t.pre[l - 1][i]);
        delta = std::move(prev_delta);
    }
}

std::vector<Layer> zero_like(const ModelParams& p) {
    std::vector<Layer> out(p.layers.size());
    for (std::size_t l = 0; l < p.layers.size(); ++l) {
        out[l].weights.assign(p.layers[l].weights.size(), 0.0);
        out[l].biases.assign(p.layers[l].biases.size(), 0.0);
    }
    return out;
}

void check_batch(const ModelParams& p, const Dataset& batch) {
    if (batch.empty()) throw ConfigError("empty batch");
    for (const auto& row : batch)
        if (row.size() != p.arch.input_size())
            throw ConfigError("batch row dimension " + std::to_string(row.size()) +
                              " does not match input size " +
                              std::to_string(p.arch.input_size()));
}

}  // namespace

std::vector<double> forward(const ModelParams& params, std::span<const double> x) {
    params.validate();
    if (x.size() != params.arch.input_size())
        throw ConfigError("forward input dimension mismatch");
    ForwardTrace t;
    forward_trace(params, x, t);
    return t.post.back();
}

double loss(const ModelParams& params, const Dataset& batch) {
    params.validate();
    check_batch(params, batch);
    ForwardTrace t;
    double acc = 0.0;
    for (const auto& row : batch) acc += sample_mse(params, row, t);
    return acc / static_cast<double>(batch.size());
}

std::vector<Layer> gradient(const ModelParams& params, const Dataset& batch) {
    params.validate();
    check_batch(params, batch);
    auto grads = zero_like(params);
    ForwardTrace t;
    double scale = 1.0 / static_cast<double>(batch.size());
    for (const auto& row : batch) {
        forward_trace(params, row, t);
        backprop_accumulate(params, t, scale, grads);
    }
    return grads;
}

TrainResult train(const Dataset& data, const Architecture& arch,
                  const TrainingConfig& cfg, const ModelParams* resume_from) {
    arch.validate();
    if (data.empty()) throw ConfigError("training data is empty");
    if (cfg.learning_rate <= 0.0) throw ConfigError("learning rate must be positive");
    if (cfg.batch_size == 0) throw ConfigError("batch size must be at least 1");

    TrainResult result;
    if (resume_from) {
        resume_from->validate();
        if (resume_from->arch.layer_sizes != arch.layer_sizes)
            throw ConfigError("resume parameters do not match the architecture");
        result.params = *resume_from;
    } else {
        result.params = init_params(arch, cfg.seed);
    }
    ModelParams& p = result.params;
    check_batch(p, data);

    // Epoch-0 error survey: drives the optional loss-threshold stop.
    {
        ForwardTrace t;
        double total = 0.0, worst = 0.0;
        for (const auto& row : data) {
            double e = sample_mse(p, row, t);
            total += e;
            worst = std::max(worst, e);
        }
        result.initial_loss = total / static_cast<double>(data.size());
        result.max_initial_sample_error = worst;
    }
    double fit_target = cfg.fit_target_fraction > 0.0
                            ? cfg.fit_target_fraction * result.max_initial_sample_error
                            : -1.0;

    auto velocity = zero_like(p);
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);

    double best_loss = result.initial_loss;
    std::size_t stall = 0;
    double epoch_loss = result.initial_loss;
    ForwardTrace t;

    for (std::size_t epoch = cfg.start_epoch; epoch < cfg.max_epochs; ++epoch) {
        // Deterministic shuffle, a pure function of (seed, epoch) so a
        // resumed run visits the same batches an uninterrupted one would.
        std::iota(order.begin(), order.end(), 0);
        Rng rng(mix_seed(cfg.seed, 0x5eed, epoch));
        for (std::size_t i = order.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(rng.next_u64() % i);
            std::swap(order[i - 1], order[j]);
        }

        double total = 0.0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            std::size_t count = std::min(cfg.batch_size, order.size() - start);
            auto grads = zero_like(p);
            double scale = 1.0 / static_cast<double>(count);
            for (std::size_t k = 0; k < count; ++k) {
                const auto& row = data[order[start + k]];
                total += sample_mse(p, row, t);
                backprop_accumulate(p, t, scale, grads);
            }
            for (std::size_t l = 0; l < p.layers.size(); ++l) {
                auto& w = p.layers[l].weights;
                auto& b = p.layers[l].biases;
                auto& vw = velocity[l].weights;
                auto& vb = velocity[l].biases;
                for (std::size_t i = 0; i < w.size(); ++i) {
                    vw[i] = cfg.momentum * vw[i] - cfg.learning_rate * grads[l].weights[i];
                    w[i] += vw[i];
                }
                for (std::size_t i = 0; i < b.size(); ++i) {
                    vb[i] = cfg.momentum * vb[i] - cfg.learning_rate * grads[l].biases[i];
                    b[i] += vb[i];
                }
            }
        }
        epoch_loss = total / static_cast<double>(data.size());
        p.meta.epochs_run = epoch + 1;
        p.meta.final_loss = epoch_loss;

        if (!std::isfinite(epoch_loss))
            throw TrainingError("training diverged at epoch " + std::to_string(epoch + 1));

        if (fit_target >= 0.0 && epoch_loss <= fit_target) break;
        if (best_loss - epoch_loss < cfg.min_improvement) {
            if (++stall >= cfg.patience && fit_target < 0.0) break;
        } else {
            stall = 0;
        }
        best_loss = std::min(best_loss, epoch_loss);
    }
    return result;
}

std::vector<double> reconstruction_error(const ModelParams& params,
                                         std::span<const double> x) {
    auto out = forward(params, x);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= x[i];
    return out;
}

std::string model_to_json(const ModelParams& params) {
    params.validate();
    nlohmann::json j;
    j["format_version"] = 1;
    j["architecture"]["layer_sizes"] = params.arch.layer_sizes;
    j["architecture"]["hidden_activation"] =
        params.arch.hidden_activation == Activation::softplus ? "softplus" : "sigmoid";
    j["architecture"]["sigmoid_output"] = params.arch.sigmoid_output;
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& l : params.layers) {
        nlohmann::json jl;
        jl["weights"] = l.weights;  // row-major
        jl["biases"] = l.biases;
        layers.push_back(std::move(jl));
    }
    j["layers"] = std::move(layers);
    j["training"]["epochs_run"] = params.meta.epochs_run;
    j["training"]["final_loss"] = params.meta.final_loss;
    j["training"]["seed"] = params.meta.seed;
    return j.dump(2);
}

ModelParams model_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("model JSON: ") + e.what());
    }
    try {
        if (j.at("format_version").get<int>() != 1)
            throw FormatError("unsupported model format version");
        ModelParams p;
        p.arch.layer_sizes = j.at("architecture").at("layer_sizes").get<std::vector<std::size_t>>();
        std::string act = j.at("architecture").at("hidden_activation").get<std::string>();
        if (act == "softplus")
            p.arch.hidden_activation = Activation::softplus;
        else if (act == "sigmoid")
            p.arch.hidden_activation = Activation::sigmoid;
        else
            throw FormatError("unknown activation '" + act + "'");
        p.arch.sigmoid_output = j.at("architecture").at("sigmoid_output").get<bool>();
        for (const auto& jl : j.at("layers")) {
            Layer l;
            l.weights = jl.at("weights").get<std::vector<double>>();
            l.biases = jl.at("biases").get<std::vector<double>>();
            p.layers.push_back(std::move(l));
        }
        p.meta.epochs_run = j.at("training").at("epochs_run").get<std::size_t>();
        p.meta.final_loss = j.at("training").at("final_loss").get<double>();
        p.meta.seed = j.at("training").at("seed").get<std::uint64_t>();
        p.validate();
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("model JSON: ") + e.what());
    }
}

void save_model(const ModelParams& params, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << model_to_json(params) << '\n';
    if (!out) throw IoError("failed writing " + path);
}

ModelParams load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return model_from_json(ss.str());
}

}  // namespace radiot
