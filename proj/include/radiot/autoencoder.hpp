#ifndef RADIOT_AUTOENCODER_HPP
#define RADIOT_AUTOENCODER_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace radiot {

enum class Activation { softplus, sigmoid };

// Activation primitives (overflow-safe forms).
double softplus(double x);
double softplus_prime(double x);  // = sigmoid(x)
double sigmoid(double x);
double sigmoid_prime(double x);

// Feedforward autoencoder shape: equal input/output width, an odd number of
// hidden layers and a strictly smallest middle layer (the bottleneck).
// Hidden layers use `hidden_activation`; the output layer is affine, with a
// sigmoid option for comparison runs.
struct Architecture {
    std::vector<std::size_t> layer_sizes;  // input, hidden..., output
    Activation hidden_activation = Activation::softplus;
    bool sigmoid_output = false;

    std::size_t input_size() const { return layer_sizes.front(); }
    std::size_t output_size() const { return layer_sizes.back(); }

    void validate() const;  // throws ConfigError
};

// 80-70-60-70-80: hidden widths at 87.5%, 75% and 87.5% of the input.
Architecture default_architecture(std::size_t input_size = 80,
                                  Activation act = Activation::softplus);

struct Layer {
    // weights are row-major: weights[out * fan_in + in]
    std::vector<double> weights;
    std::vector<double> biases;
};

struct TrainingMeta {
    std::size_t epochs_run = 0;
    double final_loss = 0.0;
    std::uint64_t seed = 0;
};

struct ModelParams {
    Architecture arch;
    std::vector<Layer> layers;  // layer_sizes.size() - 1 entries
    TrainingMeta meta;

    void validate() const;  // dimension chain must be consistent
};

// Seeded Glorot-uniform initialization: weights in +-sqrt(6/(fan_in+fan_out)).
ModelParams init_params(const Architecture& arch, std::uint64_t seed);

struct TrainingConfig {
    double learning_rate = 1e-3;
    std::size_t batch_size = 32;
    std::size_t max_epochs = 200;
    double momentum = 0.9;
    // Early stop when the epoch loss improves by less than min_improvement
    // for `patience` consecutive epochs.
    double min_improvement = 1e-7;
    std::size_t patience = 10;
    // Optional loss-threshold stop: end training once the epoch loss falls to
    // fit_target_fraction * (max per-sample error at epoch 0). <= 0 disables.
    double fit_target_fraction = 0.0;
    std::uint64_t seed = 1;
    // First epoch index; lets a reloaded model resume with the same shuffle
    // sequence an uninterrupted run would have used. Exact resumption needs
    // momentum = 0 (the velocity buffer is not persisted).
    std::size_t start_epoch = 0;
};

// One input vector per row, row length = arch.input_size().
using Dataset = std::vector<std::vector<double>>;

std::vector<double> forward(const ModelParams& params, std::span<const double> x);

// Mean over the batch of the per-sample mean squared componentwise error.
double loss(const ModelParams& params, const Dataset& batch);

// Analytic gradient of `loss` with respect to every weight and bias.
// Returned layers mirror params.layers shapes.
std::vector<Layer> gradient(const ModelParams& params, const Dataset& batch);

struct TrainResult {
    ModelParams params;
    double initial_loss = 0.0;
    double max_initial_sample_error = 0.0;  // max per-sample MSE at epoch 0
};

// Deterministic SGD-with-momentum training; throws TrainingError (naming the
// epoch) if the loss stops being finite. `resume_from` continues from saved
// parameters instead of a fresh initialization.
TrainResult train(const Dataset& data, const Architecture& arch,
                  const TrainingConfig& cfg, const ModelParams* resume_from = nullptr);

// Signed componentwise reconstruction error: output - input.
std::vector<double> reconstruction_error(const ModelParams& params,
                                         std::span<const double> x);

// JSON persistence; round-trip reproduces forward outputs bit-identically.
std::string model_to_json(const ModelParams& params);
ModelParams model_from_json(const std::string& text);
void save_model(const ModelParams& params, const std::string& path);
ModelParams load_model(const std::string& path);

}  // namespace radiot

#endif  // RADIOT_AUTOENCODER_HPP
