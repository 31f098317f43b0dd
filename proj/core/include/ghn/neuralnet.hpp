#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ghn/encoding.hpp"

namespace ghn {

struct TrainConfig {
  double learning_rate = 0.001;
  double rmsprop_epsilon = 1e-3;  // added inside the square root
  double rmsprop_decay = 0.9;
  int epochs = 100;
  int batch_size = 32;
  uint64_t seed = 0;
  double validation_fraction = 0.0;  // in [0, 1)
  int trunk_blocks = 2;  // Dense-32 blocks (two ReLU layers of 32 each)

  bool operator==(const TrainConfig&) const = default;
};

struct Dense {
  size_t in = 0, out = 0;
  std::vector<double> w;  // out x in, row-major
  std::vector<double> b;

  bool operator==(const Dense&) const = default;
};

/// ReLU trunk plus linear heads; head activations are applied by the
/// forward pass (softmax / sigmoid / ReLU depending on the head).
struct Mlp {
  std::vector<Dense> hidden;
  std::vector<Dense> heads;

  bool operator==(const Mlp&) const = default;
};

struct EpochStats {
  double cce = 0, bce = 0, mae = 0;
};

struct ModelMeta {
  uint64_t seed = 0;
  int epochs_trained = 0;
  std::vector<EpochStats> loss_history;
};

/// The two-network model: a policy net with a softmax action head and
/// max_params sigmoid role heads, and an independent length net with a
/// single ReLU output. The vocabulary fixes every dimension.
struct NetworkModel {
  std::shared_ptr<const Vocabulary> vocab;
  TrainConfig config;
  Mlp policy;
  Mlp length;
  ModelMeta meta;
};

struct NetworkOutput {
  std::vector<double> action_probs;                   // sums to 1
  std::vector<std::vector<double>> param_role_probs;  // max_params x |P1|
  double plan_length = 0;                             // >= 0
};

struct TrainingSample {
  std::vector<double> features;  // flat encoding
  Target target;
};

struct Losses {
  double cce = 0, bce = 0, mae = 0;
  double policy_total() const { return cce + bce; }
};

struct TrainingReport {
  std::vector<EpochStats> train;       // one entry per epoch
  std::vector<EpochStats> validation;  // empty without a split
};

/// Fresh model with uniform fan-in/fan-out weights (seeded) and zero biases.
NetworkModel init_network(std::shared_ptr<const Vocabulary> vocab,
                          const TrainConfig& config);

/// Pure forward pass. Throws DimensionMismatch when the flat feature length
/// does not match the model input.
NetworkOutput forward(const NetworkModel& model, const FeatureVector& f);
NetworkOutput forward_flat(const NetworkModel& model,
                           std::span<const double> flat);

/// Categorical cross entropy on the action head, binary cross entropy
/// averaged over all max_params * |P1| role units, mean absolute error on
/// the plan length. Log arguments are clamped at 1e-12.
Losses loss(const NetworkOutput& out, const Target& target);

/// RMSProp mini-batch training; both networks advance in one pass but their
/// parameters and optimizer state are fully independent. Deterministic for
/// a fixed seed. Throws EmptyDataset.
TrainingReport train(NetworkModel& model, std::span<const TrainingSample> data,
                     const TrainConfig& config);

/// Compares analytic gradients against central finite differences (step
/// 1e-5) on `probes` random weights per tensor. Returns the maximum
/// relative error. corrupt_scale != 1 multiplies the analytic gradients, a
/// test fixture for verifying the check itself.
double grad_check(const NetworkModel& model, const TrainingSample& sample,
                  int probes, uint64_t seed, double corrupt_scale = 1.0);

// Model container: "GHNM" magic, format version, JSON header (vocabulary,
// config, metadata, shapes), then raw little-endian float64 weight arrays.
std::string serialize_model(const NetworkModel& model);
NetworkModel deserialize_model(std::string_view bytes);
void save_model(const NetworkModel& model, const std::filesystem::path& path);
NetworkModel load_model(const std::filesystem::path& path);

}  // namespace ghn
