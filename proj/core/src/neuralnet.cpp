#include "ghn/neuralnet.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "ghn/errors.hpp"
#include "ghn/rng.hpp"

namespace ghn {

namespace {

constexpr double kLogClamp = 1e-12;

void dense_forward(const Dense& d, std::span<const double> x,
                   std::vector<double>& y) {
  y.assign(d.out, 0.0);
  for (size_t i = 0; i < d.out; ++i) {
    const double* row = d.w.data() + i * d.in;
    double acc = d.b[i];
    for (size_t j = 0; j < d.in; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

void softmax_inplace(std::vector<double>& z) {
  double mx = *std::max_element(z.begin(), z.end());
  double sum = 0;
  for (double& v : z) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Trunk activations for one sample, kept for the backward pass.
struct TrunkPass {
  std::vector<std::vector<double>> pre;   // z per hidden layer
  std::vector<std::vector<double>> post;  // relu(z)
};

void trunk_forward(const Mlp& net, std::span<const double> x, TrunkPass& tp) {
  tp.pre.resize(net.hidden.size());
  tp.post.resize(net.hidden.size());
  std::span<const double> cur = x;
  for (size_t l = 0; l < net.hidden.size(); ++l) {
    dense_forward(net.hidden[l], cur, tp.pre[l]);
    tp.post[l] = tp.pre[l];
    for (double& v : tp.post[l]) v = std::max(0.0, v);
    cur = tp.post[l];
  }
}

struct Gradients {
  std::vector<Dense> hidden;
  std::vector<Dense> heads;

  static Gradients zeros_like(const Mlp& net) {
    Gradients g;
    auto zero = [](const Dense& d) {
      Dense z;
      z.in = d.in;
      z.out = d.out;
      z.w.assign(d.w.size(), 0.0);
      z.b.assign(d.b.size(), 0.0);
      return z;
    };
    for (const auto& d : net.hidden) g.hidden.push_back(zero(d));
    for (const auto& d : net.heads) g.heads.push_back(zero(d));
    return g;
  }
};

// dz = gradient at a head's pre-activation; accumulates dW/db and the
// gradient flowing into the trunk output.
void head_backward(const Dense& head, std::span<const double> trunk_out,
                   std::span<const double> dz, Dense& grad,
                   std::vector<double>& dtrunk) {
  for (size_t i = 0; i < head.out; ++i) {
    double g = dz[i];
    if (g == 0.0) continue;
    double* wrow = grad.w.data() + i * head.in;
    const double* row = head.w.data() + i * head.in;
    for (size_t j = 0; j < head.in; ++j) {
      wrow[j] += g * trunk_out[j];
      dtrunk[j] += g * row[j];
    }
    grad.b[i] += g;
  }
}

void trunk_backward(const Mlp& net, std::span<const double> input,
                    const TrunkPass& tp, std::vector<double> dtop,
                    Gradients& grads) {
  for (size_t l = net.hidden.size(); l-- > 0;) {
    // ReLU gate.
    for (size_t i = 0; i < dtop.size(); ++i)
      if (tp.pre[l][i] <= 0.0) dtop[i] = 0.0;
    std::span<const double> below =
        l == 0 ? input : std::span<const double>(tp.post[l - 1]);
    const Dense& d = net.hidden[l];
    Dense& g = grads.hidden[l];
    std::vector<double> dbelow(d.in, 0.0);
    for (size_t i = 0; i < d.out; ++i) {
      double gz = dtop[i];
      g.b[i] += gz;
      if (gz == 0.0) continue;
      double* wrow = g.w.data() + i * d.in;
      const double* row = d.w.data() + i * d.in;
      for (size_t j = 0; j < d.in; ++j) {
        wrow[j] += gz * below[j];
        dbelow[j] += gz * row[j];
      }
    }
    dtop = std::move(dbelow);
  }
}

struct SampleEval {
  NetworkOutput out;
  Losses losses;
};

// Forward + loss + gradient accumulation for one sample. Gradients are
// scaled by `weight` (1/batch_size for batch means).
SampleEval backprop_sample(const NetworkModel& model,
                           const TrainingSample& sample, double weight,
                           Gradients* policy_grads, Gradients* length_grads) {
  const Vocabulary& v = *model.vocab;
  const size_t n_actions = v.actions.size();
  const size_t n_p1 = v.unary_preds.size();
  const size_t n_slots = v.max_params;
  std::span<const double> x(sample.features);

  SampleEval ev;

  // Policy net.
  TrunkPass ptp;
  trunk_forward(model.policy, x, ptp);
  std::span<const double> ptop =
      model.policy.hidden.empty() ? x : std::span<const double>(ptp.post.back());
  ev.out.action_probs.clear();
  dense_forward(model.policy.heads[0], ptop, ev.out.action_probs);
  softmax_inplace(ev.out.action_probs);
  ev.out.param_role_probs.resize(n_slots);
  for (size_t s = 0; s < n_slots; ++s) {
    dense_forward(model.policy.heads[1 + s], ptop, ev.out.param_role_probs[s]);
    for (double& z : ev.out.param_role_probs[s]) z = sigmoid(z);
  }

  // Length net.
  TrunkPass ltp;
  trunk_forward(model.length, x, ltp);
  std::span<const double> ltop =
      model.length.hidden.empty() ? x : std::span<const double>(ltp.post.back());
  std::vector<double> len_z;
  dense_forward(model.length.heads[0], ltop, len_z);
  ev.out.plan_length = std::max(0.0, len_z[0]);

  ev.losses = loss(ev.out, sample.target);

  if (policy_grads) {
    // Softmax + CCE: dz = p - onehot.
    std::vector<double> dz_a = ev.out.action_probs;
    dz_a[sample.target.action_index] -= 1.0;
    for (double& g : dz_a) g *= weight;
    std::vector<double> dtrunk(model.policy.heads[0].in, 0.0);
    head_backward(model.policy.heads[0], ptop, dz_a, policy_grads->heads[0],
                  dtrunk);
    // Sigmoid + BCE averaged over all units: dz = (p - t) / units.
    const double unit_scale = weight / double(n_slots * n_p1);
    for (size_t s = 0; s < n_slots; ++s) {
      std::vector<double> dz(n_p1);
      for (size_t u = 0; u < n_p1; ++u)
        dz[u] = (ev.out.param_role_probs[s][u] -
                 sample.target.param_roles[s * n_p1 + u]) *
                unit_scale;
      head_backward(model.policy.heads[1 + s], ptop, dz,
                    policy_grads->heads[1 + s], dtrunk);
    }
    trunk_backward(model.policy, x, ptp, std::move(dtrunk), *policy_grads);
  }

  if (length_grads) {
    // ReLU + MAE: d|y - t|/dz, zero on the inactive side.
    double diff = ev.out.plan_length - sample.target.plan_length;
    double dy = diff > 0 ? 1.0 : diff < 0 ? -1.0 : 0.0;
    double dz = len_z[0] > 0.0 ? dy * weight : 0.0;
    std::vector<double> dzv{dz};
    std::vector<double> dtrunk(model.length.heads[0].in, 0.0);
    head_backward(model.length.heads[0], ltop, dzv, length_grads->heads[0],
                  dtrunk);
    trunk_backward(model.length, x, ltp, std::move(dtrunk), *length_grads);
  }
  return ev;
}

struct RmsState {
  std::vector<Dense> hidden;
  std::vector<Dense> heads;
};

void rmsprop_update(Mlp& net, const Gradients& g, RmsState& st,
                    const TrainConfig& cfg) {
  auto update = [&](std::vector<double>& w, const std::vector<double>& gw,
                    std::vector<double>& acc) {
    for (size_t i = 0; i < w.size(); ++i) {
      acc[i] = cfg.rmsprop_decay * acc[i] +
               (1.0 - cfg.rmsprop_decay) * gw[i] * gw[i];
      w[i] -= cfg.learning_rate * gw[i] /
              std::sqrt(acc[i] + cfg.rmsprop_epsilon);
    }
  };
  for (size_t l = 0; l < net.hidden.size(); ++l) {
    update(net.hidden[l].w, g.hidden[l].w, st.hidden[l].w);
    update(net.hidden[l].b, g.hidden[l].b, st.hidden[l].b);
  }
  for (size_t l = 0; l < net.heads.size(); ++l) {
    update(net.heads[l].w, g.heads[l].w, st.heads[l].w);
    update(net.heads[l].b, g.heads[l].b, st.heads[l].b);
  }
}

Dense init_dense(size_t in, size_t out, Rng& rng) {
  Dense d;
  d.in = in;
  d.out = out;
  d.w.resize(in * out);
  d.b.assign(out, 0.0);
  double limit = std::sqrt(6.0 / double(in + out));
  for (double& w : d.w) w = rng.uniform_double(-limit, limit);
  return d;
}

std::vector<double*> tensor_ptrs(Mlp& net) {
  std::vector<double*> out;
  for (auto& d : net.hidden) {
    out.push_back(d.w.data());
    out.push_back(d.b.data());
  }
  for (auto& d : net.heads) {
    out.push_back(d.w.data());
    out.push_back(d.b.data());
  }
  return out;
}

std::vector<std::pair<const double*, size_t>> tensor_views(const Mlp& net) {
  std::vector<std::pair<const double*, size_t>> out;
  for (const auto& d : net.hidden) {
    out.emplace_back(d.w.data(), d.w.size());
    out.emplace_back(d.b.data(), d.b.size());
  }
  for (const auto& d : net.heads) {
    out.emplace_back(d.w.data(), d.w.size());
    out.emplace_back(d.b.data(), d.b.size());
  }
  return out;
}

}  // namespace

NetworkModel init_network(std::shared_ptr<const Vocabulary> vocab,
                          const TrainConfig& config) {
  NetworkModel m;
  m.vocab = std::move(vocab);
  m.config = config;
  m.meta.seed = config.seed;
  Rng rng(config.seed);

  const size_t input = m.vocab->flat_size();
  const size_t width = 32;
  const int layers = config.trunk_blocks * 2;

  auto build_trunk = [&](Mlp& net) {
    size_t in = input;
    for (int l = 0; l < layers; ++l) {
      net.hidden.push_back(init_dense(in, width, rng));
      in = width;
    }
  };
  build_trunk(m.policy);
  m.policy.heads.push_back(init_dense(width, m.vocab->actions.size(), rng));
  for (size_t s = 0; s < m.vocab->max_params; ++s)
    m.policy.heads.push_back(
        init_dense(width, m.vocab->unary_preds.size(), rng));
  build_trunk(m.length);
  m.length.heads.push_back(init_dense(width, 1, rng));
  return m;
}

NetworkOutput forward_flat(const NetworkModel& model,
                           std::span<const double> flat) {
  const size_t want = model.policy.hidden.empty()
                          ? model.policy.heads.front().in
                          : model.policy.hidden.front().in;
  if (flat.size() != want)
    throw DimensionMismatch("feature length " + std::to_string(flat.size()) +
                            " does not match model input " +
                            std::to_string(want));
  TrainingSample tmp;
  tmp.features.assign(flat.begin(), flat.end());
  tmp.target.action_index = 0;
  tmp.target.param_roles.assign(
      model.vocab->max_params * model.vocab->unary_preds.size(), 0.0);
  tmp.target.plan_length = 0;
  return backprop_sample(model, tmp, 1.0, nullptr, nullptr).out;
}

NetworkOutput forward(const NetworkModel& model, const FeatureVector& f) {
  return forward_flat(model, f.flat);
}

Losses loss(const NetworkOutput& out, const Target& target) {
  Losses l;
  l.cce = -std::log(std::max(out.action_probs[target.action_index], kLogClamp));
  const size_t slots = out.param_role_probs.size();
  const size_t units = slots == 0 ? 0 : slots * out.param_role_probs[0].size();
  double bce = 0;
  for (size_t s = 0; s < slots; ++s) {
    const auto& probs = out.param_role_probs[s];
    for (size_t u = 0; u < probs.size(); ++u) {
      double t = target.param_roles[s * probs.size() + u];
      bce -= t * std::log(std::max(probs[u], kLogClamp)) +
             (1.0 - t) * std::log(std::max(1.0 - probs[u], kLogClamp));
    }
  }
  l.bce = units == 0 ? 0.0 : bce / double(units);
  l.mae = std::abs(out.plan_length - target.plan_length);
  return l;
}

TrainingReport train(NetworkModel& model, std::span<const TrainingSample> data,
                     const TrainConfig& config) {
  if (data.empty()) throw EmptyDataset("training needs at least one sample");
  model.config = config;
  model.meta.seed = config.seed;

  Rng rng(config.seed);
  std::vector<size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);  // fixed split before any epoch
  size_t n_val = size_t(double(data.size()) * config.validation_fraction);
  std::vector<size_t> val_idx(order.begin(), order.begin() + n_val);
  std::vector<size_t> train_idx(order.begin() + n_val, order.end());
  if (train_idx.empty())
    throw EmptyDataset("validation split leaves no training samples");

  RmsState pstate, lstate;
  auto zero_state = [](const Mlp& net, RmsState& st) {
    Gradients z = Gradients::zeros_like(net);
    st.hidden = std::move(z.hidden);
    st.heads = std::move(z.heads);
  };
  zero_state(model.policy, pstate);
  zero_state(model.length, lstate);

  TrainingReport report;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(train_idx);
    EpochStats stats;
    size_t batch_begin = 0;
    while (batch_begin < train_idx.size()) {
      size_t batch_end = std::min(batch_begin + size_t(config.batch_size),
                                  train_idx.size());
      double weight = 1.0 / double(batch_end - batch_begin);
      Gradients pg = Gradients::zeros_like(model.policy);
      Gradients lg = Gradients::zeros_like(model.length);
      for (size_t k = batch_begin; k < batch_end; ++k) {
        SampleEval ev =
            backprop_sample(model, data[train_idx[k]], weight, &pg, &lg);
        stats.cce += ev.losses.cce;
        stats.bce += ev.losses.bce;
        stats.mae += ev.losses.mae;
      }
      rmsprop_update(model.policy, pg, pstate, config);
      rmsprop_update(model.length, lg, lstate, config);
      batch_begin = batch_end;
    }
    stats.cce /= double(train_idx.size());
    stats.bce /= double(train_idx.size());
    stats.mae /= double(train_idx.size());
    report.train.push_back(stats);

    if (!val_idx.empty()) {
      EpochStats vs;
      for (size_t k : val_idx) {
        SampleEval ev =
            backprop_sample(model, data[k], 1.0, nullptr, nullptr);
        vs.cce += ev.losses.cce;
        vs.bce += ev.losses.bce;
        vs.mae += ev.losses.mae;
      }
      vs.cce /= double(val_idx.size());
      vs.bce /= double(val_idx.size());
      vs.mae /= double(val_idx.size());
      report.validation.push_back(vs);
    }
  }
  model.meta.epochs_trained = config.epochs;
  model.meta.loss_history = report.train;
  return report;
}

double grad_check(const NetworkModel& model, const TrainingSample& sample,
                  int probes, uint64_t seed, double corrupt_scale) {
  NetworkModel work = model;  // perturbed in place
  Gradients pg = Gradients::zeros_like(work.policy);
  Gradients lg = Gradients::zeros_like(work.length);
  backprop_sample(work, sample, 1.0, &pg, &lg);

  auto loss_now = [&](bool policy) {
    SampleEval ev = backprop_sample(work, sample, 1.0, nullptr, nullptr);
    return policy ? ev.losses.policy_total() : ev.losses.mae;
  };

  Rng rng(seed);
  const double h = 1e-5;
  double max_err = 0.0;

  auto probe_tensors = [&](Mlp& net, const Gradients& grads, bool policy) {
    std::vector<double*> params = tensor_ptrs(net);
    std::vector<const std::vector<double>*> gvecs;
    for (const auto& d : grads.hidden) gvecs.insert(gvecs.end(), {&d.w, &d.b});
    for (const auto& d : grads.heads) gvecs.insert(gvecs.end(), {&d.w, &d.b});

    for (size_t t = 0; t < params.size(); ++t) {
      size_t size = gvecs[t]->size();
      for (int k = 0; k < probes; ++k) {
        size_t idx = size_t(rng.uniform(size));
        double orig = params[t][idx];
        params[t][idx] = orig + h;
        double lp = loss_now(policy);
        params[t][idx] = orig - h;
        double lm = loss_now(policy);
        params[t][idx] = orig;
        double numeric = (lp - lm) / (2 * h);
        double analytic = (*gvecs[t])[idx] * corrupt_scale;
        double denom = std::abs(numeric) + std::abs(analytic);
        if (denom < 1e-10) continue;  // both zero: error defined as 0
        max_err = std::max(max_err, std::abs(numeric - analytic) / denom);
      }
    }
  };
  probe_tensors(work.policy, pg, true);
  probe_tensors(work.length, lg, false);
  return max_err;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'G', 'H', 'N', 'M'};
constexpr uint32_t kFormatVersion = 1;

nlohmann::json shapes_json(const Mlp& net) {
  nlohmann::json j;
  for (const auto& d : net.hidden) j["hidden"].push_back({d.in, d.out});
  for (const auto& d : net.heads) j["heads"].push_back({d.in, d.out});
  return j;
}

Mlp mlp_from_shapes(const nlohmann::json& j) {
  Mlp net;
  for (const auto& s : j.value("hidden", nlohmann::json::array())) {
    Dense d;
    d.in = s[0];
    d.out = s[1];
    d.w.assign(d.in * d.out, 0.0);
    d.b.assign(d.out, 0.0);
    net.hidden.push_back(std::move(d));
  }
  for (const auto& s : j.value("heads", nlohmann::json::array())) {
    Dense d;
    d.in = s[0];
    d.out = s[1];
    d.w.assign(d.in * d.out, 0.0);
    d.b.assign(d.out, 0.0);
    net.heads.push_back(std::move(d));
  }
  return net;
}

nlohmann::json config_json(const TrainConfig& c) {
  return nlohmann::json{{"learning_rate", c.learning_rate},
                        {"rmsprop_epsilon", c.rmsprop_epsilon},
                        {"rmsprop_decay", c.rmsprop_decay},
                        {"epochs", c.epochs},
                        {"batch_size", c.batch_size},
                        {"seed", c.seed},
                        {"validation_fraction", c.validation_fraction},
                        {"trunk_blocks", c.trunk_blocks}};
}

TrainConfig config_from_json(const nlohmann::json& j) {
  TrainConfig c;
  j.at("learning_rate").get_to(c.learning_rate);
  j.at("rmsprop_epsilon").get_to(c.rmsprop_epsilon);
  j.at("rmsprop_decay").get_to(c.rmsprop_decay);
  j.at("epochs").get_to(c.epochs);
  j.at("batch_size").get_to(c.batch_size);
  j.at("seed").get_to(c.seed);
  j.at("validation_fraction").get_to(c.validation_fraction);
  j.at("trunk_blocks").get_to(c.trunk_blocks);
  return c;
}

void append_raw(std::string& out, const double* data, size_t n) {
  size_t at = out.size();
  out.resize(at + n * sizeof(double));
  std::memcpy(out.data() + at, data, n * sizeof(double));
}

}  // namespace

std::string serialize_model(const NetworkModel& model) {
  nlohmann::json header;
  header["format_version"] = kFormatVersion;
  header["vocab"] = nlohmann::json::parse(model.vocab->to_json());
  header["config"] = config_json(model.config);
  header["meta"]["seed"] = model.meta.seed;
  header["meta"]["epochs_trained"] = model.meta.epochs_trained;
  for (const auto& e : model.meta.loss_history)
    header["meta"]["loss_history"].push_back({e.cce, e.bce, e.mae});
  header["policy"] = shapes_json(model.policy);
  header["length"] = shapes_json(model.length);
  std::string hs = header.dump();

  std::string out;
  out.append(kMagic, 4);
  uint32_t ver = kFormatVersion;
  out.append(reinterpret_cast<const char*>(&ver), 4);
  uint64_t hl = hs.size();
  out.append(reinterpret_cast<const char*>(&hl), 8);
  out += hs;
  for (const auto& [ptr, n] : tensor_views(model.policy)) append_raw(out, ptr, n);
  for (const auto& [ptr, n] : tensor_views(model.length)) append_raw(out, ptr, n);
  return out;
}

NetworkModel deserialize_model(std::string_view bytes) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw CorruptModel("not a model file (bad magic)");
  uint32_t ver;
  std::memcpy(&ver, bytes.data() + 4, 4);
  if (ver != kFormatVersion)
    throw VersionMismatch("model format version " + std::to_string(ver) +
                          " unsupported (expected " +
                          std::to_string(kFormatVersion) + ")");
  uint64_t hl;
  std::memcpy(&hl, bytes.data() + 8, 8);
  if (bytes.size() < 16 + hl) throw CorruptModel("truncated model header");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(16, hl));
  } catch (const nlohmann::json::exception&) {
    throw CorruptModel("unreadable model header");
  }

  NetworkModel m;
  try {
    m.vocab = std::make_shared<const Vocabulary>(
        Vocabulary::from_json(header.at("vocab").dump()));
    m.config = config_from_json(header.at("config"));
    m.meta.seed = header.at("meta").at("seed");
    m.meta.epochs_trained = header.at("meta").at("epochs_trained");
    for (const auto& e :
         header.at("meta").value("loss_history", nlohmann::json::array()))
      m.meta.loss_history.push_back({e[0], e[1], e[2]});
    m.policy = mlp_from_shapes(header.at("policy"));
    m.length = mlp_from_shapes(header.at("length"));
  } catch (const nlohmann::json::exception&) {
    throw CorruptModel("model header is missing required fields");
  }

  size_t need = 0;
  for (const auto& [ptr, n] : tensor_views(m.policy)) need += n;
  for (const auto& [ptr, n] : tensor_views(m.length)) need += n;
  if (bytes.size() != 16 + hl + need * sizeof(double))
    throw CorruptModel("model weight payload has wrong size");

  const char* cur = bytes.data() + 16 + hl;
  auto read_into = [&cur](Mlp& net) {
    auto fill = [&cur](std::vector<double>& v) {
      std::memcpy(v.data(), cur, v.size() * sizeof(double));
      cur += v.size() * sizeof(double);
    };
    for (auto& d : net.hidden) {
      fill(d.w);
      fill(d.b);
    }
    for (auto& d : net.heads) {
      fill(d.w);
      fill(d.b);
    }
  };
  read_into(m.policy);
  read_into(m.length);
  return m;
}

void save_model(const NetworkModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write model file " + path.string());
  std::string bytes = serialize_model(model);
  out.write(bytes.data(), std::streamsize(bytes.size()));
}

NetworkModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read model file " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return deserialize_model(bytes);
}

}  // namespace ghn
