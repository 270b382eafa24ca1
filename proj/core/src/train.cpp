// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include "topoforge/dggm/train.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "topoforge/dggm/sequence.hpp"
#include "topoforge/error.hpp"
#include "topoforge/parallel.hpp"
#include "topoforge/random.hpp"

namespace topoforge::dggm {

void TrainConfig::Validate() const {
  if (epochs == 0) throw ValidationError("epochs must be positive");
  if (batch_size == 0) throw ValidationError("batch_size must be positive");
  if (!(lr > 0.0)) throw ValidationError("lr must be positive");
  if (!(lr_decay > 0.0 && lr_decay <= 1.0)) {
    throw ValidationError("lr_decay must lie in (0, 1]");
  }
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ValidationError("Adam betas must lie in [0, 1)");
  }
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
}

double LearningRateAt(const TrainConfig& cfg, std::size_t epoch) {
  double lr = cfg.lr;
  for (std::size_t d : cfg.decay_epochs) {
    if (d < epoch) lr *= cfg.lr_decay;
  }
  return lr;
}

namespace {

struct Sample {
  EdgeSequence seq;
  std::size_t slots = 0;
};

}  // namespace

TrainResult Train(std::span<const Graph> corpus, const TrainConfig& cfg,
                  const ModelDims& dims, const ValidationFn& validate,
                  const EpochFn& on_epoch) {
  dims.Validate();
  ModelParams start = ModelParams::Initialized(dims, DeriveSeed(cfg.rng_seed, 0));
  AdamState adam(start.size());
  return Train(corpus, cfg, std::move(start), std::move(adam), validate,
               on_epoch);
}

TrainResult Train(std::span<const Graph> corpus, const TrainConfig& cfg,
                  ModelParams start, AdamState adam,
                  const ValidationFn& validate, const EpochFn& on_epoch) {
  cfg.Validate();
  if (corpus.empty()) throw ValidationError("training corpus is empty");
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!IsConnected(corpus[i])) {
      throw ValidationError("training graph " + std::to_string(i) +
                            " is not connected");
    }
  }
  if (adam.m.size() != start.size()) adam = AdamState(start.size());

  const ModelDims dims = start.dims();
  TrainResult result{std::move(start), std::nullopt, 0, {}, std::move(adam)};
  ModelParams& params = result.params;
  Gradients grads(dims);
  AdamConfig opt{cfg.lr, cfg.beta1, cfg.beta2, cfg.eps, cfg.grad_clip};
  double best_score = std::numeric_limits<double>::infinity();

  Rng batch_rng = MakeRng(cfg.rng_seed, 1);
  const std::uint64_t order_seed = DeriveSeed(cfg.rng_seed, 2);
  const std::size_t batches =
      (corpus.size() + cfg.batch_size - 1) / cfg.batch_size;
  std::uint64_t visit = 0;

  std::vector<Sample> samples(cfg.batch_size);
  std::vector<Gradients> sample_grads(cfg.batch_size, Gradients(dims));
  std::vector<double> sample_loss(cfg.batch_size);

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    opt.lr = LearningRateAt(cfg, epoch);
    double loss_sum = 0.0;
    for (std::size_t b = 0; b < batches; ++b) {
      std::size_t total_slots = 0;
      for (Sample& s : samples) {
        const Graph& g = corpus[UniformIndex(batch_rng, corpus.size())];
        Rng order_rng = MakeRng(order_seed, visit++);
        const auto order = BfsOrder(g, order_rng);
        s.seq = ToSequence(g, order, dims.m_dim);
        if (cfg.append_eos) s.seq = WithEosRow(s.seq);
        s.slots = s.seq.slot_count();
        total_slots += s.slots;
      }
      if (total_slots == 0) continue;
      const double weight = 1.0 / static_cast<double>(total_slots);
      ParallelFor(samples.size(), [&](std::size_t i) {
        sample_grads[i].SetZero();
        const ForwardResult fwd = Forward(params, samples[i].seq);
        sample_loss[i] = BceLoss(fwd.probs, samples[i].seq) *
                         static_cast<double>(samples[i].slots);
        AccumulateGradients(params, *fwd.cache, samples[i].seq, weight,
                            sample_grads[i]);
      });
      grads.SetZero();
      auto acc = grads.values();
      double batch_loss = 0.0;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        batch_loss += sample_loss[i];
        const auto gi = sample_grads[i].values();
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += gi[j];
      }
      batch_loss *= weight;
      if (!std::isfinite(batch_loss)) {
        std::ostringstream msg;
        msg << "non-finite loss at epoch " << epoch << ", batch " << b + 1;
        throw NumericalError(msg.str());
      }
      AdamStep(params, grads, result.adam, opt);
      if (!params.AllFinite()) {
        throw NumericalError("non-finite parameters after epoch " +
                             std::to_string(epoch));
      }
      loss_sum += batch_loss;
    }

    EpochRecord rec{epoch, loss_sum / static_cast<double>(batches), opt.lr,
                    std::nullopt};
    if (validate && cfg.val_interval > 0 &&
        (epoch % cfg.val_interval == 0 || epoch == cfg.epochs)) {
      const double score = validate(params);
      rec.val_mmd_degree = score;
      if (score < best_score) {
        best_score = score;
        result.best = params;
        result.best_epoch = epoch;
      }
    }
    result.history.push_back(rec);
    if (on_epoch) on_epoch(rec);
  }
  return result;
}

void WriteHistoryCsv(std::ostream& out, std::span<const EpochRecord> history) {
  out << "epoch,mean_loss,lr,val_mmd_degree\n";
  out << std::setprecision(17);
  for (const EpochRecord& r : history) {
    out << r.epoch << ',' << r.mean_loss << ',' << r.lr << ',';
    if (r.val_mmd_degree) out << *r.val_mmd_degree;
    out << '\n';
  }
}

}  // namespace topoforge::dggm
