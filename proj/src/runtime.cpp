#include "il/runtime.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace il {

const Bytes& NvStore::get(const std::string& name) const {
  auto it = slots_.find(name);
  if (it == slots_.end()) throw ContractViolation("missing NvStore slot: " + name);
  return it->second;
}

void NvStore::erase_prefix(const std::string& prefix) {
  for (auto it = slots_.lower_bound(prefix); it != slots_.end();) {
    if (it->first.compare(0, prefix.size(), prefix) != 0) break;
    it = slots_.erase(it);
  }
}

FaultInjector::FaultInjector(std::vector<double> scripted_times, double exp_rate_per_s,
                             std::uint64_t seed)
    : scripted_(std::move(scripted_times)), exp_rate_(exp_rate_per_s), rng_(seed) {
  std::sort(scripted_.begin(), scripted_.end());
}

std::optional<double> FaultInjector::next_fault_in(double t0, double t1) {
  while (next_scripted_ < scripted_.size() && scripted_[next_scripted_] < t0) {
    ++next_scripted_;
  }
  std::optional<double> best;
  if (next_scripted_ < scripted_.size() && scripted_[next_scripted_] < t1) {
    best = scripted_[next_scripted_];
  }
  if (exp_rate_ > 0.0) {
    if (exp_clock_ < t0) exp_clock_ = t0;
    std::exponential_distribution<double> exp(exp_rate_);
    if (!pending_exp_) pending_exp_ = exp_clock_ + exp(rng_);
    // Arrivals that fell while the device was off are skipped; the process
    // stays memoryless.
    while (*pending_exp_ < t0) *pending_exp_ += exp(rng_);
    if (*pending_exp_ < t1 && (!best || *pending_exp_ < *best)) {
      best = *pending_exp_;
    }
  }
  if (best) {
    // Consume whichever source produced the fault.
    if (next_scripted_ < scripted_.size() && scripted_[next_scripted_] == *best) {
      ++next_scripted_;
    } else if (pending_exp_ && *pending_exp_ == *best) {
      exp_clock_ = *best;
      pending_exp_.reset();
    }
  }
  return best;
}

const char* to_string(ExecStatus s) {
  switch (s) {
    case ExecStatus::Completed: return "completed";
    case ExecStatus::PowerFailedRestart: return "power_failed_restart";
    case ExecStatus::TraceExhausted: return "trace_exhausted";
  }
  return "?";
}

void ExecContext::advance(double dt, double drain_mj) {
  if (dt <= 0) {
    // Zero-length interval; charge the drain directly.
    if (drain_mj > 0) {
      StepResult r = step(cap, *trace, t, 1e-12, drain_mj);
      if (audit) {
        audit->harvested_mj += r.harvested_mj;
        audit->drained_mj += drain_mj;
        audit->clamp_loss_mj += r.clamp_loss_mj;
      }
      cap = r.cap;
    }
    return;
  }
  StepResult r = step(cap, *trace, t, dt, drain_mj);
  if (audit) {
    audit->harvested_mj += r.harvested_mj;
    audit->drained_mj += drain_mj;
    audit->clamp_loss_mj += r.clamp_loss_mj;
  }
  cap = r.cap;
  t += dt;
}

std::string EpisodeLog::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "t_s,action,substep,example_id,energy_before_mj,energy_after_mj,outcome,decision\n";
  for (const auto& r : records) {
    out << r.t_s << "," << to_string(r.action) << "," << r.substep << "," << r.example_id << ","
        << r.energy_before_mj << "," << r.energy_after_mj << "," << r.outcome << "," << r.decision
        << "\n";
  }
  return out.str();
}

void EpisodeLog::write_csv(const std::string& path) const {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write log file: " + path);
    out << to_csv();
  }
  std::rename(tmp.c_str(), path.c_str());
}

namespace {

const std::string kProgressPrefix = "__progress/";

}  // namespace

ExecutionOutcome execute_action(const ActionProgram& prog, NvStore& store, ExecContext& ctx,
                                EpisodeLog* log, ExampleId example_id,
                                const std::string& decision) {
  if (prog.steps.empty()) throw ContractViolation("action program has no sub-steps");

  const NvStore snapshot = store;
  const std::string progress_slot = kProgressPrefix + std::string(to_string(prog.kind));
  VolatileScratch scratch;
  ExecutionOutcome outcome;

  std::size_t completed = 0;
  store.put(progress_slot, Bytes{0});

  while (completed < prog.steps.size()) {
    const Cost& cost = ctx.costs->at(prog.kind, static_cast<int>(completed));

    if (!can_execute(ctx.cap, cost.energy_mj)) {
      auto wake = next_wakeup(ctx.cap, *ctx.trace, ctx.t, cost.energy_mj);
      if (!wake) {
        store = snapshot;
        outcome.status = ExecStatus::TraceExhausted;
        return outcome;
      }
      if (*wake > ctx.t) ctx.advance(*wake - ctx.t, 0.0);
      scratch.clear();  // volatile state does not survive a sleep
      if (log) {
        log->records.push_back({ctx.t, prog.kind, static_cast<int>(completed), example_id,
                                stored_energy(ctx.cap), stored_energy(ctx.cap), "sleep", decision});
      }
    }

    const double dur_s = cost.duration_ms / 1000.0;
    const double e_before = stored_energy(ctx.cap);

    if (ctx.faults) {
      if (auto fault = ctx.faults->next_fault_in(ctx.t, ctx.t + dur_s)) {
        // Power failed mid-sub-step: charge the partial drain, then discard
        // every delta of this action attempt.
        double frac = dur_s > 0 ? (*fault - ctx.t) / dur_s : 0.0;
        double elapsed = *fault - ctx.t;
        double partial = cost.energy_mj * frac;
        outcome.energy_used_mj += partial;
        outcome.time_used_ms += elapsed * 1000.0;
        ctx.advance(elapsed, partial);
        store = snapshot;
        if (log) {
          log->records.push_back({ctx.t, prog.kind, static_cast<int>(completed), example_id,
                                  e_before, stored_energy(ctx.cap), "fault", decision});
        }
        outcome.status = ExecStatus::PowerFailedRestart;
        return outcome;
      }
    }

    prog.steps[completed].fn(store, scratch);
    ctx.advance(dur_s, cost.energy_mj);
    outcome.energy_used_mj += cost.energy_mj;
    outcome.time_used_ms += cost.duration_ms;
    ++completed;
    store.put(progress_slot, Bytes{static_cast<std::uint8_t>(completed)});
    if (log) {
      log->records.push_back({ctx.t, prog.kind, static_cast<int>(completed) - 1, example_id,
                              e_before, stored_energy(ctx.cap), "ok", decision});
    }
  }

  store.erase(progress_slot);
  outcome.status = ExecStatus::Completed;
  return outcome;
}

}  // namespace il
