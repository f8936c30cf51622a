// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lts/coefficient_cache.hpp"
#include "lts/coefficients.hpp"
#include "lts/error.hpp"
#include "lts/time_grid.hpp"

namespace lts {

/// A coupling between two sets.  The coupling operator of an edge depends
/// on the states of its two sets only.
struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
};

/// A system split as `D^s(y) = V^s(y^s) + sum_edges B^s(y^s, y^other)`.
///
/// - `volume(s, t, y, out)` writes `V^s` (it may depend on `t`, e.g. for
///   boundary data);
/// - `coupling(e, y_a, y_b, out_a, out_b)` writes the contributions of edge
///   `e` to both of its sets;
/// - `cfl_bound(s, y)` is the largest stable step for set `s`.
template <typename S>
concept SplitSystem = requires(const S& system, std::size_t i, double t,
                               std::span<const double> y,
                               std::span<double> out) {
  { system.num_sets() } -> std::convertible_to<std::size_t>;
  { system.set_size(i) } -> std::convertible_to<std::size_t>;
  { system.edges() } -> std::convertible_to<const std::vector<Edge>&>;
  system.volume(i, t, y, out);
  system.coupling(i, y, y, out, out);
  { system.cfl_bound(i, y) } -> std::convertible_to<double>;
};

/// `step * sum_j alpha_j derivatives[j]`, with `derivatives[0]` the most
/// recent.
template <typename Derivatives>
std::vector<double> gts_ab_step(const Derivatives& derivatives,
                                const AbCoeffs<double>& coeffs) {
  if (derivatives.size() < coeffs.order || coeffs.order == 0) {
    throw Error(ErrorKind::InsufficientHistory,
                "need " + std::to_string(coeffs.order) +
                    " derivative records, have " +
                    std::to_string(derivatives.size()));
  }
  std::vector<double> increment(derivatives[0].size(), 0.0);
  for (std::size_t j = 0; j < coeffs.order; ++j) {
    for (std::size_t i = 0; i < increment.size(); ++i) {
      increment[i] += coeffs.alpha[j] * derivatives[j][i];
    }
  }
  for (auto& value : increment) {
    value *= coeffs.step;
  }
  return increment;
}

/// Adds `step * sum_q a_q B(q)` to `increment`.  `lookup(own, other)`
/// returns a pointer to the coupling value at a window index pair, or null
/// if it is unavailable.
template <typename Lookup>
void lts_coupling_step(const PairTable& table, const double step,
                       Lookup&& lookup, std::span<double> increment) {
  for (const auto& entry : table.entries) {
    const std::vector<double>* value = lookup(entry.own, entry.other);
    if (value == nullptr) {
      throw Error(ErrorKind::MissingCouplingRecord,
                  "no coupling value at (" + std::to_string(entry.own) +
                      ", " + std::to_string(entry.other) + ")");
    }
    const double weight = step * entry.coefficient;
    for (std::size_t i = 0; i < increment.size(); ++i) {
      increment[i] += weight * (*value)[i];
    }
  }
}

/// Per-set stepping state seen by the step controller.
struct SchedulerState {
  std::size_t order = 1;
  int resolution_exponent = default_resolution_exponent;
  /// Start of each set's next step, in ticks.
  std::vector<std::int64_t> time;
  /// Size of each set's most recent step, in ticks.
  std::vector<std::int64_t> step;
  /// Number of consecutive most recent steps of that size.
  std::vector<int> equal_steps;
};

/// Largest power of two not exceeding `ticks` (at least 1).
inline std::int64_t power_of_two_floor(const double ticks) {
  if (!(ticks >= 2.0)) {
    return 1;
  }
  const double capped = std::min(ticks, 0x1p62);
  int exponent = 0;
  std::frexp(capped, &exponent);
  return std::int64_t{1} << (exponent - 1);
}

/// Next step size in ticks for a set at time `t` whose last step was
/// `current`: the largest power of two within `bound_ticks`, except that an
/// increase is by exactly a factor of two, only after `order - 1` equal
/// steps, and only when the doubled step stays aligned to its size.
inline std::int64_t next_step_size(const std::int64_t t,
                                   const std::int64_t current,
                                   const int equal_steps,
                                   const std::size_t order,
                                   const double bound_ticks) {
  std::int64_t allowed = power_of_two_floor(bound_ticks);
  if (allowed > current) {
    const bool settled = equal_steps + 1 >= static_cast<int>(order);
    return settled && t % (2 * current) == 0 ? 2 * current : current;
  }
  while (t % allowed != 0) {
    allowed /= 2;
  }
  return allowed;
}

inline std::int64_t step_controller(const SchedulerState& state,
                                    const std::size_t s,
                                    const double cfl_bound) {
  return next_step_size(state.time.at(s), state.step.at(s),
                        state.equal_steps.at(s), state.order,
                        std::ldexp(cfl_bound, -state.resolution_exponent));
}

enum class SteppingMode { Gts, Lts, LtsConstantStep };

inline const char* name(const SteppingMode mode) {
  switch (mode) {
    case SteppingMode::Gts: return "gts";
    case SteppingMode::Lts: return "lts";
    case SteppingMode::LtsConstantStep: return "lts-constant";
  }
  return "unknown";
}

struct EvolverOptions {
  std::size_t order = 4;
  SteppingMode mode = SteppingMode::Lts;
  int resolution_exponent = default_resolution_exponent;
  /// 2^-27 at the default resolution.
  std::int64_t initial_step = std::int64_t{1} << 13;
};

struct StepLogEntry {
  std::size_t set = 0;
  std::int64_t start = 0;
  std::int64_t size = 0;
};

struct EvaluationCounts {
  std::uint64_t volume = 0;
  std::uint64_t coupling = 0;
};

/// Full derivative of every set at one common time.
template <SplitSystem System>
std::vector<std::vector<double>> full_derivative(
    const System& system, const double t,
    const std::vector<std::vector<double>>& states,
    EvaluationCounts* counts = nullptr) {
  const std::size_t num_sets = system.num_sets();
  std::vector<std::vector<double>> result(num_sets);
  for (std::size_t s = 0; s < num_sets; ++s) {
    result[s].assign(system.set_size(s), 0.0);
    system.volume(s, t, states[s], result[s]);
  }
  const auto& edges = system.edges();
  for (const Edge& edge : edges) {
    std::vector<double> out_a(system.set_size(edge.a), 0.0);
    std::vector<double> out_b(system.set_size(edge.b), 0.0);
    system.coupling(static_cast<std::size_t>(&edge - edges.data()),
                    states[edge.a], states[edge.b], out_a, out_b);
    for (std::size_t i = 0; i < out_a.size(); ++i) {
      result[edge.a][i] += out_a[i];
    }
    for (std::size_t i = 0; i < out_b.size(); ++i) {
      result[edge.b][i] += out_b[i];
    }
  }
  if (counts != nullptr) {
    counts->volume += num_sets;
    counts->coupling += edges.size();
  }
  return result;
}

/// Event-ordered multistep evolution of a split system.
///
/// Each call to `advance` moves to the next union time: every set whose
/// step ends there takes its step (volume by Adams-Bashforth on its own
/// times, each coupling by the pair full-step table of that edge), then the
/// sets commit and choose their next steps.  The first `order - 1` steps
/// ramp the order up from 1 with the initial step size.
template <SplitSystem System>
class Evolver {
 public:
  struct Record {
    std::int64_t time = 0;
    std::vector<double> state;
    /// Volume derivative in LTS modes, full derivative in GTS mode.
    std::vector<double> derivative;
  };

  Evolver(const System& system, const EvolverOptions& options,
          const std::int64_t start,
          std::vector<std::vector<double>> initial_state)
      : system_(system),
        options_(options),
        sets_(system.num_sets()),
        coupling_values_(system.edges().size()),
        step_counts_(system.num_sets(), 0) {
    if (options_.order == 0) {
      throw Error(ErrorKind::InvalidArgument, "order must be positive");
    }
    if (options_.initial_step <= 0 ||
        (options_.initial_step & (options_.initial_step - 1)) != 0 ||
        start % options_.initial_step != 0) {
      throw Error(ErrorKind::InvalidArgument,
                  "initial step must be an aligned power of two in ticks");
    }
    if (initial_state.size() != sets_.size()) {
      throw Error(ErrorKind::InvalidArgument, "wrong number of set states");
    }
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      if (initial_state[s].size() != system_.set_size(s)) {
        throw Error(ErrorKind::InvalidArgument,
                    "wrong state size for set " + std::to_string(s));
      }
    }
    const auto& edges = system_.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (edges[e].a >= sets_.size() || edges[e].b >= sets_.size() ||
          edges[e].a == edges[e].b) {
        throw Error(ErrorKind::UnknownSet, "bad edge " + std::to_string(e));
      }
      sets_[edges[e].a].edges.push_back(e);
      sets_[edges[e].b].edges.push_back(e);
    }
    std::vector<std::vector<double>> derivatives;
    if (options_.mode == SteppingMode::Gts) {
      derivatives = full_derivative(system_, seconds(start), initial_state,
                                    &counts_);
    }
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      SetData& set = sets_[s];
      Record record;
      record.time = start;
      record.state = std::move(initial_state[s]);
      if (options_.mode == SteppingMode::Gts) {
        record.derivative = std::move(derivatives[s]);
      } else {
        record.derivative = volume(s, start, record.state);
      }
      set.records.push_back(std::move(record));
      set.step = options_.initial_step;
      set.last_increment.assign(system_.set_size(s), 0.0);
    }
    time_ = start;
  }

  /// Moves to the next union time no later than `end`.  Returns false,
  /// without doing anything, once every set has reached `end`.
  bool advance(const std::int64_t end) {
    bool done = true;
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      SetData& set = sets_[s];
      const std::int64_t t = set.records.back().time;
      if (t > end) {
        throw Error(ErrorKind::NonMonotonicTimes, "end is in the past");
      }
      done = done && t == end;
      while (t < end && t + set.step > end) {
        set.step /= 2;
        if (set.step == 0) {
          throw Error(ErrorKind::NonRepresentable,
                      "end time is not reachable by aligned steps");
        }
      }
    }
    if (done) {
      return false;
    }
    if (options_.mode == SteppingMode::Gts) {
      advance_gts();
    } else {
      advance_lts();
    }
    return true;
  }

  /// Advances to `end`, calling `observer(*this)` after every union time.
  template <typename Observer>
  void run(const std::int64_t end, Observer&& observer) {
    while (advance(end)) {
      observer(*this);
    }
  }
  void run(const std::int64_t end) {
    run(end, [](const Evolver&) {});
  }

  /// The latest union time reached.
  std::int64_t time() const { return time_; }
  double time_seconds() const { return seconds(time_); }
  std::int64_t set_time(const std::size_t s) const {
    return sets_.at(s).records.back().time;
  }
  /// Whether every set has an evaluation at `time()`.
  bool synchronized() const {
    return std::all_of(sets_.begin(), sets_.end(), [this](const SetData& s) {
      return s.records.back().time == time_;
    });
  }
  const std::vector<double>& state(const std::size_t s) const {
    return sets_.at(s).records.back().state;
  }
  std::vector<std::vector<double>> states() const {
    std::vector<std::vector<double>> result;
    for (const auto& set : sets_) {
      result.push_back(set.records.back().state);
    }
    return result;
  }
  /// Size of the step a set will take next, in ticks.
  std::int64_t next_step(const std::size_t s) const { return sets_.at(s).step; }
  /// The increment applied by a set's most recent step.
  const std::vector<double>& last_increment(const std::size_t s) const {
    return sets_.at(s).last_increment;
  }
  const std::deque<Record>& records(const std::size_t s) const {
    return sets_.at(s).records;
  }
  /// Global index of `records(s).front()`.
  std::size_t first_record_index(const std::size_t s) const {
    return sets_.at(s).first_index;
  }
  std::size_t retained_coupling_values() const {
    std::size_t total = 0;
    for (const auto& values : coupling_values_) {
      total += values.size();
    }
    return total;
  }

  const std::vector<std::uint64_t>& step_counts() const { return step_counts_; }
  std::uint64_t total_steps() const {
    std::uint64_t total = 0;
    for (const auto count : step_counts_) {
      total += count;
    }
    return total;
  }
  const EvaluationCounts& evaluations() const { return counts_; }
  const CoefficientCache& cache() const { return cache_; }
  const EvolverOptions& options() const { return options_; }
  const System& system() const { return system_; }

  /// Called with every step taken, in commit order.
  void set_step_logger(std::function<void(const StepLogEntry&)> logger) {
    logger_ = std::move(logger);
  }

  double seconds(const std::int64_t ticks) const {
    return std::ldexp(static_cast<double>(ticks),
                      options_.resolution_exponent);
  }

 private:
  struct SetData {
    std::deque<Record> records;
    std::size_t first_index = 0;
    /// Size of the step in progress.
    std::int64_t step = 0;
    std::int64_t previous_step = 0;
    int equal_steps = 0;
    std::vector<std::size_t> edges;
    std::vector<double> last_increment;

    std::size_t count() const { return first_index + records.size(); }
    std::size_t last_index() const { return count() - 1; }
    const Record& record(const std::size_t q) const {
      return records.at(q - first_index);
    }
  };

  struct CouplingValue {
    std::vector<double> a;
    std::vector<double> b;
  };

  std::vector<double> volume(const std::size_t s, const std::int64_t t,
                             const std::vector<double>& state) {
    std::vector<double> out(system_.set_size(s), 0.0);
    system_.volume(s, seconds(t), state, out);
    ++counts_.volume;
    return out;
  }

  std::size_t effective_order() const {
    std::size_t order = options_.order;
    for (const auto& set : sets_) {
      order = std::min(order, set.count());
    }
    return order;
  }

  double bound_ticks(const std::size_t s, const std::vector<double>& y) const {
    return std::ldexp(system_.cfl_bound(s, y), -options_.resolution_exponent);
  }

  void record_step(const std::size_t s, const std::int64_t start,
                   const std::int64_t size) {
    SetData& set = sets_[s];
    ++step_counts_[s];
    set.equal_steps = size == set.previous_step ? set.equal_steps + 1 : 1;
    set.previous_step = size;
    if (logger_) {
      logger_({s, start, size});
    }
  }

  void choose_steps(const std::vector<std::size_t>& stepped) {
    if (options_.mode == SteppingMode::Lts) {
      for (const std::size_t s : stepped) {
        SetData& set = sets_[s];
        set.step = next_step_size(set.records.back().time, set.previous_step,
                                  set.equal_steps, options_.order,
                                  bound_ticks(s, set.records.back().state));
      }
      return;
    }
    // Shared step: all sets are synchronized here.
    double bound = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      bound = std::min(bound, bound_ticks(s, sets_[s].records.back().state));
    }
    const SetData& first = sets_.front();
    const std::int64_t step =
        next_step_size(first.records.back().time, first.previous_step,
                       first.equal_steps, options_.order, bound);
    for (auto& set : sets_) {
      set.step = step;
    }
  }

  void advance_gts() {
    const std::int64_t t = sets_.front().records.back().time;
    const std::int64_t step = sets_.front().step;
    const std::size_t order = effective_order();
    std::vector<std::int64_t> times;
    const SetData& first = sets_.front();
    for (std::size_t j = order; j-- > 0;) {
      times.push_back(first.record(first.last_index() - j).time);
    }
    times.push_back(t + step);
    const auto& alpha = cache_.adams_bashforth(times);
    AbCoeffs<double> coeffs{order, alpha, seconds(step)};

    std::vector<std::vector<double>> new_states;
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      const SetData& set = sets_[s];
      std::vector<const std::vector<double>*> derivatives;
      for (std::size_t j = 0; j < order; ++j) {
        derivatives.push_back(&set.record(set.last_index() - j).derivative);
      }
      std::vector<double> increment(system_.set_size(s), 0.0);
      for (std::size_t j = 0; j < order; ++j) {
        for (std::size_t i = 0; i < increment.size(); ++i) {
          increment[i] += alpha[j] * (*derivatives[j])[i];
        }
      }
      std::vector<double> y = set.records.back().state;
      for (std::size_t i = 0; i < y.size(); ++i) {
        increment[i] *= coeffs.step;
        y[i] += increment[i];
      }
      sets_[s].last_increment = std::move(increment);
      new_states.push_back(std::move(y));
    }
    const std::int64_t t_next = t + step;
    auto derivatives =
        full_derivative(system_, seconds(t_next), new_states, &counts_);
    std::vector<std::size_t> stepped;
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      SetData& set = sets_[s];
      set.records.push_back(
          {t_next, std::move(new_states[s]), std::move(derivatives[s])});
      while (set.records.size() > options_.order) {
        set.records.pop_front();
        ++set.first_index;
      }
      record_step(s, t, step);
      stepped.push_back(s);
    }
    time_ = t_next;
    choose_steps(stepped);
  }

  const std::vector<double>& coupling_value(const std::size_t e,
                                            const std::size_t qa,
                                            const std::size_t qb,
                                            const bool want_a) {
    auto& values = coupling_values_[e];
    const auto key = std::make_pair(qa, qb);
    auto it = values.find(key);
    if (it == values.end()) {
      const Edge& edge = system_.edges()[e];
      const SetData& a = sets_[edge.a];
      const SetData& b = sets_[edge.b];
      if (qa < a.first_index || qa > a.last_index() || qb < b.first_index ||
          qb > b.last_index()) {
        throw Error(ErrorKind::MissingCouplingRecord,
                    "coupling states for edge " + std::to_string(e) +
                        " were discarded");
      }
      CouplingValue value;
      value.a.assign(system_.set_size(edge.a), 0.0);
      value.b.assign(system_.set_size(edge.b), 0.0);
      system_.coupling(e, a.record(qa).state, b.record(qb).state, value.a,
                       value.b);
      ++counts_.coupling;
      it = values.emplace(key, std::move(value)).first;
    }
    return want_a ? it->second.a : it->second.b;
  }

  std::vector<double> lts_increment(const std::size_t s,
                                    const std::int64_t t_next,
                                    const std::size_t order) {
    const SetData& set = sets_[s];
    const std::size_t m = set.last_index();
    const std::int64_t start = set.records.back().time;
    const double step = seconds(t_next - start);

    std::vector<std::int64_t> own_times;
    for (std::size_t j = order; j-- > 0;) {
      own_times.push_back(set.record(m - j).time);
    }
    own_times.push_back(t_next);

    const auto& alpha = cache_.adams_bashforth(own_times);
    std::vector<double> increment(system_.set_size(s), 0.0);
    for (std::size_t j = 0; j < order; ++j) {
      const auto& derivative = set.record(m - j).derivative;
      for (std::size_t i = 0; i < increment.size(); ++i) {
        increment[i] += alpha[j] * derivative[i];
      }
    }
    for (auto& value : increment) {
      value *= step;
    }

    std::vector<std::int64_t> other_times;
    for (const std::size_t e : set.edges) {
      const Edge& edge = system_.edges()[e];
      const bool own_is_a = edge.a == s;
      const SetData& other = sets_[own_is_a ? edge.b : edge.a];
      // Other set's window: its last `order` times at or before the step
      // start, through its last time before the step end.
      std::size_t latest = other.last_index();
      while (other.record(latest).time > start) {
        --latest;
      }
      std::size_t last = other.last_index();
      while (other.record(last).time >= t_next) {
        --last;
      }
      if (latest + 1 < order + other.first_index) {
        throw Error(ErrorKind::MissingCouplingRecord,
                    "neighbor history was discarded");
      }
      const std::size_t first = latest + 1 - order;
      other_times.clear();
      for (std::size_t q = first; q <= last; ++q) {
        other_times.push_back(other.record(q).time);
      }
      const PairTable& table = cache_.pair_step(order, own_times, other_times);
      const std::size_t own_first = m + 1 - order;
      lts_coupling_step(
          table, step,
          [&](const std::size_t own, const std::size_t o) {
            const std::size_t q_own = own_first + own;
            const std::size_t q_other = first + o;
            return &(own_is_a ? coupling_value(e, q_own, q_other, true)
                              : coupling_value(e, q_other, q_own, false));
          },
          increment);
    }
    return increment;
  }

  void advance_lts() {
    std::int64_t t_next = std::numeric_limits<std::int64_t>::max();
    for (const auto& set : sets_) {
      t_next = std::min(t_next, set.records.back().time + set.step);
    }
    const std::size_t order = effective_order();
    std::vector<std::size_t> stepped;
    std::vector<std::vector<double>> increments;
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      if (sets_[s].records.back().time + sets_[s].step == t_next) {
        stepped.push_back(s);
        increments.push_back(lts_increment(s, t_next, order));
      }
    }
    for (std::size_t i = 0; i < stepped.size(); ++i) {
      const std::size_t s = stepped[i];
      SetData& set = sets_[s];
      const std::int64_t start = set.records.back().time;
      Record record;
      record.time = t_next;
      record.state = set.records.back().state;
      for (std::size_t j = 0; j < record.state.size(); ++j) {
        record.state[j] += increments[i][j];
      }
      record.derivative = volume(s, t_next, record.state);
      set.records.push_back(std::move(record));
      set.last_increment = std::move(increments[i]);
      record_step(s, start, t_next - start);
    }
    time_ = t_next;
    choose_steps(stepped);
    prune();
  }

  // Keeps, for each set, the records any future step of it or of a
  // neighbor can reference, and the coupling values between them.
  void prune() {
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      SetData& set = sets_[s];
      std::int64_t horizon = set.records.back().time;
      for (const std::size_t e : set.edges) {
        const Edge& edge = system_.edges()[e];
        const SetData& other = sets_[edge.a == s ? edge.b : edge.a];
        horizon = std::min(horizon, other.records.back().time);
      }
      std::size_t latest = set.last_index();
      while (set.record(latest).time > horizon) {
        --latest;
      }
      const std::size_t keep =
          latest + 1 >= options_.order ? latest + 1 - options_.order : 0;
      while (set.first_index < keep) {
        set.records.pop_front();
        ++set.first_index;
      }
    }
    const auto& edges = system_.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const std::size_t keep_a = sets_[edges[e].a].first_index;
      const std::size_t keep_b = sets_[edges[e].b].first_index;
      std::erase_if(coupling_values_[e], [&](const auto& entry) {
        return entry.first.first < keep_a || entry.first.second < keep_b;
      });
    }
  }

  const System& system_;
  EvolverOptions options_;
  std::vector<SetData> sets_;
  std::vector<std::map<std::pair<std::size_t, std::size_t>, CouplingValue>>
      coupling_values_;
  std::vector<std::uint64_t> step_counts_;
  EvaluationCounts counts_;
  CoefficientCache cache_;
  std::int64_t time_ = 0;
  std::function<void(const StepLogEntry&)> logger_;
};

/// Starts an evolution and takes the `order - 1` ramp steps (orders 1, 2,
/// ..., order - 1) at the initial step size, after which every set holds
/// `order` synchronized records.
template <SplitSystem System>
Evolver<System> self_start(const System& system, const std::int64_t start,
                           std::vector<std::vector<double>> initial_state,
                           const EvolverOptions& options) {
  Evolver<System> evolver(system, options, start, std::move(initial_state));
  const std::int64_t ramp_end =
      start + static_cast<std::int64_t>(options.order - 1) *
                  options.initial_step;
  while (evolver.time() < ramp_end || !evolver.synchronized()) {
    evolver.advance(ramp_end);
  }
  return evolver;
}

/// One step of the split midpoint rule on synchronized sets, as two
/// half-step increments:
///   y1 - y0 = h (V + B)(y0)
///   y2 - y1 = -(y1 - y0) + 2 h (V + B)(y1)
/// with `h = step / 2`.
template <SplitSystem System>
std::pair<std::vector<std::vector<double>>, std::vector<std::vector<double>>>
split_rk2_step(const System& system, const double t, const double step,
               const std::vector<std::vector<double>>& state,
               EvaluationCounts* counts = nullptr) {
  if (state.size() != system.num_sets()) {
    throw Error(ErrorKind::InsufficientHistory, "missing set states");
  }
  const double h = 0.5 * step;
  auto first = full_derivative(system, t, state, counts);
  std::vector<std::vector<double>> midpoint = state;
  for (std::size_t s = 0; s < first.size(); ++s) {
    for (std::size_t i = 0; i < first[s].size(); ++i) {
      first[s][i] *= h;
      midpoint[s][i] += first[s][i];
    }
  }
  auto second = full_derivative(system, t + h, midpoint, counts);
  for (std::size_t s = 0; s < second.size(); ++s) {
    for (std::size_t i = 0; i < second[s].size(); ++i) {
      second[s][i] = -first[s][i] + 2.0 * h * second[s][i];
    }
  }
  return {std::move(first), std::move(second)};
}

}  // namespace lts
