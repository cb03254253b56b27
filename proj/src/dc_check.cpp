#include "cstnu/dc_check.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <thread>
#include <unordered_set>

#include "cstnu/error.hpp"
#include "cstnu/propagation.hpp"

namespace cstnu {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Controllable: return "controllable";
    case Verdict::NotControllable: return "not-controllable";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

std::vector<Rational> sample_durations(const ContingentLink& link, std::size_t samples) {
  if (samples == 0) throw PreconditionError("at least one duration sample is required");
  if (samples == 1) return {Rational((link.lower + link.upper) / 2)};
  std::vector<Rational> out;
  const Rational span = link.upper - link.lower;
  for (std::size_t i = 0; i < samples; ++i) {
    Rational d = link.lower + span * Rational(static_cast<long>(i), static_cast<long>(samples - 1));
    d.canonicalize();
    out.push_back(d);
  }
  return out;
}

namespace {

void check_caps(const Network& network, const DcOptions& options) {
  if (network.letters().size() > options.max_letters) {
    throw CapExceeded(std::to_string(network.letters().size()) + " letters exceed the cap of " +
                      std::to_string(options.max_letters));
  }
  if (network.links().size() > options.max_links) {
    throw CapExceeded(std::to_string(network.links().size()) + " links exceed the cap of " +
                      std::to_string(options.max_links));
  }
}

}  // namespace

std::vector<Drama> sample_dramas(const Network& network, const DcOptions& options) {
  check_caps(network, options);
  std::vector<std::vector<Rational>> grids;
  std::size_t count = std::size_t{1} << network.letters().size();
  for (const auto& l : network.links()) {
    grids.push_back(sample_durations(l, options.duration_samples));
    count *= grids.back().size();
    if (count > options.max_dramas) {
      throw CapExceeded("more than " + std::to_string(options.max_dramas) + " sampled dramas");
    }
  }
  std::vector<Drama> out;
  out.reserve(count);
  for (const Scenario& s : enumerate_scenarios(network.letters())) {
    std::vector<std::size_t> idx(grids.size(), 0);
    while (true) {
      Situation w;
      for (std::size_t k = 0; k < grids.size(); ++k) w.push_back(grids[k][idx[k]]);
      out.push_back({s, std::move(w)});
      std::size_t k = 0;
      while (k < grids.size() && ++idx[k] == grids[k].size()) idx[k++] = 0;
      if (k == grids.size()) break;
    }
  }
  return out;
}

namespace {

void hash_mix(std::size_t& seed, std::size_t v) { seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2); }

// Dramas that differ only in the durations of irrelevant links share one
// projection and one schedule.
struct Effective {
  Drama drama;
  std::vector<bool> rel;
  std::vector<bool> link_rel;
  std::vector<Distance> dist;
  bool consistent = true;
};

struct Sampling {
  std::vector<Drama> dramas;
  std::vector<std::size_t> effective_of;
  std::vector<Effective> effective;
};

Sampling build_sampling(const Network& net, const DcOptions& options) {
  Sampling s;
  s.dramas = sample_dramas(net, options);
  const std::size_t n = net.size();
  std::map<std::pair<Scenario, std::vector<Rational>>, std::size_t> seen;
  for (const Drama& d : s.dramas) {
    std::vector<bool> rel(n);
    for (std::size_t i = 0; i < n; ++i) rel[i] = evaluate(net.label(i), d.scenario);
    std::vector<bool> link_rel;
    std::vector<Rational> key;
    for (std::size_t k = 0; k < net.links().size(); ++k) {
      const auto& l = net.links()[k];
      link_rel.push_back(rel[l.activation] && rel[l.contingent]);
      key.push_back(link_rel.back() ? d.situation[k] : Rational(-1));
    }
    auto [it, inserted] = seen.emplace(std::make_pair(d.scenario, key), s.effective.size());
    if (inserted) s.effective.push_back({d, std::move(rel), std::move(link_rel), {}, true});
    s.effective_of.push_back(it->second);
  }

  auto work = [&](std::size_t e) {
    Effective& eff = s.effective[e];
    Projection p = project(net, eff.drama.scenario, &eff.drama.situation);
    DistanceMatrix m = solve(p.stn);
    eff.consistent = m.consistent();
    eff.dist.assign(n * n, Distance::infinity());
    for (std::size_t a = 0; a < p.members.size(); ++a) {
      for (std::size_t b = 0; b < p.members.size(); ++b) eff.dist[p.members[a] * n + p.members[b]] = m.at(a, b);
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, s.effective.size()));
  if (jobs == 1) {
    for (std::size_t e = 0; e < s.effective.size(); ++e) work(e);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) {
      pool.emplace_back([&] {
        for (std::size_t e = next++; e < s.effective.size(); e = next++) work(e);
      });
    }
    for (auto& t : pool) t.join();
  }
  return s;
}

using Times = std::vector<std::optional<Rational>>;

class Search {
 public:
  Search(const Network& net, const DcOptions& options, const Sampling& sampling)
      : net_(net), opt_(options), eff_(sampling.effective), n_(net.size()), rng_(options.seed) {
    contingent_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      contingent_[i] = net.is_contingent(i);
      key_.push_back(static_cast<long>((net.observed_letter(i) ? n_ : 0) + i));
    }
    schedules_.resize(eff_.size());
  }

  bool run() {
    State root;
    for (std::size_t e = 0; e < eff_.size(); ++e) root.group.push_back(static_cast<std::uint32_t>(e));
    root.shared.assign(n_, std::nullopt);
    root.now = 0;
    return solve(root);
  }

  bool budget_hit() const { return budget_hit_; }
  std::size_t nodes() const { return nodes_; }
  const std::vector<Times>& schedules() const { return schedules_; }

 private:
  struct State {
    std::vector<std::uint32_t> group;
    Times shared;
    Rational now;
    long last_key = -1;
    bool started = false;
  };

  struct Option {
    std::optional<std::size_t> point;
    Rational t;
  };

  struct Window {
    bool enabled = true;
    std::optional<Rational> lo;
    std::optional<Rational> hi;
  };

  const Distance& dist(std::size_t e, std::size_t from, std::size_t to) const { return eff_[e].dist[from * n_ + to]; }

  // Times known in a drama: shared decisions plus completions they imply,
  // including completions still in the future.
  Times known(std::size_t e, const State& st) const {
    Times t(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (eff_[e].rel[i] && !contingent_[i]) t[i] = st.shared[i];
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t k = 0; k < net_.links().size(); ++k) {
        if (!eff_[e].link_rel[k]) continue;
        const auto& l = net_.links()[k];
        if (t[l.activation] && !t[l.contingent]) {
          t[l.contingent] = *t[l.activation] + eff_[e].drama.situation[k];
          changed = true;
        }
      }
    }
    return t;
  }

  static bool assigned(const Times& t, std::size_t i, const Rational& now) { return t[i] && *t[i] <= now; }

  Window window(std::size_t e, const Times& t, std::size_t y, const Rational& now) const {
    Window w;
    for (std::size_t v = 0; v < n_; ++v) {
      if (v == y || !eff_[e].rel[v]) continue;
      if (assigned(t, v, now)) {
        const Distance& yv = dist(e, y, v);
        const Distance& vy = dist(e, v, y);
        if (yv.finite()) {
          Rational lo = *t[v] - yv.value();
          if (!w.lo || lo > *w.lo) w.lo = lo;
        }
        if (vy.finite()) {
          Rational hi = *t[v] + vy.value();
          if (!w.hi || hi < *w.hi) w.hi = hi;
        }
      } else {
        const Distance& yv = dist(e, y, v);
        if (yv.finite() && yv.value() < 0) w.enabled = false;
      }
    }
    return w;
  }

  static void intersect(Window& acc, const Window& w) {
    acc.enabled = acc.enabled && w.enabled;
    if (w.lo && (!acc.lo || *w.lo > *acc.lo)) acc.lo = w.lo;
    if (w.hi && (!acc.hi || *w.hi < *acc.hi)) acc.hi = w.hi;
  }

  std::size_t state_hash(const State& st, int mode) const {
    std::size_t h = static_cast<std::size_t>(mode);
    for (auto g : st.group) hash_mix(h, g);
    hash_mix(h, 0xabcdef);
    for (std::size_t i = 0; i < n_; ++i) hash_mix(h, st.shared[i] ? hash_rational(*st.shared[i]) + 1 : 0);
    hash_mix(h, hash_rational(st.now));
    hash_mix(h, static_cast<std::size_t>(st.last_key + 1));
    hash_mix(h, st.started);
    return h;
  }

  bool tick() {
    if (++nodes_ > opt_.node_budget) budget_hit_ = true;
    return !budget_hit_;
  }

  // Per-drama known times; false when some point can no longer be placed.
  bool prepare(const State& st, std::vector<Times>& times) const {
    times.clear();
    for (auto e : st.group) {
      times.push_back(known(e, st));
      const Times& t = times.back();
      for (std::size_t w = 0; w < n_; ++w) {
        if (!eff_[e].rel[w] || contingent_[w] || t[w]) continue;
        Window win = window(e, t, w, st.now);
        if (win.hi && (*win.hi < st.now || (*win.hi == st.now && key_[w] <= st.last_key && st.started))) return false;
        if (win.lo && win.hi && *win.lo > *win.hi) return false;
      }
    }
    return true;
  }

  bool leaf(const State& st) const {
    for (auto e : st.group) {
      for (std::size_t i = 0; i < n_; ++i) {
        if (eff_[e].rel[i] && !contingent_[i] && !st.shared[i]) return false;
      }
    }
    return true;
  }

  void write_leaf(const State& st, const std::vector<Times>& times) {
    for (std::size_t g = 0; g < st.group.size(); ++g) {
      Times t = times[g];
      for (std::size_t i = 0; i < n_; ++i) {
        if (!eff_[st.group[g]].rel[i]) t[i].reset();
      }
      schedules_[st.group[g]] = std::move(t);
    }
  }

  // Candidate points in the group and their joint windows.
  std::vector<std::pair<std::size_t, Window>> candidates(const State& st, const std::vector<Times>& times) const {
    std::vector<std::pair<std::size_t, Window>> out;
    for (std::size_t y = 0; y < n_; ++y) {
      if (contingent_[y] || st.shared[y]) continue;
      Window acc;
      bool any = false;
      for (std::size_t g = 0; g < st.group.size() && acc.enabled; ++g) {
        const auto e = st.group[g];
        if (!eff_[e].rel[y]) continue;
        any = true;
        intersect(acc, window(e, times[g], y, st.now));
      }
      if (any && acc.enabled && (!acc.lo || !acc.hi || *acc.lo <= *acc.hi)) out.emplace_back(y, acc);
    }
    return out;
  }

  void shuffle(std::vector<Option>& options) {
    if (opt_.seed != 0) std::shuffle(options.begin(), options.end(), rng_);
  }

  bool solve(const State& st) {
    if (!tick()) return false;
    std::vector<Times> times;
    if (!prepare(st, times)) return false;
    if (leaf(st)) {
      write_leaf(st, times);
      return true;
    }
    const std::size_t h = state_hash(st, 0);
    if (failed_.count(h)) return false;

    std::vector<Option> options;
    for (const auto& [y, w] : candidates(st, times)) {
      if (st.started && key_[y] <= st.last_key) continue;
      if ((!w.lo || *w.lo <= st.now) && (!w.hi || st.now <= *w.hi)) options.push_back({y, st.now});
    }
    shuffle(options);
    for (const auto& o : options) {
      State child = st;
      child.shared[*o.point] = o.t;
      child.last_key = key_[*o.point];
      child.started = true;
      if (solve(child)) return true;
      if (budget_hit_) return false;
    }
    if (st.started && split(st, times)) return true;
    if (!budget_hit_) failed_.insert(h);
    return false;
  }

  // Partition by what each drama has observed up to now, then let each part
  // move forward in time on its own.
  bool split(const State& st, const std::vector<Times>& times) {
    std::map<std::vector<int>, std::vector<std::uint32_t>> parts;
    for (std::size_t g = 0; g < st.group.size(); ++g) {
      const auto e = st.group[g];
      std::vector<int> sig;
      for (const auto& [p, obs] : net_.observations()) {
        if (!st.shared[obs]) continue;
        sig.push_back(eff_[e].rel[obs] ? static_cast<int>(eff_[e].drama.scenario.value(p)) : 2);
      }
      for (std::size_t k = 0; k < net_.links().size(); ++k) {
        const auto c = net_.links()[k].contingent;
        sig.push_back(eff_[e].link_rel[k] && assigned(times[g], c, st.now) ? 1 : 0);
        if (sig.back()) sig.push_back(static_cast<int>(hash_rational(*times[g][c])));
      }
      parts[sig].push_back(e);
    }
    for (auto& [sig, part] : parts) {
      State child = st;
      child.group = std::move(part);
      if (!advance(child)) return false;
    }
    return true;
  }

  bool advance(const State& st) {
    if (!tick()) return false;
    std::vector<Times> times;
    if (!prepare(st, times)) return false;
    if (leaf(st)) {
      write_leaf(st, times);
      return true;
    }
    const std::size_t h = state_hash(st, 1);
    if (failed_.count(h)) return false;

    std::optional<Rational> tau;
    for (std::size_t g = 0; g < st.group.size(); ++g) {
      for (std::size_t i = 0; i < n_; ++i) {
        if (contingent_[i] && times[g][i] && *times[g][i] > st.now && (!tau || *times[g][i] < *tau)) {
          tau = times[g][i];
        }
      }
    }
    std::vector<Option> options;
    const std::size_t k = std::max<std::size_t>(1, opt_.time_candidates);
    for (const auto& [y, w] : candidates(st, times)) {
      Rational lower = (w.lo && *w.lo > st.now) ? *w.lo : Rational(st.now + net_.epsilon());
      std::optional<Rational> upper = w.hi;
      if (tau && (!upper || *tau < *upper)) upper = tau;
      if (upper && lower > *upper) continue;
      if (!upper || k == 1 || lower == *upper) {
        options.push_back({y, lower});
        continue;
      }
      const Rational span = *upper - lower;
      for (std::size_t i = 0; i < k; ++i) {
        Rational t = lower + span * Rational(static_cast<long>(i), static_cast<long>(k - 1));
        t.canonicalize();
        options.push_back({y, t});
      }
    }
    std::stable_sort(options.begin(), options.end(), [&](const Option& a, const Option& b) {
      if (a.t != b.t) return a.t < b.t;
      return key_[*a.point] < key_[*b.point];
    });
    shuffle(options);
    if (tau) options.push_back({std::nullopt, *tau});

    for (const auto& o : options) {
      State child = st;
      child.now = o.t;
      child.started = true;
      if (o.point) {
        child.shared[*o.point] = o.t;
        child.last_key = key_[*o.point];
      } else {
        child.last_key = -1;
      }
      if (solve(child)) return true;
      if (budget_hit_) return false;
    }
    if (!budget_hit_) failed_.insert(h);
    return false;
  }

  const Network& net_;
  const DcOptions& opt_;
  const std::vector<Effective>& eff_;
  std::size_t n_;
  std::vector<bool> contingent_;
  std::vector<long> key_;
  std::vector<Times> schedules_;
  std::unordered_set<std::size_t> failed_;
  std::size_t nodes_ = 0;
  bool budget_hit_ = false;
  std::mt19937_64 rng_;
};

enum class Certify { Cstnu, Cstn, Stnu };

std::string describe_sampling(const Sampling& s, const DcOptions& options) {
  return std::to_string(options.duration_samples) + " duration samples per link, " +
         std::to_string(s.dramas.size()) + " dramas, " + std::to_string(s.effective.size()) +
         " distinct projections, " + std::to_string(options.time_candidates) + " time candidates";
}

DcResult run_check(const Network& net, const DcOptions& options, Certify mode, const Stnu* stnu) {
  if (auto r = validate_cstnu(net); !r.ok()) throw PreconditionError("network does not validate:\n" + r.to_string());
  DcResult result;
  Sampling sampling = build_sampling(net, options);
  result.dramas = sampling.dramas.size();
  result.sample_description = describe_sampling(sampling, options);

  for (std::size_t i = 0; i < sampling.dramas.size(); ++i) {
    if (!sampling.effective[sampling.effective_of[i]].consistent) {
      result.verdict = Verdict::NotControllable;
      result.inconsistent_drama = sampling.dramas[i];
      result.detail = "projection for drama " + to_string(sampling.dramas[i]) + " is inconsistent";
      return result;
    }
  }

  PropagationResult closure = propagate_to_fixpoint(net, options.propagation_budget);
  if (closure.refuted) {
    result.verdict = Verdict::NotControllable;
    result.refutation = closure.ledger[*closure.refutation];
    result.detail = "propagation derives the negative self-loop " + net.describe(*result.refutation);
    return result;
  }

  Search search(net, options, sampling);
  const bool found = search.run();
  result.nodes = search.nodes();
  if (!found) {
    result.verdict = Verdict::Unknown;
    result.detail = search.budget_hit() ? "search node budget exhausted"
                                        : "no strategy in the searched space at the configured granularity";
    return result;
  }

  for (std::size_t i = 0; i < sampling.dramas.size(); ++i) {
    StrategyEntry entry;
    entry.drama = sampling.dramas[i];
    if (mode == Certify::Cstn) entry.drama.situation.clear();
    if (mode == Certify::Stnu) entry.drama.scenario = Scenario();
    const Times& t = search.schedules()[sampling.effective_of[i]];
    for (std::size_t x = 0; x < net.size(); ++x) {
      if (t[x]) entry.schedule.emplace(net.id(x), *t[x]);
    }
    result.strategy.entries.push_back(std::move(entry));
  }

  ViabilityReport viable = stnu ? is_viable(*stnu, result.strategy) : is_viable(net, result.strategy);
  DynamicReport dynamic;
  switch (mode) {
    case Certify::Cstnu: dynamic = is_dynamic_star(net, result.strategy); break;
    case Certify::Cstn: dynamic = is_dynamic_cstn(net, result.strategy); break;
    case Certify::Stnu: dynamic = is_dynamic_star(*stnu, result.strategy); break;
  }
  if (!viable.viable || !dynamic.dynamic) {
    result.verdict = Verdict::Unknown;
    result.detail = "strategy failed certification: " + (viable.viable ? dynamic.message : viable.message);
    result.strategy.entries.clear();
    return result;
  }
  result.verdict = Verdict::Controllable;
  result.detail = "strategy certified viable and dynamic over " + std::to_string(sampling.dramas.size()) + " dramas";
  return result;
}

}  // namespace

DcResult check_dc(const Network& network, const DcOptions& options) {
  return run_check(network, options, Certify::Cstnu, nullptr);
}

DcResult check_dc_cstn(const Network& cstn, const DcOptions& options) {
  if (!cstn.links().empty()) throw PreconditionError("a CSTN has no contingent links");
  return run_check(cstn, options, Certify::Cstn, nullptr);
}

DcResult check_dc_stnu(const Stnu& stnu, const DcOptions& options) {
  return run_check(embed_stnu(stnu), options, Certify::Stnu, &stnu);
}

bool verify_lemma6(const Network& cstn, const DcOptions& options) {
  return check_dc_cstn(cstn, options).verdict == check_dc(embed_cstn(cstn), options).verdict;
}

bool verify_lemma7(const Stnu& stnu, const DcOptions& options) {
  return check_dc_stnu(stnu, options).verdict == check_dc(embed_stnu(stnu), options).verdict;
}

}  // namespace cstnu
