#include "cstnu/stn.hpp"

#include <algorithm>
#include <tuple>

#include "cstnu/error.hpp"

namespace cstnu {

std::size_t Stn::add_timepoint(std::string id) {
  timepoints.push_back(std::move(id));
  return timepoints.size() - 1;
}

void Stn::add_constraint(std::size_t from, std::size_t to, Rational delta, std::string origin) {
  constraints.push_back({from, to, std::move(delta), std::move(origin)});
}

void Stn::add_interval(std::size_t from, std::size_t to, const Rational& lower, const Rational& upper,
                       const std::string& origin) {
  add_constraint(from, to, upper, origin);
  add_constraint(to, from, Rational(-lower), origin);
}

std::optional<std::size_t> Stn::find(std::string_view id) const {
  for (std::size_t i = 0; i < timepoints.size(); ++i) {
    if (timepoints[i] == id) return i;
  }
  return std::nullopt;
}

std::size_t Stn::index_of(std::string_view id) const {
  auto idx = find(id);
  if (!idx) throw PreconditionError("unknown time-point '" + std::string(id) + "'");
  return *idx;
}

bool operator==(const Stn& a, const Stn& b) {
  if (a.timepoints != b.timepoints) return false;
  using Key = std::tuple<std::string, std::string, Rational>;
  auto keys = [](const Stn& s) {
    std::vector<Key> out;
    for (const auto& c : s.constraints) out.emplace_back(s.timepoints[c.from], s.timepoints[c.to], c.delta);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  return keys(a) == keys(b);
}

const Distance& DistanceMatrix::at(std::string_view from, std::string_view to) const {
  auto find = [&](std::string_view id) {
    auto it = std::find(ids_.begin(), ids_.end(), id);
    if (it == ids_.end()) throw PreconditionError("unknown time-point '" + std::string(id) + "'");
    return static_cast<std::size_t>(it - ids_.begin());
  };
  return at(find(from), find(to));
}

DistanceMatrix solve(const Stn& stn) {
  const std::size_t n = stn.timepoints.size();
  std::vector<Distance> d(n * n);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = Distance(Rational(0));
  for (const auto& c : stn.constraints) {
    Distance w(c.delta);
    if (w < d[c.from * n + c.to]) d[c.from * n + c.to] = w;
  }
  bool consistent = true;
  for (std::size_t k = 0; k < n && consistent; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const Distance& ik = d[i * n + k];
      if (ik.infinite()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Distance& kj = d[k * n + j];
        if (kj.infinite()) continue;
        Rational via = ik.value() + kj.value();
        Distance& ij = d[i * n + j];
        if (ij.infinite() || via < ij.value()) ij = Distance(std::move(via));
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i * n + i].value() < 0) consistent = false;
    }
  }
  return DistanceMatrix(stn.timepoints, std::move(d), consistent);
}

Schedule earliest_solution(const Stn& stn, std::string_view origin) {
  const std::size_t o = stn.index_of(origin);
  DistanceMatrix dm = solve(stn);
  if (!dm.consistent()) throw PreconditionError("earliest_solution: the STN is inconsistent");
  const std::size_t n = stn.timepoints.size();
  std::vector<std::optional<Rational>> t(n);
  t[o] = Rational(0);
  std::vector<std::size_t> order{o};
  for (std::size_t i = 0; i < n; ++i) {
    if (i != o) order.push_back(i);
  }
  // Sequential placement stays extendable because the closure is decomposable.
  for (std::size_t k = 1; k < order.size(); ++k) {
    const std::size_t x = order[k];
    Distance lo_neg = Distance::infinity();  // min over placed w of (D[x][w] - t_w)
    Distance hi = Distance::infinity();      // min over placed w of (t_w + D[w][x])
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t w = order[j];
      if (dm.at(x, w).finite()) {
        Distance cand(Rational(dm.at(x, w).value() - *t[w]));
        if (cand < lo_neg) lo_neg = cand;
      }
      if (dm.at(w, x).finite()) {
        Distance cand(Rational(*t[w] + dm.at(w, x).value()));
        if (cand < hi) hi = cand;
      }
    }
    if (lo_neg.finite()) {
      t[x] = Rational(-lo_neg.value());
    } else if (hi.finite()) {
      t[x] = hi.value();
    } else {
      t[x] = Rational(0);
    }
  }
  Schedule out;
  for (std::size_t i = 0; i < n; ++i) out.emplace(stn.timepoints[i], *t[i]);
  return out;
}

std::vector<SimpleConstraint> check_solution(const Stn& stn, const Schedule& schedule) {
  std::vector<const Rational*> t(stn.timepoints.size());
  for (std::size_t i = 0; i < stn.timepoints.size(); ++i) {
    auto it = schedule.find(stn.timepoints[i]);
    if (it == schedule.end()) {
      throw PreconditionError("schedule has no time for '" + stn.timepoints[i] + "'");
    }
    t[i] = &it->second;
  }
  std::vector<SimpleConstraint> violated;
  for (const auto& c : stn.constraints) {
    if (*t[c.to] - *t[c.from] > c.delta) violated.push_back(c);
  }
  return violated;
}

}  // namespace cstnu
