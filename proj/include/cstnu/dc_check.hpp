#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cstnu/network.hpp"
#include "cstnu/projection.hpp"
#include "cstnu/semantics.hpp"

namespace cstnu {

struct DcOptions {
  /// Durations sampled per link, evenly spaced from x to y.
  std::size_t duration_samples = 3;
  /// Candidate times tried per enabled point when time advances.
  std::size_t time_candidates = 3;
  std::size_t max_letters = 6;
  std::size_t max_links = 6;
  std::size_t max_dramas = 50000;
  /// Search nodes before giving up with Unknown.
  std::size_t node_budget = 200000;
  /// Rule applications for the propagation pre-check.
  std::size_t propagation_budget = 20000;
  /// Nonzero seeds shuffle the option order.
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

enum class Verdict { Controllable, NotControllable, Unknown };

std::string_view to_string(Verdict verdict);

struct DcResult {
  Verdict verdict = Verdict::Unknown;
  /// Certified strategy over the sampled dramas when controllable.
  ExecutionStrategy strategy;
  std::optional<Drama> inconsistent_drama;
  std::optional<LabeledConstraint> refutation;
  std::string sample_description;
  std::string detail;
  std::size_t dramas = 0;
  std::size_t nodes = 0;
};

/// Evenly spaced durations per link; a single sample picks the midpoint.
std::vector<Rational> sample_durations(const ContingentLink& link, std::size_t samples);
/// Every scenario over P paired with every sampled situation. Throws
/// CapExceeded beyond the configured caps.
std::vector<Drama> sample_dramas(const Network& network, const DcOptions& options = {});

/// Controllability over the sampled drama set. The strategy, when found, is
/// re-checked with is_viable and is_dynamic_star before being returned.
/// Throws PreconditionError when the network does not validate.
DcResult check_dc(const Network& network, const DcOptions& options = {});
/// Dynamic consistency of a CSTN; certificates use is_dynamic_cstn.
DcResult check_dc_cstn(const Network& cstn, const DcOptions& options = {});
/// Dynamic controllability of an STNU; certificates use sit_hst.
DcResult check_dc_stnu(const Stnu& stnu, const DcOptions& options = {});

/// check_dc_cstn on the CSTN agrees with check_dc on its embedding.
bool verify_lemma6(const Network& cstn, const DcOptions& options = {});
/// check_dc_stnu on the STNU agrees with check_dc on its embedding.
bool verify_lemma7(const Stnu& stnu, const DcOptions& options = {});

}  // namespace cstnu
