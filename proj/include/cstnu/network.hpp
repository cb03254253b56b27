#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cstnu/error.hpp"
#include "cstnu/label.hpp"
#include "cstnu/rational.hpp"
#include "cstnu/stn.hpp"

namespace cstnu {

struct TimePoint {
  std::string id;
  Label label;
};

/// `(to - from <= delta, label)`.
struct LabeledConstraint {
  std::size_t from = 0;
  std::size_t to = 0;
  Rational delta;
  Label label;

  friend bool operator==(const LabeledConstraint&, const LabeledConstraint&) = default;
};

/// `(activation, lower, upper, contingent)`: the environment fixes
/// `contingent - activation` somewhere in [lower, upper].
struct ContingentLink {
  std::size_t activation = 0;
  Rational lower;
  Rational upper;
  std::size_t contingent = 0;

  friend bool operator==(const ContingentLink&, const ContingentLink&) = default;
};

enum class NetworkKind { Stn, Cstn, Stnu, Cstnu };

std::string_view to_string(NetworkKind kind);

/// Default WD2 separation between an observation and the points it labels.
Rational default_epsilon();

/// An immutable conditional temporal network with uncertainty. STNs, CSTNs and
/// STNUs are the degenerate cases without letters and/or links. Built through
/// NetworkBuilder, which only enforces structural well-formedness; semantic
/// conditions are reported by the validators below.
class Network {
 public:
  Network() = default;

  const std::vector<TimePoint>& timepoints() const noexcept { return timepoints_; }
  const std::vector<LabeledConstraint>& constraints() const noexcept { return constraints_; }
  const std::vector<ContingentLink>& links() const noexcept { return links_; }
  const LetterSet& letters() const noexcept { return letters_; }
  const std::map<Letter, std::size_t>& observations() const noexcept { return observations_; }
  const Rational& epsilon() const noexcept { return epsilon_; }
  NetworkKind kind() const noexcept;

  std::size_t size() const noexcept { return timepoints_.size(); }
  const std::string& id(std::size_t index) const { return timepoints_.at(index).id; }
  const Label& label(std::size_t index) const { return timepoints_.at(index).label; }
  std::optional<std::size_t> find(std::string_view id) const;
  /// Throws PreconditionError for unknown ids.
  std::size_t index_of(std::string_view id) const;

  /// O(p), if declared.
  std::optional<std::size_t> observer(Letter p) const;
  /// The letter observed at a time-point, if it is an observation point.
  std::optional<Letter> observed_letter(std::size_t index) const;
  /// Index of the link whose contingent point this is.
  std::optional<std::size_t> link_of_contingent(std::size_t index) const;
  bool is_contingent(std::size_t index) const { return link_of_contingent(index).has_value(); }

  /// Same network with its constraint set replaced; used by propagation.
  Network with_constraints(std::vector<LabeledConstraint> constraints) const;

  std::string describe(const LabeledConstraint& c) const;

 private:
  friend class NetworkBuilder;

  std::vector<TimePoint> timepoints_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<LabeledConstraint> constraints_;
  std::vector<ContingentLink> links_;
  LetterSet letters_;
  std::map<Letter, std::size_t> observations_;
  Rational epsilon_ = default_epsilon();
};

class NetworkBuilder {
 public:
  NetworkBuilder& letter(Letter p);
  NetworkBuilder& letters(const LetterSet& set);
  /// Throws PreconditionError unless positive.
  NetworkBuilder& epsilon(const Rational& value);
  /// Throws InvalidNetwork on duplicate ids.
  std::size_t timepoint(std::string id, Label label = {});
  /// Declares `id` as the observation point of `p`.
  NetworkBuilder& observe(Letter p, std::string_view id);
  /// `to - from <= delta` under `label`.
  NetworkBuilder& constraint(std::string_view from, std::string_view to, const Rational& delta, Label label = {});
  /// `lower <= to - from <= upper` as two labeled constraints.
  NetworkBuilder& interval(std::string_view from, std::string_view to, const Rational& lower,
                           const Rational& upper, Label label = {});
  /// Adds only the link; use `contingent_link` to add the bound constraints too.
  NetworkBuilder& link(std::string_view activation, const Rational& lower, const Rational& upper,
                       std::string_view contingent);
  /// Link plus its `(lower <= C - A <= upper, L(A))` constraints.
  NetworkBuilder& contingent_link(std::string_view activation, const Rational& lower, const Rational& upper,
                                  std::string_view contingent);
  NetworkBuilder& add(const LabeledConstraint& c);

  bool has(std::string_view id) const { return net_.find(id).has_value(); }
  Network build() const { return net_; }

 private:
  std::size_t require(std::string_view id) const;
  Network net_;
};

/// A simple temporal network with uncertainty: ⟨T, C, L⟩.
struct Stnu {
  Stn stn;
  std::vector<ContingentLink> links;
};

/// A CSTP edge `lower <= to - from <= upper`; a missing side is unbounded.
struct CstpEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

/// A conditional simple temporal problem in its original, unlabeled-edge form.
struct Cstp {
  std::vector<TimePoint> points;
  std::vector<CstpEdge> edges;
  LetterSet letters;
  std::map<Letter, std::size_t> observations;
  Rational epsilon = default_epsilon();
};

struct Violation {
  /// Short code: WD1, WD2, WD3, OBS, LINK-BOUNDS, LINK-CONSTRAINT,
  /// LINK-DISTINCT, LINK-LOOP, LINK-LABEL, A1, A2.
  std::string condition;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(std::string_view condition) const;
  void add(std::string condition, std::string message);
  void merge(const ValidationReport& other);
  std::string to_string() const;
};

/// Thrown by embeddings whose input fails its own well-formedness conditions.
class EmbeddingError : public PreconditionError {
 public:
  explicit EmbeddingError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// WD1-WD3 plus the observation map being a bijection onto P.
ValidationReport validate_cstn(const Network& network);
/// Link bounds, required bound constraints, distinct contingent points and
/// the absence of loops among links.
ValidationReport validate_stnu(const Stnu& stnu);
/// CSTN part, STNU part ⟨T, [C], L⟩, and label agreement of link endpoints
/// together with the labeled bound constraints.
ValidationReport validate_cstnu(const Network& network);

/// [C]: labels erased, duplicates collapsed, first occurrence order kept.
std::vector<SimpleConstraint> strip_labels(const std::vector<LabeledConstraint>& constraints);
/// ⟨T, [C], L⟩ of a network.
Stnu unlabeled_part(const Network& network);

Network embed_stn(const Stn& stn);
/// Throws EmbeddingError listing A1/A2 violations.
Network embed_cstp(const Cstp& cstp);
/// Throws EmbeddingError if the STNU does not validate.
Network embed_stnu(const Stnu& stnu);
/// Throws EmbeddingError if the CSTN does not validate or carries links.
Network embed_cstn(const Network& cstn);

}  // namespace cstnu
