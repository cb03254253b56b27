#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cstnu {

/// A propositional letter. Letters are single ASCII alphabetic symbols, so at
/// most 52 exist; their order is the character order (`A` < `Z` < `a`).
class Letter {
 public:
  static constexpr std::size_t kCount = 52;

  explicit Letter(char symbol);
  static Letter from_index(std::size_t index);

  char symbol() const noexcept;
  std::size_t index() const noexcept { return index_; }
  std::uint64_t bit() const noexcept { return std::uint64_t{1} << index_; }

  friend auto operator<=>(Letter, Letter) = default;

 private:
  Letter() = default;
  std::uint8_t index_ = 0;
};

class LetterSet {
 public:
  LetterSet() = default;
  LetterSet(std::initializer_list<Letter> letters);
  static LetterSet from_mask(std::uint64_t mask) { LetterSet s; s.mask_ = mask; return s; }
  /// `"ABp"` -> {A, B, p}.
  static LetterSet parse(std::string_view symbols);

  void insert(Letter l) noexcept { mask_ |= l.bit(); }
  bool contains(Letter l) const noexcept { return (mask_ & l.bit()) != 0; }
  bool empty() const noexcept { return mask_ == 0; }
  std::size_t size() const noexcept;
  std::uint64_t mask() const noexcept { return mask_; }
  bool includes(const LetterSet& other) const noexcept { return (other.mask_ & ~mask_) == 0; }
  std::vector<Letter> to_vector() const;

  friend bool operator==(const LetterSet&, const LetterSet&) = default;

 private:
  std::uint64_t mask_ = 0;
};

struct Literal {
  Letter letter;
  bool positive;

  friend bool operator==(const Literal&, const Literal&) = default;
};

/// A satisfiable conjunction of literals. The empty label is the always-true
/// label. Stored as two disjoint bitmasks, so equality is structural.
class Label {
 public:
  Label() = default;

  /// Throws PreconditionError if a letter occurs with both signs.
  static Label of(std::initializer_list<Literal> literals);
  static Label literal(Letter letter, bool positive);
  /// `std::nullopt` when the masks overlap.
  static std::optional<Label> from_masks(std::uint64_t positive, std::uint64_t negative);
  /// Text syntax: `[]` (or empty) for the empty label, else literals such as
  /// `A!B`. Duplicate or contradictory letters are rejected with ParseError.
  static Label parse(std::string_view text);

  bool empty() const noexcept { return pos_ == 0 && neg_ == 0; }
  std::size_t size() const noexcept;
  bool mentions(Letter l) const noexcept { return ((pos_ | neg_) & l.bit()) != 0; }
  std::optional<bool> polarity(Letter l) const noexcept;
  LetterSet letters() const noexcept { return LetterSet::from_mask(pos_ | neg_); }
  std::vector<Literal> literals() const;
  Label without(Letter l) const noexcept;
  /// Literals of this label that are not in `other`.
  Label minus(const Label& other) const noexcept;
  /// Literals common to both labels.
  Label common(const Label& other) const noexcept;

  std::uint64_t positive_mask() const noexcept { return pos_; }
  std::uint64_t negative_mask() const noexcept { return neg_; }

  std::string to_string() const;

  friend bool operator==(const Label&, const Label&) = default;
  friend auto operator<=>(const Label&, const Label&) = default;

 private:
  std::uint64_t pos_ = 0;
  std::uint64_t neg_ = 0;
};

/// Conjunction; `std::nullopt` marks an unsatisfiable result.
std::optional<Label> conjoin(const Label& a, const Label& b);
/// Con(a, b): the conjunction is satisfiable.
bool con(const Label& a, const Label& b) noexcept;
/// Sub(a, b): a entails b, i.e. every literal of b occurs in a.
bool sub(const Label& a, const Label& b) noexcept;
/// Every label over `letters`: 3^|letters| of them.
std::vector<Label> enumerate_universe(const LetterSet& letters);

/// A total truth assignment over a letter set.
class Scenario {
 public:
  Scenario() = default;
  /// Bits of `truth` outside `domain` are ignored.
  Scenario(LetterSet domain, std::uint64_t truth) : domain_(domain), truth_(truth & domain.mask()) {}

  const LetterSet& domain() const noexcept { return domain_; }
  std::uint64_t truth_mask() const noexcept { return truth_; }
  /// Throws PreconditionError if `l` is outside the domain.
  bool value(Letter l) const;
  /// The total label describing this scenario.
  Label as_label() const noexcept;
  /// `A=1,B=0` style text.
  std::string to_string() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
  friend auto operator<=>(const Scenario& a, const Scenario& b) {
    if (auto c = a.domain_.mask() <=> b.domain_.mask(); c != 0) return c;
    return a.truth_ <=> b.truth_;
  }

 private:
  LetterSet domain_;
  std::uint64_t truth_ = 0;
};

/// All 2^|letters| scenarios; the i-th has letter k true iff bit k of i is set,
/// letters taken in ascending order.
std::vector<Scenario> enumerate_scenarios(const LetterSet& letters);

/// Throws PreconditionError if the label mentions a letter outside the domain.
bool evaluate(const Label& label, const Scenario& scenario);

}  // namespace cstnu
