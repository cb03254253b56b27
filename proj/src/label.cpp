#include "cstnu/label.hpp"

#include <bit>

#include "cstnu/error.hpp"

namespace cstnu {

namespace {

int letter_index(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return 26 + (c - 'a');
  return -1;
}

}  // namespace

Letter::Letter(char symbol) {
  int idx = letter_index(symbol);
  if (idx < 0) throw ParseError(std::string("invalid propositional letter '") + symbol + "'");
  index_ = static_cast<std::uint8_t>(idx);
}

Letter Letter::from_index(std::size_t index) {
  if (index >= kCount) throw PreconditionError("letter index out of range");
  Letter l;
  l.index_ = static_cast<std::uint8_t>(index);
  return l;
}

char Letter::symbol() const noexcept {
  return index_ < 26 ? static_cast<char>('A' + index_) : static_cast<char>('a' + (index_ - 26));
}

LetterSet::LetterSet(std::initializer_list<Letter> letters) {
  for (Letter l : letters) insert(l);
}

LetterSet LetterSet::parse(std::string_view symbols) {
  LetterSet s;
  for (char c : symbols) s.insert(Letter(c));
  return s;
}

std::size_t LetterSet::size() const noexcept { return static_cast<std::size_t>(std::popcount(mask_)); }

std::vector<Letter> LetterSet::to_vector() const {
  std::vector<Letter> out;
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) {
    out.push_back(Letter::from_index(static_cast<std::size_t>(std::countr_zero(m))));
  }
  return out;
}

Label Label::of(std::initializer_list<Literal> literals) {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
  for (const Literal& lit : literals) (lit.positive ? pos : neg) |= lit.letter.bit();
  auto label = from_masks(pos, neg);
  if (!label) throw PreconditionError("contradictory literals in label");
  return *label;
}

Label Label::literal(Letter letter, bool positive) {
  Label l;
  (positive ? l.pos_ : l.neg_) = letter.bit();
  return l;
}

std::optional<Label> Label::from_masks(std::uint64_t positive, std::uint64_t negative) {
  if ((positive & negative) != 0) return std::nullopt;
  Label l;
  l.pos_ = positive;
  l.neg_ = negative;
  return l;
}

Label Label::parse(std::string_view text) {
  if (text.empty() || text == "[]") return Label{};
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
  bool negate = false;
  for (char c : text) {
    if (c == '!' || c == '~') {
      if (negate) throw ParseError("invalid label '" + std::string(text) + "'");
      negate = true;
      continue;
    }
    if (letter_index(c) < 0) throw ParseError("invalid label '" + std::string(text) + "'");
    Letter l(c);
    if (((pos | neg) & l.bit()) != 0) {
      throw ParseError("label '" + std::string(text) + "' repeats letter " + std::string(1, c));
    }
    (negate ? neg : pos) |= l.bit();
    negate = false;
  }
  if (negate) throw ParseError("invalid label '" + std::string(text) + "'");
  return *from_masks(pos, neg);
}

std::size_t Label::size() const noexcept { return static_cast<std::size_t>(std::popcount(pos_ | neg_)); }

std::optional<bool> Label::polarity(Letter l) const noexcept {
  if (pos_ & l.bit()) return true;
  if (neg_ & l.bit()) return false;
  return std::nullopt;
}

std::vector<Literal> Label::literals() const {
  std::vector<Literal> out;
  for (Letter l : letters().to_vector()) out.push_back({l, (pos_ & l.bit()) != 0});
  return out;
}

Label Label::without(Letter l) const noexcept {
  Label out = *this;
  out.pos_ &= ~l.bit();
  out.neg_ &= ~l.bit();
  return out;
}

Label Label::minus(const Label& other) const noexcept {
  Label out;
  out.pos_ = pos_ & ~other.pos_;
  out.neg_ = neg_ & ~other.neg_;
  return out;
}

Label Label::common(const Label& other) const noexcept {
  Label out;
  out.pos_ = pos_ & other.pos_;
  out.neg_ = neg_ & other.neg_;
  return out;
}

std::string Label::to_string() const {
  if (empty()) return "[]";
  std::string out;
  for (const Literal& lit : literals()) {
    if (!lit.positive) out.push_back('!');
    out.push_back(lit.letter.symbol());
  }
  return out;
}

std::optional<Label> conjoin(const Label& a, const Label& b) {
  return Label::from_masks(a.positive_mask() | b.positive_mask(), a.negative_mask() | b.negative_mask());
}

bool con(const Label& a, const Label& b) noexcept {
  return ((a.positive_mask() | b.positive_mask()) & (a.negative_mask() | b.negative_mask())) == 0;
}

bool sub(const Label& a, const Label& b) noexcept {
  return (b.positive_mask() & ~a.positive_mask()) == 0 && (b.negative_mask() & ~a.negative_mask()) == 0;
}

std::vector<Label> enumerate_universe(const LetterSet& letters) {
  std::vector<Label> out{Label{}};
  for (Letter l : letters.to_vector()) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(*conjoin(out[i], Label::literal(l, true)));
      out.push_back(*conjoin(out[i], Label::literal(l, false)));
    }
  }
  return out;
}

bool Scenario::value(Letter l) const {
  if (!domain_.contains(l)) {
    throw PreconditionError(std::string("letter ") + l.symbol() + " is outside the scenario's domain");
  }
  return (truth_ & l.bit()) != 0;
}

Label Scenario::as_label() const noexcept {
  return *Label::from_masks(truth_, domain_.mask() & ~truth_);
}

std::string Scenario::to_string() const {
  std::string out;
  for (Letter l : domain_.to_vector()) {
    if (!out.empty()) out.push_back(',');
    out.push_back(l.symbol());
    out += (truth_ & l.bit()) ? "=1" : "=0";
  }
  return out;
}

std::vector<Scenario> enumerate_scenarios(const LetterSet& letters) {
  const std::vector<Letter> order = letters.to_vector();
  std::vector<Scenario> out;
  out.reserve(std::size_t{1} << order.size());
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << order.size()); ++i) {
    std::uint64_t truth = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (i & (std::uint64_t{1} << k)) truth |= order[k].bit();
    }
    out.emplace_back(letters, truth);
  }
  return out;
}

bool evaluate(const Label& label, const Scenario& scenario) {
  const std::uint64_t mentioned = label.positive_mask() | label.negative_mask();
  if ((mentioned & ~scenario.domain().mask()) != 0) {
    throw PreconditionError("label " + label.to_string() + " mentions letters outside the scenario's domain");
  }
  return (label.positive_mask() & ~scenario.truth_mask()) == 0 &&
         (label.negative_mask() & scenario.truth_mask()) == 0;
}

}  // namespace cstnu
