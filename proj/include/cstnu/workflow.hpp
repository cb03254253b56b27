#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cstnu/network.hpp"

namespace cstnu {

/// `[lower, upper]`; flows may leave the upper end open.
struct Range {
  Rational lower;
  std::optional<Rational> upper;
};

enum class ElementKind { Task, Split, Join };

std::string_view to_string(ElementKind kind);

struct WorkflowElement {
  std::string id;
  ElementKind kind = ElementKind::Task;
  Range range;
  std::size_t line = 0;
};

struct WorkflowFlow {
  std::string from;
  std::string to;
  Range delay;
  std::size_t line = 0;
};

/// `branch <split> <target> [+|-]`: fixes the order of a split's branches.
struct WorkflowBranch {
  std::string split;
  std::string target;
  std::optional<bool> positive;
  std::size_t line = 0;
};

struct Anchor {
  std::string element;
  bool start = true;
};

/// `constrain A.S -> B.E [x,y]`.
struct WorkflowConstraint {
  Anchor from;
  Anchor to;
  Range range;
  std::size_t line = 0;
};

struct WorkflowSpec {
  std::vector<WorkflowElement> elements;
  std::vector<WorkflowFlow> flows;
  std::vector<WorkflowBranch> branches;
  std::vector<WorkflowConstraint> constraints;

  const WorkflowElement* find(std::string_view id) const;
};

/// Parses and checks the line-oriented workflow language. Errors are
/// ParseErrors prefixed with `line N:`.
WorkflowSpec parse_workflow(std::string_view text);
/// Semantic checks shared by the parser and programmatic callers: unique ids,
/// known references, ranges, acyclic flows, splits with two or more branches.
void validate_workflow(const WorkflowSpec& spec);

struct ElementMapping {
  std::string start;
  std::string end;
  std::optional<std::size_t> link;
  /// Letters allocated to a split, in code order.
  std::vector<Letter> letters;
  std::vector<std::string> observation_points;
  Label label;
};

struct CompilationMap {
  std::map<std::string, ElementMapping> elements;
};

struct Compilation {
  Network network;
  CompilationMap map;
};

/// Tasks become contingent links, connectors become controllable start/end
/// pairs, each split observes fresh letters at its end point. Throws
/// InvalidNetwork if the result does not validate.
Compilation compile_workflow(const WorkflowSpec& spec, const Rational& epsilon = default_epsilon());

}  // namespace cstnu
