#pragma once

// q-labelled and q-alternating ordered rooted trees.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltaction/lambda.hpp"
#include "ltaction/scaled.hpp"

namespace ltaction::trees {

using lambda::Seq;

struct Label {
  Seq H;
  Seq I;
  friend bool operator==(const Label&, const Label&) = default;
};

struct Tree;
using TreePtr = std::shared_ptr<const Tree>;

struct Tree {
  Label label;
  std::vector<TreePtr> children;
};

bool operator==(const Tree& a, const Tree& b);

TreePtr make_tree(Label label, std::vector<TreePtr> children = {});

// Sum of QI over all vertices.
std::int64_t weight(const Tree& t, std::int64_t q);
std::size_t vertex_count(const Tree& t);

struct Violation {
  std::vector<int> path;  // child indices from the root
  std::string reason;
};

// Checks Lambda membership of every label and both labelling conditions.
std::optional<Violation> validate(const Tree& t, std::int64_t q, bool alternating = false);

class TreeCeilingExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Default 10^7, overridden by LTACTION_TREE_CEILING.
std::size_t default_tree_ceiling();

/// Every q-labelled (resp. q-alternating) ordered rooted tree of weight n,
/// each exactly once. Lists are cached per (q, weight, alternating); the
/// ceiling bounds the total number of trees built by one call.
std::vector<TreePtr> enumerate_trees(std::int64_t q, int n, bool alternating = false,
                                     std::size_t ceiling = default_tree_ceiling());

/// (-1)^{|H|} sigma^{|I|}(alpha_{(|H|+|I|-1) mod 2}) / pi^floor((|H|+|I|-1)/2).
Scaled label_coefficient(std::size_t h_len, std::size_t i_len, const Scaled& alpha0, const Scaled& alpha1);

/// (alpha0, alpha1)-index: the product over vertices of label_coefficient / alpha0.
Scaled index(const Tree& t, const witt::Elem& alpha0, const witt::Elem& alpha1);

/// alpha-index of a q-alternating tree; throws std::invalid_argument otherwise.
Scaled index_alt(const Tree& t, const witt::Elem& alpha);

// One vertex per line, "H=(..) I=(..) wt=..", children indented two spaces.
std::string render(const Tree& t, std::int64_t q);
// Nested list [[H, I], [child, ...]].
std::string serialize(const Tree& t);

}  // namespace ltaction::trees
