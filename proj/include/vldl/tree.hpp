#pragma once

#include "vldl/alphabet.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace vldl {

/// A symbol of the alphabet or the padding label bot.
struct TreeLabel {
  static constexpr std::uint32_t bot_value = 0xffffffffu;
  std::uint32_t value = bot_value;

  static TreeLabel bot() { return TreeLabel{}; }
  static TreeLabel of(Symbol a) { return TreeLabel{a}; }
  bool is_bot() const { return value == bot_value; }
  Symbol symbol() const { return value; }
  auto operator<=>(const TreeLabel&) const = default;
};

std::string label_name(const PushdownAlphabet& sigma, TreeLabel label);

/// Tree with finitely many non-bot nodes, addressed by strings over {0,1}.
class FiniteTree {
public:
  TreeLabel at(std::string_view address) const;
  void set(const std::string& address, Symbol a) { nodes_[address] = a; }
  const std::map<std::string, Symbol>& nodes() const { return nodes_; }
  /// True when the explicit domain is prefix-closed.
  bool prefix_closed() const;
  bool operator==(const FiniteTree&) const = default;

private:
  std::map<std::string, Symbol> nodes_;
};

/// Finite generator of an infinite binary tree: node i has a label and a
/// left (0) and right (1) successor generator node.
class RegularTree {
public:
  struct Node {
    TreeLabel label;
    std::uint32_t left;
    std::uint32_t right;
  };

  RegularTree() = default;
  RegularTree(std::vector<Node> nodes, std::uint32_t root);

  const std::vector<Node>& nodes() const { return nodes_; }
  std::uint32_t root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }
  const Node& node(std::uint32_t s) const { return nodes_.at(s); }

  std::uint32_t state_at(std::string_view address) const;
  TreeLabel at(std::string_view address) const {
    return nodes_[state_at(address)].label;
  }

  /// Non-bot nodes of the unfolding up to the given depth (root depth 0).
  FiniteTree truncate(std::size_t depth) const;

  /// Generator states along the branch that follows the cardinal rule:
  /// matched calls (return-labelled left child) and non-calls go left,
  /// other calls go right.  Stops after `length` nodes or at bot.
  std::vector<std::string> cardinal_addresses(const PushdownAlphabet& sigma,
                                              std::size_t length) const;

  /// Replaces the label at an address of the unfolding, copying the path
  /// so that no other node of the unfolding changes.
  RegularTree relabel(std::string_view address, TreeLabel label) const;

private:
  std::vector<Node> nodes_;
  std::uint32_t root_ = 0;
};

/// Generator of a tree with finitely many non-bot nodes; the explicit
/// domain must be prefix-closed.
RegularTree regular_tree(const FiniteTree& t);

/// Serialization used by the CLI: one node per line, `id label left right`,
/// the first line `root <id>`.
std::string write_generator(const PushdownAlphabet& sigma,
                            const RegularTree& t);
RegularTree read_generator(const PushdownAlphabet& sigma,
                           std::string_view text);

/// Indented text rendering of the unfolding to a depth; addresses listed in
/// `marked` get a `*`.
std::string tree_to_text(const PushdownAlphabet& sigma, const RegularTree& t,
                         std::size_t depth,
                         const std::vector<std::string>& marked);
std::string tree_to_dot(const PushdownAlphabet& sigma, const RegularTree& t,
                        std::size_t depth,
                        const std::vector<std::string>& marked);

} // namespace vldl
