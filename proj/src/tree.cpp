#include "vldl/tree.hpp"

#include "vldl/error.hpp"
#include "vldl/text.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vldl {

std::string label_name(const PushdownAlphabet& sigma, TreeLabel label) {
  return label.is_bot() ? "bot" : sigma.name(label.symbol());
}

TreeLabel FiniteTree::at(std::string_view address) const {
  auto it = nodes_.find(std::string(address));
  return it == nodes_.end() ? TreeLabel::bot() : TreeLabel::of(it->second);
}

bool FiniteTree::prefix_closed() const {
  for (const auto& [address, label] : nodes_)
    if (!address.empty() && !nodes_.count(address.substr(0, address.size() - 1)))
      return false;
  return true;
}

RegularTree::RegularTree(std::vector<Node> nodes, std::uint32_t root)
    : nodes_(std::move(nodes)), root_(root) {
  if (nodes_.empty() || root_ >= nodes_.size())
    throw MalformedWitnessError("regular tree without root");
  for (const auto& n : nodes_)
    if (n.left >= nodes_.size() || n.right >= nodes_.size())
      throw MalformedWitnessError("regular tree child out of range");
}

std::uint32_t RegularTree::state_at(std::string_view address) const {
  std::uint32_t s = root_;
  for (char c : address)
    s = c == '0' ? nodes_[s].left : nodes_[s].right;
  return s;
}

FiniteTree RegularTree::truncate(std::size_t depth) const {
  FiniteTree out;
  std::function<void(std::uint32_t, std::string&)> walk =
      [&](std::uint32_t s, std::string& address) {
        const auto& n = nodes_[s];
        if (n.label.is_bot() || address.size() > depth)
          return;
        out.set(address, n.label.symbol());
        address.push_back('0');
        walk(n.left, address);
        address.back() = '1';
        walk(n.right, address);
        address.pop_back();
      };
  std::string address;
  walk(root_, address);
  return out;
}

std::vector<std::string>
RegularTree::cardinal_addresses(const PushdownAlphabet& sigma,
                                std::size_t length) const {
  std::vector<std::string> out;
  std::string address;
  std::uint32_t s = root_;
  while (out.size() < length) {
    const auto& n = nodes_[s];
    if (n.label.is_bot())
      break;
    out.push_back(address);
    bool go_right = false;
    if (sigma.is_call(n.label.symbol())) {
      TreeLabel below = nodes_[n.left].label;
      go_right = below.is_bot() || !sigma.is_return(below.symbol());
    }
    address.push_back(go_right ? '1' : '0');
    s = go_right ? n.right : n.left;
  }
  return out;
}

RegularTree RegularTree::relabel(std::string_view address,
                                 TreeLabel label) const {
  std::vector<Node> nodes = nodes_;
  // Copy every node on the path so the change is local to one address.
  std::uint32_t original = root_;
  nodes.push_back(nodes_[original]);
  std::uint32_t copy = static_cast<std::uint32_t>(nodes.size() - 1);
  const std::uint32_t new_root = copy;
  for (char c : address) {
    std::uint32_t child = c == '0' ? nodes_[original].left
                                   : nodes_[original].right;
    nodes.push_back(nodes_[child]);
    std::uint32_t child_copy = static_cast<std::uint32_t>(nodes.size() - 1);
    if (c == '0')
      nodes[copy].left = child_copy;
    else
      nodes[copy].right = child_copy;
    original = child;
    copy = child_copy;
  }
  nodes[copy].label = label;
  return RegularTree(std::move(nodes), new_root);
}

RegularTree regular_tree(const FiniteTree& t) {
  if (!t.prefix_closed())
    throw std::invalid_argument("tree domain is not prefix-closed");
  std::vector<RegularTree::Node> nodes{{TreeLabel::bot(), 0, 0}};
  std::map<std::string, std::uint32_t> ids;
  for (const auto& [address, a] : t.nodes()) {
    ids.emplace(address, static_cast<std::uint32_t>(nodes.size()));
    nodes.push_back({TreeLabel::of(a), 0, 0});
  }
  for (const auto& [address, id] : ids) {
    if (auto it = ids.find(address + "0"); it != ids.end())
      nodes[id].left = it->second;
    if (auto it = ids.find(address + "1"); it != ids.end())
      nodes[id].right = it->second;
  }
  auto root = ids.find("");
  return RegularTree(std::move(nodes), root == ids.end() ? 0 : root->second);
}

std::string write_generator(const PushdownAlphabet& sigma,
                            const RegularTree& t) {
  std::ostringstream out;
  out << "root " << t.root() << "\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& n = t.node(static_cast<std::uint32_t>(i));
    out << i << " " << label_name(sigma, n.label) << " " << n.left << " "
        << n.right << "\n";
  }
  return out.str();
}

RegularTree read_generator(const PushdownAlphabet& sigma,
                           std::string_view text) {
  std::istringstream in{strip_comments(text)};
  std::string line;
  std::optional<std::uint32_t> root;
  std::vector<std::optional<RegularTree::Node>> nodes;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto words = split_words(line);
    if (words.empty())
      continue;
    try {
      if (words[0] == "root" && words.size() == 2) {
        root = static_cast<std::uint32_t>(std::stoul(words[1]));
        continue;
      }
      if (words.size() != 4)
        throw InputError("expected 'id label left right'", line_no, 1);
      auto id = std::stoul(words[0]);
      TreeLabel label = words[1] == "bot" || words[1] == "⊥"
                            ? TreeLabel::bot()
                            : TreeLabel::of(sigma.symbol(words[1]));
      if (id >= nodes.size())
        nodes.resize(id + 1);
      nodes[id] = RegularTree::Node{
          label, static_cast<std::uint32_t>(std::stoul(words[2])),
          static_cast<std::uint32_t>(std::stoul(words[3]))};
    } catch (const std::logic_error&) {
      throw InputError("malformed generator line", line_no, 1);
    }
  }
  if (!root)
    throw InputError("generator has no 'root' line");
  std::vector<RegularTree::Node> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i])
      throw InputError("generator node " + std::to_string(i) + " missing");
    out.push_back(*nodes[i]);
  }
  try {
    return RegularTree(std::move(out), *root);
  } catch (const MalformedWitnessError& e) {
    throw InputError(e.what());
  }
}

std::string tree_to_text(const PushdownAlphabet& sigma, const RegularTree& t,
                         std::size_t depth,
                         const std::vector<std::string>& marked) {
  std::set<std::string> mark(marked.begin(), marked.end());
  std::string out;
  std::function<void(std::uint32_t, std::string&, const char*)> walk =
      [&](std::uint32_t s, std::string& address, const char* edge) {
        const auto& n = t.node(s);
        out += std::string(2 * address.size(), ' ');
        out += edge;
        out += label_name(sigma, n.label);
        if (mark.count(address))
          out += " *";
        out += "\n";
        if (n.label.is_bot() || address.size() >= depth)
          return;
        address.push_back('0');
        walk(n.left, address, "0: ");
        address.back() = '1';
        walk(n.right, address, "1: ");
        address.pop_back();
      };
  std::string address;
  walk(t.root(), address, "");
  return out;
}

std::string tree_to_dot(const PushdownAlphabet& sigma, const RegularTree& t,
                        std::size_t depth,
                        const std::vector<std::string>& marked) {
  std::set<std::string> mark(marked.begin(), marked.end());
  std::ostringstream out;
  out << "digraph stack_tree {\n  node [shape=circle];\n";
  auto id = [](const std::string& a) { return "n" + (a.empty() ? "e" : a); };
  std::function<void(std::uint32_t, std::string&)> walk =
      [&](std::uint32_t s, std::string& address) {
        const auto& n = t.node(s);
        out << "  " << id(address) << " [label=\"" << label_name(sigma, n.label)
            << "\"" << (mark.count(address) ? ", style=bold, color=red" : "")
            << "];\n";
        if (n.label.is_bot() || address.size() >= depth)
          return;
        for (char c : {'0', '1'}) {
          address.push_back(c);
          walk(c == '0' ? n.left : n.right, address);
          address.pop_back();
          out << "  " << id(address) << " -> " << id(address + c) << ";\n";
        }
      };
  std::string address;
  walk(t.root(), address);
  out << "}\n";
  return out.str();
}

} // namespace vldl
