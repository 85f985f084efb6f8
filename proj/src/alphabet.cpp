#include "vldl/alphabet.hpp"

#include "vldl/error.hpp"
#include "vldl/text.hpp"

#include <algorithm>
#include <regex>
#include <set>

namespace vldl {

const char* kind_name(SymbolKind kind) {
  switch (kind) {
  case SymbolKind::Call:
    return "call";
  case SymbolKind::Return:
    return "return";
  case SymbolKind::Local:
    return "local";
  }
  return "?";
}

PushdownAlphabet::PushdownAlphabet(std::vector<SymbolInfo> symbols)
    : symbols_(std::move(symbols)) {
  if (symbols_.empty())
    throw InputError("alphabet must contain at least one symbol");
  std::set<std::string> props;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    auto& info = symbols_[i];
    if (!is_identifier(info.name))
      throw InputError("invalid symbol name '" + info.name + "'");
    if (!index_.emplace(info.name, static_cast<Symbol>(i)).second)
      throw InputError("symbol '" + info.name + "' declared twice");
    std::sort(info.props.begin(), info.props.end());
    info.props.erase(std::unique(info.props.begin(), info.props.end()),
                     info.props.end());
    props.insert(info.props.begin(), info.props.end());
  }
  all_props_.assign(props.begin(), props.end());
}

PushdownAlphabet PushdownAlphabet::parse(std::string_view text) {
  std::vector<SymbolInfo> symbols;
  std::vector<std::pair<std::string, std::vector<std::string>>> prop_decls;
  for (const auto& stmt : split_statements(text)) {
    auto colon = stmt.text.find(':');
    auto eq = stmt.text.find('=');
    std::string head = trim(stmt.text.substr(
        0, std::min(colon, eq == std::string::npos ? colon : eq)));
    auto words = split_words(head);
    if (!words.empty() && words[0] == "props") {
      if (words.size() != 2 || eq == std::string::npos)
        throw InputError("expected 'props <symbol> = {...}'", stmt.line, 1);
      std::string body = trim(stmt.text.substr(eq + 1));
      if (body.size() < 2 || body.front() != '{' || body.back() != '}')
        throw InputError("expected '{...}' after 'props " + words[1] + " ='",
                         stmt.line, 1);
      std::vector<std::string> names;
      for (auto& p : split_list(body.substr(1, body.size() - 2))) {
        if (!is_identifier(p))
          throw InputError("invalid proposition name '" + p + "'", stmt.line,
                           1);
        names.push_back(p);
      }
      prop_decls.emplace_back(words[1], std::move(names));
      continue;
    }
    if (colon == std::string::npos)
      throw InputError("expected 'calls:', 'returns:', 'locals:' or 'props'",
                       stmt.line, 1);
    SymbolKind kind;
    if (head == "calls")
      kind = SymbolKind::Call;
    else if (head == "returns")
      kind = SymbolKind::Return;
    else if (head == "locals")
      kind = SymbolKind::Local;
    else
      throw InputError("unknown alphabet clause '" + head + "'", stmt.line, 1);
    // Symbols are separated by whitespace or commas.
    std::string names = stmt.text.substr(colon + 1);
    std::replace(names.begin(), names.end(), ',', ' ');
    for (auto& name : split_words(names))
      symbols.push_back({name, kind, {}});
  }
  for (auto& [name, props] : prop_decls) {
    auto it = std::find_if(symbols.begin(), symbols.end(),
                           [&](const SymbolInfo& s) { return s.name == name; });
    if (it == symbols.end())
      throw InputError("props for undeclared symbol '" + name + "'");
    it->props.insert(it->props.end(), props.begin(), props.end());
  }
  return PushdownAlphabet(std::move(symbols));
}

bool PushdownAlphabet::has_prop(Symbol a, std::string_view prop) const {
  const auto& ps = props(a);
  return std::binary_search(ps.begin(), ps.end(), prop);
}

bool PushdownAlphabet::knows_prop(std::string_view prop) const {
  return std::binary_search(all_props_.begin(), all_props_.end(), prop);
}

std::optional<Symbol> PushdownAlphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

Symbol PushdownAlphabet::symbol(std::string_view name) const {
  if (auto a = find(name))
    return *a;
  throw InputError("unknown symbol '" + std::string(name) + "'");
}

std::vector<Symbol> PushdownAlphabet::of_kind(SymbolKind k) const {
  std::vector<Symbol> out;
  for (Symbol a = 0; a < size(); ++a)
    if (kind(a) == k)
      out.push_back(a);
  return out;
}

std::string PushdownAlphabet::to_string() const {
  std::string out;
  const std::pair<SymbolKind, const char*> clauses[] = {
      {SymbolKind::Call, "calls"},
      {SymbolKind::Return, "returns"},
      {SymbolKind::Local, "locals"}};
  for (auto [k, label] : clauses) {
    out += label;
    out += ":";
    for (Symbol a : of_kind(k))
      out += " " + name(a);
    out += ";\n";
  }
  for (Symbol a = 0; a < size(); ++a) {
    if (props(a).empty())
      continue;
    out += "props " + name(a) + " = {" + join(props(a), ", ") + "};\n";
  }
  return out;
}

bool PushdownAlphabet::operator==(const PushdownAlphabet& other) const {
  if (size() != other.size())
    return false;
  for (Symbol a = 0; a < size(); ++a) {
    const auto& x = symbols_[a];
    const auto& y = other.symbols_[a];
    if (x.name != y.name || x.kind != y.kind || x.props != y.props)
      return false;
  }
  return true;
}

AlphabetRef default_alphabet() {
  static const AlphabetRef sigma = std::make_shared<const PushdownAlphabet>(
      std::vector<PushdownAlphabet::SymbolInfo>{
          {"c", SymbolKind::Call, {}},
          {"r", SymbolKind::Return, {}},
          {"l", SymbolKind::Local, {}}});
  return sigma;
}

namespace {

FiniteWord primitive_root(const FiniteWord& v) {
  const std::size_t n = v.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0)
      continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i)
      periodic = v[i] == v[i - d];
    if (periodic)
      return FiniteWord(v.begin(), v.begin() + d);
  }
  return v;
}

} // namespace

LassoWord::LassoWord(FiniteWord prefix, FiniteWord period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty())
    throw InputError("lasso period must be nonempty");
  period_ = primitive_root(period_);
  while (!prefix_.empty() && prefix_.back() == period_.back()) {
    prefix_.pop_back();
    std::rotate(period_.begin(), period_.end() - 1, period_.end());
  }
}

Symbol LassoWord::at(Position i) const {
  if (i < prefix_.size())
    return prefix_[i];
  return period_[(i - prefix_.size()) % period_.size()];
}

Position LassoWord::position_class(Position i) const {
  if (i < prefix_.size())
    return i;
  return prefix_.size() + (i - prefix_.size()) % period_.size();
}

int stack_delta(const PushdownAlphabet& sigma, Symbol a) {
  if (a >= sigma.size())
    throw InputError("symbol index " + std::to_string(a) +
                     " is not in the alphabet");
  switch (sigma.kind(a)) {
  case SymbolKind::Call:
    return 1;
  case SymbolKind::Return:
    return -1;
  case SymbolKind::Local:
    return 0;
  }
  return 0;
}

std::size_t stack_height(const PushdownAlphabet& sigma,
                         std::span<const Symbol> w) {
  std::size_t h = 0;
  for (Symbol a : w) {
    int d = stack_delta(sigma, a);
    if (d > 0)
      ++h;
    else if (d < 0 && h > 0)
      --h;
  }
  return h;
}

bool is_well_matched(const PushdownAlphabet& sigma,
                     std::span<const Symbol> w) {
  std::size_t depth = 0;
  for (Symbol a : w) {
    int d = stack_delta(sigma, a);
    if (d > 0) {
      ++depth;
    } else if (d < 0) {
      if (depth == 0)
        return false;
      --depth;
    }
  }
  return depth == 0;
}

std::optional<std::size_t> matching_return(const PushdownAlphabet& sigma,
                                           std::span<const Symbol> w,
                                           std::size_t k) {
  if (k >= w.size() || !sigma.is_call(w[k]))
    throw InputError("position " + std::to_string(k) + " is not a call");
  std::size_t rel = 1;
  for (std::size_t i = k + 1; i < w.size(); ++i) {
    int d = stack_delta(sigma, w[i]);
    if (d > 0) {
      ++rel;
    } else if (d < 0 && --rel == 0) {
      return i;
    }
  }
  return std::nullopt;
}

std::optional<Position> matching_return(const PushdownAlphabet& sigma,
                                        const LassoWord& alpha, Position k) {
  if (!sigma.is_call(alpha.at(k)))
    throw InputError("position " + std::to_string(k) + " is not a call");
  const std::size_t u = alpha.prefix().size();
  const std::size_t n = alpha.period().size();
  // rel is the height above the level of the call; the match is the first
  // position that brings it back to zero.
  std::int64_t rel = 1;
  Position pos = k + 1;
  while (pos < u || (pos - u) % n != 0) {
    rel += stack_delta(sigma, alpha.at(pos));
    if (rel == 0)
      return pos;
    ++pos;
  }
  std::int64_t drift = 0;
  std::int64_t lowest = 0;
  for (Symbol a : alpha.period()) {
    drift += stack_delta(sigma, a);
    lowest = std::min(lowest, drift);
  }
  if (rel + lowest > 0) {
    if (drift >= 0)
      return std::nullopt;
    // Skip whole periods that cannot reach the level of the call.
    const std::int64_t skip = (rel + lowest + (-drift) - 1) / (-drift);
    pos += static_cast<Position>(skip) * n;
    rel += skip * drift;
  }
  for (std::size_t t = 0; t < n; ++t) {
    rel += stack_delta(sigma, alpha.period()[t]);
    if (rel == 0)
      return pos + t;
  }
  throw std::logic_error("matching_return: period arithmetic out of sync");
}

std::vector<Position> cardinal_positions(const PushdownAlphabet& sigma,
                                         const LassoWord& alpha,
                                         Position horizon) {
  if (horizon < alpha.class_count())
    throw InputError("horizon must cover the prefix and one period");
  std::vector<Position> out;
  Position i = 0;
  while (i < horizon) {
    out.push_back(i);
    if (sigma.is_call(alpha.at(i))) {
      if (auto j = matching_return(sigma, alpha, i)) {
        i = *j;
        continue;
      }
    }
    ++i;
  }
  return out;
}

std::vector<Position> steps(const PushdownAlphabet& sigma,
                            const LassoWord& alpha, Position horizon) {
  // Heights are floored at zero, so once a period is entered every later
  // period starts no lower (drift >= 0) or the walk settles at the floor
  // within a bounded number of periods (drift < 0).  Simulating far enough
  // past each candidate covers every future minimum.
  const std::size_t n = alpha.period().size();
  std::vector<std::size_t> before;
  std::size_t h = 0;
  auto extend = [&](Position upto) {
    while (before.size() <= upto) {
      before.push_back(h);
      int d = stack_delta(sigma, alpha.at(before.size() - 1));
      if (d > 0)
        ++h;
      else if (d < 0 && h > 0)
        --h;
    }
  };
  std::vector<Position> out;
  for (Position k = 0; k < horizon; ++k) {
    extend(k);
    const Position look = k + alpha.class_count() + (before[k] + 3) * n;
    extend(look + 1);
    bool step = true;
    for (Position j = k + 1; j <= look + 1 && step; ++j)
      step = before[k] <= before[j];
    if (step)
      out.push_back(k);
  }
  return out;
}

FiniteWord parse_word(const PushdownAlphabet& sigma, std::string_view text) {
  FiniteWord w;
  for (auto& name : split_words(text)) {
    if (name == "eps" || name == "ε")
      continue;
    w.push_back(sigma.symbol(name));
  }
  return w;
}

bool looks_like_lasso(std::string_view text) {
  return text.find(")^") != std::string_view::npos;
}

LassoWord parse_lasso(const PushdownAlphabet& sigma, std::string_view text) {
  static const std::regex shape(R"(^([^()]*)\(([^()]*)\)\^(w|omega|ω)\s*$)");
  std::string s = trim(std::string(text));
  std::smatch m;
  if (!std::regex_match(s, m, shape))
    throw InputError("expected a lasso of the form 'u (v)^w', got '" + s +
                     "'");
  FiniteWord u = parse_word(sigma, m[1].str());
  FiniteWord v = parse_word(sigma, m[2].str());
  if (v.empty())
    throw InputError("lasso period must be nonempty");
  return LassoWord(std::move(u), std::move(v));
}

std::string format_word(const PushdownAlphabet& sigma,
                        std::span<const Symbol> w) {
  std::string out;
  for (Symbol a : w) {
    if (!out.empty())
      out += ' ';
    out += sigma.name(a);
  }
  return out;
}

std::string format_lasso(const PushdownAlphabet& sigma,
                         const LassoWord& alpha) {
  std::string u = format_word(sigma, alpha.prefix());
  std::string v = "(" + format_word(sigma, alpha.period()) + ")^w";
  return u.empty() ? v : u + " " + v;
}

} // namespace vldl
