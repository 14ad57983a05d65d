#include "hkcube/config.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

#include "hkcube/error.hpp"
#include "hkcube/zoo.hpp"

namespace hkcube {

namespace {

[[noreturn]] void parse_error(std::size_t line, std::size_t column, const std::string& what) {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ", column " << column << ": ";
  os << what;
  raise(ErrorCode::ParseError, os.str());
}

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

// Splits on whitespace, keeping adjacent parenthesised or bracketed groups
// together so "(1 2)(3 4)" is one token.
std::vector<Token> tokenize(const std::string& line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
      if (line[i] == '(' || line[i] == '[') {
        const char close = line[i] == '(' ? ')' : ']';
        const auto end = line.find(close, i);
        if (end == std::string::npos) {
          parse_error(lineno, i + 1, std::string("unterminated '") + line[i] + "'");
        }
        i = end + 1;
      } else {
        ++i;
      }
    }
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::optional<std::size_t> as_index(const std::string& s) {
  if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
  return std::stoul(s);
}

std::size_t require_count(const Token& t, std::size_t lineno, const std::string& what) {
  const auto v = as_index(t.text);
  if (!v || *v == 0) parse_error(lineno, t.column, "expected a positive integer for " + what);
  return *v;
}

// "[2 3 1]" as a 1-based image list.
Perm parse_image_list(const std::string& text, std::size_t degree, std::size_t line, std::size_t column) {
  const std::string inner = text.substr(1, text.size() - 2);
  std::istringstream is(inner);
  Perm p;
  for (std::string item; is >> item;) {
    const auto v = as_index(item);
    if (!v || *v < 1 || *v > degree) parse_error(line, column, "image '" + item + "' out of range 1.." + std::to_string(degree));
    p.push_back(static_cast<std::uint32_t>(*v - 1));
  }
  if (p.size() != degree) parse_error(line, column, "image list must have " + std::to_string(degree) + " entries");
  std::vector<bool> seen(degree, false);
  for (auto v : p) {
    if (seen[v]) parse_error(line, column, "image list is not a permutation");
    seen[v] = true;
  }
  return p;
}

Perm parse_permutation_text(const std::string& text, std::size_t degree, std::size_t line, std::size_t column) {
  std::size_t lead = 0;
  while (lead < text.size() && std::isspace(static_cast<unsigned char>(text[lead]))) ++lead;
  std::size_t tail = text.size();
  while (tail > lead && std::isspace(static_cast<unsigned char>(text[tail - 1]))) --tail;
  const std::string body = text.substr(lead, tail - lead);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') parse_error(line, column + lead, "unterminated '['");
    return parse_image_list(body, degree, line, column + lead);
  }
  return parse_cycles(text, degree, line, column);
}

struct ElementRef {
  Token token;
  std::size_t line;
};

Elem resolve_element(const FiniteGroup& g, const ElementRef& ref, std::optional<std::size_t> degree) {
  const auto& t = ref.token;
  if (auto idx = as_index(t.text)) {
    if (*idx >= g.order()) parse_error(ref.line, t.column, "element index " + t.text + " out of range");
    return static_cast<Elem>(*idx);
  }
  if (!t.text.empty() && t.text.front() == '(' && degree) {
    const Perm p = parse_cycles(t.text, *degree, ref.line, t.column);
    if (auto e = g.find_permutation(p)) return *e;
    parse_error(ref.line, t.column, "permutation " + t.text + " is not in the group");
  }
  if (auto e = g.find_label(t.text)) return *e;
  parse_error(ref.line, t.column, "unknown element '" + t.text + "'");
}

}  // namespace

Perm parse_cycles(const std::string& text, std::size_t degree, std::size_t line, std::size_t column) {
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0u);
  std::vector<bool> used(degree, false);
  std::size_t i = 0;
  bool any = false;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') parse_error(line, column + i, std::string("expected '(' but found '") + text[i] + "'");
    const std::size_t open = i;
    const auto close = text.find(')', i);
    if (close == std::string::npos) parse_error(line, column + open, "unterminated cycle");
    std::vector<std::uint32_t> cycle;
    std::size_t j = i + 1;
    while (j < close) {
      if (std::isspace(static_cast<unsigned char>(text[j])) || text[j] == ',') {
        ++j;
        continue;
      }
      const std::size_t s = j;
      while (j < close && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (s == j) parse_error(line, column + j, std::string("unexpected character '") + text[j] + "' in cycle");
      const auto v = std::stoul(text.substr(s, j - s));
      if (v < 1 || v > degree) {
        parse_error(line, column + s, "point " + std::to_string(v) + " out of range 1.." + std::to_string(degree));
      }
      if (used[v - 1]) parse_error(line, column + s, "point " + std::to_string(v) + " repeated");
      used[v - 1] = true;
      cycle.push_back(static_cast<std::uint32_t>(v - 1));
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) p[cycle[k]] = cycle[(k + 1) % cycle.size()];
    any = true;
    i = close + 1;
  }
  if (!any) parse_error(line, column, "empty permutation (write () for the identity)");
  return p;
}

SystemPtr parse_config(const std::string& text) {
  enum class GroupKind { None, Builtin, Perm, Table };
  GroupKind kind = GroupKind::None;
  std::string builtin_name;
  std::size_t degree = 0, order = 0, group_line = 0;
  std::vector<Elem> table;
  std::size_t table_rows = 0;
  std::vector<ElementRef> generator_refs;
  std::vector<std::string> labels;
  enum class ActionKind { None, Regular, Coset, Perm };
  ActionKind action = ActionKind::None;
  std::size_t action_line = 0, action_points = 0;
  std::vector<ElementRef> coset_refs;
  std::vector<std::pair<std::string, std::size_t>> perm_lines;  // text, line
  std::optional<std::string> system_name;
  std::string name;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  enum class Block { None, TableRows, ActionPerms } block = Block::None;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = strip_comment(raw);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (block == Block::TableRows) {
      const auto toks = tokenize(line, lineno);
      if (toks.size() != order) {
        parse_error(lineno, 1, "table row needs " + std::to_string(order) + " entries, found " + std::to_string(toks.size()));
      }
      for (const auto& t : toks) {
        const auto v = as_index(t.text);
        if (!v || *v >= order) parse_error(lineno, t.column, "table entry '" + t.text + "' out of range");
        table.push_back(static_cast<Elem>(*v));
      }
      if (++table_rows == order) block = Block::None;
      continue;
    }
    const auto toks = tokenize(line, lineno);
    const std::string& head = toks[0].text;
    auto need = [&](std::size_t count) {
      if (toks.size() < count) parse_error(lineno, toks.back().column + toks.back().text.size(), "missing argument to '" + head + "'");
    };
    if (head == "system") {
      need(2);
      if (toks.size() > 2) parse_error(lineno, toks[2].column, "unexpected token");
      system_name = toks[1].text;
    } else if (head == "name") {
      need(2);
      name = line.substr(toks[1].column - 1);
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
    } else if (head == "group") {
      need(3);
      if (kind != GroupKind::None) parse_error(lineno, 1, "group already defined on line " + std::to_string(group_line));
      group_line = lineno;
      const std::string& sub = toks[1].text;
      if (sub == "builtin") {
        kind = GroupKind::Builtin;
        builtin_name = toks[2].text;
      } else if (sub == "perm") {
        kind = GroupKind::Perm;
        degree = require_count(toks[2], lineno, "degree");
      } else if (sub == "table") {
        kind = GroupKind::Table;
        order = require_count(toks[2], lineno, "order");
        if (order > FiniteGroup::kMaxOrder) parse_error(lineno, toks[2].column, "group order exceeds 4096");
        block = Block::TableRows;
      } else {
        parse_error(lineno, toks[1].column, "unknown group kind '" + sub + "' (builtin, perm, table)");
      }
    } else if (head == "generators") {
      if (kind != GroupKind::Perm && kind != GroupKind::Table) {
        parse_error(lineno, 1, "generators need a preceding 'group perm' or 'group table'");
      }
      for (std::size_t i = 1; i < toks.size(); ++i) generator_refs.push_back({toks[i], lineno});
    } else if (head == "labels") {
      if (kind != GroupKind::Table) parse_error(lineno, 1, "labels apply to 'group table' only");
      for (std::size_t i = 1; i < toks.size(); ++i) labels.push_back(toks[i].text);
    } else if (head == "action") {
      need(2);
      if (action != ActionKind::None) parse_error(lineno, 1, "action already defined on line " + std::to_string(action_line));
      action_line = lineno;
      const std::string& sub = toks[1].text;
      if (sub == "regular") {
        action = ActionKind::Regular;
      } else if (sub == "coset") {
        action = ActionKind::Coset;
        for (std::size_t i = 2; i < toks.size(); ++i) coset_refs.push_back({toks[i], lineno});
      } else if (sub == "perm") {
        need(3);
        action = ActionKind::Perm;
        action_points = require_count(toks[2], lineno, "point count");
        // The generator count is known only once the group is built, so
        // every following non-directive line is taken as a permutation.
        block = Block::ActionPerms;
      } else {
        parse_error(lineno, toks[1].column, "unknown action '" + sub + "' (regular, coset, perm)");
      }
    } else if (block == Block::ActionPerms) {
      perm_lines.emplace_back(line, lineno);
    } else {
      parse_error(lineno, toks[0].column, "unknown directive '" + head + "'");
    }
  }
  if (block == Block::TableRows) parse_error(lineno, 1, "table ends after " + std::to_string(table_rows) + " rows");

  if (system_name) {
    if (kind != GroupKind::None || action != ActionKind::None) {
      parse_error(0, 0, "'system' cannot be combined with group or action sections");
    }
    return builtin_system(*system_name);
  }
  if (kind == GroupKind::None) parse_error(0, 0, "missing group section");
  if (action == ActionKind::None) parse_error(0, 0, "missing action section");

  GroupPtr g;
  std::optional<std::size_t> perm_degree;
  try {
    if (kind == GroupKind::Builtin) {
      if (!generator_refs.empty()) parse_error(generator_refs[0].line, 1, "builtin groups take no generators line");
      g = builtin_group(builtin_name);
      if (g->permutations()) perm_degree = g->permutations()->front().size();
    } else if (kind == GroupKind::Perm) {
      if (generator_refs.empty()) parse_error(group_line, 1, "permutation group needs a generators line");
      std::vector<Perm> gens;
      for (const auto& r : generator_refs) gens.push_back(parse_cycles(r.token.text, degree, r.line, r.token.column));
      g = std::make_shared<const FiniteGroup>(FiniteGroup::from_permutations(gens, degree));
      perm_degree = degree;
    } else {
      if (!labels.empty() && labels.size() != order) parse_error(group_line, 1, "label count does not match order");
      std::vector<Elem> gens;
      for (const auto& r : generator_refs) {
        auto idx = as_index(r.token.text);
        if (!idx && !labels.empty()) {
          const auto it = std::find(labels.begin(), labels.end(), r.token.text);
          if (it != labels.end()) idx = static_cast<std::size_t>(it - labels.begin());
        }
        if (!idx || *idx >= order) parse_error(r.line, r.token.column, "unknown generator '" + r.token.text + "'");
        gens.push_back(static_cast<Elem>(*idx));
      }
      g = std::make_shared<const FiniteGroup>(FiniteGroup::from_table(order, table, labels, gens));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    raise_with_context(e, "group on line " + std::to_string(group_line));
  }

  SystemPtr sys;
  if (action == ActionKind::Regular) {
    sys = regular(g, name.empty() ? "regular" : name);
  } else if (action == ActionKind::Coset) {
    std::vector<Elem> hs;
    for (const auto& r : coset_refs) hs.push_back(resolve_element(*g, r, perm_degree));
    sys = coset(g, generate_subgroup(*g, hs), name.empty() ? "coset" : name);
  } else {
    if (perm_lines.size() != g->generators().size()) {
      parse_error(action_line, 1, "action perm needs one line per group generator (" +
                                      std::to_string(g->generators().size()) + "), found " +
                                      std::to_string(perm_lines.size()));
    }
    std::vector<Perm> perms;
    for (const auto& [t, l] : perm_lines) perms.push_back(parse_permutation_text(t, action_points, l, 1));
    sys = std::make_shared<const FiniteSystem>(
        FiniteSystem::from_generator_action(g, action_points, perms, {}, name.empty() ? "perm action" : name));
  }
  return sys;
}

SystemPtr load_system(const std::string& name_or_path) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(name_or_path, ec)) {
    std::ifstream f(name_or_path);
    std::stringstream ss;
    ss << f.rdbuf();
    try {
      return parse_config(ss.str());
    } catch (const Error& e) {
      raise_with_context(e, name_or_path);
    }
  }
  return builtin_system(name_or_path);
}

}  // namespace hkcube
