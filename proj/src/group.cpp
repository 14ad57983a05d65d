#include "hkcube/group.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <sstream>

#include "hkcube/error.hpp"

namespace hkcube {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidElement: return "InvalidElement";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NotMember: return "NotMember";
    case ErrorCode::InvalidLetter: return "InvalidLetter";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InternalInvariantViolation: return "InternalInvariantViolation";
    case ErrorCode::NotEquivalence: return "NotEquivalence";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::NotMinimal: return "NotMinimal";
    case ErrorCode::InvalidVertexSet: return "InvalidVertexSet";
    case ErrorCode::TargetNotOrderD: return "TargetNotOrderD";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::InvalidSystem: return "InvalidSystem";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TooLarge: return "TooLarge";
  }
  return "Unknown";
}

namespace {

std::atomic<std::uint64_t> next_uid{1};

constexpr std::size_t kExhaustiveAssociativity = 256;
constexpr std::size_t kAssociativitySamples = 200000;

void check_element(const FiniteGroup& g, Elem e) {
  if (!g.valid(e)) {
    raise(ErrorCode::InvalidElement,
          "element " + std::to_string(e) + " outside group of order " +
              std::to_string(g.order()));
  }
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::size_t order, std::vector<Elem> table,
                                    std::vector<std::string> labels,
                                    std::vector<Elem> generators) {
  if (order == 0) raise(ErrorCode::InvalidParameter, "group order must be positive");
  if (order > kMaxOrder) {
    raise(ErrorCode::TooLarge, "group order " + std::to_string(order) +
                                   " exceeds table limit " + std::to_string(kMaxOrder));
  }
  if (table.size() != order * order) {
    raise(ErrorCode::InvalidParameter, "multiplication table must have order^2 entries");
  }
  for (Elem e : table) {
    if (e >= order) raise(ErrorCode::InvalidElement, "table entry " + std::to_string(e) + " out of range");
  }
  FiniteGroup g;
  g.order_ = order;
  g.table_ = std::move(table);

  std::optional<Elem> id;
  for (Elem e = 0; e < order && !id; ++e) {
    bool ok = true;
    for (Elem a = 0; a < order && ok; ++a) {
      ok = g.mul(e, a) == a && g.mul(a, e) == a;
    }
    if (ok) id = e;
  }
  if (!id) raise(ErrorCode::InvalidSystem, "multiplication table has no identity");
  g.identity_ = *id;

  g.inverse_.assign(order, order);
  for (Elem a = 0; a < order; ++a) {
    for (Elem b = 0; b < order; ++b) {
      if (g.mul(a, b) == g.identity_) {
        if (g.mul(b, a) != g.identity_) {
          raise(ErrorCode::InvalidSystem, "one-sided inverse for element " + std::to_string(a));
        }
        g.inverse_[a] = b;
        break;
      }
    }
    if (g.inverse_[a] == order) {
      raise(ErrorCode::InvalidSystem, "element " + std::to_string(a) + " has no inverse");
    }
  }

  auto assoc_fail = [&](Elem a, Elem b, Elem c) {
    std::ostringstream os;
    os << "associativity fails for (" << a << ", " << b << ", " << c << ")";
    raise(ErrorCode::InvalidSystem, os.str());
  };
  if (order <= kExhaustiveAssociativity) {
    for (Elem a = 0; a < order; ++a)
      for (Elem b = 0; b < order; ++b) {
        const Elem ab = g.mul(a, b);
        for (Elem c = 0; c < order; ++c) {
          if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) assoc_fail(a, b, c);
        }
      }
  } else {
    std::mt19937_64 rng(order);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(order - 1));
    for (std::size_t i = 0; i < kAssociativitySamples; ++i) {
      const Elem a = pick(rng), b = pick(rng), c = pick(rng);
      if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) assoc_fail(a, b, c);
    }
  }

  if (labels.empty()) {
    labels.reserve(order);
    for (Elem a = 0; a < order; ++a) labels.push_back(std::to_string(a));
  } else if (labels.size() != order) {
    raise(ErrorCode::InvalidParameter, "label count does not match group order");
  }
  g.labels_ = std::move(labels);
  for (Elem e : generators) check_element(g, e);
  g.finish(std::move(generators));
  return g;
}

void FiniteGroup::finish(std::vector<Elem> generators) {
  uid_ = next_uid.fetch_add(1);
  std::vector<Elem> gens;
  for (Elem e : generators) {
    if (e != identity_ && std::find(gens.begin(), gens.end(), e) == gens.end()) gens.push_back(e);
  }
  if (gens.empty() && order_ > 1) {
    // Greedy: add the smallest element not yet generated.
    Subgroup current = generate_subgroup(*this, gens);
    while (current.size() < order_) {
      Elem next = 0;
      while (current.contains(next)) ++next;
      gens.push_back(next);
      current = generate_subgroup(*this, gens);
    }
  } else if (!gens.empty()) {
    if (generate_subgroup(*this, gens).size() != order_) {
      raise(ErrorCode::InvalidParameter, "declared generators do not generate the group");
    }
  }
  generators_ = std::move(gens);
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<Perm>& gens,
                                           std::size_t degree) {
  if (degree == 0) raise(ErrorCode::InvalidParameter, "permutation degree must be positive");
  for (const Perm& p : gens) {
    if (p.size() != degree) raise(ErrorCode::InvalidParameter, "permutation of wrong degree");
    std::vector<bool> seen(degree, false);
    for (auto v : p) {
      if (v >= degree || seen[v]) raise(ErrorCode::InvalidParameter, "not a permutation: " + cycle_string(p));
      seen[v] = true;
    }
  }
  auto compose = [degree](const Perm& p, const Perm& q) {
    Perm r(degree);
    for (std::size_t i = 0; i < degree; ++i) r[i] = p[q[i]];
    return r;
  };
  Perm id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<std::uint32_t>(i);

  std::vector<Perm> elems{id};
  std::map<Perm, Elem> index{{id, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const Perm& s : gens) {
      Perm next = compose(elems[head], s);
      if (index.count(next)) continue;
      if (elems.size() >= kMaxOrder) {
        raise(ErrorCode::TooLarge, "generated permutation group exceeds " + std::to_string(kMaxOrder) + " elements");
      }
      index.emplace(next, static_cast<Elem>(elems.size()));
      elems.push_back(std::move(next));
    }
  }
  const std::size_t n = elems.size();
  FiniteGroup g;
  g.order_ = n;
  g.identity_ = 0;
  g.table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g.table_[a * n + b] = index.at(compose(elems[a], elems[b]));
  g.inverse_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    Perm inv(degree);
    for (std::size_t i = 0; i < degree; ++i) inv[elems[a][i]] = static_cast<std::uint32_t>(i);
    g.inverse_[a] = index.at(inv);
  }
  for (const Perm& p : elems) g.labels_.push_back(cycle_string(p));
  std::vector<Elem> gen_idx;
  for (const Perm& s : gens) gen_idx.push_back(index.at(s));
  g.perms_ = std::move(elems);
  g.finish(std::move(gen_idx));
  return g;
}

std::optional<Elem> FiniteGroup::find_permutation(const Perm& p) const {
  if (!perms_) return std::nullopt;
  for (Elem a = 0; a < order_; ++a)
    if ((*perms_)[a] == p) return a;
  return std::nullopt;
}

std::optional<Elem> FiniteGroup::find_label(const std::string& label) const {
  for (Elem a = 0; a < order_; ++a)
    if (labels_[a] == label) return a;
  return std::nullopt;
}

bool FiniteGroup::is_abelian() const {
  for (Elem a : generators_)
    for (Elem b : generators_)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool Subgroup::contains(Elem e) const {
  return std::binary_search(members.begin(), members.end(), e);
}

Subgroup generate_subgroup(const FiniteGroup& g, std::span<const Elem> gens) {
  for (Elem e : gens) check_element(g, e);
  std::vector<bool> in(g.order(), false);
  std::vector<Elem> members{g.identity()};
  in[g.identity()] = true;
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (Elem s : gens) {
      const Elem next = g.mul(members[head], s);
      if (!in[next]) {
        in[next] = true;
        members.push_back(next);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return Subgroup{std::move(members), std::vector<Elem>(gens.begin(), gens.end())};
}

Subgroup whole_group(const FiniteGroup& g) {
  return generate_subgroup(g, g.generators());
}

Subgroup trivial_subgroup(const FiniteGroup& g) { return generate_subgroup(g, {}); }

Elem commutator(const FiniteGroup& g, Elem a, Elem b) {
  check_element(g, a);
  check_element(g, b);
  return g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
}

Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& a,
                             const Subgroup& b) {
  std::vector<bool> seen(g.order(), false);
  std::vector<Elem> gens;
  for (Elem x : a.members)
    for (Elem y : b.members) {
      const Elem c = commutator(g, x, y);
      if (c != g.identity() && !seen[c]) {
        seen[c] = true;
        gens.push_back(c);
      }
    }
  return generate_subgroup(g, gens);
}

std::vector<Subgroup> lower_central_series(const FiniteGroup& g) {
  const Subgroup all = whole_group(g);
  std::vector<Subgroup> series{all};
  while (true) {
    Subgroup next = commutator_subgroup(g, all, series.back());
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

Subgroup lower_central_term(const FiniteGroup& g, std::size_t i) {
  if (i == 0) raise(ErrorCode::InvalidIndex, "lower central series is indexed from 1");
  auto series = lower_central_series(g);
  return series[std::min(i, series.size()) - 1];
}

std::optional<std::size_t> nilpotency_class(const FiniteGroup& g) {
  auto series = lower_central_series(g);
  if (series.back().size() != 1) return std::nullopt;
  return series.size() - 1;
}

bool is_perfect(const FiniteGroup& g) {
  const Subgroup all = whole_group(g);
  return commutator_subgroup(g, all, all).size() == g.order();
}

bool is_normal(const FiniteGroup& g, const Subgroup& n) {
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem m : n.members)
      if (!n.contains(g.mul(g.mul(x, m), g.inv(x)))) return false;
  return true;
}

Quotient quotient_group(const FiniteGroup& g, const Subgroup& n) {
  if (n.members.empty() || !n.contains(g.identity())) {
    raise(ErrorCode::InvalidParameter, "subgroup must contain the identity");
  }
  if (!is_normal(g, n)) raise(ErrorCode::NotNormal, "subgroup is not normal");
  const std::size_t none = g.order();
  std::vector<Elem> map(g.order(), static_cast<Elem>(none));
  std::vector<Elem> reps;
  for (Elem x = 0; x < g.order(); ++x) {
    if (map[x] != none) continue;
    const Elem c = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem m : n.members) map[g.mul(x, m)] = c;
  }
  const std::size_t k = reps.size();
  std::vector<Elem> table(k * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) table[a * k + b] = map[g.mul(reps[a], reps[b])];
  std::vector<std::string> labels;
  for (Elem r : reps) labels.push_back(g.label(r) + "N");
  std::vector<Elem> gens;
  for (Elem s : g.generators()) gens.push_back(map[s]);
  FiniteGroup q = FiniteGroup::from_table(k, std::move(table), std::move(labels), std::move(gens));
  return Quotient{std::move(q), std::move(map)};
}

Quotient abelianization(const FiniteGroup& g) {
  const Subgroup all = whole_group(g);
  return quotient_group(g, commutator_subgroup(g, all, all));
}

bool is_homomorphism(const FiniteGroup& from, const FiniteGroup& to,
                     std::span<const Elem> map) {
  if (map.size() != from.order()) return false;
  std::vector<bool> hit(to.order(), false);
  for (Elem a = 0; a < from.order(); ++a) {
    if (!to.valid(map[a])) return false;
    hit[map[a]] = true;
    for (Elem b = 0; b < from.order(); ++b)
      if (map[from.mul(a, b)] != to.mul(map[a], map[b])) return false;
  }
  return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
}

std::string cycle_string(const Perm& p) {
  std::ostringstream os;
  std::vector<bool> done(p.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (done[i] || p[i] == i) continue;
    any = true;
    os << '(';
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = true;
      if (!first) os << ' ';
      os << j + 1;
      first = false;
      j = p[j];
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

}  // namespace hkcube
