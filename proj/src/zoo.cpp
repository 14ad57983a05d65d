#include "hkcube/zoo.hpp"

#include <numeric>
#include <sstream>

#include "hkcube/error.hpp"

namespace hkcube {

using nlohmann::json;

namespace {

bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t k = 2; k * k <= p; ++k)
    if (p % k == 0) return false;
  return true;
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 6) {
    raise(ErrorCode::InvalidParameter, "expected a positive integer for " + what + ", got '" + s + "'");
  }
  return std::stoul(s);
}

Perm cycle_perm(std::size_t n, const std::vector<std::uint32_t>& cycle) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0u);
  for (std::size_t i = 0; i < cycle.size(); ++i) p[cycle[i]] = cycle[(i + 1) % cycle.size()];
  return p;
}

SystemPtr require_minimal(FiniteSystem sys) {
  if (!is_minimal(sys)) raise(ErrorCode::InvalidParameter, "system " + sys.name() + " is not minimal");
  return std::make_shared<const FiniteSystem>(std::move(sys));
}

// Splits at the first top-level occurrence of `sep` outside brackets.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

GroupPtr cyclic_group(std::size_t n) {
  if (n < 1 || n > FiniteGroup::kMaxOrder) raise(ErrorCode::InvalidParameter, "cyclic order out of range");
  std::vector<Elem> table(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    labels[a] = std::to_string(a);
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Elem>((a + b) % n);
  }
  std::vector<Elem> gens;
  if (n > 1) gens.push_back(1);
  return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(n, std::move(table), std::move(labels), gens));
}

GroupPtr dihedral_group(std::size_t n) {
  if (n < 3 || 2 * n > FiniteGroup::kMaxOrder) raise(ErrorCode::InvalidParameter, "dihedral needs n >= 3");
  std::vector<std::uint32_t> all(n);
  std::iota(all.begin(), all.end(), 0u);
  Perm rot = cycle_perm(n, all);
  Perm refl(n);
  for (std::size_t i = 0; i < n; ++i) refl[i] = static_cast<std::uint32_t>((n - i) % n);
  return std::make_shared<const FiniteGroup>(FiniteGroup::from_permutations({rot, refl}, n));
}

GroupPtr heisenberg_group(std::size_t p) {
  if (!is_prime(p) || p * p * p > FiniteGroup::kMaxOrder) {
    raise(ErrorCode::InvalidParameter, "heisenberg needs a prime p with p^3 <= 4096");
  }
  const std::size_t n = p * p * p;
  auto idx = [p](std::size_t a, std::size_t b, std::size_t c) { return static_cast<Elem>(a + p * b + p * p * c); };
  std::vector<Elem> table(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t a = x % p, b = (x / p) % p, c = x / (p * p);
    labels[x] = "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t a2 = y % p, b2 = (y / p) % p, c2 = y / (p * p);
      table[x * n + y] = idx((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
    }
  }
  return std::make_shared<const FiniteGroup>(
      FiniteGroup::from_table(n, std::move(table), std::move(labels), {idx(1, 0, 0), idx(0, 1, 0)}));
}

GroupPtr symmetric_group(std::size_t n) {
  if (n < 1 || n > 6) raise(ErrorCode::InvalidParameter, "symmetric group supported for 1 <= n <= 6");
  if (n == 1) return std::make_shared<const FiniteGroup>(FiniteGroup::from_permutations({Perm{0}}, 1));
  std::vector<std::uint32_t> all(n);
  std::iota(all.begin(), all.end(), 0u);
  std::vector<Perm> gens{cycle_perm(n, {0, 1})};
  if (n > 2) gens.push_back(cycle_perm(n, all));
  return std::make_shared<const FiniteGroup>(FiniteGroup::from_permutations(gens, n));
}

GroupPtr alternating_group(std::size_t n) {
  if (n < 3 || n > 7) raise(ErrorCode::InvalidParameter, "alternating group supported for 3 <= n <= 7");
  std::vector<Perm> gens;
  for (std::uint32_t k = 2; k < n; ++k) gens.push_back(cycle_perm(n, {0, 1, k}));
  return std::make_shared<const FiniteGroup>(FiniteGroup::from_permutations(gens, n));
}

GroupPtr a5_group() {
  auto g = std::make_shared<const FiniteGroup>(
      FiniteGroup::from_permutations({cycle_perm(5, {0, 1, 2, 3, 4}), cycle_perm(5, {0, 1, 2})}, 5));
  if (g->order() != 60) raise(ErrorCode::InternalInvariantViolation, "A5 generators produced the wrong order");
  return g;
}

GroupPtr direct_product(const std::vector<GroupPtr>& factors) {
  if (factors.empty()) raise(ErrorCode::InvalidParameter, "direct product needs a factor");
  std::size_t n = 1;
  for (const auto& f : factors) {
    n *= f->order();
    if (n > FiniteGroup::kMaxOrder) raise(ErrorCode::TooLarge, "direct product exceeds 4096 elements");
  }
  auto digits = [&](std::size_t x) {
    std::vector<Elem> d;
    for (const auto& f : factors) {
      d.push_back(static_cast<Elem>(x % f->order()));
      x /= f->order();
    }
    return d;
  };
  auto compose = [&](const std::vector<Elem>& d) {
    std::size_t x = 0, scale = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      x += scale * d[i];
      scale *= factors[i]->order();
    }
    return static_cast<Elem>(x);
  };
  std::vector<Elem> table(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto dx = digits(x);
    std::string lab = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) lab += (i ? "," : "") + factors[i]->label(dx[i]);
    labels[x] = lab + ")";
    for (std::size_t y = 0; y < n; ++y) {
      const auto dy = digits(y);
      std::vector<Elem> dz(factors.size());
      for (std::size_t i = 0; i < factors.size(); ++i) dz[i] = factors[i]->mul(dx[i], dy[i]);
      table[x * n + y] = compose(dz);
    }
  }
  std::vector<Elem> gens;
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (Elem s : factors[i]->generators()) {
      std::vector<Elem> d(factors.size());
      for (std::size_t j = 0; j < factors.size(); ++j) d[j] = factors[j]->identity();
      d[i] = s;
      gens.push_back(compose(d));
    }
  return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(n, std::move(table), std::move(labels), gens));
}

SystemPtr regular(const GroupPtr& g, std::string name) {
  const std::size_t n = g->order();
  std::vector<Point> action(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem x = 0; x < n; ++x) action[a * n + x] = g->mul(a, x);
  return require_minimal(FiniteSystem(g, n, std::move(action), g->labels(), name.empty() ? "regular" : name));
}

SystemPtr rotation(std::size_t n) { return regular(cyclic_group(n), "rotation:" + std::to_string(n)); }

SystemPtr coset(const GroupPtr& g, const Subgroup& h, std::string name) {
  for (Elem e : h.members)
    if (!g->valid(e)) raise(ErrorCode::InvalidElement, "subgroup element out of range");
  const std::size_t n = g->order();
  std::vector<std::size_t> coset_of(n, n);
  std::vector<Elem> reps;
  for (Elem a = 0; a < n; ++a) {
    if (coset_of[a] != n) continue;
    for (Elem k : h.members) coset_of[g->mul(a, k)] = reps.size();
    reps.push_back(a);
  }
  const std::size_t m = reps.size();
  std::vector<Point> action(n * m);
  std::vector<std::string> labels;
  for (Elem r : reps) labels.push_back(g->label(r) + "H");
  for (Elem a = 0; a < n; ++a)
    for (std::size_t c = 0; c < m; ++c) action[a * m + c] = static_cast<Point>(coset_of[g->mul(a, reps[c])]);
  return require_minimal(FiniteSystem(g, m, std::move(action), std::move(labels), name.empty() ? "coset" : name));
}

SystemPtr heisenberg_mod(std::size_t p) { return regular(heisenberg_group(p), "heisenberg:" + std::to_string(p)); }

SystemPtr a5_regular() { return regular(a5_group(), "a5"); }

SystemPtr natural(const GroupPtr& g, std::string name) {
  if (!g->permutations()) raise(ErrorCode::InvalidParameter, "natural action needs a permutation group");
  const auto& perms = *g->permutations();
  const std::size_t deg = perms.front().size();
  std::vector<Point> action(g->order() * deg);
  for (Elem a = 0; a < g->order(); ++a)
    for (std::size_t x = 0; x < deg; ++x) action[a * deg + x] = perms[a][x];
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < deg; ++x) labels.push_back(std::to_string(x + 1));
  return require_minimal(FiniteSystem(g, deg, std::move(action), std::move(labels), name.empty() ? "natural" : name));
}

SystemPtr dihedral(std::size_t n) { return natural(dihedral_group(n), "dihedral:" + std::to_string(n)); }

SystemPtr product_of(const std::vector<SystemPtr>& systems) {
  if (systems.empty()) raise(ErrorCode::InvalidParameter, "product needs a factor");
  std::vector<GroupPtr> groups;
  std::size_t points = 1;
  std::string name;
  for (const auto& s : systems) {
    groups.push_back(s->group_ptr());
    points *= s->size();
    if (points > 65535) raise(ErrorCode::TooLarge, "product phase space too large");
    name += (name.empty() ? "product:" : "*") + s->name();
  }
  const auto g = direct_product(groups);
  std::vector<Point> action(g->order() * points);
  std::vector<std::string> labels(points);
  for (Elem a = 0; a < g->order(); ++a) {
    std::size_t rest_a = a;
    std::vector<Elem> da;
    for (const auto& s : systems) {
      da.push_back(static_cast<Elem>(rest_a % s->group().order()));
      rest_a /= s->group().order();
    }
    for (std::size_t x = 0; x < points; ++x) {
      std::size_t rest = x, img = 0, scale = 1;
      std::string lab = "(";
      for (std::size_t i = 0; i < systems.size(); ++i) {
        const Point xi = static_cast<Point>(rest % systems[i]->size());
        rest /= systems[i]->size();
        img += scale * systems[i]->act(da[i], xi);
        scale *= systems[i]->size();
        lab += (i ? "," : "") + systems[i]->label(xi);
      }
      action[a * points + x] = static_cast<Point>(img);
      if (a == 0) labels[x] = lab + ")";
    }
  }
  return require_minimal(FiniteSystem(g, points, std::move(action), std::move(labels), name));
}

GroupPtr builtin_group(const std::string& spec) {
  const auto factors = split_top(spec, '*');
  if (factors.size() > 1) {
    std::vector<GroupPtr> gs;
    for (const auto& f : factors) gs.push_back(builtin_group(f));
    return direct_product(gs);
  }
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "a5" && arg.empty()) return a5_group();
  if (head == "s3" && arg.empty()) return symmetric_group(3);
  if (head == "cyclic" || head == "rotation") return cyclic_group(parse_count(arg, head));
  if (head == "dihedral") return dihedral_group(parse_count(arg, head));
  if (head == "heisenberg") return heisenberg_group(parse_count(arg, head));
  if (head == "symmetric") return symmetric_group(parse_count(arg, head));
  if (head == "alternating") return alternating_group(parse_count(arg, head));
  raise(ErrorCode::InvalidParameter, "unknown group '" + spec + "'");
}

SystemPtr builtin_system(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "rotation") return rotation(parse_count(arg, head));
  if (head == "heisenberg") return heisenberg_mod(parse_count(arg, head));
  if (head == "a5" && arg.empty()) return a5_regular();
  if (head == "s3" && arg.empty()) return regular(symmetric_group(3), "s3");
  if (head == "dihedral") return dihedral(parse_count(arg, head));
  if (head == "regular") return regular(builtin_group(arg), spec);
  if (head == "natural") return natural(builtin_group(arg), spec);
  if (head == "coset") {
    const auto slash = arg.rfind('/');
    if (slash == std::string::npos) raise(ErrorCode::InvalidParameter, "coset spec needs '<group>/<i>,<j>,...'");
    const auto g = builtin_group(arg.substr(0, slash));
    std::vector<Elem> gens;
    std::stringstream ss(arg.substr(slash + 1));
    for (std::string item; std::getline(ss, item, ',');) {
      const auto e = parse_count(item, "subgroup generator");
      if (!g->valid(static_cast<Elem>(e))) raise(ErrorCode::InvalidElement, "subgroup generator out of range");
      gens.push_back(static_cast<Elem>(e));
    }
    return coset(g, generate_subgroup(*g, gens), spec);
  }
  if (head == "product") {
    std::vector<SystemPtr> parts;
    for (const auto& s : split_top(arg, '*')) parts.push_back(builtin_system(s));
    return product_of(parts);
  }
  raise(ErrorCode::InvalidParameter, "unknown system '" + spec + "'");
}

std::vector<std::string> zoo_catalog() {
  return {"rotation:1",       "rotation:2",     "rotation:3",      "rotation:4",    "rotation:5",
          "rotation:6",       "rotation:7",     "rotation:8",      "s3",            "heisenberg:2",
          "dihedral:3",       "dihedral:4",     "dihedral:5",      "regular:dihedral:4",
          "regular:cyclic:2*cyclic:2",          "regular:cyclic:2*cyclic:4",       "coset:s3/1",
          "product:rotation:2*rotation:3",      "natural:symmetric:4", "natural:alternating:4",
          "a5",               "heisenberg:3"};
}

CheckReport sturmian_orientation_demo(std::int64_t q, std::int64_t p, std::int64_t n_max, std::int64_t half) {
  if (q < 4) raise(ErrorCode::InvalidParameter, "modulus must be at least 4");
  if (std::gcd(p, q) != 1) raise(ErrorCode::InvalidParameter, "rotation step must be coprime to the modulus");
  if (half < 1 || 2 * half >= q) raise(ErrorCode::InvalidParameter, "window must satisfy 1 <= half < q/2");
  if (n_max < 0) raise(ErrorCode::InvalidParameter, "n_max must be non-negative");
  auto mod = [q](std::int64_t v) { return ((v % q) + q) % q; };
  // +1 counterclockwise within half a turn, -1 clockwise, 0 coincident,
  // 2 antipodal.
  auto orientation = [&](std::int64_t w, std::int64_t y) {
    const std::int64_t diff = mod(y - w);
    if (diff == 0) return 0;
    if (2 * diff == q) return 2;
    return 2 * diff < q ? 1 : -1;
  };
  std::vector<std::int64_t> arc_a, arc_b;
  for (std::int64_t k = 0; k < half; ++k) arc_a.push_back(k);
  for (std::int64_t k = q - half + 1; k <= q; ++k) arc_b.push_back(mod(k));

  CheckReport rep;
  rep.check = "sturmian_orientation";
  std::uint64_t flips = 0;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    const std::int64_t shift = mod(n * mod(p));
    for (std::int64_t w : arc_a)
      for (std::int64_t y : arc_b) {
        ++rep.cases;
        const int before = orientation(w, y);
        const int after = orientation(mod(w + shift), mod(y + shift));
        if (before != after) {
          ++flips;
          rep.fail({{"n", n}, {"w", w}, {"y", y}, {"before", before}, {"after", after}});
        }
      }
  }
  rep.details = {{"q", q},
                 {"p", p},
                 {"n_max", n_max},
                 {"half", half},
                 {"arc_low", arc_a},
                 {"arc_high", arc_b},
                 {"orientation_flips", flips},
                 {"note",
                  "Exact stand-in for the circle at resolution 1/q. Rotating a pair that straddles 0 never reverses "
                  "its cyclic orientation, so a point just above 0 and a point just below 0 keep their order along "
                  "every orbit segment. The glued configuration (0+, 0-, 0-, 0+) would need that order reversed on "
                  "one face, which is why the Sturmian cubespace fails glueing. This is a demonstration of that "
                  "fact, not a verification of non-fibrancy."}};
  return rep;
}

}  // namespace hkcube
