#include "hkcube/system.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hkcube/error.hpp"

namespace hkcube {

FiniteSystem::FiniteSystem(GroupPtr group, std::size_t points, std::vector<Point> action,
                           std::vector<std::string> labels, std::string name)
    : group_(std::move(group)), points_(points), action_(std::move(action)), labels_(std::move(labels)),
      name_(std::move(name)) {
  const FiniteGroup& g = *group_;
  if (points_ == 0) raise(ErrorCode::InvalidSystem, "phase space must be non-empty");
  if (points_ > 65535) raise(ErrorCode::TooLarge, "phase space limited to 65535 points");
  if (action_.size() != g.order() * points_) raise(ErrorCode::InvalidSystem, "action table has wrong size");
  std::vector<std::uint8_t> seen(points_);
  for (Elem a = 0; a < g.order(); ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Point x = 0; x < points_; ++x) {
      const Point y = act(a, x);
      if (y >= points_ || seen[y]) {
        raise(ErrorCode::InvalidSystem, "element " + g.label(a) + " does not act as a permutation");
      }
      seen[y] = 1;
    }
  }
  for (Point x = 0; x < points_; ++x)
    if (act(g.identity(), x) != x) raise(ErrorCode::InvalidSystem, "identity moves point " + std::to_string(x));
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem s : g.generators())
      for (Point x = 0; x < points_; ++x)
        if (act(g.mul(a, s), x) != act(a, act(s, x))) {
          std::ostringstream os;
          os << "action is not a homomorphism at (g=" << g.label(a) << ", s=" << g.label(s) << ", x=" << x << ")";
          raise(ErrorCode::InvalidSystem, os.str());
        }
  if (labels_.empty()) {
    for (Point x = 0; x < points_; ++x) labels_.push_back(std::to_string(x));
  } else if (labels_.size() != points_) {
    raise(ErrorCode::InvalidSystem, "point label count does not match phase space");
  }
}

FiniteSystem FiniteSystem::from_generator_action(GroupPtr group, std::size_t points,
                                                 const std::vector<Perm>& generator_perms,
                                                 std::vector<std::string> labels, std::string name) {
  const FiniteGroup& g = *group;
  if (generator_perms.size() != g.generators().size()) {
    raise(ErrorCode::InvalidSystem, "need one permutation per group generator (" +
                                        std::to_string(g.generators().size()) + ")");
  }
  for (const Perm& p : generator_perms)
    if (p.size() != points) raise(ErrorCode::InvalidSystem, "generator permutation has wrong degree");
  std::vector<Point> action(g.order() * points);
  std::vector<bool> known(g.order(), false);
  for (Point x = 0; x < points; ++x) action[std::size_t{g.identity()} * points + x] = x;
  known[g.identity()] = true;
  std::vector<Elem> queue{g.identity()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Elem a = queue[head];
    for (std::size_t k = 0; k < g.generators().size(); ++k) {
      const Elem b = g.mul(a, g.generators()[k]);
      const Perm& p = generator_perms[k];
      for (Point x = 0; x < points; ++x) {
        const Point img = action[std::size_t{a} * points + p[x]];
        if (!known[b]) {
          action[std::size_t{b} * points + x] = img;
        } else if (action[std::size_t{b} * points + x] != img) {
          raise(ErrorCode::InvalidSystem, "generator permutations do not define an action of the group (at " +
                                              g.label(b) + ")");
        }
      }
      if (!known[b]) {
        known[b] = true;
        queue.push_back(b);
      }
    }
  }
  return FiniteSystem(std::move(group), points, std::move(action), std::move(labels), std::move(name));
}

Relation::Relation(std::size_t n) : n_(n), bits_(n * n, 0) {}

Relation Relation::diagonal(std::size_t n) {
  Relation r(n);
  for (Point x = 0; x < n; ++x) r.insert(x, x);
  return r;
}

Relation Relation::full(std::size_t n) {
  Relation r(n);
  std::fill(r.bits_.begin(), r.bits_.end(), 1);
  return r;
}

Relation Relation::from_classes(const std::vector<std::size_t>& class_of) {
  Relation r(class_of.size());
  for (Point x = 0; x < class_of.size(); ++x)
    for (Point y = 0; y < class_of.size(); ++y)
      if (class_of[x] == class_of[y]) r.insert(x, y);
  return r;
}

void Relation::insert(Point x, Point y) {
  bits_[std::size_t{x} * n_ + y] = 1;
  bits_[std::size_t{y} * n_ + x] = 1;
}

std::size_t Relation::pair_count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<std::pair<Point, Point>> Relation::pairs() const {
  std::vector<std::pair<Point, Point>> out;
  for (Point x = 0; x < n_; ++x)
    for (Point y = 0; y < n_; ++y)
      if (contains(x, y)) out.emplace_back(x, y);
  return out;
}

bool Relation::is_reflexive() const {
  for (Point x = 0; x < n_; ++x)
    if (!contains(x, x)) return false;
  return true;
}

bool Relation::is_symmetric() const {
  for (Point x = 0; x < n_; ++x)
    for (Point y = 0; y < n_; ++y)
      if (contains(x, y) != contains(y, x)) return false;
  return true;
}

bool Relation::is_transitive() const {
  // Transitive and symmetric iff every component is a clique.
  for (const auto& cls : classes())
    for (Point a : cls)
      for (Point b : cls)
        if (!contains(a, b) && a != b) return false;
  return true;
}

bool Relation::is_diagonal() const {
  for (Point x = 0; x < n_; ++x)
    for (Point y = 0; y < n_; ++y)
      if (contains(x, y) != (x == y)) return false;
  return true;
}

bool Relation::subset_of(const Relation& other) const {
  if (n_ != other.n_) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !other.bits_[i]) return false;
  return true;
}

std::vector<std::size_t> Relation::class_index() const {
  DisjointSet ds(n_);
  for (Point x = 0; x < n_; ++x)
    for (Point y = x + 1; y < n_; ++y)
      if (contains(x, y)) ds.unite(x, y);
  std::vector<std::size_t> root_to_class(n_, n_), out(n_);
  std::size_t next = 0;
  for (Point x = 0; x < n_; ++x) {
    const std::size_t r = ds.find(x);
    if (root_to_class[r] == n_) root_to_class[r] = next++;
    out[x] = root_to_class[r];
  }
  return out;
}

std::vector<std::vector<Point>> Relation::classes() const {
  const auto idx = class_index();
  std::size_t count = 0;
  for (auto c : idx) count = std::max(count, c + 1);
  std::vector<std::vector<Point>> out(count);
  for (Point x = 0; x < n_; ++x) out[idx[x]].push_back(x);
  return out;
}

DisjointSet::DisjointSet(std::size_t n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSet::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSet::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  return true;
}

void FactorMap::validate() const {
  if (!source || !target) raise(ErrorCode::InvalidSystem, "factor map needs both systems");
  if (source->group().uid() != target->group().uid() && source->group().order() != target->group().order()) {
    raise(ErrorCode::InvalidSystem, "factor map systems must share the acting group");
  }
  if (map.size() != source->size()) raise(ErrorCode::InvalidSystem, "factor map has wrong domain size");
  std::vector<bool> hit(target->size(), false);
  for (Point x = 0; x < source->size(); ++x) {
    if (map[x] >= target->size()) raise(ErrorCode::InvalidSystem, "factor map image out of range");
    hit[map[x]] = true;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) raise(ErrorCode::InvalidSystem, "factor map is not surjective");
  for (Elem g = 0; g < source->group().order(); ++g)
    for (Point x = 0; x < source->size(); ++x)
      if (map[source->act(g, x)] != target->act(g, map[x])) {
        raise(ErrorCode::InvalidSystem, "factor map is not equivariant at point " + std::to_string(x));
      }
}

std::vector<Point> orbit(const FiniteSystem& sys, Point x) {
  if (x >= sys.size()) raise(ErrorCode::InvalidIndex, "point out of range");
  std::vector<bool> seen(sys.size(), false);
  std::vector<Point> out{x};
  seen[x] = true;
  for (std::size_t head = 0; head < out.size(); ++head)
    for (Elem s : sys.group().generators()) {
      const Point y = sys.act(s, out[head]);
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Point>> orbits(const FiniteSystem& sys) {
  std::vector<bool> done(sys.size(), false);
  std::vector<std::vector<Point>> out;
  for (Point x = 0; x < sys.size(); ++x) {
    if (done[x]) continue;
    out.push_back(orbit(sys, x));
    for (Point y : out.back()) done[y] = true;
  }
  return out;
}

bool is_minimal(const FiniteSystem& sys) { return orbit(sys, 0).size() == sys.size(); }

FiniteSystem product_system(const FiniteSystem& sys, int n, std::uint64_t budget) {
  if (n < 1) raise(ErrorCode::InvalidParameter, "product order must be positive");
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) {
    count *= sys.size();
    if (count > budget) raise(ErrorCode::BudgetExceeded, "product space X^" + std::to_string(n) + " exceeds budget");
  }
  const FiniteGroup& g = sys.group();
  std::vector<Point> action(g.order() * count);
  for (Elem a = 0; a < g.order(); ++a)
    for (std::uint64_t p = 0; p < count; ++p) {
      std::uint64_t rest = p, img = 0, scale = 1;
      for (int i = 0; i < n; ++i) {
        img += scale * sys.act(a, static_cast<Point>(rest % sys.size()));
        rest /= sys.size();
        scale *= sys.size();
      }
      action[a * count + p] = static_cast<Point>(img);
    }
  return FiniteSystem(sys.group_ptr(), count, std::move(action), {}, sys.name() + "^" + std::to_string(n));
}

std::vector<std::size_t> diagonal_orbit_sizes(const FiniteSystem& sys, int n, std::uint64_t budget) {
  if (n < 1) raise(ErrorCode::InvalidParameter, "product order must be positive");
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) {
    count *= sys.size();
    if (count > budget) raise(ErrorCode::BudgetExceeded, "product space X^" + std::to_string(n) + " exceeds budget");
  }
  std::vector<bool> seen(count, false);
  std::vector<std::size_t> sizes;
  std::vector<std::uint64_t> queue;
  for (std::uint64_t start = 0; start < count; ++start) {
    if (seen[start]) continue;
    queue.assign(1, start);
    seen[start] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (Elem s : sys.group().generators()) {
        std::uint64_t rest = queue[head], img = 0, scale = 1;
        for (int i = 0; i < n; ++i) {
          img += scale * sys.act(s, static_cast<Point>(rest % sys.size()));
          rest /= sys.size();
          scale *= sys.size();
        }
        if (!seen[img]) {
          seen[img] = true;
          queue.push_back(img);
        }
      }
    }
    sizes.push_back(queue.size());
  }
  return sizes;
}

bool is_transitive_of_all_orders(const FiniteSystem& sys, int n_max, std::uint64_t budget) {
  for (int n = 1; n <= n_max; ++n)
    if (diagonal_orbit_sizes(sys, n, budget).size() != 1) return false;
  return true;
}

Relation proximal_relation(const FiniteSystem& sys) {
  Relation r(sys.size());
  for (Point x = 0; x < sys.size(); ++x)
    for (Point y = 0; y < sys.size(); ++y)
      for (Elem g = 0; g < sys.group().order(); ++g)
        if (sys.act(g, x) == sys.act(g, y)) {
          r.insert(x, y);
          break;
        }
  return r;
}

Relation q_relation(const FiniteSystem& sys) {
  // Approximating points x' -> x, y' -> y are eventually equal to x and y.
  Relation r(sys.size());
  for (Point x = 0; x < sys.size(); ++x)
    for (Point y = 0; y < sys.size(); ++y)
      for (Point xs = 0; xs < sys.size(); ++xs) {
        if (xs != x) continue;
        for (Point ys = 0; ys < sys.size(); ++ys) {
          if (ys != y) continue;
          for (Elem g = 0; g < sys.group().order(); ++g)
            if (sys.act(g, xs) == sys.act(g, ys)) r.insert(x, y);
        }
      }
  return r;
}

Relation q_eq_relation(const FiniteSystem& sys) {
  const std::size_t n = sys.size();
  DisjointSet ds(n);
  for (auto [x, y] : q_relation(sys).pairs()) ds.unite(x, y);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Point x = 0; x < n; ++x)
      for (Point y = 0; y < n; ++y) {
        if (ds.find(x) != ds.find(y)) continue;
        for (Elem s : sys.group().generators()) changed |= ds.unite(sys.act(s, x), sys.act(s, y));
      }
  }
  std::vector<std::size_t> cls(n);
  for (Point x = 0; x < n; ++x) cls[x] = ds.find(x);
  return Relation::from_classes(cls);
}

bool is_invariant(const FiniteSystem& sys, const Relation& r) {
  for (auto [x, y] : r.pairs())
    for (Elem s : sys.group().generators())
      if (!r.contains(sys.act(s, x), sys.act(s, y))) return false;
  return true;
}

QuotientSystem quotient_system(const SystemPtr& sys, const Relation& r) {
  if (r.points() != sys->size()) raise(ErrorCode::DimensionMismatch, "relation is over a different point set");
  if (!r.is_equivalence()) raise(ErrorCode::NotEquivalence, "relation is not an equivalence");
  if (!is_invariant(*sys, r)) raise(ErrorCode::NotInvariant, "relation is not G-invariant");
  const auto classes = r.classes();
  const auto cls = r.class_index();
  const std::size_t k = classes.size();
  const FiniteGroup& g = sys->group();
  std::vector<Point> action(g.order() * k);
  for (Elem a = 0; a < g.order(); ++a)
    for (std::size_t c = 0; c < k; ++c) action[a * k + c] = static_cast<Point>(cls[sys->act(a, classes[c].front())]);
  std::vector<std::string> labels;
  for (const auto& c : classes) labels.push_back("[" + sys->label(c.front()) + "]");
  auto q = std::make_shared<const FiniteSystem>(sys->group_ptr(), k, std::move(action), std::move(labels),
                                                sys->name() + "/R");
  std::vector<Point> map(sys->size());
  for (Point x = 0; x < sys->size(); ++x) map[x] = static_cast<Point>(cls[x]);
  FactorMap proj{sys, q, std::move(map)};
  proj.validate();
  return QuotientSystem{q, std::move(proj)};
}

AbelianGroupStructure check_abelian_group_system(const FiniteSystem& sys, Point base) {
  if (!is_minimal(sys)) raise(ErrorCode::NotMinimal, "abelian group criterion needs a minimal system");
  const FiniteGroup& g = sys.group();
  const std::size_t n = sys.size();
  AbelianGroupStructure out;
  for (Elem a : g.generators())
    for (Elem b : g.generators())
      for (Point x = 0; x < n; ++x)
        if (sys.act(a, sys.act(b, x)) != sys.act(b, sys.act(a, x))) return out;
  for (Elem a = 0; a < g.order(); ++a) {
    if (sys.act(a, base) != base) continue;
    for (Point x = 0; x < n; ++x)
      if (sys.act(a, x) != x) return out;
  }
  std::vector<Elem> carrier(n, static_cast<Elem>(g.order()));
  for (Elem a = 0; a < g.order(); ++a) {
    const Point x = sys.act(a, base);
    if (carrier[x] == g.order()) carrier[x] = a;
  }
  std::vector<Elem> table(n * n);
  for (Point x = 0; x < n; ++x)
    for (Point y = 0; y < n; ++y) table[x * n + y] = sys.act(carrier[x], y);
  out.group = FiniteGroup::from_table(n, std::move(table), sys.labels());
  out.is_abelian_group_system = out.group->is_abelian();
  return out;
}

Subgroup fixator(const FiniteSystem& sys) {
  std::vector<Elem> fixed;
  for (Elem a = 0; a < sys.group().order(); ++a) {
    bool all = true;
    for (Point x = 0; x < sys.size() && all; ++x) all = sys.act(a, x) == x;
    if (all) fixed.push_back(a);
  }
  return Subgroup{fixed, fixed};
}

}  // namespace hkcube
