#include "hkcube/nrp.hpp"

#include <algorithm>
#include <sstream>

#include "hkcube/error.hpp"

namespace hkcube {

using nlohmann::json;

namespace {

std::vector<Point> lower_corner_vals(Point x, Point y, int d) { return corner(x, y, d, CornerKind::Lower).vals; }

json pair_json(Point x, Point y) { return json::array({x, y}); }

}  // namespace

NrpResult corner_relation(CubeSpace& space, int d, CornerKind kind) {
  if (d < 0 || d + 1 > kMaxCubeDim) raise(ErrorCode::InvalidDimension, "relation order out of range");
  const FiniteSystem& sys = space.system();
  NrpResult out;
  out.relation = Relation(sys.size());
  out.minimal = is_minimal(sys);
  if (!out.minimal) out.warning = "NOT-MINIMAL: literal corner-membership set, no equivalence claim";
  for (Point x = 0; x < sys.size(); ++x) {
    CubeSetPtr slice;
    try {
      slice = space.slice(d + 1, x);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
      std::ostringstream os;
      os << "NRP^[" << d << "] failed at base point " << x << " (" << x << " of " << sys.size()
         << " base points completed): " << e.detail();
      raise(ErrorCode::BudgetExceeded, os.str());
    }
    out.states_visited += slice->size();
    for (Point y = 0; y < sys.size(); ++y) {
      if (slice->contains(corner(x, y, d + 1, kind))) out.relation.insert_directed(x, y);
    }
  }
  return out;
}

NrpResult nrp_relation(CubeSpace& space, int d) { return corner_relation(space, d, CornerKind::Lower); }

CheckReport verify_equivalence(const Relation& r, const FiniteSystem& sys) {
  CheckReport rep;
  rep.check = "equivalence";
  if (r.points() != sys.size()) raise(ErrorCode::DimensionMismatch, "relation is over a different point set");
  const std::size_t n = sys.size();
  bool reflexive = true, symmetric = true, invariant = true;
  for (Point x = 0; x < n; ++x)
    if (!r.contains(x, x)) {
      reflexive = false;
      rep.fail({{"not_reflexive", x}});
    }
  for (Point x = 0; x < n; ++x)
    for (Point y = 0; y < n; ++y) {
      if (!r.contains(x, y)) continue;
      if (!r.contains(y, x)) {
        symmetric = false;
        rep.fail({{"not_symmetric", pair_json(x, y)}});
      }
      for (Elem s : sys.group().generators())
        if (!r.contains(sys.act(s, x), sys.act(s, y))) {
          invariant = false;
          rep.fail({{"not_invariant", pair_json(x, y)}, {"generator", sys.group().label(s)}});
        }
    }
  const bool transitive = Relation::from_classes(r.class_index()) == r;
  if (!transitive) rep.fail({{"not_transitive", "relation differs from the partition it generates"}});
  rep.cases = r.pair_count();
  rep.details = {{"reflexive", reflexive},
                 {"symmetric", symmetric},
                 {"transitive", transitive},
                 {"invariant", invariant},
                 {"classes", r.classes().size()}};
  return rep;
}

CheckReport verify_alt_corner(CubeSpace& space, int d) {
  CheckReport rep;
  rep.check = "alt_corner";
  rep.details["d"] = d;
  const auto lower = corner_relation(space, d, CornerKind::Lower);
  const auto upper = corner_relation(space, d, CornerKind::Upper);
  const std::size_t n = space.system().size();
  for (Point x = 0; x < n; ++x)
    for (Point y = 0; y < n; ++y) {
      ++rep.cases;
      if (lower.relation.contains(x, y) != upper.relation.contains(x, y)) {
        rep.fail({{"pair", pair_json(x, y)},
                  {"lower", lower.relation.contains(x, y)},
                  {"upper", upper.relation.contains(x, y)}});
      }
    }
  rep.states_visited = lower.states_visited + upper.states_visited;
  return rep;
}

Relation canonical_relation(CubeSpace& space, int d) {
  const FiniteSystem& sys = space.system();
  const std::size_t n = sys.size();
  const std::uint32_t verts = vertex_count(d + 1);
  Relation r(n);
  std::vector<Point> buf(verts);
  for (Point x = 0; x < n; ++x) {
    const auto slice = space.slice(d + 1, x);
    PackedStore keys(verts - 1, std::max<std::size_t>(n, 1), slice->size() + 1);
    std::vector<std::vector<Point>> tops;
    for (std::size_t i = 0; i < slice->size(); ++i) {
      slice->get(i, buf);
      const auto [idx, inserted] = keys.insert(std::span<const Point>(buf.data(), verts - 1));
      if (inserted) tops.emplace_back();
      tops[idx].push_back(buf[verts - 1]);
    }
    for (const auto& t : tops)
      for (Point a : t)
        for (Point b : t) r.insert_directed(a, b);
  }
  return r;
}

CheckReport check_canonical_matches_nrp(CubeSpace& space, int d) {
  CheckReport rep;
  rep.check = "canonical_relation";
  rep.details["d"] = d;
  const auto nrp = nrp_relation(space, d);
  const auto canon = canonical_relation(space, d);
  const std::size_t n = space.system().size();
  for (Point x = 0; x < n; ++x)
    for (Point y = 0; y < n; ++y) {
      ++rep.cases;
      if (nrp.relation.contains(x, y) != canon.contains(x, y)) {
        rep.fail({{"pair", pair_json(x, y)}, {"nrp", nrp.relation.contains(x, y)}, {"canonical", canon.contains(x, y)}});
      }
    }
  rep.states_visited = nrp.states_visited;
  rep.details["classes"] = canon.classes().size();
  return rep;
}

Relation rp_relation(CubeSpace& space, int d, std::uint64_t* states_visited) {
  const FiniteSystem& sys = space.system();
  const std::size_t n = sys.size();
  const std::uint32_t verts = vertex_count(d);
  const auto gens = to_tuples(sys.group(), cube_group_generators(sys.group(), d, TupleGroupKind::Face), d);
  Relation r(n);
  std::uint64_t total = 0;
  std::vector<Point> cur(2 * verts), next(2 * verts);
  for (Point xs = 0; xs < n; ++xs)
    for (Point ys = 0; ys < n; ++ys) {
      if (total >= space.budget()) raise(ErrorCode::BudgetExceeded, "RP pair exploration exceeds budget");
      PackedStore seen(2 * verts, std::max<std::size_t>(n, 1), space.budget() - total);
      std::fill(cur.begin(), cur.begin() + verts, xs);
      std::fill(cur.begin() + verts, cur.end(), ys);
      seen.insert(cur);
      for (std::uint32_t head = 0; head < seen.size(); ++head) {
        seen.get(head, cur);
        if (std::equal(cur.begin() + 1, cur.begin() + verts, cur.begin() + verts + 1)) {
          r.insert_directed(cur[0], cur[verts]);
        }
        for (const TupleElement& t : gens) {
          for (std::uint32_t v = 0; v < verts; ++v) {
            next[v] = sys.act(t.entries[v], cur[v]);
            next[verts + v] = sys.act(t.entries[v], cur[verts + v]);
          }
          seen.insert(next);
        }
      }
      total += seen.size();
    }
  if (states_visited) *states_visited = total;
  return r;
}

CheckReport check_rp_subset_nrp(CubeSpace& space, int d) {
  CheckReport rep;
  rep.check = "rp_subset_nrp";
  rep.details["d"] = d;
  std::uint64_t visited = 0;
  const auto rp = rp_relation(space, d, &visited);
  const auto nrp = nrp_relation(space, d);
  for (auto [x, y] : rp.pairs()) {
    ++rep.cases;
    if (!nrp.relation.contains(x, y)) rep.fail({{"rp_not_in_nrp", pair_json(x, y)}});
  }
  rep.states_visited = visited + nrp.states_visited;
  rep.details["rp_pairs"] = rp.pair_count();
  rep.details["nrp_pairs"] = nrp.relation.pair_count();
  rep.details["rp_is_diagonal"] = rp.is_diagonal();
  return rep;
}

CheckReport elementary_chain_check(CubeSpace& space, int d_max) {
  CheckReport rep;
  rep.check = "elementary_chain";
  const FiniteSystem& sys = space.system();
  const Relation p = proximal_relation(sys);
  const Relation q = q_relation(sys);
  const Relation qe = q_eq_relation(sys);
  std::vector<Relation> nrp;
  for (int d = 1; d <= d_max; ++d) {
    auto r = nrp_relation(space, d);
    rep.states_visited += r.states_visited;
    nrp.push_back(std::move(r.relation));
  }
  auto inclusion = [&](const Relation& a, const Relation& b, const std::string& name) {
    ++rep.cases;
    for (auto [x, y] : a.pairs())
      if (!b.contains(x, y)) {
        rep.fail({{"inclusion", name}, {"pair", pair_json(x, y)}});
        return;
      }
  };
  inclusion(p, q, "P in Q");
  inclusion(q, qe, "Q in Q_eq");
  if (d_max >= 1) inclusion(qe, nrp[0], "Q_eq in NRP^[1]");
  for (int d = 1; d <= d_max; ++d) inclusion(p, nrp[d - 1], "P in NRP^[" + std::to_string(d) + "]");
  for (int d = 1; d < d_max; ++d) {
    inclusion(nrp[d], nrp[d - 1], "NRP^[" + std::to_string(d + 1) + "] in NRP^[" + std::to_string(d) + "]");
  }
  json lower_terms = json::array();
  for (int d = 1; d <= d_max; ++d) {
    const Subgroup term = lower_central_term(sys.group(), static_cast<std::size_t>(d + 1));
    lower_terms.push_back(term.size());
    for (Elem h : term.members)
      for (Point x = 0; x < sys.size(); ++x) {
        ++rep.cases;
        if (!nrp[d - 1].contains(x, sys.act(h, x))) {
          rep.fail({{"lower_central", d + 1}, {"h", sys.group().label(h)}, {"pair", pair_json(x, sys.act(h, x))}});
        }
      }
  }
  rep.details = {{"d_max", d_max},
                 {"P_pairs", p.pair_count()},
                 {"Q_pairs", q.pair_count()},
                 {"Q_eq_pairs", qe.pair_count()},
                 {"lower_central_term_sizes", lower_terms}};
  json sizes = json::array();
  for (const auto& r : nrp) sizes.push_back(r.pair_count());
  rep.details["nrp_pairs"] = sizes;
  return rep;
}

NrpQuotient quotient_by_nrp(CubeSpace& space, int d) {
  auto nrp = nrp_relation(space, d);
  CheckReport rep;
  rep.check = "quotient_by_nrp";
  rep.details["d"] = d;
  const auto eq = verify_equivalence(nrp.relation, space.system());
  rep.absorb(eq);
  if (!eq.pass) raise(ErrorCode::InternalInvariantViolation, "NRP^[" + std::to_string(d) + "] is not an invariant equivalence");
  auto q = quotient_system(space.system_ptr(), nrp.relation);
  CubeSpace qspace(q.system, space.budget());
  const auto qnrp = nrp_relation(qspace, d);
  ++rep.cases;
  if (!qnrp.relation.is_diagonal()) rep.fail({{"quotient_nrp_pairs", qnrp.relation.pair_count()}});
  rep.states_visited = nrp.states_visited + qnrp.states_visited;
  rep.details["quotient_size"] = q.system->size();
  return NrpQuotient{std::move(nrp.relation), std::move(q), std::move(rep)};
}

CheckReport verify_maximality(CubeSpace& space, int d, const FactorMap& phi) {
  phi.validate();
  if (phi.source->size() != space.system().size()) raise(ErrorCode::DimensionMismatch, "factor map source differs");
  CubeSpace target(phi.target, space.budget());
  const auto tnrp = nrp_relation(target, d);
  if (!tnrp.relation.is_diagonal()) {
    raise(ErrorCode::TargetNotOrderD, "target system has non-trivial NRP^[" + std::to_string(d) + "]");
  }
  CheckReport rep;
  rep.check = "maximality";
  rep.details["d"] = d;
  const auto nrp = nrp_relation(space, d);
  for (auto [x, y] : nrp.relation.pairs()) {
    ++rep.cases;
    if (phi.map[x] != phi.map[y]) rep.fail({{"not_constant_on_class", pair_json(x, y)}});
  }
  // The induced map on classes is equivariant when phi is.
  const auto cls = nrp.relation.classes();
  const auto idx = nrp.relation.class_index();
  for (Elem s : space.system().group().generators())
    for (const auto& c : cls) {
      ++rep.cases;
      const Point rep_img = space.system().act(s, c.front());
      const Point moved_class_rep = cls[idx[rep_img]].front();
      if (phi.map[moved_class_rep] != phi.target->act(s, phi.map[c.front()])) {
        rep.fail({{"not_equivariant", c.front()}, {"generator", space.system().group().label(s)}});
      }
    }
  rep.states_visited = nrp.states_visited + tnrp.states_visited;
  return rep;
}

CheckReport verify_lifting(const FactorMap& pi, int d, std::uint64_t budget) {
  pi.validate();
  CheckReport rep;
  rep.check = "lifting";
  rep.details["d"] = d;
  CubeSpace xs(pi.source, budget), ys(pi.target, budget);
  const auto rx = nrp_relation(xs, d);
  const auto ry = nrp_relation(ys, d);
  Relation image(pi.target->size());
  for (auto [x, y] : rx.relation.pairs()) image.insert_directed(pi.map[x], pi.map[y]);
  for (auto [a, b] : image.pairs())
    if (!ry.relation.contains(a, b)) rep.fail({{"image_not_in_target", pair_json(a, b)}});
  for (auto [a, b] : ry.relation.pairs())
    if (!image.contains(a, b)) rep.fail({{"target_not_in_image", pair_json(a, b)}});
  rep.cases = image.pair_count() + ry.relation.pair_count();
  rep.states_visited = rx.states_visited + ry.states_visited;
  rep.details["source_pairs"] = rx.relation.pair_count();
  rep.details["target_pairs"] = ry.relation.pair_count();
  return rep;
}

OrderResult compute_order(CubeSpace& space, int d_max, bool certificates) {
  const FiniteSystem& sys = space.system();
  OrderResult out;
  for (int d = 0; d <= d_max; ++d) {
    OrderStep step{d, false, "computed"};
    bool decided = false;
    if (certificates) {
      const Subgroup term = lower_central_term(sys.group(), static_cast<std::size_t>(d + 1));
      for (Elem h : term.members) {
        for (Point x = 0; x < sys.size() && !decided; ++x) decided = sys.act(h, x) != x;
        if (decided) break;
      }
      if (decided) step.method = "lower central certificate";
    }
    if (!decided) step.trivial = nrp_relation(space, d).relation.is_diagonal();
    out.steps.push_back(step);
    if (step.trivial) {
      out.order = d;
      break;
    }
  }
  return out;
}

std::optional<int> order_of_system(CubeSpace& space, int d_max) { return compute_order(space, d_max).order; }

NilpotentQuotient effective_nilpotent_quotient(CubeSpace& space, int d) {
  const FiniteSystem& sys = space.system();
  if (!nrp_relation(space, d).relation.is_diagonal()) {
    raise(ErrorCode::InvalidParameter, "NRP^[" + std::to_string(d) + "] is not trivial");
  }
  NilpotentQuotient out{d, false, fixator(sys), lower_central_term(sys.group(), static_cast<std::size_t>(d + 1)),
                        quotient_group(sys.group(), lower_central_term(sys.group(), static_cast<std::size_t>(d + 1))),
                        nullptr, std::nullopt};
  out.lower_term_fixes_x = std::all_of(out.lower_term.members.begin(), out.lower_term.members.end(),
                                       [&](Elem h) { return out.fix.contains(h); });
  out.nilpotency_class = nilpotency_class(out.h.group);
  if (out.lower_term_fixes_x) {
    auto hg = std::make_shared<const FiniteGroup>(out.h.group);
    std::vector<Elem> rep(hg->order(), static_cast<Elem>(sys.group().order()));
    for (Elem a = 0; a < sys.group().order(); ++a)
      if (rep[out.h.map[a]] == sys.group().order()) rep[out.h.map[a]] = a;
    std::vector<Point> action(hg->order() * sys.size());
    for (Elem c = 0; c < hg->order(); ++c)
      for (Point x = 0; x < sys.size(); ++x) action[c * sys.size() + x] = sys.act(rep[c], x);
    out.system = std::make_shared<const FiniteSystem>(hg, sys.size(), std::move(action), sys.labels(),
                                                      sys.name() + " (effective)");
  }
  return out;
}

namespace {

// Builds the structure group of X/NRP^{[k]} over X/NRP^{[k-1]}.
void build_structure_group(TowerLevel& level, std::uint64_t budget, CheckReport& rep) {
  const int k = level.k;
  const FiniteSystem& s = *level.system;
  const std::size_t n = s.size();
  CubeSpace space(level.system, budget);
  const auto r = nrp_relation(space, k - 1);
  rep.states_visited += r.states_visited;

  const auto pairs = r.relation.pairs();
  const std::size_t m = pairs.size();
  // Slices C_x^{[k+1]} of the level, one per base point.
  std::vector<CubeSetPtr> slices(n);
  for (Point x = 0; x < n; ++x) {
    slices[x] = space.slice(k + 1, x);
    rep.states_visited += slices[x]->size();
  }
  auto related = [&](const std::pair<Point, Point>& a, const std::pair<Point, Point>& b) {
    auto floor = lower_corner_vals(a.first, a.second, k);
    const auto ceil = lower_corner_vals(b.first, b.second, k);
    floor.insert(floor.end(), ceil.begin(), ceil.end());
    return slices[a.first]->contains(std::span<const Point>(floor));
  };

  // Classes of pairs, by comparison with class representatives; the
  // relation is then checked to be an equivalence on every pair.
  std::vector<std::size_t> cls(m);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t c = reps.size();
    for (std::size_t j = 0; j < reps.size(); ++j)
      if (related(pairs[i], pairs[reps[j]])) {
        c = j;
        break;
      }
    if (c == reps.size()) reps.push_back(i);
    cls[i] = c;
  }
  bool equivalence = true;
  if (m * m <= (std::size_t{1} << 22)) {
    for (std::size_t i = 0; i < m && equivalence; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (related(pairs[i], pairs[j]) != (cls[i] == cls[j])) {
          equivalence = false;
          rep.fail({{"level", k}, {"pair_relation_not_equivalence", {pair_json(pairs[i].first, pairs[i].second),
                                                                     pair_json(pairs[j].first, pairs[j].second)}}});
          break;
        }
  }
  const std::size_t korder = reps.size();

  // Each class acts as the map x -> x' with (x, x') in the class.
  std::vector<Perm> maps(korder, Perm(n, static_cast<std::uint32_t>(n)));
  level.well_defined = equivalence;
  for (std::size_t i = 0; i < m; ++i) {
    auto& slot = maps[cls[i]][pairs[i].first];
    if (slot != n && slot != pairs[i].second) level.well_defined = false;
    slot = pairs[i].second;
  }
  for (const Perm& p : maps) {
    std::vector<bool> hit(n, false);
    for (Point x = 0; x < n; ++x) {
      if (p[x] >= n || hit[p[x]]) {
        level.well_defined = false;
        break;
      }
      hit[p[x]] = true;
    }
  }
  if (!level.well_defined) {
    rep.fail({{"level", k}, {"structure_maps_not_well_defined", true}});
    return;
  }
  std::size_t identity = korder;
  for (std::size_t c = 0; c < korder; ++c)
    if (maps[c][0] == 0) identity = c;
  level.free = identity < korder;
  for (std::size_t c = 0; c < korder && level.free; ++c)
    for (Point x = 0; x < n; ++x)
      if (c != identity && maps[c][x] == x) {
        level.free = false;
        break;
      }
  if (identity < korder)
    for (Point x = 0; x < n; ++x) level.free = level.free && maps[identity][x] == x;

  // Orbits against the fibres of the projection to the next level.
  level.orbits_are_fibres = true;
  for (Point x = 0; x < n; ++x) {
    std::vector<Point> orbit_pts, fibre;
    for (const Perm& p : maps) orbit_pts.push_back(p[x]);
    for (Point y = 0; y < n; ++y)
      if (level.to_next[y] == level.to_next[x]) fibre.push_back(y);
    std::sort(orbit_pts.begin(), orbit_pts.end());
    orbit_pts.erase(std::unique(orbit_pts.begin(), orbit_pts.end()), orbit_pts.end());
    if (orbit_pts != fibre) level.orbits_are_fibres = false;
  }

  // Group structure under composition.
  std::vector<Elem> table(korder * korder);
  bool closed = true;
  for (std::size_t a = 0; a < korder && closed; ++a)
    for (std::size_t b = 0; b < korder; ++b) {
      Perm ab(n);
      for (Point x = 0; x < n; ++x) ab[x] = maps[a][maps[b][x]];
      const auto it = std::find(maps.begin(), maps.end(), ab);
      if (it == maps.end()) {
        closed = false;
        break;
      }
      table[a * korder + b] = static_cast<Elem>(it - maps.begin());
    }
  if (closed) {
    std::vector<std::string> labels;
    for (const Perm& p : maps) labels.push_back(s.label(0) + "->" + s.label(p[0]));
    try {
      level.k_group = FiniteGroup::from_table(korder, std::move(table), std::move(labels));
      level.abelian = level.k_group->is_abelian();
    } catch (const Error&) {
      level.k_group.reset();
    }
  }
  level.k_action = maps;
  level.commutes_with_g = true;
  for (const Perm& p : maps)
    for (Elem g : s.group().generators())
      for (Point x = 0; x < n; ++x)
        if (p[s.act(g, x)] != s.act(g, p[x])) level.commutes_with_g = false;
}

}  // namespace

Tower factor_tower(CubeSpace& space, int d_max) {
  Tower t;
  t.report.check = "factor_tower";
  const FiniteSystem& sys = space.system();
  if (!is_minimal(sys)) raise(ErrorCode::NotMinimal, "factor tower needs a minimal system");
  t.order = order_of_system(space, d_max);
  int top = t.order.value_or(d_max);

  // Projections X -> X/NRP^{[k]} for k = 0..top. A truncated tower stops
  // below the first level that exceeds the budget.
  std::vector<QuotientSystem> quotients;
  for (int k = 0; k <= top; ++k) {
    NrpResult r;
    try {
      r = nrp_relation(space, k);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded || t.order || k == 0) throw;
      t.report.details["budget_stop"] = e.detail();
      top = k - 1;
      break;
    }
    t.report.states_visited += r.states_visited;
    const auto eq = verify_equivalence(r.relation, sys);
    if (!eq.pass) raise(ErrorCode::InternalInvariantViolation, "NRP^[" + std::to_string(k) + "] is not an equivalence");
    quotients.push_back(quotient_system(space.system_ptr(), r.relation));
  }
  t.projections_compose = true;
  for (int k = top; k >= 1; --k) {
    TowerLevel level;
    level.k = k;
    level.system = quotients[k].system;
    level.from_x = quotients[k].projection.map;
    level.to_next.assign(level.system->size(), 0);
    std::vector<bool> set(level.system->size(), false);
    for (Point x = 0; x < sys.size(); ++x) {
      const Point here = level.from_x[x];
      const Point below = quotients[k - 1].projection.map[x];
      if (set[here] && level.to_next[here] != below) t.projections_compose = false;
      level.to_next[here] = below;
      set[here] = true;
    }
    build_structure_group(level, space.budget(), t.report);
    const bool ok = level.well_defined && level.free && level.orbits_are_fibres && level.abelian &&
                    level.commutes_with_g && level.k_group.has_value();
    if (!ok) {
      raise(ErrorCode::InternalInvariantViolation,
            "structure group at level " + std::to_string(k) + " failed verification");
    }
    t.levels.push_back(std::move(level));
  }
  if (!t.levels.empty()) {
    t.final_abelian_group_system = check_abelian_group_system(*t.levels.back().system).is_abelian_group_system;
  } else {
    t.final_abelian_group_system = sys.size() == 1;
  }
  if (!t.projections_compose) t.report.fail({{"projections_compose", false}});
  if (!t.final_abelian_group_system) t.report.fail({{"final_abelian_group_system", false}});
  if (!t.order) t.report.details["truncated"] = true;
  t.report.cases = t.levels.size();
  return t;
}

json tower_to_json(const Tower& t) {
  json levels = json::array();
  for (const auto& l : t.levels) {
    json orders = json::array();
    if (l.k_group) {
      const FiniteGroup& k = *l.k_group;
      for (Elem a = 0; a < k.order(); ++a) {
        std::size_t o = 1;
        for (Elem p = a; p != k.identity(); p = k.mul(p, a)) ++o;
        orders.push_back(o);
      }
      std::sort(orders.begin(), orders.end());
    }
    levels.push_back({{"k", l.k},
                      {"size", l.system->size()},
                      {"base_size", l.to_next.empty() ? 0 : *std::max_element(l.to_next.begin(), l.to_next.end()) + 1},
                      {"K_order", l.k_group ? l.k_group->order() : 0},
                      {"K_abelian", l.abelian},
                      {"K_element_orders", orders},
                      {"free", l.free},
                      {"well_defined", l.well_defined},
                      {"orbits_are_fibres", l.orbits_are_fibres},
                      {"commutes_with_G", l.commutes_with_g}});
  }
  json out = t.report.to_json();
  out["order"] = t.order ? json(*t.order) : json(nullptr);
  out["levels"] = levels;
  out["projections_compose"] = t.projections_compose;
  out["final_abelian_group_system"] = t.final_abelian_group_system;
  return out;
}

CheckReport weakly_mixing_checks(CubeSpace& space, int d_max) {
  const FiniteSystem& sys = space.system();
  if (d_max < 1 || d_max > 4) raise(ErrorCode::InvalidParameter, "weakly mixing checks support 1 <= d_max <= 4");
  if (!is_transitive_of_all_orders(sys, 1 << d_max, space.budget())) {
    raise(ErrorCode::NotApplicable,
          "diagonal action on X^" + std::to_string(1 << d_max) + " is not transitive (any |X| >= 2 fails at n = 2)");
  }
  CheckReport rep;
  rep.check = "weakly_mixing";
  const std::size_t n = sys.size();
  for (int d = 1; d <= d_max; ++d) {
    std::uint64_t expected = 1;
    for (std::uint32_t i = 1; i < vertex_count(d); ++i) expected *= n;
    const auto cubes = space.cubes(d);
    for (Point x = 0; x < n; ++x) {
      const auto y = space.slice(d, x);
      ++rep.cases;
      if (y->size() != expected) rep.fail({{"d", d}, {"x", x}, {"Y_x", y->size()}, {"expected", expected}});
      if (cubes_at(sys, *cubes, x).size() != y->size()) rep.fail({{"d", d}, {"x", x}, {"C_x_differs", true}});
    }
    const auto r = nrp_relation(space, d);
    if (r.relation.pair_count() != n * n) rep.fail({{"d", d}, {"nrp_pairs", r.relation.pair_count()}});
  }
  return rep;
}

json relation_to_json(const Relation& r, const FiniteSystem& sys) {
  json pairs = json::array();
  for (auto [x, y] : r.pairs()) pairs.push_back(pair_json(x, y));
  json out = {{"points", r.points()}, {"pairs", pairs}, {"equivalence", r.is_equivalence()}};
  if (r.is_equivalence()) {
    json blocks = json::array();
    json labelled = json::array();
    for (const auto& c : r.classes()) {
      blocks.push_back(c);
      json names = json::array();
      for (Point x : c) names.push_back(sys.label(x));
      labelled.push_back(names);
    }
    out["classes"] = blocks;
    out["class_labels"] = labelled;
  }
  return out;
}

Relation relation_from_json(const json& j) {
  if (!j.is_object() || !j.contains("points") || !j.contains("pairs")) {
    raise(ErrorCode::ParseError, "relation JSON needs 'points' and 'pairs'");
  }
  const auto n = j.at("points").get<std::size_t>();
  Relation r(n);
  for (const auto& p : j.at("pairs")) {
    const auto x = p.at(0).get<Point>(), y = p.at(1).get<Point>();
    if (x >= n || y >= n) raise(ErrorCode::ParseError, "relation pair out of range");
    r.insert_directed(x, y);
  }
  return r;
}

std::string relation_to_tsv(const Relation& r) {
  std::string out;
  for (auto [x, y] : r.pairs()) out += std::to_string(x) + "\t" + std::to_string(y) + "\n";
  return out;
}

}  // namespace hkcube
