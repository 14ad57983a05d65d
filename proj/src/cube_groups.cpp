#include "hkcube/cube_groups.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <tuple>

#include "hkcube/error.hpp"

namespace hkcube {

using nlohmann::json;

void CheckReport::fail(json witness, std::size_t keep) {
  pass = false;
  if (witnesses.size() < keep) witnesses.push_back(std::move(witness));
}

void CheckReport::absorb(const CheckReport& other) {
  pass = pass && other.pass;
  exhaustive = exhaustive && other.exhaustive;
  states_visited += other.states_visited;
  cases += other.cases;
  for (const auto& w : other.witnesses)
    if (witnesses.size() < 8) witnesses.push_back(w);
}

json CheckReport::to_json() const {
  json j{{"check", check},
         {"status", pass ? "pass" : "fail"},
         {"witnesses", witnesses},
         {"exhaustive", exhaustive},
         {"states_visited", states_visited},
         {"cases", cases}};
  if (!details.empty()) j["details"] = details;
  return j;
}

namespace {

void check_tuple(const FiniteGroup& g, const TupleElement& t) {
  if (t.d < 0 || t.d > kMaxCubeDim || t.entries.size() != vertex_count(t.d)) {
    raise(ErrorCode::DimensionMismatch, "tuple length does not match 2^d");
  }
  for (Elem e : t.entries)
    if (!g.valid(e)) raise(ErrorCode::InvalidElement, "tuple entry outside base group");
}

void same_dim(const TupleElement& a, const TupleElement& b) {
  if (a.d != b.d) raise(ErrorCode::DimensionMismatch, "tuples of different dimension");
}

}  // namespace

TupleElement tuple_identity(const FiniteGroup& g, int d) {
  return TupleElement{d, std::vector<Elem>(vertex_count(d), g.identity())};
}

TupleElement tuple_mul(const FiniteGroup& g, const TupleElement& a, const TupleElement& b) {
  same_dim(a, b);
  TupleElement out{a.d, std::vector<Elem>(a.entries.size())};
  for (std::size_t v = 0; v < a.entries.size(); ++v) out.entries[v] = g.mul(a.entries[v], b.entries[v]);
  return out;
}

TupleElement tuple_inv(const FiniteGroup& g, const TupleElement& a) {
  TupleElement out = a;
  for (Elem& e : out.entries) e = g.inv(e);
  return out;
}

TupleElement tuple_commutator(const FiniteGroup& g, const TupleElement& a, const TupleElement& b) {
  return tuple_mul(g, tuple_mul(g, a, b), tuple_mul(g, tuple_inv(g, a), tuple_inv(g, b)));
}

TupleElement diagonal(const FiniteGroup& g, Elem h, int d) {
  if (!g.valid(h)) raise(ErrorCode::InvalidElement, "diagonal element outside group");
  return TupleElement{d, std::vector<Elem>(vertex_count(d), h)};
}

TupleElement face_generator(const FiniteGroup& g, Elem h, const Face& f, int d) {
  if (f.d != d) raise(ErrorCode::DimensionMismatch, "face dimension differs from tuple dimension");
  if (!g.valid(h)) raise(ErrorCode::InvalidElement, "face generator element outside group");
  TupleElement t = tuple_identity(g, d);
  for (Vertex v = 0; v < vertex_count(d); ++v)
    if (f.contains(v)) t.entries[v] = h;
  return t;
}

TupleElement tuple_join(const TupleElement& floor, const TupleElement& ceiling) {
  same_dim(floor, ceiling);
  TupleElement t{floor.d + 1, floor.entries};
  t.entries.insert(t.entries.end(), ceiling.entries.begin(), ceiling.entries.end());
  return t;
}

TupleElement evaluate_word(const FiniteGroup& g, const FaceWord& w, int d) {
  TupleElement t = tuple_identity(g, d);
  for (const FaceLetter& l : w) {
    if (l.face.d != d) raise(ErrorCode::DimensionMismatch, "letter face has wrong dimension");
    for (Vertex v = 0; v < vertex_count(d); ++v)
      if (l.face.contains(v)) t.entries[v] = g.mul(t.entries[v], l.h);
  }
  return t;
}

namespace {

std::vector<Elem> base_letters(const FiniteGroup& g, GeneratorMode mode) {
  if (mode == GeneratorMode::Generators) return g.generators();
  std::vector<Elem> all;
  for (Elem e = 0; e < g.order(); ++e)
    if (e != g.identity()) all.push_back(e);
  return all;
}

}  // namespace

FaceWord cube_group_generators(const FiniteGroup& g, int d, TupleGroupKind kind, GeneratorMode mode) {
  if (d < 0 || d > kMaxCubeDim) raise(ErrorCode::InvalidDimension, "cube group dimension out of range");
  const auto letters = base_letters(g, mode);
  FaceWord out;
  for (int j = 1; j <= d; ++j)
    for (Elem h : letters) out.push_back({h, Face::hyperface(d, j, 1)});
  if (kind == TupleGroupKind::HostKra)
    for (Elem h : letters) out.push_back({h, Face::full(d)});
  return out;
}

FaceWord hk_generators_all_hyperfaces(const FiniteGroup& g, int d, GeneratorMode mode) {
  const auto letters = base_letters(g, mode);
  FaceWord out;
  for (int j = 1; j <= d; ++j)
    for (int value : {0, 1})
      for (Elem h : letters) out.push_back({h, Face::hyperface(d, j, value)});
  return out;
}

std::vector<TupleElement> to_tuples(const FiniteGroup& g, const FaceWord& gens, int d) {
  std::vector<TupleElement> out;
  for (const FaceLetter& l : gens) out.push_back(face_generator(g, l.h, l.face, d));
  return out;
}

TupleGroup::TupleGroup(GroupPtr base, int d, FaceWord generators, std::uint64_t budget)
    : base_(std::move(base)),
      d_(d),
      letters_(std::move(generators)),
      gen_tuples_(to_tuples(*base_, letters_, d)),
      store_(vertex_count(d), base_->order(), budget) {
  close();
}

TupleGroup::TupleGroup(GroupPtr base, int d, std::vector<TupleElement> generators, std::uint64_t budget)
    : base_(std::move(base)), d_(d), gen_tuples_(std::move(generators)), store_(vertex_count(d), base_->order(), budget) {
  for (const auto& t : gen_tuples_) {
    check_tuple(*base_, t);
    if (t.d != d_) raise(ErrorCode::DimensionMismatch, "generator of wrong dimension");
  }
  close();
}

void TupleGroup::close() {
  const FiniteGroup& g = *base_;
  const std::size_t n = vertex_count(d_);
  std::vector<std::uint32_t> cur(n), next(n);
  const TupleElement id = tuple_identity(g, d_);
  store_.insert(id.entries);
  parent_.push_back(0);
  via_.push_back(0);
  for (std::uint32_t head = 0; head < store_.size(); ++head) {
    store_.get(head, cur);
    for (std::uint32_t k = 0; k < gen_tuples_.size(); ++k) {
      const auto& s = gen_tuples_[k].entries;
      for (std::size_t v = 0; v < n; ++v) next[v] = g.mul(cur[v], s[v]);
      if (store_.insert(next).second) {
        parent_.push_back(head);
        via_.push_back(k);
      }
    }
  }
}

bool TupleGroup::contains(const TupleElement& t) const {
  if (t.d != d_) raise(ErrorCode::DimensionMismatch, "membership query of wrong dimension");
  check_tuple(*base_, t);
  return store_.contains(t.entries);
}

TupleElement TupleGroup::element(std::size_t i) const {
  return TupleElement{d_, store_.at(static_cast<std::uint32_t>(i))};
}

std::vector<std::uint32_t> TupleGroup::word_for(const TupleElement& t) const {
  if (t.d != d_) raise(ErrorCode::DimensionMismatch, "word query of wrong dimension");
  const std::int64_t idx = store_.find(t.entries);
  if (idx < 0) raise(ErrorCode::NotMember, "tuple is not in the generated group");
  std::vector<std::uint32_t> word;
  for (std::uint32_t i = static_cast<std::uint32_t>(idx); i != 0; i = parent_[i]) word.push_back(via_[i]);
  std::reverse(word.begin(), word.end());
  return word;
}

FaceWord TupleGroup::face_word_for(const TupleElement& t) const {
  if (letters_.empty() && !gen_tuples_.empty()) {
    raise(ErrorCode::InvalidParameter, "group was not presented by face letters");
  }
  FaceWord w;
  for (std::uint32_t k : word_for(t)) w.push_back(letters_[k]);
  return w;
}

namespace {

std::mutex cache_mutex;
std::map<std::tuple<std::uint64_t, int, int>, TupleGroupPtr> cache;

}  // namespace

TupleGroupPtr cube_group(const GroupPtr& g, int d, TupleGroupKind kind, std::uint64_t budget) {
  const auto key = std::make_tuple(g->uid(), d, static_cast<int>(kind));
  std::lock_guard lock(cache_mutex);
  if (auto it = cache.find(key); it != cache.end()) {
    if (it->second->size() > budget) {
      raise(ErrorCode::BudgetExceeded, "cached cube group has " + std::to_string(it->second->size()) +
                                           " elements, over budget " + std::to_string(budget));
    }
    return it->second;
  }
  auto group = std::make_shared<const TupleGroup>(g, d, cube_group_generators(*g, d, kind), budget);
  cache.emplace(key, group);
  return group;
}

void clear_cube_group_cache() {
  std::lock_guard lock(cache_mutex);
  cache.clear();
}

bool tuple_group_membership(const GroupPtr& g, const TupleElement& t, TupleGroupKind kind, std::uint64_t budget) {
  check_tuple(*g, t);
  return cube_group(g, t.d, kind, budget)->contains(t);
}

HkFactor factor_hk(const GroupPtr& g, const TupleElement& t, std::uint64_t budget) {
  if (!tuple_group_membership(g, t, TupleGroupKind::HostKra, budget)) {
    raise(ErrorCode::NotMember, "tuple is not in HK^[d]");
  }
  const Elem base = t.entries[0];
  TupleElement f = tuple_mul(*g, t, diagonal(*g, g->inv(base), t.d));
  if (f.entries[0] != g->identity() || !tuple_group_membership(g, f, TupleGroupKind::Face, budget)) {
    raise(ErrorCode::InternalInvariantViolation, "HK element does not factor through F^[d] x diagonal");
  }
  return HkFactor{std::move(f), base};
}

FaceWord normal_form(const FiniteGroup& g, const FaceWord& w, int d, std::uint64_t step_budget) {
  const auto order = order_upper_faces(d);
  std::map<std::uint32_t, int> rank_of;  // upper faces are determined by their mask
  for (std::size_t i = 0; i < order.size(); ++i) rank_of[order[i].mask] = static_cast<int>(i);

  struct Letter {
    Elem h;
    int rank;
  };
  std::vector<Letter> word;
  for (const FaceLetter& l : w) {
    if (l.face.d != d || !l.face.is_upper()) {
      raise(ErrorCode::InvalidLetter, "normal form letters must lie on upper faces of {0,1}^" + std::to_string(d));
    }
    if (!g.valid(l.h)) raise(ErrorCode::InvalidElement, "letter element outside group");
    word.push_back({l.h, rank_of.at(l.face.mask)});
  }

  auto face_of = [&](int rank) { return order[rank]; };
  auto tidy = [&] {
    std::vector<Letter> out;
    for (const Letter& l : word) {
      if (l.h == g.identity()) continue;
      if (!out.empty() && out.back().rank == l.rank) {
        out.back().h = g.mul(out.back().h, l.h);
        if (out.back().h == g.identity()) out.pop_back();
      } else {
        out.push_back(l);
      }
    }
    word = std::move(out);
  };

  std::uint64_t steps = 0;
  while (true) {
    tidy();
    // Highest rank that still has a smaller rank somewhere to its right.
    int best_rank = -1;
    std::size_t best_pos = 0;
    int suffix_min = static_cast<int>(order.size());
    for (std::size_t i = word.size(); i-- > 0;) {
      if (word[i].rank > suffix_min && word[i].rank > best_rank) {
        best_rank = word[i].rank;
        best_pos = i;
      }
      suffix_min = std::min(suffix_min, word[i].rank);
    }
    if (best_rank < 0) break;

    std::size_t pos = best_pos;
    while (pos + 1 < word.size() && word[pos + 1].rank < best_rank) {
      if (++steps > step_budget) {
        raise(ErrorCode::BudgetExceeded, "normal form rewriting exceeded " + std::to_string(step_budget) + " steps");
      }
      const Letter moving = word[pos];
      const Letter other = word[pos + 1];
      const Elem c = commutator(g, moving.h, other.h);
      const Face meet = face_of(moving.rank).intersect(face_of(other.rank));
      if (c == g.identity()) {
        word[pos] = other;
        word[pos + 1] = moving;
        ++pos;
      } else {
        word[pos] = Letter{c, rank_of.at(meet.mask)};
        word.insert(word.begin() + static_cast<std::ptrdiff_t>(pos) + 1, other);
        word[pos + 2] = moving;
        pos += 2;
      }
    }
  }

  FaceWord out;
  std::size_t k = 0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    Elem h = g.identity();
    if (k < word.size() && word[k].rank == static_cast<int>(r)) h = word[k++].h;
    out.push_back({h, order[r]});
  }
  if (evaluate_word(g, out, d) != evaluate_word(g, w, d)) {
    raise(ErrorCode::InternalInvariantViolation, "normal form changed the evaluated tuple");
  }
  return out;
}

TupleElement ceiling_hom(const TupleElement& t) {
  if (t.d < 1) raise(ErrorCode::InvalidDimension, "ceiling of a 0-dimensional tuple");
  const std::uint32_t half = vertex_count(t.d - 1);
  return TupleElement{t.d - 1, {t.entries.begin() + half, t.entries.end()}};
}

TupleElement floor_hom(const TupleElement& t) {
  if (t.d < 1) raise(ErrorCode::InvalidDimension, "floor of a 0-dimensional tuple");
  const std::uint32_t half = vertex_count(t.d - 1);
  return TupleElement{t.d - 1, {t.entries.begin(), t.entries.begin() + half}};
}

TupleElement double_tuple(const TupleElement& t, int i) {
  return TupleElement{t.d + 1, pull_back(t.entries, doubling_morphism(i, t.d))};
}

PureCeilingMixed pure_ceiling_mixed_decompose(const GroupPtr& g, const TupleElement& t, std::uint64_t budget) {
  const int d = t.d;
  if (d < 1) raise(ErrorCode::InvalidDimension, "decomposition needs d >= 1");
  const HkFactor factor = factor_hk(g, t, budget);
  const auto face_group = cube_group(g, d, TupleGroupKind::Face, budget);
  const FaceWord ordered = normal_form(*g, face_group->face_word_for(factor.face_part), d);

  FaceWord pure, mixed;
  for (const FaceLetter& l : ordered) (l.face.is_pure_ceiling() ? pure : mixed).push_back(l);
  // order_upper_faces puts every pure ceiling face first.
  if (!std::equal(pure.begin(), pure.end(), ordered.begin())) {
    raise(ErrorCode::InternalInvariantViolation, "pure ceiling letters are not a prefix of the normal form");
  }

  const TupleElement p = evaluate_word(*g, pure, d);
  const TupleElement m = evaluate_word(*g, mixed, d);
  if (floor_hom(p) != tuple_identity(*g, d - 1)) {
    raise(ErrorCode::InternalInvariantViolation, "pure ceiling product is not of the form Id x h");
  }
  if (floor_hom(m) != ceiling_hom(m)) {
    raise(ErrorCode::InternalInvariantViolation, "mixed product is not of the form s x s");
  }
  PureCeilingMixed out{ceiling_hom(p), tuple_mul(*g, floor_hom(m), diagonal(*g, factor.diagonal, d - 1))};
  const TupleElement id_h = tuple_join(tuple_identity(*g, d - 1), out.h);
  const TupleElement s_s = tuple_join(out.s, out.s);
  if (tuple_mul(*g, id_h, s_s) != t) {
    raise(ErrorCode::InternalInvariantViolation, "decomposition does not reconstruct the element");
  }
  if (!face_group->contains(id_h) || !tuple_group_membership(g, s_s, TupleGroupKind::HostKra, budget)) {
    raise(ErrorCode::InternalInvariantViolation, "decomposition factors left their cube groups");
  }
  return out;
}

json tuple_to_json(const FiniteGroup& g, const TupleElement& t) {
  json arr = json::array();
  for (Elem e : t.entries) arr.push_back(g.label(e));
  return arr;
}

CheckReport verify_key_commutator(const FiniteGroup& g, int d, std::uint64_t trials, std::uint64_t seed,
                                  bool hyperfaces_only) {
  CheckReport rep;
  rep.check = "key_commutator";
  const auto faces = enumerate_faces(d, hyperfaces_only ? FaceFilter::Hyperface : FaceFilter::All);
  std::vector<std::pair<Face, Face>> pairs;
  for (const Face& a : faces)
    for (const Face& b : faces)
      if (a.intersects(b)) pairs.emplace_back(a, b);

  auto one = [&](const Face& f1, const Face& f2, Elem g1, Elem g2) {
    ++rep.cases;
    const TupleElement lhs =
        tuple_commutator(g, face_generator(g, g1, f1, d), face_generator(g, g2, f2, d));
    const TupleElement rhs = face_generator(g, commutator(g, g1, g2), f1.intersect(f2), d);
    if (lhs != rhs) {
      rep.fail({{"F1", f1.to_string()}, {"F2", f2.to_string()}, {"g1", g.label(g1)}, {"g2", g.label(g2)}});
    }
  };

  const std::uint64_t total = std::uint64_t{g.order()} * g.order() * pairs.size();
  rep.exhaustive = total <= (std::uint64_t{1} << 22);
  if (rep.exhaustive) {
    for (const auto& [f1, f2] : pairs)
      for (Elem g1 = 0; g1 < g.order(); ++g1)
        for (Elem g2 = 0; g2 < g.order(); ++g2) one(f1, f2, g1, g2);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_pair(0, pairs.size() - 1);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(g.order() - 1));
    for (std::uint64_t i = 0; i < trials; ++i) {
      const auto& [f1, f2] = pairs[pick_pair(rng)];
      one(f1, f2, pick(rng), pick(rng));
    }
  }
  rep.details = {{"face_pairs", pairs.size()}, {"d", d}};
  return rep;
}

CheckReport face_group_ceiling_image(const GroupPtr& g, int d, std::uint64_t budget) {
  if (d < 1) raise(ErrorCode::InvalidDimension, "ceiling image needs d >= 1");
  CheckReport rep;
  rep.check = "face_group_ceiling_image";
  const auto face = cube_group(g, d, TupleGroupKind::Face, budget);
  std::vector<TupleElement> images;
  for (const auto& gen : face->generator_tuples()) images.push_back(ceiling_hom(gen));
  const TupleGroup image(g, d - 1, images, budget);
  const auto hk = cube_group(g, d - 1, TupleGroupKind::HostKra, budget);
  for (const auto& t : images) {
    ++rep.cases;
    if (!hk->contains(t)) rep.fail({{"image_not_in_HK", tuple_to_json(*g, t)}});
  }
  for (const auto& t : hk->generator_tuples()) {
    ++rep.cases;
    if (!image.contains(t)) rep.fail({{"HK_generator_not_in_image", tuple_to_json(*g, t)}});
  }
  rep.states_visited = image.size() + hk->size();
  rep.details = {{"image_order", image.size()}, {"hk_order", hk->size()}, {"d", d}};
  if (image.size() != hk->size()) rep.fail({{"order_mismatch", {image.size(), hk->size()}}});
  return rep;
}

CheckReport verify_doubling_inclusion(const GroupPtr& g, int d, bool all_elements, std::uint64_t budget) {
  CheckReport rep;
  rep.check = "doubling_inclusion";
  const auto lower = cube_group(g, d, TupleGroupKind::Face, budget);
  const auto upper = cube_group(g, d + 1, TupleGroupKind::Face, budget);
  const FaceWord gens = cube_group_generators(*g, d, TupleGroupKind::Face);
  for (int i = 1; i <= d + 1; ++i) {
    for (const FaceLetter& l : gens) {
      ++rep.cases;
      // Preimage of {w_j = 1} under the coordinate-deleting map.
      int j = 0;
      while (!(l.face.mask >> j & 1u)) ++j;
      const int pos = j + 1;
      const Face pre = Face::hyperface(d + 1, pos < i ? pos : pos + 1, 1);
      const TupleElement doubled = double_tuple(face_generator(*g, l.h, l.face, d), i);
      if (doubled != face_generator(*g, l.h, pre, d + 1)) {
        rep.fail({{"i", i}, {"generator_identity_failed", l.face.to_string()}});
      }
      if (!upper->contains(doubled)) rep.fail({{"i", i}, {"not_in_F", tuple_to_json(*g, doubled)}});
    }
    if (all_elements) {
      for (std::size_t k = 0; k < lower->size(); ++k) {
        ++rep.cases;
        const TupleElement doubled = double_tuple(lower->element(k), i);
        if (!upper->contains(doubled)) rep.fail({{"i", i}, {"not_in_F", tuple_to_json(*g, doubled)}});
      }
    }
  }
  rep.exhaustive = all_elements;
  rep.states_visited = lower->size() + upper->size();
  rep.details = {{"d", d}, {"F_d_order", lower->size()}, {"F_d1_order", upper->size()}};
  return rep;
}

CheckReport factor_hk_suite(const GroupPtr& g, int d, std::uint64_t budget) {
  CheckReport rep;
  rep.check = "factor_hk";
  const auto hk = cube_group(g, d, TupleGroupKind::HostKra, budget);
  for (std::size_t i = 0; i < hk->size(); ++i) {
    const TupleElement t = hk->element(i);
    ++rep.cases;
    try {
      const HkFactor f = factor_hk(g, t, budget);
      if (tuple_mul(*g, f.face_part, diagonal(*g, f.diagonal, d)) != t) rep.fail({{"element", tuple_to_json(*g, t)}});
    } catch (const Error& e) {
      rep.fail({{"element", tuple_to_json(*g, t)}, {"error", e.what()}});
    }
  }
  rep.states_visited = hk->size();
  rep.details = {{"d", d}, {"hk_order", hk->size()}};
  return rep;
}

CheckReport normal_form_suite(const FiniteGroup& g, int d, std::size_t max_length) {
  CheckReport rep;
  rep.check = "normal_form";
  FaceWord alphabet;
  for (const Face& f : order_upper_faces(d))
    for (Elem h : g.generators()) alphabet.push_back({h, f});
  const auto faces = order_upper_faces(d);
  FaceWord word;
  auto visit = [&](auto&& self) -> void {
    ++rep.cases;
    try {
      const FaceWord nf = normal_form(g, word, d);
      bool shape = nf.size() == faces.size();
      for (std::size_t i = 0; shape && i < nf.size(); ++i) shape = nf[i].face == faces[i];
      if (!shape || evaluate_word(g, nf, d) != evaluate_word(g, word, d)) {
        json w = json::array();
        for (const auto& l : word) w.push_back({g.label(l.h), l.face.to_string()});
        rep.fail({{"word", w}});
      }
    } catch (const Error& e) {
      rep.fail({{"error", e.what()}});
    }
    if (word.size() == max_length) return;
    for (const FaceLetter& l : alphabet) {
      word.push_back(l);
      self(self);
      word.pop_back();
    }
  };
  visit(visit);
  rep.details = {{"d", d}, {"max_length", max_length}, {"alphabet", alphabet.size()}};
  return rep;
}

CheckReport decomposition_suite(const GroupPtr& g, int d, std::uint64_t budget) {
  CheckReport rep;
  rep.check = "pure_ceiling_mixed";
  const auto hk = cube_group(g, d, TupleGroupKind::HostKra, budget);
  for (std::size_t i = 0; i < hk->size(); ++i) {
    const TupleElement t = hk->element(i);
    ++rep.cases;
    try {
      const auto parts = pure_ceiling_mixed_decompose(g, t, budget);
      const TupleElement rebuilt =
          tuple_mul(*g, tuple_join(tuple_identity(*g, d - 1), parts.h), tuple_join(parts.s, parts.s));
      if (rebuilt != t) rep.fail({{"element", tuple_to_json(*g, t)}});
    } catch (const Error& e) {
      rep.fail({{"element", tuple_to_json(*g, t)}, {"error", e.what()}});
    }
  }
  rep.states_visited = hk->size();
  rep.details = {{"d", d}, {"hk_order", hk->size()}};
  return rep;
}

CheckReport filtered_decomposition_suite(const GroupPtr& g, int d, std::uint64_t budget) {
  CheckReport rep;
  rep.check = "filtered_decomposition";
  const auto hk = cube_group(g, d, TupleGroupKind::HostKra, budget);
  const auto faces = order_upper_faces(d);
  std::vector<Subgroup> terms;  // terms[c] = G_max(c, 1)
  for (int c = 0; c <= d; ++c) terms.push_back(lower_central_term(*g, static_cast<std::size_t>(std::max(c, 1))));
  std::uint64_t product = 1;
  for (const Face& f : faces) product *= terms[f.codim()].size();
  if (product != hk->size()) rep.fail({{"hk_order", hk->size()}, {"filtered_product", product}});
  for (std::size_t i = 0; i < hk->size(); ++i) {
    const TupleElement t = hk->element(i);
    ++rep.cases;
    const FaceWord nf = normal_form(*g, hk->face_word_for(t), d);
    for (const FaceLetter& l : nf)
      if (!terms[l.face.codim()].contains(l.h)) {
        rep.fail({{"element", tuple_to_json(*g, t)}, {"face", l.face.to_string()}, {"coefficient", g->label(l.h)}});
        break;
      }
  }
  rep.states_visited = hk->size();
  rep.details = {{"d", d}, {"hk_order", hk->size()}, {"filtered_product", product}, {"experimental", true}};
  return rep;
}

}  // namespace hkcube
