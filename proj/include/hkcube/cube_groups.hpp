#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <vector>

#include "hkcube/cube.hpp"
#include "hkcube/group.hpp"
#include "hkcube/packed_store.hpp"
#include "hkcube/report.hpp"

namespace hkcube {

constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

/// Element of G^{[d]}: one base-group element per vertex.
struct TupleElement {
  int d = 0;
  std::vector<Elem> entries;

  bool operator==(const TupleElement&) const = default;
};

TupleElement tuple_identity(const FiniteGroup& g, int d);
TupleElement tuple_mul(const FiniteGroup& g, const TupleElement& a, const TupleElement& b);
TupleElement tuple_inv(const FiniteGroup& g, const TupleElement& a);
TupleElement tuple_commutator(const FiniteGroup& g, const TupleElement& a, const TupleElement& b);
/// h^{[d]}.
TupleElement diagonal(const FiniteGroup& g, Elem h, int d);
/// [h]_F: h on the vertices of F, identity elsewhere.
TupleElement face_generator(const FiniteGroup& g, Elem h, const Face& f, int d);
/// Product (floor, ceiling) viewed as a tuple one dimension higher.
TupleElement tuple_join(const TupleElement& floor, const TupleElement& ceiling);

/// [h]_F letter of a face word.
struct FaceLetter {
  Elem h;
  Face face;
  bool operator==(const FaceLetter&) const = default;
};
using FaceWord = std::vector<FaceLetter>;

TupleElement evaluate_word(const FiniteGroup& g, const FaceWord& w, int d);

enum class TupleGroupKind { HostKra, Face };
enum class GeneratorMode { Generators, Elements };

/// Face generators over the upper hyperfaces, ordered by hyperface then by
/// base element. For Host-Kra the diagonals are appended.
FaceWord cube_group_generators(const FiniteGroup& g, int d, TupleGroupKind kind,
                               GeneratorMode mode = GeneratorMode::Generators);
/// Host-Kra presentation over every hyperface (both orientations).
FaceWord hk_generators_all_hyperfaces(const FiniteGroup& g, int d,
                                      GeneratorMode mode = GeneratorMode::Generators);

std::vector<TupleElement> to_tuples(const FiniteGroup& g, const FaceWord& gens, int d);

/// Exact closure of a generated subgroup of G^{[d]}.
///
/// Elements are stored packed in discovery order; each records its parent
/// and the generator that reached it, so a word over the generators can be
/// read back for any member.
class TupleGroup {
 public:
  TupleGroup(GroupPtr base, int d, FaceWord generators, std::uint64_t budget);
  TupleGroup(GroupPtr base, int d, std::vector<TupleElement> generators, std::uint64_t budget);

  const FiniteGroup& base() const { return *base_; }
  int dim() const { return d_; }
  std::size_t size() const { return store_.size(); }
  bool contains(const TupleElement& t) const;
  TupleElement element(std::size_t i) const;
  const std::vector<TupleElement>& generator_tuples() const { return gen_tuples_; }
  /// Generator indices whose left-to-right product is `t`; throws NotMember.
  std::vector<std::uint32_t> word_for(const TupleElement& t) const;
  /// Same as word_for, as face letters; requires a face-word presentation.
  FaceWord face_word_for(const TupleElement& t) const;

 private:
  void close();

  GroupPtr base_;
  int d_;
  FaceWord letters_;
  std::vector<TupleElement> gen_tuples_;
  PackedStore store_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> via_;
};

using TupleGroupPtr = std::shared_ptr<const TupleGroup>;

/// HK^{[d]} or F^{[d]} from the shared generated-set cache, keyed by
/// (group uid, d, kind). Thread-safe.
TupleGroupPtr cube_group(const GroupPtr& g, int d, TupleGroupKind kind,
                         std::uint64_t budget = kDefaultBudget);
void clear_cube_group_cache();

bool tuple_group_membership(const GroupPtr& g, const TupleElement& t, TupleGroupKind kind,
                            std::uint64_t budget = kDefaultBudget);

struct HkFactor {
  TupleElement face_part;  // in F^{[d]}
  Elem diagonal;           // t with g = f * t^{[d]}
};
HkFactor factor_hk(const GroupPtr& g, const TupleElement& t, std::uint64_t budget = kDefaultBudget);

/// Ordered-product normal form over the upper faces of {0,1}^d.
///
/// Rewrites with [g]_{S_j}[h]_{S_i} = [[g,h]]_{S_i cap S_j}[h]_{S_i}[g]_{S_j},
/// always pushing the highest-ranked out-of-order letter right. Commutator
/// letters land on strictly lower-ranked faces, so the letters of the
/// current top rank are all driven to the end before any lower rank moves;
/// induction on the rank gives termination. The result has exactly one
/// letter per upper face in order_upper_faces order.
FaceWord normal_form(const FiniteGroup& g, const FaceWord& w, int d,
                     std::uint64_t step_budget = 10'000'000);

struct PureCeilingMixed {
  TupleElement h;  // over {0,1}^{d-1}: g's pure ceiling part is Id x h
  TupleElement s;  // over {0,1}^{d-1}: mixed part times diagonal is s x s
};
PureCeilingMixed pure_ceiling_mixed_decompose(const GroupPtr& g, const TupleElement& t,
                                              std::uint64_t budget = kDefaultBudget);

/// Restriction to the ceiling {omega_d = 1}, re-indexed over {0,1}^{d-1}.
TupleElement ceiling_hom(const TupleElement& t);
TupleElement floor_hom(const TupleElement& t);
/// D_i(t) = t o pi_i, one dimension up.
TupleElement double_tuple(const TupleElement& t, int i);

/// [[g1]_{F1}, [g2]_{F2}] == [[g1, g2]]_{F1 cap F2} over face pairs with a
/// common vertex. Exhaustive when |G|^2 * pairs <= 2^22, else `trials`
/// random cases drawn with `seed`.
CheckReport verify_key_commutator(const FiniteGroup& g, int d, std::uint64_t trials = 100000,
                                  std::uint64_t seed = 1, bool hyperfaces_only = false);

/// phi_c(F^{[d]}) == HK^{[d-1]} by membership in both directions.
CheckReport face_group_ceiling_image(const GroupPtr& g, int d, std::uint64_t budget = kDefaultBudget);

/// D_i(F^{[d]}) subset F^{[d+1]} for all i; the generator identity
/// D_i([h]_F) = [h]_{pi_i^{-1} F} is checked separately. With `all_elements`
/// every element of F^{[d]} is doubled, not only the generators.
CheckReport verify_doubling_inclusion(const GroupPtr& g, int d, bool all_elements,
                                      std::uint64_t budget = kDefaultBudget);

/// factor_hk on every element of HK^{[d]}, checking f * t^{[d]} == g.
CheckReport factor_hk_suite(const GroupPtr& g, int d, std::uint64_t budget = kDefaultBudget);
/// normal_form on every word of length <= max_length over the letters
/// [s]_F, s a generator and F an upper face.
CheckReport normal_form_suite(const FiniteGroup& g, int d, std::size_t max_length);
/// pure_ceiling_mixed_decompose on every element of HK^{[d]}.
CheckReport decomposition_suite(const GroupPtr& g, int d, std::uint64_t budget = kDefaultBudget);

/// Experimental: every element of HK^{[d]} is an ordered product over the
/// upper faces S of [g_S]_S with g_S in G_{codim S} (G_0 = G), and
/// |HK^{[d]}| equals the product of the |G_{codim S}|. Checked through the
/// normal form of a word for each element.
CheckReport filtered_decomposition_suite(const GroupPtr& g, int d, std::uint64_t budget = kDefaultBudget);

nlohmann::json tuple_to_json(const FiniteGroup& g, const TupleElement& t);

}  // namespace hkcube
