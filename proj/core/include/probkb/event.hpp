#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "probkb/errors.hpp"

namespace probkb {

inline constexpr int kDefaultAtomCap = 16;

// Declaration-ordered table of atom names. Order is stable and drives the
// bit layout of worlds.
struct AtomTable {
  std::vector<std::string> names;

  // [a-z_][a-z0-9_]*, not one of the reserved tokens (v, true, false).
  static bool valid_name(std::string_view name);

  int index_of(std::string_view name) const;
  int add(std::string name);  // throws StructuralError on invalid/duplicate
  int size() const { return static_cast<int>(names.size()); }

  bool operator==(const AtomTable&) const = default;
};

enum class NodeKind { Bottom, Top, Atom, Not, And };

// Immutable propositional event AST. Or / implication are parser sugar and
// are expanded into the primitive connectives at construction time.
class Event {
 public:
  Event() = default;

  static Event bottom();
  static Event top();
  static Event atom(int index);
  static Event lnot(Event e);
  static Event land(Event a, Event b);
  static Event lor(Event a, Event b);      // !(!a & !b)
  static Event implies(Event a, Event b);  // a => b, i.e. !(a & !b)

  bool valid() const { return node_ != nullptr; }
  NodeKind kind() const;
  int atom_index() const;       // Atom only
  const Event& child() const;   // Not only
  const Event& left() const;    // And only
  const Event& right() const;   // And only

  int max_atom() const;  // -1 when no atoms occur
  void collect_atoms(std::vector<bool>& used) const;

  bool operator==(const Event& other) const;  // structural

 private:
  struct Node;
  explicit Event(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct ConditionalEvent {
  Event consequent;  // psi
  Event antecedent;  // phi

  bool operator==(const ConditionalEvent&) const = default;
};

// Truth assignment to atoms 0..num_atoms-1, packed into the index bits
// (bit i = atom i, bit 0 least significant).
struct World {
  uint32_t index = 0;
  int num_atoms = 0;

  bool value(int atom) const { return (index >> atom) & 1u; }
};

// All 2^n worlds in increasing index order.
struct WorldSpace {
  int num_atoms = 0;

  uint32_t size() const { return 1u << num_atoms; }
  World world(uint32_t i) const { return World{i, num_atoms}; }
};

WorldSpace enumerate_worlds(const AtomTable& table, int cap = kDefaultAtomCap);

enum class TriState { False, True, Indeterminate };

bool eval_event(const World& w, const Event& e);
TriState eval_conditional(const World& w, const ConditionalEvent& c);

// Truth-table equivalence over the shared atom space.
bool equivalent(const Event& a, const Event& b, int num_atoms);

// Bitmask of e over all worlds of ws (mask[w] = truth in world w).
std::vector<char> world_mask(const Event& e, const WorldSpace& ws);

}  // namespace probkb
