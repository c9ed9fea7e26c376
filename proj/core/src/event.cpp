#include "probkb/event.hpp"

#include <algorithm>

namespace probkb {

struct Event::Node {
  NodeKind kind;
  int atom = -1;
  Event a, b;
};

bool AtomTable::valid_name(std::string_view name) {
  if (name.empty()) return false;
  auto lower_or_us = [](char c) { return (c >= 'a' && c <= 'z') || c == '_'; };
  auto tail = [&](char c) { return lower_or_us(c) || (c >= '0' && c <= '9'); };
  if (!lower_or_us(name[0])) return false;
  if (!std::all_of(name.begin() + 1, name.end(), tail)) return false;
  return name != "v" && name != "true" && name != "false";
}

int AtomTable::index_of(std::string_view name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

int AtomTable::add(std::string name) {
  if (!valid_name(name)) throw StructuralError("invalid atom name: " + name);
  if (index_of(name) >= 0) throw StructuralError("duplicate atom name: " + name);
  names.push_back(std::move(name));
  return static_cast<int>(names.size()) - 1;
}

Event Event::bottom() {
  static const auto n = std::make_shared<const Node>(Node{NodeKind::Bottom});
  return Event(n);
}

Event Event::top() {
  static const auto n = std::make_shared<const Node>(Node{NodeKind::Top});
  return Event(n);
}

Event Event::atom(int index) {
  if (index < 0) throw StructuralError("negative atom index");
  return Event(std::make_shared<const Node>(Node{NodeKind::Atom, index}));
}

Event Event::lnot(Event e) {
  if (!e.valid()) throw StructuralError("null event");
  return Event(std::make_shared<const Node>(Node{NodeKind::Not, -1, std::move(e)}));
}

Event Event::land(Event a, Event b) {
  if (!a.valid() || !b.valid()) throw StructuralError("null event");
  return Event(std::make_shared<const Node>(
      Node{NodeKind::And, -1, std::move(a), std::move(b)}));
}

Event Event::lor(Event a, Event b) {
  return lnot(land(lnot(std::move(a)), lnot(std::move(b))));
}

Event Event::implies(Event a, Event b) {
  return lnot(land(std::move(a), lnot(std::move(b))));
}

NodeKind Event::kind() const {
  if (!node_) throw StructuralError("null event");
  return node_->kind;
}

int Event::atom_index() const { return node_->atom; }
const Event& Event::child() const { return node_->a; }
const Event& Event::left() const { return node_->a; }
const Event& Event::right() const { return node_->b; }

int Event::max_atom() const {
  switch (kind()) {
    case NodeKind::Bottom:
    case NodeKind::Top:
      return -1;
    case NodeKind::Atom:
      return node_->atom;
    case NodeKind::Not:
      return node_->a.max_atom();
    case NodeKind::And:
      return std::max(node_->a.max_atom(), node_->b.max_atom());
  }
  return -1;
}

void Event::collect_atoms(std::vector<bool>& used) const {
  switch (kind()) {
    case NodeKind::Bottom:
    case NodeKind::Top:
      return;
    case NodeKind::Atom:
      if (node_->atom >= static_cast<int>(used.size())) used.resize(node_->atom + 1);
      used[node_->atom] = true;
      return;
    case NodeKind::Not:
      node_->a.collect_atoms(used);
      return;
    case NodeKind::And:
      node_->a.collect_atoms(used);
      node_->b.collect_atoms(used);
      return;
  }
}

bool Event::operator==(const Event& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case NodeKind::Bottom:
    case NodeKind::Top:
      return true;
    case NodeKind::Atom:
      return node_->atom == other.node_->atom;
    case NodeKind::Not:
      return node_->a == other.node_->a;
    case NodeKind::And:
      return node_->a == other.node_->a && node_->b == other.node_->b;
  }
  return false;
}

WorldSpace enumerate_worlds(const AtomTable& table, int cap) {
  if (table.size() > cap)
    throw ResourceLimitError("atom table size " + std::to_string(table.size()) +
                             " exceeds world-enumeration cap " + std::to_string(cap));
  return WorldSpace{table.size()};
}

bool eval_event(const World& w, const Event& e) {
  switch (e.kind()) {
    case NodeKind::Bottom:
      return false;
    case NodeKind::Top:
      return true;
    case NodeKind::Atom:
      if (e.atom_index() >= w.num_atoms)
        throw StructuralError("atom index " + std::to_string(e.atom_index()) +
                              " out of range for world over " +
                              std::to_string(w.num_atoms) + " atoms");
      return w.value(e.atom_index());
    case NodeKind::Not:
      return !eval_event(w, e.child());
    case NodeKind::And:
      return eval_event(w, e.left()) && eval_event(w, e.right());
  }
  return false;
}

TriState eval_conditional(const World& w, const ConditionalEvent& c) {
  if (!eval_event(w, c.antecedent)) return TriState::Indeterminate;
  return eval_event(w, c.consequent) ? TriState::True : TriState::False;
}

bool equivalent(const Event& a, const Event& b, int num_atoms) {
  WorldSpace ws{num_atoms};
  for (uint32_t i = 0; i < ws.size(); ++i) {
    World w = ws.world(i);
    if (eval_event(w, a) != eval_event(w, b)) return false;
  }
  return true;
}

std::vector<char> world_mask(const Event& e, const WorldSpace& ws) {
  std::vector<char> mask(ws.size());
  switch (e.kind()) {
    case NodeKind::Bottom:
      return mask;
    case NodeKind::Top:
      std::fill(mask.begin(), mask.end(), 1);
      return mask;
    case NodeKind::Atom: {
      int a = e.atom_index();
      if (a >= ws.num_atoms)
        throw StructuralError("atom index out of range in world_mask");
      for (uint32_t i = 0; i < ws.size(); ++i) mask[i] = (i >> a) & 1u;
      return mask;
    }
    case NodeKind::Not: {
      mask = world_mask(e.child(), ws);
      for (auto& m : mask) m = !m;
      return mask;
    }
    case NodeKind::And: {
      mask = world_mask(e.left(), ws);
      auto rhs = world_mask(e.right(), ws);
      for (uint32_t i = 0; i < ws.size(); ++i) mask[i] = mask[i] && rhs[i];
      return mask;
    }
  }
  return mask;
}

}  // namespace probkb
