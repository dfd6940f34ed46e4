#pragma once

// Immutable LTL formula AST shared by all monitoring algorithms.  Nodes are
// reference counted and never mutated, so progression steps can share
// subtrees freely.  Besides plain future LTL, two extra constructors exist
// for the decentralised algorithm: Prev (printed "X~", applied m times to a
// single proposition) is the obligation a local monitor keeps about a
// proposition it cannot observe itself, and Sharp ("#") is the neutral
// placeholder a monitor holds after handing its obligation to a peer.

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltlmon {

// Raised when an internal invariant breaks.  These checks back the
// correctness arguments the algorithms rely on and stay enabled in every
// build configuration.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

enum class Op : std::uint8_t {
  True,
  False,
  Atom,
  Sharp,
  Not,
  Next,
  Finally,
  Globally,
  And,
  Or,
  Until,
  Prev,  // X~^steps p, steps >= 1, p a plain proposition
};

class Formula {
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

 public:
  // Default-constructed formulas are "true"; containers need this.
  Formula() : node_(true_node()) {}

  static Formula tt() { return Formula(true_node()); }
  static Formula ff() { return Formula(false_node()); }
  static Formula sharp() { return Formula(sharp_node()); }

  static Formula atom(std::string name) {
    if (name.empty()) throw std::invalid_argument("atom needs a name");
    return make(Op::Atom, std::move(name), 0, nullptr, nullptr);
  }

  // X~^steps name: the proposition held `steps` events in the past.
  static Formula prev(std::uint32_t steps, std::string name) {
    if (steps == 0) throw std::invalid_argument("X~ needs at least one step");
    if (name.empty()) throw std::invalid_argument("X~ needs a proposition");
    return make(Op::Prev, std::move(name), steps, nullptr, nullptr);
  }

  static Formula neg(Formula f) {
    return make(Op::Not, "", 0, f.node_, nullptr);
  }
  static Formula next(Formula f) {
    return make(Op::Next, "", 0, f.node_, nullptr);
  }
  static Formula eventually(Formula f) {
    return make(Op::Finally, "", 0, f.node_, nullptr);
  }
  static Formula always(Formula f) {
    return make(Op::Globally, "", 0, f.node_, nullptr);
  }
  static Formula conj(Formula a, Formula b) {
    return make(Op::And, "", 0, a.node_, b.node_);
  }
  static Formula disj(Formula a, Formula b) {
    return make(Op::Or, "", 0, a.node_, b.node_);
  }
  static Formula until(Formula a, Formula b) {
    return make(Op::Until, "", 0, a.node_, b.node_);
  }

  Op op() const;
  bool is(Op o) const { return op() == o; }

  // Atom / Prev payloads.
  const std::string& name() const;
  std::uint32_t steps() const;

  // Sole child of unary operators, left child of binary ones.
  Formula lhs() const;
  Formula rhs() const;

  // Number of temporal operators (X, F, G, U); Prev is bookkeeping and does
  // not count.
  std::uint32_t temporal_size() const;
  std::uint32_t node_count() const;
  // Largest m over all Prev(m, p) nodes, 0 when past-free.
  std::uint32_t prev_depth() const;
  bool has_prev() const;
  bool has_sharp() const;

  // Stable identity of the shared node, usable as a memoisation key.
  const void* key() const { return node_.get(); }

  std::size_t hash() const;

  friend bool operator==(const Formula& a, const Formula& b) {
    return eq(a.node_.get(), b.node_.get());
  }
  friend bool operator!=(const Formula& a, const Formula& b) {
    return !(a == b);
  }

 private:
  explicit Formula(NodePtr n) : node_(std::move(n)) {}

  static Formula make(Op op, std::string name, std::uint32_t steps,
                      NodePtr l, NodePtr r);
  static const NodePtr& true_node();
  static const NodePtr& false_node();
  static const NodePtr& sharp_node();
  static bool eq(const Node* a, const Node* b);

  NodePtr node_;
};

struct Formula::Node {
  Op op;
  std::string name;
  std::uint32_t steps = 0;
  NodePtr kid[2];

  // Derived data, filled once at construction.
  std::size_t hash = 0;
  std::uint32_t n_temporal = 0;
  std::uint32_t n_nodes = 1;
  std::uint32_t prev_depth = 0;
  bool with_prev = false;
  bool with_sharp = false;
};

inline Formula Formula::make(Op op, std::string name, std::uint32_t steps,
                             NodePtr l, NodePtr r) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->name = std::move(name);
  n->steps = steps;
  n->kid[0] = std::move(l);
  n->kid[1] = std::move(r);

  std::size_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::size_t>(op);
  h = h * 0x100000001b3ull ^ std::hash<std::string>{}(n->name);
  h = h * 0x100000001b3ull ^ steps;
  n->with_prev = op == Op::Prev;
  n->with_sharp = op == Op::Sharp;
  n->prev_depth = op == Op::Prev ? steps : 0;
  n->n_temporal = (op == Op::Next || op == Op::Finally ||
                   op == Op::Globally || op == Op::Until)
                      ? 1
                      : 0;
  for (const NodePtr& k : n->kid) {
    if (!k) continue;
    h = h * 0x100000001b3ull ^ k->hash;
    n->n_temporal += k->n_temporal;
    n->n_nodes += k->n_nodes;
    n->prev_depth = std::max(n->prev_depth, k->prev_depth);
    n->with_prev = n->with_prev || k->with_prev;
    n->with_sharp = n->with_sharp || k->with_sharp;
  }
  n->hash = h;
  return Formula(NodePtr(std::move(n)));
}

inline const Formula::NodePtr& Formula::true_node() {
  static const NodePtr n = make(Op::True, "", 0, nullptr, nullptr).node_;
  return n;
}
inline const Formula::NodePtr& Formula::false_node() {
  static const NodePtr n = make(Op::False, "", 0, nullptr, nullptr).node_;
  return n;
}
inline const Formula::NodePtr& Formula::sharp_node() {
  static const NodePtr n = make(Op::Sharp, "", 0, nullptr, nullptr).node_;
  return n;
}

inline Op Formula::op() const { return node_->op; }

inline const std::string& Formula::name() const {
  if (node_->op != Op::Atom && node_->op != Op::Prev)
    throw internal_error("name() on an operator node");
  return node_->name;
}

inline std::uint32_t Formula::steps() const {
  if (node_->op != Op::Prev) throw internal_error("steps() on a non-X~ node");
  return node_->steps;
}

inline Formula Formula::lhs() const {
  if (!node_->kid[0]) throw internal_error("lhs() on a leaf");
  return Formula(node_->kid[0]);
}

inline Formula Formula::rhs() const {
  if (!node_->kid[1]) throw internal_error("rhs() on a non-binary node");
  return Formula(node_->kid[1]);
}

inline std::uint32_t Formula::temporal_size() const {
  return node_->n_temporal;
}
inline std::uint32_t Formula::node_count() const { return node_->n_nodes; }
inline std::uint32_t Formula::prev_depth() const { return node_->prev_depth; }
inline bool Formula::has_prev() const { return node_->with_prev; }
inline bool Formula::has_sharp() const { return node_->with_sharp; }
inline std::size_t Formula::hash() const { return node_->hash; }

inline bool Formula::eq(const Node* a, const Node* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->op != b->op || a->steps != b->steps ||
      a->name != b->name)
    return false;
  return eq(a->kid[0].get(), b->kid[0].get()) &&
         eq(a->kid[1].get(), b->kid[1].get());
}

// Free-function helpers ----------------------------------------------------

inline std::uint32_t temporal_size(const Formula& f) {
  return f.temporal_size();
}

// All proposition names occurring in f, whether as plain atoms or inside X~
// obligations.
inline void prop_of(const Formula& f, std::set<std::string>& out) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Prev:
      out.insert(f.name());
      return;
    case Op::True:
    case Op::False:
    case Op::Sharp:
      return;
    case Op::Not:
    case Op::Next:
    case Op::Finally:
    case Op::Globally:
      prop_of(f.lhs(), out);
      return;
    case Op::And:
    case Op::Or:
    case Op::Until:
      prop_of(f.lhs(), out);
      prop_of(f.rhs(), out);
      return;
  }
}

inline std::set<std::string> prop_of(const Formula& f) {
  std::set<std::string> out;
  prop_of(f, out);
  return out;
}

// Right-nested conjunction / disjunction over a list.
inline Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::tt();
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;)
    acc = Formula::conj(fs[i], acc);
  return acc;
}

inline Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::ff();
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;)
    acc = Formula::disj(fs[i], acc);
  return acc;
}

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

}  // namespace ltlmon

template <>
struct std::hash<ltlmon::Formula> {
  std::size_t operator()(const ltlmon::Formula& f) const { return f.hash(); }
};
