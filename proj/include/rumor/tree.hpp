#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rumor/errors.hpp"

namespace rumor {

/// Rumour state of one vertex: ignorant (-1), spreader with i stifling
/// experiences (0 ≤ i < k), or stifler (k). Codes only ever increase.
class VertexState {
 public:
  static constexpr VertexState ignorant() { return VertexState(-1); }
  static constexpr VertexState spreader(int experiences) { return VertexState(experiences); }
  static constexpr VertexState from_code(int code) { return VertexState(code); }

  constexpr int code() const { return code_; }
  constexpr bool is_ignorant() const { return code_ < 0; }
  constexpr bool is_spreader(int k) const { return code_ >= 0 && code_ < k; }
  constexpr bool is_stifler(int k) const { return code_ >= k; }

  friend constexpr auto operator<=>(VertexState, VertexState) = default;

 private:
  explicit constexpr VertexState(int code) : code_(static_cast<std::int8_t>(code)) {}
  std::int8_t code_;
};

/// Arena of the vertices materialised so far. Only vertices that have heard
/// the rumour are stored; an absent child slot is an ignorant vertex.
///
/// Neighbour slots of a vertex run over 0..d. For a vertex with a parent,
/// slot 0 is the parent and slots 1..d are children. The root of the full
/// tree has no parent and uses all d+1 slots for children.
class TruncatedTree {
 public:
  static constexpr std::int32_t kAbsent = -1;

  TruncatedTree(int d, std::size_t vertex_budget) : slots_(static_cast<std::size_t>(d) + 1), budget_(vertex_budget) {}

  std::uint32_t add_root(VertexState state) { return add(kAbsent, 0, state); }

  std::uint32_t add_child(std::uint32_t parent, std::size_t slot, VertexState state) {
    const std::uint32_t child = add(static_cast<std::int32_t>(parent), depth_[parent] + 1, state);
    children_[parent * slots_ + slot] = static_cast<std::int32_t>(child);
    return child;
  }

  std::int32_t child(std::uint32_t v, std::size_t slot) const { return children_[v * slots_ + slot]; }
  std::int32_t parent(std::uint32_t v) const { return parent_[v]; }
  std::uint32_t depth(std::uint32_t v) const { return depth_[v]; }
  VertexState state(std::uint32_t v) const { return state_[v]; }
  void set_state(std::uint32_t v, VertexState s) { state_[v] = s; }

  std::size_t size() const { return depth_.size(); }
  std::size_t neighbour_slots() const { return slots_; }

 private:
  std::uint32_t add(std::int32_t parent, std::uint32_t depth, VertexState state) {
    if (depth_.size() >= budget_) {
      throw ResourceCapExceeded("vertex budget of " + std::to_string(budget_) + " exceeded");
    }
    depth_.push_back(depth);
    parent_.push_back(parent);
    state_.push_back(state);
    children_.resize(children_.size() + slots_, kAbsent);
    return static_cast<std::uint32_t>(depth_.size() - 1);
  }

  std::size_t slots_;
  std::size_t budget_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::int32_t> parent_;
  std::vector<VertexState> state_;
  std::vector<std::int32_t> children_;
};

}  // namespace rumor
