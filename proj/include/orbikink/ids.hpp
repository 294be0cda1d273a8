#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>

namespace orbikink {

// Index into one of the graph's tables, tagged so that vertex, edge and dart
// indices cannot be mixed up.
template <typename Tag>
class StrongId {
 public:
  using value_type = std::uint32_t;

  constexpr StrongId() = default;
  constexpr explicit StrongId(value_type v) : value_(v) {}

  constexpr value_type value() const { return value_; }
  constexpr bool valid() const { return value_ != kInvalid; }

  friend constexpr auto operator<=>(StrongId, StrongId) = default;

 private:
  static constexpr value_type kInvalid = std::numeric_limits<value_type>::max();
  value_type value_ = kInvalid;
};

struct VertexTag;
struct EdgeTag;
struct DartTag;

using VertexId = StrongId<VertexTag>;
using EdgeId = StrongId<EdgeTag>;
using DartId = StrongId<DartTag>;

}  // namespace orbikink

template <typename Tag>
struct std::hash<orbikink::StrongId<Tag>> {
  std::size_t operator()(orbikink::StrongId<Tag> id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value());
  }
};
