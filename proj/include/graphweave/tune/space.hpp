#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "graphweave/lang/schedule.hpp"

namespace graphweave {

/// One point of the schedule space for a single traversal label. Axes that have
/// no effect under the other choices hold the first option of their axis.
struct SpacePoint {
  std::string direction;
  std::string parallelization;
  std::int64_t grain = 0;
  std::string sparse_parallelization;  // sparse side of a hybrid direction
  std::int64_t sparse_grain = 0;
  std::string vertexset_layout;
  std::string vertexset_side;
  std::string ssg;  // "none" or a NumSSG scheme
  std::int64_t segments = 0;
  std::string numa;

  bool operator==(const SpacePoint&) const = default;
  auto operator<=>(const SpacePoint&) const = default;
};

struct ScheduleSpace {
  std::vector<std::string> directions;
  std::vector<std::string> parallelization;
  std::vector<std::int64_t> grains;
  std::vector<std::string> vertexset_layouts;
  std::vector<std::string> vertexset_sides;
  std::vector<std::string> ssg;
  std::vector<std::int64_t> segments;
  std::vector<std::string> numa;

  static ScheduleSpace full();
  /// Full space narrowed by a JSON object mapping axis names to option lists.
  /// Axes: direction, parallelization, grain, vertexset_layout, vertexset_side,
  /// ssg, segments, numa. Throws UnknownOption / ParseError.
  static ScheduleSpace from_json(const std::string& text);

  /// Forces every inactive axis of `p` to its first option.
  SpacePoint canonical(SpacePoint p) const;
  /// Every distinct canonical point, in a fixed order.
  std::vector<SpacePoint> enumerate() const;
  std::size_t size() const;
  bool contains(const SpacePoint& p) const;
};

bool is_hybrid_direction(const std::string& direction);
/// Dense direction of a hybrid option ("DensePull-SparsePush" -> "DensePull").
std::string dense_side(const std::string& direction);

/// Scheduling calls for `label` in canonical order: direction, parallelization,
/// vertexset, SSG, NUMA.
std::string point_to_text(const SpacePoint& p, const std::string& label);
Schedule point_to_schedule(const SpacePoint& p, const std::string& label);
/// Compact single-line description used as a cache key.
std::string point_key(const SpacePoint& p);

/// Index in [0, n) from one RNG draw, independent of the standard library's distributions.
std::size_t pick_index(std::mt19937_64& rng, std::size_t n);

/// Uniformly random point of the space.
SpacePoint sample_space(const ScheduleSpace& space, std::mt19937_64& rng);

/// Changes exactly one active axis of `p`. Returns `p` unchanged when no axis can move.
SpacePoint mutate_point(const ScheduleSpace& space, const SpacePoint& p, std::mt19937_64& rng);

}  // namespace graphweave
