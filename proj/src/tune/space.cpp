#include "graphweave/tune/space.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "graphweave/error.hpp"
#include "graphweave/lang/parser.hpp"

namespace graphweave {

namespace {

struct ParChoice {
  std::string par;
  std::int64_t grain;
};

struct SsgChoice {
  std::string scheme;
  std::int64_t segments;
  std::string numa;
};

std::vector<ParChoice> par_choices(const ScheduleSpace& s) {
  std::vector<ParChoice> out;
  for (const auto& p : s.parallelization) {
    if (p == "serial") {
      out.push_back({p, s.grains.front()});
    } else {
      for (auto g : s.grains) out.push_back({p, g});
    }
  }
  return out;
}

std::vector<SsgChoice> ssg_choices(const ScheduleSpace& s) {
  std::vector<SsgChoice> out;
  for (const auto& k : s.ssg) {
    if (k == "none") {
      out.push_back({k, s.segments.front(), s.numa.front()});
    } else {
      for (auto seg : s.segments) {
        for (const auto& nm : s.numa) out.push_back({k, seg, nm});
      }
    }
  }
  return out;
}

template <class T>
void restrict_axis(const nlohmann::json& j, const char* key, std::vector<T>& axis) {
  if (!j.contains(key)) return;
  const auto& list = j.at(key);
  if (!list.is_array() || list.empty()) {
    throw Error(ErrorKind::ParseError, std::string("space axis '") + key + "' must be a non-empty list");
  }
  std::vector<T> kept;
  for (const auto& item : list) {
    T v;
    try {
      v = item.get<T>();
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrorKind::ParseError, std::string("bad value in space axis '") + key + "'");
    }
    if (std::find(axis.begin(), axis.end(), v) == axis.end()) {
      std::ostringstream os;
      os << "'" << v << "' is not an option of axis '" << key << "'";
      throw Error(ErrorKind::UnknownOption, os.str());
    }
    if (std::find(kept.begin(), kept.end(), v) == kept.end()) kept.push_back(v);
  }
  axis = kept;
}

template <class T>
T other_option(const std::vector<T>& axis, const T& current, std::mt19937_64& rng) {
  std::vector<T> rest;
  for (const auto& v : axis) {
    if (!(v == current)) rest.push_back(v);
  }
  return rest[pick_index(rng, rest.size())];
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

ScheduleSpace ScheduleSpace::full() {
  ScheduleSpace s;
  s.directions = options::kDirections;
  s.parallelization = options::kParallelization;
  s.grains = {64, 256, 1024, 4096};
  s.vertexset_layouts = options::kDenseVertexSet;
  s.vertexset_sides = options::kVertexSetSides;
  s.ssg = {"none"};
  for (const auto& k : options::kNumSSG) s.ssg.push_back(k);
  s.segments = {1, 2, 4, 8, 16};
  s.numa = options::kNUMA;
  return s;
}

ScheduleSpace ScheduleSpace::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("space file: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "space file must hold a JSON object");
  static const std::vector<std::string> keys = {"direction", "parallelization", "grain", "vertexset_layout",
                                                "vertexset_side", "ssg", "segments", "numa"};
  for (const auto& [k, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      throw Error(ErrorKind::UnknownOption, "unknown space axis '" + k + "'");
    }
  }
  ScheduleSpace s = full();
  restrict_axis(j, "direction", s.directions);
  restrict_axis(j, "parallelization", s.parallelization);
  restrict_axis(j, "grain", s.grains);
  restrict_axis(j, "vertexset_layout", s.vertexset_layouts);
  restrict_axis(j, "vertexset_side", s.vertexset_sides);
  restrict_axis(j, "ssg", s.ssg);
  restrict_axis(j, "segments", s.segments);
  restrict_axis(j, "numa", s.numa);
  return s;
}

bool is_hybrid_direction(const std::string& direction) { return direction.find('-') != std::string::npos; }

std::string dense_side(const std::string& direction) { return direction.substr(0, direction.find('-')); }

SpacePoint ScheduleSpace::canonical(SpacePoint p) const {
  if (p.parallelization == "serial") p.grain = grains.front();
  if (!is_hybrid_direction(p.direction)) {
    p.sparse_parallelization = parallelization.front();
    p.sparse_grain = grains.front();
  }
  if (p.sparse_parallelization == "serial") p.sparse_grain = grains.front();
  if (p.ssg == "none") {
    p.segments = segments.front();
    p.numa = numa.front();
  }
  return p;
}

std::vector<SpacePoint> ScheduleSpace::enumerate() const {
  std::vector<SpacePoint> out;
  auto pars = par_choices(*this);
  auto ssgs = ssg_choices(*this);
  for (const auto& d : directions) {
    std::vector<std::pair<ParChoice, ParChoice>> combos;
    for (const auto& a : pars) {
      if (is_hybrid_direction(d)) {
        for (const auto& b : pars) combos.push_back({a, b});
      } else {
        combos.push_back({a, ParChoice{parallelization.front(), grains.front()}});
      }
    }
    for (const auto& [a, b] : combos) {
      for (const auto& layout : vertexset_layouts) {
        for (const auto& side : vertexset_sides) {
          for (const auto& sg : ssgs) {
            SpacePoint p{d, a.par, a.grain, b.par, b.grain, layout, side, sg.scheme, sg.segments, sg.numa};
            out.push_back(canonical(p));
          }
        }
      }
    }
  }
  return out;
}

std::size_t ScheduleSpace::size() const {
  std::size_t np = par_choices(*this).size();
  std::size_t dir_part = 0;
  for (const auto& d : directions) dir_part += is_hybrid_direction(d) ? np * np : np;
  return dir_part * vertexset_layouts.size() * vertexset_sides.size() * ssg_choices(*this).size();
}

bool ScheduleSpace::contains(const SpacePoint& p) const {
  auto has = [](const auto& axis, const auto& v) { return std::find(axis.begin(), axis.end(), v) != axis.end(); };
  return has(directions, p.direction) && has(parallelization, p.parallelization) && has(grains, p.grain) &&
         has(parallelization, p.sparse_parallelization) && has(grains, p.sparse_grain) &&
         has(vertexset_layouts, p.vertexset_layout) && has(vertexset_sides, p.vertexset_side) && has(ssg, p.ssg) &&
         has(segments, p.segments) && has(numa, p.numa) && canonical(p) == p;
}

std::string point_to_text(const SpacePoint& p, const std::string& label) {
  std::ostringstream os;
  std::string l = quoted(label);
  bool hybrid = is_hybrid_direction(p.direction);
  std::string dense = hybrid ? ", " + quoted(dense_side(p.direction)) : "";
  auto par_call = [&](const std::string& par, std::int64_t grain, const std::string& qual) {
    os << "\n    ->configApplyParallelization(" << l << ", " << quoted(par);
    if (par != "serial") os << ", " << grain;
    os << qual << ")";
  };
  os << "program->configApplyDirection(" << l << ", " << quoted(p.direction) << ")";
  if (hybrid) {
    par_call(p.parallelization, p.grain, dense);
    par_call(p.sparse_parallelization, p.sparse_grain, ", \"SparsePush\"");
  } else {
    par_call(p.parallelization, p.grain, "");
  }
  os << "\n    ->configApplyDenseVertexSet(" << l << ", " << quoted(p.vertexset_layout) << ", "
     << quoted(p.vertexset_side) << dense << ")";
  if (p.ssg != "none") {
    os << "\n    ->configApplyNumSSG(" << l << ", " << quoted(p.ssg) << ", " << p.segments << dense << ")";
    os << "\n    ->configApplyNUMA(" << l << ", " << quoted(p.numa) << dense << ")";
  }
  os << ";";
  return os.str();
}

Schedule point_to_schedule(const SpacePoint& p, const std::string& label) {
  return parse_schedule_text(point_to_text(p, label));
}

std::string point_key(const SpacePoint& p) {
  std::ostringstream os;
  os << p.direction << " | " << p.parallelization << ":" << p.grain;
  if (is_hybrid_direction(p.direction)) os << " | " << p.sparse_parallelization << ":" << p.sparse_grain;
  os << " | " << p.vertexset_layout << "/" << p.vertexset_side;
  if (p.ssg != "none") os << " | " << p.ssg << ":" << p.segments << ":" << p.numa;
  return os.str();
}

std::size_t pick_index(std::mt19937_64& rng, std::size_t n) {
  unsigned __int128 x = static_cast<unsigned __int128>(rng()) * n;
  return static_cast<std::size_t>(x >> 64);
}

SpacePoint sample_space(const ScheduleSpace& space, std::mt19937_64& rng) {
  auto pars = par_choices(space);
  auto ssgs = ssg_choices(space);
  std::size_t np = pars.size();
  std::size_t total = 0;
  for (const auto& d : space.directions) total += is_hybrid_direction(d) ? np * np : np;
  std::size_t r = pick_index(rng, total);
  SpacePoint p;
  for (const auto& d : space.directions) {
    std::size_t w = is_hybrid_direction(d) ? np * np : np;
    if (r < w) {
      p.direction = d;
      break;
    }
    r -= w;
  }
  const ParChoice& a = pars[pick_index(rng, np)];
  p.parallelization = a.par;
  p.grain = a.grain;
  if (is_hybrid_direction(p.direction)) {
    const ParChoice& b = pars[pick_index(rng, np)];
    p.sparse_parallelization = b.par;
    p.sparse_grain = b.grain;
  }
  p.vertexset_layout = space.vertexset_layouts[pick_index(rng, space.vertexset_layouts.size())];
  p.vertexset_side = space.vertexset_sides[pick_index(rng, space.vertexset_sides.size())];
  const SsgChoice& c = ssgs[pick_index(rng, ssgs.size())];
  p.ssg = c.scheme;
  p.segments = c.segments;
  p.numa = c.numa;
  return space.canonical(p);
}

SpacePoint mutate_point(const ScheduleSpace& space, const SpacePoint& p, std::mt19937_64& rng) {
  enum Axis { Dir, Par, Grain, SPar, SGrain, Layout, Side, Ssg, Seg, Numa };
  bool hybrid = is_hybrid_direction(p.direction);
  std::vector<Axis> axes;
  auto add = [&](Axis a, std::size_t options, bool active) {
    if (active && options > 1) axes.push_back(a);
  };
  add(Dir, space.directions.size(), true);
  add(Par, space.parallelization.size(), true);
  add(Grain, space.grains.size(), p.parallelization != "serial");
  add(SPar, space.parallelization.size(), hybrid);
  add(SGrain, space.grains.size(), hybrid && p.sparse_parallelization != "serial");
  add(Layout, space.vertexset_layouts.size(), true);
  add(Side, space.vertexset_sides.size(), true);
  add(Ssg, space.ssg.size(), true);
  add(Seg, space.segments.size(), p.ssg != "none");
  add(Numa, space.numa.size(), p.ssg != "none");
  if (axes.empty()) return p;
  SpacePoint q = p;
  switch (axes[pick_index(rng, axes.size())]) {
    case Dir: q.direction = other_option(space.directions, p.direction, rng); break;
    case Par: q.parallelization = other_option(space.parallelization, p.parallelization, rng); break;
    case Grain: q.grain = other_option(space.grains, p.grain, rng); break;
    case SPar: q.sparse_parallelization = other_option(space.parallelization, p.sparse_parallelization, rng); break;
    case SGrain: q.sparse_grain = other_option(space.grains, p.sparse_grain, rng); break;
    case Layout: q.vertexset_layout = other_option(space.vertexset_layouts, p.vertexset_layout, rng); break;
    case Side: q.vertexset_side = other_option(space.vertexset_sides, p.vertexset_side, rng); break;
    case Ssg: q.ssg = other_option(space.ssg, p.ssg, rng); break;
    case Seg: q.segments = other_option(space.segments, p.segments, rng); break;
    case Numa: q.numa = other_option(space.numa, p.numa, rng); break;
  }
  return space.canonical(q);
}

}  // namespace graphweave
