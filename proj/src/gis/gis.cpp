#include "graphweave/gis/gis.hpp"

#include <functional>
#include <set>
#include <utility>

#include "graphweave/lang/labels.hpp"

namespace graphweave {

const char* par_tag_name(ParTag t) {
  switch (t) {
    case ParTag::SR: return "SR";
    case ParTag::SP: return "SP";
    case ParTag::WSP: return "WSP";
  }
  return "";
}

const char* part_scheme_name(PartScheme s) { return s == PartScheme::FVC ? "FVC" : "EVC"; }
const char* dir_tag_name(DirTag d) { return d == DirTag::Src ? "src" : "dst"; }

const char* filter_tag_name(FilterTag f) {
  switch (f) {
    case FilterTag::None: return "";
    case FilterTag::SA: return "SA";
    case FilterTag::BA: return "BA";
    case FilterTag::BV: return "BV";
  }
  return "";
}

const char* direction_name(Direction d) {
  switch (d) {
    case Direction::SparsePush: return "SparsePush";
    case Direction::DensePush: return "DensePush";
    case Direction::DensePull: return "DensePull";
  }
  return "";
}

std::optional<Direction> direction_from_name(const std::string& s) {
  for (Direction d : {Direction::SparsePush, Direction::DensePush, Direction::DensePull}) {
    if (s == direction_name(d)) return d;
  }
  return std::nullopt;
}

Direction GisVector::direction() const {
  if (outer.dir == DirTag::Dst) return Direction::DensePull;
  return outer.filter == FilterTag::SA ? Direction::SparsePush : Direction::DensePush;
}

GisVector direction_vector(Direction d, bool has_from, bool has_to) {
  GisVector v;
  auto frontier = [](bool present) { return present ? FilterTag::BA : FilterTag::None; };
  switch (d) {
    case Direction::SparsePush:
      v.outer = {DirTag::Src, ParTag::SR, FilterTag::SA};
      v.inner = {DirTag::Dst, ParTag::SR, frontier(has_to)};
      break;
    case Direction::DensePush:
      v.outer = {DirTag::Src, ParTag::SR, frontier(has_from)};
      v.inner = {DirTag::Dst, ParTag::SR, frontier(has_to)};
      break;
    case Direction::DensePull:
      v.outer = {DirTag::Dst, ParTag::SR, frontier(has_to)};
      v.inner = {DirTag::Src, ParTag::SR, frontier(has_from)};
      break;
  }
  return v;
}

ExecutionPlan default_plan(const Program& p, const Stmt& s) {
  const Expr* e = chain_expr_of(p, s);
  if (!e) throw Error(ErrorKind::InvalidCombination, "statement is not an edgeset traversal", s.pos);
  ExecutionPlan plan;
  plan.stmt_id = s.id;
  plan.label = label_path_of(p, s.id);
  plan.chain = *extract_apply_chain(p, *e);
  plan.variants.push_back(
      PlanVariant{direction_vector(Direction::SparsePush, plan.chain.from_set.has_value(), plan.chain.to_set.has_value())});
  return plan;
}

const ExecutionPlan* ScheduledProgram::plan_for_label(const std::string& label) const {
  for (const auto& [id, plan] : plans) {
    if (plan.label == label) return &plan;
  }
  return nullptr;
}

void validate_plan(const ExecutionPlan& plan) {
  auto bad = [&](const std::string& msg) {
    throw Error(ErrorKind::InvalidCombination, "plan " + plan.label + ": " + msg);
  };
  if (plan.variants.empty() || plan.variants.size() > 2) bad("a plan holds one or two vectors");
  if (plan.hybrid() && plan.variants[0].gis.direction() == plan.variants[1].gis.direction()) {
    bad("hybrid vectors must differ in direction");
  }
  for (const auto& v : plan.variants) {
    if (v.gis.outer.dir == v.gis.inner.dir) bad("outer and inner directions coincide");
    if (v.gis.inner.filter == FilterTag::SA) bad("sparse-array filter on the inner dimension");
    if (v.gis.outer.filter == FilterTag::SA && v.gis.outer.dir != DirTag::Src) bad("sparse-array filter on pull");
    if (v.gis.bsg && v.gis.bsg->amount < 1) bad("grain size must be positive");
    if (v.gis.ssg && v.gis.ssg->amount < 1) bad("segment count must be positive");
    if (v.edge_grain < 1) bad("edge grain must be positive");
  }
  if (plan.chain.modified == plan.chain.tracked_vector.empty()) bad("tracked vector mismatch");
}

namespace {

bool is_structural(SchedFunc f) {
  return f == SchedFunc::FuseForLoop || f == SchedFunc::FuseApplyFunctions || f == SchedFunc::SplitForLoop ||
         f == SchedFunc::FuseFields;
}

struct PlanState {
  bool configured = false;  // any call besides configApplyDirection has been applied
  // Per variant direction: last option applied by each scheduling function.
  std::map<std::pair<Direction, SchedFunc>, std::string> seen;
};

std::string call_key(const ScheduleCall& c) {
  return c.option + "/" + c.vertexset_side + "/" + (c.number ? std::to_string(*c.number) : std::string("-"));
}

class Lowering {
 public:
  Lowering(ScheduledProgram& sp, ValidationMode mode) : sp_(sp), mode_(mode) {}

  void apply(const ScheduleCall& c) {
    const std::string& label = c.labels.at(0);
    const Stmt& st = resolve_label(std::as_const(sp_.program), label);
    auto it = sp_.plans.find(st.id);
    if (it == sp_.plans.end()) {
      fail(c, label + " is not an edgeset traversal");
      return;
    }
    ExecutionPlan& plan = it->second;
    PlanState& state = states_[st.id];

    if (c.func == SchedFunc::ConfigApplyDirection) {
      if (state.configured) {
        fail(c, "configApplyDirection on " + label + " must precede its other configuration");
        return;
      }
      bool from = plan.chain.from_set.has_value();
      bool to = plan.chain.to_set.has_value();
      plan.variants.clear();
      if (c.option == "DensePull-SparsePush") {
        plan.variants.push_back(PlanVariant{direction_vector(Direction::DensePull, from, to)});
        plan.variants.push_back(PlanVariant{direction_vector(Direction::SparsePush, from, to)});
      } else if (c.option == "DensePush-SparsePush") {
        plan.variants.push_back(PlanVariant{direction_vector(Direction::DensePush, from, to)});
        plan.variants.push_back(PlanVariant{direction_vector(Direction::SparsePush, from, to)});
      } else {
        plan.variants.push_back(PlanVariant{direction_vector(*direction_from_name(c.option), from, to)});
      }
      state.seen.clear();
      return;
    }

    std::vector<PlanVariant*> targets;
    for (auto& v : plan.variants) {
      if (!c.direction || direction_name(v.gis.direction()) == *c.direction) targets.push_back(&v);
    }
    if (targets.empty()) {
      fail(c, "direction " + *c.direction + " is not part of the plan for " + label);
      return;
    }
    // Check every target before mutating so a dropped call leaves no trace.
    for (PlanVariant* v : targets) {
      auto key = std::make_pair(v->gis.direction(), c.func);
      auto prev = state.seen.find(key);
      if (prev != state.seen.end() && prev->second != call_key(c)) {
        fail(c, std::string("conflicting ") + sched_func_name(c.func) + " for " + direction_name(key.first) +
                    " of " + label);
        return;
      }
      if (c.func == SchedFunc::ConfigApplyNUMA && !v->gis.ssg) {
        fail(c, std::string("configApplyNUMA needs segmented subgraphs on ") + direction_name(key.first) +
                    " of " + label);
        return;
      }
    }
    if (c.func == SchedFunc::ConfigApplyNumSSG && c.number.value_or(0) < 1) {
      throw Error(ErrorKind::ZeroSegments, "configApplyNumSSG needs at least one segment", c.pos);
    }
    if (c.func == SchedFunc::ConfigApplyParallelization && c.number && *c.number < 1) {
      fail(c, "grain size must be positive");
      return;
    }
    for (PlanVariant* v : targets) {
      state.seen[{v->gis.direction(), c.func}] = call_key(c);
      mutate(c, *v);
    }
    state.configured = true;
  }

 private:
  ScheduledProgram& sp_;
  ValidationMode mode_;
  std::map<int, PlanState> states_;

  void fail(const ScheduleCall& c, const std::string& msg) {
    if (mode_ == ValidationMode::Strict) throw Error(ErrorKind::InvalidCombination, msg, c.pos);
    sp_.dropped.push_back(DroppedCall{c, msg});
  }

  static void mutate(const ScheduleCall& c, PlanVariant& v) {
    GisVector& g = v.gis;
    switch (c.func) {
      case SchedFunc::ConfigApplyParallelization: {
        std::int64_t grain = c.number.value_or(256);
        g.bsg.reset();
        g.inner.parallel = ParTag::SR;
        if (c.option == "dynamic-vertex-parallel") {
          g.bsg = DimCfg{ParTag::WSP, PartScheme::FVC, grain};
        } else if (c.option == "static-vertex-parallel") {
          g.bsg = DimCfg{ParTag::SP, PartScheme::FVC, grain};
        } else if (c.option == "edge-aware-dynamic-vertex-parallel") {
          g.bsg = DimCfg{ParTag::WSP, PartScheme::EVC, grain};
        } else if (c.option == "edge-parallel") {
          g.inner.parallel = ParTag::WSP;
          v.edge_grain = grain;
        }
        break;
      }
      case SchedFunc::ConfigApplyDenseVertexSet: {
        FilterTag tag = c.option == "bitvector" ? FilterTag::BV : FilterTag::BA;
        std::string side = c.vertexset_side.empty() ? "both" : c.vertexset_side;
        for (IterCfg* d : {&g.outer, &g.inner}) {
          if (d->filter != FilterTag::BA && d->filter != FilterTag::BV) continue;
          if (side == "both" || (side == "src-vertexset" && d->dir == DirTag::Src) ||
              (side == "dst-vertexset" && d->dir == DirTag::Dst)) {
            d->filter = tag;
          }
        }
        break;
      }
      case SchedFunc::ConfigApplyNumSSG: {
        ParTag par = g.ssg ? g.ssg->parallel : ParTag::SR;
        g.ssg = DimCfg{par, c.option == "edge-aware-vertex-count" ? PartScheme::EVC : PartScheme::FVC, *c.number};
        break;
      }
      case SchedFunc::ConfigApplyNUMA:
        g.ssg->parallel = c.option == "static-parallel"    ? ParTag::SP
                          : c.option == "dynamic-parallel" ? ParTag::WSP
                                                           : ParTag::SR;
        break;
      default: break;
    }
  }
};

}  // namespace

ScheduledProgram apply_schedule(const Program& p, const Schedule& s, ValidationMode mode) {
  ScheduledProgram sp;
  sp.program = p;
  sp.program.number_statements();
  for (const auto& c : s.calls) {
    switch (c.func) {
      case SchedFunc::FuseForLoop: fuse_for_loops(sp.program, c.labels.at(0), c.labels.at(1), c.new_name); break;
      case SchedFunc::FuseApplyFunctions:
        fuse_apply_functions(sp.program, c.labels.at(0), c.labels.at(1), c.new_name);
        break;
      case SchedFunc::SplitForLoop:
        split_for_loop(sp.program, c.labels.at(0), c.labels.at(1), c.labels.at(2), c.number.value_or(0));
        break;
      case SchedFunc::FuseFields: fuse_fields(sp.program, sp.layout, c.fields); break;
      default: break;
    }
  }
  if (sp.program.main) {
    for_each_stmt(sp.program.main->body, [&](const Stmt& st) {
      if (chain_expr_of(sp.program, st)) sp.plans.emplace(st.id, default_plan(sp.program, st));
    });
  }
  Lowering lowering(sp, mode);
  for (const auto& c : s.calls) {
    if (!is_structural(c.func)) lowering.apply(c);
  }
  for (const auto& [id, plan] : sp.plans) validate_plan(plan);
  return sp;
}

namespace {

const char* kLangle = "\xE2\x9F\xA8";
const char* kRangle = "\xE2\x9F\xA9";
const char* kBottom = "\xE2\x8A\xA5";

std::string format_dim(char name, const std::optional<DimCfg>& d, bool ascii) {
  if (!d) return ascii ? "_" : kBottom;
  std::string amount = std::to_string(d->amount);
  if (name == 'S') amount = std::string(d->scheme == PartScheme::FVC ? "num_vert/" : "num_edge/") + amount;
  const char* sep = name == 'S' ? ", " : ",";
  return std::string(1, name) + "[" + par_tag_name(d->parallel) + ",(" + part_scheme_name(d->scheme) + sep +
         amount + ")]";
}

std::string format_iter(char name, const IterCfg& it) {
  std::string out = std::string(1, name) + "[" + dir_tag_name(it.dir) + "," + par_tag_name(it.parallel);
  if (it.filter != FilterTag::None) out += std::string(",") + filter_tag_name(it.filter);
  return out + "]";
}

}  // namespace

std::string format_gis(const GisVector& v, bool ascii) {
  return std::string(ascii ? "<" : kLangle) + format_dim('S', v.ssg, ascii) + ", " + format_dim('B', v.bsg, ascii) +
         ", " + format_iter('O', v.outer) + ", " + format_iter('I', v.inner) + (ascii ? ">" : kRangle);
}

std::string format_plan(const ExecutionPlan& plan, bool ascii) {
  std::string out;
  for (std::size_t i = 0; i < plan.variants.size(); ++i) {
    if (i) out += " and ";
    out += format_gis(plan.variants[i].gis, ascii);
  }
  return out;
}

std::string dump_ir(const ScheduledProgram& sp, bool ascii) {
  std::string out;
  if (!sp.program.main) return out;
  for_each_stmt(sp.program.main->body, [&](const Stmt& st) {
    auto it = sp.plans.find(st.id);
    if (it == sp.plans.end()) return;
    std::string name = it->second.label.empty() ? "@" + std::to_string(st.id) : it->second.label;
    out += name + ": " + format_plan(it->second, ascii) + "\n";
  });
  return out;
}

namespace {

[[noreturn]] void gis_error(const std::string& text, const std::string& why) {
  throw Error(ErrorKind::ParseError, "bad GIS vector '" + text + "': " + why);
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(' ');
  std::size_t e = s.find_last_not_of(' ');
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

bool strip(std::string& s, const std::string& prefix, const std::string& suffix) {
  if (s.size() < prefix.size() + suffix.size()) return false;
  if (s.compare(0, prefix.size(), prefix) != 0) return false;
  if (s.compare(s.size() - suffix.size(), suffix.size(), suffix) != 0) return false;
  s = s.substr(prefix.size(), s.size() - prefix.size() - suffix.size());
  return true;
}

ParTag parse_par(const std::string& text, const std::string& s) {
  for (ParTag t : {ParTag::SR, ParTag::SP, ParTag::WSP}) {
    if (s == par_tag_name(t)) return t;
  }
  gis_error(text, "unknown parallel tag " + s);
}

std::optional<DimCfg> parse_dim(const std::string& text, char name, std::string part) {
  if (part == "_" || part == kBottom) return std::nullopt;
  if (!strip(part, std::string(1, name) + "[", "]")) gis_error(text, "expected dimension " + std::string(1, name));
  auto fields = split_top(part);
  if (fields.size() != 2) gis_error(text, "dimension needs two tags");
  DimCfg d;
  d.parallel = parse_par(text, fields[0]);
  std::string pt = fields[1];
  if (!strip(pt, "(", ")")) gis_error(text, "expected partition tag");
  auto inner = split_top(pt);
  if (inner.size() != 2) gis_error(text, "partition tag needs scheme and amount");
  if (inner[0] == "FVC") {
    d.scheme = PartScheme::FVC;
  } else if (inner[0] == "EVC") {
    d.scheme = PartScheme::EVC;
  } else {
    gis_error(text, "unknown partition scheme " + inner[0]);
  }
  std::string amount = inner[1];
  if (name == 'S') {
    std::string pre = d.scheme == PartScheme::FVC ? "num_vert/" : "num_edge/";
    if (!strip(amount, pre, "")) gis_error(text, "expected " + pre);
  }
  try {
    std::size_t used = 0;
    d.amount = std::stoll(amount, &used);
    if (used != amount.size()) gis_error(text, "bad amount " + amount);
  } catch (const std::logic_error&) {
    gis_error(text, "bad amount " + amount);
  }
  return d;
}

IterCfg parse_iter(const std::string& text, char name, std::string part) {
  if (!strip(part, std::string(1, name) + "[", "]")) gis_error(text, "expected dimension " + std::string(1, name));
  auto fields = split_top(part);
  if (fields.size() < 2 || fields.size() > 3) gis_error(text, "iteration dimension needs two or three tags");
  IterCfg it;
  if (fields[0] == "src") {
    it.dir = DirTag::Src;
  } else if (fields[0] == "dst") {
    it.dir = DirTag::Dst;
  } else {
    gis_error(text, "unknown direction tag " + fields[0]);
  }
  it.parallel = parse_par(text, fields[1]);
  if (fields.size() == 3) {
    if (fields[2] == "SA") {
      it.filter = FilterTag::SA;
    } else if (fields[2] == "BA") {
      it.filter = FilterTag::BA;
    } else if (fields[2] == "BV") {
      it.filter = FilterTag::BV;
    } else {
      gis_error(text, "unknown filter tag " + fields[2]);
    }
  }
  return it;
}

}  // namespace

GisVector parse_gis(const std::string& text) {
  std::string body = trim(text);
  if (!strip(body, kLangle, kRangle) && !strip(body, "<", ">")) gis_error(text, "missing angle brackets");
  auto parts = split_top(body);
  if (parts.size() != 4) gis_error(text, "expected four dimensions");
  GisVector v;
  v.ssg = parse_dim(text, 'S', parts[0]);
  v.bsg = parse_dim(text, 'B', parts[1]);
  v.outer = parse_iter(text, 'O', parts[2]);
  v.inner = parse_iter(text, 'I', parts[3]);
  return v;
}

std::vector<GisVector> parse_gis_list(const std::string& text) {
  std::vector<GisVector> out;
  std::size_t start = 0;
  const std::string sep = " and ";
  while (true) {
    std::size_t at = text.find(sep, start);
    out.push_back(parse_gis(text.substr(start, at == std::string::npos ? std::string::npos : at - start)));
    if (at == std::string::npos) break;
    start = at + sep.size();
  }
  return out;
}

}  // namespace graphweave
