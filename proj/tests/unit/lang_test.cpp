#include "doctest.h"

#include <set>

#include "graphweave/error.hpp"
#include "graphweave/lang/access.hpp"
#include "graphweave/lang/chain.hpp"
#include "graphweave/lang/labels.hpp"
#include "graphweave/lang/lexer.hpp"
#include "graphweave/lang/parser.hpp"
#include "graphweave/lang/printer.hpp"
#include "graphweave/lang/sema.hpp"
#include "graphweave/transforms/transforms.hpp"
#include "support/harness.hpp"

using namespace gwtest;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::RuntimeError;
}

Program parse(const std::string& text) { return parse_source(text).program; }

const char* kHeader = R"(
element Vertex end
element Edge end
const edges : edgeset{Edge}(Vertex,Vertex) = load(argv[1]);
const vertices : vertexset{Vertex} = edges.getVertices();
x : vector{Vertex}(int) = 0;
y : vector{Vertex}(int) = 0;
)";

}  // namespace

TEST_CASE("tokenize labelled chain") {
  auto toks = tokenize("#s1# edges.from(frontier)");
  REQUIRE(toks.size() >= 7);
  CHECK(toks[0].kind == TokenKind::Label);
  CHECK(toks[0].text == "s1");
  CHECK(toks[1].kind == TokenKind::Ident);
  CHECK(toks[1].text == "edges");
  CHECK(toks[2].kind == TokenKind::Dot);
  CHECK(toks[3].text == "from");
  CHECK(toks[4].kind == TokenKind::LParen);
}

TEST_CASE("tokenize empty input") {
  auto toks = tokenize("");
  CHECK((toks.empty() || (toks.size() == 1 && toks[0].kind == TokenKind::End)));
}

TEST_CASE("reduction operators are single tokens") {
  auto toks = tokenize("min= max= asyncMin= +=");
  CHECK(toks[0].kind == TokenKind::MinAssign);
  CHECK(toks[1].kind == TokenKind::MaxAssign);
  CHECK(toks[2].kind == TokenKind::AsyncMinAssign);
  CHECK(toks[3].kind == TokenKind::PlusAssign);
}

TEST_CASE("illegal character is reported with its position") {
  try {
    tokenize("x = 1;\n  $");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IllegalCharacter);
    CHECK(e.pos().line == 2);
    CHECK(e.pos().column == 3);
  }
}

TEST_CASE("PageRankDelta parses into the expected shape") {
  Program p = parse(app_source("prdelta"));
  CHECK(p.elements.size() == 2);
  CHECK(p.vector_decls().size() == 4);
  for (const char* v : {"OutDegree", "Rank", "DeltaSum", "Delta"}) CHECK(p.find_global(v) != nullptr);
  CHECK(p.funcs.size() == 3);
  CHECK_NOTHROW(resolve_label(p, "s1"));
}

TEST_CASE("element declaration alone") {
  Program p = parse("element Vertex end");
  CHECK(p.elements.size() == 1);
  CHECK(p.globals.empty());
  CHECK(p.funcs.empty());
}

TEST_CASE("applyModified with dedup disabled") {
  std::string src = app_source("bfs");
  const std::string call = "applyModified(updateEdge, parent)";
  src.replace(src.find(call), call.size(), "applyModified(updateEdge, parent, true)");
  Program p = parse(src);
  const Stmt& s = resolve_label(std::as_const(p), "s1");
  auto chain = extract_apply_chain(p, *chain_expr_of(p, s));
  REQUIRE(chain);
  CHECK(chain->modified);
  CHECK(chain->tracked_vector == "parent");
  CHECK_FALSE(chain->dedup);

  Program q = parse(app_source("bfs"));
  auto c2 = extract_apply_chain(q, *chain_expr_of(q, resolve_label(std::as_const(q), "s1")));
  CHECK(c2->dedup);
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse("element Vertex end\nfunc f(v : Vertex)\n  x[v] = ;\nend");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SyntaxError);
    CHECK(e.pos().line == 3);
  }
}

TEST_CASE("schedule parsing") {
  Schedule s = parse_schedule_text(R"(program->configApplyDirection("s1","DensePull-SparsePush");)");
  REQUIRE(s.calls.size() == 1);
  CHECK(s.calls[0].func == SchedFunc::ConfigApplyDirection);
  CHECK(s.calls[0].labels == std::vector<std::string>{"s1"});
  CHECK(s.calls[0].option == "DensePull-SparsePush");

  CHECK(parse_schedule_text("").calls.empty());
  CHECK(parse_schedule_text("schedule:").calls.empty());

  Schedule f = parse_schedule_text(
      R"(program->fuseForLoop("l1","l2","l3")->fuseApplyFunctions("l3:l1:s1","l3:l2:s1","fusedFunc");)");
  REQUIRE(f.calls.size() == 2);
  CHECK(f.calls[0].func == SchedFunc::FuseForLoop);
  CHECK(f.calls[1].labels[0] == "l3:l1:s1");
  CHECK(f.calls[1].labels[1] == "l3:l2:s1");
  CHECK(f.calls[1].new_name == "fusedFunc");

  Schedule q = parse_schedule_text(R"(program->configApplyParallelization("s1","dynamic-vertex-parallel",64,"DensePull");)");
  CHECK(q.calls[0].number == 64);
  CHECK(q.calls[0].direction == std::optional<std::string>("DensePull"));

  CHECK(parse_schedule_text(to_string(f)) == f);
}

TEST_CASE("schedule errors") {
  CHECK(kind_of([] { parse_schedule_text(R"(program->configApplyColor("s1","red");)"); }) ==
        ErrorKind::UnknownSchedulingFunction);
  CHECK(kind_of([] { parse_schedule_text(R"(program->configApplyDirection("s1","Sideways");)"); }) ==
        ErrorKind::UnknownOption);
  CHECK(kind_of([] { parse_schedule_text(R"(program->configApplyDirection("s1");)"); }) == ErrorKind::ArityError);
}

TEST_CASE("semantic checks") {
  CHECK_NOTHROW(check_semantics(parse(app_source("prdelta"))));
  std::string bad = std::string(kHeader) + R"(
func f(src : Vertex, dst : Vertex)
    x[dst] = x[src] + 1;
end
func main()
    edges.apply(f);
end
)";
  try {
    check_semantics(parse(bad));
    FAIL("expected MixedAccessError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MixedAccessError);
    CHECK(std::string(e.what()).find("x") != std::string::npos);
    CHECK(std::string(e.what()).find("f") != std::string::npos);
  }
  std::string cc = std::string(kHeader) + R"(
func f(src : Vertex, dst : Vertex)
    x[dst] asyncMin= x[src];
end
func main()
    edges.apply(f);
end
)";
  Program p = parse(cc);
  CHECK_NOTHROW(check_semantics(p));
  AccessMap m = classify_accesses(p, *p.find_func("f"));
  REQUIRE(find_access(m, "x"));
  CHECK(find_access(m, "x")->kind == AccessKind::AsyncReduction);

  std::string typed = std::string(kHeader) + R"(
func main()
    var b : bool = 1.5;
end
)";
  CHECK(kind_of([&] { check_semantics(parse(typed)); }) == ErrorKind::TypeError);
}

TEST_CASE("every corpus program parses and checks") {
  for (const char* name : {"pagerank", "prdelta", "bfs", "cc", "cc_async", "sssp", "bc", "cf", "pr_ec"}) {
    CAPTURE(name);
    Program p = parse(app_source(name));
    CHECK_NOTHROW(check_semantics(p));
    Program again = parse(print_program(p));
    CHECK(again == p);
  }
}

TEST_CASE("access classification is a partition") {
  for (const char* name : {"pagerank", "prdelta", "bfs", "cc", "sssp", "bc", "cf"}) {
    Program p = parse(app_source(name));
    for (const auto& f : p.funcs) {
      if (f.params.size() != 2) continue;
      AccessMap m = classify_accesses(p, f);
      std::set<std::string> seen;
      for (const auto& a : m) CHECK(seen.insert(a.vector).second);
    }
  }
}

TEST_CASE("label resolution") {
  Program p = parse(app_source("prdelta"));
  CHECK(resolve_label(std::as_const(p), "s1").label == "s1");
  CHECK(kind_of([&] { resolve_label(std::as_const(p), "l9:s1"); }) == ErrorKind::LabelNotFound);

  Program q = parse(app_source("pr_ec"));
  CHECK(kind_of([&] { resolve_label(std::as_const(q), "s1"); }) == ErrorKind::LabelNotFound);
  std::string dup = app_source("prdelta");
  dup.replace(dup.find("        if i == 0"), 0, "        #s1# edges.from(frontier).apply(updateEdge);\n");
  CHECK(kind_of([&] { check_semantics(parse(dup)); }) == ErrorKind::AmbiguousLabel);
  fuse_for_loops(q, "l1", "l2", "l3");
  const Stmt& s = resolve_label(std::as_const(q), "l3:l1:s1");
  CHECK(is_edgeset_apply(q, s));
  auto chain = extract_apply_chain(q, *chain_expr_of(q, s));
  CHECK(chain->apply_func == "updateEdge");
  CHECK(label_path_of(q, s.id) == "l3:l1:s1");
}
