#include "graphweave/lang/labels.hpp"

#include <functional>

namespace graphweave {

Label Label::parse(const std::string& text) {
  Label l;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      l.path.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  l.path.push_back(cur);
  return l;
}

std::string Label::str() const {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += ":";
    out += path[i];
  }
  return out;
}

namespace {

void walk(std::vector<Stmt>& body, std::vector<std::string>& scope,
          const std::function<void(std::vector<Stmt>&, std::size_t, const std::vector<std::string>&)>& fn) {
  for (std::size_t i = 0; i < body.size(); ++i) {
    Stmt& s = body[i];
    bool labeled = !s.label.empty();
    if (labeled) {
      scope.push_back(s.label);
      fn(body, i, scope);
    }
    walk(s.body, scope, fn);
    walk(s.else_body, scope, fn);
    if (labeled) scope.pop_back();
  }
}

}  // namespace

StmtHandle resolve_label(Program& p, const std::string& label) {
  Label want = Label::parse(label);
  if (!p.main) throw Error(ErrorKind::LabelNotFound, "label " + label + " not found (no main)");
  std::vector<StmtHandle> found;
  std::vector<std::string> scope;
  walk(p.main->body, scope, [&](std::vector<Stmt>& c, std::size_t i, const std::vector<std::string>& path) {
    if (path == want.path) found.push_back(StmtHandle{&c, i, path});
  });
  if (found.empty()) throw Error(ErrorKind::LabelNotFound, "label " + label + " not found");
  if (found.size() > 1) throw Error(ErrorKind::AmbiguousLabel, "label " + label + " is ambiguous");
  return found[0];
}

const Stmt& resolve_label(const Program& p, const std::string& label) {
  return resolve_label(const_cast<Program&>(p), label).stmt();
}

std::string label_path_of(const Program& p, int stmt_id) {
  std::string out;
  if (!p.main) return out;
  std::vector<std::string> scope;
  auto& body = const_cast<Program&>(p).main->body;
  walk(body, scope, [&](std::vector<Stmt>& c, std::size_t i, const std::vector<std::string>& path) {
    if (c[i].id == stmt_id) out = Label{path}.str();
  });
  return out;
}

std::vector<std::pair<std::string, const Stmt*>> labeled_statements(const Program& p) {
  std::vector<std::pair<std::string, const Stmt*>> out;
  if (!p.main) return out;
  std::vector<std::string> scope;
  auto& body = const_cast<Program&>(p).main->body;
  walk(body, scope, [&](std::vector<Stmt>& c, std::size_t i, const std::vector<std::string>& path) {
    out.emplace_back(Label{path}.str(), &c[i]);
  });
  return out;
}

}  // namespace graphweave
