#pragma once

#include <string>
#include <vector>

#include "cfgsim/graph.hpp"
#include "cfgsim/minilang.hpp"

// AST -> labeled CFG. Every atomic statement becomes one node carrying
// its canonical rendering. Compound expressions are decomposed into
// three-address form: an expression with k binary operators contributes
// exactly k operation nodes, the last of which is folded into the
// enclosing assignment or branch. Temporaries are numbered $t0, $t1, ...
// and reset per statement so equal statements render to equal labels.
//
// Lowering order within a statement is left to right: array-store
// subscript first, then the right-hand side. A branch node is labelled
// "if <atom op atom>" and gets exactly two successors; loop back edges
// return to the first node of the re-evaluated condition.

namespace cfgsim {

class CfgBuilder {
 public:
  LabeledCfg build(const Function& fn) {
    graph_ = {};
    pending_.clear();
    for (const auto& s : fn.body) build_stmt(*s);
    if (graph_.node_count() == 0 || !pending_.empty())
      emit("return");  // fall off the end
    require_valid(graph_, "build_cfg(" + fn.name + ")");
    return graph_;
  }

 private:
  LabeledCfg graph_;
  std::vector<int> pending_;  // nodes whose next successor is the next node
  int temp_counter_ = 0;

  int emit(const std::string& label) {
    const int id = graph_.node_count();
    graph_.labels.push_back(label);
    for (int p : pending_) graph_.edges.push_back({p, id});
    pending_ = {id};
    return id;
  }

  std::string fresh_temp() {
    return "$t" + std::to_string(temp_counter_++);
  }

  static std::string render_number(long long v) { return std::to_string(v); }

  // Reduces an expression to an atom (number, variable or single-indexed
  // array ref), emitting temporary assignments for nested operators.
  std::string lower_atom(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::number:
        return render_number(e.number);
      case Expr::Kind::variable:
        return e.name;
      case Expr::Kind::index:
        return e.name + "[" + lower_atom(*e.subscript) + "]";
      case Expr::Kind::binary: {
        const std::string text = lower_operation(e);
        const std::string t = fresh_temp();
        emit(t + " = " + text);
        return t;
      }
    }
    return "?";
  }

  // Renders a binary node as "<atom> <op> <atom>", lowering operands first.
  std::string lower_operation(const Expr& e) {
    const std::string lhs = lower_atom(*e.lhs);
    const std::string rhs = lower_atom(*e.rhs);
    return lhs + " " + e.op + " " + rhs;
  }

  // Right-hand side of an assignment: the top-level operation (if any)
  // is folded into the statement's own node.
  std::string lower_rhs(const Expr& e) {
    if (e.kind == Expr::Kind::binary) return lower_operation(e);
    return lower_atom(e);
  }

  void build_assign(const Stmt& s) {
    temp_counter_ = 0;
    std::string target = s.name;
    if (s.subscript) target += "[" + lower_atom(*s.subscript) + "]";
    emit(target + " = " + lower_rhs(*s.value));
  }

  // Condition: top-level operation stays inside the branch node.
  int build_branch(const Expr& cond) {
    temp_counter_ = 0;
    return emit("if " + lower_rhs(cond));
  }

  void build_stmt(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::decl:
        if (s.value) build_assign(s);  // bare declarations emit nothing
        return;
      case Stmt::Kind::assign:
        build_assign(s);
        return;
      case Stmt::Kind::return_: {
        temp_counter_ = 0;
        emit("return " + lower_atom(*s.value));
        pending_.clear();
        return;
      }
      case Stmt::Kind::if_: {
        const int branch = build_branch(*s.cond);
        pending_ = {branch};
        const int before_then = graph_.node_count();
        for (const auto& t : s.body) build_stmt(*t);
        if (graph_.node_count() == before_then)
          throw DataError("build_cfg: empty then-branch at statement " +
                          std::to_string(s.index));
        std::vector<int> exits = pending_;
        if (!s.else_body.empty()) {
          pending_ = {branch};
          const int before_else = graph_.node_count();
          for (const auto& t : s.else_body) build_stmt(*t);
          if (graph_.node_count() == before_else)
            throw DataError("build_cfg: empty else-branch at statement " +
                            std::to_string(s.index));
          pending_.insert(pending_.end(), exits.begin(), exits.end());
        } else {
          exits.push_back(branch);  // false edge falls through
          pending_ = std::move(exits);
        }
        return;
      }
      case Stmt::Kind::while_: {
        const int head = graph_.node_count();
        const int branch = build_branch(*s.cond);
        pending_ = {branch};
        const int before = graph_.node_count();
        for (const auto& t : s.body) build_stmt(*t);
        if (graph_.node_count() == before)
          throw DataError("build_cfg: empty loop body at statement " +
                          std::to_string(s.index));
        for (int p : pending_) graph_.edges.push_back({p, head});
        pending_ = {branch};
        return;
      }
      case Stmt::Kind::for_: {
        build_stmt(*s.for_init);
        const int head = graph_.node_count();
        const int branch = build_branch(*s.cond);
        pending_ = {branch};
        for (const auto& t : s.body) build_stmt(*t);
        build_stmt(*s.for_update);
        for (int p : pending_) graph_.edges.push_back({p, head});
        pending_ = {branch};
        return;
      }
    }
  }
};

inline LabeledCfg build_cfg(const Function& fn) {
  return CfgBuilder().build(fn);
}

inline LabeledCfg program_to_cfg(const MiniProgram& p) {
  return build_cfg(parse_program(p));
}

}  // namespace cfgsim
