#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "cfgsim/minilang.hpp"
#include "cfgsim/rng.hpp"

// Single-operator mutation. A mutant differs from its parent in exactly
// one operator token, swapped for its class partner:
//   arith       + <-> -   and   * <-> /
//   relational  < <-> <=  and   == <-> !=
//   bitwise     & <-> |
// Because partners share a precedence level, the parse tree shape (and
// with it the CFG topology) is untouched; exactly one node label moves.

namespace cfgsim {

enum class MutationClass { arith, relational, bitwise };

inline const char* to_string(MutationClass c) {
  switch (c) {
    case MutationClass::arith: return "arith";
    case MutationClass::relational: return "relational";
    case MutationClass::bitwise: return "bitwise";
  }
  return "?";
}

struct MutationOp {
  MutationClass kind;
  int site = 0;  // statement index within the program
  std::uint64_t seed = 0;
};

namespace detail {

inline bool partner_of(const std::string& op, std::string& out,
                       MutationClass& cls) {
  if (op == "+") { out = "-"; cls = MutationClass::arith; return true; }
  if (op == "-") { out = "+"; cls = MutationClass::arith; return true; }
  if (op == "*") { out = "/"; cls = MutationClass::arith; return true; }
  if (op == "/") { out = "*"; cls = MutationClass::arith; return true; }
  if (op == "<") { out = "<="; cls = MutationClass::relational; return true; }
  if (op == "<=") { out = "<"; cls = MutationClass::relational; return true; }
  if (op == "==") { out = "!="; cls = MutationClass::relational; return true; }
  if (op == "!=") { out = "=="; cls = MutationClass::relational; return true; }
  if (op == "&") { out = "|"; cls = MutationClass::bitwise; return true; }
  if (op == "|") { out = "&"; cls = MutationClass::bitwise; return true; }
  return false;
}

struct OpOccurrence {
  int statement_index;
  std::size_t offset;
  std::string op;
  std::string partner;
  MutationClass cls;
};

inline void collect_expr(const Expr* e, int stmt_index,
                         std::vector<OpOccurrence>& out) {
  if (!e) return;
  switch (e->kind) {
    case Expr::Kind::binary: {
      std::string partner;
      MutationClass cls;
      if (partner_of(e->op, partner, cls))
        out.push_back({stmt_index, e->op_offset, e->op, partner, cls});
      collect_expr(e->lhs.get(), stmt_index, out);
      collect_expr(e->rhs.get(), stmt_index, out);
      return;
    }
    case Expr::Kind::index:
      collect_expr(e->subscript.get(), stmt_index, out);
      return;
    default:
      return;
  }
}

inline void collect_stmts(const std::vector<StmtPtr>& stmts,
                          std::vector<OpOccurrence>& out) {
  for (const auto& s : stmts) {
    switch (s->kind) {
      case Stmt::Kind::decl:
      case Stmt::Kind::assign:
        collect_expr(s->subscript.get(), s->index, out);
        collect_expr(s->value.get(), s->index, out);
        break;
      case Stmt::Kind::return_:
        collect_expr(s->value.get(), s->index, out);
        break;
      case Stmt::Kind::if_:
        collect_expr(s->cond.get(), s->index, out);
        collect_stmts(s->body, out);
        collect_stmts(s->else_body, out);
        break;
      case Stmt::Kind::while_:
        collect_expr(s->cond.get(), s->index, out);
        collect_stmts(s->body, out);
        break;
      case Stmt::Kind::for_:
        // the for's clauses count as part of its own site
        if (s->for_init) {
          collect_expr(s->for_init->subscript.get(), s->index, out);
          collect_expr(s->for_init->value.get(), s->index, out);
        }
        collect_expr(s->cond.get(), s->index, out);
        if (s->for_update) {
          collect_expr(s->for_update->subscript.get(), s->index, out);
          collect_expr(s->for_update->value.get(), s->index, out);
        }
        collect_stmts(s->body, out);
        break;
    }
  }
}

}  // namespace detail

inline std::vector<detail::OpOccurrence> mutable_operators(
    const MiniProgram& p) {
  const Function fn = parse_program(p);
  std::vector<detail::OpOccurrence> out;
  detail::collect_stmts(fn.body, out);
  return out;
}

// Statement indices that contain at least one mutable operator.
inline std::vector<int> mutable_sites(const MiniProgram& p) {
  std::vector<int> sites;
  for (const auto& occ : mutable_operators(p))
    sites.push_back(occ.statement_index);
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  return sites;
}

inline MiniProgram mutate(const MiniProgram& p, const MutationOp& op) {
  std::vector<detail::OpOccurrence> candidates;
  for (const auto& occ : mutable_operators(p))
    if (occ.statement_index == op.site && occ.cls == op.kind)
      candidates.push_back(occ);
  if (candidates.empty()) {
    std::string msg = "mutate(" + p.name + "): no " +
                      std::string(to_string(op.kind)) +
                      " operator at statement " + std::to_string(op.site) +
                      "; mutable sites:";
    auto sites = mutable_sites(p);
    if (sites.empty()) {
      msg += " none";
    } else {
      for (int s : sites) msg += " " + std::to_string(s);
    }
    throw DataError(msg);
  }
  Rng rng(op.seed);
  const auto& chosen = candidates[rng.index(candidates.size())];

  MiniProgram mutant;
  mutant.name = p.name;
  mutant.source = p.source.substr(0, chosen.offset) + chosen.partner +
                  p.source.substr(chosen.offset + chosen.op.size());
  return mutant;
}

// Uniform choice of a mutable statement, then of a class present there.
// Returns the op so callers can reproduce or log the pick.
inline MutationOp random_mutation(const MiniProgram& p, Rng& rng) {
  const auto occurrences = mutable_operators(p);
  if (occurrences.empty())
    throw DataError("random_mutation(" + p.name +
                    "): program has no mutable operator");
  std::vector<int> sites = mutable_sites(p);
  const int site = sites[rng.index(sites.size())];
  std::vector<MutationClass> classes;
  for (const auto& occ : occurrences)
    if (occ.statement_index == site) {
      bool known = false;
      for (auto c : classes) known = known || c == occ.cls;
      if (!known) classes.push_back(occ.cls);
    }
  MutationOp op;
  op.site = site;
  op.kind = classes[rng.index(classes.size())];
  op.seed = rng.next_u64();
  return op;
}

}  // namespace cfgsim
