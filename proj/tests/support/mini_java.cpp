#include "mini_java.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace cvtest {

namespace {

class MiniGen {
 public:
  MiniGen(std::mt19937& rng, int max_stmts, int max_vars, bool allow_while)
      : rng_(rng), max_stmts_(max_stmts), allow_while_(allow_while) {
    static const char* names[] = {"a", "b", "c", "d"};
    int nvars = 1 + static_cast<int>(rng_() % static_cast<unsigned>(max_vars));
    for (int i = 0; i < nvars; ++i) program_.vars.push_back(names[i]);
  }

  MiniProgram run() {
    // Declarations first: no shadowing, one symbol per name.
    for (const std::string& v : program_.vars) {
      if (stmts_left() <= 1) break;
      bool with_init = rng_() % 4 != 0;
      int idx = add_stmt(with_init ? MiniStmt::Kind::DeclInit : MiniStmt::Kind::Decl,
                         v, {}, "");
      MiniStmt& s = program_.stmts[static_cast<size_t>(idx)];
      if (with_init) {
        std::string rhs = expression(s.uses);
        s.text = "int " + v + " = " + rhs + ";";
      } else {
        s.text = "int " + v + ";";
      }
      declared_.push_back(v);
      MiniItem item;
      item.type = MiniItem::Type::Leaf;
      item.stmt = idx;
      program_.root.items.push_back(std::move(item));
    }
    if (declared_.empty()) {
      int idx = add_stmt(MiniStmt::Kind::Decl, program_.vars.front(), {},
                         "int " + program_.vars.front() + ";");
      declared_.push_back(program_.vars.front());
      MiniItem item;
      item.type = MiniItem::Type::Leaf;
      item.stmt = idx;
      program_.root.items.push_back(std::move(item));
    }
    fill_block(program_.root, 0);

    std::string body;
    render_block(program_.root, body, 2);
    program_.source = "class G {\n  void m() {\n" + body + "  }\n}\n";
    return std::move(program_);
  }

 private:
  int stmts_left() const {
    return max_stmts_ - static_cast<int>(program_.stmts.size());
  }

  int add_stmt(MiniStmt::Kind kind, std::string var,
               std::vector<std::string> uses, std::string text) {
    MiniStmt s;
    s.kind = kind;
    s.var = std::move(var);
    s.uses = std::move(uses);
    s.text = std::move(text);
    s.index = static_cast<int>(program_.stmts.size());
    program_.stmts.push_back(std::move(s));
    return program_.stmts.back().index;
  }

  std::string fresh_literal() { return std::to_string(literal_counter_++); }

  std::string pick_var() {
    return declared_[rng_() % declared_.size()];
  }

  /// literal | var + literal | var + var + literal — the fresh literal keeps
  /// every statement text unique, so labels identify model statements.
  std::string expression(std::vector<std::string>& uses) {
    if (declared_.empty()) return fresh_literal();
    switch (rng_() % 3) {
      case 0:
        return fresh_literal();
      case 1: {
        std::string v1 = pick_var();
        std::string v2 = pick_var();
        uses.push_back(v1);
        uses.push_back(v2);
        return v1 + " + " + v2 + " + " + fresh_literal();
      }
      default: {
        std::string v = pick_var();
        uses.push_back(v);
        return v + " + " + fresh_literal();
      }
    }
  }

  std::string condition(std::vector<std::string>& uses) {
    if (declared_.empty()) return "(" + fresh_literal() + " < 1)";
    std::string v = pick_var();
    uses.push_back(v);
    if (rng_() % 3 == 0) {
      std::string w = pick_var();
      uses.push_back(w);
      return "(" + v + " < " + w + " + " + fresh_literal() + ")";
    }
    return "(" + v + " < " + fresh_literal() + ")";
  }

  MiniItem make_leaf() {
    std::string v = pick_var();
    bool compound = rng_() % 4 == 0;
    int idx = add_stmt(compound ? MiniStmt::Kind::Compound : MiniStmt::Kind::Assign,
                       v, {}, "");
    MiniStmt& s = program_.stmts[static_cast<size_t>(idx)];
    std::string rhs = expression(s.uses);
    if (compound) {
      s.uses.push_back(v);  // compound assignment reads its target
      s.text = v + " += " + rhs + ";";
    } else {
      s.text = v + " = " + rhs + ";";
    }
    MiniItem item;
    item.type = MiniItem::Type::Leaf;
    item.stmt = idx;
    return item;
  }

  void fill_block(MiniBlock& block, int depth) {
    int budget = 1 + static_cast<int>(rng_() % 5u);
    while (budget-- > 0 && stmts_left() > 0) {
      unsigned roll = rng_() % 10;
      if (roll < 2 && depth < 2 && stmts_left() >= 3) {
        // if / if-else
        int idx = add_stmt(MiniStmt::Kind::IfHeader, "", {}, "");
        MiniStmt& s = program_.stmts[static_cast<size_t>(idx)];
        std::string cond = condition(s.uses);
        s.text = "if " + cond;
        MiniItem item;
        item.type = MiniItem::Type::If;
        item.stmt = idx;
        item.then_branch = std::make_unique<MiniBlock>();
        fill_block(*item.then_branch, depth + 1);
        if (rng_() % 2 == 0 && stmts_left() > 0) {
          item.else_branch = std::make_unique<MiniBlock>();
          fill_block(*item.else_branch, depth + 1);
        }
        block.items.push_back(std::move(item));
      } else if (roll < 4 && allow_while_ && !used_while_ && depth == 0 &&
                 stmts_left() >= 2) {
        used_while_ = true;
        int idx = add_stmt(MiniStmt::Kind::WhileHeader, "", {}, "");
        MiniStmt& s = program_.stmts[static_cast<size_t>(idx)];
        std::string cond = condition(s.uses);
        s.text = "while " + cond;
        MiniItem item;
        item.type = MiniItem::Type::While;
        item.stmt = idx;
        item.body = std::make_unique<MiniBlock>();
        fill_block(*item.body, depth + 1);
        block.items.push_back(std::move(item));
      } else {
        block.items.push_back(make_leaf());
      }
    }
  }

  void indent(std::string& out, int n) { out.append(static_cast<size_t>(n), ' '); }

  void render_block(const MiniBlock& block, std::string& out, int level) {
    for (const MiniItem& item : block.items) {
      const MiniStmt& s = program_.stmts[static_cast<size_t>(item.stmt)];
      switch (item.type) {
        case MiniItem::Type::Leaf:
          indent(out, level * 2);
          out += s.text + "\n";
          break;
        case MiniItem::Type::If:
          indent(out, level * 2);
          out += s.text + " {\n";
          render_block(*item.then_branch, out, level + 1);
          indent(out, level * 2);
          if (item.else_branch) {
            out += "} else {\n";
            render_block(*item.else_branch, out, level + 1);
            indent(out, level * 2);
          }
          out += "}\n";
          break;
        case MiniItem::Type::While:
          indent(out, level * 2);
          out += s.text + " {\n";
          render_block(*item.body, out, level + 1);
          indent(out, level * 2);
          out += "}\n";
          break;
      }
    }
  }

  std::mt19937& rng_;
  int max_stmts_;
  bool allow_while_;
  bool used_while_ = false;
  int literal_counter_ = 1;
  MiniProgram program_;
  std::vector<std::string> declared_;
};

// ---- oracle -----------------------------------------------------------------

using PathState = std::map<std::string, int>;  // variable -> current def site

class Oracle {
 public:
  explicit Oracle(const MiniProgram& program) : program_(program) {
    result_.reaching.resize(program.stmts.size());
  }

  OracleResult run() {
    std::vector<PathState> states{{}};
    process_block(program_.root, states);
    return std::move(result_);
  }

 private:
  void record_visit(int stmt, const PathState& state) {
    const MiniStmt& s = program_.stmts[static_cast<size_t>(stmt)];
    for (const auto& [var, site] : state) {
      result_.reaching[static_cast<size_t>(stmt)].insert({var, site});
    }
    for (const std::string& use : s.uses) {
      auto it = state.find(use);
      if (it != state.end()) {
        result_.def_use_edges.insert({it->second, stmt});
      }
    }
  }

  static void dedup(std::vector<PathState>& states) {
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
  }

  std::vector<PathState> process_leaf(int stmt, std::vector<PathState> states) {
    const MiniStmt& s = program_.stmts[static_cast<size_t>(stmt)];
    for (PathState& state : states) {
      record_visit(stmt, state);
      if (!s.var.empty()) state[s.var] = stmt;  // strong update
    }
    dedup(states);
    return states;
  }

  std::vector<PathState> process_block(const MiniBlock& block,
                                       std::vector<PathState> states) {
    for (const MiniItem& item : block.items) {
      switch (item.type) {
        case MiniItem::Type::Leaf:
          states = process_leaf(item.stmt, std::move(states));
          break;
        case MiniItem::Type::If: {
          std::vector<PathState> out;
          for (const PathState& state : states) {
            record_visit(item.stmt, state);
            std::vector<PathState> taken =
                process_block(*item.then_branch, {state});
            out.insert(out.end(), taken.begin(), taken.end());
            if (item.else_branch) {
              std::vector<PathState> other =
                  process_block(*item.else_branch, {state});
              out.insert(out.end(), other.begin(), other.end());
            } else {
              out.push_back(state);
            }
          }
          dedup(out);
          states = std::move(out);
          break;
        }
        case MiniItem::Type::While: {
          // Body executed 0, 1 or 2 times; the header is (re)visited before
          // every body entry and once more on exit. Two unrollings reach the
          // reaching-definitions fixed point for a single loop.
          std::vector<PathState> out;
          for (const PathState& state : states) {
            record_visit(item.stmt, state);
            out.push_back(state);  // 0 iterations

            std::vector<PathState> once = process_block(*item.body, {state});
            for (const PathState& s1 : once) {
              record_visit(item.stmt, s1);
              out.push_back(s1);  // 1 iteration

              std::vector<PathState> twice = process_block(*item.body, {s1});
              for (const PathState& s2 : twice) {
                record_visit(item.stmt, s2);
                out.push_back(s2);  // 2 iterations
              }
            }
          }
          dedup(out);
          states = std::move(out);
          break;
        }
      }
    }
    return states;
  }

  const MiniProgram& program_;
  OracleResult result_;
};

}  // namespace

MiniProgram generate_mini_program(std::mt19937& rng, int max_stmts, int max_vars,
                                  bool allow_while) {
  MiniGen gen(rng, max_stmts, max_vars, allow_while);
  return gen.run();
}

OracleResult run_rda_oracle(const MiniProgram& program) {
  Oracle oracle(program);
  return oracle.run();
}

// ---- rich snippets ------------------------------------------------------------

std::string generate_rich_snippet(std::mt19937& rng) {
  int salt = static_cast<int>(rng() % 1000000u);
  std::string s;
  auto n = [&](int k) { return std::to_string(salt + k); };

  switch (rng() % 6) {
    case 0:  // bare method using free variables
      s = "int compute" + n(0) + "(int x, int y) {\n"
          "  int total = x + y + offset;\n"
          "  if (total > limit) { total -= limit; }\n"
          "  logger.info(total);\n"
          "  return total;\n"
          "}\n";
      break;
    case 1:  // collections and loops
      s = "List<String> pick" + n(0) + "(List<String> items) {\n"
          "  List<String> out = new ArrayList<>();\n"
          "  for (String item : items) {\n"
          "    if (item.length() > " + n(1) + ") { out.add(item); }\n"
          "  }\n"
          "  return out;\n"
          "}\n";
      break;
    case 2:  // arrays, while, compound assignment
      s = "int sum" + n(0) + "(int[] values) {\n"
          "  int acc = 0;\n"
          "  int i = 0;\n"
          "  while (i < values.length) {\n"
          "    acc += values[i];\n"
          "    i++;\n"
          "  }\n"
          "  return acc;\n"
          "}\n";
      break;
    case 3:  // try/catch/finally, switch
      s = "void handle" + n(0) + "(int code) {\n"
          "  try {\n"
          "    risky(code);\n"
          "  } catch (Exception e) {\n"
          "    report(e);\n"
          "  } finally {\n"
          "    cleanup();\n"
          "  }\n"
          "  switch (code) {\n"
          "    case 1: state = " + n(1) + "; break;\n"
          "    default: state = 0;\n"
          "  }\n"
          "}\n";
      break;
    case 4:  // bare statement sequence (global-style snippet)
      s = "counter = counter + " + n(0) + ";\n"
          "buffer.append(counter);\n"
          "if (counter > " + n(1) + ") { flush(buffer); }\n";
      break;
    default:  // small class with two methods and a call between them
      s = "class Worker" + n(0) + " {\n"
          "  int base;\n"
          "  int scale(int v) { return v * base; }\n"
          "  int apply(int v) {\n"
          "    int r = scale(v) + " + n(1) + ";\n"
          "    base = r;\n"
          "    return r;\n"
          "  }\n"
          "}\n";
      break;
  }
  return s;
}

std::string corrupt_snippet(std::mt19937& rng, std::string snippet) {
  if (snippet.size() < 8) return "int f({";
  switch (rng() % 3) {
    case 0: {  // drop a closing brace
      size_t pos = snippet.rfind('}');
      if (pos != std::string::npos) snippet.erase(pos, 1);
      snippet += "\n(";
      break;
    }
    case 1:  // chop the tail mid-token
      snippet.resize(snippet.size() / 2);
      snippet += "(";
      break;
    default:  // stray operator soup
      snippet.insert(snippet.size() / 2, " = = ( ");
      break;
  }
  return snippet;
}

}  // namespace cvtest
