#include <doctest.h>

#include "support/fixtures.hpp"

using namespace codeview;

namespace {

const SymbolEntry* entry_named(const SymbolTable& table, std::string_view name,
                               SymbolKind kind) {
  for (const SymbolEntry& e : table.entries()) {
    if (e.name == name && e.kind == kind) return &e;
  }
  return nullptr;
}

int count_scopes(const SymbolTable& table, ScopeKind kind) {
  int n = 0;
  for (const Scope& s : table.scopes()) {
    if (s.kind == kind) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("declarations, signatures and scopes of a small class") {
  auto u = cvtest::make_unit("class A { int x; void f(int y){ int z; } }");
  const SymbolTable& t = u->table;

  const SymbolEntry* type_a = entry_named(t, "A", SymbolKind::Type);
  REQUIRE(type_a != nullptr);

  const SymbolEntry* field_x = entry_named(t, "x", SymbolKind::Field);
  REQUIRE(field_x != nullptr);
  CHECK(field_x->declared_type == "int");

  const SymbolEntry* method_f = entry_named(t, "f", SymbolKind::Method);
  REQUIRE(method_f != nullptr);
  REQUIRE(method_f->signature.has_value());
  CHECK(method_f->signature->name == "f");
  CHECK(method_f->signature->arity == 1);
  CHECK(method_f->signature->param_types == std::vector<std::string>{"int"});

  const SymbolEntry* param_y = entry_named(t, "y", SymbolKind::Parameter);
  REQUIRE(param_y != nullptr);
  CHECK(param_y->declared_type == "int");

  const SymbolEntry* var_z = entry_named(t, "z", SymbolKind::Variable);
  REQUIRE(var_z != nullptr);
  CHECK(var_z->declared_type == "int");

  // global + type + method + body block
  CHECK(t.scopes().size() == 4);
  CHECK(count_scopes(t, ScopeKind::Global) == 1);
  CHECK(count_scopes(t, ScopeKind::Type) == 1);
  CHECK(count_scopes(t, ScopeKind::Method) == 1);
  CHECK(count_scopes(t, ScopeKind::Block) == 1);
  CHECK(t.scope(0).parent == -1);

  // scope spans nest inside their parents
  for (const Scope& s : t.scopes()) {
    if (s.parent >= 0) CHECK(t.scope(s.parent).span.contains(s.span));
  }
}

TEST_CASE("empty class produces a single member-free type") {
  auto u = cvtest::make_unit("class A {}");
  const SymbolTable& t = u->table;
  const TypeInfo* a = t.find_type("A");
  REQUIRE(a != nullptr);
  CHECK(a->members.empty());
  CHECK_FALSE(a->is_primitive);
  int type_entries = 0;
  for (const SymbolEntry& e : t.entries()) {
    if (e.kind == SymbolKind::Type) ++type_entries;
  }
  CHECK(type_entries == 1);
}

TEST_CASE("multi-class program records constructors and hierarchy") {
  auto u = cvtest::make_unit(R"(
class ClassA { }
class ClassB extends ClassA {
  int y;
  ClassB(int v) { this.y = v; }
}
class Main {
  public static void main(String[] args) {
    ClassA a = new ClassA();
    ClassB b = new ClassB(1);
  }
}
)");
  const SymbolTable& t = u->table;
  CHECK(t.find_type("ClassA") != nullptr);
  CHECK(t.find_type("Main") != nullptr);
  const TypeInfo* b = t.find_type("ClassB");
  REQUIRE(b != nullptr);
  CHECK(b->supertypes == std::vector<std::string>{"ClassA"});
  const SymbolEntry* ctor = entry_named(t, "ClassB", SymbolKind::Constructor);
  REQUIRE(ctor != nullptr);
  REQUIRE(ctor->signature.has_value());
  CHECK(ctor->signature->arity == 1);
}

TEST_CASE("shadowing: local wins over field, inner position is honored") {
  std::string text =
      "class A {\n"
      "  int x;\n"
      "  void f() {\n"
      "    int x = 1;\n"
      "    { x = 2; }\n"
      "  }\n"
      "}\n";
  auto u = cvtest::make_unit(text);
  const SymbolTable& t = u->table;

  const SymbolEntry* local = entry_named(t, "x", SymbolKind::Variable);
  const SymbolEntry* field = entry_named(t, "x", SymbolKind::Field);
  REQUIRE(local != nullptr);
  REQUIRE(field != nullptr);

  uint32_t use_pos = static_cast<uint32_t>(text.find("x = 2"));
  auto resolved = t.resolve_at("x", use_pos);
  REQUIRE(resolved.has_value());
  CHECK(*resolved == local->id);

  // Scope-based resolution from the inner block scope agrees.
  auto by_scope = t.resolve_symbol("x", t.innermost_scope_at(use_pos));
  REQUIRE(by_scope.has_value());
  CHECK(*by_scope == local->id);

  // Before the local's declaration the field is the visible x.
  uint32_t early = static_cast<uint32_t>(text.find("int x = 1"));
  auto before = t.resolve_at("x", early);
  REQUIRE(before.has_value());
  CHECK(*before == field->id);
}

TEST_CASE("free variables resolve to absent") {
  auto u = cvtest::make_unit("int f() { return logger + 1; }");
  uint32_t pos = static_cast<uint32_t>(u->unit.text.find("logger"));
  CHECK_FALSE(u->table.resolve_at("logger", pos).has_value());
  CHECK_FALSE(u->table.resolve_symbol("logger", u->table.global_scope()).has_value());
}

TEST_CASE("variable declared in method scope is visible in nested blocks") {
  std::string text = "void g() { int v = 1; if (v > 0) { v = v + 1; } }";
  auto u = cvtest::make_unit(text);
  uint32_t pos = static_cast<uint32_t>(text.rfind("v = v + 1"));
  auto resolved = u->table.resolve_at("v", pos);
  REQUIRE(resolved.has_value());
  CHECK(u->table.entry(*resolved).kind == SymbolKind::Variable);
}

TEST_CASE("zero-argument constructor resolution") {
  auto u = cvtest::make_unit(
      "class ClassB { ClassB() { } }\n"
      "class Main { void m() { ClassB b = new ClassB(); } }\n");
  int creation = -1;
  for (int i = 0; i < u->cst.size(); ++i) {
    if (u->cst.node(i).kind == "object_creation_expression") creation = i;
  }
  REQUIRE(creation >= 0);
  auto target = u->table.resolve_invocation(u->cst, creation);
  REQUIRE(target.has_value());
  CHECK(u->table.entry(target->entry).kind == SymbolKind::Constructor);
  CHECK_FALSE(target->low_confidence);
}

TEST_CASE("creation of a constructor-less local type targets the type entry") {
  auto u = cvtest::make_unit(
      "class ClassA { }\n"
      "class Main { void m() { ClassA a = new ClassA(); } }\n");
  int creation = -1;
  for (int i = 0; i < u->cst.size(); ++i) {
    if (u->cst.node(i).kind == "object_creation_expression") creation = i;
  }
  auto target = u->table.resolve_invocation(u->cst, creation);
  REQUIRE(target.has_value());
  CHECK(u->table.entry(target->entry).kind == SymbolKind::Type);
  CHECK(u->table.entry(target->entry).name == "ClassA");
}

TEST_CASE("external calls resolve to absent") {
  auto u = cvtest::make_unit(
      "class Main { void m() { System.out.println(1); } }");
  int call = -1;
  for (int i = 0; i < u->cst.size(); ++i) {
    if (u->cst.node(i).kind == "method_invocation") call = i;
  }
  REQUIRE(call >= 0);
  CHECK_FALSE(u->table.resolve_invocation(u->cst, call).has_value());
}

TEST_CASE("overloads separate on literal argument type") {
  auto u = cvtest::make_unit(
      "class A {\n"
      "  void f(int v) { }\n"
      "  void f(String v) { }\n"
      "  void m() { f(3); }\n"
      "}\n");
  int call = -1;
  for (int i = 0; i < u->cst.size(); ++i) {
    if (u->cst.node(i).kind == "method_invocation") call = i;
  }
  auto target = u->table.resolve_invocation(u->cst, call);
  REQUIRE(target.has_value());
  CHECK_FALSE(target->low_confidence);
  const SymbolEntry& e = u->table.entry(target->entry);
  REQUIRE(e.signature.has_value());
  CHECK(e.signature->param_types == std::vector<std::string>{"int"});
}

TEST_CASE("unresolvable overload tie breaks to declaration order, flagged") {
  auto u = cvtest::make_unit(
      "class A {\n"
      "  void f(int v) { }\n"
      "  void f(String v) { }\n"
      "  void m(Object o) { f(pick(o)); }\n"
      "}\n");
  int call = -1;
  for (int i = 0; i < u->cst.size(); ++i) {
    if (u->cst.node(i).kind == "method_invocation" &&
        u->cst.slice(u->cst.child_by_field(i, "name")) == "f") {
      call = i;
    }
  }
  auto target = u->table.resolve_invocation(u->cst, call);
  REQUIRE(target.has_value());
  CHECK(target->low_confidence);
  const SymbolEntry& e = u->table.entry(target->entry);
  CHECK(e.signature->param_types == std::vector<std::string>{"int"});
}

TEST_CASE("method call through a typed receiver") {
  auto u = cvtest::make_unit(
      "class B { void set(int v) { } }\n"
      "class Main { void m() { B b = new B(); b.set(1); } }\n");
  int call = -1;
  for (int i = 0; i < u->cst.size(); ++i) {
    if (u->cst.node(i).kind == "method_invocation") call = i;
  }
  auto target = u->table.resolve_invocation(u->cst, call);
  REQUIRE(target.has_value());
  CHECK(u->table.entry(target->entry).name == "set");
}

TEST_CASE("inherited methods resolve through the recorded hierarchy") {
  auto u = cvtest::make_unit(
      "class Base { void run() { } }\n"
      "class Derived extends Base { }\n"
      "class Main { void m() { Derived d = new Derived(); d.run(); } }\n");
  int call = -1;
  for (int i = 0; i < u->cst.size(); ++i) {
    if (u->cst.node(i).kind == "method_invocation") call = i;
  }
  auto target = u->table.resolve_invocation(u->cst, call);
  REQUIRE(target.has_value());
  CHECK(u->table.entry(target->entry).name == "run");
}

TEST_CASE("resolution never crosses into sibling scopes") {
  std::string text =
      "class A { void f() { { int q = 1; } { int r = q; } } }";
  auto u = cvtest::make_unit(text);
  uint32_t pos = static_cast<uint32_t>(text.find("= q") + 2);
  CHECK_FALSE(u->table.resolve_at("q", pos).has_value());
}

TEST_CASE("primitive types are preloaded and member-free") {
  auto u = cvtest::make_unit("class A {}");
  const TypeInfo* t = u->table.find_type("int");
  REQUIRE(t != nullptr);
  CHECK(t->is_primitive);
  CHECK(t->members.empty());
  CHECK(t->supertypes.empty());
  CHECK(u->table.is_primitive_type("int"));
  CHECK_FALSE(u->table.is_primitive_type("String"));
  CHECK_FALSE(u->table.is_primitive_type("int[]"));
}
