"""Smoke tests for the python bindings over the native pipeline."""

import json

import pytest

import codeview


FIG2 = """
class ClassA {
  int x;
}
class ClassB {
  int y;
  ClassB(int v) {
    y = v;
  }
}
class Main {
  public static void main(String[] args) {
    ClassA a = new ClassA();
    ClassB b = new ClassB(1);
  }
}
"""


def test_ast_json_roundtrips():
    graph = codeview.generate_graph("class A { }", views=["ast"])
    assert graph["meta"]["language"] == "java"
    assert graph["meta"]["views"] == ["AST"]
    kinds = {n["kind"] for n in graph["nodes"]}
    assert "class_declaration" in kinds
    assert all(e["kind"] == "ast_child" for e in graph["edges"])


def test_combined_views_carry_expected_edge_kinds():
    graph = codeview.generate_graph(FIG2, views=["cfg", "dfg"])
    kinds = {e["kind"] for e in graph["edges"]}
    assert "constructor_call" in kinds
    assert "class_return" in kinds
    assert "data_flow" in kinds


def test_dot_output_is_a_digraph():
    dot = codeview.generate("class A { void f(){} }", views=["cfg"], format="dot")
    assert dot.startswith("digraph codeview {")
    assert 'color="red"' in dot
    plain = codeview.generate(
        "class A { void f(){} }", views=["cfg"], format="dot", color=False
    )
    assert "color" not in plain


def test_determinism():
    first = codeview.generate(FIG2, views=["ast", "cfg", "dfg"], last_def=True)
    for _ in range(3):
        assert codeview.generate(FIG2, views=["ast", "cfg", "dfg"], last_def=True) == first


def test_syntax_error_is_structured():
    with pytest.raises(codeview.SyntaxError):
        codeview.generate("int f(){", views=["cfg"])
    assert codeview.check_syntax("int f(){") is not None
    assert codeview.check_syntax("class A { }") is None


def test_method_snippet_wrapping():
    graph = codeview.generate_graph(
        "Worker(int id) { this.id = id; }", views=["cfg"], method_snippet=True
    )
    kinds = {n["kind"] for n in graph["nodes"]}
    assert "constructor_entry" in kinds
    spans = [n["span"] for n in graph["nodes"]]
    # wrapped spans stay relative to the original snippet
    assert all(end <= len("Worker(int id) { this.id = id; }") for _, end in spans)


def test_last_use_links_free_variable_reads():
    graph = codeview.generate_graph(
        "print(g); h(g);", views=["dfg"], last_use=True
    )
    kinds = {e["kind"] for e in graph["edges"]}
    assert "last_use" in kinds


def test_blacklist_minimization():
    plain = codeview.generate_graph("void m() { x = (a + b); }", views=["ast"])
    minimized = codeview.generate_graph(
        "void m() { x = (a + b); }",
        views=["ast"],
        blacklist=["parenthesized_expression"],
    )
    assert len(minimized["nodes"]) == len(plain["nodes"]) - 1


def test_json_edges_are_sorted():
    graph = codeview.generate_graph(FIG2, views=["cfg", "dfg"])
    edges = [(e["src"], e["dst"], e["view"], e["kind"]) for e in graph["edges"]]
    assert edges == sorted(edges)


def test_output_validates_against_the_shipped_schema():
    jsonschema = pytest.importorskip("jsonschema")
    import pathlib

    schema_path = pathlib.Path(__file__).resolve().parents[2] / "docs" / "graph-schema.json"
    schema = json.loads(schema_path.read_text(encoding="utf-8"))
    for views in (["ast"], ["cfg"], ["dfg"], ["ast", "cfg", "dfg"]):
        graph = codeview.generate_graph(
            FIG2, views=views, last_def=True, last_use=True, collapsed=True
        )
        jsonschema.validate(graph, schema)
