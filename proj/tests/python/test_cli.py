"""End-to-end tests for the command-line interface."""

import json
import os
import pathlib
import subprocess

import pytest

CLI = os.environ.get("CODEVIEW_CLI")

pytestmark = pytest.mark.skipif(not CLI, reason="CODEVIEW_CLI not set")

FIG2 = """
class ClassA { }
class ClassB {
  int y;
  ClassB(int v) { y = v; }
}
class Main {
  public static void main(String[] args) {
    ClassA a = new ClassA();
    ClassB b = new ClassB(1);
  }
}
"""


def run(args, stdin=None, env=None):
    merged = dict(os.environ)
    if env:
        merged.update(env)
    return subprocess.run(
        [CLI] + args,
        input=stdin,
        capture_output=True,
        text=True,
        env=merged,
    )


def test_stdin_to_json_stdout():
    result = run(["--views", "cfg,dfg", "--format", "json"], stdin=FIG2)
    assert result.returncode == 0
    graph = json.loads(result.stdout)
    kinds = {e["kind"] for e in graph["edges"]}
    assert "constructor_call" in kinds
    assert "class_return" in kinds
    assert "data_flow" in kinds


def test_single_view_ast():
    result = run(["--views", "ast"], stdin="class A{}")
    assert result.returncode == 0
    graph = json.loads(result.stdout)
    assert graph["meta"]["views"] == ["AST"]


def test_syntax_error_exit_code_and_span():
    result = run(["--views", "cfg"], stdin="int f(){")
    assert result.returncode == 3
    assert "syntax error" in result.stderr
    assert "bytes [" in result.stderr


def test_bad_flags_exit_code():
    assert run(["--views", "nope"], stdin="class A{}").returncode == 2
    assert run(["--format", "yaml"], stdin="class A{}").returncode == 2
    assert run(["--lang", "cobol"], stdin="class A{}").returncode == 2
    assert run(["--unknown-flag"], stdin="class A{}").returncode == 2


def test_file_input_and_out_path(tmp_path: pathlib.Path):
    src = tmp_path / "Main.java"
    src.write_text(FIG2, encoding="utf-8")
    out = tmp_path / "main.json"
    result = run(["--file", str(src), "--views", "cfg", "--out", str(out)])
    assert result.returncode == 0
    graph = json.loads(out.read_text(encoding="utf-8"))
    assert graph["meta"]["origin"] == str(src)


def test_dot_color_toggle():
    colored = run(["--views", "cfg", "--format", "dot"], stdin="class A{void f(){}}")
    assert 'color="red"' in colored.stdout
    plain = run(
        ["--views", "cfg", "--format", "dot"],
        stdin="class A{void f(){}}",
        env={"CODEVIEW_NO_COLOR": "1"},
    )
    assert plain.returncode == 0
    assert "color" not in plain.stdout


def test_method_snippet_flag():
    result = run(
        ["--views", "cfg", "--method-snippet"],
        stdin="Worker(int id) { this.id = id; }",
    )
    assert result.returncode == 0
    graph = json.loads(result.stdout)
    assert any(n["kind"] == "constructor_entry" for n in graph["nodes"])


def test_batch_mode(tmp_path: pathlib.Path):
    src = tmp_path / "in"
    src.mkdir()
    (src / "good.java").write_text("class A { void f() { x = 1; } }")
    (src / "bad.java").write_text("int f(){")
    (src / "ignored.txt").write_text("not java")
    out = tmp_path / "out"

    result = run(["--batch", str(src), "--views", "cfg", "--out", str(out)])
    assert result.returncode == 0
    assert "processed=2 succeeded=1 syntax_errors=1" in result.stdout
    assert (out / "good.json").exists()
    assert not (out / "bad.json").exists()

    # deterministic across runs
    second = run(["--batch", str(src), "--views", "cfg", "--out", str(out)])
    assert second.stdout == result.stdout
    assert (out / "good.json").read_text() == (out / "good.json").read_text()


def test_batch_requires_out(tmp_path: pathlib.Path):
    src = tmp_path / "in"
    src.mkdir()
    result = run(["--batch", str(src), "--views", "cfg"])
    assert result.returncode == 2


def test_no_interprocedural_flag():
    with_edges = run(["--views", "cfg"], stdin=FIG2)
    without = run(["--views", "cfg", "--no-interprocedural"], stdin=FIG2)
    kinds_with = {e["kind"] for e in json.loads(with_edges.stdout)["edges"]}
    kinds_without = {e["kind"] for e in json.loads(without.stdout)["edges"]}
    assert "constructor_call" in kinds_with
    assert "constructor_call" not in kinds_without
