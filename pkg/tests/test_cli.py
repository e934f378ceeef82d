"""End-to-end command tests running the CLI in process."""

import contextlib
import io
import json
import subprocess

import pytest

from quivshuf.cli import EXIT_CODES, run


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    d = tmp_path_factory.mktemp("cli")
    jordan = d / "jordan.json"
    jordan.write_text(
        json.dumps(
            {
                "vertices": ["1"],
                "edges": [{"src": "1", "tgt": "1", "label": "1"}],
            }
        )
    )
    const3 = d / "const3.json"
    const3.write_text(
        json.dumps(
            {
                "degree": {"1": 3},
                "twist": "plain",
                "params": ["q", "t1"],
                "terms": [{"exp": {"1": [0, 0, 0]}, "coeff": "1"}],
            }
        )
    )
    return {"dir": d, "jordan": str(jordan), "const3": str(const3)}


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = run(list(argv))
    body = out.getvalue()
    doc = json.loads(body) if body.startswith("{") else None
    return code, doc, body, err.getvalue()


def test_pair_unit_value(files):
    code, doc, _body, _err = _run(
        "pair", "--quiver", files["jordan"], "--word", "[1^3]", "--against", "[1^3]"
    )
    assert code == 0
    assert doc["result"] == {"against": "[1^3]", "symmetric": False, "value": "1"}
    meta = doc["meta"]
    assert meta["tool"] == "quivshuf" and meta["twist"] == "plain"
    assert meta["specialization"] == "id" and len(meta["quiver_digest"]) == 64


def test_pair_symmetric_flag(files):
    code, doc, _body, _err = _run(
        "pair",
        "--quiver",
        files["jordan"],
        "--f-word",
        "[1^3]",
        "--against",
        "[1^3]",
        "--symmetric",
    )
    assert code == 0
    assert doc["result"]["symmetric"] is True
    assert doc["result"]["value"] == "1"


def test_graph_component_report():
    code, doc, _body, _err = _run(
        "graph-component", "--n", "2", "--m", "2", "--seed", "0,0", "--edges"
    )
    assert code == 0
    assert doc["result"]["vertices"] == [[-2, 2], [-1, 1], [0, 0]]
    assert doc["result"]["edge_count"] == 4
    assert len(doc["result"]["edges"]) == 4
    assert doc["meta"]["quiver_digest"] is None


def test_theorem_check_report(files):
    code, doc, _body, _err = _run(
        "theorem-check", "--quiver", files["jordan"], "--degree", "1:2", "--window=-2,2"
    )
    assert code == 0
    rep = doc["result"]
    assert rep["success"] is True
    assert [(e["total"], e["dimension"]) for e in rep["totals"]] == [
        (-4, 1),
        (-3, 1),
        (-2, 2),
        (-1, 2),
        (0, 3),
        (1, 2),
        (2, 2),
        (3, 1),
        (4, 1),
    ]


def test_words_enumerate(files):
    code, doc, _body, _err = _run(
        "words-enumerate",
        "--quiver",
        files["jordan"],
        "--degree",
        "1:2",
        "--total",
        "0",
        "--window=-1,1",
    )
    assert code == 0
    assert doc["result"]["count"] == 2
    assert doc["result"]["words"] == ["[1^-1 1^1]", "[1^0 1^0]"]


def test_zeta_factors_and_series(files):
    code, doc, _body, _err = _run(
        "zeta",
        "--quiver",
        files["jordan"],
        "--i",
        "1",
        "--j",
        "1",
        "--series-order",
        "2",
    )
    assert code == 0
    res = doc["result"]
    assert res["den_factors"] == ["(1) + (-1)*x"]
    assert len(res["num_factors"]) == 3
    assert [e for e, _c in res["ratio_series"]] == [-2, -1, 0, 1, 2]
    assert res["ratio_series"][0][1] == "1"


def test_byte_identical_runs_and_out_file(files):
    argv = ("pair", "--quiver", files["jordan"], "--word", "[1^2]", "--against", "[1^2]")
    _code, _doc, body1, _err = _run(*argv)
    _code, _doc, body2, _err = _run(*argv)
    assert body1 == body2
    out = files["dir"] / "pair.json"
    code, _doc, body3, _err = _run(*argv, "--out", str(out))
    assert code == 0 and body3 == ""
    assert out.read_text() == body1


def test_pretty_renders_same_data(files):
    argv = ("zeta", "--quiver", files["jordan"], "--i", "1", "--j", "1")
    _code, doc, body, _err = _run(*argv)
    _code, _doc2, pretty, _err = _run(*argv, "--pretty")
    assert pretty != body
    assert json.loads(pretty) == doc


def test_shuffle_element_files_round_trip(files):
    code, doc, _body, _err = _run(
        "shuffle", "--quiver", files["jordan"], "1^1", "1^-1"
    )
    assert code == 0
    elem = files["dir"] / "prod.json"
    elem.write_text(json.dumps(doc["result"]["element"]))

    code, doc, _body, _err = _run(
        "wheel-check", "--quiver", files["jordan"], "--element", str(elem)
    )
    assert code == 0 and doc["result"]["passes"] is True

    code, doc, _body, _err = _run(
        "decompose", "--quiver", files["jordan"], "--element", str(elem)
    )
    assert code == 0
    assert doc["result"]["round_trip"] is True
    assert [t["word"] for t in doc["result"]["terms"]][0] == "[1^-3 1^3]"

    # @file items splice saved elements back into a product
    code, doc, _body, _err = _run(
        "shuffle", "--quiver", files["jordan"], "@" + str(elem)
    )
    assert code == 0
    assert json.loads(elem.read_text()) == doc["result"]["element"]


def test_wheel_check_word_forms(files):
    code, doc, _body, _err = _run(
        "wheel-check", "--quiver", files["jordan"], "--word", "[1^1 1^0 1^-1]"
    )
    assert code == 0 and doc["result"] == {"first_failure": None, "passes": True}
    code, doc, _body, _err = _run(
        "wheel-check", "--quiver", files["jordan"], "--f-word", "[1^1 1^0 1^-1]"
    )
    assert code == 0 and doc["result"]["passes"] is True


def test_basis_and_tensor_commands(files):
    code, doc, _body, _err = _run(
        "basis", "--quiver", files["jordan"], "--seed-word", "[1^0 1^0]"
    )
    assert code == 0
    std = ["[1^-2 1^2]", "[1^-1 1^1]", "[1^0 1^0]"]
    assert doc["result"]["standard"] == std
    assert doc["meta"]["mode"] == "symbolic"

    code, doc, _body, _err = _run(
        "basis",
        "--quiver",
        files["jordan"],
        "--degree",
        "1:2",
        "--seed",
        "0,0",
        "--mode",
        "probe",
    )
    assert code == 0
    assert doc["result"]["standard"] == std
    assert doc["meta"]["mode"] == "probe"
    assert set(doc["meta"]["witness"]) == {"q", "t1"}

    code, doc, _body, _err = _run(
        "tensor", "--quiver", files["jordan"], "--seed-word", "[1^0 1^0]"
    )
    assert code == 0
    assert [s["word"] for s in doc["result"]["summands"]] == std


def test_specialization_grammar_round_trip(files):
    argv = ("zeta", "--quiver", files["jordan"], "--i", "1", "--j", "1")
    _code, doc, body, _err = _run(*argv, "--specialize", "sqrt-q")
    desc = doc["meta"]["specialization"]
    assert desc == "u2^2=q,q=u2^2,t1=u2"
    _code, _doc, body2, _err = _run(*argv, "--specialize", desc)
    assert body2 == body


def test_torus_witness_modes(files):
    code, doc, _body, _err = _run(
        "torus-witness", "--quiver", files["jordan"], "--specialize", "sqrt-q"
    )
    assert code == 0
    assert doc["result"]["valid"] is True and doc["result"]["attempts"] >= 1
    assert set(doc["result"]["witness"]) == {"u2"}

    code, doc, _body, _err = _run(
        "torus-witness", "--quiver", files["jordan"], "--check", "q=1/5,t1=1/3"
    )
    assert code == 0 and doc["result"]["valid"] is True

    code, doc, _body, _err = _run(
        "torus-witness", "--quiver", files["jordan"], "--check", "q=1,t1=1/3"
    )
    assert code == 0 and doc["result"]["valid"] is False


def test_parse_errors_exit_two(files):
    assert _run("no-such-command")[0] == EXIT_CODES["parse"]
    code, _doc, _body, err = _run(
        "pair",
        "--quiver",
        files["jordan"],
        "--word",
        "[1^0]",
        "--element",
        files["const3"],
        "--against",
        "[1^0]",
    )
    assert code == EXIT_CODES["parse"] and "exactly one" in err
    code, _doc, _body, _err = _run(
        "graph-component", "--n", "3", "--m", "2", "--seed", "0,0"
    )
    assert code == EXIT_CODES["parse"]
    code, _doc, _body, _err = _run(
        "words-enumerate",
        "--quiver",
        files["jordan"],
        "--degree",
        "1:2",
        "--total",
        "0",
        "--window=1,-1",
    )
    assert code == EXIT_CODES["parse"]


def test_missing_file_exit_three(files):
    code, _doc, _body, err = _run(
        "pair",
        "--quiver",
        str(files["dir"] / "absent.json"),
        "--word",
        "[1^0]",
        "--against",
        "[1^0]",
    )
    assert code == EXIT_CODES["file"] and "file error" in err


def test_cap_exit_four():
    code, _doc, _body, err = _run(
        "graph-component", "--m", "2", "--seed", "0,0,0", "--cap", "5"
    )
    assert code == EXIT_CODES["cap"] and "cap exceeded" in err


def test_degenerate_exit_five(files):
    code, _doc, _body, err = _run(
        "decompose", "--quiver", files["jordan"], "--element", files["const3"]
    )
    assert code == EXIT_CODES["degenerate"] and "degenerate" in err


def test_version_flag():
    code, _doc, body, _err = _run("--version")
    assert code == 0


def test_console_script():
    out = subprocess.run(
        ["quivshuf", "graph-component", "--m", "2", "--seed", "0,0"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["result"]["vertices"] == [[-2, 2], [-1, 1], [0, 0]]
