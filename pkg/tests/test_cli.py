import json
import subprocess
import sys
from pathlib import Path

import pytest

from drawn import ROTATED_LEAF, SAME_NORMAL_FORM, drawn
from sdnorm.cli import main
from sdnorm.diagram import Diagram, deserialize, parse_trace, replay, serialize
from sdnorm.normalize import is_normal, normalize_naive, spiral

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def write(tmp_path):
    def put(name, d_or_text):
        path = tmp_path / name
        path.write_text(d_or_text if isinstance(d_or_text, str) else serialize(d_or_text))
        return str(path)

    return put


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_equivalent_files(capsys, write):
    a, b = (write(f"{k}.sd", drawn(*x)) for k, x in enumerate(SAME_NORMAL_FORM[:2]))
    code, out, _ = run(capsys, "equiv", a, b)
    assert (code, out) == (0, "equivalent\n")


def test_inequivalent_files(capsys, write):
    a, b = (write(f"{k}.sd", drawn(*x)) for k, x in enumerate(ROTATED_LEAF))
    code, out, _ = run(capsys, "equiv", a, b)
    assert (code, out) == (1, "not equivalent\n")


def test_malformed_file(capsys, write):
    a = write("bad.sd", "sd 1\nS 0\nV 0 1\n")
    code, _, err = run(capsys, "equiv", a, a)
    assert code == 2 and "line 3" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "normalize", "/nonexistent/file.sd")
    assert code == 2 and err


@pytest.mark.parametrize("method", ["auto", "map", "tree", "naive"])
def test_verdict_does_not_depend_on_method(capsys, write, method):
    ds = [drawn(*x) for x in SAME_NORMAL_FORM]
    a, b = write("a.sd", ds[0]), write("b.sd", ds[2])
    c = write("c.sd", drawn(*ROTATED_LEAF[0]))
    assert run(capsys, "equiv", a, b, "--method", method)[0] == 0
    assert run(capsys, "equiv", a, c, "--method", method)[0] == 1


def test_equiv_witness(capsys, write):
    ds = [drawn(*x) for x in SAME_NORMAL_FORM]
    a, b = write("a.sd", ds[0]), write("b.sd", ds[2])
    code, out, _ = run(capsys, "equiv", a, b, "--witness")
    verdict, _, trace = out.partition("\n")
    assert code == 0 and verdict == "equivalent"
    assert replay(ds[0], parse_trace(trace)) == ds[2]


def test_spiral_trace_has_ten_steps(capsys, write):
    path = write("s5.sd", spiral(5))
    code, out, err = run(capsys, "normalize", path, "--naive", "--trace")
    assert code == 0
    steps = parse_trace(err)
    assert len(steps) == 10
    assert replay(spiral(5), steps) == deserialize(out)
    code, out, _ = run(capsys, "spiral", "5", "--trace")
    assert len(out.splitlines()) == 10
    assert run(capsys, "spiral", "5", "--steps")[1] == "10\n"


def test_normal_input_is_unchanged(capsys, write):
    d = drawn(*SAME_NORMAL_FORM[1])
    assert run(capsys, "normalize", write("n.sd", d))[1] == serialize(d)


def test_fast_and_naive_agree(capsys, write):
    for k, x in enumerate(SAME_NORMAL_FORM):
        path = write(f"{k}.sd", drawn(*x))
        fast = run(capsys, "normalize", path, "--fast")[1]
        naive = run(capsys, "normalize", path, "--naive")[1]
        assert fast == naive


def test_random_strategy_seed_from_environment(capsys, write, monkeypatch):
    path = write("s.sd", spiral(6))
    monkeypatch.setenv("SDNORM_SEED", "17")
    a = run(capsys, "normalize", path, "--strategy", "random", "--trace")
    b = run(capsys, "normalize", path, "--strategy", "random", "--trace")
    assert a == b
    assert is_normal(deserialize(a[1]))


def test_normalize_disconnected_fails(capsys, write):
    d = Diagram.from_slices(0, [(0, 0, 1), (0, 1, 0), (0, 0, 1), (0, 1, 0)])
    code, _, err = run(capsys, "normalize", write("d.sd", d))
    assert code == 2 and "boundary-connected" in err


def test_normalize_formats(capsys, write):
    d = Diagram.from_slices(2, [(0, 1, 1), (1, 1, 1)])
    path = write("p.sd", d)
    out = run(capsys, "normalize", path, "--format", "json")[1]
    assert json.loads(out)["vertices"][0]["h"] == 1
    # the right exchange puts the second vertex first: "g . f" runs f first
    assert normalize_naive(d).result.slices() == [(1, 1, 1), (0, 1, 1)]
    assert run(capsys, "normalize", path, "--format", "expr")[1] == "g1_1 * id(1) . id(1) * g1_1\n"
    left = run(capsys, "normalize", path, "--side", "left")[1]
    assert deserialize(left) == normalize_naive(d, "left").result


def test_render_golden(capsys, tmp_path):
    out = tmp_path / "x.svg"
    assert main(["render", str(GOLDEN / "cup_cap.sd"), "-o", str(out)]) == 0
    assert out.read_text() == (GOLDEN / "cup_cap.svg").read_text()
    assert run(capsys, "render", str(GOLDEN / "cup_cap.sd"), "--format", "tikz")[1] == (GOLDEN / "cup_cap.tikz").read_text()


def test_render_empty(capsys, write):
    out = run(capsys, "render", write("e.sd", Diagram(1)))[1]
    assert out.count("<polyline") == 1 and 'points="24,0 24,32"' in out


def test_terms_on_the_command_line(capsys, write):
    sig = write("sig.txt", "G f 1 2\nG g 2 1\n")
    code, out, _ = run(capsys, "convert", "g . f", "--signature", sig)
    assert code == 0
    assert out == "sd 1\nS 1\nV 0 1 2 f\nV 0 2 1 g\n"
    assert run(capsys, "equiv", "g . f", "g . (id(1) * id(1)) . f", "--signature", sig)[0] == 0
    code, _, err = run(capsys, "convert", "f . f", "--signature", sig)
    assert code == 2 and "mismatch" in err


def test_term_file_needs_signature(capsys, write):
    code, _, err = run(capsys, "convert", write("t.txt", "g . f\n"))
    assert code == 2 and "signature" in err


def test_convert_to_expression_and_back(capsys, write, tmp_path):
    d = drawn(*SAME_NORMAL_FORM[0])
    sig = tmp_path / "sig.txt"
    code, expr, _ = run(capsys, "convert", write("a.sd", d), "--to", "expr", "--emit-signature", str(sig))
    assert code == 0
    back = run(capsys, "convert", expr.strip(), "--signature", str(sig))[1]
    assert deserialize(back).slices() == d.slices()
    assert run(capsys, "convert", write("b.sd", d), "--to", "json")[1].startswith("{")


def test_stats(capsys, write):
    d = drawn(*SAME_NORMAL_FORM[0])
    code, out, _ = run(capsys, "stats", write("a.sd", d), "--dump-tree", "--dump-map")
    assert code == 0
    fields = dict(line.split(" ", 1) for line in out.splitlines() if " " in line)
    assert fields["vertices"] == "6"
    assert fields["connectivity"] == "connected"
    assert fields["components"] == "1"
    assert fields["reduction_length"] == str(normalize_naive(d).steps)
    assert "tree_code" in fields and "map_code" in fields


def test_oracle_equiv(capsys, write):
    ds = [drawn(*x) for x in SAME_NORMAL_FORM]
    a, b = write("a.sd", ds[0]), write("b.sd", ds[1])
    code, out, _ = run(capsys, "oracle", "equiv", a, b, "--witness")
    assert code == 0
    assert replay(ds[0], parse_trace(out.split("\n", 1)[1])) == ds[1]
    assert run(capsys, "oracle", "equiv", a, b, "--node-cap", "2")[0] == 2


def test_stdin_and_console_script(write):
    text = serialize(spiral(4))
    proc = subprocess.run(
        [sys.executable, "-m", "sdnorm.cli", "normalize", "-"], input=text, capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert deserialize(proc.stdout) == normalize_naive(spiral(4)).result


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "sdnorm.cli", "frobnicate"], capture_output=True, text=True)
    assert proc.returncode == 2
