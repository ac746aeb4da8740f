from __future__ import annotations

import json

import pytest

from atomspec.cli import main


@pytest.fixture
def files(tmp_path):
    docs = {
        "chain3.json": {"points": ["a", "b", "c"], "leq": [["a", "b"], ["b", "c"]]},
        "z6.json": {"ring": "Z", "generators": 1, "relations": [[6]]},
        "z.json": {"ring": "Z", "generators": 1, "relations": []},
        "z4.json": {"ring": "Z", "generators": 1, "relations": [[4]]},
        "f2.json": {"ring": {"Fp": 2}, "generators": 1, "relations": [[[0, 1, 1]]]},
        "bad_ring.json": {"ring": "Q", "generators": 1},
    }
    for name, doc in docs.items():
        (tmp_path / name).write_text(json.dumps(doc))
    (tmp_path / "broken.json").write_text('{"points": ["a",\n  ')
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_space_alexandroff_witness(capsys):
    code, out, _ = run(capsys, "space", "--builtin", "grmod_kx", "--check", "alexandroff")
    assert code == 0
    assert "alexandroff: false, witness b" in out


def test_space_completion(capsys):
    code, out, _ = run(capsys, "space", "--builtin", "grmod_kx", "--complete", "--check", "alexandroff")
    assert code == 0 and "alexandroff: true" in out


def test_space_dot(capsys, files):
    code, out, _ = run(capsys, "space", files / "chain3.json", "--order", "--dot")
    assert code == 0
    assert out.startswith("digraph") and '"a" -> "b";' in out and '"b" -> "c";' in out


def test_filtration_grmod(capsys):
    code, out, _ = run(capsys, "filtration", "--builtin", "grmod_kx")
    assert code == 0
    assert "support k[x] = {b} ∪ {s_j : j <= 0}: gkdim=1 dim=0 adim=0" in out
    assert "does-not-exist" in out


def test_filtration_chain(capsys, files):
    code, out, _ = run(capsys, "filtration", files / "chain3.json", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["supports"]["X"] == {"set": "{a, b, c}", "gkdim": "2", "dim": "2", "adim": "2"}


def test_filtration_goodearl_amin(capsys):
    code, out, _ = run(capsys, "filtration", "--builtin", "goodearl", "--amin")
    assert code == 0
    assert "AMin infinite: {b} ∪ {m_j : j >= 0}" in out
    assert "Λ not open at: {b}" in out


def test_ring_reports(capsys, files):
    code, out, _ = run(capsys, "ring", files / "z6.json")
    assert code == 0
    assert "AAss = {(2), (3)}" in out and "gkdim=0" in out and "monoform=false" in out
    code, out, _ = run(capsys, "ring", files / "z.json", "--classify")
    assert out.strip() == "monoform, compressible, 1-critical"
    code, out, _ = run(capsys, "ring", files / "z4.json", "--oracle")
    assert code == 0 and "oracle: agrees" in out
    code, out, _ = run(capsys, "ring", files / "f2.json", "--json")
    assert json.loads(out)["asupp"] == "{(x), (x+1)}"


def test_input_errors_exit_two(capsys, files):
    assert run(capsys, "ring", files / "bad_ring.json")[0] == 2
    code, _, err = run(capsys, "space", files / "broken.json")
    assert code == 2 and "line" in err
    assert run(capsys, "space", files / "missing.json")[0] == 2
    assert run(capsys, "space")[0] == 2
    assert run(capsys, "filtration", "--builtin", "grmod_kx", "--support", "nope")[0] == 2
    assert run(capsys, "space", files / "chain3.json", "--max-points", "2")[0] == 2


def test_reports_are_deterministic(capsys, files):
    first = run(capsys, "filtration", "--builtin", "goodearl", "--amin", "--json")[1]
    second = run(capsys, "filtration", "--builtin", "goodearl", "--amin", "--json")[1]
    assert first == second


def test_verify_symbolic_scope(capsys):
    code, out, _ = run(capsys, "verify", "symbolic")
    assert code == 0
    assert "verify: ok" in out and "grmod_kx" in out
