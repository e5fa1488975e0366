import json

import pytest

from automata import reverse
from errors import FormatError
from presentations import same_edges
from presets import presentation
from storage import dumps, load, load_bundle, loads, save, save_bundle, to_dot


@pytest.mark.parametrize("name", ["z1", "f2", "lamplighter"])
def test_save_then_load_is_identity(tmp_path, name):
    p = presentation(name)
    for i, automaton in enumerate((p.domain, *p.edges)):
        path = tmp_path / f"a{i}.atm"
        save(automaton, path)
        assert load(path) == automaton


def test_relaxed_discipline_survives(tmp_path):
    flipped = reverse(presentation("z1").edges[0])
    text = dumps(flipped)
    assert "discipline relaxed" in text
    assert loads(text) == flipped


def test_text_layout():
    text = dumps(presentation("z1").domain)
    lines = text.splitlines()
    assert lines[0] == "tapes 1"
    assert lines[1] == "alphabet p n"
    assert lines[2].startswith("states ")
    assert loads("# comment\n" + text) == presentation("z1").domain


@pytest.mark.parametrize(
    "text",
    [
        "",
        "tapes 1\nalphabet a\nstates x\ninitial 0\naccepting 0\n",
        "tapes 1\nalphabet a\nstates 1\ninitial 0\naccepting 0\n0 a 0\n",
        "tapes 1\nalphabet a\nstates 1\ninitial 0\naccepting 0\n0 (b) 0\n",
        "tapes 2\nalphabet a\nstates 2\ninitial 0\naccepting 1\n0 (b,a) 1\n0 (a,a) 1\n",
        "tapes 1\nalphabet a\nstates 1\ninitial 3\naccepting 0\n",
        "alphabet a\ntapes 1\nstates 1\ninitial 0\naccepting 0\n",
        "tapes 1\nalphabet a\nstates 1\ninitial 0\naccepting 0\ndiscipline strict\n",
    ],
)
def test_malformed_files_raise_format_error(text):
    with pytest.raises(FormatError):
        loads(text)


def test_missing_file(tmp_path):
    with pytest.raises(FormatError):
        load(tmp_path / "nothing.atm")


def test_bundle_round_trip(tmp_path):
    p = presentation("lamplighter")
    save_bundle(p, tmp_path / "bundle")
    meta = json.loads((tmp_path / "bundle" / "meta.json").read_text())
    assert meta["labels"] == 3
    assert meta["names"] == ["t", "T", "h"]
    loaded = load_bundle(tmp_path / "bundle")
    assert loaded == p
    assert same_edges(loaded, p)


def test_bundle_errors(tmp_path):
    with pytest.raises(FormatError):
        load_bundle(tmp_path / "missing")
    (tmp_path / "empty").mkdir()
    with pytest.raises(FormatError):
        load_bundle(tmp_path / "empty")
    save_bundle(presentation("z1"), tmp_path / "cut")
    (tmp_path / "cut" / "edge_1.atm").unlink()
    with pytest.raises(FormatError):
        load_bundle(tmp_path / "cut")


def test_unknown_symbol_in_bundle_is_a_format_error(tmp_path):
    save_bundle(presentation("z1"), tmp_path / "z1")
    edge = tmp_path / "z1" / "edge_0.atm"
    assert "(p,p)" in edge.read_text()
    edge.write_text(edge.read_text().replace("(p,p)", "(q,p)"))
    with pytest.raises(FormatError, match="outside the alphabet"):
        load_bundle(tmp_path / "z1")


def test_dot_export():
    dot = to_dot(presentation("z1").edges[0], "Z +e1")
    assert dot.startswith('digraph "Z +e1" {')
    assert "doublecircle" in dot
    assert "◇" in dot
