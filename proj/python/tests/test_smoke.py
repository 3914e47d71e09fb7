import os
import pathlib

import pytest

import mcsp

PAIR = (
    "PE : Unit + Unit = (a -> SKIP tt) [] (b -> SKIP tt)\n"
    "PI : Unit + Unit = (a -> SKIP tt) |~| (b -> SKIP tt)\n"
)


def test_check_reports_diagnostics():
    assert mcsp.check(PAIR) == []
    (d,) = mcsp.check("X : Unit = X\n")
    assert d["kind"] == "unguarded"
    assert d["definition"] == "X"
    assert mcsp.check("P : Unit = a ->")[0]["kind"] == "syntax"


def test_traces():
    ts = mcsp.traces("P : {u, w} = a -> b -> SKIP u\n", "P", depth=3)
    assert ts == [
        {"labels": [], "outcome": None},
        {"labels": ["a"], "outcome": None},
        {"labels": ["a", "b"], "outcome": None},
        {"labels": ["a", "b"], "outcome": "u"},
    ]


def test_distinguishing_pair():
    assert mcsp.refine(PAIR, "PE", "PI", model="traces")["holds"]
    assert mcsp.refine(PAIR, "PI", "PE", model="traces")["holds"]
    assert mcsp.refine(PAIR, "PI", "PE", model="sf")["holds"]
    v = mcsp.refine(PAIR, "PE", "PI", model="sf")
    assert not v["holds"]
    assert v["failing"] == "failures"
    assert v["failures"]["counterexample"]["labels"] == []
    assert v["failures"]["counterexample"]["initials"] in (["a"], ["b"])


def test_failures_and_divergences():
    fs = mcsp.failures(PAIR, "PI", depth=0)["failures"]
    assert sorted(f["initials"] for f in fs) == [["a"], ["b"]]
    assert mcsp.divergences("X : Empty = X |~| X\n", "X") == [{"labels": [], "mode": "definitive"}]
    assert mcsp.divergences("S : Unit = STOP\n", "S") == []


def test_lts():
    g = mcsp.lts("X : Empty = X |~| X\n", "X")
    assert g["complete"]
    assert len(g["states"]) == 1
    assert g["edges"] == [{"from": 0, "kind": "tau", "to": 0}]


def test_session_walk():
    s = mcsp.Session("P : {u, w} = a -> b -> SKIP u\n", "P")
    assert s.term == "P"
    s.step("ext", 0)
    s.step("ext", 0)
    state = s.step("tick", 0)
    assert state["status"] == "terminated"
    assert state["value"] == "u"
    assert s.trace == ["a", "b"]
    assert s.undo()
    assert s.state()["status"] == "running"
    with pytest.raises(IndexError):
        s.step("ext", 5)
    with pytest.raises(ValueError):
        s.step("jump", 0)


def test_errors():
    with pytest.raises(mcsp.SourceError) as e:
        mcsp.traces("X : Unit = X\n", "X")
    assert e.value.diagnostics[0]["kind"] == "unguarded"
    assert isinstance(e.value, ValueError)
    with pytest.raises(KeyError):
        mcsp.traces("S : Unit = STOP\n", "Nope")
    with pytest.raises(TypeError):
        mcsp.refine("A : Unit = STOP\nB : Bool = STOP\n", "A", "B")


def test_laws():
    assert "extchoice-comm" in mcsp.law_names()
    r = mcsp.run_law("extchoice-comm", trials=20, seed=3, depth=3)
    assert r["passed"] and r["trials"] == 20
    with pytest.raises(RuntimeError):
        mcsp.run_law("bogus")


def test_golden_corpus_checks():
    root = pathlib.Path(os.environ.get("MCSP_CORPUS_DIR", pathlib.Path(__file__).parents[2] / "corpus"))
    files = sorted((root / "golden").glob("*.csp"))
    assert len(files) >= 30
    for f in files:
        assert mcsp.check(f.read_text()) == [], f.name
