import os

import pytest

import motext


@pytest.fixture(scope="module")
def a2():
    return motext.resolve("A2", 20, 6)


def test_presets():
    assert {"A", "A2", "B", "E-tau3"} <= set(motext.presets())


def test_e_tau3_diagonal():
    r = motext.resolve("E-tau3", 42, 3)
    rows = r.chart_rows(42, 3)
    assert [(s, f, w) for s, f, w, _, _ in rows] == [(0, 0, 0), (14, 1, 7), (28, 2, 14), (42, 3, 21)]
    assert r.total_generators() == 4


def test_tsv_round_trip(a2):
    text = a2.chart_tsv(20, 6)
    assert text.splitlines()[1] == "s\tf\tw\tdim\ttau_rank"
    assert motext.read_tsv(text) == a2.chart_rows(20, 6)
    for s, f, w, dim, _ in a2.chart_rows(20, 6):
        assert a2.dim(s, f, w) == dim


def test_svg_deterministic(a2):
    pal = motext.palette_path()
    assert os.path.exists(pal)
    assert a2.svg(20, 6, pal) == a2.svg(20, 6, pal)
    assert "tau-torsion" in a2.svg(20, 6, pal)


def test_checkpoint(tmp_path, a2):
    path = str(tmp_path / "A2.ckpt")
    a2.save(path)
    back = motext.Resolution.load(path, "A2")
    assert back.chart_rows(20, 6) == a2.chart_rows(20, 6)
    with pytest.raises(motext.ResolutionError):
        motext.Resolution.load(path, "B")
    (tmp_path / "bad.ckpt").write_bytes(b"nonsense")
    with pytest.raises(motext.ResolutionError):
        motext.Resolution.load(str(tmp_path / "bad.ckpt"), "A2")


def test_region_errors(a2):
    with pytest.raises(motext.ResolutionError):
        a2.dim(40, 2, 0)


def test_queries():
    ws = motext.Workspace()
    assert ws.product(["h0^3", "g2"])["value"] == "0"
    assert ws.restrict("e0")["value"] == "e0 + h1^3 v3"
    m = ws.mahowald("h1")
    assert (m["s"], m["f"], m["w"]) == (46, 7, 25)
    assert m["nonzero"] and m["factors"]
    assert m["restriction"] == "h1 e0 v3^2 + h1^4 v3^3"
    b = ws.massey("h0", "h1", "h0")
    assert b["value"] == "tau h1^2"
    with pytest.raises(motext.NamingError):
        ws.restrict("nonsense")
    with pytest.raises(motext.YonedaError):
        ws.massey("h0", "h2", "h0")
