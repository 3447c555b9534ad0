import runpy
from pathlib import Path

import pytest

SCRIPTS = sorted((Path(__file__).parents[1] / "notebooks").glob("*.py"))


@pytest.mark.parametrize("path", SCRIPTS, ids=[p.stem for p in SCRIPTS])
def test_script_runs(path, monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("GAPK_OFFLINE", "1")
    monkeypatch.setenv("GAPK_CACHE_DIR", str(tmp_path))
    runpy.run_path(str(path), run_name="__main__")
    assert capsys.readouterr().out
