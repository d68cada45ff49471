import json
from pathlib import Path

import numpy as np
import pytest

from mlbridge import ExportFormatError, load

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
EXPORTS = FIXTURES / "exports"


def test_load_o2_export():
    s = load(EXPORTS / "O_n2_k2_l2.json")
    assert len(s) == 3
    assert s.group == "O" and s.n == 2 and s.k == 2 and s.l == 2
    assert s.out_dim == 4 and s.in_dim == 4
    for e in s.elements:
        assert e.shape == (4, 4)
        assert e.kind == "E"


def test_load_is_lossless_against_raw_file():
    for path in sorted(EXPORTS.glob("*.json")):
        raw = json.loads(path.read_text())
        s = load(path)
        assert len(s) == len(raw["elements"])
        assert s.out_dim == raw["rows"] and s.in_dim == raw["cols"]
        for loaded, item in zip(s.elements, raw["elements"]):
            got = [[int(r), int(c), int(v)]
                   for r, c, v in zip(loaded.rows, loaded.cols, loaded.vals)]
            assert got == item["entries"]
            assert loaded.kind == item["kind"]
            assert loaded.diagram == item["diagram"]


def test_load_empty_set():
    s = load(EXPORTS / "O_n3_k1_l2.json")
    assert len(s) == 0
    assert s.out_dim == 9 and s.in_dim == 3


def test_load_feature_export():
    s = load(EXPORTS / "O_n2_k1_l1_dk2_dl2.json")
    assert s.d_k == 2 and s.d_l == 2
    assert len(s) == 4
    assert s.elements[0].feature == (1, 1)
    assert s.elements[1].feature == (1, 2)


def test_dense_and_apply_agree():
    s = load(EXPORTS / "SO_n2_k3_l1.json")
    rng = np.random.default_rng(0)
    x = rng.standard_normal(s.in_dim)
    for e in s.elements:
        assert np.allclose(e.apply(x), e.to_dense() @ x)


def test_truncated_file_rejected(tmp_path):
    src = (EXPORTS / "O_n2_k2_l2.json").read_text()
    bad = tmp_path / "truncated.json"
    bad.write_text(src[: len(src) // 2])
    with pytest.raises(ExportFormatError):
        load(bad)


def test_unknown_version_rejected(tmp_path):
    data = json.loads((EXPORTS / "O_n2_k2_l2.json").read_text())
    data["format_version"] = 2
    bad = tmp_path / "future.json"
    bad.write_text(json.dumps(data))
    with pytest.raises(ExportFormatError):
        load(bad)


def test_out_of_shape_entry_rejected(tmp_path):
    data = json.loads((EXPORTS / "O_n2_k2_l2.json").read_text())
    data["elements"][0]["entries"][0][0] = 999
    bad = tmp_path / "oops.json"
    bad.write_text(json.dumps(data))
    with pytest.raises(ExportFormatError):
        load(bad)


def test_missing_file_rejected(tmp_path):
    with pytest.raises(ExportFormatError):
        load(tmp_path / "nope.json")
