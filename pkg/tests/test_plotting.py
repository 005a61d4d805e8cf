from __future__ import annotations

from esop_oracle.plotting import plot_comparison, plot_phi_family
from esop_oracle.resources import compare
from esop_oracle.transform import phi_family


def _rows(ms):
    return [compare(f"m{m}", phi_family(m).cnf, phi_family(m).ecnf) for m in ms]


def test_comparison_png(tmp_path):
    path = plot_comparison(_rows([2, 3]), tmp_path / "sub" / "cmp.png")
    assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_phi_family_png_deterministic(tmp_path):
    rows = _rows([2, 3, 4])
    a = plot_phi_family([2, 3, 4], rows, tmp_path / "a.png")
    b = plot_phi_family([2, 3, 4], rows, tmp_path / "b.png")
    assert a.read_bytes() == b.read_bytes()
