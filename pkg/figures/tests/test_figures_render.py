import json

import numpy as np
import pytest

from cosmoburgers_figures import FigureSpec, load_spec, render, render_suite
from cosmoburgers_figures.cli import main


def write_snapshot_1d(path, values, tau=2.0, regime="expanding", J=None, L=np.pi):
    J = J or len(values)
    rows = [
        f"{(j + 0.5) * L / J:.17g},{v:.17g},{tau ** 2 * v:.17g}"
        for j, v in enumerate(values)
    ]
    path.write_text(
        f"# tau = {tau:.17g}\n# kappa = 2\n# regime = {regime}\n"
        f"# grid = 1d J={J} L={L:.17g}\n# scheme = s\n"
        "y,v,w\n" + "\n".join(rows) + "\n"
    )
    return str(path)


def write_snapshot_2d(path, values, tau=1.0, regime="expanding", L=1.0):
    Jx, Jy = values.shape
    rows = []
    for j in range(Jx):
        for k in range(Jy):
            x = (j + 0.5) * L / Jx
            y = (k + 0.5) * L / Jy
            rows.append(f"{x:.17g},{y:.17g},{values[j,k]:.17g},{values[j,k]:.17g}")
    path.write_text(
        f"# tau = {tau:.17g}\n# kappa = 2\n# regime = {regime}\n"
        f"# grid = 2d Jx={Jx} Jy={Jy} Lx={L:.17g} Ly={L:.17g}\n# scheme = s\n"
        "x,y,v,w\n" + "\n".join(rows) + "\n"
    )
    return str(path)


class TestRenderKinds:
    def test_line1d_zero_field(self, tmp_path):
        csv = write_snapshot_1d(tmp_path / "z.csv", np.zeros(32))
        out = render(FigureSpec("line1d", (csv,), str(tmp_path / "z.png")))
        assert out.exists() and out.stat().st_size > 0

    def test_overlay1d_multiple_grids(self, tmp_path):
        inputs = []
        for J in (32, 64, 128):
            y = (np.arange(J) + 0.5) * np.pi / J
            inputs.append(write_snapshot_1d(tmp_path / f"g{J}.csv", np.sin(y), J=J))
        out = render(FigureSpec("overlay1d", tuple(inputs), str(tmp_path / "o.png"),
                                field="v"))
        assert out.exists()

    def test_contour2d(self, tmp_path):
        v = np.sin(np.linspace(0, 3, 16))[:, None] * np.cos(np.linspace(0, 2, 16))[None, :]
        csv = write_snapshot_2d(tmp_path / "c.csv", v)
        out = render(FigureSpec("contour2d", (csv,), str(tmp_path / "c.png")))
        assert out.exists()

    def test_surface3d(self, tmp_path):
        v = np.outer(np.sin(np.linspace(0, 3, 12)), np.cos(np.linspace(0, 2, 12)))
        csv = write_snapshot_2d(tmp_path / "s.csv", v)
        out = render(FigureSpec("surface3d", (csv,), str(tmp_path / "s.png")))
        assert out.exists()

    def test_convergence(self, tmp_path):
        table = tmp_path / "convergence.csv"
        table.write_text(
            "J,tau,l1_vs_reference,l2_vs_reference\n"
            "50,1,0.1,0.2\n100,1,0.05,0.1\n200,1,0.02,0.04\n"
        )
        out = render(FigureSpec("convergence", (str(table),), str(tmp_path / "cv.png")))
        assert out.exists()

    def test_decay_loglog(self, tmp_path):
        manifest = tmp_path / "manifest.json"
        manifest.write_text(json.dumps({
            "config": {"dimension": 1, "regime": "expanding"},
            "snapshots": [
                {"tau": t, "file": "x", "diagnostics": {"max_abs_v": 0.8 * t ** -2}}
                for t in (1.0, 4.0, 16.0, 64.0)
            ],
        }))
        out = render(FigureSpec("decay_loglog", (str(manifest),), str(tmp_path / "d.png")))
        assert out.exists()

    def test_unknown_kind_rejected(self, tmp_path):
        with pytest.raises(ValueError, match="unknown figure kind"):
            FigureSpec("sparkline", ("x.csv",), "o.png")

    def test_contracting_nan_cells_render(self, tmp_path):
        values = np.full(32, 0.999)
        path = tmp_path / "con.csv"
        rows = []
        for j, v in enumerate(values):
            w = "nan" if j in (3, 17) else f"{v:.17g}"
            rows.append(f"{(j + 0.5) * np.pi / 32:.17g},{v:.17g},{w}")
        path.write_text(
            "# tau = -0.01\n# kappa = 2\n# regime = contracting\n"
            f"# grid = 1d J=32 L={np.pi:.17g}\n# scheme = s\n"
            "y,v,w\n" + "\n".join(rows) + "\n"
        )
        out = render(FigureSpec("line1d", (str(path),), str(tmp_path / "con.png")))
        assert out.exists()


class TestDeterminism:
    def test_rerender_identical_bytes(self, tmp_path):
        y = (np.arange(64) + 0.5) * np.pi / 64
        csv = write_snapshot_1d(tmp_path / "in.csv", np.sin(2 * y))
        spec = FigureSpec("line1d", (csv,), str(tmp_path / "out.png"))
        first = render(spec).read_bytes()
        second = render(spec).read_bytes()
        assert first == second

    def test_inputs_not_mutated(self, tmp_path):
        csv = write_snapshot_1d(tmp_path / "in.csv", np.linspace(-0.5, 0.5, 16))
        before = (tmp_path / "in.csv").read_bytes()
        render(FigureSpec("line1d", (csv,), str(tmp_path / "out.png")))
        assert (tmp_path / "in.csv").read_bytes() == before


class TestSuite:
    def _fake_run_dir(self, tmp_path, n_snapshots=3):
        run = tmp_path / "run"
        run.mkdir()
        entries = []
        for i in range(n_snapshots):
            tau = float(2 ** i)
            name = f"snapshot_{i:03d}.csv"
            y = (np.arange(32) + 0.5) * np.pi / 32
            write_snapshot_1d(run / name, 0.5 * np.sin(2 * y) / tau ** 2, tau=tau)
            entries.append({"tau": tau, "file": name,
                            "diagnostics": {"max_abs_v": 0.5 / tau ** 2}})
        (run / "manifest.json").write_text(json.dumps({
            "config": {"dimension": 1, "regime": "expanding"},
            "snapshots": entries,
        }))
        return run

    def test_suite_outputs_and_index(self, tmp_path):
        run = self._fake_run_dir(tmp_path)
        outputs = render_suite(run)
        names = sorted(p.name for p in outputs)
        assert "index.json" in names
        assert sum(n.startswith("snapshot_") for n in names) == 3
        assert "decay_loglog.png" in names
        index = json.loads((run / "figures" / "index.json").read_text())
        assert len(index["images"]) == 4

    def test_suite_renders_2d_contours(self, tmp_path):
        run = tmp_path / "run2d"
        run.mkdir()
        v = np.outer(np.sin(np.linspace(0, 3, 12)), np.cos(np.linspace(0, 2, 12)))
        write_snapshot_2d(run / "snapshot_000.csv", v)
        (run / "manifest.json").write_text(json.dumps({
            "config": {"dimension": 2, "regime": "expanding"},
            "snapshots": [{"tau": 1.0, "file": "snapshot_000.csv",
                           "diagnostics": {"max_abs_v": float(np.max(np.abs(v)))}}],
        }))
        outputs = render_suite(run)
        assert any(p.name == "snapshot_000.png" for p in outputs)

    def test_empty_snapshot_list_gives_index_only(self, tmp_path):
        run = tmp_path / "run"
        run.mkdir()
        (run / "manifest.json").write_text(json.dumps({
            "config": {"dimension": 1, "regime": "flat"}, "snapshots": [],
        }))
        outputs = render_suite(run)
        assert [p.name for p in outputs] == ["index.json"]

    def test_missing_manifest_aborts(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            render_suite(tmp_path)


class TestCli:
    def test_render_subcommand(self, tmp_path):
        csv = write_snapshot_1d(tmp_path / "in.csv", np.zeros(16))
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps({
            "kind": "line1d", "inputs": [csv], "output": str(tmp_path / "out.png"),
        }))
        assert main(["render", "--spec", str(spec)]) == 0
        assert (tmp_path / "out.png").exists()
        loaded = load_spec(spec)
        assert loaded.kind == "line1d"

    def test_suite_subcommand_missing_dir(self, tmp_path):
        assert main(["suite", "--dir", str(tmp_path / "nope")]) == 2

    def test_render_malformed_csv_diagnostic(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("# tau = 1\nnot,a,snapshot\n")
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps({
            "kind": "line1d", "inputs": [str(bad)], "output": str(tmp_path / "o.png"),
        }))
        assert main(["render", "--spec", str(spec)]) == 2
        assert "figures error" in capsys.readouterr().err
