"""Figure-suite acceptance: render the asymptotic-structure runs end to end.

The run outputs are produced through the solver CLI (the only interface this
package consumes), at desk scale so the whole check stays fast.
"""

import hashlib
import json
import shutil
import subprocess

import pytest

from cosmoburgers_figures import render_suite

# The asymptotic-structure runs themselves: expanding J=1024 to tau=256 and
# contracting J=2000 to tau=-1e-4, as in the solver acceptance suite.
EXPANDING_CFG = (
    "dimension = 1\nregime = expanding\nkappa = 2\nic = sine1d_a\nJ = 1024\n"
    "checkpoints = 16, 64, 128\ntau_end = 256\n"
)
CONTRACTING_CFG = (
    "dimension = 1\nregime = contracting\nkappa = 2\nic = sine1d_a\nJ = 2000\n"
    "checkpoints = -0.5, -0.1024, -0.0128, -0.0016\ntau_end = -0.0001\n"
)


def run_solver(args):
    proc = subprocess.run(["cosmoburgers", *args], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="module")
def run_dirs(tmp_path_factory):
    if shutil.which("cosmoburgers") is None:
        pytest.skip("solver CLI not installed")
    base = tmp_path_factory.mktemp("suite")
    dirs = {}
    for name, cfg in (("expanding", EXPANDING_CFG), ("contracting", CONTRACTING_CFG)):
        cfg_path = base / f"{name}.cfg"
        cfg_path.write_text(cfg)
        out = base / name
        run_solver(["run", "--config", str(cfg_path), "--out", str(out)])
        dirs[name] = out
    # a convergence table alongside the expanding run, for the summary figure
    conv = base / "conv"
    run_solver(["converge", "--config", str(base / "expanding.cfg"),
                "--grids", "256,512,1024", "--out", str(conv)])
    shutil.copy(conv / "convergence.csv", dirs["expanding"] / "convergence.csv")
    return dirs


def hash_dir(path):
    return {
        p.name: hashlib.sha256(p.read_bytes()).hexdigest()
        for p in sorted(path.iterdir())
    }


def test_suite_renders_every_checkpoint_plus_summaries(run_dirs):
    for name, run_dir in run_dirs.items():
        outputs = render_suite(run_dir)
        manifest = json.loads((run_dir / "manifest.json").read_text())
        snapshot_images = [p for p in outputs if p.name.startswith("snapshot_")]
        assert len(snapshot_images) == len(manifest["snapshots"])
        names = {p.name for p in outputs}
        if name == "expanding":
            assert "decay_loglog.png" in names
            assert "convergence.png" in names
        assert "index.json" in names
        for p in outputs:
            assert p.stat().st_size > 0
    print("\nACCEPTANCE PASS: figure suite -- one image per checkpoint plus summaries")


def test_suite_byte_stable_across_invocations(run_dirs):
    run_dir = run_dirs["expanding"]
    render_suite(run_dir)
    first = hash_dir(run_dir / "figures")
    render_suite(run_dir)
    second = hash_dir(run_dir / "figures")
    assert first == second
    print("\nACCEPTANCE PASS: figure suite byte-stable across two invocations")
