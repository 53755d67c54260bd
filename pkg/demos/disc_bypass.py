"""Single disc bypass: mode switches, regulated distance and an SVG plot."""

import sys
from pathlib import Path

from slidenav import scenario
from slidenav.export import svg_text
from slidenav.sim import mode_intervals, run

root = Path(__file__).resolve().parents[1]
spec = scenario.load(root / "scenarios" / "disc_passing.json")

tr = run(spec)
print(f"outcome {tr.outcome.kind.value} at t={tr.outcome.t:.2f}, min distance {tr.min_distance:.3f}")
for a, b in mode_intervals(tr, "B"):
    ds = [s.d for s in tr.samples[a:b]]
    print(f"mode B from t={tr.samples[a].t:.2f} to t={tr.samples[b - 1].t:.2f}, "
          f"d in [{min(ds):.3f}, {max(ds):.3f}] (d_tar={spec.params.d_tar})")

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("disc_bypass.svg")
out.write_text(svg_text(spec.scene, tr, spec.params, title="disc bypass"))
print(f"plot written to {out}")
