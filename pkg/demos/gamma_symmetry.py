"""Bypass side follows the nearer obstacle edge; mirroring the scene flips it."""

from slidenav.geo import Disc, Scene, mirror_scene
from slidenav.sensing import Pose, SensorConfig
from slidenav.sim import ScenarioSpec, SimConfig, path_length, run
from slidenav.sliding_ctrl import SlidingParams

params = SlidingParams(v=1, u_max=1, d_safe=0.5, d_tar=2.8, d_trig=3.3, epsilon=0.2, l=0.8, k=0.5)
sensor = SensorConfig(range_L=8.0)
sim = SimConfig(dt_physics=0.01, ctrl_hz=50.0)
start = Pose((0.0, 0.0), 0.0)

for yc in (1.0, 0.3, -0.3, -1.0):
    sc = Scene((Disc((15.0, yc), 2.0),), (30.0, 0.0))
    tr = run(ScenarioSpec(sc, start, params, sensor, sim, theorem_mode=True))
    gamma = next(s.gamma for s in tr.samples if s.mode == "B")
    side = "below" if gamma == 1 else "above"
    print(f"disc centre y={yc:+.1f}: gamma={gamma:+d}, passes {side}, length {path_length(tr):.3f}")

sc = Scene((Disc((15.0, 1.0), 2.0),), (30.0, 0.0))
a = run(ScenarioSpec(sc, start, params, sensor, sim))
b = run(ScenarioSpec(mirror_scene(sc, (0, 0), (1, 0)), start, params, sensor, sim))
print(f"mirrored pair: lengths {path_length(a):.6f} and {path_length(b):.6f}")
