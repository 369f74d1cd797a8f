"""Reduced-size runtime sweep for the convolutional code.

At high SNR the best-first decoder touches a single subtrellis and its cost
settles at 22008 updates per frame (12288 for the global pass plus one fully
opened subtrellis); the wrap baseline stays flat at 22528.  More noise makes
the passes hedge across more subtrellises.  Increase FRAMES for smoother
averages.
"""

from tbmap.simulate import ExperimentConfig, run_experiment

FRAMES = 300
GRID = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0]

maa = run_experiment(
    ExperimentConfig("conv", "maa", GRID, frames=FRAMES, master_seed=1)
)
ah = run_experiment(
    ExperimentConfig("conv", "ah", GRID, frames=FRAMES, master_seed=1, wrap=40)
)

print(f"{FRAMES} frames per point")
print("Eb/N0   maa updates   ah updates   subtrellises examined")
for m, a in zip(maa, ah):
    print(
        f"{m.ebn0_db:4.1f} {m.avg_updates:12.0f} {a.avg_updates:12.0f}"
        f" {m.avg_subtrellises:12.2f}"
    )
