"""Parameter-plane maps: classification, nested superadditivity regions, and the w_n = 0 curves."""

# %%
import pathlib
import sys

import numpy as np

from pdlcap import region, svg

out_dir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out_dir.mkdir(exist_ok=True)

# %% A 41x41 grid with n = 2, 3, 10.  Cell centers avoid p = 0 and 1; with an odd
# resolution the middle cell sits exactly on p = 1/2, hence the single "Both" cell.
grid = region.scan(41, [2, 3, 10], threads=region.default_threads())
kinds, counts = np.unique(grid.classification.astype(str), return_counts=True)
print(dict(zip(kinds, counts.tolist())))
for n in grid.n_list:
    print(f"superadditive cells at n = {n}: {int(grid.superadditive[n].sum())}")

(out_dir / "region.csv").write_text(region.grid_to_csv(grid))
(out_dir / "region.svg").write_text(svg.region_svg(grid))

# %% Zero curves of w_n creep toward the square 0 < p_min < 1/2 < p_maj < 1, slowly.
curves = []
for row in region.convergence_report([2, 3, 10, 100, 1000, 10**4], ray_count=30):
    tag = " (baseline)" if row.baseline else ""
    print(f"n = {row.n:>5}: farthest boundary point is {row.max_distance:.4f} from the limit{tag}")
    curves.append(region.boundary(row.n, ray_count=30))
(out_dir / "boundaries.svg").write_text(svg.boundary_svg(curves))
print("wrote", sorted(p.name for p in out_dir.iterdir()))
