"""Regenerate the curve files in demos/data."""
from pathlib import Path

from rp3link import samples
from rp3link.curves import random_curve, write_curves

out = Path(__file__).parent / "data"
out.mkdir(exist_ok=True)
write_curves(out / "lines.plc", samples.lines(8), comment="two projective lines")
write_curves(out / "split.plc", samples.split_affine(), comment="split affine circles")
write_curves(out / "hopf.plc", samples.hopf_affine(), comment="affine Hopf link")
write_curves(out / "knots.plc",
             [samples.affine_unknot(), samples.torus_knot(2, 3, 48),
              random_curve(7, 32, 0, scale=4.0, name="R")],
             comment="null-homologous knots")
