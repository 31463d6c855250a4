"""Render the golden-mean slice over [-1,1]^2 at two depths and report the area change."""
import argparse
import time
from pathlib import Path

from teapot import _kernel
from teapot.render import RenderSpec, render_slice, write_csv, write_ppm, write_sidecar
from teapot.tent import realize_lambda


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--resolution", type=int, default=512)
    ap.add_argument("--depths", default="32,36")
    ap.add_argument("--outdir", default="out")
    ap.add_argument("--csv", action="store_true")
    ap.add_argument("--threads", default="auto")
    args = ap.parse_args()
    _kernel.set_threads(args.threads)
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    p = realize_lambda("101")
    fractions = []
    for d in (int(x) for x in args.depths.split(",")):
        t = time.perf_counter()
        spec = RenderSpec(resolution=(args.resolution, args.resolution), depth=d, overlay_witnesses=True)
        img = render_slice(p, spec)
        stem = out / f"golden_{args.resolution}_d{d}"
        stem.with_suffix(".ppm").write_bytes(write_ppm(img))
        stem.with_suffix(".json").write_text(write_sidecar(img))
        if args.csv:
            stem.with_suffix(".csv").write_text(write_csv(img))
        frac = img.non_out_fraction()
        fractions.append(frac)
        print(f"depth {d}: non-Out fraction {frac:.5f} witnesses {len(img.witnesses)} "
              f"({time.perf_counter() - t:.1f}s) -> {stem}.ppm")
    for a, b in zip(fractions, fractions[1:]):
        print(f"relative change {abs(a - b) / a:.3%}")


if __name__ == "__main__":
    main()
