"""Self-similarity of the golden slice around the conjugate z*.

Windows center + eps*u/kappa^l are classified at depth base + 3l; the script
prints the Hausdorff distances between consecutive rescaled windows for a few
window sizes and base depths.
"""
import argparse

from teapot.gifs import PathSpec, hausdorff_selfsim_check, magnification, selfsim_center, selfsim_windows
from teapot.markov import build_graphs
from teapot.tent import realize_lambda


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--eps", default="0.05,0.1,0.2")
    ap.add_argument("--base-depths", default="9,12,15")
    ap.add_argument("--levels", type=int, default=3)
    ap.add_argument("--resolution", type=int, default=200)
    args = ap.parse_args()
    G = build_graphs(realize_lambda("101"))[2]
    ps = PathSpec(G, (), (1, 2, 3))
    c = selfsim_center(ps, 1, 40)
    kappa = magnification(ps, c.z)
    print(f"center {c.z} simple={c.simple} unique_to_depth={c.unique_to_depth} kappa={kappa}")
    for eps in (float(e) for e in args.eps.split(",")):
        for base in (int(b) for b in args.base_depths.split(",")):
            clouds = selfsim_windows(ps, c.z, kappa, eps, args.levels,
                                     resolution=args.resolution, base_depth=base)
            d = hausdorff_selfsim_check(clouds, c.z, kappa, eps, args.levels)
            trend = "decreasing" if all(a > b for a, b in zip(d, d[1:])) else "not decreasing"
            print(f"eps={eps:<5} base={base:<3} sizes={[len(x) for x in clouds]} "
                  f"hausdorff={[round(x, 5) for x in d]} {trend}")


if __name__ == "__main__":
    main()
