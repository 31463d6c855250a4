"""Write the Master Teapot point cloud up to a period and check the golden slice against it."""
import argparse
import time

from teapot.gifs import certify_exclusion
from teapot.markov import build_graphs
from teapot.oracle import cross_check_slice, enumerate_words, teapot_cloud, write_cloud_csv
from teapot.tent import realize_lambda


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-period", type=int, default=10)
    ap.add_argument("--out", default="teapot.csv")
    ap.add_argument("--delta", type=float, default=0.02)
    args = ap.parse_args()
    t = time.perf_counter()
    words = enumerate_words(args.max_period)
    cloud = teapot_cloud(args.max_period, words)
    with open(args.out, "w") as fh:
        fh.write(write_cloud_csv(cloud))
    print(f"{len(words)} words, {len(cloud)} points -> {args.out} ({time.perf_counter() - t:.1f}s)")
    p = realize_lambda("101")
    G = build_graphs(p)[2]
    rep = cross_check_slice(cloud, p, args.delta, lambda z: certify_exclusion(z, 1, 32, G))
    print(f"hard: {sum(r.ok for r in rep.hard)}/{len(rep.hard)} non-Out")
    for r in rep.diagnostic:
        print(f"  nearby word {r.point.word} lambda={r.point.lambda_value:.6f} z={r.point.z:.6f} -> {r.verdict}")


if __name__ == "__main__":
    main()
