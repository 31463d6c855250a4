"""Compare suitable words with path words of G for every realized kneading word.

For each primitive word of period 3..8 that realizes a slope in (sqrt2, 2),
print the symmetric differences at horizons n = 1..N between
  * path vertex words and words accepted under the default (vertex) reading,
  * exact and sampled upper-limit targets,
  * path edge words and words accepted with the anchor dropped.
"""
import argparse
import time
from itertools import product

from teapot.markov import build_graphs, path_edge_words, path_vertex_words
from teapot.tent import realize_lambda, suitability_check
from teapot.words import BinaryWord, EventuallyPeriodicWord


def accepted(p, n, **kw):
    return {BinaryWord(t) for t in product((0, 1), repeat=n) if suitability_check(t, n, p, **kw).accepted}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-period", type=int, default=8)
    ap.add_argument("--horizon", type=int, default=10)
    args = ap.parse_args()
    t = time.perf_counter()
    for period in range(3, args.max_period + 1):
        for tail in product((0, 1), repeat=period - 1):
            w = (1,) + tail
            if len(EventuallyPeriodicWord.periodic(w).period) != period:
                continue
            p = realize_lambda(w)
            if p is None:
                continue
            mp, _, G = build_graphs(p)
            rows = []
            for n in range(1, args.horizon + 1):
                S = accepted(p, n)
                rows.append((
                    len(path_vertex_words(G, n) ^ S),
                    len(S ^ accepted(p, n, mode="sampled")),
                    len(path_edge_words(G, n) ^ accepted(p, n, indexing="edge")),
                    len(path_vertex_words(G, n) - S),
                ))
            bad = [(n + 1, r) for n, r in enumerate(rows) if any(r)]
            name = "".join(map(str, w))
            status = "OK" if not bad else f"mismatch {bad[:3]}"
            print(f"{name:>10} lambda={float(p):.6f} blocks={len(mp)} {status}")
    print(f"elapsed {time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    main()
