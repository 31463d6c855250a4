"""Command-line entry point: ``teapot <subcommand> ...``.

Exit codes: 0 success, 2 invalid or unrealizable word, 3 precondition
violation, 4 I/O error.
"""
from __future__ import annotations

import argparse
import sys
from itertools import product
from pathlib import Path

from . import _kernel
from .errors import PreconditionError, WordError
from .gifs import (
    PathSpec,
    certify_exclusion,
    hausdorff_selfsim_check,
    limit_value,
    magnification,
    parse_edge_list,
    selfsim_center,
    selfsim_windows,
    witness_roots,
)
from .markov import build_graphs, export, path_vertex_words
from .oracle import enumerate_words, teapot_cloud, write_cloud_csv
from .render import ConfigError, Settings, read_config, render_slice, spec_from_settings, write_csv, write_ppm, write_sidecar
from .tent import TentParameter, realize_lambda, suitability_check
from .words import BinaryWord

EXIT_WORD, EXIT_PRECONDITION, EXIT_IO = 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


def _param(word: str) -> TentParameter:
    try:
        w = BinaryWord.parse(word)
    except WordError as exc:
        raise CliError(EXIT_WORD, str(exc)) from exc
    if not len(w):
        raise CliError(EXIT_WORD, "empty word")
    p = realize_lambda(w)
    if p is None:
        raise CliError(EXIT_WORD, f"{word} is not the kneading sequence of a tent map with slope in (sqrt2, 2)")
    return p


def _complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected re,im, got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def _resolution(text: str) -> tuple[int, int]:
    w, _, h = text.lower().partition("x")
    return int(w), int(h or w)


def _region(text: str) -> tuple[float, float, float, float]:
    vals = tuple(float(t) for t in text.split(","))
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("region needs re_lo,im_lo,re_hi,im_hi")
    return vals


def _settings(args) -> Settings:
    return read_config(args.config) if args.config else Settings()


def _write(path: str, data) -> None:
    mode = "wb" if isinstance(data, bytes) else "w"
    with open(path, mode) as fh:
        fh.write(data)


def _pathspec(args):
    p = _param(args.word)
    g = build_graphs(p)[2]
    ps = PathSpec(g, parse_edge_list(args.gamma0), parse_edge_list(args.gamma1))
    return p, g, ps


def _fmt(z: complex) -> str:
    return f"{z.real:.15g}{z.imag:+.15g}i"


# ---------------------------------------------------------------------------


def cmd_graph_build(args, out) -> None:
    p = _param(args.word)
    mp, gamma, g = build_graphs(p)
    if args.json:
        out.write(export(g, "json"))
        return
    if args.dot:
        out.write(export(g, "dot"))
        return
    out.write(f"lambda: root of {p.field.modulus.monic()} ~ {p.lam.to_decimal(20)}\n")
    out.write(f"kneading: {p.kneading}\n")
    out.write("breakpoints: " + ", ".join(str(x.poly) for x in mp.breakpoints) + "\n")
    for graph, name in ((gamma, "Gamma"), (g, "G")):
        out.write(f"{name} (base v{graph.base}):\n")
        for i, e in enumerate(graph.edges, 1):
            out.write(f"  e{i}: v{e.src} -> v{e.dst} [{e.label}]\n")


def cmd_render(args, out) -> None:
    st = _settings(args)
    p = _param(args.word)
    _kernel.set_threads(args.threads or st.threads)
    spec = spec_from_settings(
        st,
        region=args.region,
        resolution=args.resolution,
        depth=args.depth if args.depth is not None else st.depth,
        C=args.C,
        overlay_witnesses=args.overlay_witnesses,
        rigorous=args.rigorous,
    )
    img = render_slice(p, spec)
    _write(args.out, write_ppm(img))
    _write(str(Path(args.out).with_suffix(".json")), write_sidecar(img))
    if args.csv:
        _write(args.csv, write_csv(img))
    out.write(f"non-Out fraction of the unit disc: {img.non_out_fraction():.6f}\n")


def cmd_certify(args, out) -> None:
    st = _settings(args)
    p = _param(args.word)
    g = build_graphs(p)[2]
    r = certify_exclusion(args.z, args.C, args.depth if args.depth is not None else st.depth, g,
                          slack=st.slack, rigorous=args.rigorous, precision_bits=st.precision_bits)
    out.write(f"{r.verdict} depth={r.depth} ")
    if r.verdict == "Out":
        out.write(f"margin={r.margin!r}\n")
    else:
        out.write(f"residual={r.residual!r}{' (budget exhausted)' if r.budget_exhausted else ''}\n")


def cmd_witness(args, out) -> None:
    _, _, ps = _pathspec(args)
    roots = witness_roots(ps, args.C)
    for w in roots:
        out.write(f"{_fmt(w.z)} residual={w.residual:.3e} multiplicity={w.multiplicity}\n")
    if not roots:
        out.write("no roots in the open unit disc\n")


def cmd_oracle(args, out) -> None:
    ws = enumerate_words(args.max_period, workers=args.workers)
    cloud = teapot_cloud(args.max_period, ws)
    _write(args.out, write_cloud_csv(cloud))
    out.write(f"{len(ws)} words, {len(cloud)} points\n")


def cmd_selfsim(args, out) -> None:
    _, _, ps = _pathspec(args)
    c = selfsim_center(ps, args.C, args.uniqueness_depth)
    kappa = magnification(ps, c.z)
    out.write(f"center {_fmt(c.z)} simple={c.simple} unique_to_depth={c.unique_to_depth}\n")
    out.write(f"f_gamma(center) = {_fmt(limit_value(ps, c.z))}\n")
    out.write(f"kappa {_fmt(kappa)}\n")
    clouds = selfsim_windows(ps, c.z, kappa, args.eps, args.levels, C=args.C,
                             resolution=args.resolution, base_depth=args.base_depth)
    dists = hausdorff_selfsim_check(clouds, c.z, kappa, args.eps, args.levels)
    out.write("hausdorff " + " ".join(f"{d:.6g}" for d in dists) + "\n")


def cmd_suitability(args, out) -> None:
    st = _settings(args)
    p = _param(args.word)
    g = build_graphs(p)[2]
    for n in range(1, args.n + 1):
        acc = {BinaryWord(t) for t in product((0, 1), repeat=n)
               if suitability_check(t, n, p, args.mode, offsets=st.lambda_prime_offsets).accepted}
        paths = path_vertex_words(g, n)
        out.write(f"n={n} accepted={len(acc)} paths={len(paths)} symmetric_difference={len(acc ^ paths)}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="teapot", description=__doc__.splitlines()[0])
    ap.add_argument("--config", help="key = value settings file")
    sub = ap.add_subparsers(dest="command", required=True)

    graph = sub.add_parser("graph", help="Markov partition and GIFS graph")
    gsub = graph.add_subparsers(dest="graph_command", required=True)
    gb = gsub.add_parser("build")
    gb.add_argument("--word", required=True)
    fmt = gb.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true")
    gb.set_defaults(func=cmd_graph_build)

    r = sub.add_parser("render", help="render a slice as PPM (+ CSV)")
    r.add_argument("--word", required=True)
    r.add_argument("--resolution", type=_resolution, default=(512, 512))
    r.add_argument("--region", type=_region, default=(-1.0, -1.0, 1.0, 1.0))
    r.add_argument("--depth", type=int)
    r.add_argument("--out", required=True)
    r.add_argument("--csv")
    r.add_argument("--overlay-witnesses", action="store_true")
    r.add_argument("--rigorous", action="store_true")
    r.add_argument("--C", type=_complex, default=1 + 0j)
    r.add_argument("--threads")
    r.set_defaults(func=cmd_render)

    c = sub.add_parser("certify", help="try to certify z outside the slice")
    c.add_argument("--word", required=True)
    c.add_argument("--z", type=_complex, required=True)
    c.add_argument("--depth", type=int)
    c.add_argument("--rigorous", action="store_true")
    c.add_argument("--C", type=_complex, default=1 + 0j)
    c.set_defaults(func=cmd_certify)

    for name, fn in (("witness", cmd_witness), ("selfsim", cmd_selfsim)):
        s = sub.add_parser(name)
        s.add_argument("--word", required=True)
        s.add_argument("--gamma0", default="")
        s.add_argument("--gamma1", required=True)
        s.add_argument("--C", type=_complex, default=1 + 0j)
        s.set_defaults(func=fn)
        if name == "selfsim":
            s.add_argument("--eps", type=float, default=0.05)
            s.add_argument("--levels", type=int, default=3)
            s.add_argument("--resolution", type=int, default=200)
            s.add_argument("--base-depth", type=int, default=12)
            s.add_argument("--uniqueness-depth", type=int, default=30)

    o = sub.add_parser("oracle", help="Master Teapot point cloud")
    o.add_argument("--max-period", type=int, required=True)
    o.add_argument("--out", required=True)
    o.add_argument("--workers", type=int, default=1)
    o.set_defaults(func=cmd_oracle)

    su = sub.add_parser("suitability", help="compare suitable words with path words")
    su.add_argument("--word", required=True)
    su.add_argument("--n", type=int, default=8)
    su.add_argument("--mode", choices=("exact", "sampled"), default="exact")
    su.set_defaults(func=cmd_suitability)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except WordError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_WORD
    except (PreconditionError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
