"""Markov partition of a PCF tent map, its transition graph and the reversed GIFS graph.

Vertex ids follow the left endpoints of the blocks (0 is the leftmost block);
the base vertex is the block containing the critical value 1, i.e. the
rightmost one.  Edges are numbered from 1, sorted by source then target,
rightmost blocks first, so for the golden mean the reversed graph lists the
self-loop at the base first.
"""
from __future__ import annotations

import functools
import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exact_arith import AlgebraicNumber, FieldElement, RationalPoly
from .tent import TentParameter, _branch
from .words import BinaryWord, WordView, symbols

LABELS = ("L", "R")


@dataclass(frozen=True)
class MarkovPartition:
    breakpoints: tuple[FieldElement, ...]
    sides: tuple[str, ...]

    @property
    def blocks(self) -> list[tuple[FieldElement, FieldElement]]:
        b = self.breakpoints
        return list(zip(b[:-1], b[1:]))

    def __len__(self) -> int:
        return len(self.sides)


@dataclass(frozen=True)
class Vertex:
    id: int
    lo: Optional[FieldElement]
    hi: Optional[FieldElement]
    side: str


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    label: str


@dataclass(frozen=True)
class GifsGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    base: int
    direction: str  # "Gamma" or "G"
    param: Optional[TentParameter] = None

    def __post_init__(self):
        if self.direction not in ("Gamma", "G"):
            raise ValueError("direction must be 'Gamma' or 'G'")
        ordered = tuple(sorted(self.edges, key=lambda e: (-e.src, -e.dst, e.label)))
        object.__setattr__(self, "edges", ordered)

    def side(self, v: int) -> str:
        return self.vertices[v].side

    def out_edges(self, v: int) -> list[tuple[int, Edge]]:
        """(1-based edge index, edge) pairs leaving ``v``."""
        return [(i, e) for i, e in enumerate(self.edges, 1) if e.src == v]

    def edge(self, index: int) -> Edge:
        if not 1 <= index <= len(self.edges):
            raise IndexError(f"no edge e{index}")
        return self.edges[index - 1]

    def edge_set(self) -> set[tuple[int, int, str]]:
        return {(e.src, e.dst, e.label) for e in self.edges}

    def check_invariants(self) -> None:
        for v in self.vertices:
            if not any(e.src == v.id for e in self.edges) or not any(e.dst == v.id for e in self.edges):
                raise AssertionError(f"vertex {v.id} lacks an incoming or outgoing edge")
        for e in self.edges:
            owner = e.dst if self.direction == "G" else e.src
            if e.label != self.side(owner):
                raise AssertionError(f"edge {e} has the wrong label for a {self.direction} graph")


def _cmp(a: FieldElement, b: FieldElement) -> int:
    return (a - b).sign()


def build_partition(p: TentParameter) -> MarkovPartition:
    K = p.field
    c = p.critical_point
    pts: list[FieldElement] = []
    for x in (K(0), c, *p.critical_orbit, K(1)):
        if not any((x - y).is_zero() for y in pts):
            pts.append(x)
    pts.sort(key=functools.cmp_to_key(_cmp))
    sides = []
    for lo, hi in zip(pts[:-1], pts[1:]):
        sides.append("L" if _cmp(hi, c) <= 0 else "R")
    return MarkovPartition(tuple(pts), tuple(sides))


def _image(p: TentParameter, lo: FieldElement, hi: FieldElement, side: str):
    a = _branch(p.slope, lo, 0 if side == "L" else 1)
    b = _branch(p.slope, hi, 0 if side == "L" else 1)
    return (a, b) if side == "L" else (b, a)


def build_transition_graph(mp: MarkovPartition, p: TentParameter) -> GifsGraph:
    """Edge a -> b iff f(I_a) contains I_b; each edge is labelled by the side of its source."""
    blocks = mp.blocks
    verts = tuple(Vertex(i, lo, hi, mp.sides[i]) for i, (lo, hi) in enumerate(blocks))
    edges = []
    for a, (lo, hi) in enumerate(blocks):
        ilo, ihi = _image(p, lo, hi, mp.sides[a])
        for b, (blo, bhi) in enumerate(blocks):
            if _cmp(ilo, blo) <= 0 and _cmp(bhi, ihi) <= 0:
                edges.append(Edge(a, b, mp.sides[a]))
    base = next(i for i, (lo, hi) in enumerate(blocks) if _cmp(hi, p.field(1)) == 0)
    g = GifsGraph(verts, tuple(edges), base, "Gamma", p)
    g.check_invariants()
    return g


def build_gifs(gamma: GifsGraph) -> GifsGraph:
    """Reverse every edge, keeping labels and base vertex (an involution)."""
    flipped = tuple(Edge(e.dst, e.src, e.label) for e in gamma.edges)
    direction = "G" if gamma.direction == "Gamma" else "Gamma"
    g = GifsGraph(gamma.vertices, flipped, gamma.base, direction, gamma.param)
    g.check_invariants()
    return g


def build_graphs(p: TentParameter) -> tuple[MarkovPartition, GifsGraph, GifsGraph]:
    mp = build_partition(p)
    gamma = build_transition_graph(mp, p)
    return mp, gamma, build_gifs(gamma)


# ---------------------------------------------------------------------------
# words read off paths


def _require_g(g: GifsGraph) -> None:
    if g.direction != "G":
        raise ValueError("expected the reversed (G) graph")


def _label_bit(label: str) -> int:
    return 0 if label == "L" else 1


def path_edge_words(g: GifsGraph, n: int) -> set[BinaryWord]:
    """Distinct label words (L=0, R=1) of length-n paths from the base vertex."""
    _require_g(g)
    frontier = {((), g.base)}
    for _ in range(n):
        frontier = {
            (w + (_label_bit(e.label),), e.dst)
            for w, v in frontier
            for _, e in g.out_edges(v)
        }
    return {BinaryWord(w) for w, _ in frontier}


def path_vertex_words(g: GifsGraph, n: int) -> set[BinaryWord]:
    """Words of block sides along length-n vertex sequences starting at the base."""
    _require_g(g)
    if n == 0:
        return {BinaryWord()}
    head = (_label_bit(g.side(g.base)),)
    return {BinaryWord(head + w.symbols) for w in path_edge_words(g, n - 1)}


@dataclass(frozen=True)
class PathRecovery:
    path: Optional[tuple[int, ...]]
    failure_index: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.path is not None


def recover_path(w: WordView, n: int, g: GifsGraph) -> PathRecovery:
    """Rebuild the vertex sequence of G read off a vertex word, or report where it stops."""
    _require_g(g)
    s = symbols(w, n)
    if n == 0:
        return PathRecovery((g.base,))
    if s[0] != _label_bit(g.side(g.base)):
        return PathRecovery(None, 0)
    path = [g.base]
    for i in range(1, n):
        want = "L" if s[i] == 0 else "R"
        nxt = [e.dst for _, e in g.out_edges(path[-1]) if g.side(e.dst) == want]
        if not nxt:
            return PathRecovery(None, i)
        # each branch of f is injective, so at most one block per side qualifies
        assert len(nxt) == 1
        path.append(nxt[0])
    return PathRecovery(tuple(path))


def edge_path_labels(g: GifsGraph, edge_indices: Sequence[int], start: Optional[int] = None) -> list[str]:
    """Labels of an edge path given by 1-based indices; checks consecutiveness."""
    v = g.base if start is None else start
    out = []
    for k in edge_indices:
        e = g.edge(k)
        if e.src != v:
            raise ValueError(f"edge e{k} does not start at vertex {v}")
        out.append(e.label)
        v = e.dst
    return out


# ---------------------------------------------------------------------------
# export


def _elem_json(x: Optional[FieldElement]):
    if x is None:
        return None
    return {"poly": [str(c) for c in x.poly.coeffs], "approx": float(x)}


def to_json_dict(g: GifsGraph) -> dict:
    return {
        "lambda": g.param.lam.to_json() if g.param is not None else None,
        "kneading": str(g.param.kneading) if g.param is not None else None,
        "vertices": [
            {"id": v.id, "lo": _elem_json(v.lo), "hi": _elem_json(v.hi), "side": v.side}
            for v in sorted(g.vertices, key=lambda v: v.id)
        ],
        "edges": [
            {"index": i, "src": e.src, "dst": e.dst, "label": e.label}
            for i, e in enumerate(g.edges, 1)
        ],
        "base": g.base,
        "direction": g.direction,
    }


def to_dot(g: GifsGraph) -> str:
    lines = [f'digraph {g.direction} {{']
    for v in sorted(g.vertices, key=lambda v: v.id):
        shape = "doublecircle" if v.id == g.base else "circle"
        lines.append(f'  v{v.id} [shape={shape}, label="v{v.id} ({v.side})"];')
    for i, e in enumerate(g.edges, 1):
        lines.append(f'  v{e.src} -> v{e.dst} [label="{e.label}", tooltip="e{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(g: GifsGraph, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(to_json_dict(g), indent=2, sort_keys=True) + "\n"
    if fmt == "dot":
        return to_dot(g)
    raise ValueError(f"unknown export format {fmt!r}")


def import_json(text: str) -> GifsGraph:
    """Inverse of ``export(g, "json")``; block endpoints are rebuilt in Q(lambda) when present."""
    d = json.loads(text)
    param = None
    K = None
    if d.get("lambda") is not None:
        lam = AlgebraicNumber.from_json(d["lambda"])
        param = TentParameter.from_lambda(lam)
        K = param.field

    def elem(x):
        if x is None or K is None:
            return None
        return K(RationalPoly(tuple(Fraction(c) for c in x["poly"])))

    verts = tuple(
        Vertex(v["id"], elem(v["lo"]), elem(v["hi"]), v["side"])
        for v in sorted(d["vertices"], key=lambda v: v["id"])
    )
    edges = tuple(Edge(e["src"], e["dst"], e["label"]) for e in d["edges"])
    return GifsGraph(verts, edges, d["base"], d["direction"], param)


def content_hash(text: str) -> str:
    """git-style blob hash of a text export."""
    data = text.encode()
    return hashlib.sha1(b"blob %d\0" % len(data) + data).hexdigest()
