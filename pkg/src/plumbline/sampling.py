"""Deterministic random rational fixtures.

All randomized verification flows derive their draws from labelled
substreams of one master seed, so adding a new check never shifts the
draws of an existing one and reports are byte-for-byte reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, Tuple

from .alkanes import Alkane
from .curve_periods import StarConfig, TreeConfig, TreeEdgeData
from .elliptic import Mark, MarkedEllipticCurve, TauPoint, TwoTorsionLabel
from .gaussian import GaussianRational
from .surfaces import EdgeData, SurfaceBlockShape, SurfaceGraphModel

_LABELS = list(TwoTorsionLabel)


def substream(seed: int, label: str) -> random.Random:
    """Independent PRNG for one named verification stream."""
    return random.Random(f"{seed}:{label}")


def rand_fraction(rng: random.Random, lo: int = -9, hi: int = 9, max_den: int = 9) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def rand_nonzero_fraction(rng: random.Random, lo: int = -9, hi: int = 9, max_den: int = 9) -> Fraction:
    while True:
        f = rand_fraction(rng, lo, hi, max_den)
        if f:
            return f


def rand_tau(rng: random.Random) -> TauPoint:
    """Exact upper-half-plane point with small rational parts."""
    return TauPoint(
        GaussianRational(rand_fraction(rng, -3, 3, 4), rand_nonzero_fraction(rng, 1, 4, 3))
    )


def random_star_config(g: int, rng: random.Random) -> StarConfig:
    curves = []
    for _ in range(g):
        c = rand_nonzero_fraction(rng, -6, 6, 6)
        curves.append(
            MarkedEllipticCurve(rand_tau(rng), (Mark(TwoTorsionLabel.O, GaussianRational(c)),))
        )
    points: list = []
    while len(points) < g:
        b = rand_fraction(rng, -12, 12, 6)
        if all(b != p for p in points):
            points.append(b)
    variables = tuple(f"t{i}" for i in range(1, g + 1))
    return StarConfig(tuple(curves), tuple(GaussianRational(b) for b in points), variables)


def random_tree_config(alkane: Alkane, rng: random.Random) -> TreeConfig:
    taus = tuple(rand_tau(rng) for _ in range(alkane.genus))
    used: Dict[int, int] = {v: 0 for v in range(1, alkane.genus + 1)}
    edge_data = {}
    for (i, j) in alkane.edges:
        label_i = _LABELS[used[i]]
        label_j = _LABELS[used[j]]
        used[i] += 1
        used[j] += 1
        edge_data[(i, j)] = TreeEdgeData(
            var=f"t{i}_{j}",
            label_low=label_i,
            coeff_low=GaussianRational(rand_nonzero_fraction(rng, -6, 6, 6)),
            label_high=label_j,
            coeff_high=GaussianRational(rand_nonzero_fraction(rng, -6, 6, 6)),
        )
    return TreeConfig(alkane, taus, edge_data)


def random_grass_frame_minors(g: int, rng: random.Random) -> Dict[Tuple[int, int], Fraction]:
    """Pluecker minors of a random rational rank-2 frame, resampled until
    every coordinate is nonzero (the cone chart needs all of them)."""
    while True:
        rows = [[rand_fraction(rng, -9, 9, 5) for _ in range(g)] for _ in range(2)]
        y = {}
        ok = True
        for i in range(g):
            for j in range(i + 1, g):
                m = rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i]
                if not m:
                    ok = False
                    break
                y[(i + 1, j + 1)] = m
            if not ok:
                break
        if ok:
            return y


def random_surface_model(
    alkane: Alkane, rng: random.Random, h_per_vertex: int = 1
) -> SurfaceGraphModel:
    shapes = tuple(SurfaceBlockShape(h_per_vertex) for _ in range(alkane.genus))
    blocks = tuple(
        tuple(
            tuple(rand_fraction(rng, -5, 5, 4) for _ in range(shape.cols))
            for _ in range(shape.rows)
        )
        for shape in shapes
    )
    edge_data = {}
    for (i, j) in alkane.edges:
        sl, sh = shapes[i - 1], shapes[j - 1]
        omega = (
            tuple(rand_nonzero_fraction(rng, -5, 5, 4) for _ in range(sl.rows)),
            tuple(-rand_nonzero_fraction(rng, -5, 5, 4) for _ in range(sh.rows)),
        )
        i_vectors = (
            tuple(rand_fraction(rng, -5, 5, 4) for _ in range(sl.cols - sl.h))
            + (Fraction(0),) * sl.h,
            tuple(rand_fraction(rng, -5, 5, 4) for _ in range(sh.cols - sh.h))
            + (Fraction(0),) * sh.h,
        )
        edge_data[(i, j)] = EdgeData((i, j), omega, i_vectors)
    return SurfaceGraphModel(alkane, shapes, blocks, edge_data)
