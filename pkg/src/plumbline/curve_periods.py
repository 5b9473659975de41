"""First-order period matrices of plumbed curve families, as jets.

Three assemblies are provided:

* pairwise: diag blocks + lambda * t * (u tensor u) with
  u = [omega_a(a), -omega_b(b)] and lambda = 1/4 in exact units
  (the transcendental factor 2*pi*i divided out) or 2*pi*i/4 numerically;
* star over P^1: off-diagonal (i,j) entry kappa * t_i t_j v_i v_j/(b_i-b_j)^2
  with kappa = 1/16 or 2*pi*i/16, diagonal first-order corrections dropped
  (this models only the leading off-diagonal products);
* tree of elliptic curves along an alkane: one rank-1 pairwise contribution
  per edge, diagonal corrections kept.

Everything is modulo the square of the parameter ideal unless a higher
truncation order is requested for downstream jet work.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .alkanes import Alkane, canonical_code
from .elliptic import MarkedEllipticCurve, TauPoint, TwoTorsionLabel
from .errors import DegenerateDataError, RangeError, StructureError
from .gaussian import GaussianRational
from .jets import Jet, JetRing


class ScaleMode(enum.Enum):
    EXACT_UNITS = "exact"
    NUMERIC = "numeric"


def _mode_for(ring: JetRing, mode: Optional[ScaleMode]) -> ScaleMode:
    if mode is None:
        return ScaleMode.EXACT_UNITS if ring.field.is_exact else ScaleMode.NUMERIC
    if mode is ScaleMode.NUMERIC and ring.field.is_exact:
        raise StructureError("numeric scale mode needs the float coefficient field")
    return mode


def _pair_lambda(mode: ScaleMode):
    """Coefficient of t * (u tensor u); 2*pi*i/4 with the factor optionally removed."""
    if mode is ScaleMode.EXACT_UNITS:
        return GaussianRational(Fraction(1, 4))
    return complex(0.0, math.pi / 2.0)


def _star_kappa(mode: ScaleMode):
    if mode is ScaleMode.EXACT_UNITS:
        return GaussianRational(Fraction(1, 16))
    return complex(0.0, math.pi / 8.0)


# ---------------------------------------------------------------------------
# configurations


@dataclass(frozen=True)
class CurveBlock:
    """A constant symmetric period block with the form values at the
    attachment point.  An elliptic curve is the 1x1 case."""

    tau_block: Tuple[Tuple[object, ...], ...]
    omega_at_point: Tuple[object, ...]

    def __post_init__(self):
        g = len(self.tau_block)
        if g == 0 or any(len(row) != g for row in self.tau_block):
            raise StructureError("tau block must be square and nonempty")
        if len(self.omega_at_point) != g:
            raise StructureError("omega vector length must match block size")
        for i in range(g):
            for j in range(g):
                if self.tau_block[i][j] != self.tau_block[j][i]:
                    raise StructureError("tau block must be symmetric")

    @property
    def genus(self) -> int:
        return len(self.tau_block)

    @classmethod
    def from_marked_curve(cls, curve: MarkedEllipticCurve, mark_index: int) -> "CurveBlock":
        v = curve.mark_value(mark_index)
        return cls(((curve.tau.value,),), (v,))


PairSide = Union[CurveBlock, MarkedEllipticCurve]


def _as_block(side: PairSide, mark_index: int) -> CurveBlock:
    if isinstance(side, CurveBlock):
        return side
    return CurveBlock.from_marked_curve(side, mark_index)


@dataclass(frozen=True)
class PairPlumbing:
    curve_a: PairSide
    curve_b: PairSide
    t: str
    mark_a: int = 0
    mark_b: int = 0


@dataclass(frozen=True)
class StarConfig:
    """g elliptic tails attached to a projective line at b_1..b_g."""

    curves: Tuple[MarkedEllipticCurve, ...]
    attach_points: Tuple[object, ...]
    variables: Tuple[str, ...]

    def __post_init__(self):
        g = len(self.curves)
        if len(self.attach_points) != g or len(self.variables) != g:
            raise StructureError("curves, attach points and variables must align")
        if g < 2:
            raise RangeError("a star needs at least two tails")
        for i in range(g):
            if not self.curves[i].marks:
                raise StructureError(f"curve {i + 1} carries no mark")
            for j in range(i + 1, g):
                if self.attach_points[i] == self.attach_points[j]:
                    raise DegenerateDataError(
                        f"attachment points {i + 1} and {j + 1} coincide"
                    )

    @property
    def genus(self) -> int:
        return len(self.curves)


@dataclass(frozen=True)
class TreeEdgeData:
    """Plumbing data of one alkane edge {i,j} with i < j: the jet variable
    and, per endpoint, the 2-torsion attachment label and the local
    coordinate's leading coefficient."""

    var: str
    label_low: TwoTorsionLabel
    coeff_low: object
    label_high: TwoTorsionLabel
    coeff_high: object

    def __post_init__(self):
        if not self.coeff_low or not self.coeff_high:
            raise DegenerateDataError("zero leading coefficient at an attachment mark")


@dataclass(frozen=True)
class TreeConfig:
    alkane: Alkane
    taus: Tuple[TauPoint, ...]
    edge_data: Mapping[Tuple[int, int], TreeEdgeData]

    def __post_init__(self):
        g = self.alkane.genus
        if len(self.taus) != g:
            raise StructureError(f"{len(self.taus)} curves for a genus-{g} alkane")
        object.__setattr__(self, "edge_data", dict(self.edge_data))
        if set(self.edge_data) != set(self.alkane.edges):
            raise StructureError("edge data keys do not match the alkane's edge set")
        per_vertex: Dict[int, List[TwoTorsionLabel]] = {}
        for (i, j), data in self.edge_data.items():
            per_vertex.setdefault(i, []).append(data.label_low)
            per_vertex.setdefault(j, []).append(data.label_high)
        for v, labels in per_vertex.items():
            if len(set(labels)) != len(labels):
                raise StructureError(f"repeated 2-torsion attachment label at vertex {v}")


# ---------------------------------------------------------------------------
# the matrix-of-jets carrier


class PeriodMatrixJet:
    """Symmetric matrix of jets; indices are 1-based as in the formulas."""

    __slots__ = ("entries", "scale_mode", "meta")

    def __init__(
        self,
        entries: Sequence[Sequence[Jet]],
        scale_mode: ScaleMode,
        meta: Optional[dict] = None,
    ):
        rows = [tuple(row) for row in entries]
        g = len(rows)
        if any(len(row) != g for row in rows):
            raise StructureError("period matrix must be square")
        for i in range(g):
            for j in range(i + 1, g):
                if rows[i][j] != rows[j][i]:
                    raise StructureError(f"period matrix not symmetric at ({i + 1},{j + 1})")
        object.__setattr__(self, "entries", tuple(rows))
        object.__setattr__(self, "scale_mode", scale_mode)
        object.__setattr__(self, "meta", dict(meta or {}))

    def __setattr__(self, name, value):
        raise AttributeError("PeriodMatrixJet is immutable")

    @property
    def genus(self) -> int:
        return len(self.entries)

    @property
    def ring(self) -> JetRing:
        return self.entries[0][0].ring

    def entry(self, i: int, j: int) -> Jet:
        return self.entries[i - 1][j - 1]

    def __eq__(self, other):
        if not isinstance(other, PeriodMatrixJet):
            return NotImplemented
        return self.scale_mode is other.scale_mode and self.entries == other.entries

    def var_coefficient_matrix(self, var: str) -> List[List[object]]:
        """Matrix of coefficients of the degree-1 monomial of ``var``."""
        return [[e.coefficient_of_var(var) for e in row] for row in self.entries]

    def to_json_dict(self) -> dict:
        # the report shows the full stored support (a star matrix is invisible
        # modulo (t)^2, its off-diagonals being bidegree (1,1))
        d = {
            "genus": self.genus,
            "mode": self.scale_mode.value,
            "entries": [[e.to_json_dict() for e in row] for row in self.entries],
            "support": [
                list(p) for p in sorted(offdiag_support(self, self.ring.order))
            ],
        }
        d.update(self.meta)
        return d


# ---------------------------------------------------------------------------
# assemblies


def _outer_contribution(entries, lam, t_jet: Jet, slots: Sequence[int], values: Sequence[object]):
    """Add lam * t * (u tensor u) where u has ``values`` in ``slots`` (0-based)."""
    for a, va in zip(slots, values):
        for b, vb in zip(slots, values):
            entries[a][b] = entries[a][b] + t_jet * (lam * va * vb)


def pair_period_first_order(
    p: PairPlumbing, ring: JetRing, mode: Optional[ScaleMode] = None
) -> PeriodMatrixJet:
    """diag(tau_a, tau_b) + lambda * t * u tensor u, u = [omega_a(a), -omega_b(b)]."""
    mode = _mode_for(ring, mode)
    if ring.order < 1:
        raise RangeError("pair plumbing needs truncation order >= 1")
    block_a = _as_block(p.curve_a, p.mark_a)
    block_b = _as_block(p.curve_b, p.mark_b)
    ga, gb = block_a.genus, block_b.genus
    g = ga + gb
    coerce = ring.field.coerce
    entries = [[ring.zero() for _ in range(g)] for _ in range(g)]
    for i in range(ga):
        for j in range(ga):
            entries[i][j] = ring.constant(coerce(block_a.tau_block[i][j]))
    for i in range(gb):
        for j in range(gb):
            entries[ga + i][ga + j] = ring.constant(coerce(block_b.tau_block[i][j]))
    u = [coerce(v) for v in block_a.omega_at_point] + [
        -coerce(v) for v in block_b.omega_at_point
    ]
    lam = coerce(_pair_lambda(mode)) if mode is ScaleMode.EXACT_UNITS else _pair_lambda(mode)
    _outer_contribution(entries, lam, ring.variable(p.t), range(g), u)
    return PeriodMatrixJet(entries, mode, {"assembly": "pair"})


def star_period_leading(
    s: StarConfig, ring: JetRing, mode: Optional[ScaleMode] = None
) -> PeriodMatrixJet:
    """Leading off-diagonal products only; diagonal first-order terms are zero."""
    mode = _mode_for(ring, mode)
    if ring.order < 2:
        raise RangeError("star off-diagonals are bidegree (1,1); need order >= 2")
    g = s.genus
    coerce = ring.field.coerce
    kappa = coerce(_star_kappa(mode)) if mode is ScaleMode.EXACT_UNITS else _star_kappa(mode)
    v = [coerce(c.mark_value(0)) for c in s.curves]
    b = [coerce(x) for x in s.attach_points]
    t = [ring.variable(name) for name in s.variables]
    entries = [[ring.zero() for _ in range(g)] for _ in range(g)]
    for i in range(g):
        entries[i][i] = ring.constant(coerce(s.curves[i].tau.value))
    for i in range(g):
        for j in range(i + 1, g):
            d = b[i] - b[j]
            off = t[i] * t[j] * (kappa * v[i] * v[j] / (d * d))
            entries[i][j] = off
            entries[j][i] = off
    return PeriodMatrixJet(entries, mode, {"assembly": "star"})


def tree_period_first_order(
    c: TreeConfig, ring: JetRing, mode: Optional[ScaleMode] = None
) -> PeriodMatrixJet:
    """One pairwise rank-1 contribution per alkane edge, diagonal terms kept."""
    mode = _mode_for(ring, mode)
    if ring.order < 1:
        raise RangeError("tree plumbing needs truncation order >= 1")
    g = c.alkane.genus
    coerce = ring.field.coerce
    lam = coerce(_pair_lambda(mode)) if mode is ScaleMode.EXACT_UNITS else _pair_lambda(mode)
    entries = [[ring.zero() for _ in range(g)] for _ in range(g)]
    for i in range(g):
        entries[i][i] = ring.constant(coerce(c.taus[i].value))
    # iterate the mapping, not the sorted edge list: the result must not
    # depend on the order the plumbings are performed in
    for (i, j), data in c.edge_data.items():
        v_i = 1 / coerce(data.coeff_low)
        v_j = 1 / coerce(data.coeff_high)
        _outer_contribution(entries, lam, ring.variable(data.var), (i - 1, j - 1), (v_i, -v_j))
    meta = {"assembly": "tree", "alkane_code": canonical_code(c.alkane)}
    return PeriodMatrixJet(entries, mode, meta)


# ---------------------------------------------------------------------------
# pattern inspection


def offdiag_support(
    m: PeriodMatrixJet, through_degree: int = 1, tolerance: float | None = None
) -> FrozenSet[Tuple[int, int]]:
    """Unordered pairs (i,j), i<j, whose entry has a nonzero coefficient in
    total degree <= through_degree (i.e. is nonzero modulo the next power
    of the parameter ideal)."""
    d = min(through_degree, m.ring.order)
    out = set()
    g = m.genus
    for i in range(1, g + 1):
        for j in range(i + 1, g + 1):
            if not m.entry(i, j).vanishes_through_degree(d, tolerance):
                out.add((i, j))
    return frozenset(out)


def is_banded(pattern: Iterable[Tuple[int, int]], band: int) -> bool:
    """True iff every support pair satisfies |i - j| <= band - 1
    (band 2 = tridiagonal, band 3 = quadridiagonal)."""
    return all(abs(i - j) <= band - 1 for i, j in pattern)


def banded_locus_dimension(g: int, band: int) -> int:
    """Dimension of symmetric g x g matrices supported on |i-j| <= band-1."""
    if g < 1:
        raise RangeError(f"g must be >= 1, got {g}")
    if band < 1:
        raise RangeError(f"band must be >= 1, got {band}")
    return g + sum(max(g - d, 0) for d in range(1, band))


def derivative_rank_one_check(
    m: PeriodMatrixJet, var: str, tolerance: float | None = None
) -> bool:
    """All 2x2 minors of the coefficient matrix of ``var`` vanish."""
    c = m.var_coefficient_matrix(var)
    g = m.genus
    field = m.ring.field
    if field.is_exact:
        def minor_is_zero(x):
            return not x
    else:
        scale = max((abs(v) for row in c for v in row), default=0.0)
        tol = field.tolerance if tolerance is None else tolerance
        bound = tol * max(scale * scale, 1e-300)

        def minor_is_zero(x):
            return abs(x) <= bound

    for i in range(g):
        for k in range(i + 1, g):
            for j in range(g):
                for l in range(j + 1, g):
                    if not minor_is_zero(c[i][j] * c[k][l] - c[i][l] * c[k][j]):
                        return False
    return True
