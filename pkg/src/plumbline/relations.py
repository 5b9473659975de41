"""Octic asymptotic relations and the Grassmannian tangent cone.

For each quadruple i<j<k<l the quadratic identity
y_ij*y_kl - y_ik*y_jl + y_il*y_jk = 0 between 2x2 minors of a rank-2
frame, double-squared after substituting y^2 = 1/t, clears denominators to
the degree-8 polynomial

    f = 2*t_ij*t_kl*t_il*t_jk*t_ik*t_jl*(t_ik*t_jl + t_il*t_jk + t_ij*t_kl)
        - ((t_ik*t_jl*t_il*t_jk)^2 + (t_ij*t_kl*t_ik*t_jl)^2
           + (t_ij*t_kl*t_il*t_jk)^2)

whose negative part runs over the three splittings of {i,j,k,l} into
complementary pairs.  This "corrected" form vanishes identically on points
t_ab = y_ab^-2; a variant whose first negative monomial drops the pair
{ij,kl} instead ("printed") does not, and is kept purely as a corruption
control.  Entries may be numbers or jets: with jet entries the vanishing
can be checked coefficient-by-coefficient through a given total degree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Mapping, Optional, Tuple, Union

from .curve_periods import ScaleMode, StarConfig, star_period_leading
from .errors import DegenerateDataError, RangeError, StructureError
from .jets import EXACT_FIELD, Jet, JetRing

OCTIC_VARIANTS = ("corrected", "printed")


@dataclass(frozen=True)
class OcticIndex:
    i: int
    j: int
    k: int
    l: int

    def __post_init__(self):
        if not (self.i < self.j < self.k < self.l):
            raise StructureError(f"octic indices must be strictly increasing, got {self}")
        if self.i < 1:
            raise RangeError("octic indices are 1-based")

    def __iter__(self):
        return iter((self.i, self.j, self.k, self.l))


def all_octic_indices(g: int) -> List[OcticIndex]:
    return [OcticIndex(*q) for q in combinations(range(1, g + 1), 4)]


@dataclass(frozen=True)
class GrassFrame:
    """2 x g matrix of full rank 2."""

    rows: Tuple[Tuple[object, ...], Tuple[object, ...]]

    def __post_init__(self):
        r0, r1 = self.rows
        if len(r0) != len(r1) or len(r0) < 2:
            raise StructureError("frame needs two rows of equal length >= 2")
        object.__setattr__(self, "rows", (tuple(r0), tuple(r1)))
        if all(
            not (r0[i] * r1[j] - r0[j] * r1[i])
            for i in range(len(r0))
            for j in range(i + 1, len(r0))
        ):
            raise DegenerateDataError("frame has rank < 2")

    @property
    def width(self) -> int:
        return len(self.rows[0])


class TangentConePoint:
    """Symmetric matrix of off-diagonal values with zero diagonal, keyed by
    1-based unordered index pairs."""

    __slots__ = ("genus", "_values")

    def __init__(self, genus: int, values: Mapping[Tuple[int, int], object]):
        object.__setattr__(self, "genus", genus)
        clean: Dict[Tuple[int, int], object] = {}
        for (i, j), v in values.items():
            if i == j:
                raise StructureError("diagonal entries are identically zero; do not set them")
            if not (1 <= i <= genus and 1 <= j <= genus):
                raise RangeError(f"index pair ({i},{j}) outside 1..{genus}")
            clean[(min(i, j), max(i, j))] = v
        object.__setattr__(self, "_values", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TangentConePoint is immutable")

    def entry(self, i: int, j: int):
        if i == j:
            raise StructureError("diagonal entries of a cone point are zero by convention")
        return self._values[(min(i, j), max(i, j))]

    def pairs(self) -> Dict[Tuple[int, int], object]:
        return dict(self._values)

    def replacing(self, i: int, j: int, value) -> "TangentConePoint":
        vals = self.pairs()
        vals[(min(i, j), max(i, j))] = value
        return TangentConePoint(self.genus, vals)

    def scaled(self, c) -> "TangentConePoint":
        return TangentConePoint(self.genus, {p: c * v for p, v in self._values.items()})


EntrySource = Union[TangentConePoint, Mapping[Tuple[int, int], object]]


def _entry_getter(entries: EntrySource) -> Callable[[int, int], object]:
    if isinstance(entries, TangentConePoint):
        return entries.entry
    if hasattr(entries, "entry"):
        return entries.entry  # PeriodMatrixJet and friends
    if isinstance(entries, Mapping):
        def get(i: int, j: int):
            pair = (min(i, j), max(i, j))
            if pair in entries:
                return entries[pair]
            return entries[(pair[1], pair[0])]

        return get
    raise StructureError(f"cannot read off-diagonal entries from {type(entries).__name__}")


def octic_eval(entries: EntrySource, idx: OcticIndex, variant: str = "corrected"):
    """Evaluate the degree-8 relation on the six off-diagonal entries of idx.

    variant "corrected" is the form that vanishes on the cone; "printed"
    keeps the defective first negative monomial and serves as a negative
    control only.
    """
    if variant not in OCTIC_VARIANTS:
        raise StructureError(f"unknown octic variant {variant!r}")
    get = _entry_getter(entries)
    i, j, k, l = idx
    tij, tik, til = get(i, j), get(i, k), get(i, l)
    tjk, tjl, tkl = get(j, k), get(j, l), get(k, l)
    positive = (
        2 * (tij * tkl) * (til * tjk) * (tik * tjl) * (tik * tjl + til * tjk + tij * tkl)
    )
    sq_ik_jl__il_jk = (tik * tjl * til * tjk) ** 2
    sq_ij_kl__ik_jl = (tij * tkl * tik * tjl) ** 2
    sq_ij_kl__il_jk = (tij * tkl * til * tjk) ** 2
    if variant == "corrected":
        negative = sq_ik_jl__il_jk + sq_ij_kl__ik_jl + sq_ij_kl__il_jk
    else:
        negative = (
            (tij * til * tjk * tjl) ** 2 + sq_ik_jl__il_jk + sq_ij_kl__ik_jl
        )
    return positive - negative


def plucker_coordinates(frame: GrassFrame) -> Dict[Tuple[int, int], object]:
    """2x2 column minors y_ij, keyed by 1-based (i,j) with i<j."""
    r0, r1 = frame.rows
    g = frame.width
    return {
        (i + 1, j + 1): r0[i] * r1[j] - r0[j] * r1[i]
        for i in range(g)
        for j in range(i + 1, g)
    }


def plucker_quadric(y: Mapping[Tuple[int, int], object], idx: OcticIndex):
    get = _entry_getter(y)
    i, j, k, l = idx
    return get(i, j) * get(k, l) - get(i, k) * get(j, l) + get(i, l) * get(j, k)


def plucker_to_cone(y: Mapping[Tuple[int, int], object]) -> TangentConePoint:
    """tau_ij = y_ij^-2 on the chart where every coordinate is nonzero."""
    genus = max(max(p) for p in y)
    values = {}
    for pair, coord in y.items():
        if not coord:
            raise DegenerateDataError(
                f"Pluecker coordinate y_{pair} = 0: the cone chart map is undefined there"
            )
        if isinstance(coord, int):
            coord = Fraction(coord)  # keep integer frames exact
        values[pair] = 1 / (coord * coord)
    return TangentConePoint(genus, values)


# ---------------------------------------------------------------------------
# jet verification through degree 16


MOD_T9_SAFE_DEGREE = 16  # octic monomials have parameter degree 16; corrections start later


@dataclass(frozen=True)
class AsymptoticReport:
    genus: int
    mode: str
    order: int
    octics_checked: int
    passed: bool
    min_surviving_degree: Optional[int]

    def to_json_dict(self) -> dict:
        return {
            "g": self.genus,
            "mode": self.mode,
            "order": self.order,
            "octics_checked": self.octics_checked,
            "all_vanish_through": MOD_T9_SAFE_DEGREE,
            "pass": self.passed,
            "min_surviving_degree": self.min_surviving_degree,
        }


def perturbed_star_entries(
    s: StarConfig,
    ring: JetRing,
    seed: int,
    corrupt_entry: Optional[Tuple[int, int]] = None,
) -> Dict[Tuple[int, int], Jet]:
    """Off-diagonal jets tau_ij = taubar_ij * (1 + l_ij) with l_ij random
    rational linear forms in the ring variables; optionally shift one entry
    off the cone by +1 as a negative control."""
    rng = random.Random(seed)
    base = star_period_leading(s, ring, ScaleMode.EXACT_UNITS if ring.field.is_exact else None)
    g = s.genus
    out: Dict[Tuple[int, int], Jet] = {}
    for i in range(1, g + 1):
        for j in range(i + 1, g + 1):
            coeffs = {
                name: Fraction(rng.randint(-4, 4), rng.randint(1, 4))
                for name in ring.variables
            }
            unit = ring.linear_form(coeffs, constant=1)
            out[(i, j)] = base.entry(i, j) * unit
    if corrupt_entry is not None:
        pair = (min(corrupt_entry), max(corrupt_entry))
        out[pair] = out[pair] + 1
    return out


def verify_asymptotic_vanishing(
    s: StarConfig,
    seed: int,
    order: int = 17,
    corrupt_entry: Optional[Tuple[int, int]] = None,
    field=EXACT_FIELD,
) -> AsymptoticReport:
    """Check that every octic jet vanishes through total degree 16.

    Each off-diagonal entry is the leading star product times a random
    degree-1 unit, so octic monomials have parameter degree exactly 16 and
    the corrections from the units begin at degree 17; the minimum actually
    surviving degree is reported, never asserted.
    """
    if order < MOD_T9_SAFE_DEGREE + 1:
        raise RangeError(f"order must be >= {MOD_T9_SAFE_DEGREE + 1}, got {order}")
    g = s.genus
    if g < 4:
        raise RangeError("octic relations need genus >= 4")
    ring = JetRing(tuple(s.variables), order, field)
    entries = perturbed_star_entries(s, ring, seed, corrupt_entry)
    passed = True
    min_surviving: Optional[int] = None
    octics = all_octic_indices(g)
    for idx in octics:
        f = octic_eval(entries, idx)
        if not f.vanishes_through_degree(MOD_T9_SAFE_DEGREE):
            passed = False
        d = f.min_nonzero_degree()
        if d is not None and (min_surviving is None or d < min_surviving):
            min_surviving = d
    return AsymptoticReport(
        genus=g,
        mode="exact" if ring.field.is_exact else "numeric",
        order=order,
        octics_checked=len(octics),
        passed=passed,
        min_surviving_degree=min_surviving,
    )
