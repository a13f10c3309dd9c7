"""Primitivity and splitting-degree bookkeeping from local intersection data.

At a point of index m the local class group is cyclic of order m and a curve
through the point defines a residue map to Q/Z by intersection.  When the
pairing divisor generates the local group, the image order is the reduced
denominator of the intersection number and the splitting degree is the index
of the image.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd


@dataclass(frozen=True)
class NonGorPoint:
    """A non-Gorenstein point: index, a type tag, and an optional contact invariant."""

    index: int
    type_tag: str
    ell: int | None = None

    def __post_init__(self):
        if self.index < 2:
            raise ValueError("point index must be >= 2")
        if self.ell is not None and self.ell < 0:
            raise ValueError("contact invariant must be >= 0")


@dataclass(frozen=True)
class PrimitivityReport:
    image_order: int
    splitting_degree: int
    primitive: bool
    note: str = "assumes the pairing divisor generates the local class group"


def local_primitivity(d_dot_c: Fraction | int, m: int, generator: bool = True) -> PrimitivityReport:
    """Image order and splitting degree of the residue map at an index-m point.

    Only the reduced denominator of ``d_dot_c`` matters (negating the value
    changes nothing).  The computation is only valid when the divisor is known
    to generate the local class group; pass ``generator=False`` to refuse the
    inference explicitly.
    """
    if m < 2:
        raise ValueError("index must be >= 2")
    if not generator:
        raise ValueError(
            "splitting degree cannot be inferred unless the divisor generates "
            "the local class group"
        )
    value = Fraction(d_dot_c)
    if m % value.denominator:
        raise ValueError(
            f"denominator of {value} does not divide the index {m}: inconsistent input"
        )
    image_order = value.denominator
    degree = m // image_order
    return PrimitivityReport(image_order, degree, degree == 1)


@dataclass(frozen=True)
class GlobalPrimitivity:
    primitive: bool
    degree: int
    base_singularity: str  # "smooth" or "A<k>"
    rule: str


def global_imprimitivity(points: list[tuple[int, int]]) -> GlobalPrimitivity:
    """Combine local behaviour into the global splitting degree.

    Each entry is (index, local splitting degree), degree 1 meaning locally
    primitive.  A locally imprimitive point must be the only non-Gorenstein
    point; two primitive points contribute the gcd of their indices; anything
    else is globally primitive.  The contraction base is Du Val of type
    A_(degree-1), smooth for degree 1.
    """
    if not points:
        raise ValueError("need at least one point")
    for m, deg in points:
        if m < 2 or deg < 1 or m % deg:
            raise ValueError(f"bad local data ({m}, {deg})")
    imprimitive = [(m, deg) for m, deg in points if deg > 1]
    if imprimitive:
        if len(points) > 1:
            raise ValueError(
                "a locally imprimitive point excludes any other non-Gorenstein point"
            )
        degree = imprimitive[0][1]
        rule = "single locally imprimitive point"
    elif len(points) == 2:
        degree = gcd(points[0][0], points[1][0])
        rule = "two primitive points, gcd of indices"
    else:
        degree = 1
        rule = "no imprimitivity source"
    base = "smooth" if degree == 1 else f"A{degree - 1}"
    return GlobalPrimitivity(degree == 1, degree, base, rule)


@dataclass(frozen=True)
class ClassGroupSummary:
    """Shape of the semi-Cartier class group of a germ.

    The free part has rank equal to the number of components; any torsion is
    cyclic and embeds into the local group of a single point, so its order
    divides one of the local orders.
    """

    rank: int
    local_orders: tuple[int, ...]
    torsion_cyclic: bool = True
    notes: tuple[str, ...] = field(default_factory=tuple)

    def torsion_trivial(self) -> bool:
        return not self.local_orders


def clsc_rank(n_components: int, local_orders: list[int]) -> ClassGroupSummary:
    if n_components < 1:
        raise ValueError("need at least one component")
    for m in local_orders:
        if m < 2:
            raise ValueError("local orders must be >= 2")
    notes = ["free part has rank equal to the component count"]
    if local_orders:
        notes.append(
            "torsion is cyclic and embeds into a single local group, so its "
            f"order divides one of {sorted(local_orders)}"
        )
    else:
        notes.append("no non-Gorenstein points: the class group is torsion free")
    return ClassGroupSummary(n_components, tuple(local_orders), True, tuple(notes))
