"""Rule engine for the classification table of reducible extremal germs.

The table is encoded row by row: a component-multiset pattern, the allowed
contraction kinds with their component-count bounds, and the constraints on
the non-Gorenstein points that are expressible from type tags and index
arithmetic.  Excluded combinations carry their source citations, as do the
clauses of the component-count lemma and the flip table.

Descriptors are read from a small text format::

    component <type>
    kind f|d|cb
    point index=<m> tag=<string> [ell=<r>]
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm

from .class_group import NonGorPoint


class ComponentType(Enum):
    k1A = "k1A"
    k2A = "k2A"
    cD2 = "cD2"
    cAx2 = "cAx2"
    cE2 = "cE2"
    cD3 = "cD3"
    IIA = "IIA"
    IIdual = "IIdual"
    IEdual = "IEdual"
    IDdual = "IDdual"
    IC = "IC"
    IIB = "IIB"
    kAD = "kAD"
    k3A = "k3A"


class GermKind(Enum):
    FLIPPING = "f"
    DIVISORIAL = "d"
    CB = "cb"


@dataclass(frozen=True)
class GermDescriptor:
    components: tuple[ComponentType, ...]
    kind: GermKind
    points: tuple[NonGorPoint, ...] = ()

    def __post_init__(self):
        if not self.components:
            raise ValueError("descriptor needs at least one component")

    @property
    def n(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class Validation:
    accepted: bool
    row: int | None = None
    reason: str = ""
    citation: str = ""
    notes: tuple[str, ...] = ()


_FORBIDDEN: dict[frozenset[ComponentType], str] = {
    frozenset({ComponentType.IC, ComponentType.k2A}): "Theorem 3.2",
    frozenset({ComponentType.k2A, ComponentType.kAD}): "Theorem 4.3",
    frozenset({ComponentType.k2A, ComponentType.k3A}): "Theorem 4.3",
    frozenset({ComponentType.IIdual, ComponentType.IIB}): "Lemma 5.4",
}


def forbidden_pair(a: ComponentType, b: ComponentType) -> str | None:
    """Citation for an excluded unordered pair of component types, if any."""
    return _FORBIDDEN.get(frozenset({a, b}))


_QUOT_TAG = re.compile(r"1/(\d+)\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)\Z")


def parse_quotient_tag(tag: str) -> tuple[int, tuple[int, ...]] | None:
    """Split a tag like ``1/5(2,3,1)`` into order and weights, or None."""
    m = _QUOT_TAG.match(tag.replace(" ", ""))
    if not m:
        return None
    n = int(m.group(1))
    weights = tuple(int(w) for w in m.group(2).split(","))
    return n, weights


def _is_rigid_odd_quotient(pt: NonGorPoint) -> str | None:
    """Check the tag against 1/m(2, m-2, 1) with m odd >= 5."""
    parsed = parse_quotient_tag(pt.type_tag)
    if not parsed:
        return f"tag {pt.type_tag!r} is not a quotient tag"
    n, w = parsed
    if n != pt.index:
        return f"tag order {n} disagrees with index {pt.index}"
    if n < 5 or n % 2 == 0:
        return "order must be odd and >= 5"
    if len(w) != 3 or tuple(x % n for x in w) != (2, (n - 2) % n, 1):
        return f"weights {w} do not match (2, m-2, 1)"
    return None


def _is_half_shifted_quotient(pt: NonGorPoint) -> str | None:
    """Check the tag against 1/(2k-1)(1, -1, k)."""
    parsed = parse_quotient_tag(pt.type_tag)
    if not parsed:
        return f"tag {pt.type_tag!r} is not a quotient tag"
    n, w = parsed
    if n != pt.index:
        return f"tag order {n} disagrees with index {pt.index}"
    if n < 3 or n % 2 == 0:
        return "order must be odd and >= 3"
    k = (n + 1) // 2
    if len(w) != 3 or tuple(x % n for x in w) != (1, n - 1, k % n):
        return f"weights {w} do not match (1, -1, k) with k = {k}"
    return None


def _is_index2_triple(pt: NonGorPoint) -> str | None:
    parsed = parse_quotient_tag(pt.type_tag)
    if parsed:
        n, w = parsed
        if n == 2 and pt.index == 2 and tuple(x % 2 for x in w) == (1, 1, 1):
            return None
        return f"tag {pt.type_tag!r} is not the half-point 1/2(1,1,1)"
    return f"tag {pt.type_tag!r} is not a quotient tag"


def _is_series_tag(pt: NonGorPoint, allowed: tuple[str, ...]) -> str | None:
    if pt.type_tag in allowed:
        want = int(pt.type_tag.rsplit("/", 1)[1])
        if want != pt.index:
            return f"tag {pt.type_tag!r} disagrees with index {pt.index}"
        return None
    return f"tag {pt.type_tag!r} not among {allowed}"


def _is_ca_tag(pt: NonGorPoint) -> str | None:
    m = re.match(r"cA/(\d+)\Z", pt.type_tag)
    if not m:
        return f"tag {pt.type_tag!r} is not of the cA/m form"
    if int(m.group(1)) != pt.index:
        return f"tag {pt.type_tag!r} disagrees with index {pt.index}"
    return None


@dataclass(frozen=True)
class TableRow:
    number: int
    label: str
    # kind -> (bound, exact); bound None means no bound recorded
    kinds: dict[GermKind, tuple[int | None, bool]]
    notes: tuple[str, ...] = ()


_T = ComponentType
_ROWS: list[TableRow] = [
    TableRow(1, "Gorenstein total space", {GermKind.CB: (2, True)}),
    TableRow(2, "2 x (cAx2 | cD2 | cE2)", {GermKind.CB: (2, True)}),
    TableRow(3, "N x cD3",
             {GermKind.FLIPPING: (2, True), GermKind.DIVISORIAL: (4, False),
              GermKind.CB: (5, False)}),
    TableRow(4, "N x IIA",
             {GermKind.FLIPPING: (4, False), GermKind.DIVISORIAL: (7, False),
              GermKind.CB: (7, False)}),
    TableRow(5, "2 x IIdual", {GermKind.CB: (2, True)}),
    TableRow(6, "IIdual + (N-1) x IIA",
             {GermKind.FLIPPING: (2, True), GermKind.DIVISORIAL: (4, False),
              GermKind.CB: (5, False)}),
    TableRow(7, "IIB + (N-1) x IIA",
             {GermKind.DIVISORIAL: (2, True), GermKind.CB: (3, False)}),
    TableRow(8, "IC + (N-1) x k1A",
             {GermKind.FLIPPING: (2, True), GermKind.DIVISORIAL: (4, False),
              GermKind.CB: (5, False)}),
    TableRow(9, "N x k1A",
             {GermKind.FLIPPING: (None, False), GermKind.DIVISORIAL: (None, False),
              GermKind.CB: (None, False)}),
    TableRow(10, "k3A + (N-1) x k1A",
             {GermKind.DIVISORIAL: (2, True), GermKind.CB: (3, False)},
             notes=("consistent with the table; existence open",)),
    TableRow(11, "kAD + (N-1) x (k1A | cD2 | cAx2)",
             {GermKind.FLIPPING: (2, True), GermKind.DIVISORIAL: (4, False),
              GermKind.CB: (5, False)}),
    TableRow(12, "n x k2A + k x k1A",
             {GermKind.FLIPPING: (None, False), GermKind.DIVISORIAL: (None, False),
              GermKind.CB: (None, False)},
             notes=("component count not bounded by the table",)),
]
_ROW_BY_NUMBER = {row.number: row for row in _ROWS}


def _match_row(components: tuple[ComponentType, ...]) -> int | None:
    """Table row selected by the component multiset, ignoring kind and points."""
    count: dict[ComponentType, int] = {}
    for c in components:
        count[c] = count.get(c, 0) + 1

    def only(*types: ComponentType) -> bool:
        return set(count) <= set(types)

    if only(_T.cAx2) or only(_T.cD2) or only(_T.cE2):
        return 2
    if only(_T.cD3):
        return 3
    if only(_T.IIA):
        return 4
    if only(_T.IIdual):
        return 5
    if count.get(_T.IIdual, 0) == 1 and only(_T.IIdual, _T.IIA):
        return 6
    if count.get(_T.IIB, 0) == 1 and only(_T.IIB, _T.IIA):
        return 7
    if count.get(_T.IC, 0) == 1 and only(_T.IC, _T.k1A):
        return 8
    if only(_T.k1A):
        return 9
    if count.get(_T.k3A, 0) == 1 and only(_T.k3A, _T.k1A):
        return 10
    if count.get(_T.kAD, 0) == 1 and only(_T.kAD, _T.k1A, _T.cD2, _T.cAx2):
        return 11
    if count.get(_T.k2A, 0) >= 1 and only(_T.k2A, _T.k1A):
        return 12
    return None


def _check_points(row: int, g: GermDescriptor) -> str | None:
    pts = g.points
    if row == 2:
        tag = {_T.cAx2: "cAx/2", _T.cD2: "cD/2", _T.cE2: "cE/2"}[g.components[0]]
        if len(pts) != 1:
            return "expected exactly one non-Gorenstein point"
        return _is_series_tag(pts[0], (tag,))
    if row == 3:
        if len(pts) != 1:
            return "expected exactly one non-Gorenstein point"
        return _is_series_tag(pts[0], ("cD/3",))
    if row in (4, 5, 6, 7):
        if len(pts) != 1:
            return "expected exactly one non-Gorenstein point"
        return _is_series_tag(pts[0], ("cAx/4",))
    if row == 8:
        if len(pts) != 1:
            return "expected exactly one non-Gorenstein point"
        return _is_rigid_odd_quotient(pts[0])
    if row == 9:
        if len(pts) != 1:
            return "expected exactly one non-Gorenstein point"
        return _is_ca_tag(pts[0])
    if row == 10:
        if len(pts) != 2:
            return "expected exactly two non-Gorenstein points"
        for first, second in (pts, pts[::-1]):
            if _is_half_shifted_quotient(first) is None and _is_index2_triple(second) is None:
                return None
        return "points must be 1/(2k-1)(1,-1,k) and 1/2(1,1,1)"
    if row == 11:
        if len(pts) != 2:
            return "expected exactly two non-Gorenstein points"
        for first, second in (pts, pts[::-1]):
            if _is_half_shifted_quotient(first) is None and _is_series_tag(
                second, ("cA/2", "cAx/2", "cD/2")
            ) is None:
                return None
        return "points must be 1/(2k-1)(1,-1,k) and one of cA/2, cAx/2, cD/2"
    return None  # rows 1 and 12 carry no point constraints


def validate_against_table(g: GermDescriptor) -> Validation:
    """Match a descriptor against the classification table.

    Excluded pairs are reported first, with their citations; then the
    component multiset selects a row, whose kind bound and point constraints
    are enforced.
    """
    if g.n < 2:
        return Validation(False, None,
                          "the table covers reducible central curves (N >= 2)",
                          "Theorem 1")
    seen = sorted(set(g.components), key=lambda t: t.value)
    for i, a in enumerate(seen):
        for b in seen[i:]:
            if a is b and g.components.count(a) < 2:
                continue
            cite = forbidden_pair(a, b)
            if cite:
                return Validation(
                    False, None,
                    f"components {a.value} and {b.value} cannot meet", cite
                )
    if not g.points:
        if g.kind is GermKind.CB and g.n == 2:
            return Validation(
                True, 1, citation="Theorem 1, row 1",
                notes=("no non-Gorenstein points: component types are not "
                       "constrained by the table",),
            )
        return Validation(
            False, 1,
            "a germ with no non-Gorenstein points must be a conic bundle with "
            "two components", "Theorem 1, row 1",
        )
    row_number = _match_row(g.components)
    if row_number is None:
        return Validation(False, None,
                          "component multiset matches no table row", "Theorem 1")
    row = _ROW_BY_NUMBER[row_number]
    if g.kind not in row.kinds:
        return Validation(
            False, row_number,
            f"kind {g.kind.value!r} not allowed in row {row_number}",
            f"Theorem 1, row {row_number}",
        )
    bound, exact = row.kinds[g.kind]
    if bound is not None:
        if exact and g.n != bound:
            return Validation(
                False, row_number,
                f"row {row_number} with kind {g.kind.value!r} needs exactly "
                f"{bound} components, got {g.n}",
                f"Theorem 1, row {row_number}",
            )
        if not exact and g.n > bound:
            return Validation(
                False, row_number,
                f"row {row_number} {g.kind.value} bound {bound} exceeded (N = {g.n})",
                f"Theorem 1, row {row_number}",
            )
    point_err = _check_points(row_number, g)
    if point_err:
        return Validation(False, row_number, point_err,
                          f"Theorem 1, row {row_number}")
    return Validation(True, row_number, citation=f"Theorem 1, row {row_number}",
                      notes=row.notes)


# ---------------------------------------------------------------------------
# component-count bounds


_BOUND_LEADING = {_T.cD3, _T.IC, _T.kAD, _T.IIdual, _T.IIB, _T.k3A}


@dataclass(frozen=True)
class BoundReport:
    applicable: bool
    bound: int | None = None
    exact: bool = False
    clause: str = ""
    reason: str = ""


def component_bound(
    leading: ComponentType, leading_kind: GermKind, germ_kind: GermKind
) -> BoundReport:
    """Tightest component-count bound from the contraction lemma clauses."""
    if leading not in _BOUND_LEADING:
        return BoundReport(
            False, reason=f"{leading.value} is outside the lemma's hypothesis list"
        )
    candidates: list[tuple[int, bool, str]] = []
    birational = germ_kind in (GermKind.FLIPPING, GermKind.DIVISORIAL)
    candidates.append((4 if birational else 5, False, "Lemma 5.1(1)"))
    if leading_kind is GermKind.DIVISORIAL and leading is not _T.IIdual:
        candidates.append((3, False, "Lemma 5.1(2)"))
        if germ_kind is GermKind.DIVISORIAL:
            candidates.append((2, True, "Lemma 5.1(3)"))
    if germ_kind is GermKind.FLIPPING:
        candidates.append((2, True, "Lemma 5.1(4)"))
    bound, exact, clause = min(candidates, key=lambda c: (c[0], not c[1]))
    return BoundReport(True, bound, exact, clause)


# ---------------------------------------------------------------------------
# flip arithmetic


@dataclass(frozen=True)
class FlipGermData:
    index_x: int
    plus_indices: tuple[int, ...] = ()
    w_values: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.index_x < 1:
            raise ValueError("index must be >= 1")
        if any(i < 1 for i in self.plus_indices):
            raise ValueError("indices must be >= 1")
        for w in self.w_values or ():
            if not 0 <= w < 1:
                raise ValueError("contribution values must lie in [0, 1)")

    @property
    def index_plus(self) -> int:
        return lcm(*self.plus_indices) if self.plus_indices else 1


def flip_transfer(data: FlipGermData, k_dot_c: Fraction) -> Fraction:
    """Canonical degree of the flipped curve: index and degree trade places.

    index(X+) (K+ . C+) = -index(X) (K . C), with the flipped index the lcm of
    the point indices on the flipped side.
    """
    k_dot_c = Fraction(k_dot_c)
    if k_dot_c >= 0:
        raise ValueError("flipping needs a negative canonical degree")
    if (data.index_x * k_dot_c).denominator != 1:
        raise ValueError(
            f"index {data.index_x} times degree {k_dot_c} must be an integer"
        )
    return Fraction(-data.index_x * k_dot_c, data.index_plus)


def kc_from_w(w_values: list[Fraction]) -> Fraction:
    """Minus the canonical degree from the per-point contributions: 1 - sum."""
    total = Fraction(0)
    for w in w_values:
        w = Fraction(w)
        if not 0 <= w < 1:
            raise ValueError("contributions must lie in [0, 1)")
        total += w
    return 1 - total


@dataclass(frozen=True)
class Table2Row:
    germ_type: str
    source_label: str
    index_x: int
    k_dot_c: Fraction
    k_plus: Fraction
    plus_indices: tuple[int, ...]


def table2_rows(m_rigid: int = 5, m_mixed: int = 5) -> tuple[Table2Row, ...]:
    """The flip table for germ types beyond the chain kinds.

    The rigid and mixed rows carry a free odd parameter; callers pick the
    instances (defaults give the smallest ones).
    """
    if m_rigid < 5 or m_rigid % 2 == 0 or m_mixed < 5 or m_mixed % 2 == 0:
        raise ValueError("row parameters must be odd and >= 5")
    return (
        Table2Row("cD3", "A.1.2.1, A.1.2.2", 3, Fraction(-1, 3), Fraction(1, 2), (2,)),
        Table2Row("cD3", "A.1.2.3", 3, Fraction(-1, 3), Fraction(1), ()),
        Table2Row("IIA", "A.2.2.1", 4, Fraction(-1, 4), Fraction(1, 6), (2, 3)),
        Table2Row("IIA", "A.2.2.2-A.2.2.5", 4, Fraction(-1, 4), Fraction(1, 2), (2,)),
        Table2Row("IC", "A.3.2.1", m_rigid, Fraction(-1, m_rigid), Fraction(1, 2), (2,)),
        Table2Row("IC", "A.3.2.2", m_rigid, Fraction(-1, m_rigid), Fraction(1), ()),
        Table2Row("kAD", "A.4.3.2", 2 * m_mixed, Fraction(-1, 2 * m_mixed),
                  Fraction(1, 2), (2,)),
    )


@dataclass(frozen=True)
class Table2Check:
    row: Table2Row
    transferred: Fraction
    unit_pairing: bool  # index * |K.C| = 1
    consistent: bool


@dataclass(frozen=True)
class Table2Report:
    checks: tuple[Table2Check, ...]

    @property
    def all_consistent(self) -> bool:
        return all(c.consistent and c.unit_pairing for c in self.checks)


def check_table2(rows: tuple[Table2Row, ...] | None = None) -> Table2Report:
    """Recompute every flip-table row through flip_transfer and flag mismatches."""
    checks = []
    for row in rows if rows is not None else table2_rows():
        data = FlipGermData(row.index_x, row.plus_indices)
        got = flip_transfer(data, row.k_dot_c)
        checks.append(Table2Check(
            row, got,
            unit_pairing=(row.index_x * abs(row.k_dot_c) == 1),
            consistent=(got == row.k_plus),
        ))
    return Table2Report(tuple(checks))


# ---------------------------------------------------------------------------
# pushing canonical degrees through contraction chains


@dataclass(frozen=True)
class PushStep:
    kind: str  # "div" | "flip"
    local_index: int | None
    bound: Fraction
    strict: bool


@dataclass(frozen=True)
class BoundTrace:
    start: Fraction
    steps: tuple[PushStep, ...]
    floor: Fraction

    @property
    def final_bound(self) -> Fraction:
        return self.steps[-1].bound if self.steps else self.start

    @property
    def feasible(self) -> bool:
        if not self.steps:
            return True
        last = self.steps[-1]
        return last.bound > self.floor if last.strict else last.bound >= self.floor


def push_inequalities(
    start: Fraction | int,
    steps: list[tuple[str, int] | tuple[str]],
    floor: Fraction | int = Fraction(-1),
) -> BoundTrace:
    """Track the upper bound on a curve's canonical degree along contractions.

    Each divisorial step with local index n lowers the bound by 1/n; each flip
    lowers it strictly.  The trace records whether the final bound can still
    clear the floor (the degree of a curve on an extremal germ never drops
    below -1).
    """
    bound = Fraction(start)
    floor = Fraction(floor)
    out: list[PushStep] = []
    strict = False
    for step in steps:
        if step[0] == "div":
            n = step[1]  # type: ignore[misc]
            if n < 1:
                raise ValueError("local index must be >= 1")
            bound -= Fraction(1, n)
            out.append(PushStep("div", n, bound, strict))
        elif step[0] == "flip":
            strict = True
            out.append(PushStep("flip", None, bound, True))
        else:
            raise ValueError(f"unknown step {step!r}")
    return BoundTrace(Fraction(start), tuple(out), floor)


def divisorial_budget(
    start: Fraction | int, floor: Fraction | int = Fraction(-1), local_index: int = 1
) -> int:
    """Largest number of index-n divisorial steps keeping the bound above the floor."""
    start, floor = Fraction(start), Fraction(floor)
    if start < floor:
        return 0
    return int((start - floor) * local_index)


# ---------------------------------------------------------------------------
# descriptor files


class DescriptorError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


def parse_descriptor(text: str) -> GermDescriptor:
    components: list[ComponentType] = []
    kind: GermKind | None = None
    points: list[NonGorPoint] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "component" and len(tokens) == 2:
            try:
                components.append(ComponentType(tokens[1]))
            except ValueError:
                raise DescriptorError(f"unknown component type {tokens[1]!r}", lineno) from None
        elif tokens[0] == "kind" and len(tokens) == 2:
            try:
                kind = GermKind(tokens[1])
            except ValueError:
                raise DescriptorError(f"unknown kind {tokens[1]!r}", lineno) from None
        elif tokens[0] == "point":
            fields = dict(t.split("=", 1) for t in tokens[1:] if "=" in t)
            if "index" not in fields or "tag" not in fields:
                raise DescriptorError("point line needs index= and tag=", lineno)
            try:
                ell = int(fields["ell"]) if "ell" in fields else None
                points.append(NonGorPoint(int(fields["index"]), fields["tag"], ell))
            except ValueError as err:
                raise DescriptorError(str(err), lineno) from None
        else:
            raise DescriptorError(f"unknown keyword {tokens[0]!r}", lineno)
    if kind is None:
        raise DescriptorError("descriptor needs a kind line")
    if not components:
        raise DescriptorError("descriptor needs at least one component")
    return GermDescriptor(tuple(components), kind, tuple(points))
