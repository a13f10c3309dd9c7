"""Codiscrepancies of exceptional clusters and adjunction on fiber components.

For a cluster with intersection matrix M and weights a_j = -self_int the
codiscrepancy coefficients d solve M d = (2 - a_j): the contracted canonical
class pulls back with an extra effective divisor sum(d_j E_j), and adjunction
on each smooth rational E_j gives the right-hand side.  A fiber component
(always a (-1)-curve here) then meets the contracted surface canonical class
in -1 + sum of the coefficients of its exceptional neighbours.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .dual_graph import Cluster, ConfigGraph, VertexKind, intersection_matrix, is_negative_definite
from .exactlinalg import solve_exact


class ContractibilityError(ValueError):
    """The cluster is not negative definite, so it does not contract."""


class SingClass(Enum):
    LOG_TERMINAL = "log_terminal"
    LOG_CANONICAL_STRICT = "log_canonical_strict"
    NOT_LOG_CANONICAL = "not_log_canonical"


@dataclass(frozen=True)
class Codiscrepancy:
    cluster: tuple[str, ...]
    coeffs: dict[str, Fraction]

    def max_coeff(self) -> Fraction:
        return max(self.coeffs.values())


@dataclass(frozen=True)
class KEntry:
    component: str
    value: Fraction
    k_negative: bool


@dataclass(frozen=True)
class KReport:
    entries: tuple[KEntry, ...]
    germ_feasible: bool

    def value(self, component: str) -> Fraction:
        return next(e.value for e in self.entries if e.component == component)


def codiscrepancy(g: ConfigGraph, cluster: Cluster | tuple[str, ...] | list[str]) -> Codiscrepancy:
    """Solve for the unique effective codiscrepancy on one cluster."""
    ids = tuple(cluster.ids if isinstance(cluster, Cluster) else cluster)
    m = intersection_matrix(g, ids)
    if not is_negative_definite(m):
        raise ContractibilityError(
            f"cluster ({', '.join(ids)}) is not negative definite and cannot be contracted"
        )
    rhs = [2 + g.by_id[v].self_int for v in ids]  # 2 - a_j with a_j = -self_int
    sol = solve_exact(m.as_lists(), rhs)
    coeffs = dict(zip(ids, sol))
    # effectivity is forced for negative-definite clusters with all a_j >= 2
    bad = [v for v, d in coeffs.items() if d < 0]
    if bad:
        raise AssertionError(f"negative codiscrepancy coefficient at {bad[0]}")
    return Codiscrepancy(ids, coeffs)


def singularity_class(d: Codiscrepancy) -> SingClass:
    top = d.max_coeff()
    if top < 1:
        return SingClass.LOG_TERMINAL
    if top == 1:
        return SingClass.LOG_CANONICAL_STRICT
    return SingClass.NOT_LOG_CANONICAL


def k_dot_components(g: ConfigGraph, codiscrepancies: list[Codiscrepancy]) -> KReport:
    """Per-component canonical degrees -1 + sum of adjacent coefficients.

    The degree is negative exactly when the adjacent coefficients sum below 1;
    a zero value is reported as infeasible (the contraction needs strictly
    negative degrees).
    """
    coeff: dict[str, Fraction] = {}
    for d in codiscrepancies:
        coeff.update(d.coeffs)
    for v in g.exceptional_ids():
        if v not in coeff:
            raise ValueError(f"no codiscrepancy supplied for exceptional vertex {v!r}")
    entries = []
    for v in g.vertices:
        if v.kind is not VertexKind.COMPONENT:
            continue
        total = sum((coeff[nb] for nb in g.adjacency[v.id] if nb in coeff), Fraction(0))
        value = Fraction(-1) + total
        entries.append(KEntry(v.id, value, value < 0))
    return KReport(tuple(entries), all(e.k_negative for e in entries))
