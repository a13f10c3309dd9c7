"""Shared test helpers: independent oracles and random generators."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from germcalc.dual_graph import ConfigGraph, Vertex, VertexKind


def char_poly_coeffs(rows: list[list[int]]) -> list[Fraction]:
    """Coefficients c_1..c_n of det(tI - M) = t^n + c_1 t^(n-1) + ... + c_n.

    Faddeev-LeVerrier recursion over exact rationals; independent of the
    leading-minor route used by the package.
    """
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    coeffs: list[Fraction] = []
    work = [row[:] for row in m]
    for k in range(1, n + 1):
        ck = -sum(work[i][i] for i in range(n)) / k
        coeffs.append(ck)
        if k == n:
            break
        for i in range(n):
            work[i][i] += ck
        work = [
            [sum(m[i][t] * work[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
    return coeffs


def neg_def_by_char_poly(rows: list[list[int]]) -> bool:
    """Symmetric matrix is negative definite iff every char-poly coefficient is > 0."""
    return all(c > 0 for c in char_poly_coeffs(rows))


def random_symmetric(rng: random.Random, n: int, lo: int = -6, hi: int = 1):
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rng.randint(lo, hi)
    return rows


def random_tree_graph(rng: random.Random, n_exc: int, n_comp: int = 0) -> ConfigGraph:
    """Random tree with n_exc exceptional vertices (weights -6..-2) and
    n_comp components hung off random exceptional vertices."""
    vertices = [
        Vertex(f"e{i}", VertexKind.EXCEPTIONAL, rng.randint(-6, -2))
        for i in range(n_exc)
    ]
    edges = [(f"e{rng.randrange(i)}", f"e{i}") for i in range(1, n_exc)]
    for j in range(n_comp):
        vertices.append(Vertex(f"c{j}", VertexKind.COMPONENT, -1))
        edges.append((f"e{rng.randrange(n_exc)}", f"c{j}"))
    return ConfigGraph(vertices, edges)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260810)
