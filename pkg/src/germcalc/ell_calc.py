"""Exact arithmetic of orbifold line bundles on trees of rational curves.

A divisor here is a normal form (c + sum w_P P) on a single rational
component: an integer part c and one integer weight 0 <= w_P < m_P per marked
point of index m_P.  Tensor products add weights and carry overflow into c,
duals negate and renormalise.  The fractional degree is c + sum w_P / m_P;
on the underlying rational curve the sheaf has degree c, so section counts
are h0 = max(0, c + 1) and h1 = max(0, -c - 1).

Global divisors live on two components glued at one marked point.  Their
cohomology is only computed for the length-1 gluing pattern, through the
restriction sequence to the node; the length-2 pattern is handled by counting
invariant node sections with explicitly supplied residues, never inferred.

On top of the algebra sit two scripted impossibility runs.  Both follow the
width-d degree test: when a curve neighbourhood carries a filtration that is
monomializable of width d, the graded degrees must satisfy
deg(B) + deg(A)/d >= 0, strictly for birational contractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd


@dataclass(frozen=True)
class MarkedPoint:
    label: str
    index: int

    def __post_init__(self):
        if self.index < 2:
            raise ValueError("marked point index must be >= 2")


class EllDivisor:
    """Normal form c + sum w_P P on one component; immutable."""

    __slots__ = ("c", "_weights")

    def __init__(self, c: int, weights: dict[MarkedPoint, int] | None = None):
        weights = dict(weights or {})
        labels = [p.label for p in weights]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate point labels on one component")
        for p, w in weights.items():
            if not isinstance(w, int):
                raise ValueError(f"weight at {p.label} must be an integer, got {w!r}")
            if not 0 <= w < p.index:
                raise ValueError(f"weight {w} at {p.label} outside [0, {p.index})")
        object.__setattr__(self, "c", int(c))
        object.__setattr__(
            self, "_weights", tuple(sorted(weights.items(), key=lambda kv: kv[0].label))
        )

    def __setattr__(self, *_):
        raise AttributeError("EllDivisor is immutable")

    @property
    def points(self) -> tuple[MarkedPoint, ...]:
        return tuple(p for p, _ in self._weights)

    def weight(self, label: str) -> int:
        for p, w in self._weights:
            if p.label == label:
                return w
        return 0

    def index_of(self, label: str) -> int | None:
        for p, _ in self._weights:
            if p.label == label:
                return p.index
        return None

    def items(self) -> tuple[tuple[MarkedPoint, int], ...]:
        return self._weights

    def __eq__(self, other) -> bool:
        if not isinstance(other, EllDivisor):
            return NotImplemented
        mine = {p: w for p, w in self._weights if w != 0}
        theirs = {p: w for p, w in other._weights if w != 0}
        return self.c == other.c and mine == theirs

    def __hash__(self):
        live = sorted(((p.label, p.index, w) for p, w in self._weights if w))
        return hash((self.c, tuple(live)))

    def __repr__(self):
        parts = [str(self.c)]
        parts += [f"{w}*{p.label}[{p.index}]" for p, w in self._weights]
        return f"({' + '.join(parts)})"


def normalize(c: int, raw: dict[MarkedPoint, int]) -> EllDivisor:
    """Reduce raw integer weights mod the point indices, carrying into c."""
    weights = {}
    carry = 0
    for p, w in raw.items():
        if not isinstance(w, int):
            raise ValueError(f"weight at {p.label} must be an integer, got {w!r}")
        carry += w // p.index
        weights[p] = w % p.index
    return EllDivisor(c + carry, weights)


def _merged_points(*divisors: EllDivisor) -> dict[str, MarkedPoint]:
    universe: dict[str, MarkedPoint] = {}
    for div in divisors:
        for p, _ in div.items():
            if p.label in universe and universe[p.label].index != p.index:
                raise ValueError(
                    f"index mismatch at point {p.label!r}: "
                    f"{universe[p.label].index} vs {p.index}"
                )
            universe.setdefault(p.label, p)
    return universe


def tensor(a: EllDivisor, b: EllDivisor) -> EllDivisor:
    universe = _merged_points(a, b)
    raw = {p: a.weight(lbl) + b.weight(lbl) for lbl, p in universe.items()}
    return normalize(a.c + b.c, raw)


def dual(a: EllDivisor) -> EllDivisor:
    return normalize(-a.c, {p: -w for p, w in a.items()})


def ell_deg(div: "EllDivisor | GlobalEllDivisor") -> Fraction:
    if isinstance(div, GlobalEllDivisor):
        return sum((ell_deg(part) for _, part in div.parts), Fraction(0))
    return div.c + sum(Fraction(w, p.index) for p, w in div.items())


def h0(div: EllDivisor) -> int:
    return max(0, div.c + 1)


def h1(div: EllDivisor) -> int:
    return max(0, -div.c - 1)


def node_invariant_dim(g: int, t: int, lam: int, m: int) -> int:
    """Invariant sections over a length-lam node scheme.

    Counts j in [0, lam) with g + j t = 0 mod m, where g is the residue of the
    local generator and t the residue of the node coordinate.
    """
    if m < 2 or lam < 1:
        raise ValueError("need m >= 2 and lam >= 1")
    return sum(1 for j in range(lam) if (g + j * t) % m == 0)


@dataclass(frozen=True)
class Node:
    """The shared marked point of a two-component curve, with gluing length."""

    label: str
    index: int
    lam: int

    def __post_init__(self):
        if self.index < 2:
            raise ValueError("node index must be >= 2")
        if self.lam not in (1, 2):
            raise ValueError("gluing length must be 1 or 2")


class GlobalEllDivisor:
    """One divisor per component, over a shared node."""

    __slots__ = ("parts", "node")

    def __init__(self, parts: list[tuple[str, EllDivisor]], node: Node):
        names = [name for name, _ in parts]
        if len(set(names)) != len(names) or not parts:
            raise ValueError("component names must be nonempty and distinct")
        for name, div in parts:
            idx = div.index_of(node.label)
            if idx is not None and idx != node.index:
                raise ValueError(
                    f"component {name!r} carries the node {node.label!r} with "
                    f"index {idx}, expected {node.index}"
                )
        object.__setattr__(self, "parts", tuple(parts))
        object.__setattr__(self, "node", node)

    def __setattr__(self, *_):
        raise AttributeError("GlobalEllDivisor is immutable")

    def part(self, name: str) -> EllDivisor:
        return next(div for n, div in self.parts if n == name)

    def map_parts(self, fn) -> "GlobalEllDivisor":
        return GlobalEllDivisor([(n, fn(div)) for n, div in self.parts], self.node)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GlobalEllDivisor):
            return NotImplemented
        return self.node == other.node and self.parts == other.parts

    def __repr__(self):
        inner = ", ".join(f"{n}: {div!r}" for n, div in self.parts)
        return f"Global({inner}; node {self.node.label}@{self.node.index}, len {self.node.lam})"


def global_tensor(a: GlobalEllDivisor, b: GlobalEllDivisor) -> GlobalEllDivisor:
    if a.node != b.node or [n for n, _ in a.parts] != [n for n, _ in b.parts]:
        raise ValueError("global divisors live on different component universes")
    return GlobalEllDivisor(
        [(n, tensor(div, b.part(n))) for n, div in a.parts], a.node
    )


def global_dual(a: GlobalEllDivisor) -> GlobalEllDivisor:
    return a.map_parts(dual)


def glued_h0(div: GlobalEllDivisor) -> int:
    """Sections of a two-component divisor glued at a length-1 node.

    Node weights on the two sides must be complementary mod the index; the
    node fiber carries invariant sections only when they vanish mod the index,
    and in that case a nonzero section on either side evaluates nonzero there,
    imposing one matching condition.
    """
    w, parts = _glued_setup(div)
    total = h0(parts[0]) + h0(parts[1])
    if w % div.node.index == 0 and total > 0:
        total -= 1
    return total


def glued_h1(div: GlobalEllDivisor) -> int:
    w, parts = _glued_setup(div)
    invariant = 1 if w % div.node.index == 0 else 0
    matched = 1 if invariant and (h0(parts[0]) > 0 or h0(parts[1]) > 0) else 0
    return h1(parts[0]) + h1(parts[1]) + invariant - matched


def _glued_setup(div: GlobalEllDivisor):
    if div.node.lam != 1:
        raise ValueError(
            "cohomology across a length-2 node is not determined by component "
            "data alone; supply node residues to node_invariant_dim instead"
        )
    if len(div.parts) != 2:
        raise ValueError("gluing is implemented for two components")
    (n1, d1), (n2, d2) = div.parts
    w1, w2 = d1.weight(div.node.label), d2.weight(div.node.label)
    if (w1 + w2) % div.node.index:
        raise ValueError(
            f"node weights {w1} + {w2} are not complementary mod {div.node.index}"
        )
    return w1, (d1, d2)


# ---------------------------------------------------------------------------
# width-d degree test


@dataclass(frozen=True)
class WidthTestResult:
    value: Fraction  # deg(B) + deg(A)/d
    scaled: Fraction  # deg(A) + d*deg(B), the same sign
    verdict: str  # "holds" | "contradiction" | "qcb_forced"


def thm812_check(
    a: GlobalEllDivisor | EllDivisor,
    b: GlobalEllDivisor | EllDivisor,
    d: int,
    kind: str = "unknown",
) -> WidthTestResult:
    """Evaluate the width-d inequality deg(B) + deg(A)/d >= 0.

    A negative value contradicts the existence of the contraction; a zero
    value contradicts a birational one and otherwise forces the fiber-over-
    surface case.  ``kind`` is "birational", "cb" or "unknown".
    """
    if d < 2:
        raise ValueError("width must be >= 2")
    if kind not in ("birational", "cb", "unknown"):
        raise ValueError(f"unknown contraction kind {kind!r}")
    if isinstance(a, GlobalEllDivisor) != isinstance(b, GlobalEllDivisor):
        raise ValueError("mix of global and single-component divisors")
    if isinstance(a, GlobalEllDivisor) and isinstance(b, GlobalEllDivisor):
        if a.node != b.node or [n for n, _ in a.parts] != [n for n, _ in b.parts]:
            raise ValueError("global divisors live on different component universes")
    value = ell_deg(b) + Fraction(ell_deg(a), d)
    if value < 0:
        verdict = "contradiction"
    elif value == 0:
        verdict = "contradiction" if kind == "birational" else (
            "qcb_forced" if kind == "unknown" else "holds"
        )
    else:
        verdict = "holds"
    return WidthTestResult(value, d * value, verdict)


# ---------------------------------------------------------------------------
# scripted impossibility runs


@dataclass(frozen=True)
class TraceStep:
    name: str
    value: Fraction | None
    verdict: str  # "holds" | "forces_cb" | "contradiction"
    note: str = ""


@dataclass(frozen=True)
class DisproofTrace:
    script: str
    inputs: tuple[int, ...]
    status: str  # "contradiction" | "rejected"
    steps: tuple[TraceStep, ...] = ()
    rejection: str = ""
    rejection_value: Fraction | None = None

    def step(self, name: str) -> TraceStep:
        return next(s for s in self.steps if s.name == name)

    def render(self) -> list[str]:
        header = f"{self.script} inputs {self.inputs}: {self.status}"
        if self.status == "rejected":
            detail = self.rejection
            if self.rejection_value is not None:
                detail += f" (value {self.rejection_value})"
            return [header, f"  rejected: {detail}"]
        lines = [header]
        for s in self.steps:
            val = "" if s.value is None else f" = {s.value}"
            note = f"  [{s.note}]" if s.note else ""
            lines.append(f"  {s.name}{val} -> {s.verdict}{note}")
        return lines


def _reject(script: str, inputs, reason: str, value: Fraction | None = None) -> DisproofTrace:
    return DisproofTrace(script, tuple(inputs), "rejected", (), reason, value)


def _expect(label: str, got: EllDivisor, want: EllDivisor) -> None:
    if got != want:
        raise AssertionError(f"{label}: computed {got!r}, expected {want!r}")


def ic_disproof(m: int, m_prime: int, a_prime: int) -> DisproofTrace:
    """Degree-calculus run excluding a two-component germ with an index-m
    point of the rigid kind joined to a two-point chain component.

    The width-2 degree comes out as (m'+1-2a')/m'; a zero value forces the
    fiber-over-surface case and pins 2a' = m'+1 with m > m'.  The splitting
    obstruction then vanishes, the filtration extends to width 3, and the
    width-3 degree -(m+m')/(2mm') is strictly negative.
    """
    script = "ic"
    inputs = (m, m_prime, a_prime)
    if m < 5 or m % 2 == 0:
        return _reject(script, inputs, "m must be odd and >= 5")
    if m_prime < 3:
        return _reject(script, inputs, "m' must be >= 3")
    if not 0 < a_prime < m_prime:
        return _reject(script, inputs, "need 0 < a' < m'")
    if gcd(a_prime, m_prime) != 1:
        return _reject(script, inputs, "need gcd(a', m') = 1")
    kneg = Fraction(m + 1, 2 * m) - Fraction(a_prime, m_prime)
    if kneg >= 0:
        return _reject(script, inputs, "K-negativity fails", kneg)
    if 2 * (m_prime - a_prime) >= m_prime:
        return _reject(script, inputs, "need 2(m' - a') < m'")

    p = MarkedPoint("P", m)
    r = MarkedPoint("R", m_prime)
    node = Node("P", m, lam=2)
    a_div = GlobalEllDivisor(
        [
            ("C1", EllDivisor(-1, {p: m - 1, r: 1})),
            ("C2", EllDivisor(0, {p: 2})),
        ],
        node,
    )
    b_div = GlobalEllDivisor(
        [
            ("C1", EllDivisor(-1, {p: (m + 1) // 2, r: m_prime - a_prime})),
            ("C2", EllDivisor(-1, {p: m - 1})),
        ],
        node,
    )
    steps = [
        TraceStep("k-negativity", kneg, "holds"),
        TraceStep("deg-A", ell_deg(a_div), "holds"),
        TraceStep("deg-B", ell_deg(b_div), "holds"),
    ]

    width2 = thm812_check(a_div, b_div, 2, kind="unknown")
    expected2 = Fraction(m_prime + 1 - 2 * a_prime, m_prime)
    if width2.scaled != expected2:
        raise AssertionError(f"width-2 degree {width2.scaled} != {expected2}")
    if width2.verdict == "contradiction":
        steps.append(TraceStep("width-2-degree", width2.scaled, "contradiction",
                               "negative width-2 degree"))
        return DisproofTrace(script, inputs, "contradiction", tuple(steps))
    steps.append(TraceStep("width-2-degree", width2.scaled, "forces_cb",
                           "zero degree rules out the birational cases"))

    if not (2 * a_prime == m_prime + 1 and m > m_prime):
        raise AssertionError("forced parameter equality failed")
    steps.append(TraceStep("forced-equality", None, "holds", "2a' = m'+1 and m > m'"))

    obstruction = global_tensor(global_dual(a_div), global_tensor(b_div, b_div))
    _expect("obstruction on C1", obstruction.part("C1"),
            EllDivisor(-1, {p: 2, r: m_prime - 2}))
    _expect("obstruction on C2", obstruction.part("C2"),
            EllDivisor(-1, {p: m - 4}))
    for name in ("C1", "C2"):
        if h1(obstruction.part(name)) != 0:
            raise AssertionError(f"splitting obstruction does not vanish on {name}")
    steps.append(TraceStep("split-obstruction-h1", Fraction(0), "holds",
                           "both component obstructions have h1 = 0"))

    # node residues for the length-2 gluing, pinned from the weight tables:
    # the A-generator matches the node coordinate weight m-2, so the
    # obstruction generator sits at -(m-2) + 2*1 = 4 - m.
    nid = node_invariant_dim((4 - m) % m, (m - 2) % m, 2, m)
    if nid != 0:
        raise AssertionError("node invariants unexpectedly nonzero")
    steps.append(TraceStep("node-invariants", Fraction(nid), "holds",
                           "no invariant node sections: the extension splits"))

    width3 = thm812_check(a_div, b_div, 3, kind="cb")
    expected3 = -Fraction(m + m_prime, 2 * m * m_prime)
    if width3.scaled != expected3 or width3.scaled != ell_deg(b_div):
        raise AssertionError("width-3 degree mismatch")
    steps.append(TraceStep("width-3-degree", width3.scaled, "contradiction",
                           "width-3 inequality fails"))
    return DisproofTrace(script, inputs, "contradiction", tuple(steps))


def _kad_table(m: int, m_prime: int, a_prime: int, subcase: str):
    """Graded-sheaf normal forms for the chain-plus-heavy-point scripts."""
    p1 = MarkedPoint("P", m)
    q = MarkedPoint("Q", m_prime)
    p2 = MarkedPoint("P", m)
    r = MarkedPoint("R", 2)
    half_up = (m + 1) // 2
    half_down = (m - 1) // 2
    i2 = 0 if subcase == "kad" else -1
    a1 = EllDivisor(-1, {p1: half_up, q: m_prime - a_prime})
    b1 = EllDivisor(0, {q: 1})
    a2 = EllDivisor(i2, {p2: half_down, r: 1})
    b2 = EllDivisor(-1, {r: 1})
    om1 = EllDivisor(-1, {p1: half_up, q: m_prime - a_prime})
    om2 = EllDivisor(-1, {p2: half_down, r: 1})
    return p1, q, p2, r, a1, b1, a2, b2, om1, om2


def kad_disproof(m: int, m_prime: int, a_prime: int, subcase: str) -> DisproofTrace:
    """Cohomology-count run excluding a two-component germ with a chain
    component joined to a component carrying an extra index-2 point.

    ``subcase`` is "k3a" (forces m = 3, counts sections of the first two
    graded pieces) or "kad" (odd m >= 5, pushes the filtration one step
    further and ends on a multiplicity conflict).
    """
    script = f"kad/{subcase}"
    subcase = subcase.lower()
    inputs = (m, m_prime, a_prime)
    if subcase not in ("k3a", "kad"):
        raise ValueError("subcase must be 'k3a' or 'kad'")
    if subcase == "k3a" and m != 3:
        return _reject(script, inputs, "subcase k3a forces m = 3")
    if subcase == "kad" and (m < 5 or m % 2 == 0):
        return _reject(script, inputs, "subcase kad needs odd m >= 5")
    if m_prime < 3:
        return _reject(script, inputs, "m' must be >= 3")
    if not 0 < a_prime < m_prime:
        return _reject(script, inputs, "need 0 < a' < m'")
    if gcd(a_prime, m_prime) != 1:
        return _reject(script, inputs, "need gcd(a', m') = 1")
    if 2 * (m_prime - a_prime) >= m_prime:
        return _reject(
            script, inputs,
            f"m'-a' = {m_prime - a_prime} >= m'/2", Fraction(m_prime - a_prime)
        )

    p1, q, p2, r, a1, b1, a2, b2, om1, om2 = _kad_table(m, m_prime, a_prime, subcase)
    node = Node("P", m, lam=1)

    def glob(d1: EllDivisor, d2: EllDivisor) -> GlobalEllDivisor:
        return GlobalEllDivisor([("C1", d1), ("C2", d2)], node)

    a_glob, b_glob = glob(a1, a2), glob(b1, b2)
    gap = m_prime - a_prime
    steps: list[TraceStep] = []

    # the tensor-square/product table, recomputed and pinned
    _expect("A1^2", tensor(a1, a1), EllDivisor(-1, {p1: 1, q: 2 * gap}))
    _expect("B1^2", tensor(b1, b1), EllDivisor(0, {q: 2}))
    _expect("A1*B1", tensor(a1, b1), EllDivisor(-1, {p1: (m + 1) // 2, q: gap + 1}))
    _expect("B2^2", tensor(b2, b2), EllDivisor(-1))
    if subcase == "kad":
        _expect("A2^2", tensor(a2, a2), EllDivisor(1, {p2: m - 1}))
        _expect("A2*B2", tensor(a2, b2), EllDivisor(0, {p2: (m - 1) // 2}))
    else:
        _expect("A2^2", tensor(a2, a2), EllDivisor(-1, {p2: 2}))
        _expect("A2*B2", tensor(a2, b2), EllDivisor(-1, {p2: 1}))
    steps.append(TraceStep("degree-table", None, "holds", "graded normal forms verified"))

    for label, div in (("C1", om1), ("C2", om2)):
        if h0(div) or h1(div):
            raise AssertionError(f"canonical restriction to {label} has sections")
    steps.append(TraceStep("canonical-restrictions", Fraction(0), "holds",
                           "h0 = h1 = 0 on both components"))

    if subcase == "k3a":
        hh1 = h1(tensor(tensor(a2, b2), om2))
        _expect("A2*B2*om", tensor(tensor(a2, b2), om2), EllDivisor(-2, {p2: 2, r: 1}))
        steps.append(TraceStep("h1-a2b2-omega", Fraction(hh1), "holds"))
        hh2 = h1(tensor(tensor(b2, b2), om2))
        _expect("B2^2*om", tensor(tensor(b2, b2), om2), EllDivisor(-2, {p2: 1, r: 1}))
        steps.append(TraceStep("h1-b2sq-omega", Fraction(hh2), "holds"))
        if hh1 != 1 or hh2 != 1:
            raise AssertionError("expected h1 = 1 twice")
        steps.append(TraceStep("forces-conic-bundle", None, "forces_cb",
                               "h1 of the twisted square is >= 2"))
        h_gr1 = glued_h0(a_glob) + glued_h0(b_glob)
        steps.append(TraceStep("h0-gr1", Fraction(h_gr1), "holds"))
        h_sym = (
            glued_h0(global_tensor(a_glob, a_glob))
            + glued_h0(global_tensor(a_glob, b_glob))
            + glued_h0(global_tensor(b_glob, b_glob))
        )
        steps.append(TraceStep("h0-sym2", Fraction(h_sym), "holds"))
        if h_gr1 != 0 or h_sym != 0:
            raise AssertionError("expected no sections in weights 1 and 2")
        steps.append(TraceStep("section-count-conflict", None, "contradiction",
                               "two independent width-2 sections cannot fit in "
                               "h0 <= h0(sym2) + 1 = 1"))
        return DisproofTrace(script, inputs, "contradiction", tuple(steps))

    # kad, m >= 5
    gr1_omega_1 = tensor(om1, b1)
    gr1_omega_2 = tensor(om2, b2)
    _expect("om*B1", gr1_omega_1, EllDivisor(-1, {p1: (m + 1) // 2, q: gap + 1}))
    _expect("om*B2", gr1_omega_2, EllDivisor(-1, {p2: (m - 1) // 2}))
    if any(h0(x) or h1(x) for x in (gr1_omega_1, gr1_omega_2)):
        raise AssertionError("twisted weight-1 piece has sections")
    steps.append(TraceStep("gr1-omega-vanishing", Fraction(0), "holds"))

    split1 = tensor(tensor(b1, b1), dual(a1))
    obstruction1 = h1(split1)
    steps.append(TraceStep("split-check-c1", Fraction(obstruction1), "holds",
                           f"splitting obstruction {split1!r}"))
    d1, e1 = tensor(b1, b1), a1
    d2, e2 = EllDivisor(0), EllDivisor(-1, {p2: (m - 1) // 2, r: 1})
    mm1 = tensor(tensor(e1, b1), dual(d1))
    mm2 = tensor(tensor(e2, b2), dual(d2))
    _expect("E1*B1/D1", mm1, EllDivisor(-1, {p1: (m + 1) // 2, q: gap - 1}))
    _expect("E2*B2/D2", mm2, EllDivisor(-1, {p2: (m - 1) // 2}))
    obstruction2 = h1(mm1) + h1(mm2)
    steps.append(TraceStep("split-check-thickening", Fraction(obstruction2), "holds"))
    if obstruction1 or obstruction2:
        raise AssertionError("splitting obstruction does not vanish")

    oe1, oe2 = tensor(om1, e1), tensor(om2, e2)
    _expect("om*E1", oe1, EllDivisor(-1, {p1: 1, q: 2 * gap}))
    _expect("om*E2", oe2, EllDivisor(-1, {p2: m - 1}))
    if any(h0(x) or h1(x) for x in (oe1, oe2)):
        raise AssertionError("twisted splitting piece has sections")
    steps.append(TraceStep("omega-e-vanishing", Fraction(0), "holds"))

    key = tensor(oe2, b2)
    _expect("om*E*B2", key, EllDivisor(-2, {p2: m - 1, r: 1}))
    hk = h1(key)
    steps.append(TraceStep("h1-omega-e-b2", Fraction(hk), "forces_cb",
                           "nonvanishing h1 rules out the birational cases"))
    if hk != 1:
        raise AssertionError("expected h1 = 1 on the key twist")

    h_a = glued_h0(a_glob)
    h_b = glued_h0(b_glob)
    steps.append(TraceStep("h0-gr1", Fraction(h_a + h_b), "holds",
                           "the unique weight-1 section lives on C2"))
    if (h_a, h_b) != (1, 0):
        raise AssertionError("weight-1 section count off")
    sq_a = glued_h0(global_tensor(a_glob, a_glob))
    sq_ab = glued_h0(global_tensor(a_glob, b_glob))
    sq_b = glued_h0(global_tensor(b_glob, b_glob))
    c1_side = h0(tensor(a1, a1)) + h0(tensor(a1, b1)) + sq_b
    steps.append(TraceStep("h0-gr2", Fraction(sq_a + sq_ab + sq_b), "holds",
                           "all weight-2 sections restrict to zero on C1"))
    if (sq_a, sq_ab, sq_b) != (2, 1, 0) or c1_side != 0:
        raise AssertionError("weight-2 section count off")
    steps.append(TraceStep("multiplicity-conflict", None, "contradiction",
                           "a second base section must vanish to order 3 along "
                           "C1, against the length-4 budget"))
    return DisproofTrace(script, inputs, "contradiction", tuple(steps))


def ic_admissible(sweep_max: int = 49):
    """Input triples accepted by ic_disproof, with m, m' capped."""
    for m in range(5, sweep_max + 1, 2):
        for m_prime in range(3, sweep_max + 1):
            for a_prime in range(1, m_prime):
                if gcd(a_prime, m_prime) != 1:
                    continue
                if Fraction(m + 1, 2 * m) - Fraction(a_prime, m_prime) >= 0:
                    continue
                if 2 * (m_prime - a_prime) >= m_prime:
                    continue
                yield (m, m_prime, a_prime)


def kad_admissible(subcase: str, sweep_max: int = 49):
    ms = (3,) if subcase == "k3a" else tuple(range(5, sweep_max + 1, 2))
    for m in ms:
        for m_prime in range(3, sweep_max + 1):
            for a_prime in range(1, m_prime):
                if gcd(a_prime, m_prime) != 1:
                    continue
                if 2 * (m_prime - a_prime) >= m_prime:
                    continue
                yield (m, m_prime, a_prime)


@dataclass(frozen=True)
class SweepSummary:
    script: str
    total: int
    survivors: int  # tuples that reach the final step instead of failing early
    all_contradicted: bool
    notes: tuple[str, ...] = field(default_factory=tuple)


def ic_sweep(sweep_max: int = 49) -> SweepSummary:
    total = 0
    ok = True
    survivors: set[tuple[int, int, int]] = set()
    expected_survivors: set[tuple[int, int, int]] = set()
    for m, m_prime, a_prime in ic_admissible(sweep_max):
        total += 1
        if 2 * a_prime == m_prime + 1 and m > m_prime:
            expected_survivors.add((m, m_prime, a_prime))
        trace = ic_disproof(m, m_prime, a_prime)
        if trace.status != "contradiction":
            ok = False
        if any(s.name == "width-3-degree" for s in trace.steps):
            survivors.add((m, m_prime, a_prime))
    if survivors != expected_survivors:
        ok = False
    return SweepSummary("ic", total, len(survivors), ok)


def kad_sweep(subcase: str, sweep_max: int = 49) -> SweepSummary:
    total = 0
    ok = True
    for m, m_prime, a_prime in kad_admissible(subcase, sweep_max):
        total += 1
        trace = kad_disproof(m, m_prime, a_prime, subcase)
        if trace.status != "contradiction":
            ok = False
    return SweepSummary(f"kad/{subcase}", total, total, ok)
