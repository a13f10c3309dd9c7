import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germcalc.ell_calc import (
    EllDivisor,
    GlobalEllDivisor,
    MarkedPoint,
    Node,
    dual,
    ell_deg,
    glued_h0,
    glued_h1,
    h0,
    h1,
    node_invariant_dim,
    normalize,
    tensor,
    thm812_check,
)

P5 = MarkedPoint("P", 5)
P7 = MarkedPoint("P", 7)
R2 = MarkedPoint("R", 2)
R3 = MarkedPoint("R", 3)
R5 = MarkedPoint("R", 5)


class TestNormalForm:
    def test_single_carry(self):
        assert normalize(0, {P5: 7}) == EllDivisor(1, {P5: 2})

    def test_double_carry(self):
        got = normalize(-1, {P7: 12, R2: 2})
        assert got == EllDivisor(1, {P7: 5, R2: 0})
        assert got == EllDivisor(1, {P7: 5})  # zero weights are immaterial

    def test_odd_index_square(self):
        for m in range(3, 20, 2):
            p = MarkedPoint("P", m)
            a2 = EllDivisor(0, {p: (m - 1) // 2, R2: 1})
            assert tensor(a2, a2) == EllDivisor(1, {p: m - 1})

    def test_constructor_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            EllDivisor(0, {P5: 5})
        with pytest.raises(ValueError):
            EllDivisor(0, {P5: -1})

    def test_non_integer_weight_rejected(self):
        with pytest.raises(ValueError, match="integer"):
            normalize(0, {P5: F(1, 2)})


class TestTensorDual:
    def test_square_to_constant(self):
        b2 = EllDivisor(-1, {R2: 1})
        assert tensor(b2, b2) == EllDivisor(-1)

    def test_dual_example(self):
        assert dual(EllDivisor(-1, {P7: 6, R5: 1})) == EllDivisor(-1, {P7: 1, R5: 4})

    def test_dual_of_trivial(self):
        assert dual(EllDivisor(0)) == EllDivisor(0)

    def test_combined_display_decomposition(self):
        # with (m, m') = (7, 5): dual(A1) + 2 B1 lands on (-1 + 2P + 3R)
        m, mp, ap = 7, 5, 3
        p, r = MarkedPoint("P", m), MarkedPoint("R", mp)
        a1 = EllDivisor(-1, {p: m - 1, r: 1})
        b1 = EllDivisor(-1, {p: (m + 1) // 2, r: mp - ap})
        got = tensor(dual(a1), tensor(b1, b1))
        assert got == EllDivisor(-1, {p: 2, r: mp - 2})

    def test_index_mismatch_rejected(self):
        with pytest.raises(ValueError, match="index mismatch"):
            tensor(EllDivisor(0, {P5: 1}), EllDivisor(0, {P7: 1}))


def random_divisor(rng, points):
    return EllDivisor(
        rng.randint(-5, 5), {p: rng.randrange(p.index) for p in points}
    )


class TestDegreeAlgebra:
    def test_trivial(self):
        assert ell_deg(EllDivisor(0)) == 0

    def test_global_sum(self):
        node = Node("P", 5, lam=2)
        p, r = MarkedPoint("P", 5), MarkedPoint("R", 3)
        b = GlobalEllDivisor(
            [("C1", EllDivisor(-1, {p: 3, r: 1})), ("C2", EllDivisor(-1, {p: 4}))],
            node,
        )
        assert ell_deg(b) == F(-4, 15)
        a = GlobalEllDivisor(
            [("C1", EllDivisor(-1, {p: 4, r: 1})), ("C2", EllDivisor(0, {p: 2}))],
            node,
        )
        assert ell_deg(a) == F(8, 15)
        assert ell_deg(a) + 2 * ell_deg(b) == 0

    def test_thousand_random_identities(self):
        rng = random.Random(97)
        labels = "PQRST"
        for _ in range(1000):
            points = [
                MarkedPoint(lbl, rng.randint(2, 11))
                for lbl in rng.sample(labels, rng.randint(0, 3))
            ]
            x = random_divisor(rng, points)
            y = random_divisor(rng, points)
            assert ell_deg(tensor(x, y)) == ell_deg(x) + ell_deg(y)
            assert ell_deg(dual(x)) == -ell_deg(x)
            assert dual(dual(x)) == x
            assert h0(x) - h1(x) == x.c + 1

    @settings(max_examples=200, deadline=None)
    @given(st.integers(min_value=0, max_value=2**62))
    def test_tensor_associative_commutative(self, seed):
        rng = random.Random(seed)
        points = [MarkedPoint(lbl, rng.randint(2, 9)) for lbl in "PQR"]
        x, y, z = (random_divisor(rng, points) for _ in range(3))
        assert tensor(x, y) == tensor(y, x)
        assert tensor(tensor(x, y), z) == tensor(x, tensor(y, z))


class TestCohomology:
    def test_h1_of_deep_negative(self):
        p3 = MarkedPoint("P", 3)
        assert h1(EllDivisor(-2, {p3: 2, R2: 1})) == 1

    def test_h0_of_degree_zero(self):
        for m in range(3, 12, 2):
            p = MarkedPoint("P", m)
            assert h0(EllDivisor(0, {p: (m - 1) // 2, R2: 1})) == 1

    def test_minus_one_has_no_cohomology(self):
        assert h0(EllDivisor(-1, {P5: 4})) == 0
        assert h1(EllDivisor(-1, {P5: 4})) == 0

    def test_euler_characteristic(self):
        for c in range(-6, 6):
            d = EllDivisor(c, {P5: 3})
            assert h0(d) - h1(d) == c + 1


class TestNodeInvariants:
    def test_zero_weight_generator(self):
        assert node_invariant_dim(1, 0, 2, 5) == 0

    def test_identity_coordinate(self):
        assert node_invariant_dim(0, 1, 2, 5) == 1

    def test_obstruction_residues_vanish(self):
        for m in range(5, 50, 2):
            assert node_invariant_dim((4 - m) % m, (m - 2) % m, 2, m) == 0

    def test_both_slots(self):
        assert node_invariant_dim(0, 0, 2, 3) == 2


class TestGluedCohomology:
    def node(self, m):
        return Node("P", m, lam=1)

    def test_section_on_far_side_survives(self):
        m = 5
        p = MarkedPoint("P", m)
        a = GlobalEllDivisor(
            [
                ("C1", EllDivisor(-1, {p: 3, MarkedPoint("Q", 3): 1})),
                ("C2", EllDivisor(0, {p: 2, R2: 1})),
            ],
            self.node(m),
        )
        assert glued_h0(a) == 1

    def test_matching_condition_kills_lone_section(self):
        m = 5
        q = MarkedPoint("Q", 3)
        b = GlobalEllDivisor(
            [("C1", EllDivisor(0, {q: 1})), ("C2", EllDivisor(-1, {R2: 1}))],
            self.node(m),
        )
        assert glued_h0(b) == 0
        assert glued_h1(b) == 0

    def test_length_two_node_refused(self):
        p = MarkedPoint("P", 5)
        d = GlobalEllDivisor(
            [("C1", EllDivisor(0, {p: 2})), ("C2", EllDivisor(0, {p: 3}))],
            Node("P", 5, lam=2),
        )
        with pytest.raises(ValueError, match="length-2"):
            glued_h0(d)

    def test_non_complementary_weights_refused(self):
        p = MarkedPoint("P", 5)
        d = GlobalEllDivisor(
            [("C1", EllDivisor(0, {p: 2})), ("C2", EllDivisor(0, {p: 2}))],
            self.node(5),
        )
        with pytest.raises(ValueError, match="complementary"):
            glued_h0(d)

    def test_euler_characteristic_additivity(self):
        # chi(glued) = chi(C1) + chi(C2) - invariant node dimension
        rng = random.Random(5)
        for _ in range(200):
            m = rng.choice([3, 5, 7])
            p = MarkedPoint("P", m)
            w = rng.randrange(m)
            c1, c2 = rng.randint(-4, 4), rng.randint(-4, 4)
            d = GlobalEllDivisor(
                [("C1", EllDivisor(c1, {p: w})),
                 ("C2", EllDivisor(c2, {p: (m - w) % m}))],
                self.node(m),
            )
            nu = 1 if w % m == 0 else 0
            assert glued_h0(d) - glued_h1(d) == (c1 + 1) + (c2 + 1) - nu


class TestWidthInequality:
    def node(self):
        return Node("P", 5, lam=2)

    def section_data(self):
        p, r = MarkedPoint("P", 5), MarkedPoint("R", 3)
        a = GlobalEllDivisor(
            [("C1", EllDivisor(-1, {p: 4, r: 1})), ("C2", EllDivisor(0, {p: 2}))],
            self.node(),
        )
        b = GlobalEllDivisor(
            [("C1", EllDivisor(-1, {p: 3, r: 1})), ("C2", EllDivisor(-1, {p: 4}))],
            self.node(),
        )
        return a, b

    def test_zero_value_forces_fiber_case(self):
        a, b = self.section_data()
        res = thm812_check(a, b, 2, kind="unknown")
        assert res.value == 0 and res.verdict == "qcb_forced"

    def test_zero_value_contradicts_birational(self):
        a, b = self.section_data()
        assert thm812_check(a, b, 2, kind="birational").verdict == "contradiction"

    def test_negative_width_three(self):
        a, b = self.section_data()
        res = thm812_check(a, b, 3, kind="cb")
        assert res.verdict == "contradiction"
        assert res.scaled == F(-4, 15)
        assert res.value == F(-4, 45)

    def test_positive_value_holds(self):
        node = Node("P", 5, lam=1)
        p = MarkedPoint("P", 5)
        one = GlobalEllDivisor(
            [("C1", EllDivisor(1, {p: 0})), ("C2", EllDivisor(0, {p: 0}))], node
        )
        zero = GlobalEllDivisor(
            [("C1", EllDivisor(0, {p: 0})), ("C2", EllDivisor(0, {p: 0}))], node
        )
        res = thm812_check(one, zero, 2, kind="birational")
        assert res.value == F(1, 2) and res.verdict == "holds"
