"""Exact linear algebra: normal form laws, presentation invariance,
kernels and subgroups checked against brute-force oracles."""

import itertools
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from rspin.abelian import (
    FgAbGroup,
    HomZN,
    IntMatrix,
    element_order,
    group_from_presentation,
    hermite_normal_form,
    kernel_lattice,
    pontrjagin_dual,
    smith_normal_form,
    solve_in_lattice,
    subgroup_info,
)

small_entries = st.integers(min_value=-50, max_value=50)


def matrices(max_dim=6, entries=small_entries):
    return st.integers(min_value=0, max_value=max_dim).flatmap(
        lambda r: st.integers(min_value=0, max_value=max_dim).flatmap(
            lambda c: st.lists(
                st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r
            ).map(lambda rows: IntMatrix.from_rows(rows, cols=c))
        )
    )


def minors_gcd(a: IntMatrix, k: int) -> int:
    """gcd of all k x k minors, computed straight from the definition."""
    g = 0
    for rs in itertools.combinations(range(a.rows), k):
        for cs in itertools.combinations(range(a.cols), k):
            sub = IntMatrix.from_rows([[a.at(i, j) for j in cs] for i in rs], cols=k)
            g = gcd(g, sub.det())
    return g


class TestSmithNormalForm:
    def test_empty(self):
        s = smith_normal_form(IntMatrix.from_rows([], cols=0))
        assert s.s.rows == 0 and s.s.cols == 0

    def test_identity(self):
        s = smith_normal_form(IntMatrix.identity(2))
        assert s.s.to_rows() == [[1, 0], [0, 1]]

    def test_2x2(self):
        a = IntMatrix.from_rows([[2, 4], [6, 8]])
        s = smith_normal_form(a)
        assert list(s.s.diagonal()) == [2, 4]
        # oracle: d1 = gcd of entries, d1*d2 = |det|
        assert minors_gcd(a, 1) == 2
        assert abs(a.det()) == 8

    @given(matrices())
    def test_laws(self, a):
        s = smith_normal_form(a)
        assert (s.u @ a @ s.v).to_rows() == s.s.to_rows()
        assert s.u.det() in (1, -1)
        assert s.v.det() in (1, -1)
        d = list(s.s.diagonal())
        assert all(x >= 0 for x in d)
        for x, y in zip(d, d[1:]):
            assert y == 0 or (x != 0 and y % x == 0)

    @given(matrices(max_dim=4, entries=st.integers(min_value=-9, max_value=9)))
    @settings(max_examples=60)
    def test_minor_gcd_oracle(self, a):
        s = smith_normal_form(a)
        d = list(s.s.diagonal())
        for k in range(1, min(4, a.rows, a.cols) + 1):
            prod = 1
            for x in d[:k]:
                prod *= x
            assert prod == minors_gcd(a, k)

    def test_deterministic(self):
        a = IntMatrix.from_rows([[3, 1, 4], [1, 5, 9], [2, 6, 5]])
        s1, s2 = smith_normal_form(a), smith_normal_form(a)
        assert s1.u.to_rows() == s2.u.to_rows()
        assert s1.v.to_rows() == s2.v.to_rows()


class TestGroupFromPresentation:
    def test_relation_4_16(self):
        g = group_from_presentation(2, IntMatrix.from_rows([[4, 16]]))
        assert g == FgAbGroup(1, (4,))

    def test_free(self):
        assert group_from_presentation(1, IntMatrix.from_rows([], cols=1)) == FgAbGroup.free(1)

    def test_z6(self):
        g = group_from_presentation(2, IntMatrix.from_rows([[2, 0], [0, 3]]))
        assert g == FgAbGroup(0, (6,))
        # oracle: the quotient has 6 elements
        elems = {(a % 2, b % 3) for a in range(2) for b in range(3)}
        assert len(elems) == 6

    @given(
        st.lists(
            st.lists(st.integers(min_value=-9, max_value=9), min_size=3, max_size=3),
            min_size=1,
            max_size=4,
        ),
        st.randoms(use_true_random=False),
    )
    @settings(max_examples=60)
    def test_row_op_invariance(self, rows, rng):
        base = group_from_presentation(3, IntMatrix.from_rows(rows, cols=3))
        shuffled = rows[:]
        rng.shuffle(shuffled)
        assert group_from_presentation(3, IntMatrix.from_rows(shuffled, cols=3)) == base
        negated = [[-x for x in r] for r in rows]
        assert group_from_presentation(3, IntMatrix.from_rows(negated, cols=3)) == base
        if len(rows) >= 2:
            added = [r[:] for r in rows]
            added[0] = [x + y for x, y in zip(added[0], added[1])]
            assert group_from_presentation(3, IntMatrix.from_rows(added, cols=3)) == base


def brute_force_subgroup(n, gens, f_bound, coeff_bound):
    """All subgroup elements with free part in [-f_bound, f_bound],
    found by enumerating bounded coefficient vectors."""
    found = set()
    ranges = [range(-coeff_bound, coeff_bound + 1)] * len(gens)
    for coeffs in itertools.product(*ranges):
        f = sum(c * g[0] for c, g in zip(coeffs, gens))
        if abs(f) <= f_bound:
            t = sum(c * g[1] for c, g in zip(coeffs, gens)) % n
            found.add((f, t))
    return found


class TestSubgroupInfo:
    def test_full_ambient(self):
        info = subgroup_info(4, [(1, 0), (0, 1)])
        assert info.index == 1
        assert info.group == FgAbGroup(1, (4,))

    def test_index_two_in_z(self):
        info = subgroup_info(1, [(2, 0)])
        assert info.index == 2
        assert info.group == FgAbGroup.free(1)

    def test_index_two_with_torsion(self):
        # generators with the coordinates of the Hodge class and twice
        # the mu class at r = 2
        from rspin.classes import FormalClass, Lambda, MU, ModuliContext, coords_hom

        ctx = ModuliContext(2, 9, 1)
        hom = coords_hom(ctx, [FormalClass.single(Lambda(2)), FormalClass.single(MU, 2)])
        info = subgroup_info(4, hom.generator_images)
        assert info.index == 2

    def test_infinite_index(self):
        info = subgroup_info(4, [(0, 2)])
        assert info.index is None
        assert info.group == FgAbGroup(0, (2,))

    @given(
        st.integers(min_value=1, max_value=24),
        st.lists(
            st.tuples(st.integers(min_value=-8, max_value=8), st.integers(min_value=0, max_value=23)),
            min_size=1,
            max_size=2,
        ),
    )
    @settings(max_examples=40, deadline=None)
    def test_membership_vs_enumeration_two_gens(self, n, gens):
        gens = [(f, t % n) for f, t in gens]
        info = subgroup_info(n, gens)
        f_bound = 8
        oracle = brute_force_subgroup(n, gens, f_bound, coeff_bound=n * 8)
        for f in range(-f_bound, f_bound + 1):
            for t in range(n):
                assert info.contains((f, t)) == ((f, t) in oracle)

    @given(
        st.integers(min_value=1, max_value=8),
        st.lists(
            st.tuples(st.integers(min_value=-4, max_value=4), st.integers(min_value=0, max_value=7)),
            min_size=3,
            max_size=3,
        ),
    )
    @settings(max_examples=15, deadline=None)
    def test_membership_vs_enumeration_three_gens(self, n, gens):
        gens = [(f, t % n) for f, t in gens]
        info = subgroup_info(n, gens)
        f_bound = 4
        oracle = brute_force_subgroup(n, gens, f_bound, coeff_bound=4 * n)
        for f in range(-f_bound, f_bound + 1):
            for t in range(n):
                assert info.contains((f, t)) == ((f, t) in oracle)


class TestKernelLattice:
    def test_injective(self):
        k = kernel_lattice(HomZN(1, ((1, 0),)))
        assert k.rows == 0

    def test_projection_to_z2(self):
        k = kernel_lattice(HomZN(2, ((0, 1), (0, 0))))
        assert k.to_rows() == [[2, 0], [0, 1]]

    def test_rank_one_relation(self):
        # free/torsion coordinates of the r = 2 generating pair
        k = kernel_lattice(HomZN(4, ((4, 1), (-1, 0))))
        assert k.rows == 1
        row = list(k.row(0))
        assert row in ([4, 16], [-4, -16])
        # brute-force oracle over a coefficient box
        sols = [
            (a, b)
            for a in range(-64, 65)
            for b in range(-64, 65)
            if 4 * a - b == 0 and a % 4 == 0
        ]
        nonzero = [s for s in sols if s != (0, 0)]
        assert min(abs(a) for a, b in nonzero) == 4
        for s in sols:
            assert solve_in_lattice(k, list(s)) is not None

    @given(
        st.integers(min_value=1, max_value=12),
        st.lists(
            st.tuples(st.integers(min_value=-6, max_value=6), st.integers(min_value=0, max_value=11)),
            min_size=1,
            max_size=3,
        ),
    )
    @settings(max_examples=40, deadline=None)
    def test_kernel_box_oracle(self, n, images):
        images = tuple((f, t % n) for f, t in images)
        k = kernel_lattice(HomZN(n, images))

        def maps_to_zero(coeffs):
            f = sum(c * im[0] for c, im in zip(coeffs, images))
            t = sum(c * im[1] for c, im in zip(coeffs, images)) % n
            return f == 0 and t == 0

        for i in range(k.rows):
            assert maps_to_zero(k.row(i))
        for coeffs in itertools.product(*[range(-5, 6)] * len(images)):
            if maps_to_zero(coeffs):
                assert solve_in_lattice(k, list(coeffs)) is not None


class TestHermite:
    def test_canonical(self):
        h = hermite_normal_form([[2, 4], [0, 0], [6, 8]], 2)
        assert h.to_rows() == [[2, 0], [0, 4]]

    def test_lattice_equality(self):
        a = hermite_normal_form([[1, 2], [3, 4]], 2)
        b = hermite_normal_form([[3, 4], [4, 6]], 2)
        assert a.to_rows() == b.to_rows()


class TestElementOrder:
    @pytest.mark.parametrize("n,t,expected", [(24, 6, 4), (24, 0, 1), (24, 3, 8)])
    def test_examples(self, n, t, expected):
        assert element_order(n, t) == expected


class TestPontrjaginDual:
    def test_self_dual(self):
        for g in [FgAbGroup.cyclic(4), FgAbGroup(0, (2, 8)), FgAbGroup.trivial()]:
            assert pontrjagin_dual(g) == g

    def test_rejects_free(self):
        with pytest.raises(ValueError):
            pontrjagin_dual(FgAbGroup.free(1))


class TestFgAbGroup:
    def test_canonical_from_orders(self):
        assert FgAbGroup.from_orders([2, 3]) == FgAbGroup.cyclic(6)
        assert FgAbGroup.from_orders([4, 6]) == FgAbGroup(0, (2, 12))

    def test_str(self):
        assert str(FgAbGroup.trivial()) == "0"
        assert str(FgAbGroup(1, (4,))) == "Z ⊕ Z/4"
