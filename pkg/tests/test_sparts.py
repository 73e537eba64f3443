import itertools

import pytest

from superjack.errors import ValidationError
from superjack.ratfunc import ALPHA, AlphaRational
from superjack import sparts
from superjack.sparts import (
    EMPTY,
    Superpartition,
    arm_leg,
    block,
    blocks_up_to,
    column_op,
    contains,
    dominance_leq,
    extremes,
    from_pair,
    is_strip,
    min_length,
    parse,
    row_op,
    to_string,
)


def S(text):
    return parse(text)


# -- construction and views -------------------------------------------------


def test_from_pair_figure_example():
    # filled (4,3,3,1,1) over plain (3,3,2,1) is the diagram with circles
    # in rows 1, 3, 5
    sp = from_pair((3, 3, 2, 1), (4, 3, 3, 1, 1))
    assert sp == S("3,2,0;3,1")


def test_from_pair_pure_partition():
    sp = from_pair((2, 1), (2, 1))
    assert sp == S("2,1") and sp.m == 0


def test_from_pair_two_circles_one_column():
    with pytest.raises(ValidationError) as err:
        from_pair((1, 1), (2, 2))
    assert "column" in str(err.value)


def test_from_pair_two_circles_one_row():
    with pytest.raises(ValidationError) as err:
        from_pair((1,), (3,))
    assert "row" in str(err.value)


def test_star_circled_sorting():
    sp = S("3,1,0;5,4,3")
    # oracle: re-sort the part multisets by hand
    assert sp.star() == tuple(sorted([3, 1, 0, 5, 4, 3], reverse=True))[:5]
    assert sp.star() == (5, 4, 3, 3, 1)
    assert sp.circled() == tuple(sorted([4, 2, 1, 5, 4, 3], reverse=True))
    assert sp.circled() == (5, 4, 4, 3, 2, 1)


def test_single_circle_views():
    sp = S("0;")
    assert sp.star() == () and sp.circled() == (1,)


def test_pure_partition_views():
    sp = S("2,1")
    assert sp.star() == sp.circled() == (2, 1)


def test_validation_rejects_bad_parts():
    with pytest.raises(ValidationError):
        Superpartition((1, 1), ())
    with pytest.raises(ValidationError):
        Superpartition((), (1, 2))
    with pytest.raises(ValidationError):
        Superpartition((), (0,))


def test_round_trip_from_pair():
    for n, m in blocks_up_to(6, 3):
        for sp in block(n, m):
            assert from_pair(sp.star(), sp.circled()) == sp


# -- conjugation ------------------------------------------------------------


def test_conjugate_figure_example():
    assert S("3,1,0;5,4,3").conjugate() == S("5,4,2;4,1")


def test_conjugate_single_circle():
    assert S("0;").conjugate() == S("0;")


def test_conjugate_involution_exhaustive():
    for n, m in blocks_up_to(5, 2):
        for sp in block(n, m):
            assert sp.conjugate().conjugate() == sp


# -- text form ----------------------------------------------------------------


def test_parse_and_print():
    assert to_string(S(" 3 ,1; 2 ")) == "3,1;2"
    assert to_string(S("4,2,1")) == "4,2,1"
    assert to_string(EMPTY) == ";"
    assert parse(";") == EMPTY
    assert parse("") == EMPTY
    with pytest.raises(ValidationError):
        parse("1,1;2")
    with pytest.raises(ValidationError):
        parse("2,x")


# -- orders -------------------------------------------------------------------


def test_dominance_basic():
    assert dominance_leq(S("0;1"), S("1;"))
    for sp in block(3, 1):
        assert dominance_leq(sp, sp)
    with pytest.raises(ValidationError):
        dominance_leq(S("1;"), S("2;"))


def test_standard_implies_weak_and_converse_fails():
    converse_failures = []
    for n, m in blocks_up_to(5, 2):
        for lo, hi in itertools.permutations(block(n, m), 2):
            if dominance_leq(lo, hi, "standard"):
                assert dominance_leq(lo, hi, "weak")
            elif dominance_leq(lo, hi, "weak"):
                converse_failures.append((lo, hi))
    assert converse_failures, "expected some weakly comparable incomparable pair"
    # record one instance: (3,2;) sits weakly below (1,0;4) but the two are
    # incomparable in the standard order
    assert (S("3,2;"), S("1,0;4")) in converse_failures


def test_orders_are_partial_orders():
    for n, m in blocks_up_to(5, 2):
        sps = block(n, m)
        for order in ("standard", "weak"):
            for x, y in itertools.permutations(sps, 2):
                if dominance_leq(x, y, order) and dominance_leq(y, x, order):
                    assert x == y
            for x, y, z in itertools.permutations(sps, 3):
                if dominance_leq(x, y, order) and dominance_leq(y, z, order):
                    assert dominance_leq(x, z, order)


# -- containment --------------------------------------------------------------


def test_contains_examples():
    assert contains(S("0;3,2"), S("3,0;3,1"))
    assert not contains(S("2,1;3"), S("3,0;3,1"))
    for n, m in blocks_up_to(4, 2):
        for sp in block(n, m):
            assert contains(EMPTY, sp)


# -- contents -----------------------------------------------------------------


def test_contents_figure_example():
    bos, ferm = S("3,2,0;3,1").contents()
    assert bos == frozenset({(1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (4, 1)})
    assert (1, 1) in ferm and (1, 4) in ferm and (3, 3) in ferm


def test_contents_pure_partition():
    bos, ferm = S("3,1").contents()
    assert ferm == frozenset()
    assert len(bos) == 4


def test_contents_counts():
    for n, m in blocks_up_to(6, 3):
        for sp in block(n, m):
            bos, ferm = sp.contents()
            assert len(bos) == sp.n - m * (m - 1) // 2
            assert bos | ferm == frozenset(sp.cells_circled())
            assert not (bos & ferm)


# -- skew shapes --------------------------------------------------------------


def test_skew_cells_plain_example():
    assert sorted(S("3,1;2").skew_cells()) == [(1, 3), (1, 4), (2, 2), (3, 1), (3, 2)]


def test_skew_cells_count():
    for n, m in blocks_up_to(5, 2):
        for sp in block(n, m):
            assert len(sp.skew_cells()) == sp.n + m - m * (m + 1) // 2


def test_skew_cells_tilde_example():
    assert sorted(S("3,0;2,1").skew_cells(tilde=True)) == [
        (1, 2),
        (1, 3),
        (2, 1),
        (2, 2),
        (3, 1),
    ]
    with pytest.raises(ValidationError):
        S("2,1").skew_cells(tilde=True)


# -- arms and legs ------------------------------------------------------------


def test_arm_leg_worked_example():
    assert arm_leg((8, 5, 5, 3, 1), (3, 2)) == (3, 1, 1, 2)


def test_arm_leg_single_cell():
    assert arm_leg((1,), (1, 1)) == (0, 0, 0, 0)
    with pytest.raises(ValidationError):
        arm_leg((1,), (1, 2))


def test_leg_equals_conjugate_arm():
    for size in range(1, 9):
        for lam in sparts.partitions_of(size):
            conj = sparts.conjugate_partition(lam)
            for i in range(1, len(lam) + 1):
                for j in range(1, lam[i - 1] + 1):
                    assert arm_leg(lam, (i, j))[2] == arm_leg(conj, (j, i))[0]


# -- hooks --------------------------------------------------------------------


def test_lower_hooks_worked_example():
    # bosonic cells of (4,2,0;2) carry lower hooks multiplying to
    # (3+3a)(2+a)(1+a)^2
    sp = S("4,2,0;2")
    bos, _ = sp.contents()
    prod = AlphaRational(1)
    for cell in bos:
        prod = prod * sp.hooks(cell)[1]
    expected = (
        AlphaRational((3, 3)) * AlphaRational((2, 1)) * AlphaRational((1, 1)) ** 2
    )
    assert prod == expected


def test_hooks_agree_on_fermionic_cells():
    for n, m in blocks_up_to(5, 2):
        for sp in block(n, m):
            _, ferm = sp.contents()
            for cell in ferm:
                up, lo = sp.hooks(cell)
                assert up == lo


def test_hook_conjugation_relation():
    # lower hook at (i,j) equals a times the upper hook of the conjugate
    # at (j,i) with the parameter inverted
    for n, m in blocks_up_to(5, 2):
        for sp in block(n, m):
            conj = sp.conjugate()
            for cell in sp.cells_circled():
                i, j = cell
                lower = sp.hooks(cell)[1]
                upper_conj = conj.hooks((j, i))[0]
                assert lower == ALPHA * upper_conj.subs_inv_alpha()


def test_hooks_outside_diagram():
    with pytest.raises(ValidationError):
        S("1;").hooks((2, 1))


# -- strips ---------------------------------------------------------------


def test_strip_figure_example():
    # the worked diagram pair: (4,1;2,1) over (1,0;3,1) is a horizontal
    # 3-strip but not a vertical one
    lam, om = S("4,1;2,1"), S("1,0;3,1")
    assert is_strip(lam, om, 3, "horizontal")
    assert not is_strip(lam, om, 3, "vertical")
    # the misprinted companion (2,0;3,1) is not even contained
    assert not contains(S("2,0;3,1"), lam)
    assert not is_strip(lam, S("2,0;3,1"), 3, "horizontal")


def test_strip_tilde_example():
    assert is_strip(S("3,0;2,1"), S("2;2"), 2, "vertical", tilde=True)


def test_strip_trivial():
    for sp in block(3, 1):
        assert is_strip(sp, sp, 0, "horizontal")
        assert is_strip(sp, sp, 0, "vertical")


def test_strip_conjugation_swaps_kinds():
    degrees = [(3, 1), (4, 1), (4, 2)]
    for n, m in degrees:
        for lam in block(n, m):
            for dn in (1, 2):
                for n2, m2 in blocks_up_to(n, m, min_n=max(0, n - dn)):
                    if n2 > n or (n - n2) > dn:
                        continue
                    for om in block(n2, m2):
                        for tilde in (False, True):
                            if tilde and m != om.m + 1:
                                continue
                            if not tilde and m != om.m:
                                continue
                            size = n - n2
                            h = is_strip(lam, om, size, "horizontal", tilde)
                            v = is_strip(
                                lam.conjugate(), om.conjugate(), size, "vertical", tilde
                            )
                            assert h == v


# -- column and row operations ---------------------------------------------


def test_column_op_figure():
    # left diagram: filled (4,3,2,2), circles in rows 2 and 4
    assert column_op(S("2,1;4,2"), "C") == S("1,0;3,1")
    # right diagram: bottom circle removed, length drops by one
    before = S("3,1,0;2")
    after = column_op(before, "C_tilde")
    assert after == S("3,1;2")
    assert after.length() == before.length() - 1


def test_column_op_to_empty():
    assert column_op(S("1,1,1"), "C") == EMPTY


def test_column_op_preconditions():
    with pytest.raises(ValidationError) as err:
        column_op(S("3,1,0;2"), "C")
    assert "C_tilde" in str(err.value)
    with pytest.raises(ValidationError) as err:
        column_op(S("2,1;4,2"), "C_tilde")
    assert "use C" in str(err.value)


def test_row_op_figure():
    # R on the pictured diagram removes the plain first row of length 4
    assert row_op(S("2,1;4,2"), "R") == S("2,1;2")
    assert row_op(S("3"), "R") == EMPTY
    # R_tilde turns the circled first row (length k) into a plain k+1 row
    assert row_op(S("3,1;2,1"), "R_tilde") == S("1;4,2,1")
    assert row_op(S("3,1;2,1"), "R_then_Rtilde") == S("1;2,1")


def test_row_op_preconditions():
    with pytest.raises(ValidationError):
        row_op(S("3,1;2,1"), "R")
    with pytest.raises(ValidationError):
        row_op(S("2,1;4,2"), "R_tilde")


# -- extremes and enumeration ------------------------------------------------


def test_extremes_examples():
    lo, hi = extremes(4, 2)
    assert lo == S("1,0;1,1,1")
    assert hi == lo.conjugate()
    lo, hi = extremes(4, 0)
    assert lo == S("1,1,1,1") and hi == S("4")
    lo, hi = extremes(1, 1)
    assert lo == S("0;1") and hi == S("1;") and hi == lo.conjugate()
    with pytest.raises(ValidationError):
        extremes(0, 2)


def test_extremes_are_extreme():
    for n, m in blocks_up_to(5, 2):
        lo, hi = extremes(n, m)
        for sp in block(n, m):
            assert dominance_leq(lo, sp)
            assert dominance_leq(sp, hi)


def test_block_small_cases():
    assert [to_string(sp) for sp in block(1, 1)] == ["1;", "0;1"]
    assert [to_string(sp) for sp in block(3, 0)] == ["3", "2,1", "1,1,1"]


def test_block_matches_bruteforce_count():
    # independent generator straight from the definition
    def brute(n, m):
        count = 0
        for a in itertools.product(range(n + 1), repeat=m):
            if list(a) != sorted(a, reverse=True) or len(set(a)) != m:
                continue
            if sum(a) > n:
                continue
            count += sum(1 for _ in sparts.partitions_of(n - sum(a)))
        return count

    for n, m in blocks_up_to(5, 3):
        sps = block(n, m)
        assert len(sps) == len(set(sps)) == brute(n, m)


def test_block_order_refines_dominance():
    for n, m in blocks_up_to(5, 2):
        sps = block(n, m)
        index = {sp: i for i, sp in enumerate(sps)}
        for x, y in itertools.permutations(sps, 2):
            if dominance_leq(x, y) and x != y:
                assert index[y] < index[x]


# -- statistics ---------------------------------------------------------------


def test_stats_examples():
    b, eps, eps2, z, nf = S("2").stats()
    assert b == 0 and eps == ALPHA
    _, _, eps2, _, _ = S("0;1").stats()
    assert eps2 == AlphaRational(-1)
    assert S("2,1,1").z_statistic() == 4
    assert S("1,1,1").nfact() == 6


def test_eigenvalues_separate_comparable_pairs():
    for n, m in blocks_up_to(6, 3):
        sps = block(n, m)
        for x, y in itertools.combinations(sps, 2):
            if dominance_leq(x, y) or dominance_leq(y, x):
                assert x.eigenvalue_pair() != y.eigenvalue_pair()


def test_empty_superpartition():
    assert EMPTY.degree == (0, 0)
    assert EMPTY.star() == () and EMPTY.circled() == ()
    assert EMPTY.conjugate() == EMPTY
    assert block(0, 0) == (EMPTY,)


def test_faithful_nvars():
    assert sparts.faithful_nvars(4, 2) == 5  # lowest shape (1,0;1,1,1)
    assert sparts.faithful_nvars(3, 0) == 3
    assert sparts.faithful_nvars(11, 3) == 11
    for n, m in blocks_up_to(5, 2):
        cap = sparts.faithful_nvars(n, m)
        for sp in block(n, m):
            assert sp.length() <= cap
