import pytest

from leibniz_lab.algebra import is_lie, is_nilpotent, verify_leibniz
from leibniz_lab.blocks import (
    CanonicalBlock,
    algebra_from_blocks,
    b_param_normalize,
    blocks_name,
    canonical_block_matrix,
    direct_sum_matrix,
    form_from_algebra,
    has_zero_summand,
    is_skew_matrix,
    normalize_blocks,
    parse_block_name,
)
from leibniz_lab.errors import InvalidBlock, PreconditionFailed
from leibniz_lab.linalg import scalar_matrix
from leibniz_lab.scalars import Scalar

S = Scalar.parse


def B(kind, size, param=None):
    return CanonicalBlock(kind, size, S(param) if param else None)


def test_smallest_blocks_match_their_stated_matrices():
    assert canonical_block_matrix(B("A", 1)) == scalar_matrix([["0"]])
    assert canonical_block_matrix(B("C", 1)) == scalar_matrix([["1"]])
    assert canonical_block_matrix(B("B", 2, "c")) == scalar_matrix([["0", "1"], ["c", "0"]])
    assert canonical_block_matrix(B("E", 2)) == scalar_matrix([["0", "1"], ["-1", "1"]])
    assert canonical_block_matrix(B("F", 2)) == scalar_matrix([["0", "1"], ["-1", "0"]])


def test_a3_and_c3_matrices():
    assert canonical_block_matrix(B("A", 3)) == scalar_matrix(
        [["0", "0", "1"], ["0", "0", "0"], ["0", "1", "0"]]
    )
    assert canonical_block_matrix(B("C", 3)) == scalar_matrix(
        [["0", "0", "1"], ["0", "1", "1"], ["1", "-1", "0"]]
    )


def test_b4_d4_e4_matrices():
    assert canonical_block_matrix(B("B", 4, "c")) == scalar_matrix(
        [
            ["0", "0", "0", "1"],
            ["0", "0", "1", "c"],
            ["0", "c", "0", "0"],
            ["c", "1", "0", "0"],
        ]
    )
    assert canonical_block_matrix(B("D", 4)) == scalar_matrix(
        [
            ["0", "0", "0", "1"],
            ["0", "0", "1", "1"],
            ["0", "1", "0", "0"],
            ["1", "-1", "0", "0"],
        ]
    )
    assert canonical_block_matrix(B("E", 4)) == scalar_matrix(
        [
            ["0", "0", "0", "1"],
            ["0", "0", "1", "1"],
            ["0", "-1", "1", "0"],
            ["-1", "1", "0", "0"],
        ]
    )


def test_block_validation():
    with pytest.raises(InvalidBlock):
        B("A", 2)
    with pytest.raises(InvalidBlock):
        B("B", 3, "c")
    with pytest.raises(InvalidBlock):
        B("D", 6)  # size/2 = 3 odd
    with pytest.raises(InvalidBlock):
        B("F", 4)  # size/2 = 2 even
    with pytest.raises(InvalidBlock):
        B("B", 2, "1")
    with pytest.raises(InvalidBlock):
        B("B", 2, "-1")
    with pytest.raises(InvalidBlock):
        B("E", 2).parameter or CanonicalBlock("E", 2, S("2"))
    with pytest.raises(InvalidBlock):
        B("B", 2)


def test_direct_sum_matrix():
    m = direct_sum_matrix([B("A", 3), B("C", 1)])
    assert m == scalar_matrix(
        [
            ["0", "0", "1", "0"],
            ["0", "0", "0", "0"],
            ["0", "1", "0", "0"],
            ["0", "0", "0", "1"],
        ]
    )
    assert direct_sum_matrix([]) == ()
    f2f2 = direct_sum_matrix([B("F", 2), B("F", 2)])
    assert is_skew_matrix(f2f2)


def test_algebra_from_blocks_products():
    A = algebra_from_blocks([B("A", 3)])
    assert A.products() == {(1, 3): [(4, S("1"))], (3, 2): [(4, S("1"))]}
    A6 = algebra_from_blocks([B("C", 1)] * 3)
    assert A6.products() == {
        (1, 1): [(4, S("1"))],
        (2, 2): [(4, S("1"))],
        (3, 3): [(4, S("1"))],
    }
    heis = algebra_from_blocks([B("F", 2)])
    assert verify_leibniz(heis) and is_lie(heis)


def test_form_from_algebra_examples():
    A1 = algebra_from_blocks([B("A", 3)])
    form, xn = form_from_algebra(A1)
    assert form == canonical_block_matrix(B("A", 3))
    assert xn == scalar_matrix([["0", "0", "0", "1"]])[0]
    A6 = algebra_from_blocks([B("C", 1)] * 3)
    form6, _ = form_from_algebra(A6)
    assert form6 == scalar_matrix([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]])


def test_form_from_algebra_round_trip_random():
    import random

    rng = random.Random(101)
    pool = [
        lambda: B("A", 1),
        lambda: B("A", 3),
        lambda: B("C", 1),
        lambda: B("C", 3),
        lambda: B("E", 2),
        lambda: B("F", 2),
        lambda: B("B", 2, str(rng.choice([0, 2, 3, -2]))),
    ]
    for _ in range(25):
        blocks = [rng.choice(pool)() for _ in range(rng.randint(1, 3))]
        if sum(b.size for b in blocks) > 6:
            continue
        N = direct_sum_matrix(blocks)
        A = algebra_from_blocks(blocks)
        form, _ = form_from_algebra(A)
        assert form == N


def test_form_preconditions():
    cyclic = algebra_from_blocks([B("C", 1)])  # [x1,x1] = x2 only: nilpotent
    assert is_nilpotent(cyclic)
    from leibniz_lab.algebra import StructureConstants

    non_nilp = StructureConstants.from_products(
        2, {(1, 1): [(2, S("1"))], (1, 2): [(2, S("1"))]}
    )
    with pytest.raises(PreconditionFailed):
        form_from_algebra(non_nilp)
    abelian = StructureConstants.from_products(2, {})
    with pytest.raises(PreconditionFailed):
        form_from_algebra(abelian)


def test_has_zero_summand():
    m = direct_sum_matrix([B("F", 2), B("A", 1)])
    assert has_zero_summand(m)
    assert not has_zero_summand(canonical_block_matrix(B("A", 3)))
    assert not has_zero_summand(canonical_block_matrix(B("B", 2, "c")))  # generic c
    assert has_zero_summand(scalar_matrix([["0"]]))


def test_b_param_normalize():
    assert b_param_normalize(S("2")) == S("1/2")
    assert b_param_normalize(S("1/2")) == S("1/2")
    assert b_param_normalize(S("0")) == S("0")
    assert b_param_normalize(S("i")) == S("-i")
    assert b_param_normalize(S("c")) == S("c")


def test_normalize_blocks_and_names():
    blocks = (B("C", 1), B("B", 2, "3"), B("A", 3))
    normed = normalize_blocks(blocks)
    assert blocks_name(normed) == "A3 B2(1/3) C1"
    assert parse_block_name("B4(2)") == B("B", 4, "2")
    assert parse_block_name("A3") == B("A", 3)
    with pytest.raises(InvalidBlock):
        parse_block_name("G2")


def test_split_matches_explicit_ideal_decomposition():
    """Cross-check the zero-summand test against explicit ideals.

    When the form is K + [0] the algebra splits as I1 + I2 with
    I1 = span{x_1..x_k, x_n} and I2 the remaining coordinates.
    """
    from leibniz_lab.algebra import product_subspace
    from leibniz_lab.linalg import Subspace
    from leibniz_lab.scalars import SC_ONE, SC_ZERO

    cases = [
        [B("F", 2), B("A", 1)],
        [B("C", 1), B("A", 1)],
        [B("B", 2, "2"), B("A", 1), B("A", 1)],
    ]
    for blocks in cases:
        M = direct_sum_matrix(blocks)
        assert has_zero_summand(M)
        A = algebra_from_blocks(blocks)
        n = A.dim
        k = sum(b.size for b in blocks if not (b.kind == "A" and b.size == 1))

        def e(i):
            return tuple(SC_ONE if t == i else SC_ZERO for t in range(n))

        i1 = Subspace.span(n, [e(i) for i in range(k)] + [e(n - 1)])
        i2 = Subspace.span(n, [e(i) for i in range(k, n - 1)])
        full = Subspace.full(n)
        for ideal in (i1, i2):
            assert ideal.contains_subspace(product_subspace(A, ideal, full))
            assert ideal.contains_subspace(product_subspace(A, full, ideal))
        assert i1.intersect(i2).is_zero()
        assert i1.add(i2) == full
