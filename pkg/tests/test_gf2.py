import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubesign.gf2 import (
    PRIMITIVE_POLYNOMIALS,
    DimensionError,
    E,
    GeneratorSet,
    NotSpanningError,
    bch_sidon_set,
    e,
    gf_mul,
    hypercube_gens,
    hypercube_lift,
    hypercube_plus_gens,
    is_sidon,
    preimage,
    span_rank,
    zero_sum_obstruction_cycle,
)
from oracles import sidon_bruteforce, span_size


@st.composite
def generator_sets(draw, max_n=10, max_d=12):
    n = draw(st.integers(1, max_n))
    d = draw(st.integers(1, min(max_d, (1 << n) - 1)))
    gens = draw(st.lists(st.integers(1, (1 << n) - 1), min_size=d, max_size=d, unique=True))
    return GeneratorSet(n, tuple(gens))


def test_unit_and_prefix_vectors():
    assert e(1, 5) == 0b00001
    assert e(5, 5) == 0b10000
    assert E(3, 5) == 0b00111
    with pytest.raises(IndexError):
        e(0, 3)


def test_xor_group_laws_exhaustive():
    for n in range(1, 9):
        xs = np.arange(1 << n)
        assert np.array_equal(xs[:, None] ^ xs[None, :], (xs[:, None] ^ xs[None, :]).T)
        assert not np.any(xs ^ xs)


def test_generator_set_rejects_zero_duplicates_and_overflow():
    with pytest.raises(ValueError):
        GeneratorSet(3, (1, 0))
    with pytest.raises(ValueError):
        GeneratorSet(3, (1, 1))
    with pytest.raises(DimensionError):
        GeneratorSet(3, (8,))
    with pytest.raises(DimensionError):
        GeneratorSet(25, (1,))


@pytest.mark.parametrize(
    "vectors, dim, rank",
    [
        ([e(1, 3), e(2, 3), e(3, 3)], 3, 3),
        ([e(1, 3), e(2, 3), e(1, 3) ^ e(2, 3)], 3, 2),
        ([e(i, 5) for i in range(1, 6)] + [E(5, 5)], 5, 5),  # span has 32 elements
    ],
)
def test_span_rank_examples(vectors, dim, rank):
    assert span_rank(vectors, dim) == rank
    assert 1 << rank == span_size(vectors, dim)


def test_span_rank_dimension_mismatch():
    with pytest.raises(DimensionError):
        span_rank([1, 0b1000], 3)


@given(generator_sets(max_n=8, max_d=10))
def test_span_rank_matches_enumeration(S):
    assert 1 << span_rank(S.gens, S.dim) == span_size(S.gens, S.dim)


def test_is_sidon_examples():
    for n in range(1, 8):
        assert is_sidon(hypercube_gens(n))
    assert not is_sidon(hypercube_plus_gens(3))
    assert is_sidon(hypercube_plus_gens(5))
    for n in (2, 4, 6, 7):
        assert is_sidon(hypercube_plus_gens(n))


@settings(max_examples=300)
@given(generator_sets(max_n=10, max_d=12))
def test_is_sidon_matches_bruteforce(S):
    assert is_sidon(S) == sidon_bruteforce(S.gens)


def test_zero_sum_cycle_examples():
    q5 = hypercube_plus_gens(5)
    assert zero_sum_obstruction_cycle(q5) == list(q5.gens)
    assert zero_sum_obstruction_cycle(hypercube_gens(4)) is None
    tri = GeneratorSet(2, (1, 2, 3))
    assert zero_sum_obstruction_cycle(tri) == [1, 2, 3]


def test_zero_sum_cycle_is_lexicographically_first():
    # {0,1,2} sums to zero (k=3) and so does {3,4,5}; the first wins
    S = GeneratorSet(4, (1, 2, 3, 4, 8, 12))
    assert zero_sum_obstruction_cycle(S) == [1, 2, 3]
    # Q_+^4: the only zero-sum subset has 5 elements (1 mod 4)
    assert zero_sum_obstruction_cycle(hypercube_plus_gens(4)) is None


def _lex_first_bruteforce(gens):
    from itertools import combinations

    best = None
    for k in range(2, len(gens) + 1):
        if k % 4 not in (2, 3):
            continue
        for idx in combinations(range(len(gens)), k):
            acc = 0
            for i in idx:
                acc ^= gens[i]
            if acc == 0 and (best is None or idx < best):
                best = idx
    return best


@settings(max_examples=200)
@given(generator_sets(max_n=6, max_d=10))
def test_zero_sum_cycle_properties(S):
    cycle = zero_sum_obstruction_cycle(S)
    expected = _lex_first_bruteforce(S.gens)
    if cycle is None:
        assert expected is None
        return
    acc = 0
    for g in cycle:
        acc ^= g
    assert acc == 0
    assert len(set(cycle)) == len(cycle)
    assert len(cycle) % 4 in (2, 3)
    assert [S.gens[i] for i in expected] == cycle


@pytest.mark.parametrize("m", sorted(PRIMITIVE_POLYNOMIALS))
def test_primitive_polynomials_generate_the_multiplicative_group(m):
    x, order = 2, 1
    while x != 1:
        x = gf_mul(x, 2, m)
        order += 1
    assert order == (1 << m) - 1


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_bch_sidon_sets(m):
    S = bch_sidon_set(m)
    assert S.dim == 2 * m
    assert len(S) == (1 << m) - 1
    assert is_sidon(S)
    if m <= 4:
        assert sidon_bruteforce(S.gens)


def test_bch_m5_exceeds_anticommuting_bound():
    S = bch_sidon_set(5)
    assert len(S) == 31 > 2 * 10 + 1


def test_bch_range():
    with pytest.raises(ValueError):
        bch_sidon_set(1)
    with pytest.raises(ValueError):
        bch_sidon_set(13)


def test_lift_identity_and_fibers():
    T = hypercube_lift(hypercube_gens(4))
    assert [T(x) for x in range(16)] == list(range(16))
    T = hypercube_lift(hypercube_plus_gens(4))
    counts = np.bincount(T.image_table(), minlength=16)
    assert set(counts) == {2}
    assert T.fiber_size == 2


def test_lift_preserves_adjacency():
    S = hypercube_plus_gens(4)
    T = hypercube_lift(S)
    for w in range(1 << 5):
        for i, s in enumerate(S.gens):
            assert T(w ^ (1 << i)) == T(w) ^ s


def test_lift_requires_spanning_set():
    with pytest.raises(NotSpanningError):
        hypercube_lift(GeneratorSet(3, (1, 2, 3)))


def test_preimage_counts():
    T = hypercube_lift(hypercube_plus_gens(4))
    full = np.ones(16, dtype=bool)
    assert preimage(T, full).all()
    U = np.zeros(16, dtype=bool)
    U[:9] = True  # 2^(n-1) + 1
    W = preimage(T, U)
    assert W.sum() == 2 ** 4 + 2
    assert W.sum() > 2 ** (5 - 1)


@settings(max_examples=30)
@given(st.data())
def test_preimage_membership_and_size(data):
    S = data.draw(generator_sets(max_n=5, max_d=8))
    if span_rank(S.gens, S.dim) != S.dim:
        return
    T = hypercube_lift(S)
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32)))
    for _ in range(100):
        U = rng.random(1 << S.dim) < 0.5
        W = preimage(T, U)
        assert W.sum() == U.sum() << (len(S) - S.dim)
    for w in range(1 << len(S)):
        assert W[w] == U[T(w)]
