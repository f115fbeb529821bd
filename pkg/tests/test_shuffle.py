from __future__ import annotations

import itertools
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from pdres import shuffle as sh
from pdres.errors import PreconditionError
from pdres.field import QQ, GF

letters = st.tuples(st.sampled_from(["a", "b", "c"]), st.integers(1, 3))
words = st.lists(letters, min_size=0, max_size=3).map(tuple)
short_words = st.lists(letters, min_size=0, max_size=2).map(tuple)


def brute_sign(sigma, degrees):
    """Sign of moving letters one adjacent swap at a time (bubble sort)."""
    n = len(sigma)
    inv = sh.inverse(sigma)
    target = [inv[i] for i in range(n)]  # letter index at each output slot
    cur = list(range(1, n + 1))
    sign = 1
    for i in range(n):
        j = cur.index(target[i])
        while j > i:
            a, b = cur[j - 1], cur[j]
            if degrees[a - 1] * degrees[b - 1] % 2:
                sign = -sign
            cur[j - 1], cur[j] = b, a
            j -= 1
    return sign


def test_compose_and_inverse():
    s, t = (2, 3, 1), (3, 1, 2)
    assert sh.compose(s, t) == (1, 2, 3)
    assert sh.compose(s, sh.inverse(s)) == sh.identity(3)
    assert sh.inversions((2, 1, 3)) == [(1, 2)]


def test_koszul_sign_matches_adjacent_swaps():
    for n in range(1, 6):
        for degrees in itertools.product([1, 2], repeat=n):
            for sigma in itertools.permutations(range(1, n + 1)):
                assert sh.koszul_sign(sigma, degrees) == brute_sign(sigma, degrees)


def test_action_is_a_group_action():
    w = (("a", 1), ("b", 1), ("c", 2), ("d", 3))
    u = sh.TensorElement.word(QQ, w)
    for s in itertools.permutations(range(1, 5)):
        for t in [(2, 1, 3, 4), (1, 3, 4, 2), (4, 3, 2, 1)]:
            lhs = sh.apply_permutation(sh.compose(s, t), u)
            rhs = sh.apply_permutation(s, sh.apply_permutation(t, u))
            assert lhs == rhs


def test_shuffle_counts():
    for m in range(9):
        for n in range(9 - m):
            s = sh.shuffles(m, n)
            assert len(s) == comb(m + n, m) == len(set(s))


def test_kprime_counts_and_shape():
    assert len(sh.kprime(2, 2)) == 3
    assert len(sh.kprime(3, 2)) == 10
    for n in range(1, 9):
        for p in range(1, 9):
            if n * p <= 8:
                ks = sh.kprime(n, p)
                assert len(ks) == sh.kprime_count(n, p)
                for sigma in ks:
                    tops = [sigma[b * n + n - 1] for b in range(p)]
                    assert tops == sorted(tops)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_shuffle_partition(n):
    assert sh.sh_partition_check(n)


def test_block_swap_sign():
    c = sh.block_swap(2)
    assert c == (3, 4, 1, 2)
    sign, _ = sh.act(c, (("a", 1), ("b", 2), ("c", 1), ("d", 2)))
    assert sign == -1


@settings(max_examples=50, deadline=None)
@given(short_words, short_words, short_words)
def test_star_is_associative(a, b, c):
    A, B, C = (sh.TensorElement.word(QQ, w) for w in (a, b, c))
    assert sh.star(sh.star(A, B), C) == sh.star(A, sh.star(B, C))


@settings(max_examples=50, deadline=None)
@given(words, words)
def test_star_is_graded_commutative(a, b):
    A, B = sh.TensorElement.word(QQ, a), sh.TensorElement.word(QQ, b)
    sign = -1 if sh.word_degree(a) * sh.word_degree(b) % 2 else 1
    assert sh.star(A, B) == sh.star(B, A).scale(sign)


@settings(max_examples=30, deadline=None)
@given(st.lists(letters, min_size=1, max_size=2).map(tuple), st.integers(1, 4))
def test_gamma_times_factorial_is_power(w, n):
    if sh.word_degree(w) % 2 or len(w) * n > 8:
        return
    u = sh.symmetrize(sh.TensorElement.word(QQ, w))
    if u.is_zero():
        return
    power = sh.TensorElement.one(QQ)
    for _ in range(n):
        power = sh.star(power, u)
    g = sh.gamma(u, n)
    assert power == g.scale(factorial(n))
    assert sh.is_symmetric(g)


def test_gamma_of_a_sum_and_in_char_two():
    s, t = ("s", 2), ("t", 2)
    u = sh.TensorElement.word(GF(2), [s]) + sh.TensorElement.word(GF(2), [t])
    g2 = sh.gamma(u, 2)
    expected = sh.gamma([s], 2, GF(2)) + sh.star(
        sh.TensorElement.word(GF(2), [s]), sh.TensorElement.word(GF(2), [t])
    ) + sh.gamma([t], 2, GF(2))
    assert g2 == expected
    # gamma_2(s) = s (x) s is nonzero even though s * s = 2 gamma_2(s) = 0
    assert not sh.gamma([s], 2, GF(2)).is_zero()
    assert sh.star(sh.TensorElement.word(GF(2), [s]), sh.TensorElement.word(GF(2), [s])).is_zero()


def test_gamma_rejects_odd_degree_and_long_tensors():
    with pytest.raises(PreconditionError):
        sh.gamma([("t", 1)], 2, QQ)
    with pytest.raises(PreconditionError):
        sh.gamma([("s", 2), ("u", 2)], 5, QQ)


def test_tensor_differential_is_a_derivation():
    # a letterwise differential commutes with the permutation action
    d = {("s", 2): sh.TensorElement.word(QQ, [("t", 1)]), ("t", 1): None, ("u", 1): None}
    a = sh.TensorElement.word(QQ, [("s", 2)])
    b = sh.TensorElement.word(QQ, [("s", 2), ("u", 1)])
    lhs = sh.tensor_differential(sh.star(a, b), d)
    rhs = sh.star(sh.tensor_differential(a, d), b) + sh.star(a, sh.tensor_differential(b, d))
    assert lhs == rhs
