import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tamek2.arith import factor_squarefree, sieve_primes
from tamek2.classnum import narrow_class_number
from tamek2.errors import InvalidArgument, NotSquarefree
from tamek2.hk_matrix import (
    SymbolMatrix,
    build_matrix,
    f2_rank,
    four_rank_k2,
    last_row_deletion_check,
    reduced_matrix,
    redei_four_rank,
    redei_matrix,
    representation_invariance_check,
    row_product_ok,
)
from tamek2.zsqrt2 import QuadInt

from oracles import f2_rank_dense


def test_trace_d17():
    r = four_rank_k2(17)
    assert (r.t, r.v, r.a, r.a_prime, r.rank, r.four_rank) == (1, 7, 0, 0, 1, 0)
    assert r.matrix.row_labels == ("(-d,v=7)", "(d,-1)")
    assert r.matrix.col_labels == ("2", "17")
    assert r.matrix.entries == ((-1, -1), (1, 1))
    assert r.case_label is None


def test_trace_d50881():
    r = four_rank_k2(50881)
    assert (r.t, r.v, r.rank, r.four_rank, r.case_label) == (3, 785, 2, 1, 3)
    assert r.matrix.entries == (
        (1, 1, -1, -1),
        (1, -1, -1, 1),
        (1, -1, -1, 1),
        (1, 1, 1, 1),
    )
    assert json.loads(r.to_json()) == {
        "d": 50881, "t": 3, "v": 785, "a": 0, "a_prime": 0, "rank": 2, "four_rank": 1, "case": 3,
    }


def test_format_lists_sign_table_and_f2_image():
    text = build_matrix(50881).format()
    assert "(-d,v=785)" in text and "F2 image:" in text
    assert text.splitlines()[0].split("|")[1].split() == ["2", "17", "41", "73"]


def test_drop_rows_and_reduced_matrix():
    m = build_matrix(50881)
    assert reduced_matrix(50881) == m.drop_rows(3) == m.drop_rows(-1)
    assert m.drop_rows(0, 1).shape == (2, 4)


@settings(max_examples=300)
@given(st.lists(st.integers(0, 15), min_size=1, max_size=6), st.integers(0, 5), st.integers(0, 5), st.randoms())
def test_f2_rank_invariant_under_row_operations(rows, i, j, rnd):
    i %= len(rows)
    j %= len(rows)
    before = f2_rank(rows, 4)
    added = list(rows)
    if i != j:
        added[i] ^= added[j]
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    assert f2_rank(added, 4) == before == f2_rank(shuffled, 4)
    assert before == f2_rank_dense([[(r >> k) & 1 for k in range(4)] for r in rows])


def test_rows_other_than_v_multiply_to_one():
    rng = random.Random(5)
    for d in rng.sample([n for n in range(2, 5000) if _squarefree(n)], 200):
        m = build_matrix(d)
        assert row_product_ok(m), d


def _squarefree(n):
    try:
        factor_squarefree(n)
    except NotSquarefree:
        return False
    return True


def test_four_rank_is_nonnegative_on_general_d():
    for d in [n for n in range(2, 3000) if _squarefree(n)]:
        assert four_rank_k2(d).four_rank >= 0, d


def test_non_norm_d_uses_v_equal_two():
    r = four_rank_k2(3)
    assert r.a == 1 and r.v == 2 and r.norm_rep is None


def test_explicit_element_must_have_norm_d():
    with pytest.raises(InvalidArgument):
        four_rank_k2(17, element=QuadInt(5, 1))
    assert four_rank_k2(17, element=QuadInt(5, 2)).v == 7


def test_domain_errors():
    with pytest.raises(NotSquarefree):
        four_rank_k2(18)
    with pytest.raises(InvalidArgument):
        four_rank_k2(-17)
    with pytest.raises(InvalidArgument):
        four_rank_k2(1)


def test_last_row_and_representation_invariance_on_X():
    primes = sieve_primes(400, (1, 8))
    rng = random.Random(11)
    for _ in range(40):
        p1, p2, p3 = rng.sample(primes, 3)
        d = p1 * p2 * p3
        assert last_row_deletion_check(d)
        assert representation_invariance_check(d)


def test_redei_matrix():
    m, four = redei_four_rank(1241)
    assert m.entries == ((-1, -1), (-1, -1)) and four == 0
    with pytest.raises(InvalidArgument):
        redei_matrix(3 * 17)
    with pytest.raises(InvalidArgument):
        redei_matrix(2 * 17)


def test_symbol_matrix_dict():
    m = SymbolMatrix(("r",), ("2", "3"), ((1, -1),))
    assert m.to_dict() == {"rows": ["r"], "cols": ["2", "3"], "entries": [[1, -1]], "f2": [[0, 1]]}
    assert m.bit_rows == [2]


def test_redei_four_rank_against_class_numbers():
    # with two prime factors the 2-part of C+ is cyclic, so 4 | h+ iff the 4-rank is 1
    primes = [p for p in sieve_primes(200) if p % 4 == 1]
    for i, p in enumerate(primes):
        for q in primes[i + 1 :]:
            _, four = redei_four_rank(p * q)
            h = narrow_class_number(p * q).h_plus
            assert (h % 4 == 0) == (four == 1), (p, q)
