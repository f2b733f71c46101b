import csv

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tamek2.arith import legendre, sieve_primes
from tamek2.errors import InvalidArgument, NoRepresentation
from tamek2.zsqrt2 import (
    FUND_UNIT,
    UNIT_SQ,
    PrimeRep,
    QuadInt,
    clear_prime_rep_memo,
    load_prime_rep_cache,
    positive_embedding,
    quad_arith,
    represent_norm,
    represent_norm_direct,
    represent_prime,
    residue_mod_ideal,
    unit_reduce,
)

elements = st.builds(QuadInt, st.integers(-(10**6), 10**6), st.integers(-(10**6), 10**6)).filter(
    lambda z: z.norm() != 0
)
PM1 = [p for p in sieve_primes(3000) if p % 8 in (1, 7)]


@pytest.mark.parametrize("l,x,y", [(17, 5, 2), (7, 1, 2), (41, 29, 20), (73, 9, 2), (23, 25, 18)])
def test_pinned_prime_representations(l, x, y):
    assert represent_prime(l) == PrimeRep(l, x, y)


def test_every_prime_rep_is_valid_and_generates_a_prime_ideal():
    for l in PM1:
        rep = represent_prime(l)
        assert rep.is_valid()
        r = rep.sqrt2_residue()
        assert (r * r - 2) % l == 0
        assert residue_mod_ideal(QuadInt(rep.x, -rep.y), rep) == 0


def test_prime_rep_rejects_inert_primes():
    for bad in (3, 5, 11, 15, 49):
        with pytest.raises(NoRepresentation):
            represent_prime(bad)


@given(elements, elements)
def test_norm_is_multiplicative(z1, z2):
    assert (z1 * z2).norm() == z1.norm() * z2.norm()
    assert quad_arith("norm", quad_arith("mul", z1, z2)) == z1.norm() * z2.norm()


@given(elements)
def test_unit_reduce_is_canonical(z):
    r = unit_reduce(z)
    assert r.norm() == z.norm()
    assert r.a > 0 and r.b >= 0
    down = r * UNIT_SQ.conj()
    assert not (down.a > 0 and down.b >= 0)
    assert unit_reduce(z * UNIT_SQ) == r
    assert unit_reduce(-z) == r


@given(elements, elements, st.sampled_from(PM1))
def test_residue_map_is_a_ring_homomorphism(z1, z2, l):
    rep = represent_prime(l)
    f = lambda z: residue_mod_ideal(z, rep)
    assert f(z1 * z2) == f(z1) * f(z2) % l
    assert f(QuadInt(z1.a + z2.a, z1.b + z2.b)) == (f(z1) + f(z2)) % l


def test_unit_powers_and_embedding():
    assert FUND_UNIT**2 == UNIT_SQ
    assert UNIT_SQ**-1 * UNIT_SQ == QuadInt(1, 0)
    assert FUND_UNIT**-1 == QuadInt(-1, 1)
    with pytest.raises(InvalidArgument):
        QuadInt(2, 1) ** -1
    assert positive_embedding(QuadInt(-1, 1)) and not positive_embedding(QuadInt(1, -1))
    assert str(QuadInt(3, -2)) == "3-2*sqrt2"


def test_canonical_and_direct_representations_of_50881():
    canon = represent_norm(50881)
    direct = represent_norm_direct(50881)
    assert (canon.u, canon.w, canon.v) == (483, 302, 785)
    assert (direct.u, direct.w, direct.v) == (227, 18, 245)


@pytest.mark.parametrize("D", [17, -7, 2, -2, 7 * 17, -41 * 73, 2 * 7 * 23, -1, 1])
def test_represent_norm_solves_the_norm_equation(D):
    for rep in (represent_norm(D), represent_norm_direct(D)):
        assert rep.u**2 - 2 * rep.w**2 == D and rep.u > 0 and rep.w >= 0


def test_represent_norm_rejects_non_norms():
    for D in (3, -5, 17 * 3):
        with pytest.raises(NoRepresentation):
            represent_norm(D)
        with pytest.raises(NoRepresentation):
            represent_norm_direct(D)


def test_cache_round_trip(tmp_path):
    path = tmp_path / "reps.csv"
    assert load_prime_rep_cache(500, path) is False
    rows = list(csv.reader(open(path)))
    assert rows[0] == ["l", "x", "y"]
    assert len(rows) - 1 == len([p for p in PM1 if p < 500])
    clear_prime_rep_memo()
    assert load_prime_rep_cache(500, path) is True
    assert represent_prime(41) == PrimeRep(41, 29, 20)


def test_cache_regenerates_when_corrupt_or_short(tmp_path):
    path = tmp_path / "reps.csv"
    path.write_text("l,x,y\n17,5,3\n")
    assert load_prime_rep_cache(200, path) is False
    assert "17,5,2" in path.read_text()
    path.write_text("garbage")
    assert load_prime_rep_cache(200, path) is False
    assert load_prime_rep_cache(1000, path) is False  # file covers a smaller range
    assert load_prime_rep_cache(1000, path) is True


def test_cache_path_from_environment(tmp_path, monkeypatch):
    path = tmp_path / "sub" / "env.csv"
    monkeypatch.setenv("TAMEK2_PRIMEREP_CACHE", str(path))
    load_prime_rep_cache(100)
    assert path.exists()


def test_unit_reduce_worked_example():
    assert unit_reduce(QuadInt(2657, 1872)) == QuadInt(483, 302)


def test_y_is_a_square_mod_l():
    for l in [p for p in sieve_primes(10**5) if p % 8 in (1, 7)]:
        assert legendre(represent_prime(l).y, l) == 1, l
