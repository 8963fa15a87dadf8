import pytest

from cozero import families as F
from cozero.lattice import enumerate_ideals
from cozero.ring import RingContext


@pytest.mark.parametrize(
    "n, name, params",
    [
        (7, "p", {"p": 7}),
        (25, "p2", {"p": 5}),
        (27, "p3", {"p": 3}),
        (15, "pq", {"p": 3, "q": 5}),
        (30, "pqr", {"p": 2, "q": 3, "r": 5}),
        (12, "p2q", {"p": 2, "q": 3}),
        (18, "p2q", {"p": 3, "q": 2}),
        (45, "p2q", {"p": 3, "q": 5}),
    ],
)
def test_family_detection(n, name, params):
    fam = F.family_of(RingContext(n))
    assert fam.name == name and fam.params == params


@pytest.mark.parametrize("n", [16, 24, 36, 210])
def test_unsupported_family(n):
    assert F.family_of(RingContext(n)) is None
    with pytest.raises(F.UnsupportedFamilyError):
        F.require_family(RingContext(n))


def test_prime_power_labels():
    fam = F.family_of(RingContext(27))
    assert F.family_label(fam, 9, 0) == "A_{p^2,0}"
    assert F.family_label(fam, 1, 6) == "A_{1,2p}"
    assert F.family_label(fam, 2, 0) == "A_{1,0}"  # 2x generates <x>
    assert F.family_label(fam, 0, 18) == "A_{0,p^2}"


def test_chain_labels_for_pq():
    fam = F.family_of(RingContext(6))
    # 3 = (1 mod 2, 0 mod 3): unit in the first factor, zero in the second
    assert F.family_label(fam, 0, 3) == "A_{3,1}"
    assert F.family_label(fam, 1, 0) == "A_{2,2}"


def test_local_generator_is_lexicographic_minimum():
    # 2x+2 = 2(x+1) and x+1 is a unit, so the ideal is <2>
    assert F.local_generator(4, 2, 2) == (0, 2)
    assert F.local_generator(9, 2, 6) == (1, 3)


def test_record_count_formulas():
    for n in (5, 9, 25, 8, 27, 6, 35, 30, 42, 12, 18, 20, 28, 50):
        ctx = RingContext(n)
        fam = F.family_of(ctx)
        assert len(enumerate_ideals(ctx)) == F.published_record_count(fam), n


def test_published_vertex_formulas():
    mismatched = []
    for n in (5, 9, 25, 8, 27, 6, 35, 30, 42, 12, 18, 20):
        ctx = RingContext(n)
        if F.family_vertex_count(F.family_of(ctx)) != ctx.vertex_count():
            mismatched.append(n)
    # the pqr formula pqr(p+q+r-1)-1 undercounts; every other family agrees
    assert mismatched == [30, 42]


def _published_total(n):
    pub = F.published_spectrum(F.family_of(RingContext(n)))
    return sum(m for _, m in pub.families) + (0 if pub.quotient is None else len(pub.quotient))


def test_published_multiplicities_cover_the_vertex_set():
    for n in (7, 9, 25, 6, 10, 15, 30, 27, 125):
        assert _published_total(n) == RingContext(n).vertex_count(), n


def test_p2q_published_multiplicities_fall_short():
    # the k-indexed families are listed once instead of once per k
    assert _published_total(12) == 65
    assert RingContext(12).vertex_count() == 95


def test_degenerate_parameters():
    with pytest.raises(F.DegenerateParameterError):
        F.published_spectrum(F.family_of(RingContext(4)))
    with pytest.raises(F.DegenerateParameterError):
        F.published_spectrum(F.family_of(RingContext(8)))
    pub = F.published_spectrum(F.family_of(RingContext(27)))  # p - 3 = 0 entries dropped
    assert all(m > 0 for _, m in pub.families)


def test_pq_published_matrix_entry():
    M = F._pq_matrix(2, 3)
    assert M[0, 0] == 2**2 - 1
    assert M.shape == (7, 7)
