from fractions import Fraction

import pytest

from foldmin.presentations import (
    ArtinPresentation,
    CoxeterPresentation,
    ExponentMatrix,
    OneRelatorPresentation,
    artin_side,
    check_separability_condition,
    compute_pieces,
    coxeter_symmetrized_relators,
    hypothesis_thresholds,
)
from foldmin.words import Alphabet, Mode, invert


def cox(n, entries):
    names = tuple(f"a{t+1}" for t in range(n))
    return CoxeterPresentation(
        Alphabet(names, Mode.INVOLUTIVE), ExponentMatrix.from_dict(n, entries))


def uniform_cox(n, m):
    return cox(n, {(i, j): m for i in range(n) for j in range(i + 1, n)})


def artin(n, m):
    names = tuple(f"a{t+1}" for t in range(n))
    return ArtinPresentation(
        Alphabet(names, Mode.FREE_INVERSE),
        ExponentMatrix.from_dict(n, {(i, j): m for i in range(n) for j in range(i + 1, n)}))


def test_symmetrized_relators_shapes():
    P = cox(2, {(0, 1): 4})
    rels = coxeter_symmetrized_relators(P)
    # the alternating word of length 8 has exactly two distinct rotations
    assert rels == [(1, 2) * 4, (2, 1) * 4]
    # closed under involutive inversion
    assert all(invert(r, Mode.INVOLUTIVE) in rels for r in rels)

    assert coxeter_symmetrized_relators(cox(2, {})) == []

    rels7 = coxeter_symmetrized_relators(uniform_cox(3, 7))
    assert len(rels7) == 6  # two distinct rotations per related pair
    for r in rels7:
        assert len(r) == 14
        assert len({x for x in r}) == 2


def test_symmetrized_refuses_small_exponent():
    with pytest.raises(ValueError):
        coxeter_symmetrized_relators(cox(2, {(0, 1): 3}))


def test_relator_properties():
    for m in range(4, 10):
        P = uniform_cox(3, m)
        for i, j, _ in P.exponents.pairs():
            r = P.relator_word(i, j)
            assert len(r) == 2 * m
            assert set(r) == {i + 1, j + 1}


def test_compute_pieces_extra_large():
    # with three or more generators the pieces are exactly the single letters
    for n in (3, 4):
        for m in (4, 7, 9):
            P = uniform_cox(n, m)
            rep = compute_pieces(coxeter_symmetrized_relators(P), P.alphabet)
            assert rep.max_piece_length == 1
            assert rep.satisfies_c(8)
            assert rep.satisfies_c_prime(Fraction(1, 7))
            assert rep.c_condition == 2 * m
    # with two generators the two relators share no prefix: no pieces at all,
    # so both conditions hold vacuously
    P2 = cox(2, {(0, 1): 4})
    rep2 = compute_pieces(coxeter_symmetrized_relators(P2), P2.alphabet)
    assert rep2.max_piece_length == 0
    assert rep2.satisfies_c(8)
    assert rep2.satisfies_c_prime(Fraction(1, 7))


def test_compute_pieces_bruteforce_cross_check():
    # independent route: max piece length = longest common prefix over all
    # ordered pairs of distinct symmetrized relators
    P = uniform_cox(3, 4)
    rels = coxeter_symmetrized_relators(P)
    best = 0
    for r1 in rels:
        for r2 in rels:
            if r1 == r2:
                continue
            t = 0
            while t < min(len(r1), len(r2)) and r1[t] == r2[t]:
                t += 1
            best = max(best, t)
    rep = compute_pieces(rels, P.alphabet)
    assert rep.max_piece_length == best == 1


def test_compute_pieces_empty_and_validation():
    rep = compute_pieces([])
    assert rep.max_piece_length == 0
    with pytest.raises(ValueError):
        a = Alphabet(("a1", "a2"), Mode.INVOLUTIVE)
        compute_pieces([(1, 2)], a)  # not rotation closed


def test_separability_condition():
    ok, _ = check_separability_condition(uniform_cox(3, 12))
    assert ok
    ok, _ = check_separability_condition(
        cox(3, {(0, 1): 8, (1, 2): 10}))  # no finite triangle
    assert ok
    ok, violations = check_separability_condition(uniform_cox(3, 8))
    assert not ok and any("divisible by 6" in v for v in violations)
    ok, violations = check_separability_condition(uniform_cox(2, 7))
    assert not ok and any("odd" in v for v in violations)


def test_threshold_bounds():
    rep = hypothesis_thresholds(uniform_cox(3, 7), 2)
    assert rep.check("free-quasiconvex").satisfied          # 7 >= 3*2+1
    assert not rep.check("separable").satisfied      # 7 < 13
    rep = hypothesis_thresholds(artin(3, 10), 2)
    assert rep.check("artin-free").satisfied          # 10 >= 5*2
    assert rep.check("artin-free").required == 10
    fi = Alphabet(("a1", "a2"), Mode.FREE_INVERSE)
    P = OneRelatorPresentation(fi, (1, 2, -1, -2), 12)
    rep = hypothesis_thresholds(P, 2)
    assert rep.check("one-relator-free").satisfied          # 12 >= 1*(6*2-2)+2 = 12
    assert rep.check("one-relator-free").required == 12
    rep = hypothesis_thresholds(OneRelatorPresentation(fi, (1, 2, -1, -2), 11), 2)
    assert not rep.check("one-relator-free").satisfied


def test_thresholds_monotone():
    # raising any exponent never breaks a satisfied threshold
    for k in (1, 2, 3):
        base = hypothesis_thresholds(uniform_cox(3, 7), k)
        for m2 in (8, 12, 30):
            higher = hypothesis_thresholds(uniform_cox(3, m2), k)
            for c1, c2 in zip(base.checks, higher.checks):
                if c1.certificate == "separable":
                    continue  # separability also depends on divisibility
                if c1.satisfied:
                    assert c2.satisfied


def test_thresholds_k1_note():
    rep = hypothesis_thresholds(uniform_cox(3, 7), 1)
    assert any("cyclic" in note for note in rep.notes)
    with pytest.raises(ValueError):
        hypothesis_thresholds(uniform_cox(3, 7), 0)


def test_artin_side():
    assert artin_side(0, 1, 3) == (1, 2, 1)
    assert artin_side(1, 0, 4) == (2, 1, 2, 1)
    with pytest.raises(ValueError):
        artin_side(0, 0, 3)
    with pytest.raises(ValueError):
        artin_side(0, 1, 0)
    # the defining relator has full length 2m: no cancellation at the seam
    P = artin(2, 5)
    assert len(P.defining_relator(0, 1)) == 10


def test_one_relator_validation():
    fi = Alphabet(("a1", "a2"), Mode.FREE_INVERSE)
    with pytest.raises(ValueError):
        OneRelatorPresentation(fi, (1, 1), 3)  # proper power
    with pytest.raises(ValueError):
        OneRelatorPresentation(fi, (1, 2, -1), 3)  # not cyclically reduced
    with pytest.raises(ValueError):
        OneRelatorPresentation(fi, (1, 2), 1)  # exponent below 2
    with pytest.raises(ValueError):
        OneRelatorPresentation(fi, (), 2)
    P = OneRelatorPresentation(fi, (1, 2, -1, -2), 2)
    assert P.b == 1


def test_exponent_matrix_infinity_is_absent():
    M = ExponentMatrix.from_dict(3, {(0, 1): 6})
    assert M.get(0, 1) == 6 and M.get(1, 0) == 6
    assert M.get(0, 2) is None
    arr = M.as_array()
    assert arr[0, 1] == 6 and arr[0, 2] == 0
    assert M.extra_large
