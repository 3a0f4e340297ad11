"""Randomized soundness regression for the six move kinds.

Folds, subdivisions and degree-two merges preserve the subgroup over the
free structure outright: checked exactly through canonical folded cores.
The relation-dependent moves are checked through bounded loop languages
matched under the family oracle.  The full 200-per-kind sweep lives in
the acceptance suite; this file keeps a faster smoke version plus the
targeted cases.
"""

import random

import pytest

from instances import (
    apply_random_A0,
    apply_random_A1,
    apply_random_A2,
    apply_random_A3,
    apply_random_fold,
    apply_random_gcd_wrap,
    check_move_sound,
    coxeter_setup,
    languages_equivalent,
    onerel_setup,
    random_graph,
    same_free_subgroup,
)
from foldmin.fgraph import bouquet
from foldmin.moves import fold_all, move_A2
from foldmin.oracles import CoxeterOracle, OneRelatorOracle

P6 = coxeter_setup(2, 6)
P4 = coxeter_setup(3, 4)
PR = onerel_setup((1, 2, -1, -2), 4)


def run_applications(kind: str, count: int, seed: int = 0) -> int:
    """Apply ``count`` random moves of one kind across families; every
    application must pass the soundness check.  Returns applications made."""
    rng = random.Random(seed)
    done = 0
    guard = 0
    while done < count and guard < count * 60:
        guard += 1
        use_coxeter = (kind == "GcdWrap") or rng.random() < 0.6
        if use_coxeter:
            P = rng.choice([P6, P4])
            oracle = CoxeterOracle(P)
            reduce_fn = oracle.reduce
            a = P.alphabet
        else:
            P = PR
            oracle = OneRelatorOracle(P)
            reduce_fn = oracle.reduce
            a = P.alphabet
        g0 = random_graph(rng, a, rng.randint(1, 3), 6)
        if kind == "GcdWrap":
            # plant a circuit whose power neither divides nor is a multiple
            # of the exponent, with a small wrap multiplier
            z = 4 if P is P6 else 6
            extra = random_graph(rng, a, 1, 4)
            g0, _ = bouquet([(1, 2) * z, extra.label(extra.edge_ids()[0])], a)
        g1 = g0.copy()
        sub_data = None
        if kind == "Fold":
            applied = apply_random_fold(rng, g1)
        elif kind == "A0":
            sub_data = apply_random_A0(rng, g1, oracle, reduce_fn)
            applied = sub_data is not None
        elif kind == "A1":
            sub_data = apply_random_A1(rng, g1, oracle)
            applied = sub_data is not None
        elif kind == "A2":
            applied = apply_random_A2(rng, g1)
        elif kind == "A3":
            applied = apply_random_A3(rng, g1)
        else:
            sub_data = apply_random_gcd_wrap(rng, g1, P, oracle)
            applied = sub_data is not None
        if not applied:
            continue
        done += 1
        check_move_sound(kind, g0, g1, 6, oracle, sub_data)
    return done


KINDS = ["Fold", "A0", "A1", "A2", "A3", "GcdWrap"]


@pytest.mark.parametrize("kind", KINDS)
def test_move_soundness_smoke(kind):
    assert run_applications(kind, 25, seed=100 + KINDS.index(kind)) == 25


def test_fold_preserves_core_on_shared_prefix_loops():
    g0, _ = bouquet([(1, 2), (1, 3)], P4.alphabet)
    g1 = g0.copy()
    fold_all(g1)
    assert same_free_subgroup(g0, g1)
    assert languages_equivalent(g0, g1, 6, CoxeterOracle(P4)) is None


def test_unsound_edit_is_detected():
    # sanity of the checker itself: dropping a generator is caught
    g0, _ = bouquet([(1, 2), (2, 3)], P4.alphabet)
    g1, _ = bouquet([(1, 2)], P4.alphabet)
    assert not same_free_subgroup(g0, g1)
    assert languages_equivalent(g0, g1, 6, CoxeterOracle(P4)) is not None


def test_subdivision_never_changes_letter_core():
    rng = random.Random(5)
    for _ in range(20):
        g0 = random_graph(rng, P4.alphabet, 2, 6)
        g1 = g0.copy()
        eids = [e for e in g1.edge_ids() if len(g1.label(e)) > 1]
        if not eids:
            continue
        e = rng.choice(eids)
        move_A2(g1, e, rng.randint(1, len(g1.label(e)) - 1))
        assert same_free_subgroup(g0, g1)
