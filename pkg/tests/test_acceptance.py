"""Acceptance suite: one test per criterion, each printing a PASS line and
pinned to its stated budget.

The certified properties are qualitative, so acceptance is property-based
at desk scale: exhaustive word sweeps against finite-group and
normal-form oracles, randomized-but-seeded minimization batches with
independent audits, and byte-level determinism of the command line.
"""

import random
import time
from fractions import Fraction

from bruteforce import DihedralGroup, all_words, dihedral_artin_oracle
from instances import (
    bounded_loop_labels,
    coxeter_setup,
    onerel_setup,
    random_word,
)
from foldmin.cli import main
from foldmin.complexity import path_bound_check
from foldmin.fgraph import bouquet, loop_language, parity_double_cover
from foldmin.minimizer import (
    Status,
    audit_artin_completions,
    audit_weakly_dehn_paths,
    certify_artin,
    certify_coxeter,
    certify_one_relator,
    minimize_artin,
    minimize_coxeter,
    minimize_one_relator,
)
from foldmin.oracles import (
    CoxeterOracle,
    OneRelatorOracle,
    artin_dihedral_is_trivial,
    coxeter_torsion_classify,
    one_relator_torsion_classify,
    relator_path_property,
)
from foldmin.presentations import (
    ArtinPresentation,
    ExponentMatrix,
    compute_pieces,
    coxeter_symmetrized_relators,
)
from foldmin.words import Alphabet, Mode, reduce_letters, syllable_count


def report(criterion: int, started: float, budget: float, detail: str) -> None:
    elapsed = time.time() - started
    print(f"[ACCEPTANCE] C{criterion:02d} PASS in {elapsed:.1f}s "
          f"(budget {budget:.0f}s): {detail}")
    assert elapsed < budget, f"criterion {criterion} exceeded its time budget"


def test_c01_dehn_oracle_exactness():
    # n = 2, m = 4: triviality of every involutive word of length <= 10
    # (the whole population over two generators, well under the stated cap)
    # agrees with the order-8 dihedral multiplication table
    t0 = time.time()
    P = coxeter_setup(2, 4)
    oracle = CoxeterOracle(P)
    table = DihedralGroup(4)
    checked = 0
    for L in range(0, 11):
        for w in all_words(2, L, signed=False):
            assert oracle.is_trivial(w) == table.is_trivial(w), w
            checked += 1
    report(1, t0, 10, f"{checked} words against the dihedral table")


def test_c02_small_cancellation_report():
    t0 = time.time()
    sampled = 0
    for n in (2, 3, 4):
        for m in range(4, 10):
            P = coxeter_setup(n, m)
            rep = compute_pieces(coxeter_symmetrized_relators(P), P.alphabet)
            assert rep.satisfies_c(8), (n, m)
            assert rep.satisfies_c_prime(Fraction(1, 7)), (n, m)
            if n >= 3:
                assert rep.max_piece_length == 1, (n, m)
            else:
                # the two distinct relator words share no prefix at rank two
                assert rep.max_piece_length == 0, (n, m)
            sampled += 1
    report(2, t0, 1, f"{sampled} presentations, pieces as predicted")


def test_c03_move_soundness_200_each():
    from test_move_soundness import KINDS, run_applications

    t0 = time.time()
    for kind in KINDS:
        made = run_applications(kind, 200, seed=1000 + KINDS.index(kind))
        assert made == 200, f"only {made} {kind} applications"
    report(3, t0, 60, "200 sound applications of each move kind")


def test_c04_chi_accounting():
    t0 = time.time()
    deltas = {"Fold": [], "A0": [], "A1": [], "A2": [], "A3": [], "Prune": []}
    P7 = coxeter_setup(3, 7)
    P12 = onerel_setup((1, 2, -1, -2), 12)
    A10 = ArtinPresentation(
        Alphabet(("a1", "a2", "a3"), Mode.FREE_INVERSE),
        ExponentMatrix.from_dict(3, {(0, 1): 10, (0, 2): 10, (1, 2): 10}))
    rng = random.Random(4040)
    runs = 0

    def collect(res):
        nonlocal runs
        runs += 1
        for rec in res.trace:
            if rec.kind in deltas:
                deltas[rec.kind].append(rec.chi_after - rec.chi_before)

    # random instances across the families
    for _ in range(25):
        for P, minimize in (
            (P7, lambda g: minimize_coxeter(g, P7, 2)),
            (P12, lambda g: minimize_one_relator(g, P12, 2)),
            (A10, lambda g: minimize_artin(g, A10, 2)),
        ):
            gens = [random_word(rng, P.alphabet, rng.randint(1, 8)) for _ in range(2)]
            g, _ = bouquet(gens, P.alphabet)
            collect(minimize(g))

    # engineered instances that force the attach/delete/subdivide surgeries
    from foldmin.presentations import artin_side
    from foldmin.words import invert

    for word in ((1, 2) * 6 + (1, 3), (1, 2) * 6 + (3, 1, 3)):
        g, _ = bouquet([word], P7.alphabet)
        collect(minimize_coxeter(g, P7, 1))
    g, _ = bouquet([(1, 2, -1, -2) * 11 + (1, 2, 1)], P12.alphabet)
    collect(minimize_one_relator(g, P12, 2))
    rel = artin_side(0, 1, 10) + invert(artin_side(1, 0, 10), Mode.FREE_INVERSE)
    g, _ = bouquet([rel[:-1], (1, 2, 3)], A10.alphabet)
    collect(minimize_artin(g, A10, 2))

    assert all(d >= 0 for d in deltas["Fold"])
    assert all(d == -1 for d in deltas["A0"])
    assert all(d == 1 for d in deltas["A1"])
    assert all(d == 0 for d in deltas["A2"])
    assert all(d == 0 for d in deltas["A3"])
    assert all(d == 0 for d in deltas["Prune"])
    counts = {k: len(v) for k, v in deltas.items() if v}
    # every audited move kind must actually have fired
    for kind in ("Fold", "A0", "A1", "A2"):
        assert counts.get(kind), f"{kind} never applied in the batch"
    report(4, t0, 120, f"zero delta violations across {runs} runs: {counts}")


# collected minimized graphs for the structural bound audit
_MINIMIZED = []


def test_c05_coxeter_minimization_batch():
    t0 = time.time()
    P7 = coxeter_setup(3, 7)
    oracle = CoxeterOracle(P7)
    rng = random.Random(20240)
    free_count = witnessed = 0
    for _ in range(100):
        gens = [random_word(rng, P7.alphabet, rng.randint(1, 8)) for _ in range(2)]
        g, _ = bouquet(gens, P7.alphabet)
        res = minimize_coxeter(g, P7, 2)
        assert not res.capped, "run hit the iteration cap"
        _MINIMIZED.append((res.graph, 2))
        v = certify_coxeter(res, P7, 2)
        if v.status is Status.FREE_CERTIFIED:
            free_count += 1
            assert audit_weakly_dehn_paths(res.graph, P7, 2) == []
            ok, violations = relator_path_property(res.graph, P7)
            assert ok, violations
            for lab in loop_language(res.graph, 28, cap=2_000_000):
                if lab:
                    assert not oracle.is_trivial(lab), lab
        else:
            assert v.status is Status.WITNESSED, (v.status, v.notes)
            witnessed += 1
            assert res.witnesses
            for w in res.witnesses:
                cls = coxeter_torsion_classify(w.label, P7)
                assert cls.kind in ("ConjGenerator", "ConjRotationPower"), (w, cls)
    report(5, t0, 300,
           f"100 runs: {free_count} free (3 audits each), {witnessed} witnessed")


def test_c06_path_bound_audit():
    t0 = time.time()
    assert _MINIMIZED, "criterion 5 populates the minimized-graph pool"
    audited = 0
    for g, k in _MINIMIZED:
        if not g.is_connected() or g.euler_characteristic() != 1 - k:
            continue
        if any(g.degree(v) < 3 for v in g.vertices()):
            continue
        rep = path_bound_check(g, k)
        assert rep.preconditions_ok and rep.ok, rep
        audited += 1
    assert audited > 0
    report(6, t0, 30, f"{audited} minimized graphs within the 2k-3 bound")


def test_c07_one_relator_suite():
    t0 = time.time()
    R = (1, 2, -1, -2)
    P = onerel_setup(R, 12)
    assert P.b == 1
    oracle = OneRelatorOracle(P)

    # the cyclic subgroup generated by the root is pure torsion
    g, _ = bouquet([R], P.alphabet)
    res = minimize_one_relator(g, P, 2)
    assert any(w.kind == "OneRelatorTorsion" and w.param("d") == 1
               for w in res.witnesses)

    # the root has order exactly m under the spelling reducer
    assert oracle.is_trivial(R * 12)
    assert not oracle.is_trivial(R * 11)

    rng = random.Random(7100)
    free_count = witnessed = 0
    for _ in range(50):
        gens = [random_word(rng, P.alphabet, rng.randint(1, 8)) for _ in range(2)]
        g, _ = bouquet(gens, P.alphabet)
        res = minimize_one_relator(g, P, 2)
        assert not res.capped
        _MINIMIZED.append((res.graph, 2))
        v = certify_one_relator(res, P, 2)
        if v.status is Status.FREE_CERTIFIED:
            free_count += 1
            labels, _ = bounded_loop_labels(res.graph, 4 * len(R))
            for lab in labels:
                if lab:
                    assert not oracle.is_trivial(lab), lab
        else:
            assert v.status is Status.WITNESSED, (v.status, v.notes)
            witnessed += 1
            for w in res.witnesses:
                cls = one_relator_torsion_classify(w.label, P)
                assert cls.kind == "ConjPower" and cls.d, (w, cls)
    report(7, t0, 120,
           f"order check passed; 50 runs: {free_count} free, {witnessed} witnessed")


def test_c08_dihedral_artin_cross_validation():
    t0 = time.time()
    checked = floors = 0
    for m in (3, 4, 5):
        oracle = dihedral_artin_oracle(m)
        for L in range(0, 9):
            for w in all_words(2, L, signed=True):
                ours = artin_dihedral_is_trivial(w, 0, 1, m)
                assert ours == oracle.is_trivial(w), (m, w)
                checked += 1
                if ours and w:
                    r = reduce_letters(w, False)
                    if r == w and not (len(w) >= 2 and w[0] == -w[-1]):
                        assert syllable_count(w) >= 2 * m, (m, w)
                        floors += 1
    report(8, t0, 120, f"{checked} words agree; {floors} syllable-floor checks")


def test_c09_artin_minimization_batch():
    t0 = time.time()
    P = ArtinPresentation(
        Alphabet(("a1", "a2", "a3"), Mode.FREE_INVERSE),
        ExponentMatrix.from_dict(3, {(0, 1): 10, (0, 2): 10, (1, 2): 10}))
    rng = random.Random(9090)
    statuses: dict = {}
    for _ in range(50):
        gens = [random_word(rng, P.alphabet, rng.randint(1, 8)) for _ in range(2)]
        g, _ = bouquet(gens, P.alphabet)
        res = minimize_artin(g, P, 2)
        assert not res.capped
        _MINIMIZED.append((res.graph, 2))
        v = certify_artin(res, P, 2)
        statuses[v.status.value] = statuses.get(v.status.value, 0) + 1
        if v.status is Status.FREE_CERTIFIED:
            # soundness audit: no bounded completion survives on the fixpoint
            assert audit_artin_completions(res.graph, P, 2) == []
    inconclusive = statuses.get(Status.INCONCLUSIVE.value, 0)
    report(9, t0, 300, f"50 runs, statuses {statuses}, inconclusive rate "
                       f"{inconclusive}/50 reported")


def test_c10_parity_cover_batch():
    t0 = time.time()
    P = coxeter_setup(3, 10)
    rng = random.Random(1010)
    connected = split = 0
    for _ in range(50):
        s = rng.randint(1, 3)
        gens = [random_word(rng, P.alphabet, rng.randint(1, 8)) for _ in range(s)]
        g, _ = bouquet(gens, P.alphabet)
        cover, in_kernel = parity_double_cover(g, P.exponents)
        if in_kernel:
            split += 1
            assert all(len(g.label(e)) % 2 == 0 for e in g.edge_ids())
            assert len(cover.edge_ids()) == len(g.edge_ids())
        else:
            connected += 1
            assert any(len(g.label(e)) % 2 == 1 for e in g.edge_ids())
            assert len(cover.edge_ids()) == 2 * len(g.edge_ids())
            assert 1 - cover.euler_characteristic() == 2 * s - 1
    report(10, t0, 30, f"50 covers: {connected} connected, {split} split")


def test_c11_cli_determinism(tmp_path, capsys):
    t0 = time.time()
    inputs = {
        "cox.txt": ("type coxeter\ngenerators a b c\nm a b 7\nm a c 7\nm b c 7\n"
                    "k 2\nsubgroup\ngen a b c\ngen b c a b\n"),
        "onerel.txt": ("type one-relator\ngenerators x y\nrelator x y x' y'\n"
                       "exponent 12\nk 2\nsubgroup\ngen x x\ngen y y\n"),
    }
    for name, text in inputs.items():
        f = tmp_path / name
        f.write_text(text)
        blobs = []
        for attempt in range(2):
            js = tmp_path / f"{name}.{attempt}.json"
            dot = tmp_path / f"{name}.{attempt}.dot"
            code = main(["minimize", str(f), "--json", str(js),
                         "--dot", str(dot), "--seed", "3"])
            assert code == 0
            blobs.append((js.read_bytes(), dot.read_bytes()))
        assert blobs[0] == blobs[1], f"nondeterministic output for {name}"
        main(["certify", str(f)])
        first = capsys.readouterr().out
        main(["certify", str(f)])
        second = capsys.readouterr().out
        assert first == second
    report(11, t0, 60, "byte-identical JSON and DOT across repeated runs")
