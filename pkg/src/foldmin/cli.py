"""Command-line front end: input parsing, subcommand dispatch, JSON/DOT
output, and the seeded random-instance generator.

Input grammar (line oriented, ``#`` starts a comment)::

    type coxeter | artin | one-relator
    generators a b c
    m a b 7              # pairwise exponent; unlisted pairs default to inf
    relator a b a' b'    # one-relator only
    exponent 12          # one-relator only: the power of the relator
    k 2                  # rank budget (default: number of gen lines)
    subgroup
    gen a b a
    gen b c
    element a b          # optional: pair-mode target element

Exit codes: 0 certified or witnessed cleanly, 2 parse error, 3 hypothesis
not met, 4 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .fgraph import FGraph, bouquet
from .moves import fold_all
from .minimizer import (
    EXIT_PARSE,
    Verdict,
    artin_verdict,
    coxeter_verdict,
    one_relator_verdict,
    separability_pair,
)
from .oracles import (
    CoxeterOracle,
    OneRelatorOracle,
    artin_dihedral_is_trivial,
    newman_scan,
    relator_path_property,
    weakly_dehn_reduced,
)
from .presentations import (
    ArtinPresentation,
    CoxeterPresentation,
    ExponentMatrix,
    OneRelatorPresentation,
    Presentation,
)
from .words import Alphabet, Mode, Word, reduce_letters


class ParseError(ValueError):
    pass


@dataclass
class ParsedInput:
    presentation: Presentation
    generators: list[Word]
    element: Optional[Word]
    k: int

    @property
    def alphabet(self) -> Alphabet:
        return self.presentation.alphabet


def parse_input(text: str) -> ParsedInput:
    """Parse the input grammar; all words are reduced on ingestion."""
    family = None
    names: Optional[tuple[str, ...]] = None
    m_entries: dict[tuple[int, int], int] = {}
    relator_text = None
    exponent = None
    k = None
    gen_texts: list[str] = []
    element_text = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        keyword, rest = parts[0], (parts[1] if len(parts) > 1 else "")
        if keyword == "type":
            if rest not in ("coxeter", "artin", "one-relator"):
                raise ParseError(f"unknown type: {rest!r}")
            family = rest
        elif keyword == "generators":
            names = tuple(rest.split())
            if not names:
                raise ParseError("generators line needs at least one name")
        elif keyword == "m":
            toks = rest.split()
            if len(toks) != 3:
                raise ParseError(f"bad m line: {raw!r}")
            if names is None:
                raise ParseError("m line before generators")
            a, b, mval = toks
            if a not in names or b not in names:
                raise ParseError(f"unknown generator in m line: {raw!r}")
            if a == b:
                raise ParseError(f"exponent for a generator with itself: {raw!r}")
            if mval == "inf":
                continue
            m = int(mval)
            if m < 2:
                raise ParseError(f"exponent below 2: {raw!r}")
            i, j = sorted((names.index(a), names.index(b)))
            if (i, j) in m_entries:
                raise ParseError(f"duplicate exponent for pair {a}, {b}")
            m_entries[(i, j)] = m
        elif keyword == "relator":
            relator_text = rest
        elif keyword == "exponent":
            exponent = int(rest)
        elif keyword == "k":
            k = int(rest)
        elif keyword == "subgroup":
            continue
        elif keyword == "gen":
            gen_texts.append(rest)
        elif keyword == "element":
            element_text = rest
        else:
            raise ParseError(f"unknown keyword: {keyword!r}")
    if family is None:
        raise ParseError("missing type line")
    if names is None:
        raise ParseError("missing generators line")
    mode = Mode.INVOLUTIVE if family == "coxeter" else Mode.FREE_INVERSE
    try:
        alphabet = Alphabet(names, mode)
        if family == "coxeter":
            pres: Presentation = CoxeterPresentation(
                alphabet, ExponentMatrix.from_dict(len(names), m_entries))
        elif family == "artin":
            pres = ArtinPresentation(
                alphabet, ExponentMatrix.from_dict(len(names), m_entries))
        else:
            if relator_text is None:
                raise ParseError("one-relator input needs a relator line")
            if exponent is None:
                raise ParseError("one-relator input needs an exponent line")
            relator = alphabet.word_from_text(relator_text)
            pres = OneRelatorPresentation(alphabet, relator, exponent)
        gens = [reduce_letters(alphabet.word_from_text(t), alphabet.involutive)
                for t in gen_texts]
        element = (alphabet.word_from_text(element_text)
                   if element_text is not None else None)
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    if k is None:
        k = max(len(gens), 1)
    if k < 1:
        raise ParseError("k must be at least 1")
    if len(gens) > k:
        raise ParseError(f"{len(gens)} generators exceed the rank budget k={k}")
    return ParsedInput(pres, gens, element, k)


def print_input(parsed: ParsedInput) -> str:
    """Canonical printer; parse(print(x)) round-trips."""
    P = parsed.presentation
    a = parsed.alphabet
    lines = []
    if isinstance(P, CoxeterPresentation):
        lines.append("type coxeter")
    elif isinstance(P, ArtinPresentation):
        lines.append("type artin")
    else:
        lines.append("type one-relator")
    lines.append("generators " + " ".join(a.names))
    if isinstance(P, (CoxeterPresentation, ArtinPresentation)):
        for i, j, m in P.exponents.pairs():
            lines.append(f"m {a.names[i]} {a.names[j]} {m}")
    else:
        lines.append("relator " + a.word_to_text(P.relator))
        lines.append(f"exponent {P.exponent}")
    lines.append(f"k {parsed.k}")
    lines.append("subgroup")
    for w in parsed.generators:
        lines.append("gen " + a.word_to_text(w))
    if parsed.element is not None:
        lines.append("element " + a.word_to_text(parsed.element))
    return "\n".join(lines) + "\n"


def subgroup_graph(parsed: ParsedInput) -> FGraph:
    g, dropped = bouquet(parsed.generators, parsed.alphabet)
    if dropped:
        print(f"note: dropped trivial generators at positions {dropped}",
              file=sys.stderr)
    return g


def run_verdict(parsed: ParsedInput, max_iter: Optional[int] = None) -> Verdict:
    g = subgroup_graph(parsed)
    P = parsed.presentation
    if isinstance(P, CoxeterPresentation):
        return coxeter_verdict(g, P, parsed.k, max_iter=max_iter)
    if isinstance(P, ArtinPresentation):
        return artin_verdict(g, P, parsed.k, max_iter=max_iter)
    return one_relator_verdict(g, P, parsed.k, max_iter=max_iter)


def _dump_json(obj, path: Optional[str]) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# -- corpus generation --------------------------------------------------------

def random_reduced_word(rng: random.Random, a: Alphabet, length: int) -> Word:
    letters: list[int] = []
    for _ in range(length):
        while True:
            gen = rng.randrange(a.n)
            sign = 1 if a.involutive else rng.choice((1, -1))
            x = sign * (gen + 1)
            if letters:
                if a.involutive and letters[-1] == x:
                    continue
                if not a.involutive and letters[-1] == -x:
                    continue
            letters.append(x)
            break
    return tuple(letters)


def random_primitive_relator(rng: random.Random, a: Alphabet, length: int) -> Word:
    from .words import is_cyclically_reduced, is_proper_power

    while True:
        w = random_reduced_word(rng, a, length)
        if not is_cyclically_reduced(w, a):
            continue
        if len(w) > 1 and is_proper_power(w) is not None:
            continue
        return w


def corpus_generate(
    family: str,
    n: int,
    m: int,
    k: int,
    word_len_range: tuple[int, int],
    trials: int,
    seed: int,
    relator_len: int = 4,
) -> list[ParsedInput]:
    """Seeded stream of random subgroup instances; the seed fully determines
    the stream."""
    rng = random.Random(seed)
    names = tuple(f"a{t + 1}" for t in range(n))
    out: list[ParsedInput] = []
    for _ in range(trials):
        if family == "coxeter":
            alphabet = Alphabet(names, Mode.INVOLUTIVE)
            pres: Presentation = CoxeterPresentation(
                alphabet,
                ExponentMatrix.from_dict(
                    n, {(i, j): m for i in range(n) for j in range(i + 1, n)}),
            )
        elif family == "artin":
            alphabet = Alphabet(names, Mode.FREE_INVERSE)
            pres = ArtinPresentation(
                alphabet,
                ExponentMatrix.from_dict(
                    n, {(i, j): m for i in range(n) for j in range(i + 1, n)}),
            )
        elif family == "one-relator":
            alphabet = Alphabet(names, Mode.FREE_INVERSE)
            pres = OneRelatorPresentation(
                alphabet, random_primitive_relator(rng, alphabet, relator_len), m)
        else:
            raise ValueError(f"unknown family: {family}")
        gens = [
            random_reduced_word(rng, alphabet,
                                rng.randint(word_len_range[0], max(word_len_range)))
            for _ in range(k)
        ]
        out.append(ParsedInput(pres, gens, None, k))
    return out


# -- subcommands --------------------------------------------------------------

def _cmd_minimize(args) -> int:
    parsed = parse_input(open(args.file).read())
    verdict = run_verdict(parsed, max_iter=args.max_iter)
    report = verdict.to_json_dict()
    report["seed"] = args.seed
    _dump_json(report, args.json)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(verdict.graph.export_dot())
    if args.trace:
        _dump_json([r.to_json_dict() for r in verdict.trace], args.trace)
    return verdict.exit_code


def _cmd_certify(args) -> int:
    parsed = parse_input(open(args.file).read())
    verdict = run_verdict(parsed, max_iter=args.max_iter)
    out = verdict.to_json_dict()
    del out["graph"]
    _dump_json(out, None)
    return verdict.exit_code


def _cmd_wp(args) -> int:
    parsed = parse_input(open(args.file).read())
    P = parsed.presentation
    a = parsed.alphabet
    w = reduce_letters(a.word_from_text(args.word), a.involutive)
    if isinstance(P, CoxeterPresentation):
        oracle = CoxeterOracle(P)
        reduced = oracle.reduce(w)
        hit = weakly_dehn_reduced(w, P)
        hits = [hit.to_json_dict(a)] if hit else []
    elif isinstance(P, OneRelatorPresentation):
        oracle2 = OneRelatorOracle(P)
        reduced = oracle2.reduce(w)
        hit = newman_scan(w, P)
        hits = [hit.to_json_dict(a)] if hit else []
    else:
        support = sorted({abs(x) - 1 for x in w})
        if len(support) > 2:
            print("artin word problem supported on two-generator words only",
                  file=sys.stderr)
            return EXIT_PARSE
        if len(support) == 2:
            i, j = support
            m = P.exponents.get(i, j)
            if m is None:
                trivial = not w  # unrelated pair: free, reduced word decides
            else:
                trivial = artin_dihedral_is_trivial(w, i, j, m)
        else:
            trivial = not w
        _dump_json({"trivial": trivial, "reduced": a.word_to_text(w), "hits": []}, None)
        return 0
    _dump_json(
        {"trivial": not reduced, "reduced": a.word_to_text(reduced), "hits": hits},
        None,
    )
    return 0


def _cmd_rpp(args) -> int:
    parsed = parse_input(open(args.file).read())
    P = parsed.presentation
    if not isinstance(P, CoxeterPresentation):
        print("relator path audit applies to coxeter inputs", file=sys.stderr)
        return EXIT_PARSE
    g = subgroup_graph(parsed)
    fold_all(g)
    holds, violations = relator_path_property(g, P)
    _dump_json({"holds": holds, "violations": violations}, None)
    return 0 if holds else 4


def _cmd_separate(args) -> int:
    parsed = parse_input(open(args.file).read())
    P = parsed.presentation
    if not isinstance(P, CoxeterPresentation):
        print("separability runs on coxeter inputs", file=sys.stderr)
        return EXIT_PARSE
    if parsed.element is None:
        print("separate needs an element line", file=sys.stderr)
        return EXIT_PARSE
    g = subgroup_graph(parsed)
    try:
        verdict = separability_pair(g, parsed.element, P, parsed.k,
                                    max_iter=args.max_iter)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_PARSE
    out = verdict.to_json_dict()
    del out["graph"]
    _dump_json(out, None)
    return verdict.exit_code


def _cmd_corpus(args) -> int:
    instances = corpus_generate(
        args.type, args.n, args.m, args.k,
        (args.len_min, args.len_max), args.trials, args.seed,
        relator_len=args.relator_len,
    )
    counts: dict[str, int] = {}
    iters = []
    final_l = []
    for parsed in instances:
        verdict = run_verdict(parsed, max_iter=args.max_iter)
        counts[verdict.status.value] = counts.get(verdict.status.value, 0) + 1
        iters.append(verdict.iterations)
        final_l.append(verdict.graph.total_label_length())
    table = {
        "family": args.type,
        "n": args.n,
        "m": args.m,
        "k": args.k,
        "trials": args.trials,
        "seed": args.seed,
        "statuses": dict(sorted(counts.items())),
        "mean_iterations": round(sum(iters) / len(iters), 3) if iters else 0,
        "mean_final_label_length": round(sum(final_l) / len(final_l), 3) if final_l else 0,
    }
    if args.json:
        _dump_json(table, None)
    else:
        width = max(len(s) for s in table["statuses"]) if counts else 8
        print(f"corpus {args.type} n={args.n} m={args.m} k={args.k} "
              f"trials={args.trials} seed={args.seed}")
        for status, c in sorted(counts.items()):
            print(f"  {status:<{width}}  {c}")
        print(f"  mean iterations          {table['mean_iterations']}")
        print(f"  mean final label length  {table['mean_final_label_length']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="foldmin",
        description="subgroup graphs of Coxeter, Artin and one-relator groups: "
                    "folds, minimization, certified verdicts",
    )
    ap.add_argument("--version", action="version", version=f"foldmin {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file")
        p.add_argument("--max-iter", type=int, default=None)

    p = sub.add_parser("minimize", help="minimize a subgroup graph and report")
    common(p)
    p.add_argument("--json", default=None, help="write the report here (default stdout)")
    p.add_argument("--dot", default=None, help="write the final graph as DOT")
    p.add_argument("--trace", default=None, help="write the move trace as JSON")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_minimize)

    p = sub.add_parser("certify", help="emit the verdict JSON")
    common(p)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("wp", help="family word problem")
    common(p)
    p.add_argument("--word", required=True)
    p.set_defaults(func=_cmd_wp)

    p = sub.add_parser("rpp", help="relator path audit of the folded subgroup graph")
    common(p)
    p.set_defaults(func=_cmd_rpp)

    p = sub.add_parser("separate", help="pair-mode separability run (needs element line)")
    common(p)
    p.set_defaults(func=_cmd_separate)

    p = sub.add_parser("corpus", help="seeded random instances with aggregate statistics")
    p.add_argument("--type", required=True, choices=["coxeter", "artin", "one-relator"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--len-min", type=int, default=2)
    p.add_argument("--len-max", type=int, default=8)
    p.add_argument("--relator-len", type=int, default=4)
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_corpus)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
