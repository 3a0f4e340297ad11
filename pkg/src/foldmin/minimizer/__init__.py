"""Minimization drivers and certified verdicts for the three families."""

from .base import (
    EXIT_HYPOTHESIS,
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    EXIT_PARSE,
    MinimizeResult,
    Status,
    Verdict,
    Witness,
)
from .coxeter import (
    audit_weakly_dehn_paths,
    certify_coxeter,
    half_rank_certify,
    minimize_coxeter,
    separability_pair,
)
from .artin import (
    artin_verdict,
    audit_artin_completions,
    certify_artin,
    minimize_artin,
)
from .onerel import (
    audit_spelling,
    certify_one_relator,
    minimize_one_relator,
    one_relator_verdict,
)


def coxeter_verdict(g0, P, k, max_iter=None) -> Verdict:
    """Minimize-and-certify convenience: try the torsion-free (freeness)
    track first; when torsion witnesses block it but no generator
    conjugates appear, rerun on the torsion-tolerant track and report
    quasiconvexity with the torsion witnesses attached."""
    res = minimize_coxeter(g0, P, k, mode="subgroup", require_torsion_free=True,
                           max_iter=max_iter)
    v = certify_coxeter(res, P, k, torsion_free_required=True)
    if v.status is not Status.WITNESSED:
        return v
    if any(w.kind == "GeneratorConjugate" for w in res.witnesses):
        return v
    res2 = minimize_coxeter(g0, P, k, mode="subgroup", require_torsion_free=False,
                            max_iter=max_iter)
    v2 = certify_coxeter(res2, P, k, torsion_free_required=False)
    if v2.status is Status.QUASICONVEX_CERTIFIED:
        keys = {w.key() for w in v2.witnesses}
        for w in res.witnesses:
            if w.key() not in keys:
                v2.witnesses.append(w)
        v2.notes.append("subgroup has torsion (witnesses attached); freeness track blocked")
    return v2


__all__ = [
    "EXIT_HYPOTHESIS", "EXIT_INCONCLUSIVE", "EXIT_OK", "EXIT_PARSE",
    "MinimizeResult", "Status", "Verdict", "Witness",
    "audit_weakly_dehn_paths", "certify_coxeter", "half_rank_certify",
    "minimize_coxeter", "separability_pair", "coxeter_verdict",
    "artin_verdict", "audit_artin_completions", "certify_artin", "minimize_artin",
    "audit_spelling", "certify_one_relator", "minimize_one_relator",
    "one_relator_verdict",
]
