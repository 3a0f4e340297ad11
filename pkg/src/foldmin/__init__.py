"""foldmin: subgroup graphs of Coxeter groups, Artin groups and one-relator
groups with torsion, minimized by folds and attach/delete/subdivide/merge
moves, with certified freeness, quasiconvexity and separability verdicts."""

__version__ = "0.1.0"
