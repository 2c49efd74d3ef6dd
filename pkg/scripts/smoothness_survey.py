"""Tangent dimension vs. the second-order prediction at semisimple points.

Covers path algebras of the small quiver corpus and a handful of presented
algebras with relations.  Prints a table; --json writes the rows.
"""
import argparse
import json
from dataclasses import dataclass

from ncrep.exact import Matrix, NcPolynomial
from ncrep.local_structure import smoothness_report
from ncrep.rep_scheme import (Presentation, RepPoint, SemisimplePoint, commutative_presentation,
                              fixture_b_presentation, free_presentation, path_algebra_presentation, vertex_simple)
from ncrep.sampling import corpus_quivers


@dataclass
class SurveyConfig:
    max_mult: int = 2       # largest multiplicity placed on vertex 0
    max_n: int = 5
    json_out: str = ""


def scalar(p, mult=1, **vals):
    return SemisimplePoint(((RepPoint(p, {g: Matrix.from_rows([[vals.get(g, 0)]]) for g in p.generators}), mult),))


def presented_cases():
    X = NcPolynomial.variables(("x",))[0]
    dual = Presentation(("x",), (X * X,))
    cubic = Presentation(("x",), (X * X * X,))
    comm = commutative_presentation(["x", "y"])
    B = fixture_b_presentation()
    return [
        ("free<x,y> @ 0", free_presentation(["x", "y"]), scalar(free_presentation(["x", "y"]))),
        ("k[x]/x^2 @ 0", dual, scalar(dual)),
        ("k[x]/x^3 @ 0", cubic, scalar(cubic)),
        ("k[x,y] @ 0, m=2", comm, scalar(comm, 2)),
        ("B @ 0", B, scalar(B)),
    ]


def quiver_cases(cfg):
    for name, q in corpus_quivers().items():
        for m in range(1, cfg.max_mult + 1):
            alpha = tuple(m if i == 0 else 1 for i in q.vertices)
            if sum(alpha) > cfg.max_n:
                continue
            x = SemisimplePoint(tuple((vertex_simple(q, i), a) for i, a in enumerate(alpha)))
            yield f"{name} {alpha}", path_algebra_presentation(q), x


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-mult", type=int, default=SurveyConfig.max_mult)
    ap.add_argument("--max-n", type=int, default=SurveyConfig.max_n)
    ap.add_argument("--json", dest="json_out", default=SurveyConfig.json_out)
    cfg = SurveyConfig(**vars(ap.parse_args(argv)))

    rows = []
    print(f"{'case':28s} {'tangent':>7s} {'predicted':>9s} {'lower':>5s}  verdict")
    for label, p, x in list(quiver_cases(cfg)) + presented_cases():
        r = smoothness_report(p, x)
        flag = "" if r.certified else "  (not certified)"
        print(f"{label:28s} {r.tangent_dimension:7d} {r.predicted_dimension:9d} {r.lower_bound:5d}  {r.verdict}{flag}")
        rows.append({"case": label, "tangent": r.tangent_dimension, "predicted": r.predicted_dimension,
                     "lower_bound": r.lower_bound, "verdict": r.verdict, "certified": r.certified})
    if cfg.json_out:
        with open(cfg.json_out, "w") as fh:
            json.dump(rows, fh, indent=1)


if __name__ == "__main__":
    main()
