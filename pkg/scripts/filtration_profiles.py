"""Commutator filtration profiles of small algebras given by structure constants."""
import argparse
from dataclasses import dataclass

from ncrep.filtration import (commutator_filtration, exterior_algebra, fixture_b_algebra, matrix_algebra,
                              tensor_algebra, truncated_polynomial_algebra, upper_triangular_algebra)


@dataclass
class ProfileConfig:
    max_matrix: int = 3
    max_exterior: int = 3
    with_tensors: bool = True


def algebras(cfg):
    B = fixture_b_algebra()
    yield "B", B
    for k in (2, 4):
        yield f"k[t]/t^{k}", truncated_polynomial_algebra(k)
    for k in range(1, cfg.max_exterior + 1):
        yield f"ext({k})", exterior_algebra(k)
    for n in range(2, cfg.max_matrix + 1):
        yield f"M{n}", matrix_algebra(n)
        yield f"T{n}", upper_triangular_algebra(n)
    if cfg.with_tensors:
        yield "B (x) B", tensor_algebra(B, B)
        yield "B (x) ext(1)", tensor_algebra(B, exterior_algebra(1))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-matrix", type=int, default=ProfileConfig.max_matrix)
    ap.add_argument("--max-exterior", type=int, default=ProfileConfig.max_exterior)
    ap.add_argument("--no-tensors", dest="with_tensors", action="store_false")
    cfg = ProfileConfig(**vars(ap.parse_args(argv)))
    print(f"{'algebra':14s} {'dim':>4s}  profile            nil_d")
    for name, a in algebras(cfg):
        p = commutator_filtration(a)
        nil = "-" if p.nil_d is None else str(p.nil_d)
        print(f"{name:14s} {a.dim:4d}  {str(p.dims):18s} {nil}")


if __name__ == "__main__":
    main()
