"""Malformed-input generator for the command line.

Every mutation below is invalid by construction (broken JSON, float literals,
booleans where the schemas never allow them, unknown or missing keys, bad
flag values), so the expected exit code is always 2.
"""
import copy
import io as _io
import json
import os
import random
import re

from ncrep.cli import main

OPTIONAL = {"relations", "arrow_matrices", "quiver"}
# quoted rationals and bare integers in json.dumps output
NUMBER = re.compile(r'"-?[0-9]+(/[0-9]+)?"|(?<=[\[:,] )-?[0-9]+')

DATA = os.path.join(os.path.dirname(__file__), "data")


def load(name):
    with open(os.path.join(DATA, name)) as fh:
        return json.load(fh)


def run(argv):
    out, err = _io.StringIO(), _io.StringIO()
    code = main([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


# (argv template, flag to mutate, file that flag reads); other flags use the data files as-is
BASES = [
    (["chcheck", "--matrix", "{}"], "matrix", [["1", "2"], ["3", "4"]]),
    (["stdid", "--matrices", "{}"], "matrices", [[["0", "1"], ["0", "0"]], [["0", "0"], ["1", "0"]]]),
    (["cycles", "--quiver", "{}", "--max-len", "3"], "quiver", "two_cycle.json"),
    (["paths", "--quiver", "{}", "--start", "0", "--end", "1", "--max-len", "2"], "quiver", "kronecker.json"),
    (["blocks", "--quiver", "{}", "--bound", "2"], "quiver", "two_cycle.json"),
    (["invariants", "--quiver", "@kronecker.json", "--rep", "{}"], "rep", "kronecker_rep.json"),
    (["verify", "--presentation", "{}", "--point", "@commuting_diag.json"], "presentation", "commuting.json"),
    (["verify", "--presentation", "@commuting.json", "--point", "{}"], "point", "commuting_diag.json"),
    (["tangent", "--presentation", "@commuting.json", "--point", "{}"], "point", "commuting_diag.json"),
    (["conjugate", "--presentation", "@commuting.json", "--point", "@commuting_diag.json", "--g", "{}"], "g",
     "g2.json"),
    (["homext", "--quiver", "@kronecker.json", "--left", "{}", "--right", "@kronecker_rep.json"], "left",
     "kronecker_rep.json"),
    (["smooth", "--presentation", "@fixtureB_presentation.json", "--simples", "{}"], "simples",
     "fixtureB_origin.json"),
    (["localquiver", "--quiver", "@kronecker.json", "--simples", "{}"], "simples", "kronecker_simples.json"),
    (["strata", "--quiver", "@kronecker.json", "--simples", "{}"], "simples", "kronecker_simples.json"),
    (["nilfilt", "--algebra", "{}"], "algebra", "fixtureB.json"),
    (["abelianize", "--algebra", "{}"], "algebra", "m2.json"),
    (["freeprod", "--left", "{}", "--right", "@commuting.json"], "left", "fixtureB_presentation.json"),
    (["semisimplify", "--quiver", "@kronecker.json", "--rep", "{}"], "rep", "kronecker_rep.json"),
]

# integer flags and values that are always out of range
BAD_FLAGS = [
    (["chpoly", "--n"], ["0", "-3", "x", "1.5", "", "25"]),
    (["tracereduce", "--n", "2", "--m"], ["0", "-1", "two", "401"]),
    (["cycles", "--quiver", "@two_cycle.json", "--max-len"], ["0", "-2", "65", "1e3"]),
    (["blocks", "--quiver", "@two_cycle.json", "--dims"], ["1,-1", "a,b", ",", "1;2"]),
    (["paths", "--quiver", "@kronecker.json", "--start", "0", "--end", "1", "--max-len"], ["-1", "99"]),
    (["paths", "--quiver", "@kronecker.json", "--max-len", "1", "--end", "1", "--start"], ["5", "-1"]),
]


def _leaf_paths(obj, prefix=()):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _leaf_paths(v, prefix + (k,))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _leaf_paths(v, prefix + (i,))
    yield prefix


def _set(obj, path, value):
    if not path:
        return value
    cur = obj
    for p in path[:-1]:
        cur = cur[p]
    cur[path[-1]] = value
    return obj


def _mutate(rng, obj):
    """Return bytes of a malformed version of obj."""
    kind = rng.randrange(7)
    text = json.dumps(obj)
    if kind == 0:  # truncated
        return text[:rng.randrange(1, len(text))].encode()
    if kind == 1:  # float literal in place of a leaf
        path = rng.choice(list(_leaf_paths(obj)))
        return json.dumps(_set(copy.deepcopy(obj), path, 0.5)).encode()
    if kind == 2:  # boolean / null in place of any value
        path = rng.choice(list(_leaf_paths(obj)))
        return json.dumps(_set(copy.deepcopy(obj), path, rng.choice([True, False, None]))).encode()
    if kind == 3:  # unknown key or junk element at the top
        o = copy.deepcopy(obj)
        if isinstance(o, dict):
            o["zz_unknown"] = 1
        else:
            o.insert(rng.randrange(len(o) + 1), {"zz_unknown": 1})
        return json.dumps(o).encode()
    if kind == 4:  # missing required key / wrong top-level type
        required = sorted(k for k in obj if k not in OPTIONAL) if isinstance(obj, dict) else []
        if required:
            o = copy.deepcopy(obj)
            del o[rng.choice(required)]
            return json.dumps(o).encode()
        return json.dumps({"rows": obj}).encode()
    if kind == 5:  # binary garbage / non-JSON text
        return bytes(rng.randrange(256) for _ in range(rng.randrange(1, 40))) + b"\xff"
    # NaN / Infinity in place of a number
    spots = [m.span() for m in NUMBER.finditer(text)]
    if not spots:
        return b"NaN"
    a, b = rng.choice(spots)
    return (text[:a] + rng.choice(["NaN", "Infinity", "-Infinity"]) + text[b:]).encode()


def _materialize(template, slot_flag, payload, tmpdir, tag):
    argv = []
    for tok in template:
        if tok == "{}":
            path = os.path.join(tmpdir, f"fuzz_{tag}.json")
            with open(path, "wb") as fh:
                fh.write(payload)
            argv.append(path)
        elif tok.startswith("@"):
            argv.append(os.path.join(DATA, tok[1:]))
        else:
            argv.append(tok)
    return argv


def valid_argv(index, tmpdir):
    """The unmutated form of BASES[index] (used as a sanity check: must exit 0)."""
    template, flag, src = BASES[index]
    obj = load(src) if isinstance(src, str) else src
    return _materialize(template, flag, json.dumps(obj).encode(), tmpdir, f"valid{index}")


def malformed_cases(count, seed, tmpdir):
    """Yield (description, argv) for count malformed invocations."""
    rng = random.Random(seed)
    for i in range(count):
        r = rng.random()
        if r < 0.8:
            b = rng.randrange(len(BASES))
            template, flag, src = BASES[b]
            obj = load(src) if isinstance(src, str) else src
            payload = _mutate(rng, obj)
            yield f"{template[0]}:{flag}", _materialize(template, flag, payload, tmpdir, i % 7)
        elif r < 0.9:
            prefix, values = rng.choice(BAD_FLAGS)
            yield f"{prefix[0]}:flag", _materialize(prefix + [rng.choice(values)], None, b"", tmpdir, 0)
        else:
            choice = rng.randrange(4)
            if choice == 0:
                yield "unknown-subcommand", ["frobnicate", "--n", "2"]
            elif choice == 1:
                yield "unknown-flag", ["chpoly", "--n", "2", "--colour", "red"]
            elif choice == 2:
                yield "missing-file", ["nilfilt", "--algebra", os.path.join(tmpdir, "does-not-exist.json")]
            else:
                yield "missing-flag", ["homext", "--quiver", os.path.join(DATA, "kronecker.json")]
