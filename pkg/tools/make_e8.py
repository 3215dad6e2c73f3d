#!/usr/bin/env python3
"""Write the E8 Chevalley-basis structure constants as an algebra file.

Standard construction: enumerate the 240 roots, fix a bimultiplicative
sign cocycle on the root lattice, and read the brackets off it.  The
sign conventions are pinned down by rebuilding two small simply-laced
systems (A2 and D4) with the same code and checking them against their
known Casimir scalars before anything is written.

Roots are handled in doubled coordinates so every vector is integral,
including the 128 half-integer roots of E8.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

try:
    import cgva  # noqa: F401  (probe only)
except ImportError:  # running from a checkout without an install
    sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cgva.fields import QQ
from cgva.lie import algebra_from_dict
from cgva.linalg import LinComb, Matrix, matrix_inverse


def dot(u, v) -> int:
    """True inner product of two doubled vectors."""
    s = sum(a * b for a, b in zip(u, v))
    assert s % 4 == 0, (u, v)
    return s // 4


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def neg(u):
    return tuple(-a for a in u)


def root_coefficients(simples, roots):
    """Integer coordinates of every root in the simple-root basis."""
    n = len(simples)
    cols = [LinComb({i: QQ.from_int(x) for i, x in enumerate(s) if x})
            for s in simples]
    m = Matrix.from_columns(cols, len(simples[0]), QQ)
    # the Gram approach keeps the system square for non-square coordinates
    gram = m.transpose() @ m
    ginv = matrix_inverse(gram)
    assert ginv is not None, "simple roots are dependent"
    out = {}
    for r in roots:
        b = LinComb({i: QQ.from_int(x) for i, x in enumerate(r) if x})
        x = ginv.mul_vec(m.transpose().mul_vec(b))
        coeff = []
        for i in range(n):
            v = x[i]
            iv = int(v) if v == int(v) else None
            assert iv is not None, f"non-integral coordinate for root {r}"
            coeff.append(iv)
        assert all(a == sum(c * s[k] for c, s in zip(coeff, simples))
                   for k, a in enumerate(r))
        out[r] = tuple(coeff)
    return out


def build_algebra_dict(name: str, simples, roots) -> dict:
    """Wire-format Chevalley basis algebra for a simply-laced root system.

    Basis order: Cartan H1..Hn, positive roots P001.., negative roots
    M001.. (M_k is minus P_k).  The invariant form is normalized so that
    <x_a, x_-a> = -1 and <H_i, H_j> is the Cartan matrix, which is the
    Killing form divided by twice the dual Coxeter number.
    """
    n = len(simples)
    for s in simples:
        assert dot(s, s) == 2, "normalization expects norm-2 simple roots"
    rootset = set(roots)
    assert all(neg(r) in rootset for r in rootset)

    coeffs = root_coefficients(simples, roots)
    positives = sorted((r for r in roots if sum(coeffs[r]) > 0),
                       key=lambda r: (sum(coeffs[r]), coeffs[r]))
    assert 2 * len(positives) == len(roots)
    ordered = positives + [neg(r) for r in positives]
    width = len(str(len(positives)))
    labels = [f"H{i + 1}" for i in range(n)] \
        + [f"P{k + 1:0{width}d}" for k in range(len(positives))] \
        + [f"M{k + 1:0{width}d}" for k in range(len(positives))]
    dim = n + len(ordered)
    index = {r: n + k for k, r in enumerate(ordered)}

    # sign cocycle on the root lattice, bimultiplicative in both slots:
    # exponent 1 on the diagonal, 0 above it, the inner product mod 2 below
    exp = [[1 if i == j else (0 if i < j else dot(simples[i], simples[j]) % 2)
            for j in range(n)] for i in range(n)]

    def eps(cm, cn) -> int:
        e = 0
        for i, mi in enumerate(cm):
            if not mi:
                continue
            row = exp[i]
            for j, nj in enumerate(cn):
                if nj:
                    e += mi * nj * row[j]
        return -1 if e % 2 else 1

    brackets: dict = {}

    def put(i, j, terms: dict) -> None:
        terms = {k: v for k, v in terms.items() if v}
        if not terms:
            return
        if i < j:
            brackets[(i, j)] = terms
        else:
            brackets[(j, i)] = {k: -v for k, v in terms.items()}

    for a in range(n):
        for r in ordered:
            c = dot(simples[a], r)
            if c:
                put(a, index[r], {index[r]: c})
    for r in ordered:
        ir = index[r]
        for s in ordered:
            js = index[s]
            if ir >= js:
                continue
            if s == neg(r):
                e = eps(coeffs[r], coeffs[s])
                put(ir, js, {a: e * c for a, c in enumerate(coeffs[r])})
            else:
                t = add(r, s)
                if t in rootset:
                    put(ir, js, {index[t]: eps(coeffs[r], coeffs[s])})

    form_entries = []
    for a in range(n):
        for b in range(n):
            v = dot(simples[a], simples[b])
            if v:
                form_entries.append([a, b, str(v)])
    for r in ordered:
        form_entries.append([index[r], index[neg(r)], "-1"])

    wire_brackets = []
    for (i, j) in sorted(brackets):
        terms = sorted(brackets[(i, j)].items())
        wire_brackets.append([i, j, [[k, str(c)] for k, c in terms]])
    return {
        "name": name,
        "dim": dim,
        "basis": labels,
        "brackets": wire_brackets,
        "form": {"type": "matrix", "entries": sorted(form_entries)},
    }


# -- root systems ----------------------------------------------------------

def a2_data():
    simples = [(2, -2, 0), (0, 2, -2)]
    base = [simples[0], simples[1], add(simples[0], simples[1])]
    return simples, base + [neg(r) for r in base]


def d4_data():
    simples = [(2, -2, 0, 0), (0, 2, -2, 0), (0, 0, 2, -2), (0, 0, 2, 2)]
    roots = []
    for i in range(4):
        for j in range(i + 1, 4):
            for si in (2, -2):
                for sj in (2, -2):
                    v = [0, 0, 0, 0]
                    v[i], v[j] = si, sj
                    roots.append(tuple(v))
    return simples, roots


def e8_data():
    simples = [
        (1, -1, -1, -1, -1, -1, -1, 1),
        (2, 2, 0, 0, 0, 0, 0, 0),
        (-2, 2, 0, 0, 0, 0, 0, 0),
        (0, -2, 2, 0, 0, 0, 0, 0),
        (0, 0, -2, 2, 0, 0, 0, 0),
        (0, 0, 0, -2, 2, 0, 0, 0),
        (0, 0, 0, 0, -2, 2, 0, 0),
        (0, 0, 0, 0, 0, -2, 2, 0),
    ]
    roots = []
    for i in range(8):
        for j in range(i + 1, 8):
            for si in (2, -2):
                for sj in (2, -2):
                    v = [0] * 8
                    v[i], v[j] = si, sj
                    roots.append(tuple(v))
    for signs in itertools.product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(signs)
    assert len(roots) == 240
    return simples, roots


def self_check() -> None:
    """Rebuild A2 and D4 and compare against known Casimir scalars.

    The loader re-verifies Jacobi and invariance on every basis triple,
    so passing here pins down every sign convention used above.
    """
    for ctor, want in ((a2_data, 6), (d4_data, 12)):
        simples, roots = ctor()
        alg = algebra_from_dict(build_algebra_dict("check", simples, roots), QQ)
        rep = alg.validate()
        assert rep.admissible, f"{ctor.__name__}: {rep.to_dict()}"
        got = alg.casimir_scalar()
        assert got == QQ.from_int(want), \
            f"{ctor.__name__}: casimir {got}, expected {want}"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="generate the E8 Chevalley-basis algebra file")
    parser.add_argument("out", nargs="?",
                        default=str(Path(__file__).with_name("e8.json")))
    args = parser.parse_args(argv)
    self_check()
    simples, roots = e8_data()
    data = build_algebra_dict("e8", simples, roots)
    with open(args.out, "w") as fh:
        json.dump(data, fh, sort_keys=True)
        fh.write("\n")
    nbr = sum(len(b[2]) for b in data["brackets"])
    print(f"wrote {args.out}: dim {data['dim']}, "
          f"{len(data['brackets'])} bracket pairs, {nbr} terms")
    return 0


if __name__ == "__main__":
    sys.exit(main())
