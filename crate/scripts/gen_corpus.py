#!/usr/bin/env python3
"""Regenerate the bundled JSON corpus under crates/cli/corpus.

Embedding values are computed with mpmath at 50 digits and rounded to the
nearest double; the stored radius bounds the rounding error.
"""

import itertools
import json
import pathlib
import re

import mpmath

mpmath.mp.dps = 50

ROOT = pathlib.Path(__file__).resolve().parent.parent / "crates" / "cli" / "corpus"
RADIUS = 1e-15


FLAT_ARRAY = re.compile(r"\[[^\[\]{}]*\]")


def write(rel, obj):
    path = ROOT / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(obj, indent=2)
    text = FLAT_ARRAY.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(0)[1:-1].split(",") if x.strip()) + "]", text)
    path.write_text(text + "\n")


def interval(z):
    z = mpmath.mpc(z)
    return {"re": float(z.real), "im": float(z.imag), "rad": RADIUS * max(1.0, float(abs(z)))}


def cyclic(n):
    return {"kind": "cyclic", "n": n}


def table(elements, compose):
    index = {e: i for i, e in enumerate(elements)}
    return {"kind": "table", "rows": [[index[compose(a, b)] for b in elements] for a in elements]}


def perm_compose(a, b):
    return tuple(a[b[i]] for i in range(len(a)))


def q8_rows():
    units = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    signs = [[1, 1, 1, 1], [1, -1, 1, -1], [1, -1, -1, 1], [1, 1, -1, -1]]

    def mul(a, b):
        s = (1 if a % 2 == 0 else -1) * (1 if b % 2 == 0 else -1) * signs[a // 2][b // 2]
        return 2 * units[a // 2][b // 2] + (1 if s < 0 else 0)

    return {"kind": "table", "rows": [[mul(a, b) for b in range(8)] for a in range(8)]}


def groups():
    s3 = list(itertools.permutations(range(3)))
    d4 = []
    for k in range(4):
        rot = tuple((i + k) % 4 for i in range(4))
        d4.append(rot)
        d4.append(perm_compose(rot, (0, 3, 2, 1)))
    d4.sort()
    out = {
        "C2": cyclic(2),
        "C3": cyclic(3),
        "C4": cyclic(4),
        "C2xC2": {"kind": "direct_product", "factors": [cyclic(2), cyclic(2)]},
        "S3": table(s3, perm_compose),
        "D4": table(d4, perm_compose),
        "Q8": q8_rows(),
        "C6": cyclic(6),
    }
    for name, g in out.items():
        write(f"groups/{name}.json", {"schema": "tamearith.group/1", "name": name, "group": g})


def primitive_root(p):
    for r in range(2, p):
        if all(pow(r, (p - 1) // q, p) != 1 for q in range(2, p) if (p - 1) % q == 0 and all(q % d for d in range(2, q))):
            return r
    raise ValueError(p)


def field(name, group, emb, conj, ram, generator, notes):
    write(
        f"fields/{name}.json",
        {
            "schema": "tamearith.field/1",
            "name": name,
            "notes": notes,
            "group": group,
            "embeddings": [interval(z) for z in emb],
            "conj_element": conj,
            "ramification": ram,
            "integral_generator": generator,
        },
    )


def unit_vector(n):
    return ["1"] + ["0"] * (n - 1)


def cyclotomic(p):
    r = primitive_root(p)
    n = p - 1
    zeta = mpmath.exp(2j * mpmath.pi / p)
    emb = [zeta ** pow(r, j, p) for j in range(n)]
    ram = [{"p": p, "f": 1, "g": 1, "inertia": list(range(n)), "character": {"generator": 1, "exponent": 1}}]
    notes = f"Q(zeta_{p}); element j acts as zeta -> zeta^({r}^j); b = zeta generates O_N over Z[G]"
    field(f"Q_zeta{p}", cyclic(n), emb, n // 2, ram, unit_vector(n), notes)


def zeta8():
    ks = [1, 5, 3, 7]
    zeta = mpmath.exp(2j * mpmath.pi / 8)
    emb = [1 + zeta**k + zeta ** (2 * k) for k in ks]
    ram = [{"p": 2, "f": 1, "g": 1, "inertia": [0, 1, 2, 3], "character": {"generator": 1, "exponent": 1}}]
    notes = "Q(zeta_8); element i acts as zeta -> zeta^k for k in [1, 5, 3, 7]; b = 1 + zeta + zeta^2; wild at 2"
    grp = table(ks, lambda a, b: a * b % 8)
    field("Q_zeta8", grp, emb, 3, ram, None, notes)


def s3_cubic():
    roots = mpmath.polyroots([1, 0, -1, -1], maxsteps=200, extraprec=200)
    real = [z for z in roots if abs(mpmath.im(z)) < mpmath.mpf(10) ** -40]
    cplx = sorted((z for z in roots if abs(mpmath.im(z)) >= mpmath.mpf(10) ** -40), key=lambda z: mpmath.im(z))
    a = [mpmath.re(real[0])] + cplx
    perms = list(itertools.permutations(range(3)))
    emb = [a[g[0]] * a[g[1]] + a[g[0]] * a[g[1]] ** 2 for g in perms]
    ram = [{"p": 23, "f": 1, "g": 3, "inertia": [0, 2], "character": {"generator": 2, "exponent": 1}}]
    notes = (
        "splitting field of x^3 - x - 1; roots ordered real, then by imaginary part; "
        "elements are permutations of the roots in lexicographic order; b = a0 a1 + a0 a1^2"
    )
    field("S3_cubic", table(perms, perm_compose), emb, 1, ram, None, notes)


def rationals():
    field("Q", cyclic(1), [1], 0, [], ["1"], "the rational field with b = 1")


def rat_matrix(rows, cols, entries):
    return {"rows": rows, "cols": cols, "entries": entries}


def complexes():
    # Z[C2]^2 -> Z[C2]^2 by a unimodular matrix, with telescoping global bases
    u = [["1", "0"], ["0", "1"], ["0", "0"], ["1", "0"]]
    ut = [["1", "0"], ["0", "0"], ["0", "1"], ["1", "0"]]
    ident = [["1", "0"], ["0", "0"], ["0", "0"], ["1", "0"]]
    write(
        "complexes/acyclic_c2.json",
        {
            "schema": "tamearith.complex/1",
            "name": "acyclic_c2",
            "group": cyclic(2),
            "start": 0,
            "ranks": [2, 2],
            "boundaries": [rat_matrix(2, 2, ut)],
            "metric": {"kind": "unit"},
            "global_bases": [rat_matrix(2, 2, ident), rat_matrix(2, 2, u)],
        },
    )
    write(
        "complexes/rescaled_s3.json",
        {
            "schema": "tamearith.complex/1",
            "name": "rescaled_s3",
            "group": table(list(itertools.permutations(range(3))), perm_compose),
            "start": 0,
            "ranks": [1, 1],
            "boundaries": [rat_matrix(1, 1, [["3", "1", "0", "0", "0", "0"]])],
            "metric": {"kind": "standard"},
            "rescale": [2.0, 0.5, 3.0],
        },
    )
    write(
        "complexes/times_five_c4.json",
        {
            "schema": "tamearith.complex/1",
            "name": "times_five_c4",
            "group": cyclic(4),
            "start": 0,
            "ranks": [1, 1],
            "boundaries": [rat_matrix(1, 1, [["5", "0", "0", "0"]])],
            "metric": {"kind": "unit"},
        },
    )


if __name__ == "__main__":
    groups()
    cyclotomic(5)
    cyclotomic(7)
    zeta8()
    s3_cubic()
    rationals()
    complexes()
