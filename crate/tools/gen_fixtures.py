#!/usr/bin/env python3
"""Generates the bundled JSON fixtures (rings, F-symbols, modular data,
triangulations). Run from the repo root; writes under crates/core/fixtures.
The Rust test suite re-validates every file against the full set of
invariants (pentagon, modularity, homology, oracle values), so this script
is just a convenient writer."""

import json
import math
import os
from itertools import permutations

ROOT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "fixtures")

PHI = (1.0 + math.sqrt(5.0)) / 2.0


def write(path, obj):
    full = os.path.join(ROOT, path)
    os.makedirs(os.path.dirname(full), exist_ok=True)
    with open(full, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")
    print("wrote", path)


# ----------------------------------------------------------------------
# Rings and F-symbols
# ----------------------------------------------------------------------

def ring_fixture(labels, dual, products, fvalues=None):
    """products: dict (i,j) -> list of k (with multiplicity). fvalues: dict
    (a,b,c,d,e,f) -> complex for the non-1 entries; all other admissible
    tuples get F = 1."""
    rank = len(labels)
    N = {}
    for (i, j), ks in products.items():
        for k in ks:
            N[(i, j, k)] = N.get((i, j, k), 0) + 1

    def n(i, j, k):
        return N.get((i, j, k), 0)

    fusion = [[i, j, k, N[(i, j, k)]] for (i, j, k) in sorted(N)]
    out = {"rank": rank, "labels": labels, "dual": dual, "fusion": fusion}
    if fvalues is not None:
        rows = []
        for a in range(rank):
            for b in range(rank):
                for c in range(rank):
                    for d in range(rank):
                        for e in range(rank):
                            for f in range(rank):
                                if n(a, b, e) and n(e, c, d) and n(b, c, f) and n(a, f, d):
                                    v = fvalues.get((a, b, c, d, e, f), 1.0)
                                    v = complex(v)
                                    rows.append([a, b, c, d, e, f, v.real, v.imag])
        out["fsymbols"] = rows
    return out


def group_ring(n):
    products = {(i, j): [(i + j) % n] for i in range(n) for j in range(n)}
    dual = [(-i) % n for i in range(n)]
    labels = [str(i) for i in range(n)]
    return labels, dual, products


write("rings/trivial.json", ring_fixture(["1"], [0], {(0, 0): [0]}, fvalues={}))

lz2 = group_ring(2)
write("rings/vec_z2.json", ring_fixture(["1", "g"], lz2[1], lz2[2], fvalues={}))

lz3 = group_ring(3)
write("rings/vec_z3.json", ring_fixture(["1", "g", "g2"], lz3[1], lz3[2], fvalues={}))

fib_products = {(0, 0): [0], (0, 1): [1], (1, 0): [1], (1, 1): [0, 1]}
s = 1.0 / math.sqrt(PHI)
fib_f = {
    (1, 1, 1, 1, 0, 0): 1.0 / PHI,
    (1, 1, 1, 1, 0, 1): s,
    (1, 1, 1, 1, 1, 0): s,
    (1, 1, 1, 1, 1, 1): -1.0 / PHI,
}
write("rings/fib.json", ring_fixture(["1", "tau"], [0, 1], fib_products, fvalues=fib_f))

# Ising: labels 1, psi, sigma.
ising_products = {
    (0, 0): [0], (0, 1): [1], (0, 2): [2],
    (1, 0): [1], (1, 1): [0], (1, 2): [2],
    (2, 0): [2], (2, 1): [2], (2, 2): [0, 1],
}
r2 = 1.0 / math.sqrt(2.0)
ising_f = {
    (2, 2, 2, 2, 0, 0): r2,
    (2, 2, 2, 2, 0, 1): r2,
    (2, 2, 2, 2, 1, 0): r2,
    (2, 2, 2, 2, 1, 1): -r2,
    (1, 2, 1, 2, 2, 2): -1.0,
    (2, 1, 2, 1, 2, 2): -1.0,
}
write("rings/ising.json", ring_fixture(["1", "psi", "sigma"], [0, 1, 2], ising_products, fvalues=ising_f))

# Rep(S3) Grothendieck ring: 1, sgn, std. No F-symbols bundled.
reps3_products = {
    (0, 0): [0], (0, 1): [1], (0, 2): [2],
    (1, 0): [1], (1, 1): [0], (1, 2): [2],
    (2, 0): [2], (2, 1): [2], (2, 2): [0, 1, 2],
}
write("rings/rep_s3.json", ring_fixture(["1", "sgn", "std"], [0, 1, 2], reps3_products))


# ----------------------------------------------------------------------
# Modular data
# ----------------------------------------------------------------------

def cx(z):
    z = complex(z)
    return [z.real, z.imag]


def modular_fixture(smat, tvec):
    return {"S": [[cx(z) for z in row] for row in smat], "T": [cx(z) for z in tvec]}


write("modular/rank1.json", modular_fixture([[1.0]], [1.0]))

write("modular/toric_code.json", modular_fixture(
    [[0.5, 0.5, 0.5, 0.5],
     [0.5, 0.5, -0.5, -0.5],
     [0.5, -0.5, 0.5, -0.5],
     [0.5, -0.5, -0.5, 0.5]],
    [1.0, 1.0, 1.0, -1.0]))

dnorm = 1.0 / math.sqrt(2.0 + PHI)
write("modular/fib_modular.json", modular_fixture(
    [[dnorm, dnorm * PHI], [dnorm * PHI, -dnorm]],
    [1.0, complex(math.cos(4 * math.pi / 5), math.sin(4 * math.pi / 5))]))

sq2 = math.sqrt(2.0)
write("modular/ising_modular.json", modular_fixture(
    [[0.5, 0.5, 0.5 * sq2], [0.5, 0.5, -0.5 * sq2], [0.5 * sq2, -0.5 * sq2, 0.0]],
    [1.0, -1.0, complex(math.cos(math.pi / 8), math.sin(math.pi / 8))]))

write("modular/semion.json", modular_fixture(
    [[r2, r2], [r2, -r2]],
    [1.0, 1j]))


# ----------------------------------------------------------------------
# Triangulations
# ----------------------------------------------------------------------
# Format: {"tets": [[[t, f, [p0,p1,p2,p3]], x4] ...]}: face f of a tet is
# the face opposite corner f; entry f of a tet's list names the partner
# (tetrahedron, face, corner bijection p with p[c] the image corner).

def lens_bipyramid(p, q):
    """L(p,q) from the p-gonal bipyramid: tet i spans (N, S, E_i, E_{i+1});
    the top hemisphere is identified with the bottom after rotation by q."""
    tets = []
    for i in range(p):
        faces = [None] * 4
        # face 1 (top) of tet i -> face 0 (bottom) of tet i+q, N->S.
        faces[1] = [(i + q) % p, 0, [1, 0, 2, 3]]
        faces[0] = [(i - q) % p, 1, [1, 0, 2, 3]]
        # face 2 (omit E_i) -> face 3 of tet i+1 (omit E_{i+2}).
        faces[2] = [(i + 1) % p, 3, [0, 1, 3, 2]]
        faces[3] = [(i - 1) % p, 2, [0, 1, 3, 2]]
        tets.append(faces)
    return {"tets": tets}


write("tri/s3_1tet.json", lens_bipyramid(1, 0))
write("tri/lens_2_1.json", lens_bipyramid(2, 1))
write("tri/lens_3_1.json", lens_bipyramid(3, 1))
write("tri/lens_4_1.json", lens_bipyramid(4, 1))
write("tri/lens_5_1.json", lens_bipyramid(5, 1))

# S^3 as the double of a tetrahedron: two tets glued along all four faces
# by the identity corner map.
write("tri/s3_2tet.json", {"tets": [
    [[1, 0, [0, 1, 2, 3]], [1, 1, [0, 1, 2, 3]], [1, 2, [0, 1, 2, 3]], [1, 3, [0, 1, 2, 3]]],
    [[0, 0, [0, 1, 2, 3]], [0, 1, [0, 1, 2, 3]], [0, 2, [0, 1, 2, 3]], [0, 3, [0, 1, 2, 3]]],
]})


def t3_cube():
    """T^3: unit cube cut into six tetrahedra around the main diagonal,
    opposite cube faces glued by translation."""
    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

    def add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    tets = []
    for sigma in sorted(permutations(range(3))):
        v0 = (0, 0, 0)
        v1 = e[sigma[0]]
        v2 = add(v1, e[sigma[1]])
        v3 = (1, 1, 1)
        tets.append([v0, v1, v2, v3])

    # Face = frozenset of 3 vertex coords; collect both interior matches and
    # boundary matches through integer translation.
    def faces_of(tet):
        out = []
        for omit in range(4):
            tri = [tet[c] for c in range(4) if c != omit]
            out.append((omit, tri))
        return out

    gluings = [[None] * 4 for _ in tets]
    items = []
    for ti, tet in enumerate(tets):
        for omit, tri in faces_of(tet):
            items.append((ti, omit, tri))

    def match(tri_a, tri_b, shift):
        mapped = [add(v, shift) for v in tri_a]
        return frozenset(mapped) == frozenset(tri_b)

    shifts = [(0, 0, 0)]
    for k in range(3):
        for s in (1, -1):
            shifts.append(tuple(s * x for x in e[k]))

    for ai in range(len(items)):
        ta, fa, tria = items[ai]
        if gluings[ta][fa] is not None:
            continue
        found = False
        for bi in range(len(items)):
            tb, fb, trib = items[bi]
            if (ta, fa) == (tb, fb) or gluings[tb][fb] is not None:
                continue
            for shift in shifts:
                if shift == (0, 0, 0) and ta == tb:
                    continue
                if match(tria, trib, shift):
                    # corner bijection via coordinates
                    perm = [None] * 4
                    for ca in range(4):
                        va = add(tets[ta][ca], shift)
                        target = trib + [tets[tb][fb]] if ca == fa else trib
                        if ca == fa:
                            perm[ca] = fb
                        else:
                            cb = tets[tb].index(va)
                            perm[ca] = cb
                    gluings[ta][fa] = [tb, fb, perm]
                    gluings[tb][fb] = [ta, fa, [perm.index(c) for c in range(4)]]
                    found = True
                    break
            if found:
                break
        if not found:
            raise RuntimeError(f"unmatched face {ta} {fa}")
    return {"tets": gluings}


write("tri/t3.json", t3_cube())

print("done")
