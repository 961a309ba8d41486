#!/usr/bin/env python3
"""Regenerate the bundled generator files under crates/core/data/.

L2(17) acts on the 18 points of the projective line over GF(17).
U3(3) and U3(4) act on the q^3+1 isotropic points of the Hermitian form
x1*y3^q + x2*y2^q + x3*y1^q over GF(q^2).

Each group is generated from its natural matrix/Moebius generators, reduced
to a two-element generating set with a fixed RNG seed, and written as
1-indexed image arrays. The Rust loader re-checks every order on load, so
this script is only a convenience for regenerating the data.
"""

import hashlib
import itertools
import json
import os
import random

from sympy.combinatorics import Permutation, PermutationGroup

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "data")


class GF:
    """GF(p^k) with elements encoded as integers in base p."""

    def __init__(self, p, k, modulus):
        # modulus: coefficients of the monic irreducible, low degree first, length k+1
        self.p, self.k, self.size = p, k, p ** k
        self.modulus = modulus
        self.add_t = [[self._enc([(a + b) % p for a, b in zip(self._dec(x), self._dec(y))])
                       for y in range(self.size)] for x in range(self.size)]
        self.mul_t = [[self._mul(x, y) for y in range(self.size)] for x in range(self.size)]
        self.neg_t = [self._enc([(-a) % p for a in self._dec(x)]) for x in range(self.size)]

    def _dec(self, x):
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def _enc(self, coeffs):
        return sum(c * self.p ** i for i, c in enumerate(coeffs))

    def _mul(self, x, y):
        a, b = self._dec(x), self._dec(y)
        prod = [0] * (2 * self.k - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % self.p
        for d in range(len(prod) - 1, self.k - 1, -1):
            c = prod[d]
            if c:
                for i in range(self.k + 1):
                    prod[d - self.k + i] = (prod[d - self.k + i] - c * self.modulus[i]) % self.p
        return self._enc(prod[: self.k])

    def add(self, x, y):
        return self.add_t[x][y]

    def mul(self, x, y):
        return self.mul_t[x][y]

    def pow(self, x, e):
        r = 1
        for _ in range(e):
            r = self.mul(r, x)
        return r

    def inv(self, x):
        for y in range(1, self.size):
            if self.mul(x, y) == 1:
                return y
        raise ZeroDivisionError


def unital(q, field):
    frob = lambda a: field.pow(a, q)

    def form(u, v):
        s = 0
        s = field.add(s, field.mul(u[0], frob(v[2])))
        s = field.add(s, field.mul(u[1], frob(v[1])))
        s = field.add(s, field.mul(u[2], frob(v[0])))
        return s

    def normalize(v):
        for c in v:
            if c:
                ci = field.inv(c)
                return tuple(field.mul(ci, x) for x in v)
        raise ValueError("zero vector")

    points = sorted({normalize(v) for v in itertools.product(range(field.size), repeat=3)
                     if any(v) and form(v, v) == 0})
    assert len(points) == q ** 3 + 1, len(points)
    index = {pt: i for i, pt in enumerate(points)}

    def apply(mat, v):
        out = []
        for j in range(3):
            s = 0
            for i in range(3):
                s = field.add(s, field.mul(v[i], mat[i][j]))
            out.append(s)
        return out

    def preserves(mat):
        basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        imgs = [apply(mat, b) for b in basis]
        return all(form(imgs[i], imgs[j]) == form(basis[i], basis[j])
                   for i in range(3) for j in range(3))

    def det(m):
        t = 0
        for perm, sign in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                           ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)):
            term = field.mul(field.mul(m[0][perm[0]], m[1][perm[1]]), m[2][perm[2]])
            t = field.add(t, term if sign == 1 else field.neg_t[term])
        return t

    mats = []
    n = field.size
    for a, b in itertools.product(range(n), repeat=2):
        m = [[1, a, b], [0, 1, field.neg_t[frob(a)]], [0, 0, 1]]
        if preserves(m) and det(m) == 1:
            mats.append(m)
    minus_one = field.neg_t[1]
    w = [[0, 0, 1], [0, minus_one, 0], [1, 0, 0]]
    assert preserves(w) and det(w) == 1
    mats.append(w)
    for l1, l2, l3 in itertools.product(range(1, n), repeat=3):
        m = [[l1, 0, 0], [0, l2, 0], [0, 0, l3]]
        if preserves(m) and det(m) == 1:
            mats.append(m)

    perms = []
    for m in mats:
        perms.append([index[normalize(apply(m, pt))] for pt in points])
    return len(points), perms


def l2_17():
    p = 17
    inf = p

    def moebius(a, b, c, d):
        img = []
        for x in range(p + 1):
            if x == inf:
                num, den = a, c
            else:
                num, den = (a * x + b) % p, (c * x + d) % p
            if den % p == 0:
                img.append(inf)
            else:
                img.append(num * pow(den, p - 2, p) % p)
        return img

    return p + 1, [moebius(1, 1, 0, 1), moebius(0, p - 1, 1, 0)]


def two_generators(degree, perms, order, seed):
    group = PermutationGroup([Permutation(pm) for pm in perms])
    assert group.order() == order, (group.order(), order)
    rng = random.Random(seed)
    elems = [Permutation(pm) for pm in perms]
    # product-replacement style walk; deterministic under the seed
    state = list(elems) + [Permutation(degree - 1)] * 3
    for _ in range(200):
        i, j = rng.sample(range(len(state)), 2)
        state[i] = state[i] * state[j]
    while True:
        for _ in range(5):
            i, j = rng.sample(range(len(state)), 2)
            state[i] = state[i] * state[j]
        a, b = state[0], state[1]
        if PermutationGroup([a, b]).order() == order:
            return [a.array_form, b.array_form]


def write(name, degree, gens, order, note):
    data = {
        "name": name,
        "degree": degree,
        "generators": [[x + 1 for x in g] for g in gens],
        "expected_order": order,
        "source_note": note,
    }
    path = os.path.join(OUT, name + ".json")
    gens_txt = ",\n".join("    " + json.dumps(g, separators=(",", ":")) for g in data["generators"])
    with open(path, "w") as f:
        f.write("{\n")
        f.write(f'  "name": {json.dumps(name)},\n')
        f.write(f'  "degree": {degree},\n')
        f.write(f'  "generators": [\n{gens_txt}\n  ],\n')
        f.write(f'  "expected_order": {order},\n')
        f.write(f'  "source_note": {json.dumps(note)}\n')
        f.write("}\n")
    return path


def main():
    os.makedirs(OUT, exist_ok=True)
    paths = []

    deg, gens = l2_17()
    paths.append(write("L2_17", deg, gens, 2448,
                       "PSL(2,17) on the projective line: z -> z+1, z -> -1/z"))

    gf9 = GF(3, 2, [1, 0, 1])  # i^2 + 1
    deg, perms = unital(3, gf9)
    paths.append(write("U3_3", deg, two_generators(deg, perms, 6048, 3), 6048,
                       "PSU(3,3) on the 28 isotropic points of the Hermitian unital"))

    gf16 = GF(2, 4, [1, 1, 0, 0, 1])  # x^4 + x + 1
    deg, perms = unital(4, gf16)
    paths.append(write("U3_4", deg, two_generators(deg, perms, 62400, 4), 62400,
                       "PSU(3,4) on the 65 isotropic points of the Hermitian unital"))

    with open(os.path.join(OUT, "CHECKSUMS.sha256"), "w") as f:
        for path in paths:
            with open(path, "rb") as g:
                digest = hashlib.sha256(g.read()).hexdigest()
            f.write(f"{digest}  {os.path.basename(path)}\n")


if __name__ == "__main__":
    main()
