# Copyright 2026 The ipt Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Bridge states rebuilt from sympy Clebsch-Gordan chains.

Checks the Gram matrix against the loop-factor theta products, prints the
identity coefficients, and compares the closed swap rule with projected leg
exchanges. Spins are twice-spin integers throughout.
"""

from fractions import Fraction

import numpy as np
from sympy import S
from sympy.physics.wigner import clebsch_gordan


def cg(j1, m1, j2, m2, j, m):
    return float(clebsch_gordan(S(j1) / 2, S(j2) / 2, S(j) / 2, S(m1) / 2, S(m2) / 2, S(m) / 2))


def ms(tj):
    return list(range(tj, -tj - 1, -2))


def chain(path):
    """Legs of the path followed by one open index of the final spin."""
    t = np.eye(2)
    for a in range(1, len(path)):
        x, y = path[a - 1], path[a]
        c = np.zeros((x + 1, 2, y + 1))
        for i, mx in enumerate(ms(x)):
            for k, ml in enumerate(ms(1)):
                for o, my in enumerate(ms(y)):
                    c[i, k, o] = cg(x, mx, 1, ml, y, my)
        scale = (y + 1) / (x + 1) if y > x else 1.0
        t = np.tensordot(t, c, axes=([t.ndim - 1], [0])) * np.sqrt(scale)
    return t


def down_sign(path):
    return (-1) ** sum(1 for a in range(1, len(path)) if path[a] < path[a - 1] and (a + 1) % 2 == 1)


def bridge(jp, kp):
    left, right = chain(jp), chain(kp)
    d = jp[-1] + 1
    join = np.zeros((d, d))
    for i, m in enumerate(ms(jp[-1])):
        join[i, d - 1 - i] = (-1) ** ((jp[-1] - m) // 2) * 2 / d
    t = np.tensordot(left, join, axes=([left.ndim - 1], [0]))
    t = np.tensordot(t, right, axes=([t.ndim - 1], [right.ndim - 1]))
    n1, n2 = len(jp), len(kp)
    perm = list(range(n1)) + list(range(n1 + n2 - 1, n1 - 1, -1))
    return np.transpose(t, perm) * down_sign(jp) * down_sign(kp)


def paths(n):
    out = [[1]]
    for _ in range(n - 1):
        out = [p + [p[-1] + s] for p in out for s in (1, -1) if p[-1] + s >= 0]
    return out


def basis(n1, n2):
    labels = [(a, b) for a in paths(n1) for b in paths(n2) if a[-1] == b[-1]]
    labels.sort(key=lambda l: (-l[0][-1], [-x for x in l[0]], [-x for x in l[1]]))
    return labels


def closed(label):
    j, k = label
    return [0] + j + k[::-1][1:] + [0]


def step(x, y):
    return Fraction(y + 1, x + 1) if y > x else Fraction(1)


def theta(label):
    p = closed(label)
    r = Fraction(1)
    for a in range(1, len(p)):
        r *= step(p[a - 1], p[a])
    return r


def projected(labels, perm):
    states = [bridge(*l) for l in labels]
    gram = np.array([[np.vdot(x, y) for y in states] for x in states])
    out = np.zeros((len(states), len(states)))
    for c, b in enumerate(states):
        v = np.array([np.vdot(x, np.transpose(b, perm)) for x in states])
        out[:, c] = np.linalg.solve(gram, v).real
    return gram, out


def swap_rule(labels, p):
    full = [closed(l) for l in labels]
    r = [[Fraction(int(a == b)) for b in range(len(full))] for a in range(len(full))]
    for c, mu in enumerate(full):
        x, y, z = mu[p - 1], mu[p], mu[p + 1]
        if x != z:
            continue
        for row, nu in enumerate(full):
            if nu[:p] == mu[:p] and nu[p + 1:] == mu[p + 1:]:
                r[row][c] -= step(x, y) * (Fraction(1) if nu[p] > x else Fraction(nu[p] + 1, x + 1))
    return r


def as_float(m):
    return np.array([[float(v) for v in row] for row in m])


def show(m):
    return "; ".join(", ".join(str(v) for v in row) for row in m)


if __name__ == "__main__":
    for valence in range(2, 9):
        for n1 in range(1, valence):
            labels = basis(n1, valence - n1)
            if not labels:
                continue
            gram, _ = projected(labels, list(range(valence)))
            ok = np.allclose(gram, np.diag([float(theta(l)) for l in labels]), atol=1e-12)
            agree = True
            for p in range(1, valence):
                perm = list(range(valence))
                perm[p - 1], perm[p] = perm[p], perm[p - 1]
                _, numeric = projected(labels, perm)
                agree &= np.allclose(numeric, as_float(swap_rule(labels, p)), atol=1e-10)
            print(f"valence {valence} split {n1}: {len(labels)} labels, gram ok {ok}, swaps ok {agree}")

    eps = np.array([[0.0, 1.0], [-1.0, 0.0]])
    letters = "abcdefgh"
    for n in (1, 2, 3, 4):
        pairs = [(a, 2 * n - 1 - a) for a in range(n)]
        ident = np.einsum(",".join(letters[a] + letters[b] for a, b in pairs) + "->" + letters[:2 * n],
                          *[eps] * n)
        coeffs = []
        for l in basis(n, n):
            b = bridge(*l)
            coeffs.append(str(Fraction(float(np.vdot(b, ident) / np.vdot(b, b))).limit_denominator(100)))
        print(f"identity valence {2 * n}: {coeffs}")

    labels = basis(3, 3)
    t = swap_rule(labels, 4)
    p = swap_rule(labels, 3)
    prod = [[sum(t[i][k] * p[k][l] for k in range(5)) for l in range(5)] for i in range(5)]
    prod = [[sum(prod[i][k] * t[k][l] for k in range(5)) for l in range(5)] for i in range(5)]
    print("valence 6 P*:", show(p))
    print("valence 6 P45:", show(t))
    print("valence 6 P45 P* P45:", show(prod))
    print("spin-1 strands, five legs, split 2:", sum(
        1 for a in [[2, x] for x in (0, 2, 4)]
        for b in [[2, y, z] for y in (0, 2, 4) for z in range(abs(y - 2), y + 3, 2)]
        if a[-1] == b[-1]))
