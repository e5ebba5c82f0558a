"""Independent sympy computations whose outputs are frozen into the C++ tests.

Run: python3 derive.py  (prints the values pasted into test_oracles.cpp)
"""
from fractions import Fraction
from itertools import product

import sympy as sp

x, y = sp.symbols("x y")

print("# rational functions")
print("cancel:", sp.factor(sp.cancel((x**3 * y - x * y**3) / (x**2 - 2 * x * y + y**2))))
p = sp.Poly(sp.expand((1 + x + y) ** 5), x, y)
print("(1+x+y)^5 terms:", len(p.terms()), "coef x^2y^2:", p.coeff_monomial(x**2 * y**2))
f = (1 + x) ** 2 / (1 + y)
print("x d/dx of (1+x)^2/(1+y):", sp.factor(x * sp.diff(f, x)))

print("# mutation sequence")
d = [1, 2, 1, 2]
eps = [[0, 1, 1, 1], [-2, 0, 2, 2], [-1, -1, 0, 1], [-2, -2, -2, 0]]
frozen = [False, False, False, True]
for i in range(4):
    for j in range(4):
        assert eps[i][j] * d[j] == -eps[j][i] * d[i]
X = sp.symbols("v0:4")


def mutate(eps, coords, k):
    n = len(eps)
    new = [row[:] for row in eps]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                new[i][j] = -eps[i][j]
            elif eps[i][k] >= 0:
                new[i][j] = eps[i][j] + eps[i][k] * max(0, eps[k][j])
            else:
                new[i][j] = eps[i][j] + eps[i][k] * max(0, -eps[k][j])
    xk = coords[k]
    out = []
    for i in range(n):
        if i == k:
            out.append(1 / xk)
        elif eps[i][k] >= 0:
            out.append(coords[i] * (1 + xk) ** eps[i][k])
        else:
            out.append(coords[i] * (1 + 1 / xk) ** eps[i][k])
    return new, out


program = [0, 1, 2, 1, 0]
e, c = eps, list(X)
for k in program:
    e, c = mutate(e, c, k)
print("final eps:", e)
pt = {X[0]: sp.Rational(2), X[1]: sp.Rational(3), X[2]: sp.Rational(1, 2), X[3]: sp.Rational(5)}
print("image of (2, 3, 1/2, 5):", [sp.nsimplify(sp.simplify(ci.subs(pt))) for ci in c])

print("# ev of a -b a in SL3")


def E(i):
    m = sp.eye(3)
    m[i - 1, i] = 1
    return m


def F(i):
    return E(i).T


def H(j, t):
    return sp.diag(*([t] * j + [1] * (3 - j)))


a0, a1, a2, b0, b1 = sp.Rational(2), sp.Rational(3), sp.Rational(5), sp.Rational(7), sp.Rational(1, 2)
g = H(1, a0) * H(2, b0) * E(1) * H(1, a1) * F(2) * H(2, b1) * E(1) * H(1, a2)
print("ev:", g.tolist())

print("# Weyl groups")


def weyl(C):
    n = len(C)
    # simple reflections on root coordinates: s_i(a_j) = a_j - C[j][i] a_i acting on coefficient vectors
    def refl(i, v):
        w = list(v)
        w[i] = v[i] - sum(C[j][i] * v[j] for j in range(n))
        return tuple(w)

    # act on a regular vector in the weight picture via the reflection matrices
    gens = []
    for i in range(n):
        M = []
        for j in range(n):
            e = tuple(1 if k == j else 0 for k in range(n))
            M.append(refl(i, e))
        gens.append(M)

    def mul(A, B):  # A after B, matrices as list of column images
        def apply(M, v):
            return tuple(sum(M[j][k] * v[j] for j in range(n)) for k in range(n))
        return tuple(apply(A, col) for col in B)

    ident = tuple(tuple(1 if k == j else 0 for k in range(n)) for j in range(n))
    seen = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for G in gens:
                g = mul(tuple(map(tuple, G)), m)
                if g not in seen:
                    seen[g] = seen[m] + 1
                    nxt.append(g)
        frontier = nxt
    return len(seen), max(seen.values())


types = {
    "A2": [[2, -1], [-1, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "B2": [[2, -2], [-1, 2]],
    "G2": [[2, -3], [-1, 2]],
    "B3": [[2, -1, 0], [-1, 2, -2], [0, -1, 2]],
    "D4": [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]],
}
for name, C in types.items():
    print(name, weyl(C))
