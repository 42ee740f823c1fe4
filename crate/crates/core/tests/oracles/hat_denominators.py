"""Independent oracle for exchange-Laurent denominators.

Applies the definition literally with sympy: for each i and j != i,
substitute x_j <- F_j / x_j into F_i, clear the x_j denominator and find the
largest m such that F_j^m divides the result.  Output is pinned in
seed_tests.rs.
"""
import sympy as sp


def denominators(cluster, exch):
    out = []
    for i, xi in enumerate(cluster):
        row = []
        for j, xj in enumerate(cluster):
            if i == j:
                row.append(0)
                continue
            fi, fj = exch[i], exch[j]
            d = sp.degree(fi, xj)
            sub = sp.expand(sp.together(fi.subs(xj, fj / xj) * xj**d))
            m = 0
            while True:
                q, r = sp.div(sub, fj, *cluster)
                if r != 0:
                    break
                m += 1
                sub = sp.expand(q)
            row.append(m)
        out.append(row)
    return out


def e6():
    a = sp.symbols("a1:13")
    A = lambda k: a[(k - 1) % 12]
    x1, x2, x3, x4, y3 = sp.symbols("x1 x2 x3 x4 y3")
    F = [
        y3 + A(12) * A(1),
        A(2) * x1 * (y3 + A(10) * x4) + A(9) * x3 * (y3 + A(1) * A(12)) + x1 * x3 * (A(7) * x4 + A(4) * A(12)),
        y3 + A(3) * x2 + A(10) * x4,
        A(11) * (y3 + A(3) * x2) + x3 * (A(4) * x1 + A(6) * x2 + A(1) * A(9)),
        x1 * x4 * (A(5) * x2 + A(7) * x3 + A(2) * A(10)) + A(12) * x3 * (A(4) * x1 + A(1) * A(9))
        + A(12) * x2 * (A(6) * x3 + A(8) * x4 + A(3) * A(11)),
    ]
    return [x1, x2, x3, x4, y3], [sp.expand(f) for f in F]


def e5():
    a = sp.symbols("a1:9")
    A = lambda k: a[k - 1]
    x1, x2, x3 = sp.symbols("x1 x2 x3")
    F = [
        A(5) * x2 + A(8) * x3 + A(2) * A(3),
        A(6) * x1 * x3 + A(3) * A(4) * x1 + A(8) * A(1) * x3 + A(1) * A(2) * A(3),
        A(4) * x1 + A(7) * x2 + A(1) * A(2),
    ]
    return [x1, x2, x3], F


if __name__ == "__main__":
    for name, f in [("e5", e5), ("e6", e6)]:
        c, F = f()
        print(name, denominators(c, F))
