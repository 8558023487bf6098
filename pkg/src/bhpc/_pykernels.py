"""Pure-Python contraction kernel (works for Q and F_p).

Structure tensors at desk scale are sparse, so the loops walk nonzero
entries only.
"""

from __future__ import annotations


def _sparse_rows(M):
    return [[(j, v) for j, v in enumerate(row) if v] for row in M]


def bilinear_outer(C, X, Y, p=None, zero=0):
    """U[r][s][m] = sum_{a,b} X[r][a] Y[s][b] C[a][b][m] as nested lists.

    ``C`` is n x n x n, ``X`` is r x n, ``Y`` is s x n (nested lists).  With
    ``p`` set, arithmetic is reduced mod p.
    """
    n = len(C)
    crow = []
    for a in range(n):
        ent = []
        for b in range(n):
            col = [(m, c) for m, c in enumerate(C[a][b]) if c]
            if col:
                ent.append((b, col))
        crow.append(ent)
    xs = _sparse_rows(X)
    ys = _sparse_rows(Y)
    out = []
    for xr in xs:
        Z = {}
        for a, x in xr:
            for b, col in crow[a]:
                zb = Z.get(b)
                if zb is None:
                    zb = Z[b] = {}
                for m, c in col:
                    zb[m] = zb.get(m, zero) + x * c
        if p is not None:
            for zb in Z.values():
                for m in zb:
                    zb[m] %= p
        orow = []
        for yr in ys:
            acc = [zero] * n
            for b, y in yr:
                zb = Z.get(b)
                if zb:
                    for m, v in zb.items():
                        acc[m] += y * v
            if p is not None:
                acc = [v % p for v in acc]
            orow.append(acc)
        out.append(orow)
    return out


def matmul(A, B, zero=0):
    """A @ B for nested lists, skipping zero entries of A and B."""
    m = len(B[0]) if B else 0
    brows = _sparse_rows(B)
    out = []
    for row in A:
        acc = [zero] * m
        for k, a in enumerate(row):
            if a:
                for j, b in brows[k]:
                    acc[j] += a * b
        out.append(acc)
    return out
