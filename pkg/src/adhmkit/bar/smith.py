"""Smith normal form over the integers, exact (Python integers never overflow)."""

from __future__ import annotations


def smith_diagonal(matrix) -> list[int]:
    """Nonzero invariant factors ``d1 | d2 | ...`` of an integer matrix.

    ``matrix`` is any nested sequence of integers; it is copied, never
    modified.
    """
    a = [[int(v) for v in row] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    t = 0
    while t < rows and t < cols:
        pivot = _min_nonzero(a, t, rows, cols)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if done:
                # pivot must divide the remaining block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            nxt = _min_nonzero_cross(a, t, rows, cols)
            i, j = nxt
            if i != t:
                a[t], a[i] = a[i], a[t]
            if j != t:
                for row in a:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def _min_nonzero(a, t, rows, cols):
    best = None
    for i in range(t, rows):
        for j in range(t, cols):
            v = abs(a[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
                if v == 1:
                    return i, j
    return None if best is None else best[1:]


def _min_nonzero_cross(a, t, rows, cols):
    # smallest nonzero entry in row t or column t (the pivot's cross)
    cands = [(abs(a[t][t]), t, t)]
    cands += [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t]]
    cands += [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
    _, i, j = min(cands)
    return i, j


def integer_rank(matrix) -> int:
    return len(smith_diagonal(matrix))
