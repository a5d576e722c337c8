#!/usr/bin/env python3
"""Brute-force census of small weaves, independent of the Rust crate.

Layering is decided by enumerating every proper two-block partition of the
components; parallel pairs by BFS over the interchange orbit. The output is
the set of regression constants pinned in crates/core/tests/census.rs.

    python3 scripts/census_oracle.py 2 2 3 3 2 4 4 2 2 3 3 2
"""

import itertools
import sys
from collections import deque


def comparable(u, v):
    return all(a <= b for a, b in zip(u, v)) or all(a >= b for a, b in zip(u, v))


def rows(mat):
    return [tuple(r) for r in mat]


def cols(mat):
    return [tuple(c) for c in zip(*mat)]


def from_rows(rs):
    return tuple(tuple(r) for r in rs)


def transpose(mat):
    return tuple(zip(*mat))


def layered_by_partition(mat, m, n):
    comps = [("w", i) for i in range(m)] + [("f", j) for j in range(n)]
    total = len(comps)
    if total < 2:
        return False
    for mask in range(1, (1 << total) - 1):
        top = {comps[k] for k in range(total) if mask >> k & 1}
        ok = True
        for i in range(m):
            for j in range(n):
                warp_top = ("w", i) in top
                weft_top = ("f", j) in top
                if warp_top and not weft_top and mat[i][j] != 1:
                    ok = False
                elif weft_top and not warp_top and mat[i][j] != 0:
                    ok = False
                if not ok:
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def swap_neighbours(mat, m, n):
    out = []
    rs = rows(mat)
    for i in range(m):
        k = (i + 1) % m
        if k != i and comparable(rs[i], rs[k]):
            nr = list(rs)
            nr[i], nr[k] = nr[k], nr[i]
            out.append(from_rows(nr))
    cs = cols(mat)
    for j in range(n):
        k = (j + 1) % n
        if k != j and comparable(cs[j], cs[k]):
            nc = list(cs)
            nc[j], nc[k] = nc[k], nc[j]
            out.append(transpose(from_rows(nc)))
    return out


def has_adjacent_equal(mat, m, n):
    rs, cs = rows(mat), cols(mat)
    if m >= 2 and any(rs[i] == rs[(i + 1) % m] for i in range(m)):
        return True
    if n >= 2 and any(cs[j] == cs[(j + 1) % n] for j in range(n)):
        return True
    return False


def parallel_reachable(mat, m, n):
    seen = {mat}
    queue = deque([mat])
    while queue:
        cur = queue.popleft()
        if has_adjacent_equal(cur, m, n):
            return True
        for nxt in swap_neighbours(cur, m, n):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


def hyperbolic(mat, m, n):
    if m == 0 or n == 0:
        return False
    return not layered_by_partition(mat, m, n) and not parallel_reachable(mat, m, n)


def no_adjacent_comparable(mat, m, n):
    rs, cs = rows(mat), cols(mat)
    return not any(comparable(rs[i], rs[(i + 1) % m]) for i in range(m)) and not any(
        comparable(cs[j], cs[(j + 1) % n]) for j in range(n)
    )


def translate(mat, a, b, m, n):
    return tuple(tuple(mat[(i + a) % m][(j + b) % n] for j in range(n)) for i in range(m))


def isotopy_orbit(mat, m, n):
    seen = {mat}
    queue = deque([mat])
    while queue:
        cur = queue.popleft()
        nbrs = [translate(cur, 1, 0, m, n), translate(cur, 0, 1, m, n)]
        nbrs += swap_neighbours(cur, m, n)
        for nxt in nbrs:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def key(mat):
    return (len(mat), len(mat[0]) if mat else 0, "/".join("".join(map(str, r)) for r in mat))


def symmetries(mat):
    m, n = len(mat), len(mat[0])
    out = []
    for t, r1, r2, c in itertools.product((0, 1), repeat=4):
        x = mat
        if r1:
            x = tuple(reversed(x))
        if r2:
            x = tuple(tuple(reversed(r)) for r in x)
        if c:
            x = tuple(tuple(1 - v for v in r) for r in x)
        if t:
            x = tuple(tuple(1 - v for v in r) for r in zip(*x))
        out.append(x)
    return out


def homeo_key(mat):
    best = None
    for img in symmetries(mat):
        mm, nn = len(img), len(img[0])
        k = min(key(x) for x in isotopy_orbit(img, mm, nn))
        if best is None or k < best:
            best = k
    return best


def census(m, n):
    total = 1 << (m * n)
    n_hyp = n_nc = 0
    seen = set()
    classes = classes_hyp = 0
    homeo = set()
    for idx in range(total):
        bits = [(idx >> (m * n - 1 - k)) & 1 for k in range(m * n)]
        mat = tuple(tuple(bits[i * n:(i + 1) * n]) for i in range(m))
        hyp = hyperbolic(mat, m, n)
        n_hyp += hyp
        if m >= 2 and n >= 2:
            n_nc += no_adjacent_comparable(mat, m, n)
        if mat not in seen:
            orb = isotopy_orbit(mat, m, n)
            seen |= orb
            classes += 1
            if hyp:
                classes_hyp += 1
                homeo.add(homeo_key(mat))
    return dict(m=m, n=n, total=total, n_hyp=n_hyp, n_nc=n_nc,
                classes_isotopy=classes, classes_isotopy_hyp=classes_hyp,
                classes_homeo_hyp=len(homeo))


def main(argv):
    nums = list(map(int, argv)) or [2, 2, 3, 3]
    for m, n in zip(nums[::2], nums[1::2]):
        print(census(m, n))


if __name__ == "__main__":
    main(sys.argv[1:])
