"""Pure-Python kernels, used when the compiled extension is unavailable.

Each function matches its counterpart in ``_speedups`` result-for-result:
same traversal order, same tie-breaking.
"""
from __future__ import annotations

import itertools
import math

import numpy as np
from scipy.optimize import linear_sum_assignment

INF = math.inf


def lap(cost):
    a = np.ascontiguousarray(cost, dtype=np.float64)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError("cost matrix must be square")
    if n == 0:
        return np.zeros(0, dtype=np.intp), 0.0
    rows = a.tolist()
    u = [0.0] * (n + 1)
    v = [0.0] * (n + 1)
    p = [0] * (n + 1)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = INF
            j1 = 0
            row = rows[i0 - 1]
            ui0 = u[i0]
            for j in range(1, n + 1):
                if not used[j]:
                    cur = row[j - 1] - ui0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    perm = np.array([p[j] - 1 for j in range(1, n + 1)], dtype=np.intp)
    total = 0.0
    for j in range(n):
        total += rows[perm[j]][j]
    return perm, total


def iso_search(sv, ep2, deg1, deg2, back_ptr, back_idx, tol, limit=0, skip_identity=False):
    sv = np.ascontiguousarray(sv, dtype=np.float64)
    ep2 = np.ascontiguousarray(ep2, dtype=np.float64)
    n = sv.shape[0]
    deg1 = [int(x) for x in deg1]
    deg2 = [int(x) for x in deg2]
    back = [
        [int(x) for x in back_idx[back_ptr[v]:back_ptr[v + 1]]] for v in range(n)
    ]
    hit: dict[tuple[int, int], bool] = {}

    def lands(a, b):
        key = (a, b) if a < b else (b, a)
        res = hit.get(key)
        if res is None:
            if ep2.shape[1] == 0:
                res = False
            else:
                q = 0.5 * (sv[:, a] + sv[:, b])
                d = ((ep2 - q[:, None]) ** 2).sum(axis=0)
                res = bool((d <= tol).any())
            hit[key] = res
        return res

    pi = [0] * n
    used = [False] * n
    found = []

    def extend(depth):
        if depth == n:
            if skip_identity and all(pi[i] == i for i in range(n)):
                return False
            found.append(tuple(pi))
            return limit > 0 and len(found) >= limit
        for w in range(n):
            if used[w] or deg2[w] != deg1[depth]:
                continue
            if not all(lands(pi[u], w) for u in back[depth]):
                continue
            pi[depth] = w
            used[w] = True
            if extend(depth + 1):
                return True
            used[w] = False
        return False

    extend(0)
    return found


def subgraph_search(adj1, deg1, deg2, back_ptr, back_idx, limit=0):
    adj1 = np.asarray(adj1).astype(bool).tolist()
    n1 = len(adj1)
    n2 = len(deg2)
    deg1 = [int(x) for x in deg1]
    deg2 = [int(x) for x in deg2]
    back = [
        [int(x) for x in back_idx[back_ptr[v]:back_ptr[v + 1]]] for v in range(n2)
    ]
    pi = [0] * n2
    used = [False] * n1
    found = []

    def extend(depth):
        if depth == n2:
            found.append(tuple(pi))
            return limit > 0 and len(found) >= limit
        for w in range(n1):
            if used[w] or deg1[w] < deg2[depth]:
                continue
            if not all(adj1[pi[u]][w] for u in back[depth]):
                continue
            pi[depth] = w
            used[w] = True
            if extend(depth + 1):
                return True
            used[w] = False
        return False

    extend(0)
    return found


def ggd_exact(pairdist, edges1, n, slack):
    pd = np.ascontiguousarray(pairdist, dtype=np.float64)
    e1 = np.asarray(edges1, dtype=np.int64).reshape(-1, 2)
    if e1.shape[0] == 0:
        return 0.0, tuple(range(n))
    best = INF
    best_perm = tuple(range(n))
    # scipy's solver here only supplies the optimal cost; the witness is the
    # vertex permutation, so its internal tie-breaking never leaks out.
    for perm in itertools.permutations(range(n)):
        p = np.asarray(perm)
        cost = pd[p[e1[:, 0]] * n + p[e1[:, 1]]]
        if cost.min(axis=1).sum() >= best - slack:
            continue
        r, c = linear_sum_assignment(cost)
        total = float(cost[r, c].sum())
        if total < best - slack:
            best = total
            best_perm = perm
            if best < slack:
                break
    return best, tuple(int(x) for x in best_perm)
