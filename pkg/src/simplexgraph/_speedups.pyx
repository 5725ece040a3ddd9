# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Must stay result-identical to ``_purepy``."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef double INF = float("inf")


cdef double _hungarian(const double* a, Py_ssize_t n, Py_ssize_t* out,
                       double* u, double* v, Py_ssize_t* p, Py_ssize_t* way,
                       double* minv, char* used) noexcept nogil:
    # Shortest augmenting path with potentials; arrays are 1-based, size n+1.
    # Strict '<' comparisons give the lowest column index on exact ties.
    cdef Py_ssize_t i, j, i0, j0, j1
    cdef double delta, cur, total
    for j in range(n + 1):
        u[j] = 0.0
        v[j] = 0.0
        p[j] = 0
        way[j] = 0
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        for j in range(n + 1):
            minv[j] = INF
            used[j] = 0
        while True:
            used[j0] = 1
            i0 = p[j0]
            delta = INF
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = a[(i0 - 1) * n + (j - 1)] - u[i0] - v[j]
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
    total = 0.0
    for j in range(1, n + 1):
        out[j - 1] = p[j] - 1
        total += a[(p[j] - 1) * n + (j - 1)]
    return total


cdef class _Workspace:
    cdef Py_ssize_t n
    cdef double* u
    cdef double* v
    cdef double* minv
    cdef Py_ssize_t* p
    cdef Py_ssize_t* way
    cdef char* used

    def __cinit__(self, Py_ssize_t n):
        self.n = n
        self.u = <double*> malloc((n + 1) * sizeof(double))
        self.v = <double*> malloc((n + 1) * sizeof(double))
        self.minv = <double*> malloc((n + 1) * sizeof(double))
        self.p = <Py_ssize_t*> malloc((n + 1) * sizeof(Py_ssize_t))
        self.way = <Py_ssize_t*> malloc((n + 1) * sizeof(Py_ssize_t))
        self.used = <char*> malloc((n + 1) * sizeof(char))
        if not (self.u and self.v and self.minv and self.p and self.way and self.used):
            raise MemoryError()

    def __dealloc__(self):
        free(self.u)
        free(self.v)
        free(self.minv)
        free(self.p)
        free(self.way)
        free(self.used)

    cdef double solve(self, const double* a, Py_ssize_t* out) noexcept nogil:
        return _hungarian(a, self.n, out, self.u, self.v, self.p, self.way,
                          self.minv, self.used)


def lap(cost):
    """Min-cost perfect matching on a square matrix.

    Returns ``(perm, total)`` with ``perm[j]`` the row matched to column ``j``.
    """
    cdef const double[:, ::1] c = np.ascontiguousarray(cost, dtype=np.float64)
    cdef Py_ssize_t n = c.shape[0]
    if c.shape[1] != n:
        raise ValueError("cost matrix must be square")
    perm = np.zeros(n, dtype=np.intp)
    if n == 0:
        return perm, 0.0
    cdef Py_ssize_t[::1] out = perm
    cdef _Workspace ws = _Workspace(n)
    cdef double total
    with nogil:
        total = ws.solve(&c[0, 0], &out[0])
    return perm, total


cdef class _IsoSearch:
    cdef const double[:, ::1] sv
    cdef const double[:, ::1] ep2
    cdef const cnp.int64_t[::1] deg1
    cdef const cnp.int64_t[::1] deg2
    cdef const cnp.int64_t[::1] back_ptr
    cdef const cnp.int64_t[::1] back_idx
    cdef cnp.int64_t[::1] pi
    cdef char[::1] used
    cdef signed char[:, ::1] hit
    cdef double tol
    cdef Py_ssize_t n, m2, limit
    cdef bint skip_identity
    cdef list found

    cdef bint _lands(self, Py_ssize_t a, Py_ssize_t b):
        # Does the midpoint of target vertices a, b coincide with an edge point?
        cdef Py_ssize_t j, r
        cdef double d, t
        if self.hit[a, b] >= 0:
            return self.hit[a, b]
        cdef bint res = False
        for j in range(self.m2):
            d = 0.0
            for r in range(self.n):
                t = 0.5 * (self.sv[r, a] + self.sv[r, b]) - self.ep2[r, j]
                d += t * t
            if d <= self.tol:
                res = True
                break
        self.hit[a, b] = res
        self.hit[b, a] = res
        return res

    cdef bint _extend(self, Py_ssize_t depth):
        cdef Py_ssize_t w, k, i
        cdef bint ok, ident
        if depth == self.n:
            if self.skip_identity:
                ident = True
                for i in range(self.n):
                    if self.pi[i] != i:
                        ident = False
                        break
                if ident:
                    return False
            self.found.append(tuple(self.pi))
            return self.limit > 0 and len(self.found) >= self.limit
        for w in range(self.n):
            if self.used[w] or self.deg2[w] != self.deg1[depth]:
                continue
            ok = True
            for k in range(self.back_ptr[depth], self.back_ptr[depth + 1]):
                if not self._lands(self.pi[self.back_idx[k]], w):
                    ok = False
                    break
            if not ok:
                continue
            self.pi[depth] = w
            self.used[w] = 1
            if self._extend(depth + 1):
                return True
            self.used[w] = 0
        return False


def iso_search(sv, ep2, deg1, deg2, back_ptr, back_idx, double tol,
               Py_ssize_t limit=0, bint skip_identity=False):
    """Enumerate degree-respecting bijections whose mapped edge midpoints all
    land on target edge points, in lexicographic order of the mapping.

    ``back_ptr``/``back_idx`` is a CSR list of, for each source vertex, its
    neighbours with smaller index. ``limit <= 0`` means no limit.
    """
    cdef _IsoSearch s = _IsoSearch()
    s.sv = np.ascontiguousarray(sv, dtype=np.float64)
    s.ep2 = np.ascontiguousarray(ep2, dtype=np.float64)
    s.n = s.sv.shape[0]
    s.m2 = s.ep2.shape[1]
    s.deg1 = np.ascontiguousarray(deg1, dtype=np.int64)
    s.deg2 = np.ascontiguousarray(deg2, dtype=np.int64)
    s.back_ptr = np.ascontiguousarray(back_ptr, dtype=np.int64)
    s.back_idx = np.ascontiguousarray(back_idx, dtype=np.int64)
    s.pi = np.zeros(s.n, dtype=np.int64)
    s.used = np.zeros(s.n, dtype=np.int8)
    s.hit = np.full((s.n, s.n), -1, dtype=np.int8)
    s.tol = tol
    s.limit = limit
    s.skip_identity = skip_identity
    s.found = []
    s._extend(0)
    return s.found


cdef class _SubSearch:
    cdef const unsigned char[:, ::1] adj1
    cdef const cnp.int64_t[::1] deg1
    cdef const cnp.int64_t[::1] deg2
    cdef const cnp.int64_t[::1] back_ptr
    cdef const cnp.int64_t[::1] back_idx
    cdef cnp.int64_t[::1] pi
    cdef char[::1] used
    cdef Py_ssize_t n1, n2, limit
    cdef list found

    cdef bint _extend(self, Py_ssize_t depth):
        cdef Py_ssize_t w, k
        cdef bint ok
        if depth == self.n2:
            self.found.append(tuple(self.pi))
            return self.limit > 0 and len(self.found) >= self.limit
        for w in range(self.n1):
            if self.used[w] or self.deg1[w] < self.deg2[depth]:
                continue
            ok = True
            for k in range(self.back_ptr[depth], self.back_ptr[depth + 1]):
                if not self.adj1[self.pi[self.back_idx[k]], w]:
                    ok = False
                    break
            if not ok:
                continue
            self.pi[depth] = w
            self.used[w] = 1
            if self._extend(depth + 1):
                return True
            self.used[w] = 0
        return False


def subgraph_search(adj1, deg1, deg2, back_ptr, back_idx, Py_ssize_t limit=0):
    """Enumerate injections of the pattern into the host that carry every
    pattern edge onto a host edge (non-induced), lexicographically."""
    cdef _SubSearch s = _SubSearch()
    s.adj1 = np.ascontiguousarray(adj1, dtype=np.uint8)
    s.n1 = s.adj1.shape[0]
    s.deg1 = np.ascontiguousarray(deg1, dtype=np.int64)
    s.deg2 = np.ascontiguousarray(deg2, dtype=np.int64)
    s.n2 = s.deg2.shape[0]
    s.back_ptr = np.ascontiguousarray(back_ptr, dtype=np.int64)
    s.back_idx = np.ascontiguousarray(back_idx, dtype=np.int64)
    s.pi = np.zeros(s.n2, dtype=np.int64)
    s.used = np.zeros(s.n1, dtype=np.int8)
    s.limit = limit
    s.found = []
    s._extend(0)
    return s.found


cdef bint _next_permutation(Py_ssize_t* a, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j, t
    if n < 2:
        return False
    i = n - 2
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = n - 1
    while a[j] <= a[i]:
        j -= 1
    t = a[i]; a[i] = a[j]; a[j] = t
    i += 1
    j = n - 1
    while i < j:
        t = a[i]; a[i] = a[j]; a[j] = t
        i += 1
        j -= 1
    return True


def ggd_exact(pairdist, edges1, Py_ssize_t n, double slack):
    """Minimise the edge-block assignment cost over all vertex bijections.

    ``pairdist[a * n + b, j]`` is the squared distance from the midpoint of
    target vertices ``a, b`` to target edge point ``j``. Returns
    ``(best, perm)``; ties within ``slack`` keep the lexicographically
    smallest permutation.
    """
    cdef const double[:, ::1] pd = np.ascontiguousarray(pairdist, dtype=np.float64)
    cdef const cnp.int64_t[:, ::1] e1 = np.ascontiguousarray(
        np.asarray(edges1, dtype=np.int64).reshape(-1, 2))
    cdef Py_ssize_t m = e1.shape[0]
    cdef Py_ssize_t i, j, row
    cdef double best = INF, cost, bound, rmin
    perm_arr = np.arange(n, dtype=np.intp)
    best_arr = np.arange(n, dtype=np.intp)
    cdef Py_ssize_t[::1] perm = perm_arr
    cdef Py_ssize_t[::1] bestp = best_arr
    if m == 0:
        return 0.0, tuple(int(x) for x in best_arr)
    cost_arr = np.empty(m * m, dtype=np.float64)
    assign_arr = np.empty(m, dtype=np.intp)
    cdef double[::1] c = cost_arr
    cdef Py_ssize_t[::1] assign = assign_arr
    cdef _Workspace ws = _Workspace(m)
    with nogil:
        while True:
            bound = 0.0
            for i in range(m):
                row = perm[e1[i, 0]] * n + perm[e1[i, 1]]
                rmin = INF
                for j in range(m):
                    c[i * m + j] = pd[row, j]
                    if pd[row, j] < rmin:
                        rmin = pd[row, j]
                bound += rmin
            if bound < best - slack:
                cost = ws.solve(&c[0], &assign[0])
                if cost < best - slack:
                    best = cost
                    for i in range(n):
                        bestp[i] = perm[i]
                    if best < slack:
                        break
            if not _next_permutation(&perm[0], n):
                break
    return best, tuple(int(x) for x in best_arr)
