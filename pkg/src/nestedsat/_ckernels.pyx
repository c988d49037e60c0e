# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops; same contracts as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()

BACKEND = "cython"

ctypedef cnp.int64_t i64


def solve_flat(var, pos, start, Py_ssize_t n):
    cdef const i64[::1] v = np.ascontiguousarray(var, dtype=np.int64)
    cdef const cnp.uint8_t[::1] p = np.ascontiguousarray(pos, dtype=np.uint8)
    cdef const i64[::1] st = np.ascontiguousarray(start, dtype=np.int64)
    cdef Py_ssize_t nclauses = st.shape[0] - 1
    cdef i64[::1] nxt = np.arange(1, n + 2, dtype=np.int64)
    cdef cnp.uint8_t[::1] dead = np.zeros(n + 2, dtype=np.uint8)
    cdef cnp.uint8_t[::1] sat = np.ones(4 * (n + 1), dtype=np.uint8)
    cdef Py_ssize_t i, j, end, b
    cdef i64 x, l, r, visited = 0
    cdef int ff, ft, tf, tt, nff, nft, ntf, ntt, a, c
    cdef int sff, sft, stf, stt
    for i in range(nclauses):
        j = st[i]
        end = st[i + 1]
        x = v[j]
        l = x
        r = v[end - 1]
        if dead[l]:
            return -1, visited, i
        ff = 1
        tt = 1
        ft = 0
        tf = 0
        while True:
            visited += 1
            if x == v[j]:
                if p[j]:
                    if ft == 1:
                        ft = 2
                    if tt == 1:
                        tt = 2
                else:
                    if ff == 1:
                        ff = 2
                    if tf == 1:
                        tf = 2
                j += 1
                if j == end:
                    break
            if x != l:
                dead[x] = 1
            b = 4 * x
            sff = sat[b]
            sft = sat[b + 1]
            stf = sat[b + 2]
            stt = sat[b + 3]
            a = ff * sff; c = ft * stf
            nff = a if a > c else c
            a = ff * sft; c = ft * stt
            nft = a if a > c else c
            a = tf * sff; c = tt * stf
            ntf = a if a > c else c
            a = tf * sft; c = tt * stt
            ntt = a if a > c else c
            ff = nff; ft = nft; tf = ntf; tt = ntt
            x = nxt[x]
            if x > v[j]:
                return -1, visited, i
        nxt[l] = r
        b = 4 * l
        sat[b] = ff >> 1
        sat[b + 1] = ft >> 1
        sat[b + 2] = tf >> 1
        sat[b + 3] = tt >> 1
    return int(sat[3]), visited, -1


cdef inline i64 _find(i64[::1] parent, i64 q):
    cdef i64 root = q, tmp
    while parent[root] != root:
        root = parent[root]
    while parent[q] != root:
        tmp = parent[q]
        parent[q] = root
        q = tmp
    return root


def order_violation(lit, start, Py_ssize_t n):
    cdef const i64[::1] lt = np.ascontiguousarray(lit, dtype=np.int64)
    cdef const i64[::1] st = np.ascontiguousarray(start, dtype=np.int64)
    cdef i64[::1] parent = np.arange(n + 2, dtype=np.int64)
    cdef i64[::1] owner = np.full(n + 2, -1, dtype=np.int64)
    cdef Py_ssize_t i, j, s, e
    cdef i64 lo, hi, q, o, a
    for i in range(st.shape[0] - 1):
        s = st[i]
        e = st[i + 1]
        for j in range(s, e):
            a = lt[j]
            if a < 0:
                a = -a
            o = owner[a]
            if o >= 0:
                return int(o), i
        lo = lt[s] if lt[s] > 0 else -lt[s]
        hi = lt[e - 1] if lt[e - 1] > 0 else -lt[e - 1]
        q = _find(parent, lo + 1)
        while q < hi:
            owner[q] = i
            parent[q] = q + 1
            q = _find(parent, q + 1)
    return -1, -1


def generate_sweep(Py_ssize_t n, opens, closes, interior_u, double p_interior,
                   Py_ssize_t max_width, sign_u, double p_neg):
    cdef const i64[::1] op = np.ascontiguousarray(opens, dtype=np.int64)
    cdef const i64[::1] cl = np.ascontiguousarray(closes, dtype=np.int64)
    cdef const double[::1] iu = np.ascontiguousarray(interior_u, dtype=np.float64)
    cdef const double[::1] su = np.ascontiguousarray(sign_u, dtype=np.float64)
    cdef Py_ssize_t m_total = int(np.sum(op))
    cdef i64[::1] left = np.zeros(m_total, dtype=np.int64)
    cdef i64[::1] right = np.zeros(m_total, dtype=np.int64)
    cdef i64[::1] head = np.full(m_total, -1, dtype=np.int64)
    cdef i64[::1] tail = np.full(m_total, -1, dtype=np.int64)
    cdef i64[::1] count = np.zeros(m_total, dtype=np.int64)
    cdef i64[::1] stack = np.zeros(m_total + 1, dtype=np.int64)
    cdef i64[::1] close_seq = np.zeros(m_total, dtype=np.int64)
    cdef i64[::1] pool_lit = np.zeros(n + 1, dtype=np.int64)
    cdef i64[::1] pool_next = np.full(n + 1, -1, dtype=np.int64)
    cdef Py_ssize_t sp = 0, k = 0, si = 0, nc = 0, npool = 0
    cdef Py_ssize_t cap = max_width - 2
    cdef Py_ssize_t x, c, t, iv, top, node
    cdef i64 sx
    for x in range(1, n + 1):
        c = sp if x == n else (cl[x] if cl[x] < sp else sp)
        for t in range(c):
            sp -= 1
            iv = stack[sp]
            right[iv] = -x if su[si] < p_neg else x
            si += 1
            close_seq[nc] = iv
            nc += 1
        if sp > 0 and iu[x] < p_interior:
            top = stack[sp - 1]
            if count[top] < cap:
                pool_lit[npool] = -x if su[si] < p_neg else x
                si += 1
                node = npool
                npool += 1
                if tail[top] < 0:
                    head[top] = node
                else:
                    pool_next[tail[top]] = node
                tail[top] = node
                count[top] += 1
        if x < n:
            for t in range(op[x]):
                left[k] = -x if su[si] < p_neg else x
                si += 1
                stack[sp] = k
                sp += 1
                k += 1
    cdef Py_ssize_t total = 2 * nc + npool
    out_lit_arr = np.empty(total, dtype=np.int64)
    out_start_arr = np.empty(nc + 1, dtype=np.int64)
    cdef i64[::1] out_lit = out_lit_arr
    cdef i64[::1] out_start = out_start_arr
    cdef Py_ssize_t w = 0
    out_start[0] = 0
    for t in range(nc):
        iv = close_seq[t]
        out_lit[w] = left[iv]
        w += 1
        node = head[iv]
        while node >= 0:
            out_lit[w] = pool_lit[node]
            w += 1
            node = pool_next[node]
        out_lit[w] = right[iv]
        w += 1
        out_start[t + 1] = w
    return out_lit_arr, out_start_arr
