# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the functions in ``_pykernels``.

Tables live in ``array.array('i')`` buffers; words cross the boundary as
Python lists of ints.
"""
from array import array

from cpython.mem cimport PyMem_Free, PyMem_Malloc

NAME = "cython"


cdef class Tables:
    cdef public int n
    cdef public int one
    cdef public object prod_buf
    cdef public object inv_buf
    cdef int[::1] prod
    cdef int[::1] inv

    def __init__(self, prod, inv, int one):
        self.n = len(inv)
        self.one = one
        flat = array("i")
        for r in prod:
            flat.extend(r)
        self.prod_buf = flat
        self.inv_buf = array("i", inv)
        self.prod = self.prod_buf
        self.inv = self.inv_buf


def make_tables(prod, inv, one):
    return Tables(prod, inv, one)


def reduce_left(Tables t, word):
    cdef int k = len(word)
    cdef int n = t.n
    cdef int *buf = <int *> PyMem_Malloc((k + 1) * sizeof(int))
    cdef int top = 0, x, z, i
    try:
        for i in range(k):
            x = word[i]
            buf[top] = x
            top += 1
            while top > 1:
                z = t.prod[buf[top - 2] * n + buf[top - 1]]
                if z < 0:
                    break
                top -= 1
                buf[top - 1] = z
        if top == 0:
            return [t.one]
        return [buf[i] for i in range(top)]
    finally:
        PyMem_Free(buf)


def reduce_right(Tables t, word):
    cdef int k = len(word)
    cdef int n = t.n
    cdef int *buf = <int *> PyMem_Malloc((k + 1) * sizeof(int))
    cdef int top = 0, z, i
    try:
        for i in range(k - 1, -1, -1):
            buf[top] = word[i]
            top += 1
            while top > 1:
                z = t.prod[buf[top - 1] * n + buf[top - 2]]
                if z < 0:
                    break
                top -= 1
                buf[top - 1] = z
        if top == 0:
            return [t.one]
        return [buf[i] for i in range(top - 1, -1, -1)]
    finally:
        PyMem_Free(buf)


def is_reduced(Tables t, word):
    cdef int i
    cdef int n = t.n
    for i in range(len(word) - 1):
        if t.prod[<int> word[i] * n + <int> word[i + 1]] >= 0:
            return False
    return True


def interleave(Tables t, c, a):
    cdef int k = len(c)
    cdef int n = t.n
    cdef int prev_inv = t.one, x, i
    out = []
    for i in range(k):
        x = t.prod[prev_inv * n + <int> c[i]]
        if x < 0:
            return None
        if i < k - 1:
            x = t.prod[x * n + <int> a[i]]
            if x < 0:
                return None
            prev_inv = t.inv[<int> a[i]]
        out.append(x)
    return out


def equivalent_reduced(Tables t, c, d):
    if len(c) != len(d):
        return False
    cdef int n = t.n
    cdef int pi = t.one, x, r
    for r in range(len(c)):
        x = t.prod[pi * n + <int> c[r]]
        if x < 0:
            return False
        pi = t.prod[t.inv[<int> d[r]] * n + x]
        if pi < 0:
            return False
    return pi == t.one


cdef bint _lexmin(Tables t, int *c, int k, int i, int prev_inv, int *out, int *order):
    # order is scratch space of size n per depth level
    cdef int n = t.n
    cdef int x = t.prod[prev_inv * n + c[i]]
    cdef int a, cnt, j, key, d
    cdef int *cand
    if x < 0:
        return False
    if i == k - 1:
        out[i] = x
        return True
    cand = order + i * n
    cnt = 0
    # insertion sort of admissible a by the resulting letter
    for a in range(n):
        d = t.prod[x * n + a]
        if d < 0:
            continue
        j = cnt
        while j > 0 and t.prod[x * n + cand[j - 1]] > d:
            cand[j] = cand[j - 1]
            j -= 1
        cand[j] = a
        cnt += 1
    for j in range(cnt):
        a = cand[j]
        out[i] = t.prod[x * n + a]
        if _lexmin(t, c, k, i + 1, t.inv[a], out, order):
            return True
    return False


def lexmin_interleaving(Tables t, c):
    cdef int k = len(c)
    cdef int n = t.n
    cdef int i
    if k <= 1:
        return list(c)
    cdef int *cc = <int *> PyMem_Malloc(k * sizeof(int))
    cdef int *out = <int *> PyMem_Malloc(k * sizeof(int))
    cdef int *order = <int *> PyMem_Malloc(k * n * sizeof(int))
    try:
        for i in range(k):
            cc[i] = c[i]
        if _lexmin(t, cc, k, 0, t.one, out, order):
            return [out[i] for i in range(k)]
        return None
    finally:
        PyMem_Free(cc)
        PyMem_Free(out)
        PyMem_Free(order)


def all_interleavings(Tables t, c):
    cdef int k = len(c)
    cdef int n = t.n
    if k <= 1:
        return [list(c)]
    found = []

    def dfs(int i, int prev_inv, list acc):
        cdef int x = t.prod[prev_inv * n + <int> c[i]]
        cdef int a, d
        if x < 0:
            return
        if i == k - 1:
            found.append(acc + [x])
            return
        for a in range(n):
            d = t.prod[x * n + a]
            if d >= 0:
                dfs(i + 1, t.inv[a], acc + [d])

    dfs(0, t.one, [])
    found.sort()
    return found


def axiom_witnesses(int n, mrel, drel, inv, int one):
    cdef unsigned char[::1] M = bytearray(mrel)
    cdef unsigned char[::1] D = bytearray(drel)
    cdef int[::1] iv = array("i", inv)
    cdef int nn = n * n
    cdef int x, y, z, w, a, b, c, d, r, s, cnt
    cdef int[::1] rowlen = array("i", [0] * nn)
    cdef int[::1] first = array("i", [-1] * nn)
    cdef int[::1] second = array("i", [-1] * nn)
    out = [None] * 8

    for x in range(n):
        for y in range(n):
            cnt = 0
            for z in range(n):
                if M[(x * n + y) * n + z]:
                    if cnt == 0:
                        first[x * n + y] = z
                    elif cnt == 1:
                        second[x * n + y] = z
                    cnt += 1
            rowlen[x * n + y] = cnt

    # (i)
    for x in range(n):
        for y in range(n):
            if not D[x * n + y] and rowlen[x * n + y] > 0:
                out[0] = (x, y, first[x * n + y])
                break
        if out[0] is not None:
            break
    # (ii)
    for x in range(n):
        for y in range(n):
            if D[x * n + y] and rowlen[x * n + y] == 0:
                out[1] = (x, y)
                break
        if out[1] is not None:
            break
    # (iii)
    for w in range(n):
        for x in range(n):
            if rowlen[w * n + x] > 1:
                out[2] = (w, x, first[w * n + x], second[w * n + x])
                break
        if out[2] is not None:
            break
    # (iv)
    for x in range(n):
        if not (M[(x * n + one) * n + x] and M[(one * n + x) * n + x]):
            out[3] = (x,)
            break
    # (v)
    for x in range(n):
        if not (M[(x * n + iv[x]) * n + one] and M[(iv[x] * n + x) * n + one]):
            out[4] = (x,)
            break
    # (vi)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if M[(x * n + y) * n + z] and not M[(iv[y] * n + iv[x]) * n + iv[z]]:
                    out[5] = (x, y, z)
                    break
            if out[5] is not None:
                break
        if out[5] is not None:
            break
    # (vii)
    for a in range(n):
        for b in range(n):
            if rowlen[a * n + b] == 0:
                continue
            for c in range(n):
                if rowlen[b * n + c] == 0:
                    continue
                for r in range(n):
                    if not M[(a * n + b) * n + r]:
                        continue
                    for s in range(n):
                        if not M[(b * n + c) * n + s]:
                            continue
                        for x in range(n):
                            if M[(a * n + s) * n + x] != M[(r * n + c) * n + x]:
                                out[6] = (a, b, c, r, s, x)
                                break
                        if out[6] is not None:
                            break
                    if out[6] is not None:
                        break
                if out[6] is not None:
                    break
            if out[6] is not None:
                break
        if out[6] is not None:
            break
    # (viii)
    for a in range(n):
        for b in range(n):
            if rowlen[a * n + b] == 0:
                continue
            for c in range(n):
                if rowlen[b * n + c] == 0:
                    continue
                for d in range(n):
                    if rowlen[c * n + d] == 0:
                        continue
                    for x in range(n):
                        if not M[(a * n + b) * n + x]:
                            continue
                        for y in range(n):
                            if not M[(b * n + c) * n + y]:
                                continue
                            if rowlen[a * n + y] > 0 or rowlen[y * n + d] > 0:
                                continue
                            out[7] = (a, b, c, d, x, y, first[c * n + d])
                            break
                        if out[7] is not None:
                            break
                    if out[7] is not None:
                        break
                if out[7] is not None:
                    break
            if out[7] is not None:
                break
        if out[7] is not None:
            break
    return out
