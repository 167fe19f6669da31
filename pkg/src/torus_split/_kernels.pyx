# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled enumeration kernels (same contracts as the Python versions)."""

from libc.stdlib cimport malloc, free


cdef long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


def coset_order_counts(adj, long long d, box):
    cdef int l = len(box)
    cdef long long *A = <long long *> malloc(l * l * sizeof(long long))
    cdef long long *X = <long long *> malloc(l * sizeof(long long))
    cdef long long *H = <long long *> malloc(l * sizeof(long long))
    cdef int i, j
    cdef long long g, s, o
    counts = {}
    try:
        for i in range(l):
            X[i] = 0
            H[i] = box[i]
            for j in range(l):
                A[i * l + j] = adj[i][j] % d
        while True:
            g = d
            for i in range(l):
                s = 0
                for j in range(l):
                    s = (s + A[i * l + j] * X[j]) % d
                g = _gcd(g, s)
            o = d // g
            counts[o] = counts.get(o, 0) + 1
            i = 0
            while i < l:
                X[i] += 1
                if X[i] < H[i]:
                    break
                X[i] = 0
                i += 1
            if i == l:
                break
    finally:
        free(A)
        free(X)
        free(H)
    return counts


def count_cycle_fixed(long long M, long long q, signs):
    cdef int L = len(signs)
    cdef long long mult = 1
    cdef long long x, y, count = 0
    cdef int t
    # the walk is multiplication by a fixed unit; keep the loop honest anyway
    cdef long long *S = <long long *> malloc(L * sizeof(long long))
    try:
        for t in range(L):
            S[t] = ((signs[t] * q) % M + M) % M
        for x in range(M):
            y = x
            for t in range(L):
                y = (S[t] * y) % M
            if y == x:
                count += 1
    finally:
        free(S)
    return count
