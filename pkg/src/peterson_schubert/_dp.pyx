# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled subword dynamic program over 64-bit integers.

Raises ``OverflowError`` when an intermediate value leaves int64; the caller
then reruns the pure-Python version with unbounded integers.
"""

from libc.stdlib cimport malloc, free


cdef extern from *:
    bint __builtin_mul_overflow(long long a, long long b, long long *res) nogil
    bint __builtin_add_overflow(long long a, long long b, long long *res) nogil


def billey_dp(const int[:] trans, int rank, const int[:] word, const long long[:] heights,
              int nstates, int target):
    cdef long long *dp = <long long *> malloc(nstates * sizeof(long long))
    cdef Py_ssize_t j, s, nword = word.shape[0]
    cdef int b, t
    cdef long long x, prod, h
    cdef bint overflow = False
    if dp == NULL:
        raise MemoryError()
    try:
        with nogil:
            for s in range(nstates):
                dp[s] = 0
            dp[0] = 1
            for j in range(nword):
                b = word[j]
                h = heights[j]
                s = nstates - 1
                while s >= 0:
                    x = dp[s]
                    if x != 0:
                        t = trans[s * rank + b]
                        if t >= 0:
                            if __builtin_mul_overflow(x, h, &prod) or \
                                    __builtin_add_overflow(dp[t], prod, &dp[t]):
                                overflow = True
                                break
                    s -= 1
                if overflow:
                    break
        if overflow:
            raise OverflowError("int64 overflow in subword DP")
        return dp[target]
    finally:
        free(dp)
