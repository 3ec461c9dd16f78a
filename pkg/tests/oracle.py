"""Brute-force reference arithmetic, deliberately independent of gfortho.

Field elements are plain ints in the same base-p digit encoding the
library documents; everything here is schoolbook loops.
"""


class NaiveField:
    def __init__(self, p, alpha=1, poly=None):
        self.p, self.alpha = p, alpha
        self.q = p**alpha
        self.poly = list(poly) if poly else None

    def digits(self, a):
        return [(a // self.p**d) % self.p for d in range(self.alpha)]

    def undigits(self, ds):
        return sum((c % self.p) * self.p**d for d, c in enumerate(ds))

    def add(self, a, b):
        return self.undigits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        return self.undigits([-x for x in self.digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.alpha == 1:
            return a * b % self.p
        prod = [0] * (2 * self.alpha - 1)
        for i, x in enumerate(self.digits(a)):
            for j, y in enumerate(self.digits(b)):
                prod[i + j] += x * y
        # long division by the monic modulus, highest degree first
        for deg in range(len(prod) - 1, self.alpha - 1, -1):
            c = prod[deg] % self.p
            if c:
                for k, m in enumerate(self.poly):
                    prod[deg - self.alpha + k] -= c * m
        return self.undigits(prod[: self.alpha])

    def pow(self, a, k):
        out = 1
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def matmul(self, A, B):
        n, m, k = len(A), len(B), len(B[0])
        out = [[0] * k for _ in range(n)]
        for i in range(n):
            for j in range(k):
                acc = 0
                for t in range(m):
                    acc = self.add(acc, self.mul(A[i][t], B[t][j]))
                out[i][j] = acc
        return out

    def transpose(self, A):
        return [list(r) for r in zip(*A)]

    def gram(self, A):
        return self.matmul(A, self.transpose(A))

    def scalar_identity(self, n, k):
        return [[k if i == j else 0 for j in range(n)] for i in range(n)]
