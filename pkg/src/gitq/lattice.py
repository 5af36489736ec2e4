"""Exact integer linear algebra: Hermite/Smith normal forms and sublattices.

Everything here works on plain Python integers (arbitrary precision), with
matrices as lists of row lists.  The Hermite normal form is the canonical
row-style form: positive pivots, entries above a pivot reduced into
``[0, pivot)``, zero rows at the bottom.  That form is unique per row span,
so sublattices compare by basis equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

Vec = tuple[int, ...]


def vec_gcd(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v) -> Vec:
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = vec_gcd(v)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def mat_mul(a, b):
    cols = list(zip(*b))
    return [[dot(row, col) for col in cols] for row in a]


def hermite_normal_form(rows) -> tuple[list[list[int]], list[list[int]]]:
    """Canonical row-style HNF together with its unimodular transform.

    Returns ``(h, u)`` with ``h = u @ rows``, ``u`` unimodular, ``h`` in
    canonical HNF (zero rows last).  Column reduction uses gcd pivoting so
    intermediate entries stay small-ish; no fixed-width arithmetic anywhere.
    """
    m = len(rows)
    if m == 0:
        return [], []
    n = len(rows[0])
    h = [list(map(int, r)) for r in rows]
    if any(len(r) != n for r in h):
        raise ValueError("ragged matrix")
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def row_sub(i, j, q):
        # h[i] -= q*h[j], same on u
        hi, hj = h[i], h[j]
        for c in range(n):
            hi[c] -= q * hj[c]
        ui, uj = u[i], u[j]
        for c in range(m):
            ui[c] -= q * uj[c]

    def row_swap(i, j):
        h[i], h[j] = h[j], h[i]
        u[i], u[j] = u[j], u[i]

    def row_neg(i):
        h[i] = [-x for x in h[i]]
        u[i] = [-x for x in u[i]]

    r = 0
    for c in range(n):
        # gcd-eliminate column c below row r
        while True:
            pivots = [i for i in range(r, m) if h[i][c] != 0]
            if not pivots:
                break
            i0 = min(pivots, key=lambda i: (abs(h[i][c]), i))
            row_swap(r, i0)
            done = True
            for i in range(r + 1, m):
                if h[i][c] != 0:
                    q = h[i][c] // h[r][c]
                    row_sub(i, r, q)
                    if h[i][c] != 0:
                        done = False
            if done:
                break
        if r < m and h[r][c] != 0:
            if h[r][c] < 0:
                row_neg(r)
            p = h[r][c]
            for i in range(r):
                q = h[i][c] // p  # floor division: entries land in [0, p)
                if q:
                    row_sub(i, r, q)
            r += 1
            if r == m:
                break
    return h, u


def smith_invariants(rows) -> list[int]:
    """Nonzero diagonal of the Smith normal form, each dividing the next."""
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    invs: list[int] = []
    top = 0
    while True:
        # find a nonzero entry at or below/right of (top, top)
        pos = None
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j] != 0:
                    pos = (i, j)
                    break
            if pos:
                break
        if pos is None:
            break
        i, j = pos
        a[top], a[i] = a[i], a[top]
        for row in a:
            row[top], row[j] = row[j], row[top]
        # alternate row/column gcd elimination until (top,top) divides its cross
        while True:
            moved = False
            for i in range(top + 1, m):
                while a[i][top] != 0:
                    q = a[i][top] // a[top][top]
                    for c in range(top, n):
                        a[i][c] -= q * a[top][c]
                    if a[i][top] != 0:
                        a[top], a[i] = a[i], a[top]
                        moved = True
            for j in range(top + 1, n):
                while a[top][j] != 0:
                    q = a[top][j] // a[top][top]
                    for r_ in range(top, m):
                        a[r_][j] -= q * a[r_][top]
                    if a[top][j] != 0:
                        for r_ in range(top, m):
                            a[r_][top], a[r_][j] = a[r_][j], a[r_][top]
                        moved = True
            if not moved and all(a[i][top] == 0 for i in range(top + 1, m)):
                break
        invs.append(abs(a[top][top]))
        top += 1
        if top >= m or top >= n:
            break
    # enforce the divisibility chain
    for i in range(len(invs)):
        for j in range(i + 1, len(invs)):
            x, y = invs[i], invs[j]
            g = gcd(x, y)
            invs[i], invs[j] = g, x * y // g
    return invs


def hnf_basis(rows) -> list[Vec]:
    """Nonzero rows of the canonical HNF (a canonical lattice basis)."""
    h, _ = hermite_normal_form(rows)
    return [tuple(r) for r in h if any(r)]


def left_kernel(rows) -> list[Vec]:
    """Basis of ``{x : x @ rows = 0}`` over Z (saturated), in canonical HNF."""
    h, u = hermite_normal_form(rows)
    ker = [tuple(u[i]) for i in range(len(h)) if not any(h[i])]
    return hnf_basis(ker) if ker else []


def right_kernel(rows, ncols: int) -> list[Vec]:
    """Basis of ``{v : rows @ v = 0}`` over Z (saturated), in canonical HNF."""
    if not rows:
        return [tuple(1 if i == j else 0 for j in range(ncols)) for i in range(ncols)]
    t = [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]
    return left_kernel(t)


@dataclass(frozen=True)
class Sublattice:
    """A sublattice of Z^n, identified by its canonical HNF basis rows."""

    ambient_rank: int
    basis: tuple[Vec, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @staticmethod
    def span(vectors, ambient_rank: int) -> "Sublattice":
        vectors = list(vectors)
        for v in vectors:
            if len(v) != ambient_rank:
                raise ValueError("vector length does not match ambient rank")
        if not vectors:
            return Sublattice(ambient_rank, ())
        return Sublattice(ambient_rank, tuple(hnf_basis(vectors)))

    @staticmethod
    def zero(ambient_rank: int) -> "Sublattice":
        return Sublattice(ambient_rank, ())

    @staticmethod
    def full(ambient_rank: int) -> "Sublattice":
        eye = tuple(
            tuple(1 if i == j else 0 for j in range(ambient_rank))
            for i in range(ambient_rank)
        )
        return Sublattice(ambient_rank, eye)

    @property
    def is_full(self) -> bool:
        return self == Sublattice.full(self.ambient_rank)

    def invariants(self) -> list[int]:
        """Smith invariants of the basis matrix (elementary divisors)."""
        if not self.basis:
            return []
        return smith_invariants([list(r) for r in self.basis])

    def contains(self, v) -> bool:
        """Exact membership by back-substitution against the HNF basis."""
        if len(v) != self.ambient_rank:
            raise ValueError("vector length does not match ambient rank")
        w = list(v)
        for row in self.basis:
            p = next(j for j, x in enumerate(row) if x)
            if w[p] % row[p] != 0:
                return False
            q = w[p] // row[p]
            if q:
                for j in range(p, self.ambient_rank):
                    w[j] -= q * row[j]
        return not any(w)

    def intersect(self, other: "Sublattice") -> "Sublattice":
        """Intersection via the kernel of the stacked-basis relation system."""
        if self.ambient_rank != other.ambient_rank:
            raise ValueError("ambient ranks differ")
        if not self.basis or not other.basis:
            return Sublattice.zero(self.ambient_rank)
        stacked = [list(r) for r in self.basis] + [list(r) for r in other.basis]
        rel = left_kernel(stacked)
        k = len(self.basis)
        vecs = []
        for x in rel:
            v = [0] * self.ambient_rank
            for c, row in zip(x[:k], self.basis):
                if c:
                    for j in range(self.ambient_rank):
                        v[j] += c * row[j]
            if any(v):
                vecs.append(v)
        return Sublattice.span(vecs, self.ambient_rank) if vecs else Sublattice.zero(self.ambient_rank)
