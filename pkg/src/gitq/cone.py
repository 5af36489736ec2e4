"""Exact rational polyhedral cone kernel.

A cone is stored canonically: the saturated HNF basis of its lineality
space, plus the primitive extremal rays of its pointed part taken inside
the orthogonal complement of the lineality space, sorted.  Two value-equal
cones therefore have identical field contents and compare/hash by value.
Non-pointed cones (lines, half-planes, the whole space) are first-class.

Conversion between generator and inequality descriptions is the double
description method with the combinatorial adjacency test; all arithmetic
is exact on Python integers.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import GitqError
from .lattice import Vec, dot, hnf_basis, primitive, right_kernel

# ---------------------------------------------------------------------------
# small exact helpers


def scale_to_int(vec) -> Vec:
    """Clear denominators of a rational vector (direction preserved)."""
    fr = [Fraction(x) for x in vec]
    mult = lcm(*(f.denominator for f in fr)) if fr else 1
    return tuple(int(f * mult) for f in fr)


def _frac_inverse(rows):
    """Gauss-Jordan inverse over Fractions; rows must be square invertible."""
    d = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(d)]
         for i, r in enumerate(rows)]
    for col in range(d):
        piv = next(i for i in range(col, d) if a[i][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for i in range(d):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [r[d:] for r in a]


def _independent_rows(rows, dim):
    """Indices of a maximal linearly independent subset (greedy, exact)."""
    basis: list[list[Fraction]] = []
    picked: list[int] = []
    for idx, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for b in basis:
            p = next(j for j, x in enumerate(b) if x != 0)
            if v[p] != 0:
                f = v[p] / b[p]
                v = [x - f * y for x, y in zip(v, b)]
        if any(x != 0 for x in v):
            basis.append(v)
            picked.append(idx)
            if len(picked) == dim:
                break
    return picked


def _pointed_dd(rows, dim):
    """Extremal rays of ``{x in Q^dim : <r, x> >= 0 for r in rows}``.

    Requires the rows to have trivial kernel (the cone is pointed).  This is
    the incremental double description method: start from a simplicial cone
    cut out by ``dim`` independent rows, then insert the remaining rows,
    combining adjacent positive/negative ray pairs.  Adjacency is decided by
    the combinatorial zero-set test on bitmasks.
    """
    if dim == 0:
        return []
    base_idx = _independent_rows(rows, dim)
    if len(base_idx) < dim:
        raise GitqError("inequality system has a nontrivial kernel")
    order = base_idx + [i for i in range(len(rows)) if i not in set(base_idx)]
    basis = [rows[i] for i in base_idx]
    inv = _frac_inverse(basis)
    rays: list[Vec] = []
    tight: list[int] = []
    for j in range(dim):
        col = [inv[i][j] for i in range(dim)]
        mult = lcm(*(c.denominator for c in col))
        r = primitive(tuple(int(c * mult) for c in col))
        rays.append(r)
        tight.append(sum(1 << i for i in range(dim) if i != j))
    for k in range(dim, len(order)):
        a = rows[order[k]]
        vals = [dot(a, r) for r in rays]
        if all(v >= 0 for v in vals):
            for i, v in enumerate(vals):
                if v == 0:
                    tight[i] |= 1 << k
            continue
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        new_rays: list[Vec] = [rays[i] for i in pos]
        new_tight: list[int] = [tight[i] for i in pos]
        for i in zero:
            new_rays.append(rays[i])
            new_tight.append(tight[i] | (1 << k))
        for ip in pos:
            tp = tight[ip]
            for im in neg:
                t = tp & tight[im]
                adjacent = True
                for io in range(len(rays)):
                    if io != ip and io != im and tight[io] & t == t:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                w = tuple(vals[ip] * x - vals[im] * y
                          for x, y in zip(rays[im], rays[ip]))
                new_rays.append(primitive(w))
                new_tight.append((t | (1 << k)))
        rays, tight = new_rays, new_tight
    return rays


def dual_description(ineqs, eqs, rank):
    """Generators of ``{x : <a,x> >= 0, <e,x> = 0}``.

    Returns ``(lineality, rays)``: the saturated HNF basis of the lineality
    space and the primitive extremal rays taken orthogonal to it, sorted.
    """
    ineqs = [tuple(v) for v in ineqs]
    eqs = [tuple(v) for v in eqs]
    lin = right_kernel(ineqs + eqs, rank)
    comp = right_kernel(lin, rank) if lin else \
        [tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)]
    if len(lin) == rank or not comp:
        return lin, []
    proj_rows = []
    seen = set()
    for a in ineqs:
        row = primitive(tuple(dot(a, c) for c in comp))
        if any(row) and row not in seen:
            seen.add(row)
            proj_rows.append(row)
    for e in eqs:
        row = tuple(dot(e, c) for c in comp)
        for srow in (primitive(row), primitive(tuple(-x for x in row))):
            if any(srow) and srow not in seen:
                seen.add(srow)
                proj_rows.append(srow)
    red_rays = _pointed_dd(proj_rows, len(comp))
    rays = sorted(
        primitive(tuple(sum(t * c[j] for t, c in zip(r, comp))
                        for j in range(rank)))
        for r in red_rays
    )
    return lin, rays


# ---------------------------------------------------------------------------
# the Cone value type


class Cone:
    """Canonical rational polyhedral cone, possibly non-pointed."""

    __slots__ = ("ambient_rank", "rays", "lineality", "_hrep", "_dim", "_hash")

    def __init__(self, ambient_rank, rays, lineality, _hrep=None):
        self.ambient_rank = ambient_rank
        self.rays = tuple(tuple(r) for r in rays)
        self.lineality = tuple(tuple(b) for b in lineality)
        self._hrep = _hrep
        self._dim = None
        self._hash = hash((ambient_rank, self.rays, self.lineality))

    # -- constructors

    @staticmethod
    def from_generators(vectors, ambient_rank=None) -> "Cone":
        vectors = [tuple(int(x) for x in v) for v in vectors]
        if vectors:
            n = len(vectors[0])
            if any(len(v) != n for v in vectors):
                raise GitqError("generators of mixed lengths")
            if ambient_rank is not None and ambient_rank != n:
                raise GitqError("ambient rank does not match generator length")
            ambient_rank = n
        elif ambient_rank is None:
            raise GitqError("empty generator list needs an explicit ambient rank")
        vectors = [v for v in vectors if any(v)]
        if not vectors:
            return Cone.zero(ambient_rank)
        span_normals = [tuple(r) for r in right_kernel(vectors, ambient_rank)]
        _, facet_normals = dual_description(vectors, [], ambient_rank)
        lin, rays = dual_description(facet_normals, span_normals, ambient_rank)
        return Cone(ambient_rank, rays, lin,
                    _hrep=(tuple(facet_normals), tuple(span_normals)))

    @staticmethod
    def from_inequalities(normals, equations=(), ambient_rank=None) -> "Cone":
        normals = [tuple(int(x) for x in v) for v in normals]
        equations = [tuple(int(x) for x in v) for v in equations]
        rows = normals + equations
        if rows:
            n = len(rows[0])
            if any(len(v) != n for v in rows):
                raise GitqError("inequality rows of mixed lengths")
            if ambient_rank is not None and ambient_rank != n:
                raise GitqError("ambient rank does not match row length")
            ambient_rank = n
        elif ambient_rank is None:
            raise GitqError("empty inequality system needs an explicit ambient rank")
        lin, rays = dual_description(normals, equations, ambient_rank)
        return Cone(ambient_rank, rays, lin)

    @staticmethod
    def zero(ambient_rank: int) -> "Cone":
        eye = tuple(tuple(1 if i == j else 0 for j in range(ambient_rank))
                    for i in range(ambient_rank))
        return Cone(ambient_rank, (), (), _hrep=((), eye))

    @staticmethod
    def full(ambient_rank: int) -> "Cone":
        eye = tuple(tuple(1 if i == j else 0 for j in range(ambient_rank))
                    for i in range(ambient_rank))
        return Cone(ambient_rank, (), eye, _hrep=((), ()))

    # -- canonical value semantics

    def __eq__(self, other):
        return (isinstance(other, Cone)
                and self.ambient_rank == other.ambient_rank
                and self.rays == other.rays
                and self.lineality == other.lineality)

    def __hash__(self):
        return self._hash

    def key(self):
        """Total-order sort key over cones of one ambient rank."""
        return (self.dim, self.rays, self.lineality)

    def __repr__(self):
        return f"Cone(rank={self.ambient_rank}, rays={list(self.rays)}, lineality={list(self.lineality)})"

    # -- derived data

    def _dualize(self):
        if self._hrep is None:
            gens = self.generators()
            if not gens:
                self._hrep = ((), Cone.zero(self.ambient_rank)._hrep[1])
            else:
                span_normals = tuple(right_kernel(gens, self.ambient_rank))
                _, facet_normals = dual_description(gens, [], self.ambient_rank)
                self._hrep = (tuple(facet_normals), span_normals)
        return self._hrep

    @property
    def facet_normals(self) -> tuple[Vec, ...]:
        return self._dualize()[0]

    @property
    def span_normals(self) -> tuple[Vec, ...]:
        """Equations cutting out the linear span (saturated HNF basis)."""
        return self._dualize()[1]

    @property
    def dim(self) -> int:
        if self._dim is None:
            gens = self.generators()
            self._dim = len(hnf_basis(gens)) if gens else 0
        return self._dim

    def generators(self) -> list[Vec]:
        """Rays plus +/- lineality basis: generators of the cone."""
        gens = list(self.rays)
        for b in self.lineality:
            gens.append(b)
            gens.append(tuple(-x for x in b))
        return gens

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    def extremal_rays(self) -> tuple[Vec, ...]:
        if self.lineality:
            raise GitqError(
                "extremal rays are undefined modulo lineality on a non-pointed cone")
        return self.rays

    # -- membership and relative interior

    def contains(self, x) -> bool:
        v = scale_to_int(x)
        facets, span = self._dualize()
        return (all(dot(e, v) == 0 for e in span)
                and all(dot(n, v) >= 0 for n in facets))

    def relint_contains(self, x) -> bool:
        """Strict facet inequalities plus span equations.

        The relative interior of a linear subspace is the whole subspace;
        in particular ``relint({0}) = {0}``.
        """
        if len(x) != self.ambient_rank:
            raise GitqError("vector length does not match ambient rank")
        v = scale_to_int(x)
        facets, span = self._dualize()
        if any(dot(e, v) != 0 for e in span):
            return False
        if not any(v) and self.rays:
            # 0 is interior only when the cone is a linear subspace
            return False
        return all(dot(n, v) > 0 for n in facets)

    def relint_point(self) -> Vec:
        """Deterministic relative-interior point: the sum of the sorted rays.

        For a pure linear subspace (no rays) this is the zero vector, which
        does lie in the relative interior under the convention above.
        """
        p = [0] * self.ambient_rank
        for r in self.rays:
            for j, x in enumerate(r):
                p[j] += x
        return tuple(p)

    def generic_relint_point(self, avoid_normals) -> Vec:
        """Relative-interior point off every hyperplane not containing the cone.

        ``avoid_normals`` is a list of hyperplane normals; normals vanishing
        identically on the cone are ignored.  The point is found by scanning
        q(t) = sum t^i * gen_i over t = 1, 2, ... and is deterministic.
        """
        dirs = list(self.rays) + [tuple(b) for b in self.lineality]
        if not dirs:
            return tuple([0] * self.ambient_rank)
        relevant = []
        for n in avoid_normals:
            coeffs = [dot(n, d) for d in dirs]
            if any(coeffs):
                relevant.append(coeffs)
        t = 1
        while True:
            powers = [t ** i for i in range(1, len(dirs) + 1)]
            if all(sum(p * c for p, c in zip(powers, coeffs)) != 0
                   for coeffs in relevant):
                q = [0] * self.ambient_rank
                for p, d in zip(powers, dirs):
                    for j, x in enumerate(d):
                        q[j] += p * x
                return tuple(q)
            t += 1

    # -- constructions

    def intersect(self, other: "Cone") -> "Cone":
        if self.ambient_rank != other.ambient_rank:
            raise GitqError("ambient ranks differ")
        fa, sa = self._dualize()
        fb, sb = other._dualize()
        return Cone.from_inequalities(list(fa) + list(fb), list(sa) + list(sb),
                                      self.ambient_rank)

    def facets(self) -> list["Cone"]:
        """All faces of dimension dim - 1 (one per facet normal)."""
        out = []
        for n in self.facet_normals:
            rays_on = tuple(r for r in self.rays if dot(n, r) == 0)
            out.append(Cone(self.ambient_rank, rays_on, self.lineality))
        out.sort(key=Cone.key)
        return out

    def all_faces(self) -> list["Cone"]:
        """The full face lattice (including the cone itself)."""
        seen = {self}
        frontier = [self]
        while frontier:
            nxt = []
            for f in frontier:
                for g in f.facets():
                    if g not in seen:
                        seen.add(g)
                        nxt.append(g)
            frontier = nxt
        return sorted(seen, key=Cone.key)


def intersect_all(cones, ambient_rank=None) -> Cone:
    """Intersection of many cones with inequality deduplication."""
    cones = list(cones)
    if not cones:
        if ambient_rank is None:
            raise GitqError("empty intersection needs an explicit ambient rank")
        return Cone.full(ambient_rank)
    k = cones[0].ambient_rank
    normals, eqs = [], []
    seen_n, seen_e = set(), set()
    for c in cones:
        if c.ambient_rank != k:
            raise GitqError("ambient ranks differ")
        fn, sn = c._dualize()
        for n in fn:
            if n not in seen_n:
                seen_n.add(n)
                normals.append(n)
        for e in sn:
            if e not in seen_e:
                seen_e.add(e)
                eqs.append(e)
    return Cone.from_inequalities(normals, eqs, k)


def is_face(t: Cone, s: Cone) -> bool:
    """True iff ``t`` equals ``s`` cut by some set of its facet hyperplanes."""
    if t.ambient_rank != s.ambient_rank:
        raise GitqError("ambient ranks differ")
    gens = t.generators()
    if not all(s.contains(g) for g in gens):
        return False
    if not gens:  # t is the zero cone
        vanishing = list(s.facet_normals)
    else:
        vanishing = [n for n in s.facet_normals
                     if all(dot(n, g) == 0 for g in gens)]
    rays_on = tuple(r for r in s.rays
                    if all(dot(n, r) == 0 for n in vanishing))
    face = Cone(s.ambient_rank, rays_on, s.lineality)
    return face == t


def relint_overlap(a: Cone, b: Cone) -> bool:
    """Do the relative interiors meet?  One witness point decides it."""
    p = a.intersect(b).relint_point()
    return a.relint_contains(p) and b.relint_contains(p)


def relints_meet(cones) -> bool:
    """Common point of all relative interiors, decided exactly.

    The relative interiors of convex cones meet iff no participating facet
    inequality vanishes identically on the closed intersection; averaging
    the per-inequality strict witnesses then yields a common point (it is
    the relint point of the intersection).
    """
    cones = list(cones)
    if not cones:
        raise GitqError("empty cone family")
    c = intersect_all(cones)
    gens = c.generators()
    for s in cones:
        for n in s.facet_normals:
            if all(dot(n, g) == 0 for g in gens):
                return False
    return True
