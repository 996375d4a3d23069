"""The grading of the homogeneous coordinate ring.

The ray matrix pairs lattice points with the primitive ray generators; its
cokernel is the grading group of the coordinate ring.  Degrees live in
Z^free_rank plus torsion, computed via Smith normal form with explicit
transformation matrices so that degree classes can be lifted back to
exponent vectors exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, floor

from .linalg import nullspace_rational, solve_rational
from .snf import mat_vec, smith_normal_form


class GradingError(ValueError):
    pass


class UnboundedRegionError(ValueError):
    """The requested degree region is an unbounded polyhedron."""


@dataclass(frozen=True)
class GradingClass:
    free: tuple
    torsion: tuple = ()

    def __add__(self, other):
        return GradingClass(
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.torsion, other.torsion)),
        )

    def __neg__(self):
        return GradingClass(tuple(-a for a in self.free), tuple(-a for a in self.torsion))

    def reduced(self, factors):
        return GradingClass(self.free, tuple(a % f for a, f in zip(self.torsion, factors)))


@dataclass(frozen=True)
class SignPattern:
    """Variable indices forced strictly negative; all others nonnegative."""

    negative: frozenset

    def __init__(self, negative=()):
        object.__setattr__(self, "negative", frozenset(negative))

    def as_sorted(self):
        return tuple(sorted(self.negative))


class GradingGroup:
    """Cokernel of the ray pairing map, with the projection and section data."""

    def __init__(self, fan):
        n, d = fan.n_rays, fan.dim
        ray_matrix = [list(r) for r in fan.rays]  # n x d, row i pairs with ray i
        u, dd, v, ui, vi = smith_normal_form(ray_matrix)
        diag = [dd[i][i] for i in range(min(n, d))]
        rank = sum(1 for x in diag if x)
        if rank != d:
            raise GradingError(
                "ray matrix has rank %d < %d; fan cannot be complete" % (rank, d)
            )
        self.n = n
        self.dim = d
        self.free_rank = n - d
        self.torsion = tuple(x for x in diag if x > 1)
        self._torsion_rows = [i for i, x in enumerate(diag) if x > 1]
        self._free_rows = list(range(d, n))
        self._u = u
        self._uinv = ui
        self._diag = diag
        # kernel of the degree map = image of the pairing map; column c of the
        # basis is diag[c] times column c of Uinv
        self._kernel_basis = [[ui[r][c] * diag[c] for c in range(d)] for r in range(n)]
        self.projection = [list(u[r]) for r in self._free_rows] + [
            list(u[r]) for r in self._torsion_rows
        ]
        self.ray_matrix = ray_matrix

    # -- degree map ---------------------------------------------------
    def degree_of(self, exponents):
        if len(exponents) != self.n:
            raise GradingError("exponent vector has length %d, expected %d" % (len(exponents), self.n))
        y = mat_vec(self._u, list(exponents))
        free = tuple(y[r] for r in self._free_rows)
        tors = tuple(y[r] % self._diag[r] for r in self._torsion_rows)
        return GradingClass(free, tors)

    def zero_class(self):
        return GradingClass((0,) * self.free_rank, (0,) * len(self.torsion))

    def class_from_free(self, free, torsion=()):
        free = tuple(int(x) for x in free)
        torsion = tuple(int(x) for x in torsion)
        if len(free) != self.free_rank or len(torsion) != len(self.torsion):
            raise GradingError("class has wrong shape")
        return GradingClass(free, torsion).reduced(self.torsion)

    def variable_degrees(self):
        out = []
        for i in range(self.n):
            e = [0] * self.n
            e[i] = 1
            out.append(self.degree_of(e))
        return out

    def _particular_solution(self, alpha):
        """Some integer exponent vector with the given degree."""
        y = [0] * self.n
        for j, r in enumerate(self._free_rows):
            y[r] = alpha.free[j]
        for j, r in enumerate(self._torsion_rows):
            y[r] = alpha.torsion[j]
        return mat_vec(self._uinv, y)

    # -- enumeration ----------------------------------------------------
    def enumerate_degrees(self, alpha, pattern):
        """All exponent vectors of degree alpha whose negative support is
        exactly pattern.negative (strictly negative there, >= 0 elsewhere).

        Raises UnboundedRegionError when the region is an unbounded
        polyhedron.  Output is sorted lexicographically.
        """
        alpha = alpha.reduced(self.torsion)
        neg = pattern.negative
        bad = [i for i in neg if not 1 <= i <= self.n]
        if bad:
            raise GradingError("pattern indices out of range: %s" % bad)
        a0 = self._particular_solution(alpha)
        d = self.dim
        kb = self._kernel_basis  # n x d
        # constraints A t >= c in the d-dimensional kernel-lattice coordinates
        a_rows, c_vals = [], []
        for i in range(self.n):
            if (i + 1) in neg:
                a_rows.append([-kb[i][j] for j in range(d)])
                c_vals.append(1 + a0[i])
            else:
                a_rows.append(list(kb[i]))
                c_vals.append(-a0[i])

        # recession cone {A t >= 0} must be trivial, else unbounded
        for subset in combinations(range(self.n), d - 1):
            rows = [a_rows[i] for i in subset]
            for direction in nullspace_rational(rows, d):
                if all(x == 0 for x in direction):
                    continue
                for sgn in (1, -1):
                    cand = [sgn * x for x in direction]
                    if all(
                        sum(a_rows[i][j] * cand[j] for j in range(d)) >= 0
                        for i in range(self.n)
                    ):
                        raise UnboundedRegionError(
                            "degree region for %s with pattern %s is unbounded"
                            % (alpha, sorted(neg))
                        )

        # vertices of the polyhedron from d-subsets of active constraints
        lo = [None] * d
        hi = [None] * d
        feasible_vertex = False
        for subset in combinations(range(self.n), d):
            rows = [a_rows[i] for i in subset]
            rhs = [c_vals[i] for i in subset]
            sol = solve_rational(rows, rhs)
            if sol is None:
                continue
            if all(
                sum(a_rows[i][j] * sol[j] for j in range(d)) >= c_vals[i]
                for i in range(self.n)
            ):
                feasible_vertex = True
                for j in range(d):
                    lo[j] = sol[j] if lo[j] is None or sol[j] < lo[j] else lo[j]
                    hi[j] = sol[j] if hi[j] is None or sol[j] > hi[j] else hi[j]
        if not feasible_vertex:
            return []
        ranges = [range(ceil(lo[j]), floor(hi[j]) + 1) for j in range(d)]
        out = []
        stack = [[]]
        for rng in ranges:
            stack = [t + [val] for t in stack for val in rng]
        for t in stack:
            if all(
                sum(a_rows[i][j] * t[j] for j in range(d)) >= c_vals[i]
                for i in range(self.n)
            ):
                out.append(tuple(a0[i] + sum(kb[i][j] * t[j] for j in range(d)) for i in range(self.n)))
        return sorted(out)


def grading_group(fan):
    return GradingGroup(fan)


def degree_of(grading, exponents):
    return grading.degree_of(exponents)


def enumerate_degrees(grading, alpha, pattern):
    return grading.enumerate_degrees(alpha, pattern)


def match_degree_basis(computed, target):
    """Integer unimodular matrix T with T*computed_i = target_i for every i,
    acting on the free parts, or None if there is none.  Torsion parts must
    agree on the nose.  Used to compare degree tables across basis choices."""
    if not computed or len(computed) != len(target):
        return None
    fr = len(computed[0].free)
    if any(len(t.free) != fr for t in target):
        return None
    if any(c.torsion != t.torsion for c, t in zip(computed, target)):
        return None
    cols = [list(c.free) for c in computed]  # vectors as columns
    # pick fr linearly independent computed vectors
    from .linalg import rational_rank

    chosen = []
    for i, v in enumerate(cols):
        if rational_rank([cols[j] for j in chosen] + [v]) > len(chosen):
            chosen.append(i)
        if len(chosen) == fr:
            break
    if len(chosen) < fr:
        return None
    # row r of T solves (chosen vectors as rows) * T_r^T = (targets at r)
    basis = [[Fraction(cols[j][k]) for k in range(fr)] for j in chosen]
    t_rows = []
    for r in range(fr):
        rhs = [Fraction(target[j].free[r]) for j in chosen]
        sol = solve_rational(basis, rhs)
        if sol is None or any(x.denominator != 1 for x in sol):
            return None
        t_rows.append([int(x) for x in sol])
    # verify T is unimodular and maps everything
    det_rows = [list(map(Fraction, r)) for r in t_rows]
    n = len(det_rows)
    det = Fraction(1)
    for col in range(n):
        piv = None
        for i in range(col, n):
            if det_rows[i][col]:
                piv = i
                break
        if piv is None:
            return None
        if piv != col:
            det_rows[col], det_rows[piv] = det_rows[piv], det_rows[col]
            det = -det
        det *= det_rows[col][col]
        inv = Fraction(1) / det_rows[col][col]
        for i in range(col + 1, n):
            f = det_rows[i][col] * inv
            for j in range(col, n):
                det_rows[i][j] -= f * det_rows[col][j]
    if abs(det) != 1:
        return None
    for c, t in zip(computed, target):
        mapped = tuple(sum(t_rows[r][j] * c.free[j] for j in range(fr)) for r in range(fr))
        if mapped != t.free:
            return None
    return t_rows
