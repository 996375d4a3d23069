"""Presentations, free resolutions, Hom, Ext, and graded Hilbert functions.

A module is presented as the cokernel of its relation columns inside a free
ambient module; when the ambient carries fine Z^n degree shifts and the
relations are homogeneous, graded Hilbert functions over boxes of degrees
are available and are the workhorse for comparing modules.

Hom(R^p, R^k) is flattened to R^(p*k) column-major: the matrix unit sending
e_j to e_i sits at flat index j*k + i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .groebner import GREVLEX, buchberger, divide, kernel_of_quotient_map, syzygy
from .linalg import rational_rank
from .ring import FreeModuleElement, Poly, RingError


class HomalgError(ValueError):
    pass


@dataclass
class PresentedModule:
    """Cokernel of the relation columns inside a free module of the given rank."""

    ambient_rank: int
    n: int
    relations: list = field(default_factory=list)
    shifts: list = None  # list of Z^n tuples, one per ambient generator

    def __post_init__(self):
        for r in self.relations:
            if r.rank != self.ambient_rank:
                raise HomalgError("relation rank mismatch")
        if self.shifts is not None:
            self.shifts = [tuple(s) for s in self.shifts]
            if len(self.shifts) != self.ambient_rank:
                raise HomalgError("shift count mismatch")

    @staticmethod
    def free(n, rank=1, shifts=None):
        if shifts is None:
            shifts = [(0,) * n] * rank
        return PresentedModule(rank, n, [], shifts)

    @staticmethod
    def quotient_by(polys, n, shift=None):
        """S/<polys> as a rank-1 presentation."""
        shift = (0,) * n if shift is None else tuple(shift)
        rels = [FreeModuleElement(1, n, [p]) for p in polys if not p.is_zero()]
        return PresentedModule(1, n, rels, [shift])

    def is_graded(self):
        return self.shifts is not None

    def relation_degrees(self):
        return [r.fine_degree(self.shifts) for r in self.relations]


def _det_key(v):
    return tuple(
        tuple(sorted((e, str(c)) for e, c in p.terms.items())) for p in v.entries
    )


def minimal_generators(vectors, ambient_shifts=None, order=GREVLEX):
    """Prune a generating set greedily: process in ascending degree and drop
    anything in the module generated by what was already kept.

    For fine-graded homogeneous inputs this yields a minimal generating set
    (graded Nakayama); for ungraded inputs it is still a sound pruning."""
    from .groebner import _Worker

    vectors = [v for v in vectors if not v.is_zero()]
    if not vectors:
        return []

    def sort_key(v):
        try:
            deg = v.fine_degree(ambient_shifts)
        except RingError:
            deg = None
        if deg is not None:
            return (0, sum(deg), deg, _det_key(v))
        return (1, v.num_terms(), (), _det_key(v))

    ordered = sorted(vectors, key=sort_key)
    rank, n = ordered[0].rank, ordered[0].n
    worker = _Worker(rank, n, order, track=False)
    kept = []
    for v in ordered:
        if worker.add(v):
            worker.saturate()
            kept.append(v)
    return kept


@dataclass
class FreeResolution:
    """ranks[k] with differentials[k-1] mapping level k to level k-1, given by
    columns; shifts[k] grades each level when available."""

    ranks: list
    differentials: list
    shifts: list
    n: int

    def length(self):
        return len(self.ranks) - 1

    def verify_complex(self):
        """d_{k-1} o d_k = 0 as an exact identity."""
        for k in range(1, len(self.differentials)):
            prev = self.differentials[k - 1]
            for col in self.differentials[k]:
                acc = FreeModuleElement(self.ranks[k - 1], self.n)
                for j, entry in enumerate(col.entries):
                    if not entry.is_zero():
                        acc = acc + prev[j].poly_mul(entry)
                if not acc.is_zero():
                    return False
        return True


def free_resolution(module, order=GREVLEX, max_length=None):
    """Minimal free resolution by iterated syzygy computation.

    Terminates within the syzygy bound (at most n steps past the
    presentation); each level's generators are pruned to a minimal
    generating set before recursing, which keeps the result minimal."""
    n = module.n
    if max_length is None:
        max_length = n + 2
    ranks = [module.ambient_rank]
    shifts = [list(module.shifts) if module.shifts is not None else None]
    diffs = []
    ambient_shifts = module.shifts
    rels = minimal_generators(module.relations, ambient_shifts, order)
    while rels:
        if len(diffs) > max_length:
            raise HomalgError("resolution exceeded the syzygy bound")
        graded = ambient_shifts is not None
        level_shifts = [r.fine_degree(ambient_shifts) for r in rels] if graded else None
        diffs.append(rels)
        ranks.append(len(rels))
        shifts.append(level_shifts)
        rels = minimal_generators(syzygy(rels, order), level_shifts, order)
        ambient_shifts = level_shifts
    return FreeResolution(ranks=ranks, differentials=diffs, shifts=shifts, n=n)


def presented_is_zero(module, order=GREVLEX):
    """Exact zero test: every ambient generator lies in the relation span."""
    if module.ambient_rank == 0:
        return True
    if not module.relations:
        return False
    gb = buchberger(module.relations, order)
    for i in range(module.ambient_rank):
        e = FreeModuleElement.unit(module.ambient_rank, module.n, i)
        _, r = divide(e, gb.generators, order)
        if not r.is_zero():
            return False
    return True


def subquotient_presentation(gens, denominators, ambient_shifts, n, order=GREVLEX):
    """Presentation of <gens> / <denominators> inside a common free ambient.

    The generators become the ambient basis of the result; the relations are
    the coefficient vectors c with sum(c_i * gens_i) in <denominators>."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return PresentedModule(0, n, [], [])
    rels = kernel_of_quotient_map(gens, denominators, order)
    if ambient_shifts is not None:
        shifts = [g.fine_degree(ambient_shifts) for g in gens]
    else:
        shifts = None
    return PresentedModule(len(gens), n, rels, shifts)


# ---------------------------------------------------------------------------
# Hom and Ext
# ---------------------------------------------------------------------------


def _flat_shifts(target_shifts, source_shifts):
    """Shifts of Hom(R^p, R^k): flat index j*k + i has degree
    target_shift[i] - source_shift[j]."""
    out = []
    for sj in source_shifts:
        for ti in target_shifts:
            out.append(tuple(a - b for a, b in zip(ti, sj)))
    return out


def _precompose_columns(phi_cols, b, k, n):
    """phi: R^a -> R^b given by columns; returns the columns of
    Hom(R^b, R^k) -> Hom(R^a, R^k), psi -> psi o phi.

    Output: b*k vectors (flat order (j, i) -> j*k + i), each of rank a*k."""
    a = len(phi_cols)
    out = []
    for j in range(b):
        for i in range(k):
            entries = [Poly.zero(n) for _ in range(a * k)]
            for s in range(a):
                val = phi_cols[s].entries[j]
                if not val.is_zero():
                    entries[s * k + i] = entries[s * k + i] + val
            out.append(FreeModuleElement(a * k, n, entries))
    return out


def _postcompose_columns(beta_cols, p, k, n):
    """beta: R^l -> R^k given by columns; returns generators of the image of
    Hom(R^p, R^l) -> Hom(R^p, R^k), phi -> beta o phi (p*l vectors, rank p*k)."""
    out = []
    for j in range(p):
        for col in beta_cols:
            entries = [Poly.zero(n) for _ in range(p * k)]
            for i in range(k):
                val = col.entries[i]
                if not val.is_zero():
                    entries[j * k + i] = entries[j * k + i] + val
            out.append(FreeModuleElement(p * k, n, entries))
    return out


def _basis_vectors(rank, n):
    return [FreeModuleElement.unit(rank, n, t) for t in range(rank)]


def hom_presentation(m_module, n_module, order=GREVLEX):
    """Presentation of Hom(M, N): the kernel of precomposition with M's
    relations, taken modulo maps that factor through N's relations."""
    n = m_module.n
    p, k = m_module.ambient_rank, n_module.ambient_rank
    if p == 0 or k == 0:
        return PresentedModule(0, n, [], [])
    alpha = minimal_generators(m_module.relations, m_module.shifts, order)
    beta = minimal_generators(n_module.relations, n_module.shifts, order)
    graded = m_module.is_graded() and n_module.is_graded()
    m_shifts = m_module.shifts if m_module.shifts is not None else [(0,) * n] * p
    n_shifts = n_module.shifts if n_module.shifts is not None else [(0,) * n] * k
    flat = _flat_shifts(n_shifts, m_shifts) if graded else None
    q = len(alpha)
    if q == 0:
        kern = _basis_vectors(p * k, n)
    else:
        front = _precompose_columns(alpha, p, k, n)
        modulo = _postcompose_columns(beta, q, k, n)
        kern = kernel_of_quotient_map(front, modulo, order)
    denom = _postcompose_columns(beta, p, k, n)
    return subquotient_presentation(kern, denom, flat, n, order)


def ext_presentation(i, m_module, n_module, order=GREVLEX, resolution=None):
    """Presentation of Ext^i(M, N): cohomology of Hom(resolution of M, N).

    The fine grading is carried through the whole pipeline, so for monomial
    input the result lands in canonical degrees (see the limit oracle)."""
    if i < 0:
        raise HomalgError("negative cohomological index")
    n = m_module.n
    res = resolution if resolution is not None else free_resolution(m_module, order)
    big_l = res.length()
    k = n_module.ambient_rank
    if i > big_l or k == 0:
        return PresentedModule(0, n, [], [])
    beta = minimal_generators(n_module.relations, n_module.shifts, order)
    graded = (res.shifts[0] is not None) and n_module.is_graded()
    n_shifts = n_module.shifts if n_module.shifts is not None else [(0,) * n] * k
    level_shifts = res.shifts[i] if res.shifts[i] is not None else [(0,) * n] * res.ranks[i]
    flat = _flat_shifts(n_shifts, level_shifts) if graded else None

    if i < big_l:
        front = _precompose_columns(res.differentials[i], res.ranks[i], k, n)
        modulo = _postcompose_columns(beta, res.ranks[i + 1], k, n)
        kern = kernel_of_quotient_map(front, modulo, order)
    else:
        kern = _basis_vectors(res.ranks[i] * k, n)
    denom = []
    if i >= 1:
        denom.extend(_precompose_columns(res.differentials[i - 1], res.ranks[i - 1], k, n))
    denom.extend(_postcompose_columns(beta, res.ranks[i], k, n))
    return subquotient_presentation(kern, denom, flat, n, order)


# ---------------------------------------------------------------------------
# Graded Hilbert functions on boxes
# ---------------------------------------------------------------------------


def box_around(n, radius):
    return [(-radius, radius)] * n


def hilbert_function_box(module, box):
    """Exact dimensions of the fine-graded pieces over all degrees in the box.

    box is a list of n (lo, hi) pairs; returns {degree tuple: dimension}
    including zero entries.  Requires a graded presentation."""
    if not module.is_graded():
        raise HomalgError("ungraded presentation")
    n = module.n
    if len(box) != n:
        raise HomalgError("box has wrong dimension")
    degrees = [tuple(d) for d in product(*(range(lo, hi + 1) for lo, hi in box))]
    r = module.ambient_rank
    if r == 0:
        return {d: 0 for d in degrees}
    shifts = np.array(module.shifts, dtype=np.int64).reshape(r, n)
    rels = module.relations
    m = len(rels)
    out = {}
    grid = np.array(degrees, dtype=np.int64).reshape(len(degrees), n)
    slot_mask = np.ones((len(degrees), r), dtype=bool)
    for j in range(n):
        slot_mask &= grid[:, j : j + 1] >= shifts[:, j][None, :]
    if m == 0:
        counts = slot_mask.sum(axis=1)
        return {d: int(c) for d, c in zip(degrees, counts)}
    rel_degs = np.array(module.relation_degrees(), dtype=np.int64).reshape(m, n)
    act_mask = np.ones((len(degrees), m), dtype=bool)
    for j in range(n):
        act_mask &= grid[:, j : j + 1] >= rel_degs[:, j][None, :]
    # coefficient of the relation column j at ambient slot i is independent of
    # the degree: it is the coefficient of x^(reldeg_j - shift_i) in entry i
    coeff = [[Fraction(0)] * m for _ in range(r)]
    for j, rel in enumerate(rels):
        dj = rel_degs[j]
        for i in range(r):
            e = tuple(int(dj[t]) - int(shifts[i][t]) for t in range(n))
            if all(x >= 0 for x in e):
                coeff[i][j] = rel.entries[i].terms.get(e, Fraction(0))
    rank_cache = {}
    slot_counts = slot_mask.sum(axis=1)
    act_counts = act_mask.sum(axis=1)
    for idx, d in enumerate(degrees):
        nslots = int(slot_counts[idx])
        if nslots == 0:
            out[d] = 0
            continue
        if int(act_counts[idx]) == 0:
            out[d] = nslots
            continue
        skey = slot_mask[idx].tobytes()
        akey = act_mask[idx].tobytes()
        key = (skey, akey)
        rank = rank_cache.get(key)
        if rank is None:
            rows = [i for i in range(r) if slot_mask[idx][i]]
            cols = [j for j in range(m) if act_mask[idx][j]]
            rank = rational_rank([[coeff[i][j] for j in cols] for i in rows])
            rank_cache[key] = rank
        out[d] = nslots - rank
    return out


def hilbert_functions_equal(mod_a, mod_b, box):
    return hilbert_function_box(mod_a, box) == hilbert_function_box(mod_b, box)
