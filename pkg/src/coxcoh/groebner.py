"""Division, Buchberger with transformation matrices, and syzygies.

Free-module elements are ordered position-over-term with lower positions
preferred; the ring order is grevlex by default (lex available).  A
Groebner basis carries both transformation matrices: F = G*A and G = F*B,
which is what makes the syzygy extraction below work.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .ring import FreeModuleElement, Poly, RingError


class MonomialOrder:
    """Total order on module terms (position, exponent tuple)."""

    def __init__(self, kind="grevlex"):
        if kind not in ("grevlex", "lex"):
            raise ValueError("unknown order %r" % kind)
        self.kind = kind

    def exp_key(self, exp):
        if self.kind == "grevlex":
            return (sum(exp), tuple(-e for e in reversed(exp)))
        return exp

    def term_key(self, term):
        pos, exp = term
        return (-pos,) + (self.exp_key(exp) if self.kind == "grevlex" else (exp,))

    def __repr__(self):
        return "MonomialOrder(%r)" % self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def _flat(v):
    return {(pos, e): c for pos, e, c in v.iter_terms()}


def _unflat(terms, rank, n):
    entries = [Poly.zero(n) for _ in range(rank)]
    for (pos, e), c in terms.items():
        if c:
            entries[pos].terms[e] = c
    return FreeModuleElement(rank, n, entries)


def _leading_term(flat, order):
    return max(flat, key=order.term_key)


def _divides(a, b):
    """Does x^a divide x^b."""
    return all(x <= y for x, y in zip(a, b))


def divide(f, basis, order=GREVLEX):
    """Division with remainder: f = sum(q_i * basis_i) + r where no term of r
    is divisible by any leading term of the basis (in matching position).

    Returns (quotients, remainder); quotients are ring polynomials.
    """
    n, rank = f.n, f.rank
    work = _flat(f)
    rem = {}
    data = []
    for g in basis:
        gf = _flat(g)
        if not gf:
            data.append(None)
            continue
        lt = _leading_term(gf, order)
        data.append((lt[0], lt[1], gf[lt], gf))
    quotients = [Poly.zero(n) for _ in basis]
    while work:
        key = max(work, key=order.term_key)
        pos, exp = key
        coeff = work[key]
        for bi, entry in enumerate(data):
            if entry is None:
                continue
            bpos, bexp, bcoeff, bflat = entry
            if bpos == pos and _divides(bexp, exp):
                shift = tuple(x - y for x, y in zip(exp, bexp))
                factor = coeff / bcoeff
                qt = quotients[bi].terms
                qt[shift] = qt.get(shift, Fraction(0)) + factor
                if not qt[shift]:
                    del qt[shift]
                for (p2, e2), c2 in bflat.items():
                    k2 = (p2, tuple(x + y for x, y in zip(e2, shift)))
                    nv = work.get(k2, Fraction(0)) - factor * c2
                    if nv:
                        work[k2] = nv
                    elif k2 in work:
                        del work[k2]
                break
        else:
            rem[key] = coeff
            del work[key]
    return quotients, _unflat(rem, rank, n)


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis G with monic leads plus the change-of-basis
    matrices: F = G*A and G = F*B (entries are ring polynomials)."""

    generators: list
    a_matrix: list  # len(G) x len(F)
    b_matrix: list  # len(F) x len(G)
    order: MonomialOrder
    source: list


class _Worker:
    """Incremental Buchberger state with optional representation tracking."""

    def __init__(self, rank, n, order, track=False, nsource=0):
        self.rank = rank
        self.n = n
        self.order = order
        self.track = track
        self.nsource = nsource
        self.gens = []  # monic FreeModuleElements
        self.leads = []  # (pos, exp)
        self.reps = []  # coordinates in the source list, when tracking
        self.pairs = []
        self._tick = 0

    def _push_pairs(self, k):
        posk, expk = self.leads[k]
        for i in range(k):
            posi, expi = self.leads[i]
            if posi != posk:
                continue
            lcm = tuple(max(a, b) for a, b in zip(expi, expk))
            heapq.heappush(self.pairs, (sum(lcm), self._tick, i, k))
            self._tick += 1

    def add(self, v, rep=None):
        """Reduce v against the current basis and absorb it if nonzero.
        Returns True when the basis grew."""
        qts, r = divide(v, self.gens, self.order)
        if r.is_zero():
            return False
        rf = _flat(r)
        lt = _leading_term(rf, self.order)
        lc = rf[lt]
        g = r.scale(Fraction(1) / lc)
        if self.track:
            new_rep = [Poly.zero(self.n) for _ in range(self.nsource)]
            if rep is not None:
                for i, p in enumerate(rep):
                    new_rep[i] = new_rep[i] + p
            for k, q in enumerate(qts):
                if not q.is_zero():
                    for i in range(self.nsource):
                        new_rep[i] = new_rep[i] - q * self.reps[k][i]
            inv = Fraction(1) / lc
            new_rep = [p.scale(inv) for p in new_rep]
            self.reps.append(new_rep)
        self.gens.append(g)
        self.leads.append((lt[0], lt[1]))
        self._push_pairs(len(self.gens) - 1)
        return True

    def saturate(self):
        while self.pairs:
            _, _, i, j = heapq.heappop(self.pairs)
            posi, expi = self.leads[i]
            posj, expj = self.leads[j]
            lcm = tuple(max(a, b) for a, b in zip(expi, expj))
            if self.rank == 1 and all(a + b == c for a, b, c in zip(expi, expj, lcm)):
                continue  # coprime-lcm criterion (ring case only)
            ui = tuple(a - b for a, b in zip(lcm, expi))
            uj = tuple(a - b for a, b in zip(lcm, expj))
            s = self.gens[i].mono_mul(ui) - self.gens[j].mono_mul(uj)
            rep = None
            if self.track:
                rep = [
                    self.reps[i][k].mono_mul(ui) - self.reps[j][k].mono_mul(uj)
                    for k in range(self.nsource)
                ]
            self.add(s, rep)

    def interreduce(self):
        """Minimalize and tail-reduce; returns (gens, reps) in lead order."""
        idx = sorted(range(len(self.gens)), key=lambda i: self.order.term_key(self.leads[i]))
        kept = []
        for i in idx:
            posi, expi = self.leads[i]
            if any(
                self.leads[j][0] == posi and _divides(self.leads[j][1], expi) for j in kept
            ):
                continue
            kept.append(i)
        gens, leads, reps = [], [], []
        for i in kept:
            gens.append(self.gens[i])
            leads.append(self.leads[i])
            reps.append(self.reps[i] if self.track else None)
        for a in range(len(gens)):
            others = gens[:a] + gens[a + 1 :]
            qts, r = divide(gens[a], others, self.order)
            if self.track and any(not q.is_zero() for q in qts):
                other_reps = reps[:a] + reps[a + 1 :]
                new_rep = list(reps[a])
                for k, q in enumerate(qts):
                    if not q.is_zero():
                        for i in range(self.nsource):
                            new_rep[i] = new_rep[i] - q * other_reps[k][i]
                reps[a] = new_rep
            gens[a] = r
        return gens, reps


def buchberger(source, order=GREVLEX):
    """Reduced Groebner basis of the submodule generated by `source`, with
    transformation matrices per the GroebnerBasis contract."""
    if not source:
        raise RingError("empty generating system")
    rank, n = source[0].rank, source[0].n
    for f in source:
        if f.rank != rank or f.n != n:
            raise RingError("mixed ranks in generating system")
    worker = _Worker(rank, n, order, track=True, nsource=len(source))
    for j, f in enumerate(source):
        rep = [Poly.zero(n) for _ in range(len(source))]
        rep[j] = Poly.const(n, 1)
        worker.add(f, rep)
    worker.saturate()
    gens, reps = worker.interreduce()
    # A: divide each source element by the final basis
    a_matrix = [[Poly.zero(n) for _ in source] for _ in gens]
    for j, f in enumerate(source):
        qts, r = divide(f, gens, order)
        if not r.is_zero():
            raise RingError("internal error: source element does not reduce to zero")
        for i, q in enumerate(qts):
            a_matrix[i][j] = q
    b_matrix = [[reps[j][i] for j in range(len(gens))] for i in range(len(source))]
    return GroebnerBasis(
        generators=gens, a_matrix=a_matrix, b_matrix=b_matrix, order=order, source=list(source)
    )


def _lead(v, order):
    f = _flat(v)
    lt = _leading_term(f, order)
    return lt[0], lt[1], f[lt]


def syzygy(source, order=GREVLEX):
    """Generators of the syzygy module of `source` (vectors s with
    source * s = 0), extracted from a Groebner basis via its S-pair
    cofactors and the transformation matrices."""
    source = list(source)
    if not source:
        return []
    n = source[0].n
    p = len(source)
    gb = buchberger(source, order)
    gens, A, B = gb.generators, gb.a_matrix, gb.b_matrix
    q = len(gens)
    out = []
    seen = set()

    def emit(vec):
        if vec.is_zero():
            return
        key = tuple(tuple(sorted(e.terms.items())) for e in vec.entries)
        if key in seen:
            return
        seen.add(key)
        out.append(vec)

    # columns of identity - B*A
    for j in range(p):
        entries = []
        for i in range(p):
            acc = Poly.const(n, 1) if i == j else Poly.zero(n)
            for k in range(q):
                acc = acc - B[i][k] * A[k][j]
            entries.append(acc)
        emit(FreeModuleElement(p, n, entries))

    # B * s_ij for the S-pair syzygies of the basis
    leads = [_lead(g, order) for g in gens]
    for i in range(q):
        for j in range(i + 1, q):
            pos_i, exp_i, _ = leads[i]
            pos_j, exp_j, _ = leads[j]
            if pos_i != pos_j:
                continue
            lcm = tuple(max(a, b) for a, b in zip(exp_i, exp_j))
            ui = tuple(a - b for a, b in zip(lcm, exp_i))
            uj = tuple(a - b for a, b in zip(lcm, exp_j))
            s = gens[i].mono_mul(ui) - gens[j].mono_mul(uj)
            qts, r = divide(s, gens, order)
            if not r.is_zero():
                raise RingError("internal error: S-vector does not reduce to zero")
            # s_ij in coordinates of G, then mapped through B
            svec = [Poly.zero(n) for _ in range(q)]
            svec[i] = svec[i] + Poly.monomial(n, ui)
            svec[j] = svec[j] - Poly.monomial(n, uj)
            for k, qq in enumerate(qts):
                svec[k] = svec[k] - qq
            entries = []
            for a in range(p):
                acc = Poly.zero(n)
                for k in range(q):
                    if svec[k]:
                        acc = acc + B[a][k] * svec[k]
                entries.append(acc)
            emit(FreeModuleElement(p, n, entries))
    return out


def kernel_of_quotient_map(front, modulo, order=GREVLEX):
    """Generators of the kernel of R^p -> (ambient)/(submodule): p = len(front),
    the map sending e_i to front_i modulo the submodule generated by `modulo`.

    Per the syzygy truncation trick: take syzygies of front ++ modulo and keep
    the first p coordinates."""
    front = list(front)
    modulo = list(modulo)
    p = len(front)
    if p == 0:
        return []
    n = front[0].n
    syz = syzygy(front + modulo, order)
    out = []
    seen = set()
    for s in syz:
        entries = s.entries[:p]
        v = FreeModuleElement(p, n, entries)
        if v.is_zero():
            continue
        key = tuple(tuple(sorted(e.terms.items())) for e in v.entries)
        if key not in seen:
            seen.add(key)
            out.append(v)
    return out


def membership(v, gb):
    """Is v in the module generated by gb.generators."""
    _, r = divide(v, gb.generators, gb.order)
    return r.is_zero()
