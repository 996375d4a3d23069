"""Complete simplicial fans: parsing, validation, irrelevant ideal.

Fan file format (UTF-8, '#' starts a comment line, tokens whitespace
separated)::

    dim <d>
    rays <n>
    <n lines of d integers>
    maxcones <t>
    <t lines of d 1-based ray indices>
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .linalg import rational_rank, solve_rational


class FanError(ValueError):
    """Structural problem with a fan or a fan file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Fan:
    """A complete simplicial fan given by its rays and maximal cones."""

    dim: int
    rays: tuple  # tuple of tuples of ints, primitive generators
    max_cones: tuple  # tuple of tuples of 1-based ray indices, each of size dim

    @property
    def n_rays(self):
        return len(self.rays)

    def cone_rays(self, cone):
        return [self.rays[i - 1] for i in cone]

    def summary(self):
        return {
            "dim": self.dim,
            "n_rays": self.n_rays,
            "n_max_cones": len(self.max_cones),
        }


@dataclass(frozen=True)
class FanReport:
    simplicial: bool
    complete: object  # True, False, or "unverified"
    wall_condition: bool
    messages: tuple = field(default_factory=tuple)

    def ok(self):
        return self.simplicial and self.complete is True


@dataclass(frozen=True)
class SquarefreeMonomial:
    """A squarefree monomial recorded by its support (1-based variable indices)."""

    support: tuple

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(sorted(self.support)))

    def as_string(self):
        return "".join("x%d" % i for i in self.support) if self.support else "1"

    def as_poly(self, n):
        from .ring import Poly

        e = [0] * n
        for i in self.support:
            e[i - 1] = 1
        return Poly.monomial(n, e)

    def power_poly(self, n, m):
        from .ring import Poly

        e = [0] * n
        for i in self.support:
            e[i - 1] = m
        return Poly.monomial(n, e)


def _tokens_with_lines(text):
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        for tok in body.split():
            yield lineno, tok


def parse_fan(text):
    """Parse fan file contents into a Fan, with line-numbered errors."""
    stream = list(_tokens_with_lines(text))
    pos = 0

    def take(expect=None):
        nonlocal pos
        if pos >= len(stream):
            last = stream[-1][0] if stream else 1
            raise FanError("unexpected end of file", line=last)
        lineno, tok = stream[pos]
        pos += 1
        if expect is not None and tok != expect:
            raise FanError("expected %r, found %r" % (expect, tok), line=lineno)
        return lineno, tok

    def take_int(what):
        lineno, tok = take()
        try:
            return lineno, int(tok)
        except ValueError:
            raise FanError("expected integer %s, found %r" % (what, tok), line=lineno) from None

    take("dim")
    lineno, d = take_int("dimension")
    if d < 1:
        raise FanError("dimension must be positive", line=lineno)
    take("rays")
    lineno, n = take_int("ray count")
    if n < 1:
        raise FanError("ray count must be positive", line=lineno)
    rays = []
    for r in range(n):
        vec = []
        for _ in range(d):
            lineno, val = take_int("ray coordinate")
            vec.append(val)
        if all(v == 0 for v in vec):
            raise FanError("zero ray %d" % (r + 1), line=lineno)
        if gcd(*(abs(v) for v in vec)) != 1:
            raise FanError("non-primitive ray %d: %s" % (r + 1, tuple(vec)), line=lineno)
        vec = tuple(vec)
        if vec in rays:
            raise FanError("duplicate ray %s" % (vec,), line=lineno)
        rays.append(vec)
    take("maxcones")
    lineno, t = take_int("cone count")
    if t < 1:
        raise FanError("cone count must be positive", line=lineno)
    cones = []
    for _ in range(t):
        idx = []
        for _ in range(d):
            lineno, val = take_int("ray index")
            if not 1 <= val <= n:
                raise FanError("ray index %d out of range 1..%d" % (val, n), line=lineno)
            if val in idx:
                raise FanError("repeated ray index %d in cone" % val, line=lineno)
            idx.append(val)
        cones.append(tuple(sorted(idx)))
    if pos != len(stream):
        raise FanError("trailing tokens", line=stream[pos][0])
    used = {i for cone in cones for i in cone}
    missing = sorted(set(range(1, n + 1)) - used)
    if missing:
        raise FanError("rays not used in any max cone: %s" % missing)
    return Fan(dim=d, rays=tuple(rays), max_cones=tuple(cones))


def emit_fan(fan, comment=None):
    """Serialize a Fan to the fan file format (round-trips through parse_fan)."""
    lines = []
    if comment:
        lines.append("# " + comment)
    lines.append("dim %d" % fan.dim)
    lines.append("rays %d" % fan.n_rays)
    for ray in fan.rays:
        lines.append(" ".join(str(v) for v in ray))
    lines.append("maxcones %d" % len(fan.max_cones))
    for cone in fan.max_cones:
        lines.append(" ".join(str(i) for i in cone))
    return "\n".join(lines) + "\n"


def _point_in_cone(fan, cone, point):
    """Exact membership of a rational point in the simplicial cone."""
    d = fan.dim
    cols = fan.cone_rays(cone)
    a = [[Fraction(cols[j][i]) for j in range(d)] for i in range(d)]
    sol = solve_rational(a, point)
    if sol is None:
        return False
    return all(c >= 0 for c in sol)


def validate_fan(fan, sample_points=1000, seed=42, skip_sampling=False):
    """Check simpliciality, the wall condition, and certify completeness.

    Completeness is certified (not proven) by the wall condition plus
    membership of pseudo-random rational sample points; with sampling
    skipped the report says "unverified".
    """
    messages = []
    d = fan.dim

    simplicial = True
    for ci, cone in enumerate(fan.max_cones, start=1):
        if rational_rank(fan.cone_rays(cone)) != d:
            simplicial = False
            messages.append("cone %d is degenerate: rays are linearly dependent" % ci)

    # wall condition: every facet of a max cone lies in exactly two max cones
    wall_counts = {}
    for cone in fan.max_cones:
        for drop in cone:
            wall = tuple(i for i in cone if i != drop)
            wall_counts[wall] = wall_counts.get(wall, 0) + 1
    wall_condition = True
    for wall, count in sorted(wall_counts.items()):
        if count != 2:
            wall_condition = False
            messages.append(
                "wall %s lies in %d max cone(s), expected 2" % (set(wall) or "{}", count)
            )

    if not (simplicial and wall_condition):
        complete = False
    elif skip_sampling:
        complete = "unverified"
        messages.append("completeness unverified: sample-point check skipped")
    else:
        rng = random.Random(seed)
        complete = True
        for _ in range(sample_points):
            point = [
                Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 997)) for _ in range(d)
            ]
            if all(v == 0 for v in point):
                continue
            if not any(_point_in_cone(fan, cone, point) for cone in fan.max_cones):
                complete = False
                messages.append("sample point %s lies in no max cone" % (tuple(point),))
                break
        if complete:
            messages.append(
                "completeness certified by wall condition plus %d sample points (seed %d);"
                " this is a certificate, not a proof" % (sample_points, seed)
            )
    return FanReport(
        simplicial=simplicial,
        complete=complete,
        wall_condition=wall_condition,
        messages=tuple(messages),
    )


def irrelevant_generators(fan):
    """Minimal monomial basis of the irrelevant ideal: one squarefree
    monomial per max cone, on the variables whose rays are outside the cone.
    Deduplicated keeping first occurrence, in max-cone order."""
    seen = set()
    out = []
    all_indices = set(range(1, fan.n_rays + 1))
    for cone in fan.max_cones:
        support = tuple(sorted(all_indices - set(cone)))
        if support not in seen:
            seen.add(support)
            out.append(SquarefreeMonomial(support))
    return out
