"""Extending coefficient maps to ring homomorphisms between extensions.

A homomorphism seed consists of a coefficient map (where each generator of
the source coefficient ring goes, as a constant of the target) together with
one target element per source variable.  When the seed satisfies the two
compatibility conditions -- each y_i passes mapped coefficients by the mapped
twist-and-derive rule, and each pair y_j y_i satisfies the mapped commutation
relation -- the termwise extension

    sum r x^alpha  |->  sum phi(r) y_1^a1 * ... * y_n^an

is the unique ring homomorphism agreeing with the seed, and the machinery
below evaluates it inside the target engine.  Target rings are restricted to
engine-representable extensions; by the basis argument this loses nothing at
the level of checkable content.

Note the constant term of the pair condition is mapped through phi as well;
powers of y are multiplied left to right.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Poly, star
from .presentation import Presentation
from .rings import CoeffElem, NotAUnitError, RingMismatchError
from .rng import Stream


class HomSpecError(ValueError):
    """Malformed homomorphism seed."""


@dataclass
class HomSpec:
    """Seed data: coefficient map phi (generator name -> constant Poly over
    the target) and the variable images y."""

    source: Presentation
    target: Presentation
    phi: dict[str, Poly]
    y: tuple[Poly, ...]

    def __post_init__(self):
        self.y = tuple(self.y)
        src_gens = self.source.ring.generator_names()
        if set(self.phi) != set(src_gens):
            raise HomSpecError(
                f"phi must cover exactly the source generators {sorted(src_gens)}"
            )
        for g, img in self.phi.items():
            if img.pres.fingerprint != self.target.fingerprint:
                raise HomSpecError(f"phi({g}) is not a target polynomial")
            if not img.is_constant():
                raise HomSpecError(f"phi({g}) must be a constant of the target")
        for g in self.source.ring.inverted_generator_names():
            if not self.phi[g].constant_coeff().is_unit():
                raise NotAUnitError(f"phi({g}) must be a unit of the target coefficients")
        if len(self.y) != self.source.n:
            raise HomSpecError(f"need {self.source.n} variable images, got {len(self.y)}")
        for yi in self.y:
            if yi.pres.fingerprint != self.target.fingerprint:
                raise HomSpecError("variable image is not a target polynomial")
        self._ypow_cache: dict = {}

    def phi_coeff(self, name: str) -> CoeffElem:
        return self.phi[name].constant_coeff()

    def map_coeff(self, r: CoeffElem) -> CoeffElem:
        """phi on an arbitrary source coefficient, by evaluating its canonical
        decomposition inside the target coefficient ring."""
        src = self.source.ring
        tgt = self.target.ring
        if r.ring != src:
            raise RingMismatchError("map_coeff expects a source coefficient")
        if src.prime_ring() != tgt.prime_ring():
            raise HomSpecError(
                f"bottom fields differ: {src.prime_ring().describe()} vs "
                f"{tgt.prime_ring().describe()}"
            )
        out = tgt.zero()
        for s, powers in src._terms_as_products(r.value):
            acc = tgt.elem(tgt._embed_scalar(s))
            for name, e in powers:
                acc = acc * (self.phi_coeff(name) ** e)
            out = out + acc
        return out

    def y_power(self, alpha: tuple[int, ...]) -> Poly:
        """y_1^a1 * ... * y_n^an, multiplied left to right in the target."""
        hit = self._ypow_cache.get(alpha)
        if hit is not None:
            return hit
        out = Poly.one(self.target)
        for i, e in enumerate(alpha):
            for _ in range(e):
                out = star(out, self.y[i])
        self._ypow_cache[alpha] = out
        return out


@dataclass
class HomConditionItem:
    label: str
    ok: bool
    lhs: Poly
    rhs: Poly


@dataclass
class HomReport:
    condition_i: list[HomConditionItem] = field(default_factory=list)
    condition_ii: list[HomConditionItem] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(it.ok for it in self.condition_i + self.condition_ii)

    def failures(self) -> list[str]:
        return [
            f"{it.label}: lhs={it.lhs} rhs={it.rhs}"
            for it in self.condition_i + self.condition_ii
            if not it.ok
        ]

    def summary(self) -> str:
        lines = [
            f"condition (i): {len(self.condition_i)} checks, "
            + ("all pass" if all(it.ok for it in self.condition_i) else "FAIL"),
            f"condition (ii): {len(self.condition_ii)} checks, "
            + ("all pass" if all(it.ok for it in self.condition_ii) else "FAIL"),
        ]
        lines.extend(self.failures())
        lines.append("overall: " + ("PASS" if self.ok else "FAIL"))
        return "\n".join(lines)


def check_hom_conditions(spec: HomSpec, samples: int = 16, seed: int = 0) -> HomReport:
    """Condition (i) on generators, 1, and random coefficients; condition
    (ii) exhaustively over variable pairs."""
    report = HomReport()
    src = spec.source
    ring = src.ring
    stream = Stream(seed).split("hom-cond-i")
    rs = [ring.one()]
    rs += [ring.generator(g) for g in ring.generator_names()]
    for _ in range(samples):
        r = ring.random_elem(stream, 2)
        if r and r not in rs:
            rs.append(r)
    for i in range(src.n):
        yi = spec.y[i]
        for r in rs:
            lhs = star(yi, Poly.const(spec.target, spec.map_coeff(r)))
            rhs = spec.map_coeff(src.sigma[i].apply(r)) * yi + Poly.const(
                spec.target, spec.map_coeff(src.delta[i].apply(r))
            )
            report.condition_i.append(
                HomConditionItem(f"(i) y{i + 1} past r={r}", lhs == rhs, lhs, rhs)
            )
    for i in range(src.n):
        for j in range(i + 1, src.n):
            lhs = star(spec.y[j], spec.y[i])
            rhs = spec.map_coeff(src.c_of(i, j)) * star(spec.y[i], spec.y[j])
            for k in range(src.n):
                a = src.a_of(i, j, k)
                if a:
                    rhs = rhs + spec.map_coeff(a) * spec.y[k]
            dij = src.d_of(i, j)
            if dij:
                rhs = rhs + Poly.const(spec.target, spec.map_coeff(dij))
            report.condition_ii.append(
                HomConditionItem(f"(ii) pair ({i + 1},{j + 1})", lhs == rhs, lhs, rhs)
            )
    return report


def extend_hom(spec: HomSpec, f: Poly) -> Poly:
    """Termwise image of a source polynomial under the extended map."""
    if f.pres.fingerprint != spec.source.fingerprint:
        raise HomSpecError("extend_hom expects a source polynomial")
    out = Poly.zero(spec.target)
    for alpha, r in f.terms.items():
        out = out + spec.map_coeff(r) * spec.y_power(alpha)
    return out


def identity_spec(P: Presentation) -> HomSpec:
    phi = {g: Poly.const(P, P.ring.generator(g)) for g in P.ring.generator_names()}
    y = tuple(Poly.variable(P, i) for i in range(P.n))
    return HomSpec(P, P, phi, y)


def _random_poly(P: Presentation, stream: Stream, max_degree: int) -> Poly:
    terms: dict = {}
    for _ in range(1 + stream.below(3)):
        remaining = max_degree
        alpha = []
        for _ in range(P.n):
            e = stream.below(remaining + 1) if remaining else 0
            alpha.append(e)
            remaining -= e
        coeff = P.ring.random_elem(stream, 1)
        if coeff:
            terms[tuple(alpha)] = coeff
    return Poly(P, terms)


def verify_mutual_inverse(
    spec: HomSpec, spec_back: HomSpec, samples: int = 8, seed: int = 0
) -> bool:
    """Round-trip identity on variables, coefficient generators, and random
    polynomials, in both directions."""
    if (
        spec.source.fingerprint != spec_back.target.fingerprint
        or spec.target.fingerprint != spec_back.source.fingerprint
    ):
        raise HomSpecError("specs do not point at each other")
    for i in range(spec.source.n):
        f = Poly.variable(spec.source, i)
        if extend_hom(spec_back, extend_hom(spec, f)) != f:
            return False
    for g in spec.source.ring.generator_names():
        f = Poly.const(spec.source, spec.source.ring.generator(g))
        if extend_hom(spec_back, extend_hom(spec, f)) != f:
            return False
    for i in range(spec.target.n):
        f = Poly.variable(spec.target, i)
        if extend_hom(spec, extend_hom(spec_back, f)) != f:
            return False
    for g in spec.target.ring.generator_names():
        f = Poly.const(spec.target, spec.target.ring.generator(g))
        if extend_hom(spec, extend_hom(spec_back, f)) != f:
            return False
    stream = Stream(seed).split("mutual-inverse")
    for _ in range(samples):
        f = _random_poly(spec.source, stream, 2)
        if extend_hom(spec_back, extend_hom(spec, f)) != f:
            return False
        g = _random_poly(spec.target, stream, 2)
        if extend_hom(spec, extend_hom(spec_back, g)) != g:
            return False
    return True


# ---------------------------------------------------------------------------
# basis images


def _monomials_up_to(n: int, degree: int):
    if n == 0:
        yield ()
        return
    for d in range(degree + 1):

        def parts(slots, total):
            if slots == 1:
                yield (total,)
                return
            for head in range(total + 1):
                for rest in parts(slots - 1, total - head):
                    yield (head,) + rest

        yield from parts(n, d)


def _rows_independent(rows: list[dict]) -> bool:
    """Fraction-free elimination over an integral domain; True when the rows
    are linearly independent over the coefficient ring's fraction field,
    equivalently over the ring itself."""
    pivots: list[tuple] = []  # (column, row)
    for row in rows:
        row = dict(row)
        for col, prow in pivots:
            v = row.get(col)
            if not v:
                continue
            pv = prow[col]
            row = {
                k: (pv * row.get(k, _zero_like(pv))) - (v * prow.get(k, _zero_like(pv)))
                for k in set(row) | set(prow)
            }
            row = {k: x for k, x in row.items() if x}
        if not row:
            return False
        col = sorted(row)[0]
        pivots.append((col, row))
    return True


def _zero_like(e: CoeffElem) -> CoeffElem:
    return e.ring.zero()


def basis_images_independent(spec: HomSpec, degree: int = 3) -> bool:
    """Whether the images of the standard monomials up to the given total
    degree stay linearly independent over the coefficients in the target."""
    rows = []
    for alpha in _monomials_up_to(spec.source.n, degree):
        img = spec.y_power(tuple(alpha))
        rows.append(dict(img.terms))
    return _rows_independent(rows)
