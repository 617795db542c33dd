"""Parameter systems for skew PBW extensions and the existence checker.

A presentation packages the commutation data over a coefficient ring R:
one twist endomorphism and one twisted derivation per variable (how each
variable passes coefficients), and for every variable pair i < j the unit
c_ij, the linear terms a_ij^(k), and the constant d_ij of

    x_j x_i  =  c_ij x_i x_j + a_ij^(1) x_1 + ... + a_ij^(n) x_n + d_ij.

Whether these data actually define a ring on the standard monomials is
decided by an overlap check: every variable-variable-coefficient word and
every decreasing variable triple must normalize to the same value along both
reduction orders.  Condition 1 below covers the algebraic laws of the maps,
condition 2 the (x_j, x_i, r) overlaps, condition 3 the (x_k, x_j, x_i)
overlaps.  Condition 3 is exhaustive (finitely many triples); condition 2
quantifies over all of R, which is discharged exactly for generator-free
coefficient fields (both sides are additive in r, so the spanning set {1}
decides it) and by generator coverage plus sampling otherwise.  Reports
label each part "structural" or "sampled" accordingly.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field

from .algebra import Poly
from .reduction import h_word, normalize_h, reduce_p
from .rings import CoeffElem, CoeffRing, RingMap, RingMismatchError, SigmaDerivation
from .rng import Stream
from .words import FreeElem, Scalar, Var

_POSITIONAL = re.compile(r"^x([0-9]+)$")


class PresentationError(ValueError):
    """Structurally malformed parameter system."""


def _check_var_names(names: tuple[str, ...], ring: CoeffRing) -> None:
    if len(set(names)) != len(names):
        raise PresentationError("variable names must be distinct")
    gens = set(ring.generator_names())
    for pos, name in enumerate(names):
        if not re.match(r"^[A-Za-z_][A-Za-z0-9_]*$", name):
            raise PresentationError(f"invalid variable name {name!r}")
        if name in gens:
            raise PresentationError(f"variable {name!r} collides with a coefficient generator")
        m = _POSITIONAL.match(name)
        if m and int(m.group(1)) != pos + 1:
            raise PresentationError(
                f"positional name {name!r} must sit at slot {m.group(1)}"
            )
    for g in gens:
        if _POSITIONAL.match(g):
            raise PresentationError(
                f"coefficient generator {g!r} would shadow positional variable names"
            )


class Presentation:
    """Immutable parameter system; validation here is structural only.

    Whether the parameters satisfy the existence conditions is a separate
    question answered by check_all: construction must accept e.g. a non-unit
    c_ij so the checker can report it.
    """

    __slots__ = (
        "ring",
        "var_names",
        "sigma",
        "delta",
        "_c",
        "_d",
        "_a",
        "_fingerprint",
        "_reduce_cache",
        "_vtm_cache",
        "_h_cache",
    )

    def __init__(
        self,
        ring: CoeffRing,
        var_names,
        sigma=None,
        delta=None,
        c=None,
        d=None,
        a=None,
    ):
        self.ring = ring
        self.var_names = tuple(var_names)
        _check_var_names(self.var_names, ring)
        n = len(self.var_names)

        if sigma is None:
            sigma = [RingMap.identity(ring)] * n
        self.sigma = tuple(sigma)
        if len(self.sigma) != n:
            raise PresentationError(f"need {n} twist maps, got {len(self.sigma)}")
        for s in self.sigma:
            if s.ring != ring:
                raise RingMismatchError("twist map over a different ring")

        if delta is None:
            delta = [SigmaDerivation.zero(ring, s) for s in self.sigma]
        self.delta = tuple(delta)
        if len(self.delta) != n:
            raise PresentationError(f"need {n} derivations, got {len(self.delta)}")
        for i, dv in enumerate(self.delta):
            if dv.ring != ring:
                raise RingMismatchError("derivation over a different ring")
            if dv.twist != self.sigma[i]:
                raise PresentationError(f"derivation {i} is not twisted by twist {i}")

        one = ring.one()
        zero = ring.zero()
        self._c = {}
        self._d = {}
        self._a = {}
        for i in range(n):
            for j in range(i + 1, n):
                self._c[(i, j)] = one
                self._d[(i, j)] = zero
        for key, val in dict(c or {}).items():
            self._c[self._pair(key)] = self._elem(val)
        for key, val in dict(d or {}).items():
            self._d[self._pair(key)] = self._elem(val)
        for key, val in dict(a or {}).items():
            i, j, k = key
            if not (0 <= i < j < n and 0 <= k < n):
                raise PresentationError(f"bad linear-term index {key}")
            v = self._elem(val)
            if v:
                self._a[(i, j, k)] = v

        self._fingerprint = None
        self._reduce_cache = {}
        self._vtm_cache = {}
        self._h_cache = {}

    def _pair(self, key) -> tuple[int, int]:
        i, j = key
        if not (0 <= i < j < self.n):
            raise PresentationError(f"relation pair {key} must have 0 <= i < j < n")
        return (i, j)

    def _elem(self, val) -> CoeffElem:
        if isinstance(val, int):
            return self.ring.from_int(val)
        if not isinstance(val, CoeffElem):
            raise PresentationError(f"parameter {val!r} is not a ring element")
        if val.ring != self.ring:
            raise RingMismatchError("parameter from a different ring")
        return val

    @property
    def n(self) -> int:
        return len(self.var_names)

    def c_of(self, i: int, j: int) -> CoeffElem:
        return self._c[(i, j)]

    def d_of(self, i: int, j: int) -> CoeffElem:
        return self._d[(i, j)]

    def a_of(self, i: int, j: int, k: int) -> CoeffElem:
        return self._a.get((i, j, k), self.ring.zero())

    def a_vector(self, i: int, j: int) -> tuple[CoeffElem, ...]:
        return tuple(self.a_of(i, j, k) for k in range(self.n))

    @property
    def fingerprint(self) -> str:
        if self._fingerprint is None:
            lines = [self.ring.describe(), " ".join(self.var_names)]
            for i in range(self.n):
                imgs = " ".join(f"{g}->{img}" for g, img in self.sigma[i].images)
                lines.append(f"sigma{i}: {imgs}")
                imgs = " ".join(f"{g}->{img}" for g, img in self.delta[i].images)
                lines.append(f"delta{i}: {imgs}")
            for i in range(self.n):
                for j in range(i + 1, self.n):
                    avec = ", ".join(str(x) for x in self.a_vector(i, j))
                    lines.append(f"rel {i} {j}: c={self.c_of(i, j)} d={self.d_of(i, j)} a=({avec})")
            digest = hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()
            self._fingerprint = digest
        return self._fingerprint

    def __eq__(self, other):
        return isinstance(other, Presentation) and self.fingerprint == other.fingerprint

    def __hash__(self):
        return hash(self.fingerprint)

    def __repr__(self):
        return (
            f"Presentation({self.ring.describe()}; vars {', '.join(self.var_names)}; "
            f"{self.fingerprint[:12]})"
        )


def derived_params(P: Presentation, j: int, i: int):
    """Parameters of the mirrored pair: from x_j x_i = c_ij x_i x_j + ...
    with i < j, solve for x_i x_j.  Needs c_ij invertible."""
    if not 0 <= i < j < P.n:
        raise ValueError("derived_params expects j > i")
    c_ji = P.c_of(i, j).inverse()
    d_ji = -c_ji * P.d_of(i, j)
    a_ji = tuple(-c_ji * P.a_of(i, j, k) for k in range(P.n))
    return c_ji, d_ji, a_ji


# ---------------------------------------------------------------------------
# consistency reports


@dataclass
class Condition1Item:
    i: int
    endomorphism_ok: bool
    derivation_ok: bool
    nonzero_ok: bool
    injectivity: str  # "injective" | "no collision found" | "collision found"
    injectivity_mode: str  # "structural" | "sampled"
    witness: str | None = None

    @property
    def ok(self) -> bool:
        # injectivity is reported, not enforced; the nonzero-on-nonzero
        # requirement is what the reduction machinery needs
        return self.endomorphism_ok and self.derivation_ok and self.nonzero_ok


@dataclass
class UnitItem:
    i: int
    j: int
    ok: bool
    value: CoeffElem


@dataclass
class Condition2Item:
    i: int
    j: int
    r: CoeffElem
    ok: bool
    lhs: Poly
    rhs: Poly


@dataclass
class Condition3Item:
    i: int
    j: int
    k: int
    ok: bool
    lhs: Poly
    rhs: Poly


@dataclass
class ConsistencyReport:
    fingerprint: str
    condition1: list[Condition1Item] = field(default_factory=list)
    c_units: list[UnitItem] = field(default_factory=list)
    condition2: list[Condition2Item] = field(default_factory=list)
    condition2_mode: str = "skipped"
    condition3: list[Condition3Item] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return (
            all(it.ok for it in self.condition1)
            and all(it.ok for it in self.c_units)
            and all(it.ok for it in self.condition2)
            and all(it.ok for it in self.condition3)
        )

    def failures(self) -> list[str]:
        out = []
        for it in self.condition1:
            if not it.ok:
                out.append(f"condition 1 fails at x{it.i + 1}: {it.witness}")
        for it in self.c_units:
            if not it.ok:
                out.append(f"c({it.i + 1},{it.j + 1}) = {it.value} is not a unit")
        for it in self.condition2:
            if not it.ok:
                out.append(
                    f"condition 2 fails at (i,j)=({it.i + 1},{it.j + 1}), r={it.r}: "
                    f"lhs={it.lhs} rhs={it.rhs}"
                )
        for it in self.condition3:
            if not it.ok:
                out.append(
                    f"condition 3 fails at (i,j,k)=({it.i + 1},{it.j + 1},{it.k + 1}): "
                    f"lhs={it.lhs} rhs={it.rhs}"
                )
        return out

    def summary(self) -> str:
        lines = [f"presentation {self.fingerprint[:12]}"]
        for it in self.condition1:
            lines.append(
                f"condition 1, x{it.i + 1}: endomorphism {'ok' if it.endomorphism_ok else 'FAIL'}; "
                f"derivation {'ok' if it.derivation_ok else 'FAIL'}; "
                f"nonzero {'ok' if it.nonzero_ok else 'FAIL'}; "
                f"injectivity: {it.injectivity} ({it.injectivity_mode})"
            )
        bad_units = [it for it in self.c_units if not it.ok]
        if bad_units:
            for it in bad_units:
                lines.append(f"c({it.i + 1},{it.j + 1}) = {it.value}: NOT a unit")
        else:
            lines.append(f"units: all {len(self.c_units)} c(i,j) invertible")
        n2_fail = sum(1 for it in self.condition2 if not it.ok)
        lines.append(
            f"condition 2 [{self.condition2_mode}]: {len(self.condition2)} checks, "
            + ("all pass" if n2_fail == 0 else f"{n2_fail} FAIL")
        )
        n3_fail = sum(1 for it in self.condition3 if not it.ok)
        lines.append(
            f"condition 3: {len(self.condition3)} triples, "
            + ("all pass" if n3_fail == 0 else f"{n3_fail} FAIL")
        )
        lines.extend(self.failures())
        lines.append("overall: " + ("PASS" if self.overall else "FAIL"))
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "presentation": self.fingerprint,
            "condition1": [
                {
                    "i": it.i + 1,
                    "endomorphism_ok": it.endomorphism_ok,
                    "derivation_ok": it.derivation_ok,
                    "nonzero_ok": it.nonzero_ok,
                    "injectivity": it.injectivity,
                    "injectivity_mode": it.injectivity_mode,
                    "witness": it.witness,
                }
                for it in self.condition1
            ],
            "c_units": [
                {"i": it.i + 1, "j": it.j + 1, "ok": it.ok, "value": str(it.value)}
                for it in self.c_units
            ],
            "condition2_mode": self.condition2_mode,
            "condition2": [
                {
                    "i": it.i + 1,
                    "j": it.j + 1,
                    "r": str(it.r),
                    "ok": it.ok,
                    "lhs": str(it.lhs),
                    "rhs": str(it.rhs),
                }
                for it in self.condition2
            ],
            "condition3": [
                {
                    "i": it.i + 1,
                    "j": it.j + 1,
                    "k": it.k + 1,
                    "ok": it.ok,
                    "lhs": str(it.lhs),
                    "rhs": str(it.rhs),
                }
                for it in self.condition3
            ],
            "overall": self.overall,
        }


# ---------------------------------------------------------------------------
# condition 1: laws of the structure maps


def _injectivity_status(sigma: RingMap, stream: Stream, samples: int):
    ring = sigma.ring
    if sigma.is_identity():
        return "injective", "structural"
    names = ring.generator_names()
    if len(names) == 1 and not sigma.image(names[0]).is_constant():
        # single generator over a field base with a non-constant image:
        # top-degree terms cannot cancel over an integral domain
        return "injective", "structural"
    for _ in range(samples):
        r = ring.random_elem(stream, 2)
        s = ring.random_elem(stream, 2)
        if r != s and sigma.apply(r) == sigma.apply(s):
            return "collision found", "sampled"
    return "no collision found", "sampled"


def validate_structure(P: Presentation, samples: int = 16, seed: int = 0) -> ConsistencyReport:
    """Structure-map laws (condition 1), plus unit checks on the c_ij."""
    report = ConsistencyReport(fingerprint=P.fingerprint)
    base = Stream(seed)
    ring = P.ring
    one = ring.one()
    for i in range(P.n):
        stream = base.split(f"structure:{i}")
        sigma = P.sigma[i]
        delta = P.delta[i]
        endo_ok = sigma.apply(one) == one
        deriv_ok = not delta.apply(one)
        nonzero_ok = True
        witness = None
        if not endo_ok:
            witness = f"sigma{i + 1}(1) = {sigma.apply(one)}"
        if not deriv_ok and witness is None:
            witness = f"delta{i + 1}(1) = {delta.apply(one)}"
        for _ in range(samples):
            r = ring.random_elem(stream, 2)
            s = ring.random_elem(stream, 2)
            if endo_ok:
                if sigma.apply(r + s) != sigma.apply(r) + sigma.apply(s) or sigma.apply(
                    r * s
                ) != sigma.apply(r) * sigma.apply(s):
                    endo_ok = False
                    witness = f"endomorphism law fails on r={r}, s={s}"
            if deriv_ok:
                if delta.apply(r + s) != delta.apply(r) + delta.apply(s) or delta.apply(
                    r * s
                ) != sigma.apply(r) * delta.apply(s) + delta.apply(r) * s:
                    deriv_ok = False
                    witness = f"twisted Leibniz fails on r={r}, s={s}"
            if nonzero_ok:
                t = ring.random_nonzero(stream, 2)
                if not sigma.apply(t):
                    nonzero_ok = False
                    witness = f"sigma{i + 1}({t}) = 0"
        inj, inj_mode = _injectivity_status(sigma, base.split(f"injectivity:{i}"), samples)
        if inj == "collision found" and witness is None:
            witness = "twist identifies distinct elements"
        report.condition1.append(
            Condition1Item(i, endo_ok, deriv_ok, nonzero_ok, inj, inj_mode, witness)
        )
    for i in range(P.n):
        for j in range(i + 1, P.n):
            cij = P.c_of(i, j)
            report.c_units.append(UnitItem(i, j, cij.is_unit(), cij))
    return report


# ---------------------------------------------------------------------------
# conditions 2 and 3: overlap checks


def check_condition2(P: Presentation, i: int, j: int, r: CoeffElem) -> Condition2Item:
    """Compare the two reduction orders of the word x_j x_i r."""
    if not 0 <= i < j < P.n:
        raise ValueError("condition 2 expects i < j")
    lhs = h_word((Var(j), Var(i), Scalar(r)), P)
    straightened = reduce_p((Var(j), Var(i)), P)
    rhs = normalize_h(straightened.concat(FreeElem.from_word((Scalar(r),))), P)
    return Condition2Item(i, j, r, lhs == rhs, lhs, rhs)


def check_condition3(P: Presentation, i: int, j: int, k: int) -> Condition3Item:
    """Compare the two reduction orders of the overlap word x_k x_j x_i."""
    if not 0 <= i < j < k < P.n:
        raise ValueError("condition 3 expects i < j < k")
    lhs = h_word((Var(k), Var(j), Var(i)), P)
    straightened = reduce_p((Var(k), Var(j)), P)
    rhs = normalize_h(straightened.concat(FreeElem.from_word((Var(i),))), P)
    return Condition3Item(i, j, k, lhs == rhs, lhs, rhs)


def condition2_sample_set(P: Presentation, samples: int, stream: Stream) -> list[CoeffElem]:
    """1, every generator, random elements, random generator products."""
    ring = P.ring
    out = [ring.one()]
    seen = {ring.one()}
    gens = [ring.generator(g) for g in ring.generator_names()]
    for g in gens:
        if g not in seen:
            out.append(g)
            seen.add(g)
    for _ in range(samples):
        r = ring.random_elem(stream, 2)
        if r and r not in seen:
            out.append(r)
            seen.add(r)
    if gens:
        for _ in range(samples):
            r = stream.choice(gens) * stream.choice(gens)
            if r not in seen:
                out.append(r)
                seen.add(r)
    return out


def check_all(P: Presentation, samples: int = 64, seed: int = 0) -> ConsistencyReport:
    """Run conditions 1-3; overall pass means the parameters define an
    extension (exactly, up to the sampled scope recorded in the report)."""
    base = Stream(seed)
    report = validate_structure(P, samples=min(samples, 16), seed=seed)
    report.condition2_mode = "structural" if not P.ring.generator_names() else "sampled"
    for i in range(P.n):
        for j in range(i + 1, P.n):
            stream = base.split(f"cond2:{i},{j}")
            for r in condition2_sample_set(P, samples, stream):
                report.condition2.append(check_condition2(P, i, j, r))
    for i in range(P.n):
        for j in range(i + 1, P.n):
            for k in range(j + 1, P.n):
                report.condition3.append(check_condition3(P, i, j, k))
    return report
