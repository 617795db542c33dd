"""Canonical polynomials over standard monomials and the ring product.

A Poly is a finite map from exponent vectors (one slot per variable, entries
in N) to nonzero coefficients, tagged with the presentation it lives over.
This is the free left module on standard monomials; the product is the
noncommutative one induced by the presentation's commutation rules.

The fast product below rewrites exponent vectors directly: a variable is
pushed into a sorted monomial by repeatedly applying the variable-variable
relation to the leftmost out-of-order generator, and variables pass
coefficients by the twist-and-derive rule.  Single steps are memoized per
presentation.  Correctness of this path is anchored by the word-level
normalization oracle (see reduction.star_oracle), which the test suite and
the multiply command's verify mode run against it.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from fractions import Fraction

from .rings import CoeffElem, RingMismatchError

Monomial = tuple  # tuple[int, ...]

EXPONENT_CAP = 1 << 16


class ExponentCapError(OverflowError):
    """A product pushed some exponent past the per-variable cap."""


class InconsistentPresentationError(RuntimeError):
    """The engine derived a non-unit leading coefficient, which cannot happen
    over a presentation that passed the existence checks."""


def mono_degree(alpha: Monomial) -> int:
    return sum(alpha)


def _order_key(alpha: Monomial):
    # total degree descending, then lexicographic on exponent vectors descending
    return (-sum(alpha), tuple(-e for e in alpha))


def _check_exponents(alpha: Monomial, n: int) -> None:
    if len(alpha) != n:
        raise ValueError(f"monomial has {len(alpha)} slots, presentation has {n}")
    for e in alpha:
        if e < 0:
            raise ValueError("negative exponent")
        if e >= EXPONENT_CAP:
            raise ExponentCapError(f"exponent {e} exceeds cap {EXPONENT_CAP}")


class Poly:
    """An element of the extension ring in canonical form."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres, terms: Mapping[Monomial, CoeffElem]):
        clean: dict[Monomial, CoeffElem] = {}
        for alpha, c in terms.items():
            alpha = tuple(alpha)
            _check_exponents(alpha, pres.n)
            if c.ring != pres.ring:
                raise RingMismatchError("coefficient from a different ring")
            if c:
                clean[alpha] = c
        self.pres = pres
        self.terms = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, pres) -> "Poly":
        return cls(pres, {})

    @classmethod
    def const(cls, pres, c) -> "Poly":
        if isinstance(c, int):
            c = pres.ring.from_int(c)
        elif isinstance(c, Fraction):
            c = pres.ring.from_fraction(c)
        return cls(pres, {(0,) * pres.n: c})

    @classmethod
    def one(cls, pres) -> "Poly":
        return cls.const(pres, 1)

    @classmethod
    def variable(cls, pres, i: int) -> "Poly":
        exps = tuple(1 if k == i else 0 for k in range(pres.n))
        return cls(pres, {exps: pres.ring.one()})

    @classmethod
    def monomial(cls, pres, alpha: Iterable[int], coeff=None) -> "Poly":
        c = pres.ring.one() if coeff is None else coeff
        return cls(pres, {tuple(alpha): c})

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(a) == 0 for a in self.terms)

    def constant_coeff(self) -> CoeffElem:
        return self.terms.get((0,) * self.pres.n, self.pres.ring.zero())

    def deg(self):
        """Total degree; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(a) for a in self.terms)

    def ordered_terms(self) -> list[tuple[Monomial, CoeffElem]]:
        return sorted(self.terms.items(), key=lambda t: _order_key(t[0]))

    # -- arithmetic ----------------------------------------------------------

    def _same(self, other: "Poly") -> None:
        if self.pres is not other.pres and self.pres.fingerprint != other.pres.fingerprint:
            raise ValueError("polynomials over different presentations")

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._same(other)
        out = dict(self.terms)
        for alpha, c in other.terms.items():
            s = out.get(alpha)
            s = c if s is None else s + c
            if s:
                out[alpha] = s
            else:
                out.pop(alpha, None)
        return Poly(self.pres, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.pres, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction, CoeffElem)):
            return Poly.const(self.pres, other)
        return NotImplemented

    def scale(self, r) -> "Poly":
        """Left module action r . f (coefficients multiplied in R)."""
        if isinstance(r, (int, Fraction)):
            r = Poly.const(self.pres, r).constant_coeff()
        return Poly(self.pres, {a: r * c for a, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Poly):
            return star(self, other)
        if isinstance(other, (int, Fraction, CoeffElem)):
            # scalars are central only in R; right multiplication by a
            # constant still goes through the product engine
            return star(self, Poly.const(self.pres, other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CoeffElem)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a nonnegative int")
        out = Poly.one(self.pres)
        for _ in range(k):
            out = star(out, self)
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (
            self.pres.fingerprint == other.pres.fingerprint
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.pres.fingerprint, frozenset(self.terms.items())))

    # -- text ----------------------------------------------------------------

    def _mono_str(self, alpha: Monomial) -> str:
        parts = []
        for i, e in enumerate(alpha):
            if e == 1:
                parts.append(f"x{i + 1}")
            elif e:
                parts.append(f"x{i + 1}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.pres.ring
        one = ring.one()
        parts = []
        for alpha, c in self.ordered_terms():
            mono = self._mono_str(alpha)
            if not mono:
                parts.append(str(c))
            elif c == one:
                parts.append(mono)
            elif c == -one:
                parts.append("-" + mono)
            elif ring._term_count(c.value) > 1:
                parts.append(f"({c})*{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for t in parts[1:]:
            if t.startswith("-"):
                out += " - " + t[1:]
            else:
                out += " + " + t
        return out

    def __repr__(self):
        return f"Poly({self})"


def deg(f: Poly):
    return f.deg()


# ---------------------------------------------------------------------------
# product engine


def _bump(alpha: Monomial, i: int) -> Monomial:
    if alpha[i] + 1 >= EXPONENT_CAP:
        raise ExponentCapError(f"exponent cap {EXPONENT_CAP} exceeded at slot {i}")
    return alpha[:i] + (alpha[i] + 1,) + alpha[i + 1 :]


def _add_scaled(acc: dict, items, r: CoeffElem) -> None:
    for alpha, c in items:
        v = r * c
        if not v:
            continue
        s = acc.get(alpha)
        s = v if s is None else s + v
        if s:
            acc[alpha] = s
        else:
            acc.pop(alpha, None)


def _var_times_monomial(P, i: int, gamma: Monomial):
    """x_i * x^gamma as a tuple of (monomial, coefficient), memoized."""
    cache = P._vtm_cache
    key = (i, gamma)
    hit = cache.get(key)
    if hit is not None:
        return hit
    j = next((k for k, e in enumerate(gamma) if e), None)
    if j is None or j >= i:
        out = ((_bump(gamma, i), P.ring.one()),)
    else:
        # x_i x_j = c x_j x_i + sum_k a_k x_k + d  for the stored pair (j, i)
        gp = gamma[:j] + (gamma[j] - 1,) + gamma[j + 1 :]
        rest = _var_times_monomial(P, i, gp)
        acc: dict = {}
        _add_scaled(acc, _var_times_terms(P, j, rest), P.c_of(j, i))
        for k in range(P.n):
            a = P.a_of(j, i, k)
            if a:
                _add_scaled(acc, _var_times_monomial(P, k, gp), a)
        dji = P.d_of(j, i)
        if dji:
            _add_scaled(acc, ((gp, P.ring.one()),), dji)
        out = tuple(acc.items())
    cache[key] = out
    return out


def _var_times_terms(P, i: int, terms) -> tuple:
    """x_i * (sum of coeff * monomial): coefficients pass through the i-th
    twist, shedding a derivation term."""
    sigma = P.sigma[i]
    delta = P.delta[i]
    acc: dict = {}
    for gamma, s in terms:
        u = sigma.apply(s)
        if u:
            _add_scaled(acc, _var_times_monomial(P, i, gamma), u)
        v = delta.apply(s)
        if v:
            _add_scaled(acc, ((gamma, P.ring.one()),), v)
    return tuple(acc.items())


def star(f: Poly, g: Poly) -> Poly:
    """The ring product, rewritten directly over exponent vectors."""
    f._same(g)
    P = f.pres
    out: dict = {}
    for alpha, r in f.terms.items():
        cur = tuple(g.terms.items())
        for i in range(P.n - 1, -1, -1):
            for _ in range(alpha[i]):
                cur = _var_times_terms(P, i, cur)
        _add_scaled(out, cur, r)
    return Poly(P, out)


def sigma_pow(alpha: Monomial, r: CoeffElem, P) -> CoeffElem:
    """Composite twist: slot n applied first, slot 1 last."""
    out = r
    for i in range(P.n - 1, -1, -1):
        sigma = P.sigma[i]
        for _ in range(alpha[i]):
            out = sigma.apply(out)
    return out


def decompose_var_coeff(alpha: Monomial, r: CoeffElem, P) -> tuple[CoeffElem, Poly]:
    """Split x^alpha r into (leading coefficient, lower-degree tail)."""
    if not r:
        raise ValueError("decompose_var_coeff needs a nonzero coefficient")
    alpha = tuple(alpha)
    r_alpha = sigma_pow(alpha, r, P)
    full = star(Poly.monomial(P, alpha), Poly.const(P, r))
    tail = full - Poly.monomial(P, alpha, r_alpha)
    return r_alpha, tail


def monomial_product(alpha: Monomial, beta: Monomial, P) -> tuple[CoeffElem, Poly]:
    """Split x^alpha x^beta into (unit coefficient of x^(alpha+beta), tail)."""
    alpha = tuple(alpha)
    beta = tuple(beta)
    prod = star(Poly.monomial(P, alpha), Poly.monomial(P, beta))
    top = tuple(a + b for a, b in zip(alpha, beta))
    c = prod.terms.get(top)
    if c is None or not c.is_unit():
        raise InconsistentPresentationError(
            f"leading coefficient of x^{alpha} x^{beta} is not a unit; "
            "the presentation does not define an extension"
        )
    tail = prod - Poly.monomial(P, top, c)
    return c, tail
