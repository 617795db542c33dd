"""Word straightening and normalization onto the standard-monomial module.

The straightening map sends any word to an integer combination of standard
words by recursing on the rightmost out-of-order adjacent pair:

  * standard word: itself;
  * (x_i, r) pair: the twist-and-derive move, two child words;
  * (x_j, x_i) pair with i < j: the commutation move, n + 2 child words
    (the reordered word with its unit coefficient, one word per linear term,
    one word for the constant term).

Every child word has strictly smaller complexity, so the recursion
terminates; it is evaluated iteratively with an explicit stack and a
per-presentation memo table, which keeps deep reductions cheap and immune to
interpreter recursion limits.  The memo is observably pure: entries are
fully-reduced values of the map, never partial state.

The prefix collapse multiplies out the scalar prefix of each standard word
in the coefficient ring; composed with straightening it gives the
normalization map onto the free module of standard monomials, whose product
is normalize(section(f) . section(g)).  That word-level product is the
trusted oracle for the fast exponent-level product in algebra.star.
"""

from __future__ import annotations

from .algebra import Poly
from .words import FreeElem, Scalar, Var, Word, complexity, rightmost_violation, word_str

DEFAULT_MAX_WORD_LEN = 16


class WordLengthError(ValueError):
    """Input word longer than the straightening cap."""


def _check_letters(w: Word, P) -> None:
    for letter in w:
        if isinstance(letter, Var):
            if not 0 <= letter.index < P.n:
                raise ValueError(
                    f"variable index {letter.index} out of range for {P.n} variables"
                )
        elif letter.value.ring != P.ring:
            raise ValueError(
                f"scalar letter {letter.value} lies in {letter.value.ring.describe()}, "
                f"not in {P.ring.describe()}"
            )


def rewrite_step(w: Word, P) -> list[Word] | None:
    """One straightening move at the rightmost violation; None if standard.

    A child whose inserted coefficient letter is zero is dropped: every word
    containing a zero letter collapses to zero under the scalar-prefix map,
    so such children contribute nothing to any downstream normalization.
    Over a parameter system whose inserted values are all nonzero this is
    the recursion with nothing pruned; over sparse ones it drops the
    zero-weight branches that otherwise dominate the free-ring blow-up.
    """
    v = rightmost_violation(w)
    if v is None:
        return None
    s = v.pos
    head, tail = w[:s], w[s + 2 :]
    out = []
    if v.kind == "scalar":
        i = w[s].index
        r = w[s + 1].value
        sr = P.sigma[i].apply(r)
        if sr:
            out.append(head + (Scalar(sr), Var(i)) + tail)
        dr = P.delta[i].apply(r)
        if dr:
            out.append(head + (Scalar(dr),) + tail)
        return out
    j = w[s].index
    i = w[s + 1].index
    cij = P.c_of(i, j)
    if cij:
        out.append(head + (Scalar(cij), Var(i), Var(j)) + tail)
    for k in range(P.n):
        a = P.a_of(i, j, k)
        if a:
            out.append(head + (Scalar(a), Var(k)) + tail)
    dij = P.d_of(i, j)
    if dij:
        out.append(head + (Scalar(dij),) + tail)
    return out


def reduce_p(
    w: Word,
    P,
    *,
    max_len: int = DEFAULT_MAX_WORD_LEN,
    check_descent: bool = False,
) -> FreeElem:
    """Straighten one word into an integer combination of standard words.

    ``check_descent`` re-verifies the termination measure on every expansion
    (each child strictly smaller in the lexicographic complexity order); with
    the shared memo, each distinct word is checked once.
    """
    w = tuple(w)
    if len(w) > max_len:
        raise WordLengthError(f"word of length {len(w)} exceeds cap {max_len}")
    _check_letters(w, P)
    cache = P._reduce_cache
    stack = [w]
    while stack:
        cur = stack[-1]
        if cur in cache:
            stack.pop()
            continue
        children = rewrite_step(cur, P)
        if children is None:
            cache[cur] = FreeElem.from_word(cur)
            stack.pop()
            continue
        if check_descent:
            cc = complexity(cur)
            for child in children:
                if not complexity(child) < cc:
                    raise AssertionError(
                        f"complexity did not drop: {word_str(cur)} -> {word_str(child)}"
                    )
        missing = [child for child in children if child not in cache]
        if missing:
            stack.extend(missing)
            continue
        total = FreeElem.zero()
        for child in children:
            total = total + cache[child]
        cache[cur] = total
        stack.pop()
    return cache[w]


def reduce_elem(
    e: FreeElem,
    P,
    *,
    max_len: int = DEFAULT_MAX_WORD_LEN,
    check_descent: bool = False,
) -> FreeElem:
    """Linear extension of the straightening map."""
    out = FreeElem.zero()
    for w, m in e:
        out = out + reduce_p(w, P, max_len=max_len, check_descent=check_descent).scale(m)
    return out


def collapse_q(e: FreeElem, P) -> Poly:
    """Multiply out scalar prefixes; defined on combinations of standard
    words only."""
    terms: dict = {}
    ring = P.ring
    for w, m in e:
        coeff = ring.one()
        counts = [0] * P.n
        last = -1
        in_prefix = True
        for letter in w:
            if isinstance(letter, Scalar):
                if not in_prefix:
                    raise ValueError(f"word not standard: {word_str(w)}")
                coeff = coeff * letter.value
            else:
                in_prefix = False
                if letter.index < last:
                    raise ValueError(f"word not standard: {word_str(w)}")
                last = letter.index
                counts[letter.index] += 1
        alpha = tuple(counts)
        add = coeff * m
        cur = terms.get(alpha)
        cur = add if cur is None else cur + add
        if cur:
            terms[alpha] = cur
        else:
            terms.pop(alpha, None)
    return Poly(P, terms)


def section_t(f: Poly) -> FreeElem:
    """Send each term r x^alpha to the word (r, variables in order); the
    coefficient letter is kept even when it is 1."""
    out: dict[Word, int] = {}
    for alpha, r in f.terms.items():
        letters: list = [Scalar(r)]
        for i, e in enumerate(alpha):
            letters.extend([Var(i)] * e)
        out[tuple(letters)] = out.get(tuple(letters), 0) + 1
    return FreeElem(out)


def _coalesce(w: Word, ring) -> Word | None:
    """Merge adjacent scalar letters into their product; None when a zero
    letter makes the whole word normalize to zero."""
    out: list = []
    for letter in w:
        if isinstance(letter, Scalar):
            if not letter.value:
                return None
            if out and isinstance(out[-1], Scalar):
                v = out[-1].value * letter.value
                if not v:
                    return None
                out[-1] = Scalar(v)
            else:
                out.append(letter)
        else:
            out.append(letter)
    return tuple(out)


def _h_reduce(w: Word, P) -> tuple:
    """Normalization of a single coalesced word, memoized per presentation.

    Identical rewrite moves to reduce_p, but words are kept coalesced, which
    is exact for the normalized value: merging two adjacent coefficient
    letters only uses the endomorphism and twisted-Leibniz laws, which hold
    for the presentation's structure maps by construction.  Working modulo
    coalescing collapses the free-ring blow-up that makes the literal
    straightening expensive on dense parameter systems.
    Returns a tuple of (monomial, coefficient) pairs.
    """
    cache = P._h_cache
    stack = [w]
    while stack:
        cur = stack[-1]
        if cur in cache:
            stack.pop()
            continue
        children = rewrite_step(cur, P)
        if children is None:
            # coalesced standard word: at most one scalar letter, in front
            coeff = P.ring.one()
            counts = [0] * P.n
            for letter in cur:
                if isinstance(letter, Scalar):
                    coeff = coeff * letter.value
                else:
                    counts[letter.index] += 1
            cache[cur] = ((tuple(counts), coeff),)
            stack.pop()
            continue
        kids = []
        for child in children:
            cw = _coalesce(child, P.ring)
            if cw is not None:
                kids.append(cw)
        missing = [k for k in kids if k not in cache]
        if missing:
            stack.extend(missing)
            continue
        acc: dict = {}
        for k in kids:
            for mono, c in cache[k]:
                s = acc.get(mono)
                s = c if s is None else s + c
                if s:
                    acc[mono] = s
                else:
                    acc.pop(mono, None)
        cache[cur] = tuple(acc.items())
        stack.pop()
    return cache[w]


def normalize_h(
    e: FreeElem,
    P,
    *,
    max_len: int = DEFAULT_MAX_WORD_LEN,
) -> Poly:
    """Straighten then collapse: the normalization onto standard monomials.

    Evaluated along the coalescing fast path of _h_reduce; equal to
    collapse_q(reduce_elem(e)), which the test suite asserts on random
    inputs over every catalog presentation.
    """
    terms: dict = {}
    for w, m in e:
        if len(w) > max_len:
            raise WordLengthError(f"word of length {len(w)} exceeds cap {max_len}")
        _check_letters(w, P)
        cw = _coalesce(tuple(w), P.ring)
        if cw is None:
            continue
        for mono, c in _h_reduce(cw, P):
            add = c * m
            s = terms.get(mono)
            s = add if s is None else s + add
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
    return Poly(P, terms)


def h_word(w: Word, P, **kw) -> Poly:
    return normalize_h(FreeElem.from_word(tuple(w)), P, **kw)


def star_oracle(f: Poly, g: Poly, *, max_len: int = 64) -> Poly:
    """Word-level product: normalize(section(f) . section(g)).

    Independent of the exponent-level engine in algebra.star; used to
    cross-check it.  The length cap is looser here since section output
    grows with the degrees involved.
    """
    f._same(g)
    words = section_t(f).concat(section_t(g))
    return normalize_h(words, f.pres, max_len=max_len)
