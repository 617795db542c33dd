"""Homomorphism seeds, the termwise extension, and round-trip checks."""

import pytest

from skewpbw.algebra import Poly, star
from skewpbw.catalog import get
from skewpbw.presentation import Presentation
from skewpbw.rings import LaurentRing, QQ
from skewpbw.rng import Stream
from skewpbw.universal import (
    HomSpec,
    HomSpecError,
    basis_images_independent,
    check_hom_conditions,
    extend_hom,
    identity_spec,
    verify_mutual_inverse,
)

from .genutil import random_poly


def heisenberg_to_weyl():
    """p -> d/dt, q -> t, z -> 1 inside the first Weyl algebra."""
    H = get("u_heisenberg")
    W = get("weyl", 1)
    y = (Poly.variable(W, 1), Poly.variable(W, 0), Poly.one(W))
    return HomSpec(H, W, {}, y)


def test_identity_spec_passes(catalog_entries):
    for name, P in catalog_entries:
        spec = identity_spec(P)
        assert check_hom_conditions(spec, samples=6, seed=3).ok, name


def test_heisenberg_to_weyl_passes(u_heisenberg, weyl1):
    spec = heisenberg_to_weyl()
    report = check_hom_conditions(spec, samples=8, seed=1)
    assert report.ok
    # the pair condition encodes the canonical commutation relation
    pair_items = [it for it in report.condition_ii if "(1,2)" in it.label]
    assert pair_items and pair_items[0].ok


def test_heisenberg_to_weyl_broken_center_fails():
    H = get("u_heisenberg")
    W = get("weyl", 1)
    y = (Poly.variable(W, 1), Poly.variable(W, 0), Poly.const(W, 2))
    spec = HomSpec(H, W, {}, y)
    report = check_hom_conditions(spec, samples=4, seed=1)
    assert not report.ok
    bad = [it for it in report.condition_ii if not it.ok]
    assert bad and bad[0].lhs != bad[0].rhs


def test_extend_hom_examples():
    spec = heisenberg_to_weyl()
    H, W = spec.source, spec.target
    assert extend_hom(spec, Poly.variable(H, 0)) == Poly.variable(W, 1)
    assert extend_hom(spec, Poly.const(H, 7)) == Poly.const(W, 7)
    # monomial p q maps to x2 * x1 computed inside the Weyl engine
    f = Poly.monomial(H, (1, 1, 0))
    assert extend_hom(spec, f) == star(Poly.variable(W, 1), Poly.variable(W, 0))


def test_extension_is_ring_map(catalog_entries):
    spec = heisenberg_to_weyl()
    stream = Stream(17)
    for _ in range(40):
        f = random_poly(spec.source, stream, 3)
        g = random_poly(spec.source, stream, 3)
        assert extend_hom(spec, f + g) == extend_hom(spec, f) + extend_hom(spec, g)
        assert extend_hom(spec, star(f, g)) == star(extend_hom(spec, f), extend_hom(spec, g))


def test_extension_determined_by_seed():
    spec_a = heisenberg_to_weyl()
    spec_b = heisenberg_to_weyl()
    stream = Stream(23)
    for _ in range(10):
        f = random_poly(spec_a.source, stream, 3)
        assert extend_hom(spec_a, f) == extend_hom(spec_b, f)


def test_mutual_inverse_identity(catalog_entries):
    for name, P in catalog_entries:
        spec = identity_spec(P)
        assert verify_mutual_inverse(spec, spec, samples=4, seed=5), name


def permuted_quantum_plane():
    """The quantum plane with its two variables renamed and the relation
    rewritten for the swapped order: v u = q^-1 u v."""
    ring = LaurentRing(QQ, "q")
    q = ring.generator("q")
    return Presentation(ring, ("u", "v"), c={(0, 1): q.inverse()})


def test_mutual_inverse_permuted_variables(quantum_plane):
    B = permuted_quantum_plane()
    A = quantum_plane
    phi_ab = {"q": Poly.const(B, B.ring.generator("q"))}
    phi_ba = {"q": Poly.const(A, A.ring.generator("q"))}
    # x1 -> v, x2 -> u and back
    fwd = HomSpec(A, B, phi_ab, (Poly.variable(B, 1), Poly.variable(B, 0)))
    back = HomSpec(B, A, phi_ba, (Poly.variable(A, 1), Poly.variable(A, 0)))
    assert check_hom_conditions(fwd, samples=6, seed=2).ok
    assert check_hom_conditions(back, samples=6, seed=2).ok
    assert verify_mutual_inverse(fwd, back, samples=6, seed=2)


def test_collapsing_spec_is_not_invertible(u_heisenberg):
    H = u_heisenberg
    # p, q -> p, z -> 0: satisfies the conditions but collapses variables
    y = (Poly.variable(H, 0), Poly.variable(H, 0), Poly.zero(H))
    spec = HomSpec(H, H, {}, y)
    assert check_hom_conditions(spec, samples=4, seed=2).ok
    assert not verify_mutual_inverse(spec, identity_spec(H), samples=4, seed=2)


def test_basis_images_independent(catalog_entries, quantum_plane):
    # invertible seeds keep the monomial images independent
    for name, P in catalog_entries:
        if P.n > 3:
            continue
        assert basis_images_independent(identity_spec(P), degree=2), name
    B = permuted_quantum_plane()
    phi_ab = {"q": Poly.const(B, B.ring.generator("q"))}
    fwd = HomSpec(quantum_plane, B, phi_ab, (Poly.variable(B, 1), Poly.variable(B, 0)))
    assert basis_images_independent(fwd, degree=3)
    # the map onto the Weyl algebra collapses the center: not independent
    assert not basis_images_independent(heisenberg_to_weyl(), degree=2)
    # collapsing two variables destroys independence immediately
    H = get("u_heisenberg")
    collapse = HomSpec(H, H, {}, (Poly.variable(H, 0), Poly.variable(H, 0), Poly.zero(H)))
    assert not basis_images_independent(collapse, degree=1)


def test_homspec_validation(u_heisenberg, weyl1):
    with pytest.raises(HomSpecError):
        HomSpec(u_heisenberg, weyl1, {}, (Poly.one(weyl1),))  # wrong arity
    with pytest.raises(HomSpecError):
        HomSpec(u_heisenberg, weyl1, {"q": Poly.one(weyl1)}, tuple(Poly.one(weyl1) for _ in range(3)))
    qp = get("quantum_plane")
    with pytest.raises(HomSpecError):
        # phi image must be constant
        HomSpec(qp, qp, {"q": Poly.variable(qp, 0)}, (Poly.variable(qp, 0), Poly.variable(qp, 1)))
