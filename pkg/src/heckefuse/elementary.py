"""The elementary-bimodule fusion calculus with cocycle twists.

An elementary object over a pair gamma <= G carrying a 2-cocycle omega on
gamma is a pair (delta, pi): an ambient element delta together with a
projective representation pi of the subgroup gamma ∩ delta^-1 gamma delta,
whose cocycle is forced to be (omega o Ad delta) / omega on that subgroup.
This constraint is checked exactly, as exponent tables, at construction.

Fusion of (delta, pi) and (delta~, pi~) is a sum over double cosets of
gamma between the right subgroup of delta and the left subgroup of delta~;
the coset of g contributes the object at delta * g * delta~ whose
representation is built by a scalar twist, a conjugation transport, a tensor
product, and an induction along the cocycle (omega o Ad(delta g delta~)) /
omega.  Every representation produced on the way must carry exactly the
cocycle that the induction prescribes; a mismatch is raised loudly since it
can only mean a bookkeeping bug, never bad input.

With a trivial omega the calculus collapses onto the extended Hecke fusion
algebra, which serves as an independent cross-check (``to_ext_hecke``).
"""

from __future__ import annotations

from typing import Optional

from .cocycle import Cocycle, CocycleError, PhaseFunction, conjugation_phase
from .exthecke import ExtHeckeElement, FinitePair
from .permcore import (
    Perm,
    commensuration_subgroups,
    two_sided_orbit_reps,
)
from .projrep import (
    Rep,
    decompose,
    direct_sum,
    equivalent,
    hom_dim,
    induce,
    irreducibles,
    realize,
    restrict,
    tensor,
    transport,
    trivial_rep,
    twist,
)


class CocycleBookkeepingError(AssertionError):
    """An internally produced representation carries the wrong cocycle."""


def required_cocycle(pair: FinitePair, omega: Cocycle, delta: Perm) -> Cocycle:
    """(omega o Ad delta) / omega on gamma ∩ delta^-1 gamma delta."""
    rig = pair.little_of_element(delta)
    moved = omega.pullback(rig, lambda t: t.conjugate(delta))
    return moved * omega.restrict(rig).inverse()


def admissible_classes(pair: FinitePair, omega: Cocycle, delta: Perm):
    """Irreducible classes eligible to sit at delta, canonically ordered."""
    rig = pair.little_of_element(delta)
    return irreducibles(rig, required_cocycle(pair, omega, delta), pair.seed)


class ElementaryBimodule:
    """An object (delta, pi) with pi constrained by the ambient cocycle."""

    def __init__(self, pair: FinitePair, omega: Cocycle, delta: Perm, rep: Rep):
        if omega.group.key() != pair.gamma.key():
            raise ValueError("the ambient cocycle must live on gamma")
        if delta not in pair.group:
            raise ValueError("delta must lie in the ambient group")
        left, right = commensuration_subgroups(pair.gamma, delta)
        if rep.group.key() != right.key():
            raise ValueError(
                "the representation must live on gamma ∩ delta^-1 gamma delta")
        need = required_cocycle(pair, omega, delta)
        if rep.cocycle != need:
            raise CocycleError(
                "cocycle constraint fails: the representation's cocycle is not "
                "(omega o Ad delta)/omega; witness pair "
                + _witness_pair(rep.cocycle, need))
        self.pair = pair
        self.omega = omega
        self.delta = delta
        self.rep = rep
        self.left_subgroup = left
        self.right_subgroup = right

    def dim(self) -> int:
        return self.rep.dim

    def __repr__(self) -> str:
        return (f"ElementaryBimodule(delta={self.delta.cycle_string()}, "
                f"dim={self.rep.dim})")


def _witness_pair(got: Cocycle, want: Cocycle) -> str:
    from math import lcm
    m = lcm(got.modulus, want.modulus)
    a, b = got.rescale(m), want.rescale(m)
    for g in got.group.elements:
        for h in got.group.elements:
            if a.exponent(g, h) != b.exponent(g, h):
                return f"({g.cycle_string()}, {h.cycle_string()})"
    return "(none: moduli differ only)"


def make(pair: FinitePair, omega: Cocycle, delta: Perm,
         rep: Rep) -> ElementaryBimodule:
    return ElementaryBimodule(pair, omega, delta, rep)


def identity_object(pair: FinitePair, omega: Cocycle) -> ElementaryBimodule:
    e = pair.group.identity
    rig = pair.little_of_element(e)
    return ElementaryBimodule(pair, omega, e, trivial_rep(rig))


def is_irreducible(h: ElementaryBimodule) -> bool:
    return hom_dim(h.rep, h.rep) == 1


def direct_sum_objects(a: ElementaryBimodule,
                       b: ElementaryBimodule) -> ElementaryBimodule:
    if a.delta != b.delta:
        raise ValueError("direct summands must share the same delta")
    if a.omega != b.omega:
        raise ValueError("direct summands must share the ambient cocycle")
    return ElementaryBimodule(a.pair, a.omega, a.delta,
                              direct_sum([a.rep, b.rep]))


def transfer_rep(pair: FinitePair, omega: Cocycle, delta: Perm, rep: Rep,
                 g: Perm, h: Perm) -> Rep:
    """The representation that moves (delta, rep) to (g delta h, . ).

    Build (phase_g o Ad(delta h)) * (rep o Ad h) * phase_h on the right
    subgroup of g delta h, where phase_x is the conjugation phase of omega.
    """
    new_delta = g * delta * h
    rig_new = pair.little_of_element(new_delta)
    moved = transport(rep, rig_new, lambda t: t.conjugate(h))
    phi_g = conjugation_phase(omega, g)
    phi_h = conjugation_phase(omega, h)
    dh = delta * h
    m = omega.modulus
    phase = PhaseFunction(rig_new, m,
                          [(phi_g.exponent(t.conjugate(dh)) + phi_h.exponent(t)) % m
                           for t in rig_new.elements])
    return twist(moved, phase)


_CANON: dict = {}


def canonical_term(h: ElementaryBimodule) -> tuple:
    """Canonical fingerprint (coset label images, char key) of an irreducible.

    Moves delta to the canonical representative of its double coset via every
    decomposition pair (g, c) with g delta c = label and keeps the least
    character fingerprint; the minimum over all pairs does not depend on any
    representative choice made elsewhere.
    """
    pair, omega = h.pair, h.omega
    pair_key = (pair.group.key(), pair.gamma.key())
    key = (pair_key, omega.key(), h.delta.images, h.rep.char_key())
    hit = _CANON.get(key)
    if hit is not None:
        return hit
    label = pair.label_of(h.delta)
    gamma_set = set(pair.gamma.elements)
    best: Optional[tuple] = None
    best_rep: Optional[Rep] = None
    dinv = h.delta.inverse()
    for c in pair.gamma.elements:
        g = label * c.inverse() * dinv
        if g not in gamma_set:
            continue
        moved = transfer_rep(pair, omega, h.delta, h.rep, g, c)
        fingerprint = moved.char_key()
        if best is None or fingerprint < best:
            best = fingerprint
            best_rep = moved
    assert best is not None
    term = (label.images, best)
    _CANON[key] = term
    _CANON.setdefault(("rep", pair_key, omega.key(), term),
                      ElementaryBimodule(pair, omega, label, best_rep))
    return term


def canonical_representative(pair: FinitePair, omega: Cocycle,
                             term: tuple) -> ElementaryBimodule:
    return _CANON[("rep", (pair.group.key(), pair.gamma.key()), omega.key(), term)]


class BimoduleSum:
    """A formal N-combination of canonicalized irreducible elementary objects."""

    def __init__(self, pair: FinitePair, omega: Cocycle, terms: dict):
        self.pair = pair
        self.omega = omega
        self.terms = {t: m for t, m in terms.items() if m}

    @classmethod
    def of(cls, h: ElementaryBimodule) -> "BimoduleSum":
        """Decompose an object into irreducibles and canonicalize the result."""
        out: dict = {}
        for irr_cls, mult in decompose(h.rep, h.pair.seed).items():
            piece = ElementaryBimodule(h.pair, h.omega, h.delta, realize(irr_cls))
            term = canonical_term(piece)
            out[term] = out.get(term, 0) + mult
        return cls(h.pair, h.omega, out)

    def __add__(self, other: "BimoduleSum") -> "BimoduleSum":
        if other.omega != self.omega:
            raise ValueError("sums must share the ambient cocycle")
        out = dict(self.terms)
        for t, m in other.terms.items():
            out[t] = out.get(t, 0) + m
        return BimoduleSum(self.pair, self.omega, out)

    def scale(self, n: int) -> "BimoduleSum":
        return BimoduleSum(self.pair, self.omega,
                           {t: n * m for t, m in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, BimoduleSum) and self.omega == other.omega
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.omega.key(), tuple(sorted(self.terms.items()))))

    def items(self):
        for term in sorted(self.terms):
            yield canonical_representative(self.pair, self.omega, term), self.terms[term]

    def total_dim(self) -> int:
        return sum(canonical_representative(self.pair, self.omega, t).rep.dim * m
                   for t, m in self.terms.items())

    def __repr__(self) -> str:
        bits = []
        for term, mult in sorted(self.terms.items()):
            rep = canonical_representative(self.pair, self.omega, term)
            body = f"H({rep.delta.cycle_string()}, dim {rep.rep.dim})"
            bits.append(body if mult == 1 else f"{mult}*{body}")
        return " + ".join(bits) if bits else "0"


def fuse_objects(h1: ElementaryBimodule, h2: ElementaryBimodule) -> BimoduleSum:
    """Fusion of two elementary objects, canonicalized and fully decomposed."""
    pair, omega = h1.pair, h1.omega
    if h2.pair is not pair and (h2.pair.group != pair.group
                                or h2.pair.gamma != pair.gamma):
        raise ValueError("objects live over different pairs")
    if h2.omega != omega:
        raise ValueError("objects carry different ambient cocycles")
    gamma = pair.gamma
    out: dict = {}
    mid_reps = two_sided_orbit_reps(gamma, h1.right_subgroup, h2.left_subgroup,
                                    rng=pair.rng)
    for g in mid_reps:
        new_delta = h1.delta * g * h2.delta
        rig_new = pair.little_of_element(new_delta)
        meet = pair.intersection(rig_new, h2.right_subgroup)
        moved = transport(h1.rep, meet, lambda t: t.conjugate(g * h2.delta))
        product = tensor(moved, restrict(h2.rep, meet))
        phi_g = conjugation_phase(omega, g)
        m = omega.modulus
        phase = PhaseFunction(meet, m,
                              [phi_g.exponent(t.conjugate(h2.delta)) % m
                               for t in meet.elements])
        integrand = twist(product, phase)
        target_cocycle = required_cocycle(pair, omega, new_delta)
        if integrand.cocycle != target_cocycle.restrict(meet):
            raise CocycleBookkeepingError(
                "fusion integrand carries the wrong cocycle at coset of "
                f"{g.cycle_string()}")
        fused = induce(integrand, rig_new, target_cocycle, rng=pair.rng)
        for irr_cls, mult in decompose(fused, pair.seed).items():
            piece = ElementaryBimodule(pair, omega, new_delta, realize(irr_cls))
            term = canonical_term(piece)
            out[term] = out.get(term, 0) + mult
    return BimoduleSum(pair, omega, out)


def fuse(a, b) -> BimoduleSum:
    """Fusion, bilinear over sums; accepts objects or sums."""
    if isinstance(a, ElementaryBimodule):
        a = BimoduleSum.of(a)
    if isinstance(b, ElementaryBimodule):
        b = BimoduleSum.of(b)
    out = BimoduleSum(a.pair, a.omega, {})
    for ra, ma in a.items():
        for rb, mb in b.items():
            out = out + fuse_objects(ra, rb).scale(ma * mb)
    return out


def isomorphism_witness(h1: ElementaryBimodule,
                        h2: ElementaryBimodule) -> Optional[tuple[Perm, Perm]]:
    """(g, h) with delta2 = g delta1 h carrying rep1 to rep2, if one exists.

    Both objects must be irreducible; absence of a witness means the objects
    are not isomorphic.
    """
    if not (is_irreducible(h1) and is_irreducible(h2)):
        raise ValueError("the isomorphism criterion applies to irreducible objects")
    pair = h1.pair
    if pair.label_of(h1.delta) != pair.label_of(h2.delta):
        return None
    gamma_set = set(pair.gamma.elements)
    d1inv = h1.delta.inverse()
    for h in pair.gamma.elements:
        g = h2.delta * h.inverse() * d1inv
        if g not in gamma_set:
            continue
        moved = transfer_rep(pair, h1.omega, h1.delta, h1.rep, g, h)
        if equivalent(moved, h2.rep):
            return g, h
    return None


def to_ext_hecke(h) -> ExtHeckeElement:
    """Identify with the extended Hecke algebra; only for a trivial cocycle."""
    if isinstance(h, BimoduleSum):
        if not h.omega.is_trivial_table():
            raise ValueError("no untwisted identification: the cocycle is nontrivial")
        out = ExtHeckeElement(h.pair, {})
        for rep_obj, mult in h.items():
            piece = to_ext_hecke(rep_obj)
            out = out + (piece.scale(mult) if mult != 1 else piece)
        return out
    if not h.omega.is_trivial_table():
        raise ValueError("no untwisted identification: the cocycle is nontrivial")
    pair = h.pair
    label = pair.label_of(h.delta)
    c1, c2 = pair.decomposition(label, h.delta)
    little = pair.little(label)
    c2inv = c2.inverse()
    moved = transport(h.rep, little, lambda t: t.conjugate(c2inv))
    return ExtHeckeElement(pair, {label: decompose(moved, pair.seed)})
