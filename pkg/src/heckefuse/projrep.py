"""Projective unitary representations of finite groups.

A representation carries its scalar 2-cocycle exactly (exponent tables from
:mod:`heckefuse.cocycle`) while the matrices are complex floating point.
All final outputs of this module are integers (dimensions, multiplicities,
intertwiner ranks); the tolerances below leave them enormous margins at the
group orders this package targets.

Irreducible decomposition uses the classical randomized commutant split:
average a random Hermitian matrix over the group, cut along the eigenspaces
of the result, recurse.  Seeds are fixed, so runs are reproducible.
"""

from __future__ import annotations

import cmath
from typing import Callable, Iterable, Optional

import numpy as np

from .cocycle import Cocycle, PhaseFunction
from .permcore import FiniteGroup, Perm, right_coset_reps

UNITARY_TOL = 1e-8
RANK_SV_TOL = 1e-9
INT_TOL = 1e-6
EIG_GAP_TOL = 1e-6
MAX_SPLIT_TRIES = 8


class NumericalDegradation(RuntimeError):
    """A result that must be integral failed its tolerance check."""


_PHASES: dict = {}


def _phase_table(cocycle: Cocycle) -> tuple:
    """The cocycle's value table as complex numbers, cached by cocycle key."""
    hit = _PHASES.get(cocycle.key())
    if hit is None:
        m = cocycle.modulus
        roots = [cmath.exp(2j * cmath.pi * e / m) for e in range(m)]
        hit = tuple(tuple(roots[e] for e in row) for row in cocycle.table)
        _PHASES[cocycle.key()] = hit
    return hit


def _round_part(x: float) -> float:
    return round(x, 6) + 0.0  # normalize -0.0


def round_char(values: Iterable[complex]) -> tuple:
    return tuple((_round_part(z.real), _round_part(z.imag)) for z in values)


class Rep:
    """A projective unitary representation: pi(g) pi(h) = omega(g, h) pi(gh)."""

    def __init__(self, group: FiniteGroup, cocycle: Cocycle, matrices):
        if cocycle.group != group:
            raise ValueError("cocycle lives on a different group")
        matrices = tuple(np.asarray(m, dtype=complex) for m in matrices)
        if len(matrices) != len(group):
            raise ValueError("need one matrix per group element")
        dim = matrices[0].shape[0]
        if dim < 1:
            raise ValueError("representations have dimension at least 1")
        for m in matrices:
            if m.shape != (dim, dim):
                raise ValueError("matrices must be square and of equal size")
        self.group = group
        self.cocycle = cocycle
        self.dim = dim
        self.matrices = matrices
        self._char: Optional[tuple] = None
        self._validate()

    def _validate(self) -> None:
        n, d = len(self.group), self.dim
        stack = np.stack(self.matrices)
        e_idx = self.group.index_of(self.group.identity)
        if np.abs(stack[e_idx] - np.eye(d)).max() > UNITARY_TOL:
            raise ValueError("identity element must act as the identity matrix")
        gram = np.einsum("gab,gcb->gac", stack, stack.conj())
        if np.abs(gram - np.eye(d)).max() > UNITARY_TOL:
            bad = int(np.abs(gram - np.eye(d)).reshape(n, -1).max(axis=1).argmax())
            raise ValueError(
                f"matrix at {self.group.elements[bad].cycle_string()} is not unitary")
        mul = np.array(self.group.mul_table())
        phases = np.array(_phase_table(self.cocycle))
        if n * n * d * d <= 4_000_000:
            products = np.einsum("iab,jbc->ijac", stack, stack)
            expected = phases[:, :, None, None] * stack[mul]
            err = np.abs(products - expected)
            if err.max() > UNITARY_TOL:
                i, j = np.unravel_index(
                    int(err.reshape(n, n, -1).max(axis=2).argmax()), (n, n))
                els = self.group.elements
                raise ValueError(
                    "multiplicativity fails at "
                    f"({els[i].cycle_string()}, {els[j].cycle_string()})")
        else:
            # row-at-a-time to bound memory on large regular representations
            for i in range(n):
                got = np.einsum("ab,jbc->jac", stack[i], stack)
                want = phases[i][:, None, None] * stack[mul[i]]
                err = np.abs(got - want)
                if err.max() > UNITARY_TOL:
                    j = int(err.reshape(n, -1).max(axis=1).argmax())
                    els = self.group.elements
                    raise ValueError(
                        "multiplicativity fails at "
                        f"({els[i].cycle_string()}, {els[j].cycle_string()})")

    def mat(self, g: Perm) -> np.ndarray:
        return self.matrices[self.group.index_of(g)]

    def character(self) -> tuple:
        if self._char is None:
            self._char = tuple(complex(np.trace(m)) for m in self.matrices)
        return self._char

    def char_key(self) -> tuple:
        return round_char(self.character())

    def __repr__(self) -> str:
        return f"Rep(dim={self.dim}, group order {len(self.group)})"


class RepClass:
    """Equivalence-class fingerprint of a representation: its rounded character."""

    __slots__ = ("group", "cocycle", "dim", "char", "_key")

    def __init__(self, group: FiniteGroup, cocycle: Cocycle, dim: int, char: tuple):
        self.group = group
        self.cocycle = cocycle
        self.dim = dim
        self.char = char
        self._key = (group.key(), cocycle.key(), char)

    def sort_key(self):
        return (self.dim, self.char)

    def key(self):
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, RepClass) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"RepClass(dim={self.dim})"

    def to_json(self) -> dict:
        return {"dim": self.dim, "character": [[re, im] for re, im in self.char]}


def rep_class(rep: Rep) -> RepClass:
    cls = RepClass(rep.group, rep.cocycle, rep.dim, rep.char_key())
    _REALIZED.setdefault(cls.key(), rep)
    return cls


def equivalent(a: Rep, b: Rep) -> bool:
    """Same cocycle and pointwise-equal rounded characters."""
    return (a.group == b.group and a.cocycle == b.cocycle
            and a.dim == b.dim and a.char_key() == b.char_key())


# ------------------------------------------------------------ constructions

def trivial_rep(group: FiniteGroup) -> Rep:
    eye = np.eye(1)
    return Rep(group, Cocycle.trivial(group), [eye] * len(group))


def regular_rep(group: FiniteGroup, cocycle: Optional[Cocycle] = None) -> Rep:
    """The (possibly twisted) left regular representation on C^|G|."""
    if cocycle is None:
        cocycle = Cocycle.trivial(group)
    n = len(group)
    mul = group.mul_table()
    phases = _phase_table(cocycle)
    mats = []
    for i in range(n):
        m = np.zeros((n, n), dtype=complex)
        for j in range(n):
            m[mul[i][j], j] = phases[i][j]
        mats.append(m)
    return Rep(group, cocycle, mats)


def tensor(a: Rep, b: Rep) -> Rep:
    if a.group != b.group:
        raise ValueError("tensor factors live on different groups")
    mats = [np.kron(x, y) for x, y in zip(a.matrices, b.matrices)]
    return Rep(a.group, a.cocycle * b.cocycle, mats)


def conjugate_rep(a: Rep) -> Rep:
    return Rep(a.group, a.cocycle.inverse(), [m.conj() for m in a.matrices])


def restrict(a: Rep, sub: FiniteGroup) -> Rep:
    if not a.group.contains_subset(sub.elements):
        raise ValueError("restriction target is not a subgroup")
    return Rep(sub, a.cocycle.restrict(sub), [a.mat(g) for g in sub.elements])


def twist(a: Rep, phase: PhaseFunction) -> Rep:
    """Multiply by a scalar phase; the cocycle picks up the phase coboundary."""
    if phase.group != a.group:
        raise ValueError("phase lives on a different group")
    mats = [cmath.exp(2j * cmath.pi * phase.exponent(g) / phase.modulus) * a.mat(g)
            for g in a.group.elements]
    return Rep(a.group, a.cocycle * phase.coboundary(), mats)


def transport(a: Rep, new_group: FiniteGroup,
              fwd: Callable[[Perm], Perm]) -> Rep:
    """Pull back along a homomorphism fwd: new_group -> a.group."""
    return Rep(new_group, a.cocycle.pullback(new_group, fwd),
               [a.mat(fwd(g)) for g in new_group.elements])


def direct_sum(reps: Iterable[Rep]) -> Rep:
    reps = list(reps)
    if not reps:
        raise ValueError("empty direct sum")
    group, cocycle = reps[0].group, reps[0].cocycle
    for r in reps[1:]:
        if r.group != group or r.cocycle != cocycle:
            raise ValueError("direct summands must share group and cocycle")
    dim = sum(r.dim for r in reps)
    mats = []
    for i in range(len(group)):
        m = np.zeros((dim, dim), dtype=complex)
        at = 0
        for r in reps:
            m[at:at + r.dim, at:at + r.dim] = r.matrices[i]
            at += r.dim
        mats.append(m)
    return Rep(group, cocycle, mats)


def induce(rep: Rep, big: FiniteGroup, ext_cocycle: Cocycle,
           rng=None) -> Rep:
    """Induction along a cocycle, on functions f with f(hg) = conj(w(h,g)) pi(h) f(g).

    ext_cocycle lives on the big group and must restrict to rep's cocycle on
    rep.group exactly (as exponent tables).  The result's cocycle is
    ext_cocycle, and its dimension is [big : rep.group] * rep.dim.
    """
    sub = rep.group
    if not big.contains_subset(sub.elements):
        raise ValueError("rep's group is not a subgroup of the big group")
    if ext_cocycle.group != big:
        raise ValueError("extension cocycle must live on the big group")
    if ext_cocycle.restrict(sub) != rep.cocycle:
        raise ValueError("cocycle restriction mismatch")
    cache_key = (big.key(), sub.key())
    cached = _COSET_REPS.get(cache_key) if rng is None else None
    if cached is None:
        reps = right_coset_reps(big, sub, rng)
        coset_of = {}
        for j, r in enumerate(reps):
            for h in sub.elements:
                coset_of[h * r] = j
        if rng is None:
            _COSET_REPS[cache_key] = (reps, coset_of)
    else:
        reps, coset_of = cached
    k, d = len(reps), rep.dim
    m_mod = ext_cocycle.modulus
    mats = []
    for g in big.elements:
        m = np.zeros((k * d, k * d), dtype=complex)
        for i, ri in enumerate(reps):
            t = ri * g
            j = coset_of[t]
            h = t * reps[j].inverse()
            exp = (ext_cocycle.exponent(ri, g) - ext_cocycle.exponent(h, reps[j])) % m_mod
            scalar = cmath.exp(2j * cmath.pi * exp / m_mod)
            m[i * d:(i + 1) * d, j * d:(j + 1) * d] = scalar * rep.mat(h)
        mats.append(m)
    return Rep(big, ext_cocycle, mats)


# ------------------------------------------------------------ intertwiners

def hom_dim(a: Rep, b: Rep) -> int:
    """Dimension of the space of intertwiners X with a(g) X = X b(g).

    Computed as the rank of the averaging projector
    X -> |G|^-1 sum_g a(g)* X b(g); same-cocycle phases cancel, so both
    representations must carry equal cocycle tables.
    """
    if a.group != b.group:
        raise ValueError("intertwiners need a common group")
    if a.cocycle != b.cocycle:
        raise ValueError("intertwiners need a common cocycle")
    n = len(a.group)
    size = a.dim * b.dim
    m = np.zeros((size, size), dtype=complex)
    for ag, bg in zip(a.matrices, b.matrices):
        m += np.kron(ag.conj().T, bg.T)
    m /= n
    svals = np.linalg.svd(m, compute_uv=False)
    total = float(np.sum(svals[svals > RANK_SV_TOL]))
    rank = round(total)
    if abs(total - rank) > INT_TOL:
        raise NumericalDegradation(f"non-integral intertwiner rank {total}")
    return rank


# ------------------------------------------------------------ decomposition

_DECOMPOSED: dict = {}
_REALIZED: dict = {}
_IRREDUCIBLES: dict = {}
_COSET_REPS: dict = {}


def clear_caches() -> None:
    _DECOMPOSED.clear()
    _REALIZED.clear()
    _IRREDUCIBLES.clear()
    _COSET_REPS.clear()


def _average_commutant(rep: Rep, rng: np.random.Generator) -> np.ndarray:
    d = rep.dim
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    h = x + x.conj().T
    out = np.zeros((d, d), dtype=complex)
    for m in rep.matrices:
        out += m.conj().T @ h @ m
    return out / len(rep.group)


def _eigensplit(rep: Rep, rng: np.random.Generator) -> Optional[list[Rep]]:
    c = _average_commutant(rep, rng)
    w, v = np.linalg.eigh(c)
    blocks, start = [], 0
    for i in range(1, len(w)):
        if w[i] - w[i - 1] > EIG_GAP_TOL:
            blocks.append(range(start, i))
            start = i
    blocks.append(range(start, len(w)))
    if len(blocks) == 1:
        return None
    subs = []
    for block in blocks:
        basis = v[:, list(block)]
        mats = [basis.conj().T @ m @ basis for m in rep.matrices]
        subs.append(Rep(rep.group, rep.cocycle, mats))
    return subs


def _split_irreducible(rep: Rep, seed: int) -> list[Rep]:
    if rep.dim == 1:
        return [rep]
    for attempt in range(MAX_SPLIT_TRIES):
        rng = np.random.default_rng((seed, attempt, rep.dim, len(rep.group)))
        subs = _eigensplit(rep, rng)
        if subs is None:
            if hom_dim(rep, rep) == 1:
                return [rep]
            continue  # reducible but the random element was degenerate; retry
        out = []
        for sub in subs:
            out.extend(_split_irreducible(sub, seed))
        return out
    raise NumericalDegradation(
        f"irreducible splitting did not converge after {MAX_SPLIT_TRIES} seeds")


def decompose(rep: Rep, seed: int = 0) -> dict[RepClass, int]:
    """Multiset of irreducible constituents; exact multiplicities.

    Results are cached by (group, cocycle, rounded character): equal
    characters with equal cocycles have equal decompositions.
    """
    key = (rep.group.key(), rep.cocycle.key(), rep.char_key())
    hit = _DECOMPOSED.get(key)
    if hit is not None:
        return dict(hit)
    out: dict[RepClass, int] = {}
    for irr in _split_irreducible(rep, seed):
        cls = rep_class(irr)
        out[cls] = out.get(cls, 0) + 1
    total = sum(cls.dim * mult for cls, mult in out.items())
    if total != rep.dim:
        raise NumericalDegradation("constituent dimensions do not add up")
    recon = np.zeros(len(rep.group), dtype=complex)
    for cls, mult in out.items():
        recon += mult * np.array([complex(re, im) for re, im in cls.char])
    if np.abs(recon - np.array(rep.character())).max() > INT_TOL:
        raise NumericalDegradation("character reconstruction drifted")
    _DECOMPOSED[key] = dict(out)
    return out


def irreducibles(group: FiniteGroup, cocycle: Optional[Cocycle] = None,
                 seed: int = 0) -> tuple[RepClass, ...]:
    """All irreducible classes, canonically ordered by (dim, character).

    Obtained from the (twisted) regular representation, which contains every
    irreducible; with a trivial cocycle, sum of dim^2 = |G| is asserted.
    """
    if cocycle is None:
        cocycle = Cocycle.trivial(group)
    key = (group.key(), cocycle.key())
    hit = _IRREDUCIBLES.get(key)
    if hit is not None:
        return hit
    parts = decompose(regular_rep(group, cocycle), seed)
    classes = tuple(sorted(parts, key=lambda c: c.sort_key()))
    if cocycle.is_trivial_table():
        assert sum(c.dim ** 2 for c in classes) == len(group)
    for cls, mult in parts.items():
        assert mult == cls.dim or not cocycle.is_trivial_table()
    _IRREDUCIBLES[key] = classes
    return classes


def realize(cls: RepClass) -> Rep:
    """A representative with the given fingerprint.

    Known for every class produced in-process; for an unseen irreducible
    class the (group, cocycle) irreducibles are computed first.
    """
    rep = _REALIZED.get(cls.key())
    if rep is not None:
        return rep
    irreducibles(cls.group, cls.cocycle)
    rep = _REALIZED.get(cls.key())
    if rep is None:
        raise KeyError("no realization known for this representation class")
    return rep


def realize_multiset(parts: dict[RepClass, int]) -> Rep:
    """Block-diagonal representative of a multiset, in canonical class order."""
    summands = []
    for cls in sorted(parts, key=lambda c: c.sort_key()):
        summands.extend([realize(cls)] * parts[cls])
    return direct_sum(summands)


def multiset_dim(parts: dict[RepClass, int]) -> int:
    return sum(cls.dim * mult for cls, mult in parts.items())


def add_multiset(a: dict[RepClass, int], b: dict[RepClass, int]) -> dict[RepClass, int]:
    out = dict(a)
    for cls, mult in b.items():
        out[cls] = out.get(cls, 0) + mult
    return out
