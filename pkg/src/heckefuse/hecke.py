"""The Hecke fusion algebra of N-valued bi-invariant functions on double cosets.

Elements are finitely supported maps label -> positive integer, where labels
canonically index double cosets.  Convolution is

    (x * y)(g) = sum over right cosets h of x(g h^-1) y(h),

computed exactly from right-coset representatives of the support of y.
Three backends provide labels and coset data:

* ``FiniteHecke``     -- a finite pair Gamma <= G of permutation groups;
* ``GL2Hecke``        -- SL(2,Z) inside rational 2x2 matrices of positive
  determinant; labels are rational elementary-divisor pairs (d1, d2) with
  d2/d1 a positive integer, so inverses stay inside the label set;
* ``BostConnesHecke`` -- the integer-translation subgroup inside the rational
  ax+b group, with exact fraction arithmetic.

All coefficients are Python integers and all label data is exact, so there
is no overflow and no rounding anywhere in this module.
"""

from __future__ import annotations

import functools
import re
from fractions import Fraction
from math import floor, gcd, lcm
from typing import Optional

from .permcore import DoubleCosetSystem, FiniteGroup, Perm, Subgroup

_LETTERS = "KLMNPQRSUVWXYZABCDFGHIJ"


class FiniteHecke:
    """Backend for a finite pair gamma <= group."""

    kind = "finite"

    def __init__(self, group: FiniteGroup, gamma: Subgroup,
                 cosets: Optional[DoubleCosetSystem] = None):
        self.group = group
        self.gamma = gamma
        self.cosets = cosets if cosets is not None else DoubleCosetSystem(group, gamma)
        self._names = {}
        self._by_name = {}
        for i, label in enumerate(self.cosets.labels()):
            name = "e" if i == 0 else (
                _LETTERS[i - 1] if i - 1 < len(_LETTERS) else f"C{i}")
            self._names[label] = name
            self._by_name[name] = label

    @property
    def unit_label(self) -> Perm:
        return self.cosets.labels()[0]

    def labels(self) -> list[Perm]:
        return self.cosets.labels()

    def canonical_label(self, x: Perm) -> Perm:
        return self.cosets.label_of(x)

    def element_of(self, label: Perm) -> Perm:
        return label

    def right_reps(self, label: Perm) -> tuple:
        return self.cosets.coset(label).right_reps

    def mul(self, x: Perm, y: Perm) -> Perm:
        return x * y

    def inv(self, x: Perm) -> Perm:
        return x.inverse()

    def left_count(self, label: Perm) -> int:
        return self.cosets.coset(label).left_count

    def right_count(self, label: Perm) -> int:
        return self.cosets.coset(label).right_count

    def sort_key(self, label: Perm):
        return label.images

    def label_str(self, label: Perm) -> str:
        return self._names[label]

    def parse_label(self, text: str) -> Perm:
        text = text.strip()
        if text in self._by_name:
            return self._by_name[text]
        return self.canonical_label(Perm.parse(self.group.degree, text))


# ------------------------------------------------------------------ GL2

Mat = tuple  # (a, b, c, d): rows (a b) / (c d), entries Fraction


def mat_mul(x: Mat, y: Mat) -> Mat:
    return (x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3])


def mat_det(x: Mat) -> Fraction:
    return x[0] * x[3] - x[1] * x[2]


def mat_inv(x: Mat) -> Mat:
    d = mat_det(x)
    if d == 0:
        raise ZeroDivisionError("singular matrix")
    return (x[3] / d, -x[1] / d, -x[2] / d, x[0] / d)


def _content(x: Mat) -> Fraction:
    """The positive rational c with x / c integral of entry gcd 1."""
    fracs = [Fraction(e) for e in x]
    denom = lcm(*(f.denominator for f in fracs))
    ints = [int(f * denom) for f in fracs]
    g = gcd(*(abs(i) for i in ints))
    if g == 0:
        raise ZeroDivisionError("zero matrix has no content")
    return Fraction(g, denom)


@functools.lru_cache(maxsize=None)
def primitive_hnf_reps(m: int) -> tuple[Mat, ...]:
    """Upper-triangular (a b / 0 d) with ad = m, 0 <= b < d, gcd(a, b, d) = 1."""
    out = []
    for a in range(1, m + 1):
        if m % a:
            continue
        d = m // a
        for b in range(d):
            if gcd(a, gcd(b, d)) == 1:
                out.append((Fraction(a), Fraction(b), Fraction(0), Fraction(d)))
    return tuple(out)


class GL2Hecke:
    """SL(2,Z) double cosets of rational 2x2 matrices with positive determinant.

    Labels are pairs (d1, d2) of positive rationals with d2/d1 a positive
    integer: the matrix is content * (primitive integral part), the primitive
    part has elementary divisors (1, m), and (d1, d2) = content * (1, m).
    Right-coset representatives are content * (primitive Hermite forms).
    """

    kind = "gl2"

    @property
    def unit_label(self):
        return (Fraction(1), Fraction(1))

    def canonical_label(self, x: Mat):
        det = mat_det(x)
        if det <= 0:
            raise ValueError("only positive-determinant matrices are supported")
        c = _content(x)
        m = det / (c * c)
        assert m.denominator == 1 and m > 0
        return (c, c * m)

    def element_of(self, label) -> Mat:
        d1, d2 = label
        return (Fraction(d1), Fraction(0), Fraction(0), Fraction(d2))

    def right_reps(self, label) -> list[Mat]:
        d1, d2 = Fraction(label[0]), Fraction(label[1])
        ratio = d2 / d1
        if d1 <= 0 or ratio.denominator != 1 or ratio < 1:
            raise ValueError(f"not a valid label: {label}")
        return [tuple(d1 * e for e in h) for h in primitive_hnf_reps(int(ratio))]

    def mul(self, x: Mat, y: Mat) -> Mat:
        return mat_mul(x, y)

    def inv(self, x: Mat) -> Mat:
        return mat_inv(x)

    def inverse_label(self, label):
        return self.canonical_label(mat_inv(self.element_of(label)))

    def right_count(self, label) -> int:
        return len(self.right_reps(label))

    def left_count(self, label) -> int:
        # left cosets of the coset of g = right cosets of the coset of g^-1
        return self.right_count(self.inverse_label(label))

    def sort_key(self, label):
        return (label[0], label[1])

    def label_str(self, label) -> str:
        return f"{label[0]},{label[1]}"

    def parse_label(self, text: str):
        if text.strip() == "e":
            return self.unit_label
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"GL2 labels look like 'd1,d2', got {text!r}")
        d1, d2 = (Fraction(p.strip()) for p in parts)
        label = (d1, d2)
        self.right_reps(label)  # validates
        return label


# ------------------------------------------------------------------ ax + b

class BostConnesHecke:
    """Integer translations inside the rational ax+b group, exactly.

    Group law (a, b)(c, d) = (ac, ad + b) with a ranging over positive
    rationals; the subgroup is (1, Z).  The double coset of (a, b) is
    {(a, b')} with b' running over b + Z + aZ = b + (1/q)Z, q = denom(a),
    so labels are (a, b mod 1/q) with the least nonnegative residue.
    """

    kind = "bc"

    def __init__(self):
        self._reps_cache: dict = {}

    @property
    def unit_label(self):
        return (Fraction(1), Fraction(0))

    def canonical_label(self, x):
        a, b = Fraction(x[0]), Fraction(x[1])
        if a <= 0:
            raise ValueError("the scaling part must be positive")
        q = a.denominator
        step = Fraction(1, q)
        r = b - floor(b / step) * step
        return (a, r)

    def element_of(self, label):
        return (Fraction(label[0]), Fraction(label[1]))

    def right_reps(self, label) -> list:
        hit = self._reps_cache.get(label)
        if hit is None:
            a, r = Fraction(label[0]), Fraction(label[1])
            q = a.denominator
            hit = [(a, r + Fraction(j, q)) for j in range(q)]
            self._reps_cache[label] = hit
        return hit

    def mul(self, x, y):
        return (x[0] * y[0], x[0] * y[1] + x[1])

    def inv(self, x):
        return (1 / x[0], -x[1] / x[0])

    def inverse_label(self, label):
        return self.canonical_label(self.inv(self.element_of(label)))

    def right_count(self, label) -> int:
        return Fraction(label[0]).denominator

    def left_count(self, label) -> int:
        return Fraction(label[0]).numerator

    def sort_key(self, label):
        return (label[0], label[1])

    def label_str(self, label) -> str:
        return f"{label[0]};{label[1]}"

    def parse_label(self, text: str):
        if text.strip() == "e":
            return self.unit_label
        parts = text.split(";")
        if len(parts) != 2:
            raise ValueError(f"ax+b labels look like 'a;b', got {text!r}")
        a, b = (Fraction(p.strip()) for p in parts)
        return self.canonical_label((a, b))

    def product_support(self, kx, ky) -> set:
        """Labels of the double cosets meeting coset(kx) * coset(ky), closed form.

        The translation parts of the product set fill the coset
        r1 + a1 r2 + (Z + a1 Z + a1 a2 Z); that subgroup is g Z for the
        fraction gcd g, and it splits into double cosets at spacing
        1/denom(a1 a2).
        """
        a1, r1 = kx
        a2, r2 = ky
        a = a1 * a2
        step = Fraction(1, a.denominator)

        def frac_gcd(u: Fraction, v: Fraction) -> Fraction:
            return Fraction(gcd(u.numerator * v.denominator,
                                v.numerator * u.denominator),
                            u.denominator * v.denominator)

        g = frac_gcd(frac_gcd(Fraction(1), a1), a)
        base = r1 + a1 * r2
        count = step / g
        assert count.denominator == 1
        return {self.canonical_label((a, base + t * g))
                for t in range(int(count))}


# ------------------------------------------------------------------ elements

class HeckeElement:
    """A finitely supported N-valued function on double cosets."""

    def __init__(self, backend, coeffs: dict):
        for label, c in coeffs.items():
            if not isinstance(c, int) or c < 1:
                raise ValueError(f"coefficients must be positive integers, got {c}")
        self.backend = backend
        self.coeffs = dict(coeffs)

    @classmethod
    def unit(cls, backend) -> "HeckeElement":
        return cls(backend, {backend.unit_label: 1})

    @classmethod
    def basis(cls, backend, label) -> "HeckeElement":
        return cls(backend, {backend.canonical_label(backend.element_of(label)): 1})

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        if other.backend is not self.backend:
            raise ValueError("cannot add elements over different backends")
        out = dict(self.coeffs)
        for label, c in other.coeffs.items():
            out[label] = out.get(label, 0) + c
        return HeckeElement(self.backend, out)

    def scale(self, n: int) -> "HeckeElement":
        if n < 1:
            raise ValueError("scaling must be by a positive integer")
        return HeckeElement(self.backend, {k: n * c for k, c in self.coeffs.items()})

    def __rmul__(self, n: int) -> "HeckeElement":
        return self.scale(n)

    def __mul__(self, other) -> "HeckeElement":
        if isinstance(other, int):
            return self.scale(other)
        return convolve(self, other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, HeckeElement)
                and self.backend is other.backend
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.backend), tuple(sorted(
            (self.backend.sort_key(k), c) for k, c in self.coeffs.items()))))

    def sorted_items(self) -> list:
        return sorted(self.coeffs.items(),
                      key=lambda kv: self.backend.sort_key(kv[0]))

    def __str__(self) -> str:
        bits = []
        for label, c in self.sorted_items():
            name = self.backend.label_str(label)
            body = name if name == "e" else f"T[{name}]"
            bits.append(body if c == 1 else f"{c}*{body}")
        return " + ".join(bits) if bits else "0"

    def __repr__(self) -> str:
        return f"HeckeElement({self})"

    def to_json(self) -> list:
        return [{"label": self.backend.label_str(label), "coeff": c}
                for label, c in self.sorted_items()]


def convolve(x: HeckeElement, y: HeckeElement) -> HeckeElement:
    """(x * y)(g) = sum over right cosets h in supp(y) of x(g h^-1) y(h)."""
    if x.backend is not y.backend:
        raise ValueError("cannot convolve over different backends")
    bk = x.backend
    y_reps = {label: bk.right_reps(label) for label in y.coeffs}
    candidates = set()
    for kx in x.coeffs:
        for r in bk.right_reps(kx):
            for ky, reps in y_reps.items():
                for s in reps:
                    candidates.add(bk.canonical_label(bk.mul(r, s)))
    out = {}
    for label in candidates:
        g = bk.element_of(label)
        total = 0
        for ky, cy in y.coeffs.items():
            for s in y_reps[ky]:
                t = bk.canonical_label(bk.mul(g, bk.inv(s)))
                total += cy * x.coeffs.get(t, 0)
        if total:
            out[label] = total
    return HeckeElement(bk, out)


def involution(x: HeckeElement) -> HeckeElement:
    """x-bar(g) = x(g^-1); additive, anti-multiplicative, involutive."""
    bk = x.backend
    out: dict = {}
    for label, c in x.coeffs.items():
        inv_label = bk.canonical_label(bk.inv(bk.element_of(label)))
        out[inv_label] = out.get(inv_label, 0) + c
    return HeckeElement(bk, out)


def degrees(backend, label) -> tuple[int, int]:
    """(left coset count, right coset count) of the double coset."""
    return (backend.left_count(label), backend.right_count(label))


def modular_lambda(backend, label) -> Fraction:
    """Left over right coset count; the scaling exponent of the modular flow."""
    left, right = degrees(backend, label)
    return Fraction(left, right)


def degree(x: HeckeElement) -> int:
    """Right-coset count extended linearly; a ring homomorphism to Z."""
    return sum(c * x.backend.right_count(label) for label, c in x.coeffs.items())


def lambda_multiplicativity_witnesses(x: HeckeElement, y: HeckeElement) -> list:
    """Labels violating lambda(z) = lambda(k) lambda(l) in basis products.

    Empty means the modular flow scales every product of support labels
    consistently, which is exactly its multiplicativity on those products.
    The support of a basis product is the set of double cosets meeting the
    product set (each such coset has a positive coefficient), so the labels
    of representative products are checked directly.
    """
    bk = x.backend
    support_fn = getattr(bk, "product_support", None)
    bad = []
    for kx in x.coeffs:
        reps_x = bk.right_reps(kx)
        lam_x = modular_lambda(bk, kx)
        for ky in y.coeffs:
            want = lam_x * modular_lambda(bk, ky)
            if support_fn is not None:
                support = support_fn(kx, ky)
            else:
                support = {bk.canonical_label(bk.mul(r, s))
                           for r in reps_x for s in bk.right_reps(ky)}
            for label in support:
                got = modular_lambda(bk, label)
                if got != want:
                    bad.append((kx, ky, label, got, want))
    return bad


# ------------------------------------------------------------------ grammar

_TOKEN_RE = re.compile(r"\s*(\d+|[eE]\b|T\[[^\]]*\]|\+|\*)")


def parse_element(backend, text: str) -> HeckeElement:
    """Parse sums of integer-scaled products: e, T[<label>], +, *.

    Examples: "T[K]*T[K]", "3*e + 2*T[K]", "T[1,2]*T[1,3]", "T[2;0]".
    """
    pos, tokens = 0, []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(
                    f"parse error at column {pos + 1}: {text[pos:pos+10]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()

    def parse_factor(tok: str):
        if tok.isdigit():
            return int(tok)
        if tok in ("e", "E"):
            return HeckeElement.unit(backend)
        if tok.startswith("T[") and tok.endswith("]"):
            return HeckeElement(backend, {backend.parse_label(tok[2:-1]): 1})
        raise ValueError(f"unexpected token {tok!r}")

    terms: list[HeckeElement] = []
    i = 0
    while i < len(tokens):
        factors = [parse_factor(tokens[i])]
        i += 1
        while i < len(tokens) and tokens[i] == "*":
            if i + 1 >= len(tokens):
                raise ValueError("dangling '*'")
            factors.append(parse_factor(tokens[i + 1]))
            i += 2
        scale = 1
        value: Optional[HeckeElement] = None
        for f in factors:
            if isinstance(f, int):
                scale *= f
            elif value is None:
                value = f
            else:
                value = convolve(value, f)
        if value is None:
            raise ValueError("a term needs at least one basis element")
        terms.append(value.scale(scale) if scale != 1 else value)
        if i < len(tokens):
            if tokens[i] != "+":
                raise ValueError(f"expected '+', got {tokens[i]!r}")
            i += 1
    if not terms:
        raise ValueError("empty expression")
    out = terms[0]
    for t in terms[1:]:
        out = out + t
    return out
