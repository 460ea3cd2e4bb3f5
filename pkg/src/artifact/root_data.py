"""Root system C2: roots, coroots, weights, the Weyl group and its tables.

Coordinates.  Everything is computed from the orthonormal e-basis, with

    a1 = e1 - e2 (short),  a2 = 2 e2 (long),  a3 = a1 + a2,  a4 = 2 a1 + a2.

Coroots are b^vee = 2 b / (b, b) and the pairing <v, b^vee> is the dot
product.  A weight is stored in the (x, y) frame, v = x a1/2 + y a3/2, where
x = <v, a1^vee> and y = <v, a3^vee>.

Weyl elements are named by their reduced words: "w12" is w1 composed with
w2, so w2 acts first.  The longest element has the two reduced words 1212
and 2121; its name uses the first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Mapping, Tuple

from .affine import Affine, Number

Matrix = Tuple[Tuple[int, int], Tuple[int, int]]

ROOT_NAMES = ("a1", "a2", "a3", "a4")

# e-coordinates of the positive roots
_ROOT_E = {
    "a1": (Q(1), Q(-1)),
    "a2": (Q(0), Q(2)),
    "a3": (Q(1), Q(1)),
    "a4": (Q(2), Q(0)),
}
_SIMPLE_COORDS = {"a1": (1, 0), "a2": (0, 1), "a3": (1, 1), "a4": (2, 1)}
_LENGTH = {"a1": "short", "a2": "long", "a3": "short", "a4": "long"}


@dataclass(frozen=True, order=True)
class Root:
    """A signed root a1..a4 or its negative."""

    name: str
    sign: int = 1

    def __post_init__(self):
        if self.name not in ROOT_NAMES:
            raise ValueError(f"unknown root {self.name!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @classmethod
    def parse(cls, text: str) -> "Root":
        text = text.strip()
        if text.startswith("-"):
            return cls(text[1:], -1)
        return cls(text.lstrip("+"), 1)

    @property
    def positive(self) -> bool:
        return self.sign > 0

    @property
    def length_class(self) -> str:
        return _LENGTH[self.name]

    @property
    def is_long(self) -> bool:
        return _LENGTH[self.name] == "long"

    @property
    def simple_root_coords(self) -> Tuple[Q, Q]:
        c1, c2 = _SIMPLE_COORDS[self.name]
        return (Q(c1 * self.sign), Q(c2 * self.sign))

    @property
    def e_coords(self) -> Tuple[Q, Q]:
        p, q = _ROOT_E[self.name]
        return (p * self.sign, q * self.sign)

    @property
    def coroot_e_coords(self) -> Tuple[Q, Q]:
        p, q = self.e_coords
        norm = p * p + q * q
        return (2 * p / norm, 2 * q / norm)

    def __neg__(self) -> "Root":
        return Root(self.name, -self.sign)

    def __str__(self) -> str:
        return self.name if self.sign > 0 else f"-{self.name}"


POSITIVE_ROOTS: Tuple[Root, ...] = tuple(Root(n) for n in ROOT_NAMES)


def root_from_e(p: Q, q: Q) -> Root:
    for name, (rp, rq) in _ROOT_E.items():
        if (rp, rq) == (p, q):
            return Root(name, 1)
        if (-rp, -rq) == (p, q):
            return Root(name, -1)
    raise ValueError(f"({p}, {q}) is not a root")


def _coef_text(k: Affine, basis: str) -> str:
    if not k.is_constant():
        return f"({k})*{basis}"
    k = k.const
    if k == 1:
        return basis
    if k == -1:
        return f"-{basis}"
    if k.denominator == 1:
        return f"{k.numerator}*{basis}"
    num = k.numerator
    head = basis if num == 1 else (f"-{basis}" if num == -1 else f"{num}*{basis}")
    return f"{head}/{k.denominator}"


def _is_unit_var(k: Affine) -> bool:
    return len(k.variables) == 1 and k.const == 0 and abs(k.coeff(k.variables[0])) == 1


def _symbolic_text(x: Affine, y: Affine) -> str:
    """x*a1/2 + y*a3/2 with affine coordinates, e.g. "a1/2 + y*a3/2"."""
    parts = []
    for k, basis in ((x, "a1"), (y, "a3")):
        if k == 0:
            continue
        if k.is_constant():
            parts.append(_coef_text(Affine(k.const / 2), basis))
        elif _is_unit_var(k / 2):
            sign = "-" if (k / 2).coeff(k.variables[0]) < 0 else ""
            parts.append(f"{sign}{k.variables[0]}*{basis}")
        elif _is_unit_var(k):
            sign = "-" if k.coeff(k.variables[0]) < 0 else ""
            parts.append(f"{sign}{k.variables[0]}*{basis}/2")
        else:
            parts.append(f"({k})*{basis}/2")
    text = parts[0]
    for p in parts[1:]:
        text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return text


@dataclass(frozen=True)
class Weight:
    """A weight v = x a1/2 + y a3/2; x and y may be affine forms."""

    x: Affine
    y: Affine

    def __init__(self, x: "Affine | Number" = 0, y: "Affine | Number" = 0):
        object.__setattr__(self, "x", Affine.lift(x))
        object.__setattr__(self, "y", Affine.lift(y))

    # constructors in other frames
    @classmethod
    def from_e(cls, p, q) -> "Weight":
        p, q = Affine.lift(p), Affine.lift(q)
        return cls(p - q, p + q)

    @classmethod
    def from_tz(cls, t, z) -> "Weight":
        """v = t a2/2 + z a4/2, that is y = t + z and x = z - t."""
        t, z = Affine.lift(t), Affine.lift(z)
        return cls(z - t, t + z)

    @classmethod
    def from_roots(cls, coeffs: Mapping[str, "Affine | Number"]) -> "Weight":
        total = cls(0, 0)
        for name, k in coeffs.items():
            total = total + basis_weight(name) * k
        return total

    @classmethod
    def from_fundamental(cls, c1, c2) -> "Weight":
        return BETA1 * c1 + BETA2 * c2

    # coordinates
    @property
    def e_coords(self) -> Tuple[Affine, Affine]:
        return ((self.x + self.y) / 2, (self.y - self.x) / 2)

    @property
    def tz_coords(self) -> Tuple[Affine, Affine]:
        p, q = self.e_coords
        return (q, p)

    @property
    def simple_root_coords(self) -> Tuple[Affine, Affine]:
        """Coefficients of a1 and a2."""
        p, q = self.e_coords
        return (p, (p + q) / 2)

    @property
    def fundamental_coords(self) -> Tuple[Affine, Affine]:
        """Coefficients of b1 = a4/2 and b2 = a3."""
        p, q = self.e_coords
        return (p - q, q)

    def is_exact(self) -> bool:
        return self.x.is_constant() and self.y.is_constant()

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(sorted(set(self.x.variables) | set(self.y.variables)))

    def subs(self, assignment: Mapping[str, "Affine | Number"]) -> "Weight":
        return Weight(self.x.subs(assignment), self.y.subs(assignment))

    def velocity(self, var: str) -> Tuple[Q, Q]:
        """Derivative of (x, y) along the named parameter."""
        return (self.x.coeff(var), self.y.coeff(var))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Weight":
        return Weight(-self.x, -self.y)

    def __mul__(self, k) -> "Weight":
        return Weight(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __truediv__(self, k) -> "Weight":
        return Weight(self.x / k, self.y / k)

    def sort_key(self) -> tuple:
        return (self.x.sort_key(), self.y.sort_key())

    def __str__(self) -> str:
        if self.x == 0 and self.y == 0:
            return "0"
        if not self.is_exact():
            return _symbolic_text(self.x, self.y)
        for name in ROOT_NAMES:
            bx, by = basis_weight(name).x.const, basis_weight(name).y.const
            k = None
            if bx and by:
                kx, ky = self.x / bx, self.y / by
                if kx == ky:
                    k = kx
            elif bx and self.y == 0:
                k = self.x / bx
            elif by and self.x == 0:
                k = self.y / by
            if k is not None:
                return _coef_text(k, name)
        first = _coef_text(self.x / 2, "a1")
        second = _coef_text(self.y / 2, "a3")
        if second.startswith("-"):
            return f"{first} - {second[1:]}"
        return f"{first} + {second}"


def basis_weight(name: str) -> Weight:
    """Weights named a1..a4, b1, b2 in the (x, y) frame."""
    if name in _ROOT_E:
        p, q = _ROOT_E[name]
        return Weight.from_e(p, q)
    if name == "b1":
        return Weight.from_e(1, 0)
    if name == "b2":
        return Weight.from_e(1, 1)
    raise KeyError(name)


BETA1 = basis_weight("b1")
BETA2 = basis_weight("b2")
RHO_B = BETA1 + BETA2
RHO_P1 = BETA2 * Q(3, 2)
RHO_P2 = BETA1 * 2


def pairing(v: Weight, r: Root) -> Affine:
    """<v, r^vee> as an affine form (constant when v is exact)."""
    cp, cq = r.coroot_e_coords
    p, q = v.e_coords
    return p * cp + q * cq


# ---------------------------------------------------------------------------
# Weyl group

_S1: Matrix = ((0, 1), (1, 0))
_S2: Matrix = ((1, 0), (0, -1))
_ID: Matrix = ((1, 0), (0, 1))


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )  # type: ignore[return-value]


def _word_matrix(word: str) -> Matrix:
    m = _ID
    for letter in word:
        m = _matmul(m, _S1 if letter == "1" else _S2)
    return m


CANONICAL_WORDS: Tuple[str, ...] = ("", "1", "2", "12", "21", "121", "212", "1212")
_BY_MATRIX: Dict[Matrix, str] = {_word_matrix(w): w for w in CANONICAL_WORDS}


@dataclass(frozen=True)
class WeylElement:
    """An element of the Weyl group, stored by its canonical reduced word."""

    word: str

    def __post_init__(self):
        if self.word not in CANONICAL_WORDS:
            raise ValueError(f"{self.word!r} is not a canonical reduced word")

    @classmethod
    def parse(cls, text: str) -> "WeylElement":
        text = text.strip()
        if text in ("1", "e", "id"):
            return IDENTITY
        if not text.startswith("w"):
            raise ValueError(f"cannot parse Weyl element {text!r}")
        return from_word(text[1:])

    @property
    def name(self) -> str:
        return "1" if not self.word else f"w{self.word}"

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def matrix(self) -> Matrix:
        return _word_matrix(self.word)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        """Composition: (self * other) acts by other first."""
        return WeylElement(_BY_MATRIX[_matmul(self.matrix, other.matrix)])

    def inverse(self) -> "WeylElement":
        return from_word(self.word[::-1])

    def act_e(self, p, q):
        m = self.matrix
        return (p * m[0][0] + q * m[0][1], p * m[1][0] + q * m[1][1])

    def __str__(self) -> str:
        return self.name

    def __lt__(self, other: "WeylElement") -> bool:
        return CANONICAL_WORDS.index(self.word) < CANONICAL_WORDS.index(other.word)


def from_word(word: str) -> WeylElement:
    """The element represented by any word over {1, 2} (reduced or not)."""
    if any(ch not in "12" for ch in word):
        raise ValueError(f"bad word {word!r}")
    return WeylElement(_BY_MATRIX[_word_matrix(word)])


WEYL_GROUP: Tuple[WeylElement, ...] = tuple(WeylElement(w) for w in CANONICAL_WORDS)
IDENTITY = WEYL_GROUP[0]
W1 = WeylElement("1")
W2 = WeylElement("2")
LONGEST = WeylElement("1212")


def weyl(name: str) -> WeylElement:
    return WeylElement.parse(name)


def reduced_words(w: WeylElement) -> List[str]:
    """All reduced words of w, by brute force over words of length l(w)."""
    out = []
    for letters in product("12", repeat=w.length):
        word = "".join(letters)
        if from_word(word) == w:
            out.append(word)
    return sorted(out)


def weyl_act_root(w: WeylElement, r: Root) -> Root:
    return root_from_e(*w.act_e(*r.e_coords))


def weyl_act_weight(w: WeylElement, v: Weight) -> Weight:
    return Weight.from_e(*w.act_e(*v.e_coords))


def weyl_act_velocity(w: WeylElement, vx: Q, vy: Q) -> Tuple[Q, Q]:
    image = weyl_act_weight(w, Weight(vx, vy))
    return (image.x.const, image.y.const)


def inversion_set(w: WeylElement) -> FrozenSet[Root]:
    return frozenset(b for b in POSITIVE_ROOTS if not weyl_act_root(w, b).positive)


def sorted_roots(roots: Iterable[Root]) -> List[Root]:
    return sorted(roots, key=lambda r: (ROOT_NAMES.index(r.name), -r.sign))


# ---------------------------------------------------------------------------
# torus conjugation

TorusImage = Tuple[Tuple[int, int], Tuple[int, int]]


def torus_conjugation(w: WeylElement) -> TorusImage:
    """Image of t(a, b): component i is a^m[i][0] * b^m[i][1]."""
    return w.matrix


def compose_torus(outer: TorusImage, inner: TorusImage) -> TorusImage:
    """Substitute the components of `inner` for (a, b) in `outer`."""
    return _matmul(outer, inner)


def _monomial_text(exps: Tuple[int, int]) -> str:
    parts = []
    for letter, e in zip("ab", exps):
        if e == 1:
            parts.append(letter)
        elif e:
            parts.append(f"{letter}^{e}")
    return "*".join(parts) if parts else "1"


def torus_text(img: TorusImage) -> str:
    return f"t({_monomial_text(img[0])},{_monomial_text(img[1])})"


def weyl_table() -> List[Dict[str, str]]:
    """Rows of the Weyl table: root images and the torus conjugation."""
    rows = []
    for w in WEYL_GROUP:
        row = {"weyl": w.name}
        for r in POSITIVE_ROOTS:
            row[r.name] = str(weyl_act_root(w, r))
        row["torus"] = torus_text(torus_conjugation(w))
        rows.append(row)
    return rows


def is_strictly_negative(v: Weight) -> bool:
    """True when both simple-root coordinates of an exact weight are < 0."""
    c1, c2 = v.simple_root_coords
    return c1.constant_value() < 0 and c2.constant_value() < 0


