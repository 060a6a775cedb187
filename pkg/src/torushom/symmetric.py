"""Binary words, permutations in one-line notation, and recursion states.

Composition is apply-right-first throughout: ``compose(a, b)(i) == a(b(i))``.
Words are plain bit-strings read left to right; the recursion acts on the
rightmost character.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Tuple

from .errors import InvalidState, SizeMismatch


class Theory(str, enum.Enum):
    COLUMN = "column"
    ROW = "row"


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection of {1..n}, stored as the tuple of images ``(s(1), ..., s(n))``."""

    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        text = text.strip()
        if not text:
            return cls(())
        return cls(tuple(int(x) for x in text.split(",")))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __len__(self) -> int:
        return len(self.images)

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images, 1))

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, img in enumerate(self.images, 1):
            inv[img - 1] = i
        return Permutation(tuple(inv))

    def extend(self) -> "Permutation":
        """Embed S^n into S^{n+1} fixing the new last letter."""
        return Permutation(self.images + (self.size + 1,))

    def __str__(self) -> str:
        return ",".join(map(str, self.images))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``a`` after ``b``."""
    if a.size != b.size:
        raise SizeMismatch(f"cannot compose permutations of sizes {a.size} and {b.size}")
    return Permutation(tuple(a.images[j - 1] for j in b.images))


def tr_perm(sigma: Permutation) -> Permutation:
    """Close up the last strand: ``i -> s(i)`` unless ``s(i) == n``, then ``i -> s(n)``."""
    n = sigma.size
    if n < 1:
        raise ValueError("partial trace needs a permutation of size >= 1")
    last = sigma.images[-1]
    return Permutation(tuple(last if img == n else img for img in sigma.images[:-1]))


def cyc(l: int) -> Permutation:
    """The l-cycle ``i -> i+1`` for ``i < l`` and ``l -> 1``."""
    if l < 0:
        raise ValueError("cycle length must be nonnegative")
    if l == 0:
        return Permutation(())
    return Permutation(tuple(range(2, l + 1)) + (1,))


def ones(word: str) -> int:
    return word.count("1")


def zeros(word: str) -> int:
    return word.count("0")


def check_word(word: str) -> str:
    if any(ch not in "01" for ch in word):
        raise InvalidState(f"word must be a bit-string, got {word!r}")
    return word


@dataclass(frozen=True)
class State:
    """Argument ``(v, w, sigma)`` of the recursion, tagged with its theory."""

    v: str
    w: str
    sigma: Permutation
    theory: Theory = Theory.COLUMN

    def __post_init__(self):
        check_word(self.v)
        check_word(self.w)
        if not isinstance(self.sigma, Permutation):
            object.__setattr__(self, "sigma", Permutation(tuple(self.sigma)))
        object.__setattr__(self, "theory", Theory(self.theory))
        l = ones(self.v)
        if ones(self.w) != l:
            raise InvalidState(f"ones(v)={l} differs from ones(w)={ones(self.w)}")
        if self.sigma.size != l:
            raise InvalidState(f"sigma has size {self.sigma.size}, expected {l}")

    @property
    def l(self) -> int:
        return self.sigma.size

    def key(self) -> Tuple[str, str, str, Tuple[int, ...]]:
        return (self.theory.value, self.v, self.w, self.sigma.images)

    def __str__(self) -> str:
        return f"p[{self.theory.value}]_{{{self.sigma}}}({self.v or '∅'}, {self.w or '∅'})"


def state(v: str, w: str, sigma: Iterable[int] | Permutation | None = None,
          theory: Theory | str = Theory.COLUMN) -> State:
    """Convenience constructor; ``sigma`` defaults to the identity."""
    if sigma is None:
        sigma = Permutation.identity(ones(v))
    elif not isinstance(sigma, Permutation):
        sigma = Permutation(tuple(sigma))
    return State(v, w, sigma, Theory(theory))
