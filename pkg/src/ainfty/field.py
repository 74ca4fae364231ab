"""Exact ground fields: the rationals and prime fields.

Scalars are plain Python values so that arithmetic stays cheap in the hot
loops: ``fractions.Fraction`` over Q and ``int`` residues in ``[0, p)`` over
F_p.  A :class:`Field` normalizes raw arithmetic results back into that form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

Scalar = Union[int, Fraction]


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class Field:
    """Q when ``p`` is None, otherwise F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise FieldError(f"modulus {self.p} is not prime")

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    def __call__(self, x) -> Scalar:
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def inv(self, x: Scalar) -> Scalar:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def elements(self) -> Iterator[Scalar]:
        if self.p is None:
            raise FieldError("cannot enumerate the elements of Q")
        return iter(range(self.p))

    def vectors(self, dim: int) -> Iterator[tuple]:
        """All vectors of F_q^dim in lexicographic order."""
        if self.p is None:
            raise FieldError("cannot enumerate vectors over Q")
        return itertools.product(range(self.p), repeat=dim)

    def random(self, rng) -> Scalar:
        if self.p is None:
            return Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        return rng.randrange(self.p)

    # serialization: "3/7" over Q, "4 mod 11" over F_p
    def format(self, x: Scalar) -> str:
        x = self(x)
        if self.p is None:
            return str(x)
        return f"{x} mod {self.p}"

    def parse(self, s) -> Scalar:
        if isinstance(s, int):
            return self(s)
        s = str(s).strip()
        if "mod" in s:
            val, mod = s.split("mod")
            if self.p is None or int(mod) != self.p:
                raise FieldError(f"coefficient {s!r} does not belong to {self}")
            return self(int(val))
        try:
            return self(Fraction(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad coefficient {s!r}") from exc

    def descriptor(self):
        return "Q" if self.p is None else {"Fp": self.p}

    @classmethod
    def from_descriptor(cls, d) -> "Field":
        if d in (None, "Q", "QQ"):
            return cls()
        if isinstance(d, dict) and "Fp" in d:
            return cls(int(d["Fp"]))
        if isinstance(d, str) and d.upper().startswith("F"):
            return cls(int(d[1:]))
        if isinstance(d, (int, str)):
            return cls(int(d))
        raise FieldError(f"unknown field descriptor {d!r}")

    def __str__(self):
        return "Q" if self.p is None else f"F{self.p}"


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


def clean(F: Field, lc: dict) -> dict:
    """Normalize coefficients of a sparse combination and drop zeros."""
    out = {}
    for k, c in lc.items():
        c = F(c)
        if c:
            out[k] = c
    return out


def axpy(acc: dict, c, lc: dict) -> None:
    """acc += c * lc, raw (un-normalized) arithmetic."""
    for k, v in lc.items():
        acc[k] = acc.get(k, 0) + c * v
