"""Integer-valued periodic functions on Z/fZ, stored sparsely."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

import numpy as np

from .exact import DomainError


@dataclass(frozen=True)
class PeriodicFunction:
    """Integer function on Z/modulus with a declared parity (+1 even, -1 odd).

    Only nonzero values are stored; ``values`` materialises the dense array.
    The parity is checked on construction.
    """

    modulus: int
    support: Mapping[int, int]
    parity: int
    _frozen: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.modulus < 1:
            raise DomainError("modulus must be positive")
        if self.parity not in (1, -1):
            raise DomainError("parity must be +1 or -1")
        clean = {}
        for n, v in self.support.items():
            v = int(v)
            if v:
                clean[int(n) % self.modulus] = clean.get(int(n) % self.modulus, 0) + v
        clean = {n: v for n, v in sorted(clean.items()) if v}
        for n, v in clean.items():
            if clean.get((-n) % self.modulus, 0) != self.parity * v:
                raise DomainError(
                    f"values violate parity {self.parity:+d} at residue {n}"
                )
        object.__setattr__(self, "support", clean)
        object.__setattr__(self, "_frozen", tuple(clean.items()))

    def __call__(self, n: int) -> int:
        return self.support.get(n % self.modulus, 0)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._frozen)

    @property
    def values(self) -> np.ndarray:
        out = np.zeros(self.modulus, dtype=np.int64)
        for n, v in self._frozen:
            out[n] = v
        return out

    def mean_is_zero(self) -> bool:
        return sum(self.support.values()) == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, PeriodicFunction):
            return NotImplemented
        return self.modulus == other.modulus and self._frozen == other._frozen

    def __hash__(self) -> int:
        return hash((self.modulus, self._frozen))

    def __add__(self, other: "PeriodicFunction") -> "PeriodicFunction":
        if self.modulus != other.modulus or self.parity != other.parity:
            raise DomainError("can only add functions with equal modulus and parity")
        s = dict(self.support)
        for n, v in other.support.items():
            s[n] = s.get(n, 0) + v
        return PeriodicFunction(self.modulus, s, self.parity)

    def __mul__(self, c: int) -> "PeriodicFunction":
        return PeriodicFunction(
            self.modulus, {n: c * v for n, v in self.support.items()}, self.parity
        )

    __rmul__ = __mul__

    def shifted(self, h: int) -> dict[int, int]:
        """Values of ``n -> self(n + h)`` as a plain support map (parity may be lost)."""
        return {(n - h) % self.modulus: v for n, v in self.support.items()}
