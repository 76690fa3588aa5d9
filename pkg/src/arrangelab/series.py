"""Integer power series truncated at a fixed degree."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int], trunc: int | None = None):
        c = [int(x) for x in coeffs]
        if trunc is not None:
            c = (c + [0] * (trunc + 1))[: trunc + 1]
        if not c:
            raise ValueError("a series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def trunc(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k <= self.trunc else 0

    def _common(self, other: "TruncatedSeries") -> int:
        return min(self.trunc, other.trunc)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._common(other)
        return TruncatedSeries(self[k] + other[k] for k in range(n + 1))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._common(other)
        return TruncatedSeries(self[k] - other[k] for k in range(n + 1))

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedSeries(other * c for c in self.coeffs)
        n = self._common(other)
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other[j]
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be a unit (+1 or -1)."""
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise ValueError("constant term is not invertible over the integers")
        out = [c0]
        for k in range(1, self.trunc + 1):
            s = sum(self.coeffs[j] * out[k - j] for j in range(1, k + 1))
            out.append(-s * c0)
        return TruncatedSeries(out)

    def negate_variable(self) -> "TruncatedSeries":
        """The series evaluated at -t."""
        return TruncatedSeries(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def truncate(self, n: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, n)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    @classmethod
    def one(cls, trunc: int) -> "TruncatedSeries":
        return cls([1], trunc)

    @classmethod
    def from_dims(cls, dims: Sequence[int], trunc: int) -> "TruncatedSeries":
        return cls(dims, trunc)

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if k == 0:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        first = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return " ".join([first] + [f"{s} {b}" for s, b in terms[1:]]) + f" + O(t^{self.trunc + 1})"


def pbw_product(lie_dims: dict[int, int], trunc: int) -> TruncatedSeries:
    """The product over weights w of (1 - t^w)^(-dim_w), truncated."""
    acc = TruncatedSeries.one(trunc)
    for w, d in sorted(lie_dims.items()):
        if w > trunc or d == 0:
            continue
        # 1/(1 - t^w) has coefficient 1 at multiples of w
        geo = TruncatedSeries([1 if k % w == 0 else 0 for k in range(trunc + 1)])
        for _ in range(d):
            acc = acc * geo
    return acc
