"""Scalar planning: the (alpha, beta) table, branch choice, base-3 caps.

All arithmetic here is exact integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

#: Admissible (alpha, beta) pairs, alpha ascending.
PARAMETER_TABLE: tuple[tuple[int, int], ...] = (
    (8, 56), (9, 26), (10, 18), (11, 15), (12, 13), (13, 12),
    (14, 11), (15, 10), (17, 9), (20, 8), (27, 7), (52, 6),
)


class Branch(str, Enum):
    SMALL_T = "SmallT"
    LAYERED = "Layered"
    BEST_EFFORT = "BestEffort"


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class Base3Plan:
    t: int
    m: int
    omega: tuple[int, ...]  # omega_1 .. omega_{m+1}
    ell: tuple[int, ...]  # ell_0 .. ell_{m+1}
    caps: tuple[int, ...]  # L_1 .. L_{m+1}

    def cap(self, i: int) -> int:
        """L_i, 1-based."""
        return self.caps[i - 1]


def cap_values(ell, alpha: int):
    """``ceil((2a-3) ell / (2a-5))``; elementwise when ``ell`` is an integer array."""
    return -(-(2 * alpha - 3) * ell // (2 * alpha - 5))


def base3_decompose(t: int, alpha: int) -> Base3Plan:
    """Split ``t`` into base-3 digits and derive the prefix values and caps.

    ``ell[i] = 3 * ell[i-1] + omega[i]`` with ``ell[m+1] == t``; the caps are
    ``ceil((2a-3) ell_i / (2a-5))`` for ``i <= m`` and ``t`` for the last layer.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if alpha < 8:
        raise ValueError("alpha must be >= 8")
    digits = []
    x = t
    while x:
        x, r = divmod(x, 3)
        digits.append(r)
    digits.reverse()
    ell = [0]
    for w in digits:
        ell.append(3 * ell[-1] + w)
    m = len(digits) - 1
    caps = [cap_values(ell[i], alpha) for i in range(1, m + 1)]
    caps.append(t)
    return Base3Plan(t=t, m=m, omega=tuple(digits), ell=tuple(ell), caps=tuple(caps))


def small_t_threshold_ok(t: int, alpha: int, beta: int) -> bool:
    """Integer form of ``t <= beta * (2 - 1/alpha)``."""
    return alpha * t <= (2 * alpha - 1) * beta


def layered_threshold(alpha: int, beta: int) -> int:
    """Smallest integer t with ``t >= beta * (2 - 1/alpha)``."""
    return ceil_div((2 * alpha - 1) * beta, alpha)


def cap_ratio_violations(base3: Base3Plan) -> list[int]:
    """Indices i (2 <= i <= m+1) where ``2 * L_{i-1} > L_i``."""
    return [i for i in range(2, base3.m + 2) if 2 * base3.cap(i - 1) > base3.cap(i)]


@dataclass(frozen=True)
class SolvePlan:
    n: int
    k: int
    d: int
    delta: int
    t: int
    alpha: int
    beta: int
    branch: Branch
    base3: Base3Plan | None = None

    @property
    def guaranteed(self) -> bool:
        return self.branch is not Branch.BEST_EFFORT

    def to_dict(self) -> dict:
        out = {
            "n": self.n, "k": self.k, "d": self.d, "delta": self.delta, "t": self.t,
            "alpha": self.alpha, "beta": self.beta, "branch": self.branch.value,
            "guaranteed": self.guaranteed,
        }
        if self.base3 is not None:
            out["base3"] = {
                "m": self.base3.m, "omega": list(self.base3.omega),
                "ell": list(self.base3.ell), "caps": list(self.base3.caps),
            }
        return out


def select_params(n: int, d: int, delta: int, k: int) -> SolvePlan:
    """Pick the first table pair satisfying ``k >= alpha*d`` and ``n >= beta*delta``."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    t = ceil_div(n, k)
    for alpha, beta in PARAMETER_TABLE:
        if k >= alpha * d and n >= beta * delta:
            break
    else:
        alpha = max(8, k // max(d, 1))
        beta = n // max(delta, 1)
        return SolvePlan(n, k, d, delta, t, alpha, beta, Branch.BEST_EFFORT)
    if d == 0 or small_t_threshold_ok(t, alpha, beta):
        return SolvePlan(n, k, d, delta, t, alpha, beta, Branch.SMALL_T)
    return SolvePlan(n, k, d, delta, t, alpha, beta, Branch.LAYERED, base3_decompose(t, alpha))
