"""Quaternary building-block sequences over Z4 and their exact correlations.

Covers the trace sequences T([1+2*gamma] xi^t) (the classic low-correlation
family of period 2^r - 1), the enlarged variant with an extra 2*h*xi^(3t)
trace term, and the 16-QAM comparison family built from pairs of
i^T(delta xi^t) sequences.  Coefficients gamma, g, h are given as field
bitmasks and identified with their Teichmuller lifts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .galois import FieldConfig, GaussianInt, GI_ZERO, i_power


@dataclass(frozen=True)
class QuaternarySeq:
    """Period-N sequence over Z4 with its construction label."""

    values: tuple[int, ...]
    label: str
    shift: int = 0

    @property
    def period(self) -> int:
        return len(self.values)

    def cyclic_shift(self, s: int) -> "QuaternarySeq":
        n = self.period
        s %= n
        return QuaternarySeq(self.values[s:] + self.values[:s], self.label, (self.shift + s) % n)

    def to_json(self) -> str:
        return json.dumps({"label": self.label, "shift": self.shift, "values": list(self.values)})

    @classmethod
    def from_json(cls, text: str) -> "QuaternarySeq":
        obj = json.loads(text)
        return cls(tuple(obj["values"]), obj["label"], obj["shift"])


def family_a(cfg: FieldConfig, gamma: int, shift: int = 0) -> QuaternarySeq:
    """values[t] = T([1 + 2*gamma] xi^(t+shift)).

    gamma is a field bitmask (its lift indexes the family member); the
    2^r choices of gamma give cyclically distinct sequences that take
    all four Z4 values, which is why the purely binary member 2*T(xi^t)
    is not generated here.
    """
    if not 0 <= shift < cfg.n:
        raise ValueError("shift must lie in 0..N-1")
    c = cfg.ring_add(cfg.one, cfg.ring_scale(2, cfg.lift(gamma)))
    vals = tuple(
        cfg.ring_trace(cfg.ring_mul(c, cfg.xi_pow[(t + shift) % cfg.n]))
        for t in range(cfg.n)
    )
    return QuaternarySeq(vals, f"familyA(g={gamma:#x})", shift)


def family_s1(cfg: FieldConfig, g: int, h2: int, shift: int = 0) -> QuaternarySeq:
    """values[t] = T([1 + 2*g] xi^(t+shift) + 2*h2*xi^(3t)).

    The cubic term is not shifted; with h2 = 0 this degenerates to
    family_a(g, shift).  The q^2 coefficient pairs (g, h2) enumerate the
    enlarged family.
    """
    if not 0 <= shift < cfg.n:
        raise ValueError("shift must lie in 0..N-1")
    c = cfg.ring_add(cfg.one, cfg.ring_scale(2, cfg.lift(g)))
    h2l = cfg.ring_scale(2, cfg.lift(h2))
    vals = []
    for t in range(cfg.n):
        z = cfg.ring_mul(c, cfg.xi_pow[(t + shift) % cfg.n])
        z = cfg.ring_add(z, cfg.ring_mul(h2l, cfg.xi_pow[(3 * t) % cfg.n]))
        vals.append(cfg.ring_trace(z))
    return QuaternarySeq(tuple(vals), f"s1(g={g:#x},h={h2:#x})", shift)


def qcorrelation(u: QuaternarySeq, v: QuaternarySeq, tau: int) -> GaussianInt:
    """Exact periodic correlation sum_t i^(u(t+tau) - v(t))."""
    n = u.period
    if v.period != n:
        raise ValueError("period mismatch")
    acc = GI_ZERO
    for t in range(n):
        acc = acc + i_power(u.values[(t + tau) % n] - v.values[t])
    return acc


def all_family_a(cfg: FieldConfig, shift: int = 0) -> list[QuaternarySeq]:
    """The 2^r members, gamma running over 0 then the alpha powers."""
    gammas = [0] + [cfg.exp[j] for j in range(cfg.n)]
    return [family_a(cfg, g, shift) for g in gammas]


@dataclass(frozen=True)
class BoztasUser:
    """One comparison-family user: core(t) = i^u(t) + 2 i^v(t)."""

    delta: int  # field bitmask of delta_i = reduce(1 - xi^i)
    gamma: int
    u: tuple[int, ...]
    v: tuple[int, ...]

    def core(self, t: int) -> GaussianInt:
        return i_power(self.u[t]) + i_power(self.v[t]).scale(2)


def boztas_family(cfg: FieldConfig) -> list[BoztasUser]:
    """The 16-QAM comparison family built from pairs i^T(delta xi^t).

    The coefficient pool {1 - xi^i : 1 <= i <= 2^r - 2} is split in index
    order: the first half becomes the delta_i, the rest the gamma_i, and
    user i transmits i^T(delta_i xi^t) + 2 i^T(gamma_i xi^t) (up to the
    common sqrt(2i) factor).  Yields 2^(r-1) - 1 users.
    """
    if cfg.r < 3:
        raise ValueError("comparison family needs r >= 3")
    pool = []
    for i in range(1, cfg.n):
        d = cfg.ring_sub(cfg.one, cfg.xi_pow[i])
        pool.append(d)
    half = (cfg.n + 1) // 2 - 1  # 2^(r-1) - 1
    users = []
    for i in range(half):
        dz, gz = pool[i], pool[half + i]
        u = tuple(cfg.ring_trace(cfg.ring_mul(dz, cfg.xi_pow[t])) for t in range(cfg.n))
        v = tuple(cfg.ring_trace(cfg.ring_mul(gz, cfg.xi_pow[t])) for t in range(cfg.n))
        users.append(
            BoztasUser(cfg.reduce_mod2(dz), cfg.reduce_mod2(gz), u, v)
        )
    return users
