"""Construction of the low-correlation QAM / Q-PAM sequence families.

Every family is built from period-(2^r - 1) quaternary trace sequences
u_k(t) = T([1 + 2 c_k] xi^(t + tau_k)) combined as

    s(t) = sqrt(2i) * sum_k 2^k i^(u_k(t) + data phase)

i.e. component k carries weight 2^k.  The families differ in how the
coefficients c_k are selected (free Teichmuller blocks, subspace cosets,
distinct-sum sets), in the shift tuple, and in the data space kappa:

    kind    coefficients                shifts        kappa               rate
    CQ      disjoint m-blocks of T      independent   Z4^m                2m
    CQINC   two m-blocks per user       independent   Z4^m x F2^m         3m
    CQS1    (g, h) pairs, cubic term    independent   Z4^m                2m
    SQ      coset {g, g+delta_k}        independent   Z4 x F2^(m-1)       m+1
    P2M     distinct-sum {g+delta_k}    all zero      Z4 x F2^(m-1)       m+1
    IQ16    pairs {g, g+delta_1}        (0, tau_1)    Z4 x F2, interleave 3
    IP8     pairs {g, g+delta_1}        (0, 0)        Z4 x F2, interleave 3

For SQ/P2M the kappa word is a global i^(kappa_0) rotation plus a sign
flip (-1)^(kappa_k) on each delta-component; the interleaved kinds
alternate the two components between even and odd symbol slots and have
twice the period.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

from .constellation import qam_membership, qpam_membership
from .galois import FieldConfig, GaussianInt, i_power
from .quaternary import QuaternarySeq, family_a, family_s1

QAM_KINDS = ("CQ", "CQINC", "CQS1", "SQ", "IQ16", "QB")
QPAM_KINDS = ("P2M", "IP8")


def independent_shifts(cfg: FieldConfig, m: int) -> tuple[int, ...]:
    """Lexicographically smallest (tau_0=0 < tau_1 < ...) with the powers
    {alpha^tau_k} linearly independent over GF(2)."""
    if m > cfg.r:
        raise ValueError(f"cannot pick {m} independent powers in a degree-{cfg.r} field")
    shifts = [0]
    span = {0, 1}  # span of {alpha^0}
    tau = 1
    while len(shifts) < m:
        e = cfg.exp[tau % cfg.n]
        if e not in span:
            shifts.append(tau)
            span |= {x ^ e for x in span}
        tau += 1
    return tuple(shifts)


def fallback_shifts(m: int) -> tuple[int, ...]:
    """tau_k = k; used when m > r makes an independent tuple impossible."""
    return tuple(range(m))


def sse(m: int) -> int:
    """Subspace-size exponent: the l with 2^(l-1) < m-1 <= 2^l."""
    if m < 2:
        return 0
    return (m - 2).bit_length()


def subspace_chain(cfg: FieldConfig) -> list[int]:
    """Basis rho_0, ..., rho_{r-2} of the trace-0 hyperplane, chosen as the
    smallest-index alpha powers extending the chain (the element 1 is
    considered last, so for tr(alpha)=0 fields the chain starts alpha,
    alpha^2, ...)."""
    rhos: list[int] = []
    span = {0}
    candidates = [cfg.exp[j % cfg.n] for j in range(1, cfg.n + 1)]  # alpha..alpha^(n-1), then 1
    for e in candidates:
        if len(rhos) == cfg.r - 1:
            break
        if cfg.field_trace(e) == 0 and e not in span:
            rhos.append(e)
            span |= {x ^ e for x in span}
    if len(rhos) != cfg.r - 1:
        raise ValueError("trace-0 subspace chain could not be completed")
    return rhos


def sq_zeta(cfg: FieldConfig) -> int:
    """Smallest-index trace-1 power of alpha."""
    return cfg.trace_one_powers()[0]


def delta_ordering(cfg: FieldConfig, zeta: int | None = None) -> list[int]:
    """Ordering of the trace-1 coset W_{r-1} + zeta in which the elements
    of W_k + zeta precede those of W_l + zeta for k < l.  Built
    recursively: block for W_{k+1} is the block for W_k followed by its
    translate by rho_k."""
    if zeta is None:
        zeta = sq_zeta(cfg)
    if cfg.field_trace(zeta) != 1:
        raise ValueError("zeta must have trace 1")
    deltas = [zeta]
    for rho in subspace_chain(cfg):
        deltas += [d ^ rho for d in deltas]
    return deltas


def teichmuller_partition(cfg: FieldConfig, m: int, zero_position: str = "first") -> list[tuple[int, ...]]:
    """Split T (as field elements) into floor(q/m) ordered m-blocks.

    zero_position picks where the zero element sits in the enumeration:
    "first" gives [0, 1, alpha, ...]; "mid" slots it between
    alpha^(q/2 - 1) and alpha^(q/2).  Leftover elements (q mod m) are
    dropped.
    """
    powers = [cfg.exp[j] for j in range(cfg.n)]
    if zero_position == "first":
        order = [0] + powers
    elif zero_position == "mid":
        half = cfg.q // 2
        order = powers[:half] + [0] + powers[half:]
    else:
        raise ValueError("zero_position must be 'first' or 'mid'")
    return [tuple(order[p * m + k] for k in range(m)) for p in range(cfg.q // m)]


@dataclass(frozen=True)
class Component:
    """One quaternary component: coefficient [1 + 2g (+ 2h xi^3t)] at shift tau."""

    g: int
    tau: int
    h2: int = 0


@dataclass(frozen=True)
class CoefficientPlan:
    kind: str
    m: int
    shifts: tuple[int, ...]
    deltas: tuple[int, ...] = ()
    zeta: int | None = None
    # users[p] lists the user's components; CQINC appends the second bank
    users: tuple[tuple[Component, ...], ...] = ()


@dataclass(frozen=True)
class ComplexSeq:
    """Exact modulated sequence: symbol(t) = sqrt(2i) * cores[t]."""

    cores: tuple[GaussianInt, ...]
    kind: str
    user: int
    kappa: tuple

    @property
    def period(self) -> int:
        return len(self.cores)

    def energy(self) -> int:
        return 2 * sum(c.abs2() for c in self.cores)

    def symbol_pairs(self) -> list[tuple[int, int]]:
        """Transmitted points as exact (a, b) integer pairs, a+ib."""
        out = []
        for c in self.cores:
            w = GaussianInt(1, 1) * c
            out.append((w.re, w.im))
        return out


class FamilyInstance:
    """A fully constructed family: plan, component sequences, modulation."""

    def __init__(self, cfg: FieldConfig, plan: CoefficientPlan):
        self.cfg = cfg
        self.plan = plan
        self.kind = plan.kind
        self.m = plan.m
        if plan.kind in ("IQ16", "IP8"):
            self.period = 2 * cfg.n
        else:
            self.period = cfg.n
        self._comps: list[list[QuaternarySeq]] = []
        for user in plan.users:
            seqs = []
            for comp in user:
                if comp.h2:
                    seqs.append(family_s1(cfg, comp.g, comp.h2, comp.tau))
                else:
                    seqs.append(family_a(cfg, comp.g, comp.tau))
            self._comps.append(seqs)
        self._dataspace: list[tuple] | None = None
        if plan.kind != "QB":  # the comparison family may reuse shift classes
            self._check_cyclic_distinctness()

    # -- structural properties --

    @property
    def family_size(self) -> int:
        return len(self.plan.users)

    @property
    def data_rate_bits(self) -> int:
        return {
            "CQ": 2 * self.m,
            "CQS1": 2 * self.m,
            "CQINC": 3 * self.m,
            "SQ": self.m + 1,
            "P2M": self.m + 1,
            "IQ16": 3,
            "IP8": 3,
            "QB": 0,
        }[self.kind]

    @property
    def alphabet(self) -> tuple[str, int]:
        """(kind, size) of the symbol alphabet."""
        if self.kind in QPAM_KINDS:
            return ("qpam", 1 << (self.m + 1))
        return ("qam", 1 << (2 * self.m))

    @property
    def M(self) -> int:
        return 1 << self.m

    def components(self, user: int) -> list[QuaternarySeq]:
        return self._comps[user]

    def coefficient_elements(self) -> set[int]:
        """All field elements g used by any component (h2 parts excluded)."""
        return {c.g for u in self.plan.users for c in u}

    # -- data space --

    def data_space(self) -> list[tuple]:
        m = self.m
        if self.kind in ("CQ", "CQS1"):
            return [k for k in product(range(4), repeat=m)]
        if self.kind == "CQINC":
            return [k + s for k in product(range(4), repeat=m) for s in product(range(2), repeat=m)]
        if self.kind in ("SQ", "P2M"):
            return [(k0,) + b for k0 in range(4) for b in product(range(2), repeat=m - 1)]
        if self.kind in ("IQ16", "IP8"):
            return [(k0, b) for k0 in range(4) for b in range(2)]
        if self.kind == "QB":
            return [()]
        raise ValueError(self.kind)

    def rotation_quotient(self) -> list[tuple]:
        """One kappa per i^(kappa_0)-rotation class; |theta| and energies
        are invariant under the dropped global rotation."""
        if self.kind == "QB":
            return [()]
        return [k for k in self.data_space() if k[0] == 0]

    # -- modulation --

    def modulate(self, user: int, kappa: tuple) -> ComplexSeq:
        kappa = tuple(kappa)
        if kappa not in set(self.data_space()):
            raise ValueError(f"kappa {kappa} outside the {self.kind} data space")
        comps = self._comps[user]
        m = self.m
        n = self.cfg.n
        cores = []
        if self.kind in ("CQ", "CQS1"):
            for t in range(self.period):
                acc = GaussianInt(0, 0)
                for k in range(m):
                    acc = acc + i_power(comps[k].values[t] + kappa[k]).scale(1 << k)
                cores.append(acc)
        elif self.kind == "CQINC":
            sel = kappa[m:]
            for t in range(self.period):
                acc = GaussianInt(0, 0)
                for k in range(m):
                    u = comps[k + m * sel[k]].values[t]
                    acc = acc + i_power(u + kappa[k]).scale(1 << k)
                cores.append(acc)
        elif self.kind in ("SQ", "P2M"):
            k0 = kappa[0]
            for t in range(self.period):
                acc = GaussianInt(0, 0)
                for k in range(m):
                    e = comps[k].values[t] + (2 * kappa[k] if k else 0)
                    acc = acc + i_power(e + k0).scale(1 << k)
                cores.append(acc)
        elif self.kind in ("IQ16", "IP8"):
            k0, b = kappa
            u0, u1 = comps[0], comps[1]
            for t in range(self.period):
                e0, e1 = u0.values[t % n], u1.values[t % n] + 2 * b
                if t % 2 == 0:
                    acc = i_power(e1 + k0) + i_power(e0 + k0).scale(2)
                else:
                    # i*(i^e0 - 2 i^e1) = i^(e0+1) + 2 i^(e1+3)
                    acc = i_power(e0 + 1 + k0) + i_power(e1 + 3 + k0).scale(2)
                cores.append(acc)
        elif self.kind == "QB":
            u0, u1 = comps[0], comps[1]
            for t in range(self.period):
                cores.append(i_power(u0.values[t]) + i_power(u1.values[t]).scale(2))
        else:
            raise ValueError(self.kind)
        return ComplexSeq(tuple(cores), self.kind, user, kappa)

    def all_sequences(self, quotient: bool = True) -> list[ComplexSeq]:
        kappas = self.rotation_quotient() if quotient else self.data_space()
        return [self.modulate(u, k) for u in range(self.family_size) for k in kappas]

    def membership_check(self, seq: ComplexSeq) -> bool:
        kind, _ = self.alphabet
        M = self.M
        if kind == "qpam":
            return all(qpam_membership(c, M) for c in seq.cores)
        return all(qam_membership(c, M) for c in seq.cores)

    # -- construction guards --

    def _check_cyclic_distinctness(self) -> None:
        """All components across the family must be pairwise non-shift-
        equivalent (canonical-rotation check)."""
        seen: dict[tuple, tuple] = {}
        for uid, seqs in enumerate(self._comps):
            bank = seqs if self.kind != "CQINC" else seqs  # both banks included
            for s in bank:
                v = s.values
                canon = min(v[i:] + v[:i] for i in range(len(v)))
                if canon in seen:
                    raise ValueError(
                        f"cyclically equivalent components: user {uid} vs {seen[canon]}"
                    )
                seen[canon] = (uid, s.label)

    def check_linear_independence(self) -> None:
        """Z4-linear independence of each user's coefficient vector; raises
        on violation (construction bug guard, exhaustive over omega)."""
        cfg = self.cfg
        for uid, user in enumerate(self.plan.users):
            vecs = [
                cfg.ring_mul(
                    cfg.ring_add(cfg.one, cfg.ring_scale(2, cfg.lift(c.g))),
                    cfg.xi_pow[c.tau % cfg.n],
                )
                for c in user
            ]
            for omega in product(range(4), repeat=len(vecs)):
                if not any(omega):
                    continue
                acc = cfg.zero
                for w, v in zip(omega, vecs):
                    acc = cfg.ring_add(acc, cfg.ring_scale(w, v))
                if acc == cfg.zero:
                    raise ValueError(f"user {uid}: coefficients Z4-linearly dependent")

    # -- serialization --

    def to_json(self) -> str:
        users = []
        for user in self.plan.users:
            users.append([{"g": c.g, "h2": c.h2, "tau": c.tau} for c in user])
        return json.dumps(
            {
                "kind": self.kind,
                "r": self.cfg.r,
                "f": self.cfg.f,
                "m": self.m,
                "shifts": list(self.plan.shifts),
                "deltas": list(self.plan.deltas),
                "zeta": self.plan.zeta,
                "users": users,
            }
        )

    @classmethod
    def from_json(cls, text: str, cfg: FieldConfig | None = None) -> "FamilyInstance":
        obj = json.loads(text)
        if cfg is None:
            cfg = FieldConfig(obj["r"], obj["f"])
        users = tuple(
            tuple(Component(c["g"], c["tau"], c["h2"]) for c in user) for user in obj["users"]
        )
        plan = CoefficientPlan(
            obj["kind"], obj["m"], tuple(obj["shifts"]), tuple(obj["deltas"]), obj["zeta"], users
        )
        return cls(cfg, plan)


# ----- builders -----


def build_cq(
    cfg: FieldConfig,
    m: int,
    shifts: tuple[int, ...] | None = None,
    partition: list[tuple[int, ...]] | None = None,
) -> FamilyInstance:
    """Canonical family: floor(q/m) users, each owning an ordered m-block
    of Teichmuller coefficients; data word in Z4^m.

    m = 1 degenerates to bare quaternary-over-QPSK users (valid, trivial).
    """
    if m < 1 or m > cfg.q:
        raise ValueError("need 1 <= m <= q")
    if shifts is None:
        shifts = independent_shifts(cfg, m)
    if len(shifts) != m:
        raise ValueError("need one shift per component")
    if partition is None:
        partition = teichmuller_partition(cfg, m, "first")
    users = tuple(
        tuple(Component(block[k], shifts[k]) for k in range(m)) for block in partition
    )
    fam = FamilyInstance(cfg, CoefficientPlan("CQ", m, tuple(shifts), users=users))
    fam.check_linear_independence()
    return fam


def build_cq_increased(
    cfg: FieldConfig, m: int, shifts: tuple[int, ...] | None = None
) -> FamilyInstance:
    """Half as many users, each holding two coefficient banks; the data
    word selects per position between the banks, for 3m bits."""
    if 2 * m > cfg.q:
        raise ValueError("need 2m <= q")
    if shifts is None:
        shifts = independent_shifts(cfg, m)
    blocks = teichmuller_partition(cfg, m, "first")
    users = []
    for p in range(cfg.q // (2 * m)):
        bank_u = tuple(Component(blocks[2 * p][k], shifts[k]) for k in range(m))
        bank_v = tuple(Component(blocks[2 * p + 1][k], shifts[k]) for k in range(m))
        users.append(bank_u + bank_v)
    fam = FamilyInstance(cfg, CoefficientPlan("CQINC", m, tuple(shifts), users=tuple(users)))
    fam.check_linear_independence()
    return fam


def build_cq_s1(
    cfg: FieldConfig, m: int, shifts: tuple[int, ...] | None = None
) -> FamilyInstance:
    """Enlarged canonical family over the q^2 quaternary sequences with the
    extra cubic trace term: floor(q^2/m) users.

    Coefficient pairs (g, h) are enumerated h-major, so the first
    floor(q/m) users have h = 0 and form a plain canonical subfamily.
    """
    if m < 2:
        raise ValueError("need m >= 2")
    if shifts is None:
        shifts = independent_shifts(cfg, m)
    telems = [0] + [cfg.exp[j] for j in range(cfg.n)]
    P = (cfg.q * cfg.q) // m
    users = []
    for p in range(P):
        comps = []
        for k in range(m):
            idx = p * m + k
            comps.append(Component(telems[idx % cfg.q], shifts[k], telems[idx // cfg.q]))
        users.append(tuple(comps))
    return FamilyInstance(cfg, CoefficientPlan("CQS1", m, tuple(shifts), users=tuple(users)))


def build_sq(
    cfg: FieldConfig, m: int, shifts: tuple[int, ...] | None = None
) -> FamilyInstance:
    """Selected family: users are the cosets of W_l (l the subspace-size
    exponent) inside the trace-0 hyperplane; user g holds coefficients
    {g, g+delta_1, ..., g+delta_{m-1}} with the delta prefix of the
    canonical trace-1 ordering."""
    if not 2 <= m <= (1 << (cfg.r - 1)) + 1:
        raise ValueError(f"need 2 <= m <= 2^(r-1)+1 = {(1 << (cfg.r - 1)) + 1}")
    l = sse(m)
    if shifts is None:
        shifts = independent_shifts(cfg, m) if m <= cfg.r else fallback_shifts(m)
    zeta = sq_zeta(cfg)
    deltas = tuple(delta_ordering(cfg, zeta)[: m - 1])
    chain = subspace_chain(cfg)
    wl = {0}
    for rho in chain[:l]:
        wl |= {x ^ rho for x in wl}
    assert all(d ^ zeta in wl for d in deltas), "deltas must lie in W_l + zeta"
    reps, seen = [], set()
    for g in cfg.trace_zero_elements():
        if g not in seen:
            reps.append(g)
            seen |= {g ^ w for w in wl}
    users = tuple(
        tuple(Component(g ^ d, shifts[k]) for k, d in enumerate((0,) + deltas))
        for g in reps
    )
    return FamilyInstance(cfg, CoefficientPlan("SQ", m, tuple(shifts), deltas, zeta, users))


def p2m_deltas(cfg: FieldConfig, m: int) -> tuple[int, ...]:
    """m-1 trace-1 elements with {1, delta_1, ...} GF(2)-independent,
    greedily by alpha-power index."""
    if m > cfg.r:
        raise ValueError("need m <= r for an independent delta set")
    deltas: list[int] = []
    span = {0, 1}
    for j in range(cfg.n):
        if len(deltas) == m - 1:
            break
        e = cfg.exp[j]
        if cfg.field_trace(e) == 1 and e not in span:
            deltas.append(e)
            span |= {x ^ e for x in span}
    if len(deltas) != m - 1:
        raise ValueError("not enough independent trace-1 elements")
    return tuple(deltas)


def build_p2m(cfg: FieldConfig, m: int) -> FamilyInstance:
    """Q-PAM family: all shifts zero; G grown greedily (zero element first,
    then alpha-power order) keeping all sums g + delta_k distinct."""
    if m < 2:
        raise ValueError("need m >= 2")
    deltas = p2m_deltas(cfg, m)
    dset = (0,) + deltas
    claimed: set[int] = set()
    G = []
    for g in [0] + [cfg.exp[j] for j in range(cfg.n)]:
        sums = {g ^ d for d in dset}
        if not sums & claimed:
            G.append(g)
            claimed |= sums
    users = tuple(
        tuple(Component(g ^ d, 0) for d in dset) for g in G
    )
    zeta = deltas[0]
    fam = FamilyInstance(cfg, CoefficientPlan("P2M", m, (0,) * m, deltas, zeta, users))
    return fam


def g_size_bounds(cfg: FieldConfig, m: int) -> tuple[float, float]:
    """Gilbert-Varshamov and Hamming bounds on |G| for the distinct-sum
    selection with m-1 deltas."""
    c1 = m - 1
    c2 = (m - 1) * (m - 2) // 2
    return cfg.q / (1 + c1 + c2), cfg.q / (1 + c1)


def _interleaved(cfg: FieldConfig, kind: str, tau1: int, delta1: int | None) -> FamilyInstance:
    if cfg.r < 3:
        raise ValueError("interleaved families need r >= 3")
    if delta1 is None:
        delta1 = p2m_deltas(cfg, 2)[0]
    if cfg.field_trace(delta1) != 1:
        raise ValueError("delta_1 must have trace 1")
    reps, seen = [], set()
    for g in [0] + [cfg.exp[j] for j in range(cfg.n)]:
        if g not in seen:
            reps.append(g)
            seen |= {g, g ^ delta1}
    users = tuple(
        (Component(g, 0), Component(g ^ delta1, tau1)) for g in reps
    )
    return FamilyInstance(
        cfg, CoefficientPlan(kind, 2, (0, tau1), (delta1,), delta1, users)
    )


def build_iq16(cfg: FieldConfig, delta1: int | None = None, tau1: int | None = None) -> FamilyInstance:
    """Interleaved 16-QAM family, period 2(2^r - 1), (N+2)/4 users."""
    if tau1 is None:
        tau1 = independent_shifts(cfg, 2)[1]
    return _interleaved(cfg, "IQ16", tau1, delta1)


def build_ip8(cfg: FieldConfig, delta1: int | None = None) -> FamilyInstance:
    """Interleaved 8-ary Q-PAM family: like IQ16 but with zero shifts."""
    return _interleaved(cfg, "IP8", 0, delta1)


def build_qb(cfg: FieldConfig) -> FamilyInstance:
    """16-QAM comparison family from paired i^T(.) sequences; no data
    modulation.  Component coefficients are the mod-2 images of 1 - xi^i,
    so the trace sequences here are T(delta xi^t) without the unit
    1 + 2(.) normalization; we reuse the generic machinery by noting
    1 - xi^i = a(1 + 2b) for Teichmuller a, b derived via the 2-adic
    split, which shifts the sequence without changing correlations.
    """
    # built directly from quaternary.boztas_family; see build in analysis
    raise NotImplementedError("use quaternary.boztas_family for comparison runs")


def reference_table_instances(cfg: FieldConfig) -> dict[str, FamilyInstance]:
    """The five pinned family instances whose exact statistics reproduce
    the reference simulation table at r = 4, f = x^4 + x + 1.

    The free construction choices (the CQ block partition and the SQ
    shift) are pinned to the instances recovered by exhaustive search
    against the published figures; defaults elsewhere already match.
    """
    if cfg.r != 4:
        raise ValueError("the reference table is defined for r = 4")
    return {
        "IQ16": build_iq16(cfg),
        "SQ16": build_sq(cfg, 2, shifts=(0, 4)),
        "IP8": build_ip8(cfg),
        "P8": build_p2m(cfg, 2),
        "CQ16": build_cq(cfg, 2, shifts=(0, 1), partition=teichmuller_partition(cfg, 2, "mid")),
    }
