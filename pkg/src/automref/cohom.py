"""Schur-multiplier obstruction arithmetic for abelian Sylow subgroups.

For p > 2 and a p'-automizer E, the p-part of H^2(G, F_p) has rank
dim V^E + dim (Λ²V)^E where V is the dual of Omega_1(P); a positive rank
forces a nonzero W-fixed space.  Invariants are computed as intersections of
generator fixed spaces, with the averaging projector kept as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

from automref.fmatrix import (Mat, MatGroup, contragredient, echelon,
                              wedge_square)
from automref.reflect import fixed_space_of_group


class CohomError(ValueError):
    pass


@dataclass
class ObstructionReport:
    p: int
    dim_V_E: int          # invariants of E on the dual of Omega_1(P)
    dim_wedge_E: int      # invariants of E on the exterior square of the dual
    total: int            # rank of the p-part of H^2(G, F_p)
    dim_V_natural: int    # invariants on Omega_1(P) itself (equal for p'-groups)
    fixed_W_dim: int | None = None
    consistent: bool | None = None


def dual_module(E: MatGroup) -> MatGroup:
    """The contragredient action (on the dual space)."""
    if E.field.n != 1:
        raise CohomError("dual module computed over the prime field only")
    return MatGroup(E.field, E.dim, [contragredient(g) for g in E.generators],
                    name=f"{E.name or 'E'}^*")


def wedge_module(E: MatGroup) -> MatGroup:
    dim = E.dim * (E.dim - 1) // 2
    return MatGroup(E.field, dim, [wedge_square(g) for g in E.generators],
                    name=f"wedge({E.name or 'E'})")


def multiplier_p_part_rank(E: MatGroup, p: int,
                           cap: int = 2_000_000) -> ObstructionReport:
    """Rank of the p-part of H^2(G, F_p), read off the automizer action."""
    if p != E.field.p or E.field.n != 1:
        raise CohomError("E must act over the prime field F_p")
    if p == 2:
        raise CohomError("requires p > 2")
    if E.order(cap) % p == 0:
        raise CohomError("E is not a p'-group; P cannot be an abelian Sylow subgroup")

    dual = dual_module(E)
    dim_v = len(fixed_space_of_group(dual))
    dim_wedge = len(fixed_space_of_group(wedge_module(dual)))
    dim_nat = len(fixed_space_of_group(E))
    return ObstructionReport(p=p, dim_V_E=dim_v, dim_wedge_E=dim_wedge,
                             total=dim_v + dim_wedge, dim_V_natural=dim_nat)


def solomon_check(W: MatGroup, cap: int = 2_000_000) -> bool:
    """dim Λ²(V)^W == dim Λ²(V^W) on the dual module of a reflection group."""
    if W.field.p == 2:
        raise CohomError("requires p > 2")
    dual = dual_module(W) if W.generators else W
    lhs = len(fixed_space_of_group(wedge_module(dual))) if W.dim >= 2 else 0
    f = len(fixed_space_of_group(dual)) if W.generators else W.dim
    rhs = f * (f - 1) // 2
    return lhs == rhs


def obstruction_consistency(report: ObstructionReport, fixed_W_dim: int) -> bool:
    """Nonzero multiplier p-part must force a nonzero W-fixed space (p > 2)."""
    if report.p == 2:
        raise CohomError("requires p > 2")
    report.fixed_W_dim = fixed_W_dim
    report.consistent = (report.total == 0) or (fixed_W_dim > 0)
    return report.consistent


def fixed_dim_by_projector(G: MatGroup, cap: int = 10_000) -> int:
    """Independent oracle: rank of the averaging projector (1/|G|) sum g."""
    f = G.field
    els = G.elements(cap)
    n = len(els)
    if n % f.p == 0:
        raise CohomError("averaging needs a p'-group")
    acc = Mat.zero(f, G.dim, G.dim)
    for g in els:
        acc = acc + g
    inv_n = f.inv(n % f.p if f.n == 1 else _embed_int(f, n))
    proj = acc.scale(inv_n)
    if not (proj * proj == proj):
        raise RuntimeError("averaging operator is not idempotent")
    return len(echelon(f, proj.rows))


def _embed_int(f, n: int) -> int:
    x = 0
    for _ in range(n % f.p):
        x = f.add(x, 1)
    return x
