"""Group constructors, generator-file ingestion, the analyze pipeline, reports.

construct() builds the permutation groups of the catalog: symmetric and
alternating groups, PSL2/PSL3 in their projective actions (with the
field-automorphism extensions used by the classification rows), products,
and generator files.  analyze() runs the full pipeline on a group and a
prime and assembles one table row with all verified invariants.
"""

from __future__ import annotations

import json
import os
import re
import time
from dataclasses import asdict, dataclass, field as dc_field
from pathlib import Path
from random import Random

from automref.automizer import automizer_action
from automref.cohom import (ObstructionReport, multiplier_p_part_rank,
                            obstruction_consistency, solomon_check)
from automref.ffield import FieldDesc, field
from automref.fmatrix import Mat, MatGroup
from automref.groups import (abelian_structure, alternating,
                             centralizer_of_subgroup, direct_product,
                             normalizer_of_subgroup, sylow_subgroup, symmetric,
                             wreath_product, DEFAULT_ORBIT_CAP)
from automref.perm import PermGroup, Permutation, parse_permutation
from automref.reflect import (fingerprint, reflection_subgroup, reflections_of,
                              fixed_space_of_group, is_irreducible)
from automref.semilinear import find_k_structure, push_to_prime_field, restrict_to_k

DATA_ENV_VAR = "AUTOMREF_DATA"


class ConstructError(ValueError):
    pass


class IngestError(ValueError):
    pass


class NonAbelianSylow(RuntimeError):
    def __init__(self, p: int):
        super().__init__(f"the Sylow {p}-subgroup is not abelian; "
                         "the analysis applies to abelian Sylow subgroups only")


def default_data_dir() -> Path:
    env = os.environ.get(DATA_ENV_VAR)
    if env:
        return Path(env)
    return Path(__file__).parent / "data"


# ------------------------------------------------------------- constructors

def _projective_points(K: FieldDesc, dim: int) -> list[tuple[int, ...]]:
    """Canonical projective points: first nonzero coordinate scaled to 1."""
    pts = []

    def rec(prefix, started):
        if len(prefix) == dim:
            if started:
                pts.append(tuple(prefix))
            return
        if not started:
            rec(prefix + [0], False)
            rec(prefix + [1], True)
        else:
            for a in range(K.size):
                rec(prefix + [a], True)

    rec([], False)
    return pts


def _projective_perm(K: FieldDesc, pts, index, M: Mat) -> Permutation:
    images = []
    for v in pts:
        w = M.apply(v)
        lead = next(x for x in w if x)
        inv = K.inv(lead)
        images.append(index[tuple(K.mul(inv, x) for x in w)])
    return Permutation(images)


def _primitive_element(K: FieldDesc) -> int:
    return next(a for a in range(1, K.size) if K.element_order(a) == K.size - 1)


def psl2(q_spec: int | tuple[int, int], extend: bool = False) -> PermGroup:
    """PSL2(q) on the q+1 projective points; extend=True adjoins the
    diagonal and field-automorphism outer parts of p'-order (the H-tilde of
    the classification rows)."""
    K = _field_of(q_spec)
    q, p, n = K.size, K.p, K.n
    pts = _projective_points(K, 2)
    index = {v: i for i, v in enumerate(pts)}
    alpha = _primitive_element(K)
    # root elements over a basis of the field generate SL2(q)
    coeffs = [K.pow(alpha, i) for i in range(n)]
    gens = [_projective_perm(K, pts, index, Mat(K, [[1, c], [0, 1]])) for c in coeffs]
    gens += [_projective_perm(K, pts, index, Mat(K, [[1, 0], [c, 1]])) for c in coeffs]
    name = f"PSL2({q})"
    expected = q * (q * q - 1) // (2 if q % 2 else 1)
    if extend:
        diag = field_part = 1
        if q % 2:  # diagonal outer class, a p'-extension for odd q
            gens.append(_projective_perm(K, pts, index, Mat(K, [[alpha, 0], [0, 1]])))
            diag = 2
        m = n
        while m % p == 0:
            m //= p
        if m > 1:
            frob_pow = p ** max(n // m, 1)  # p-part of n stays inside
            images = []
            for v in pts:
                w = tuple(K.pow(x, frob_pow) for x in v)
                lead = next(x for x in w if x)
                inv = K.inv(lead)
                images.append(index[tuple(K.mul(inv, x) for x in w)])
            gens.append(Permutation(images))
            field_part = m
        expected *= diag * field_part
        if diag > 1 and field_part > 1:
            name = f"PGammaL2({q})"
        elif diag > 1:
            name = f"PGL2({q})"
        elif field_part > 1:
            name = f"PSL2({q}).{field_part}"
    G = PermGroup(q + 1, gens, name=name)
    if G.order() != expected:
        raise ConstructError(f"{name}: order {G.order()}, expected {expected}")
    return G


def psl3(q_spec: int | tuple[int, int]) -> PermGroup:
    """PSL3(q) acting on the q^2+q+1 points of the projective plane."""
    K = _field_of(q_spec)
    q = K.size
    if q > 16:
        raise ConstructError("PSL3 constructor supports q <= 16")
    pts = _projective_points(K, 3)
    index = {v: i for i, v in enumerate(pts)}
    alpha = _primitive_element(K)

    def transvection(i, j, c):
        rows = [[1 if r == s else 0 for s in range(3)] for r in range(3)]
        rows[i][j] = c
        return Mat(K, rows)

    mats = [transvection(0, 1, K.pow(alpha, i)) for i in range(K.n)]
    mats += [transvection(1, 0, K.pow(alpha, i)) for i in range(K.n)]
    mats.append(Mat(K, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]))
    gens = [_projective_perm(K, pts, index, M) for M in mats]
    from math import gcd
    expected = q ** 3 * (q ** 3 - 1) * (q ** 2 - 1) // gcd(3, q - 1)
    G = PermGroup(len(pts), gens, name=f"PSL3({q})")
    if G.order() != expected:
        raise ConstructError(f"PSL3({q}): order {G.order()}, expected {expected}")
    return G


def _field_of(q_spec) -> FieldDesc:
    if isinstance(q_spec, tuple):
        return field(*q_spec)
    q = int(q_spec)
    for p in range(2, q + 1):
        if q % p == 0:
            n = 0
            m = q
            while m % p == 0:
                m //= p
                n += 1
            if m != 1:
                raise ConstructError(f"{q} is not a prime power")
            return field(p, n)
    raise ConstructError(f"{q} is not a prime power")


def cyclic(n: int) -> PermGroup:
    return PermGroup(n, [Permutation([(i + 1) % n for i in range(n)])],
                     name=f"Cyclic({n})")


def ingest_generators(path: str | Path) -> PermGroup:
    """Read a generator file; a present order annotation is verified hard."""
    path = Path(path)
    if not path.exists():
        raise IngestError(f"no such generator file: {path}")
    degree = None
    order = None
    gens = []
    for ln, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("degree"):
            degree = int(line.split()[1])
        elif line.startswith("order"):
            order = int(line.split()[1])
        else:
            if degree is None:
                raise IngestError(f"{path}:{ln}: generator before the degree line")
            try:
                gens.append(parse_permutation(line, degree))
            except Exception as exc:
                raise IngestError(f"{path}:{ln}: {exc}") from exc
    if degree is None:
        raise IngestError(f"{path}: missing degree line")
    G = PermGroup(degree, gens, name=path.stem)
    if order is not None and G.order() != order:
        raise IngestError(f"{path}: group order {G.order()} does not match "
                          f"the annotation {order}; corrupted generators?")
    return G


_SPEC_RE = re.compile(r"^\s*([A-Za-z][A-Za-z0-9.]*)\s*[:(]\s*([^()]*)\s*\)?\s*$")


def construct(spec: str, data_dir: Path | None = None) -> PermGroup:
    """Build a group from a textual spec such as ``Sym:10`` or ``PSL2(9)``.

    Recognized: Sym:n, Alt:n, Cyclic:n, PSL2:q, PSL2ext:q, PSL3:q,
    File:path-or-name, DirectProduct:specA|specB, Wreath:spec|r.
    """
    spec = spec.strip()
    m = _SPEC_RE.match(spec)
    if not m:
        raise ConstructError(f"unrecognized group spec {spec!r}")
    head, arg = m.group(1), m.group(2).strip()
    head_l = head.lower()
    if head_l == "sym":
        return symmetric(int(arg))
    if head_l == "alt":
        return alternating(int(arg))
    if head_l == "cyclic":
        return cyclic(int(arg))
    if head_l == "psl2":
        return psl2(int(arg))
    if head_l in ("psl2ext", "pgammal2"):
        return psl2(int(arg), extend=True)
    if head_l == "psl3":
        return psl3(int(arg))
    if head_l == "file":
        path = Path(arg)
        if not path.exists():
            path = (data_dir or default_data_dir()) / arg
            if not path.exists() and not arg.endswith(".grp"):
                path = (data_dir or default_data_dir()) / f"{arg}.grp"
        return ingest_generators(path)
    if head_l == "directproduct":
        parts = [s.strip() for s in arg.split("|")]
        if len(parts) != 2:
            raise ConstructError("DirectProduct takes two specs separated by |")
        return direct_product(construct(parts[0], data_dir),
                              construct(parts[1], data_dir))
    if head_l == "wreath":
        parts = [s.strip() for s in arg.split("|")]
        if len(parts) != 2:
            raise ConstructError("Wreath takes a spec and a copy count")
        return wreath_product(construct(parts[0], data_dir), int(parts[1]))
    raise ConstructError(f"unrecognized group spec {spec!r}")


# ------------------------------------------------------------------ reports

@dataclass
class AnalysisReport:
    group: str
    p: int
    seed: int
    order_G: int
    order_P: int
    abelian_invariants: list
    homocyclic: bool
    order_N: int
    order_C: int
    order_E: int
    K_p: int
    K_m: int
    dim_K: int
    order_W: int
    identification: str
    index_N_over_W: int
    order_Gamma: int
    irreducible_over_K: bool
    fixed_dim_over_K: int
    reflections_over_Fp: int
    order_W_over_Fp: int
    fixed_dim_over_Fp: int
    irreducible_E_over_Fp: bool
    obstruction_total: int | None
    obstruction_consistent: bool | None
    solomon_ok: bool | None
    structures_found: int
    seconds: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    @staticmethod
    def from_json(text: str) -> "AnalysisReport":
        return AnalysisReport(**json.loads(text))

    def table_row(self) -> str:
        kname = f"F{self.K_p ** self.K_m}"
        return (f"{self.group:<12} {kname:<6} {self.dim_K:>5} "
                f"{self.identification:<12} {self.index_N_over_W:>4} "
                f"{self.order_Gamma:>5}")

    TABLE_HEADER = (f"{'group':<12} {'K':<6} {'dim_K':>5} "
                    f"{'W':<12} {'N/W':>4} {'Gamma':>5}")


@dataclass
class ProductReport:
    p: int
    factors: list
    K_factors: list          # (p, m) per factor
    total_dim_K: int
    fixed_dim_total: int
    fixed_space_trivial: bool
    obstruction_total: int | None


def combine_reports(reports: list[AnalysisReport]) -> ProductReport:
    """Componentwise combination for a direct product of analyzed factors."""
    if not reports:
        raise ValueError("no factor reports")
    p = reports[0].p
    if any(r.p != p for r in reports):
        raise ValueError("mismatched primes in factor reports")
    totals = [r.obstruction_total for r in reports]
    obstruction = None if any(t is None for t in totals) else sum(totals)
    fixed = sum(r.fixed_dim_over_Fp for r in reports)
    return ProductReport(
        p=p,
        factors=[r.group for r in reports],
        K_factors=[(r.K_p, r.K_m) for r in reports],
        total_dim_K=sum(r.dim_K for r in reports),
        fixed_dim_total=fixed,
        fixed_space_trivial=(fixed == 0),
        obstruction_total=obstruction)


# ----------------------------------------------------------------- pipeline

class AnalysisError(RuntimeError):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"analysis failed at stage {stage!r}: {cause}")
        self.stage = stage
        self.cause = cause


def analyze(G: PermGroup, p: int, seed: int = 0,
            orbit_cap: int = DEFAULT_ORBIT_CAP,
            k_preference: str = "auto",
            keep_objects: bool = False,
            progress=None) -> AnalysisReport:
    """Full pipeline: Sylow, automizer, K-structure, reflections, obstructions.

    k_preference chooses among coexisting K-structures ("auto" keeps F_p when
    the F_p-reflection subgroup is already irreducible; "largest" maximizes
    the field, the presentation used for the PSL2 rows).
    """
    rng = Random(seed)
    t0 = time.time()

    def step(stage, fn):
        if progress:
            progress(stage)
        try:
            return fn()
        except (NonAbelianSylow, AnalysisError):
            raise
        except Exception as exc:
            raise AnalysisError(stage, exc) from exc

    order_G = step("group order", G.order)
    P = step("sylow", lambda: sylow_subgroup(G, p, rng, cap=orbit_cap))
    if not P.is_abelian():
        raise NonAbelianSylow(p)
    st = step("abelian structure", lambda: abelian_structure(P, p))
    N = step("normalizer", lambda: normalizer_of_subgroup(G, P, cap=orbit_cap, rng=rng))
    C = step("centralizer", lambda: centralizer_of_subgroup(G, P, cap=orbit_cap, rng=rng))
    act = step("automizer", lambda: automizer_action(G, P, N, C, st))
    E = act.E

    refl_p, unip_p = step("reflections over Fp", lambda: reflections_of(E))
    if unip_p:
        raise AnalysisError("reflections over Fp",
                            RuntimeError("unipotent reflection inside a p'-automizer"))
    analysis_p = step("reflection subgroup over Fp", lambda: reflection_subgroup(E))

    dec = step("K-structure", lambda: find_k_structure(E, prefer=k_preference))
    NK = step("restrict to K", lambda: restrict_to_k(E, dec))
    analysis_K = step("reflection subgroup over K", lambda: reflection_subgroup(NK))

    # consistency: W over K, pushed back to F_p matrices, must land inside E
    def push_check():
        e_set = set(E.elements())
        for w in analysis_K.W.elements():
            if push_to_prime_field(dec, w, E.dim) not in e_set:
                raise RuntimeError("K-side reflection leaves E over F_p")
    step("push-back consistency", push_check)

    obstruction = None
    if p > 2:
        obstruction = step("multiplier obstruction",
                           lambda: multiplier_p_part_rank(E, p))
        step("obstruction consistency",
             lambda: obstruction_consistency(obstruction, analysis_p.fixed_dim))
        solomon = step("solomon identity", lambda: solomon_check(analysis_p.W))
    else:
        solomon = None

    order_E = act.order_E
    order_W = analysis_K.order_W
    index_nw = analysis_K.index_N_over_W
    gamma = dec.gamma_order
    if order_E != order_W * index_nw * gamma:
        raise AnalysisError("report algebra",
                            RuntimeError(f"|E| = {order_E} but |W|*[N:W]*|Gamma| = "
                                         f"{order_W * index_nw * gamma}"))

    report = AnalysisReport(
        group=G.name or f"degree-{G.degree} group",
        p=p,
        seed=seed,
        order_G=order_G,
        order_P=P.order(),
        abelian_invariants=[p ** e for e in st.exponents],
        homocyclic=st.homocyclic,
        order_N=N.order(),
        order_C=C.order(),
        order_E=order_E,
        K_p=p,
        K_m=dec.m,
        dim_K=E.dim // dec.m,
        order_W=order_W,
        identification=analysis_K.identification,
        index_N_over_W=index_nw,
        order_Gamma=gamma,
        irreducible_over_K=analysis_K.irreducible,
        fixed_dim_over_K=analysis_K.fixed_dim,
        reflections_over_Fp=len(refl_p),
        order_W_over_Fp=analysis_p.order_W,
        fixed_dim_over_Fp=analysis_p.fixed_dim,
        irreducible_E_over_Fp=is_irreducible(E),
        obstruction_total=obstruction.total if obstruction else None,
        obstruction_consistent=obstruction.consistent if obstruction else None,
        solomon_ok=solomon,
        structures_found=dec.structures_found,
        seconds=round(time.time() - t0, 3))
    if keep_objects:
        report._objects = dict(G=G, P=P, structure=st, N=N, C=C, E=E,
                               decomposition=dec, NK=NK,
                               analysis_Fp=analysis_p, analysis_K=analysis_K,
                               obstruction=obstruction)
    return report


# -------------------------------------------------------------------- table

# expected classification-row values: K_m, dim_K, W name, |W|, N/W, |Gamma|;
# the PSL2 rows use the largest-field presentation (K = F_q)
TABLE_ROWS = [
    ("File:j1.grp", 2, "auto", dict(K_m=3, dim_K=1, identification="cyclic-7",
                                    order_W=7, index_N_over_W=1, order_Gamma=3)),
    ("File:m11.grp", 3, "auto", dict(K_m=1, dim_K=2, identification="B2",
                                     order_W=8, index_N_over_W=2, order_Gamma=1)),
    ("File:m23.grp", 3, "auto", dict(K_m=1, dim_K=2, identification="B2",
                                     order_W=8, index_N_over_W=2, order_Gamma=1)),
    ("File:hs2.grp", 3, "auto", dict(K_m=1, dim_K=2, identification="B2",
                                     order_W=8, index_N_over_W=2, order_Gamma=1)),
    ("File:j22.grp", 5, "auto", dict(K_m=1, dim_K=2, identification="G2",
                                     order_W=12, index_N_over_W=2, order_Gamma=1)),
    ("Sym:10", 5, "auto", dict(K_m=1, dim_K=2, identification="wreath(5,2)",
                               order_W=32, index_N_over_W=1, order_Gamma=1)),
    ("PSL2ext:8", 2, "largest", dict(K_m=3, dim_K=1, identification="cyclic-7",
                                     order_W=7, index_N_over_W=1, order_Gamma=3)),
    ("PSL2ext:9", 3, "largest", dict(K_m=2, dim_K=1, identification="cyclic-8",
                                     order_W=8, index_N_over_W=1, order_Gamma=2)),
]


def run_table(data_dir: Path | None = None, seed: int = 0,
              orbit_cap: int = DEFAULT_ORBIT_CAP, progress=None):
    """Analyze every feasible catalog row; returns (reports, mismatches)."""
    reports = []
    mismatches = []
    for spec, p, pref, expected in TABLE_ROWS:
        if progress:
            progress(f"analyzing {spec} at p={p}")
        G = construct(spec, data_dir)
        rep = analyze(G, p, seed=seed, orbit_cap=orbit_cap,
                      k_preference=pref, progress=progress)
        reports.append(rep)
        for key, want in expected.items():
            got = getattr(rep, key)
            if got != want:
                mismatches.append(f"{spec} p={p}: {key} = {got}, expected {want}")
        if not rep.irreducible_over_K:
            mismatches.append(f"{spec} p={p}: W not irreducible over K")
    return reports, mismatches
