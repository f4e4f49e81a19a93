"""Desk-scale census: classify both sides and verify the equivalence.

Factorizations are enumerated as flags of x-stable graded subspaces of the
free cover R^m of X^l: the preimage in S^m of such a flag is a chain of
free submodules containing x^d S^m, which is exactly a graded factorization
up to isomorphism.  Chains of monomorphisms are enumerated the same way as
subspace flags of a top module.  Class lists are deduplicated with the iso
tests, filtered to indecomposable nonprojective objects, canonicalized by
degree shift, and matched under cok.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg
from .chains import (
    MonoChain,
    chain_hom_basis,
    chain_iso_test,
    chain_projective_test,
    chain_stable_hom_dim,
)
from .factorizations import (
    Factorization,
    _facmap_to_vector,
    _hom_slots,
    adjunction_transport,
    fac_hom_basis,
    fac_iso_test,
    fac_projective_test,
    fac_stable_hom_dim,
    fac_validate,
)
from .fields import PrimeField
from .functors import cok, reconstruct, span_preimage_inclusion
from .modules import (
    HypersurfaceConfig,
    ModuleMap,
    RModule,
    realization_to_module,
    subspace_realization,
)
from .polymat import GradedMatrix, PolyMatrix, solve_right


class MatchFailure(Exception):
    """The census bijection or hom table failed: an implementation bug."""


@dataclass(frozen=True)
class Bounds:
    """m: max factorization rank; dim: max module dimension; window: max
    generator degree of the top object (minimum is normalized to 0)."""

    m: int
    dim: int
    window: int

    def __post_init__(self):
        if self.m < 0 or self.dim < 0 or self.window < 0:
            raise ValueError("bounds must be nonnegative")

    @classmethod
    def parse(cls, text: str) -> "Bounds":
        vals = {}
        for part in text.split(","):
            key, _, num = part.partition("=")
            if key.strip() not in ("m", "dim", "window") or not num.strip().isdigit():
                raise ValueError(f"bad bounds component {part!r}")
            vals[key.strip()] = int(num)
        missing = {"m", "dim", "window"} - set(vals)
        if missing:
            raise ValueError(f"bounds missing {sorted(missing)}")
        return cls(**vals)

    def to_json(self):
        return {"m": self.m, "dim": self.dim, "window": self.window}


# subspace enumeration over a finite field ------------------------------------


def _field_elements(field):
    if not isinstance(field, PrimeField):
        raise ValueError("census enumeration requires a finite prime field")
    return [field.from_int(n) for n in range(field.p)]


def _all_subspaces(field, n, elements):
    """Bases (as row lists) of every subspace of F^n, via unique RREFs."""
    out = [[]]
    for r in range(1, n + 1):
        for pivots in itertools.combinations(range(n), r):
            free = [
                (i, j)
                for i in range(r)
                for j in range(n)
                if j > pivots[i] and j not in pivots
            ]
            for vals in itertools.product(elements, repeat=len(free)):
                rows = [[field.zero] * n for _ in range(r)]
                for i, p in enumerate(pivots):
                    rows[i][p] = field.one
                for (i, j), v in zip(free, vals):
                    rows[i][j] = v
                out.append(rows)
    return out


def _subspaces_containing(field, n, lower, elements):
    """All subspaces of F^n containing span(lower)."""
    ech = linalg.Echelon(field)
    for v in lower:
        ech.add(v)
    base = [list(v) for v in ech.rows]
    pivots = set(ech.pivots)
    free_cols = [j for j in range(n) if j not in pivots]
    out = []
    for quot in _all_subspaces(field, len(free_cols), elements):
        vecs = [list(v) for v in base]
        for qv in quot:
            w = [field.zero] * n
            for idx, j in enumerate(free_cols):
                w[j] = qv[idx]
            vecs.append(w)
        out.append(vecs)
    return out


def stable_graded_subspaces(field, degs, xmat):
    """All x-stable homogeneous subspaces of a graded realization.

    Returned as lists of ambient vectors; enumeration walks the degrees
    upward, at each level listing the subspaces containing the x-image of
    the level below.
    """
    elements = _field_elements(field)
    by_deg = {}
    for i, s in enumerate(degs):
        by_deg.setdefault(s, []).append(i)
    levels = sorted(by_deg)
    results = []

    def rec(li, lower, chosen):
        if li == len(levels):
            results.append([v for level in chosen for v in level])
            return
        cols = by_deg[levels[li]]
        n = len(cols)
        lower_local = [[v[c] for c in cols] for v in lower]
        for local in _subspaces_containing(field, n, lower_local, elements):
            ambient = []
            for lv in local:
                w = [field.zero] * len(degs)
                for idx, c in enumerate(cols):
                    w[c] = lv[idx]
                ambient.append(w)
            nxt = []
            if li + 1 < len(levels) and levels[li + 1] == levels[li] + 1:
                nxt = [linalg.mat_vec(field, xmat, w) for w in ambient]
            rec(li + 1, nxt, chosen + [ambient])

    rec(0, [], [])
    return results


def _span_contains(field, ech, vecs):
    return all(ech.contains(v) for v in vecs)


def _echelons(field, spaces):
    out = []
    for vecs in spaces:
        ech = linalg.Echelon(field)
        for v in vecs:
            ech.add(v)
        out.append(ech)
    return out


# factorization enumeration -----------------------------------------------------


def _sorted_degree_vectors(m, window):
    """Weakly decreasing vectors of length m in [0, window] with min 0."""
    if m == 0:
        return [()]
    out = []
    for vec in itertools.combinations_with_replacement(range(window + 1), m):
        if vec[0] == 0:
            out.append(tuple(reversed(vec)))
    return out


def _flag_factorization(cfg, degs_l, flag) -> Factorization:
    """The factorization with X^k the preimage of the k-th flag subspace."""
    F = cfg.field
    m = len(degs_l)
    if m == 0:
        empty = GradedMatrix(PolyMatrix(F, []), [], [], check=False)
        out = fac_validate([empty] * len(flag), cfg)
        assert isinstance(out, Factorization)
        return out
    incls = [span_preimage_inclusion(cfg, list(degs_l), vecs) for vecs in flag]
    incls.append(GradedMatrix.identity(F, list(degs_l)))
    maps = []
    for k in range(len(flag)):
        a = solve_right(incls[k + 1].mat, incls[k].mat)
        maps.append(GradedMatrix(a, incls[k].src_degs, incls[k + 1].src_degs))
    out = fac_validate(maps, cfg)
    assert isinstance(out, Factorization), f"flag factorization invalid: {out}"
    assert m == out.m
    return out


def _fac_fingerprint(x: Factorization):
    return tuple(tuple(sorted(x.degs(k))) for k in range(x.l + 1))


def _dedup(objs, fingerprint, iso):
    groups = {}
    kept = []
    for obj in objs:
        key = fingerprint(obj)
        reps = groups.setdefault(key, [])
        if any(iso(obj, rep) for rep in reps):
            continue
        reps.append(obj)
        kept.append(obj)
    return kept


def enumerate_factorizations(cfg: HypersurfaceConfig, l: int, m_max: int,
                             window: int):
    """All (l+1)-factor factorizations up to iso and shift, within bounds.

    Ranks run to m_max and the last degree vector over [0, window]
    normalized to minimum 0; every valid graded factorization with those
    invariants appears exactly once.
    """
    F = cfg.field
    raw = []
    for m in range(m_max + 1):
        for degs_l in _sorted_degree_vectors(m, window):
            if m == 0:
                raw.append(_flag_factorization(cfg, degs_l, [[]] * l))
                continue
            free = RModule.free(cfg, list(degs_l))
            spaces = stable_graded_subspaces(F, free.basis_degrees(),
                                             free.x_matrix())
            echs = _echelons(F, spaces)
            for chain in _subspace_flags(F, spaces, echs, l):
                raw.append(_flag_factorization(cfg, degs_l, chain))
    raw = [x.shift(-x.min_degree()) for x in raw]
    return _dedup(raw, _fac_fingerprint, lambda a, b: fac_iso_test(a, b))


def _subspace_flags(field, spaces, echs, length):
    """All weakly increasing chains (V_0 <= ... <= V_{length-1}) of spaces."""
    n = len(spaces)
    contains = [
        [_span_contains(field, echs[j], spaces[i]) for j in range(n)]
        for i in range(n)
    ]
    out = []

    def rec(start_ok, depth, acc):
        if depth == length:
            out.append([spaces[i] for i in acc])
            return
        for j in start_ok:
            rec([k for k in start_ok if contains[j][k]], depth + 1, acc + [j])

    rec(list(range(n)), 0, [])
    return out


# chain enumeration -----------------------------------------------------------


def _top_modules(cfg: HypersurfaceConfig, dim_max: int, window: int):
    """Sorted summand lists with total dimension <= dim_max, degrees in the
    window; includes the zero module."""
    types = [(e, s) for e in range(1, cfg.d + 1) for s in range(window + 1)]
    out = []

    def rec(start, left, acc):
        out.append(RModule(cfg, acc))
        for i in range(start, len(types)):
            e, s = types[i]
            if e <= left:
                rec(i, left - e, acc + [types[i]])

    rec(0, dim_max, [])
    return out


def _factor_realization(field, big, small):
    """R with big @ R = small, both realization matrices (columnwise)."""
    cols = len(small[0]) if small else 0
    rows = len(big[0]) if big else 0
    out = [[field.zero] * cols for _ in range(rows)]
    for j in range(cols):
        sol = linalg.solve(field, big, [small[r][j] for r in range(len(small))])
        assert sol is not None, "flag member does not factor"
        for i in range(rows):
            out[i][j] = sol[i]
    return out


def _flag_chain(cfg: HypersurfaceConfig, top: RModule, flag) -> MonoChain:
    """The chain of submodules V_1 >-> ... >-> V_{l-1} >-> top."""
    F = cfg.field
    degs, xm = top.basis_degrees(), top.x_matrix()
    pairs = []
    for vecs in flag:
        sdegs, sx, incl = subspace_realization(F, degs, xm, vecs)
        mod, to_real, _ = realization_to_module(cfg, sdegs, sx)
        pairs.append((mod, linalg.mat_mul(F, incl, to_real)))
    pairs.append((top, linalg.identity(F, top.dim)))
    maps = []
    for (m0, i0), (m1, i1) in zip(pairs, pairs[1:]):
        real = _factor_realization(F, i1, i0)
        maps.append(ModuleMap.from_realization(m0, m1, real))
    return MonoChain(cfg, [m for m, _ in pairs], maps)


def _chain_fingerprint(u: MonoChain):
    return tuple(obj.sorted_summands() for obj in u.objects)


def enumerate_chains(cfg: HypersurfaceConfig, l: int, dim_max: int,
                     window: int):
    """All chains of l-1 monos up to iso and shift, top dimension <= dim_max
    and top generator degrees over [0, window] normalized to minimum 0."""
    F = cfg.field
    raw = []
    for top in _top_modules(cfg, dim_max, window):
        if l == 1:
            raw.append(MonoChain(cfg, [top], []))
            continue
        spaces = stable_graded_subspaces(F, top.basis_degrees(),
                                         top.x_matrix())
        echs = _echelons(F, spaces)
        for flag in _subspace_flags(F, spaces, echs, l - 1):
            raw.append(_flag_chain(cfg, top, flag))
    raw = [u.shift(-u.min_degree()) for u in raw]
    return _dedup(raw, _chain_fingerprint, lambda a, b: chain_iso_test(a, b))


# indecomposability ------------------------------------------------------------


def _indecomposables(pool, size, max_degree, shift, iso):
    """Members of pool not isomorphic to a shifted sum of two members.

    Sound because the pool is exhaustive within its bounds and any direct
    summand of a pool member again lies within them.
    """
    out = []
    for obj in pool:
        if size(obj) == 0:
            continue
        hi = max_degree(obj)
        split = False
        for a, b in itertools.product(pool, repeat=2):
            if size(a) == 0 or size(b) == 0:
                continue
            if size(a) + size(b) != size(obj):
                continue
            for sa in range(hi + 1):
                for sb in range(hi + 1):
                    if iso(obj, shift(a, sa).direct_sum(shift(b, sb))):
                        split = True
                        break
                if split:
                    break
            if split:
                break
        if not split:
            out.append(obj)
    return out


# the census itself ------------------------------------------------------------


@dataclass(frozen=True)
class CensusReport:
    d: int
    l: int
    field_name: str
    bounds: Bounds
    fac_classes: list
    chain_classes: list
    matching: list  # (fac index, chain index) pairs
    fac_hom_table: list
    chain_hom_table: list

    def to_json(self):
        return {
            "d": self.d,
            "l": self.l,
            "field": self.field_name,
            "bounds": self.bounds.to_json(),
            "fac_classes": [x.to_json() for x in self.fac_classes],
            "chain_classes": [u.to_json() for u in self.chain_classes],
            "matching": [list(p) for p in self.matching],
            "fac_hom_table": self.fac_hom_table,
            "chain_hom_table": self.chain_hom_table,
        }

    def to_table(self) -> str:
        lines = [
            f"census  d={self.d}  l={self.l}  field={self.field_name}  "
            f"bounds(m={self.bounds.m}, dim={self.bounds.dim}, "
            f"window={self.bounds.window})",
            f"factorization classes: {len(self.fac_classes)}",
            f"chain classes:         {len(self.chain_classes)}",
            f"matched pairs:         {len(self.matching)}",
        ]
        for i, j in self.matching:
            x = self.fac_classes[i]
            u = self.chain_classes[j]
            degs = " | ".join(
                ",".join(str(s) for s in x.degs(k)) for k in range(x.l + 1)
            )
            objs = " >-> ".join(
                "+".join(f"R/x^{e}({-s})" for e, s in o.summands) or "0"
                for o in u.objects
            )
            lines.append(f"  fac[{i}] degs [{degs}]  <->  chain[{j}] {objs}")
        lines.append("stable hom table (factorization side = chain side):")
        for row in self.fac_hom_table:
            lines.append("  " + " ".join(f"{v:2d}" for v in row))
        return "\n".join(lines)


def _chain_in_bounds(u: MonoChain, bounds: Bounds) -> bool:
    top = u.objects[-1]
    if top.dim > bounds.dim:
        return False
    return all(s <= bounds.window for _, s in top.summands)


def _fac_in_bounds(x: Factorization, bounds: Bounds) -> bool:
    if x.m > bounds.m:
        return False
    return all(s <= bounds.window for s in x.degs(x.l))


def class_census(cfg: HypersurfaceConfig, l: int, bounds: Bounds,
                 seed: int = 0) -> CensusReport:
    """Classify both sides, match them under cok, compare stable hom tables.

    Classes are indecomposable nonprojective objects up to iso and shift.
    A class may stay unmatched only when its partner falls outside the
    given bounds; any other mismatch raises MatchFailure.
    """
    facs = enumerate_factorizations(cfg, l, bounds.m, bounds.window)
    facs = _indecomposables(
        facs,
        size=lambda x: x.m,
        max_degree=lambda x: max(
            (s for k in range(x.l + 1) for s in x.degs(k)), default=0
        ),
        shift=lambda x, t: x.shift(t),
        iso=lambda a, b: a.m == b.m and fac_iso_test(a, b, seed=seed),
    )
    facs = [x for x in facs if not fac_projective_test(x)]
    chains = enumerate_chains(cfg, l, bounds.dim, bounds.window)
    chains = _indecomposables(
        chains,
        size=lambda u: u.objects[-1].dim,
        max_degree=lambda u: max(
            (s for o in u.objects for _, s in o.summands), default=0
        ),
        shift=lambda u, t: u.shift(t),
        iso=lambda a, b: chain_iso_test(a, b, seed=seed),
    )
    chains = [u for u in chains if not chain_projective_test(u)]

    coks = [cok(x) for x in facs]
    canon = [u.shift(-u.min_degree()) for u in coks]
    matching = []
    taken = {}
    for i, u in enumerate(canon):
        hits = [j for j, v in enumerate(chains) if chain_iso_test(u, v, seed=seed)]
        if len(hits) > 1:
            raise MatchFailure(f"fac class {i}: cok matches chains {hits}")
        if not hits:
            if _chain_in_bounds(u, bounds):
                raise MatchFailure(
                    f"fac class {i}: cok in bounds but not in the chain census"
                )
            continue
        j = hits[0]
        if j in taken:
            raise MatchFailure(
                f"fac classes {taken[j]} and {i} both map to chain class {j}"
            )
        taken[j] = i
        matching.append((i, j))
    for j, v in enumerate(chains):
        if j in taken:
            continue
        x = reconstruct(v)
        x = x.shift(-x.min_degree())
        if _fac_in_bounds(x, bounds):
            raise MatchFailure(
                f"chain class {j}: reconstruction in bounds but unmatched"
            )

    n = len(facs)
    fac_table = [[fac_stable_hom_dim(facs[i], facs[j]) for j in range(n)]
                 for i in range(n)]
    chain_table = [[chain_stable_hom_dim(coks[i], coks[j]) for j in range(n)]
                   for i in range(n)]
    if fac_table != chain_table:
        raise MatchFailure(
            f"stable hom tables differ: {fac_table} vs {chain_table}"
        )
    return CensusReport(
        d=cfg.d,
        l=l,
        field_name=repr(cfg.field),
        bounds=bounds,
        fac_classes=facs,
        chain_classes=chains,
        matching=matching,
        fac_hom_table=fac_table,
        chain_hom_table=chain_table,
    )


# hom-dimension comparison ------------------------------------------------------


def hom_dim_compare(x: Factorization, y: Factorization):
    """(lhs, rhs, equal): Hom in Fac modulo nu^l-objects vs Hom of cokernels.

    Maps factoring through a nu^l object are exactly those factoring
    through the counit nu^l(Y^0) -> Y.
    """
    F = x.cfg.field
    homs = fac_hom_basis(x, y)
    slots = _hom_slots(x, y)
    full = linalg.Echelon(F)
    for h in homs:
        full.add(_facmap_to_vector(h, slots))
    j = adjunction_transport(
        "nu_l_left", y, GradedMatrix.identity(F, y.degs(0)), forward=False
    )
    through = linalg.Echelon(F)
    for g in fac_hom_basis(x, j.src):
        through.add(_facmap_to_vector(j @ g, slots))
    lhs = full.dim - through.dim
    rhs = len(chain_hom_basis(cok(x), cok(y)))
    return lhs, rhs, lhs == rhs
