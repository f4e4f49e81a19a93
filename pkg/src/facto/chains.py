"""The monomorphism category of graded R-modules.

A `MonoChain` is a diagram U^1 >-> U^2 >-> ... >-> U^n of monomorphisms of
graded k[x]/(x^d)-modules.  A length-0 chain (one object, no maps) is the
plain module category, so the 2-factor case needs no special-casing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import linalg
from .modules import (
    HypersurfaceConfig,
    ModuleMap,
    RModule,
    hom_basis,
    is_mono_epi,
    map_ker_cok_im,
    module_iso,
    projective_cover,
)


@dataclass(frozen=True)
class ChainViolation:
    index: int
    reason: str

    def __bool__(self):
        return False


class MonoChain:
    """n objects and n-1 connecting monomorphisms."""

    __slots__ = ("cfg", "objects", "maps")

    def __init__(self, cfg: HypersurfaceConfig, objects, maps, check: bool = True):
        self.cfg = cfg
        self.objects = tuple(objects)
        self.maps = tuple(maps)
        if not self.objects:
            raise ValueError("a chain needs at least one object")
        if len(self.maps) != len(self.objects) - 1:
            raise ValueError("need exactly one map per consecutive pair")
        if check:
            bad = chain_validate(self)
            if bad is not True:
                raise ValueError(f"invalid chain at {bad.index}: {bad.reason}")

    @property
    def length(self) -> int:
        return len(self.objects)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.objects)

    def total_dim(self) -> int:
        return sum(m.dim for m in self.objects)

    def shift(self, t: int) -> "MonoChain":
        objs = [m.shift(t) for m in self.objects]
        maps = [
            ModuleMap(objs[i], objs[i + 1], f.blocks, check=False)
            for i, f in enumerate(self.maps)
        ]
        return MonoChain(self.cfg, objs, maps, check=False)

    def direct_sum(self, other: "MonoChain") -> "MonoChain":
        if other.length != self.length:
            raise ValueError("chain lengths differ")
        objs = [a.direct_sum(b) for a, b in zip(self.objects, other.objects)]
        maps = [f.direct_sum(g) for f, g in zip(self.maps, other.maps)]
        return MonoChain(self.cfg, objs, maps, check=False)

    def min_degree(self):
        degs = [s for m in self.objects for _, s in m.summands]
        return min(degs, default=0)

    def __eq__(self, other):
        return (
            isinstance(other, MonoChain)
            and self.cfg == other.cfg
            and self.objects == other.objects
            and self.maps == other.maps
        )

    def __repr__(self):
        return "MonoChain(" + " >-> ".join(repr(m) for m in self.objects) + ")"

    def to_json(self):
        return {
            "objects": [m.to_json() for m in self.objects],
            "maps": [f.to_json() for f in self.maps],
        }

    @classmethod
    def from_json(cls, cfg: HypersurfaceConfig, data) -> "MonoChain":
        objects = [RModule.from_json(cfg, m) for m in data["objects"]]
        maps = [ModuleMap.from_json(cfg, f) for f in data["maps"]]
        return cls(cfg, objects, maps)

    @classmethod
    def zero(cls, cfg: HypersurfaceConfig, length: int) -> "MonoChain":
        z = RModule.zero(cfg)
        objs = [z] * length
        maps = [ModuleMap.zero(z, z)] * (length - 1)
        return cls(cfg, objs, maps, check=False)


def chain_validate(u: MonoChain):
    """True, or a ChainViolation locating the first failure."""
    for i, f in enumerate(u.maps):
        if f.src != u.objects[i] or f.tgt != u.objects[i + 1]:
            return ChainViolation(i, "map endpoints do not match objects")
        if not f.commutes_with_x():
            return ChainViolation(i, "map is not R-linear")
        mono, _ = is_mono_epi(f)
        if not mono:
            return ChainViolation(i, "map is not a monomorphism")
    return True


def mu_trivial(a: RModule, n: int, length: int) -> MonoChain:
    """Trivial chain: `length - n` zeros, then `a` repeated with identities."""
    if not (1 <= n <= length):
        raise ValueError("need 1 <= n <= length")
    cfg = a.cfg
    z = RModule.zero(cfg)
    objs = [z] * (length - n) + [a] * n
    maps = []
    for i in range(length - 1):
        if objs[i].is_zero():
            maps.append(ModuleMap.zero(objs[i], objs[i + 1]))
        else:
            maps.append(ModuleMap.identity(a))
    return MonoChain(cfg, objs, maps, check=False)


def iota_embed(u: MonoChain) -> MonoChain:
    """Prepend a zero object (the fully faithful extension by zero)."""
    z = RModule.zero(u.cfg)
    objs = [z] + list(u.objects)
    maps = [ModuleMap.zero(z, u.objects[0])] + list(u.maps)
    return MonoChain(u.cfg, objs, maps, check=False)


# chain maps ----------------------------------------------------------------


class ChainMap:
    """Componentwise ModuleMaps commuting with the chain monos."""

    __slots__ = ("src", "tgt", "parts")

    def __init__(self, src: MonoChain, tgt: MonoChain, parts, check: bool = True):
        if src.length != tgt.length:
            raise ValueError("chain lengths differ")
        self.src = src
        self.tgt = tgt
        self.parts = tuple(parts)
        if len(self.parts) != src.length:
            raise ValueError("need one component per object")
        if check:
            for i, f in enumerate(self.parts):
                if f.src != src.objects[i] or f.tgt != tgt.objects[i]:
                    raise ValueError(f"component {i} endpoints mismatch")
            for i in range(src.length - 1):
                lhs = tgt.maps[i] @ self.parts[i]
                rhs = self.parts[i + 1] @ src.maps[i]
                if lhs != rhs:
                    raise ValueError(f"square {i} does not commute")

    @classmethod
    def identity(cls, u: MonoChain) -> "ChainMap":
        return cls(u, u, [ModuleMap.identity(m) for m in u.objects], check=False)

    @classmethod
    def zero(cls, src: MonoChain, tgt: MonoChain) -> "ChainMap":
        parts = [ModuleMap.zero(a, b) for a, b in zip(src.objects, tgt.objects)]
        return cls(src, tgt, parts, check=False)

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(
            other.src, self.tgt,
            [f @ g for f, g in zip(self.parts, other.parts)], check=False,
        )

    def __add__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(
            self.src, self.tgt,
            [f + g for f, g in zip(self.parts, other.parts)], check=False,
        )

    def scale(self, c) -> "ChainMap":
        return ChainMap(
            self.src, self.tgt, [f.scale(c) for f in self.parts], check=False
        )

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.parts)

    def is_iso(self) -> bool:
        F = self.src.cfg.field
        for f in self.parts:
            if f.src.dim != f.tgt.dim:
                return False
            if f.src.dim and linalg.invert(F, f.realization()) is None:
                return False
        return True

    def __eq__(self, other):
        return (
            isinstance(other, ChainMap)
            and self.src == other.src
            and self.tgt == other.tgt
            and self.parts == other.parts
        )

    def to_json(self):
        return {"parts": [f.to_json() for f in self.parts]}


# hom spaces ------------------------------------------------------------------


def chain_hom_basis(u: MonoChain, v: MonoChain):
    """k-basis of ChainMaps u -> v (commuting componentwise homs)."""
    if u.cfg != v.cfg:
        raise ValueError("config mismatch")
    F = u.cfg.field
    comp_bases = [hom_basis(a, b) for a, b in zip(u.objects, v.objects)]
    offsets = [0]
    for b in comp_bases:
        offsets.append(offsets[-1] + len(b))
    total = offsets[-1]
    if total == 0:
        return []
    rows = []
    for i in range(u.length - 1):
        # v.maps[i] o f^i - f^{i+1} o u.maps[i] = 0, entrywise on realizations
        n_rows = v.objects[i + 1].dim
        n_cols = u.objects[i].dim
        if n_rows * n_cols == 0:
            continue
        cols = []
        for g in comp_bases[i]:
            m = (v.maps[i] @ g).realization()
            cols.append(("+", m))
        for g in comp_bases[i + 1]:
            m = (g @ u.maps[i]).realization()
            cols.append(("-", m))
        for r in range(n_rows):
            for c in range(n_cols):
                row = [F.zero] * total
                k = offsets[i]
                for sign, m in cols:
                    val = m[r][c]
                    row[k] = val if sign == "+" else F.neg(val)
                    k += 1
                rows.append(row)
    sols = linalg.nullspace(F, rows, cols=total)
    out = []
    for sol in sols:
        parts = []
        for i, basis in enumerate(comp_bases):
            f = ModuleMap.zero(u.objects[i], v.objects[i])
            for c, g in zip(sol[offsets[i]:offsets[i + 1]], basis):
                f = f + g.scale(c)
            parts.append(f)
        out.append(ChainMap(u, v, parts))
    return out


# projectivity -----------------------------------------------------------------


def chain_projective_test(u: MonoChain) -> bool:
    """True iff every object is free and every mono splits (free cokernel)."""
    if not all(m.is_free() for m in u.objects):
        return False
    for f in u.maps:
        _, (cok, _), _ = map_ker_cok_im(f)
        if not cok.is_free():
            return False
    return True


def chain_projective_cover(u: MonoChain):
    """(P, p): projective chain P = sum of trivial chains on the free covers.

    Component k of P is Q^0 + ... + Q^k with inclusion-as-prefix monos; the
    epi p^k = (prefix-composites o q^j)_j, one block per free cover q^j.
    """
    cfg = u.cfg
    F = cfg.field
    n = u.length
    covers = [projective_cover(m) for m in u.objects]  # (Q^k, q^k)

    objs = []
    for k in range(n):
        obj = covers[0][0]
        for j in range(1, k + 1):
            obj = obj.direct_sum(covers[j][0])
        objs.append(obj)
    maps = []
    for k in range(n - 1):
        # prefix inclusion P^k -> P^{k+1}: identity blocks on shared summands
        ns, nt = len(objs[k].summands), len(objs[k + 1].summands)
        blocks = [
            [F.one if uu == t else F.zero for t in range(ns)] for uu in range(nt)
        ]
        maps.append(ModuleMap(objs[k], objs[k + 1], blocks, check=False))
    p_chain = MonoChain(cfg, objs, maps, check=False)

    parts = []
    for k in range(n):
        # p^k = (alpha^{k-1}...alpha^j o q^j)_{j<=k} assembled column-blockwise
        pieces = []
        for j in range(k + 1):
            g = covers[j][1]  # Q^j -> U^j
            for i in range(j, k):
                g = u.maps[i] @ g
            pieces.append(g)
        blocks = [[] for _ in u.objects[k].summands]
        for g in pieces:
            for row, grow in zip(blocks, g.blocks):
                row.extend(grow)
        parts.append(ModuleMap(objs[k], u.objects[k], blocks, check=False))
    p = ChainMap(p_chain, u, parts)
    return p_chain, p


def chain_stable_hom_dim(u: MonoChain, v: MonoChain) -> int:
    """dim Hom(u, v) modulo maps factoring through a projective chain."""
    F = u.cfg.field
    homs = chain_hom_basis(u, v)
    if not homs:
        return 0
    p_chain, p = chain_projective_cover(v)
    ech = linalg.Echelon(F)
    for g in chain_hom_basis(u, p_chain):
        h = p @ g
        ech.add([c for f in h.parts for row in f.realization() for c in row])
    return len(homs) - ech.dim


# isomorphism -----------------------------------------------------------------


def chain_iso_test(u: MonoChain, v: MonoChain, seed: int = 0) -> bool:
    """True iff u and v are isomorphic as chains.

    Necessary check: componentwise normal forms agree.  Then searches the
    chain hom space for an invertible element: single basis vectors, small
    deterministic weights, then seeded random combinations.
    """
    if u.cfg != v.cfg:
        raise ValueError("config mismatch")
    if u.length != v.length:
        return False
    for a, b in zip(u.objects, v.objects):
        if not module_iso(a, b):
            return False
    if u.is_zero():
        return True
    basis = chain_hom_basis(u, v)
    if not basis:
        return False

    F = u.cfg.field

    def combo(weights):
        h = ChainMap.zero(u, v)
        for w, g in zip(weights, basis):
            if w:
                h = h + g.scale(F.from_int(w))
        return h

    for g in basis:
        if g.is_iso():
            return True
    # deterministic small-prime weights (exact over Q, usually enough mod p)
    primes = [1, 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]
    if combo(primes[: len(basis)] + [1] * max(0, len(basis) - len(primes))).is_iso():
        return True
    rng = random.Random(seed)
    p = getattr(F, "p", 0)
    hi = p if p else 1009
    for _ in range(64):
        if combo([rng.randrange(hi) for _ in basis]).is_iso():
            return True
    # exhaustive fallback over small finite fields and small bases
    if p and p ** len(basis) <= 4096:
        def rec(ws):
            if len(ws) == len(basis):
                return combo(ws).is_iso()
            return any(rec(ws + [w]) for w in range(p))
        return rec([])
    return False
