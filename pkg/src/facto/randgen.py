"""Seeded random generators for factorizations, chains, and split sequences.

Used by the property-test harness and the CLI selftest.  Everything is
driven by an explicit `random.Random` instance for reproducibility.
"""

from __future__ import annotations

import random

from .chains import MonoChain
from .factorizations import FacMap, Factorization, fac_validate
from .modules import (
    HypersurfaceConfig,
    ModuleMap,
    RModule,
    hom_basis,
    map_ker_cok_im,
)
from .poly import Polynomial
from .polymat import GradedMatrix, PolyMatrix, solve_right


def random_unimodular(field, degs, rng: random.Random) -> GradedMatrix:
    """Graded automorphism of ⊕S(-a): unit diagonal, entries raising degree."""
    n = len(degs)
    entries = [[Polynomial.zero(field) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        entries[i][i] = Polynomial(field, [field.from_int(rng.randrange(1, 5))])
    for r in range(n):
        for c in range(n):
            e = degs[c] - degs[r]
            if r != c and e > 0 and rng.random() < 0.5:
                coeff = field.from_int(rng.randrange(-2, 3))
                entries[r][c] = Polynomial.monomial(field, e).scale(coeff)
    return GradedMatrix(PolyMatrix(field, entries), degs, degs)


def homothety_block(field, power, degs_src) -> GradedMatrix:
    """x^power * I on the given source degrees (targets drop by power)."""
    return GradedMatrix(
        PolyMatrix.scalar(field, len(degs_src), Polynomial.monomial(field, power)),
        degs_src,
        [s - power for s in degs_src],
    )


def rank1_factorization(cfg, powers, deg0: int = 0) -> Factorization:
    """x^{a_0}, ..., x^{a_{l-1}} with sum of powers <= d; closing x^{rest}."""
    maps = []
    cur = [deg0]
    for a in powers:
        maps.append(homothety_block(cfg.field, a, cur))
        cur = [s - a for s in cur]
    out = fac_validate(maps, cfg)
    assert isinstance(out, Factorization)
    return out


def random_factorization(cfg: HypersurfaceConfig, l: int, rng: random.Random,
                         m_max: int = 3, window: int = 2) -> Factorization:
    """Direct sum of shifted rank-1 pieces, conjugated by unimodular changes."""
    m = rng.randrange(1, m_max + 1)
    parts = []
    for _ in range(m):
        left = cfg.d
        powers = []
        for _ in range(l):
            a = rng.randrange(0, left + 1)
            powers.append(a)
            left -= a
        parts.append(
            rank1_factorization(cfg, powers, deg0=rng.randrange(0, window + 1))
        )
    x = parts[0]
    for p in parts[1:]:
        x = x.direct_sum(p)
    # conjugate: A'^k = U_{k+1} A^k U_k^{-1} keeps validity and the iso class
    us = [random_unimodular(cfg.field, list(x.degs(k)), rng) for k in range(l + 1)]
    maps = []
    for k in range(l):
        rhs = (us[k + 1] @ x.maps[k]).mat
        a = solve_right(us[k].mat.transpose(), rhs.transpose()).transpose()
        maps.append(GradedMatrix(a, x.degs(k), x.degs(k + 1)))
    out = fac_validate(maps, cfg)
    assert isinstance(out, Factorization)
    return out


def random_module(cfg: HypersurfaceConfig, rng: random.Random,
                  max_summands: int = 2, window: int = 2) -> RModule:
    return RModule(
        cfg,
        [
            (rng.randrange(1, cfg.d + 1), rng.randrange(0, window + 1))
            for _ in range(rng.randrange(0, max_summands + 1))
        ],
    )


def random_chain(cfg: HypersurfaceConfig, length: int, rng: random.Random,
                 max_summands: int = 2) -> MonoChain:
    """Valid chain built by stacking kernels of random maps under the top."""
    top = random_module(cfg, rng, max_summands)
    objs = [top]
    incls = []
    for _ in range(length - 1):
        cur = objs[0]
        tgt = random_module(cfg, rng, max_summands)
        basis = hom_basis(cur, tgt)
        if basis and rng.random() < 0.8:
            f = basis[0].scale(cfg.field.from_int(rng.randrange(-2, 3)))
            for g in basis[1:]:
                f = f + g.scale(cfg.field.from_int(rng.randrange(-2, 3)))
            (ker, incl), _, _ = map_ker_cok_im(f)
        else:
            ker, incl = cur, ModuleMap.identity(cur)
        objs.insert(0, ker)
        incls.insert(0, incl)
    return MonoChain(cfg, objs, incls)


def random_split_ses(cfg: HypersurfaceConfig, l: int, rng: random.Random,
                     m_max: int = 2, tries: int = 50):
    """Termwise split SES X >-> Y ->> Z with Y a triangular extension.

    Returns (i, p) as FacMaps.  Falls back to the plain direct sum when no
    random triangular perturbation yields a valid factorization.
    """
    F = cfg.field
    x = random_factorization(cfg, l, rng, m_max=m_max)
    z = random_factorization(cfg, l, rng, m_max=m_max)

    def build(h_list):
        maps = []
        for k in range(l):
            a, b = x.maps[k], z.maps[k]
            top = a.mat.hstack(h_list[k])
            bot = PolyMatrix.zero(F, b.mat.rows, a.mat.cols).hstack(b.mat)
            mat = top.vstack(bot)
            maps.append(
                GradedMatrix(
                    mat,
                    list(x.degs(k)) + list(z.degs(k)),
                    list(x.degs(k + 1)) + list(z.degs(k + 1)),
                    check=False,
                )
            )
        return fac_validate(maps, cfg)

    y = None
    for _ in range(tries):
        h_list = []
        for k in range(l):
            rows, cols = x.m, z.m
            entries = [[Polynomial.zero(F) for _ in range(cols)] for _ in range(rows)]
            for r in range(rows):
                for c in range(cols):
                    e = z.degs(k)[c] - x.degs(k + 1)[r]
                    if e >= 0 and rng.random() < 0.4:
                        coeff = F.from_int(rng.randrange(-2, 3))
                        entries[r][c] = Polynomial.monomial(F, e).scale(coeff)
            h_list.append(PolyMatrix(F, entries))
        cand = build(h_list)
        if isinstance(cand, Factorization):
            y = cand
            break
    if y is None:
        y = x.direct_sum(z)

    def block_incl(k):
        top = PolyMatrix.identity(F, x.m)
        bot = PolyMatrix.zero(F, z.m, x.m)
        return GradedMatrix(
            top.vstack(bot), x.degs(k), list(x.degs(k)) + list(z.degs(k)),
            check=False,
        )

    def block_proj(k):
        left = PolyMatrix.zero(F, z.m, x.m)
        return GradedMatrix(
            left.hstack(PolyMatrix.identity(F, z.m)),
            list(x.degs(k)) + list(z.degs(k)), z.degs(k), check=False,
        )

    i = FacMap(x, y, [block_incl(k) for k in range(l + 1)])
    p = FacMap(y, z, [block_proj(k) for k in range(l + 1)])
    return i, p
