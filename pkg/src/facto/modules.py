"""Finitely generated graded modules over R = k[x]/(x^d).

An `RModule` is a direct sum of cyclic pieces (R/(x^e))(-s), recorded as a
list of (e, s) pairs.  Each module carries a realization as a graded
k-vector space with a degree-raising x-operator; kernels, cokernels, hom
spaces and stable homs all reduce to plain exact linear algebra on these
realizations.  The zero module (no summands) is a first-class value.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .fields import Field
from .poly import Polynomial
from .polymat import GradedMatrix, try_solve_right


class NotAnnihilated(Exception):
    """The presented cokernel is not killed by x^d."""


@dataclass(frozen=True)
class HypersurfaceConfig:
    """Fixes f = x^d: tau is the grade shift by d, omega is x^d."""

    d: int
    field: Field

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be >= 1")


class RModule:
    """Direct sum of (R/(x^e_t))(-s_t); summand order is kept as given."""

    __slots__ = ("cfg", "summands", "_basis")

    def __init__(self, cfg: HypersurfaceConfig, summands):
        summands = tuple((int(e), int(s)) for e, s in summands)
        for e, _ in summands:
            if not (1 <= e <= cfg.d):
                raise ValueError(f"socle length {e} outside [1, {cfg.d}]")
        self.cfg = cfg
        self.summands = summands
        # flattened realization basis: (summand index, power) pairs
        self._basis = tuple(
            (t, i) for t, (e, _) in enumerate(summands) for i in range(e)
        )

    # structure ----------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self._basis)

    @property
    def basis(self):
        return self._basis

    def basis_degrees(self):
        return [self.summands[t][1] + i for t, i in self._basis]

    def basis_index(self, t: int, i: int) -> int:
        return self._basis.index((t, i))

    def x_matrix(self):
        F = self.cfg.field
        n = self.dim
        idx = {b: k for k, b in enumerate(self._basis)}
        m = linalg.zeros(F, n, n)
        for k, (t, i) in enumerate(self._basis):
            nxt = idx.get((t, i + 1))
            if nxt is not None:
                m[nxt][k] = F.one
        return m

    def is_zero(self) -> bool:
        return not self.summands

    def is_free(self) -> bool:
        return all(e == self.cfg.d for e, _ in self.summands)

    def sorted_summands(self):
        return tuple(sorted(self.summands))

    def normal_form(self) -> "RModule":
        return RModule(self.cfg, self.sorted_summands())

    def shift(self, t: int) -> "RModule":
        return RModule(self.cfg, [(e, s + t) for e, s in self.summands])

    def direct_sum(self, other: "RModule") -> "RModule":
        if other.cfg != self.cfg:
            raise ValueError("config mismatch")
        return RModule(self.cfg, self.summands + other.summands)

    def min_degree(self):
        return min((s for _, s in self.summands), default=0)

    def __eq__(self, other):
        return (
            isinstance(other, RModule)
            and self.cfg == other.cfg
            and self.summands == other.summands
        )

    def __hash__(self):
        return hash((self.cfg, self.summands))

    def __repr__(self):
        if not self.summands:
            return "RModule(0)"
        body = " + ".join(f"R/(x^{e})(-{s})" for e, s in self.summands)
        return f"RModule({body}; d={self.cfg.d})"

    def to_json(self):
        return {"d": self.cfg.d, "summands": [list(p) for p in self.summands]}

    @classmethod
    def from_json(cls, cfg: HypersurfaceConfig, data) -> "RModule":
        if data.get("d", cfg.d) != cfg.d:
            raise ValueError("module d does not match config")
        return cls(cfg, [tuple(p) for p in data["summands"]])

    @classmethod
    def zero(cls, cfg: HypersurfaceConfig) -> "RModule":
        return cls(cfg, ())

    @classmethod
    def free(cls, cfg: HypersurfaceConfig, gen_degs) -> "RModule":
        return cls(cfg, [(cfg.d, s) for s in gen_degs])


def module_iso(m: RModule, n: RModule) -> bool:
    if m.cfg != n.cfg:
        raise ValueError("config mismatch")
    return m.sorted_summands() == n.sorted_summands()


# module maps ------------------------------------------------------------


class ModuleMap:
    """Degree-0 x-equivariant map, stored by generator-image coefficients.

    blocks[u][t] is the scalar c in gen_t -> c * x^(s_t - s_u) * gen_u.
    Validity is semantic: the realization must commute with x; the block
    pattern itself is only normalized (entries whose monomial image is
    zero are dropped).
    """

    __slots__ = ("src", "tgt", "blocks", "_real")

    def __init__(self, src: RModule, tgt: RModule, blocks, check: bool = True):
        if src.cfg != tgt.cfg:
            raise ValueError("config mismatch")
        F = src.cfg.field
        norm = []
        for u, (eu, su) in enumerate(tgt.summands):
            row = []
            for t, (et, st) in enumerate(src.summands):
                c = blocks[u][t]
                j0 = st - su
                if not F.is_zero(c) and (j0 < 0 or j0 >= eu):
                    if j0 < 0:
                        raise ValueError(
                            f"no degree-0 map from summand {t} to {u} (negative twist)"
                        )
                    c = F.zero  # image monomial already vanishes
                row.append(c)
            norm.append(tuple(row))
        self.src = src
        self.tgt = tgt
        self.blocks = tuple(norm)
        self._real = None
        if check and not self.commutes_with_x():
            raise ValueError("map does not commute with x (not R-linear)")

    # realization ---------------------------------------------------------

    def realization(self):
        """dim(tgt) x dim(src) matrix over k."""
        if self._real is not None:
            return self._real
        F = self.src.cfg.field
        m = linalg.zeros(F, self.tgt.dim, self.src.dim)
        tgt_idx = {b: k for k, b in enumerate(self.tgt.basis)}
        for col, (t, i) in enumerate(self.src.basis):
            st = self.src.summands[t][1]
            for u, (eu, su) in enumerate(self.tgt.summands):
                c = self.blocks[u][t]
                if F.is_zero(c):
                    continue
                j = st - su + i
                if j < eu:
                    m[tgt_idx[(u, j)]][col] = c
        self._real = m
        return m

    def commutes_with_x(self) -> bool:
        F = self.src.cfg.field
        r = self.realization()
        lhs = linalg.mat_mul(F, self.tgt.x_matrix(), r)
        rhs = linalg.mat_mul(F, r, self.src.x_matrix())
        return lhs == rhs

    @classmethod
    def from_realization(cls, src: RModule, tgt: RModule, real) -> "ModuleMap":
        """Recover block form from a realization matrix; validates agreement."""
        F = src.cfg.field
        tgt_idx = {b: k for k, b in enumerate(tgt.basis)}
        src_idx = {b: k for k, b in enumerate(src.basis)}
        blocks = []
        for u, (eu, su) in enumerate(tgt.summands):
            row = []
            for t, (et, st) in enumerate(src.summands):
                j0 = st - su
                if 0 <= j0 < eu:
                    row.append(real[tgt_idx[(u, j0)]][src_idx[(t, 0)]])
                else:
                    row.append(F.zero)
            blocks.append(row)
        f = cls(src, tgt, blocks)
        if f.realization() != [r[:] for r in real]:
            raise ValueError("realization is not a degree-0 equivariant map")
        return f

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, src: RModule, tgt: RModule) -> "ModuleMap":
        F = src.cfg.field
        return cls(
            src, tgt, [[F.zero] * len(src.summands) for _ in tgt.summands], check=False
        )

    @classmethod
    def identity(cls, m: RModule) -> "ModuleMap":
        F = m.cfg.field
        n = len(m.summands)
        return cls(
            m, m, [[F.one if u == t else F.zero for t in range(n)] for u in range(n)],
            check=False,
        )

    # arithmetic -----------------------------------------------------------

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        if other.tgt != self.src:
            raise ValueError("composition mismatch")
        if self.src.is_zero():
            return ModuleMap.zero(other.src, self.tgt)
        F = self.src.cfg.field
        real = linalg.mat_mul(F, self.realization(), other.realization())
        return ModuleMap.from_realization(other.src, self.tgt, real)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        if self.src != other.src or self.tgt != other.tgt:
            raise ValueError("shape mismatch")
        F = self.src.cfg.field
        blocks = [
            [F.add(a, b) for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.blocks, other.blocks)
        ]
        return ModuleMap(self.src, self.tgt, blocks, check=False)

    def scale(self, c) -> "ModuleMap":
        F = self.src.cfg.field
        return ModuleMap(
            self.src, self.tgt, [[F.mul(c, b) for b in row] for row in self.blocks],
            check=False,
        )

    def __neg__(self) -> "ModuleMap":
        return self.scale(self.src.cfg.field.from_int(-1))

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return self + (-other)

    def direct_sum(self, other: "ModuleMap") -> "ModuleMap":
        F = self.src.cfg.field
        src = self.src.direct_sum(other.src)
        tgt = self.tgt.direct_sum(other.tgt)
        ns, no = len(self.src.summands), len(other.src.summands)
        blocks = []
        for u in range(len(self.tgt.summands)):
            blocks.append(list(self.blocks[u]) + [F.zero] * no)
        for u in range(len(other.tgt.summands)):
            blocks.append([F.zero] * ns + list(other.blocks[u]))
        return ModuleMap(src, tgt, blocks, check=False)

    def is_zero(self) -> bool:
        F = self.src.cfg.field
        return all(F.is_zero(c) for row in self.blocks for c in row)

    def __eq__(self, other):
        return (
            isinstance(other, ModuleMap)
            and self.src == other.src
            and self.tgt == other.tgt
            and self.blocks == other.blocks
        )

    def __repr__(self):
        return f"ModuleMap({self.src} -> {self.tgt}, blocks={self.blocks})"

    def to_json(self):
        F = self.src.cfg.field
        return {
            "src": self.src.to_json(),
            "tgt": self.tgt.to_json(),
            "blocks": [[F.to_json(c) for c in row] for row in self.blocks],
        }

    @classmethod
    def from_json(cls, cfg: HypersurfaceConfig, data) -> "ModuleMap":
        src = RModule.from_json(cfg, data["src"])
        tgt = RModule.from_json(cfg, data["tgt"])
        blocks = [[cfg.field.parse(c) for c in row] for row in data["blocks"]]
        return cls(src, tgt, blocks)


# realization helpers ------------------------------------------------------


def _by_degree(degs):
    out = {}
    for k, s in enumerate(degs):
        out.setdefault(s, []).append(k)
    return out


def homogeneous_components(field, degs, vectors):
    """Split possibly-redundant homogeneous vectors into per-degree bases."""
    comps = {}
    for v in vectors:
        support = [k for k, c in enumerate(v) if not field.is_zero(c)]
        if not support:
            continue
        s = degs[support[0]]
        assert all(degs[k] == s for k in support), "vector is not homogeneous"
        comps.setdefault(s, linalg.Echelon(field)).add(v)
    return {s: [r[:] for r in e.rows] for s, e in comps.items()}


def decompose(field, d, degs, xmat):
    """Homogeneous Jordan decomposition of a graded nilpotent x-operator.

    Returns (summands, basis) where summands is the sorted list of
    (length, degree) pairs and basis the list of columns realizing the
    normal form: for each summand, the chain v, xv, ..., x^(e-1)v.
    """
    n = len(degs)
    if n == 0:
        return [], []
    # powers of x and their per-degree kernels
    powers = [linalg.identity(field, n)]
    while not all(field.is_zero(c) for row in powers[-1] for c in row):
        powers.append(linalg.mat_mul(field, xmat, powers[-1]))
        assert len(powers) <= d + 1, "operator is not nilpotent of order <= d"
    nil = len(powers) - 1  # x^nil == 0

    deg_cols = _by_degree(degs)

    def kernel_vectors(j, s):
        """Homogeneous basis of ker(x^j) in degree s (global coordinates)."""
        cols = deg_cols.get(s, [])
        if not cols:
            return []
        sub = [[powers[j][r][c] for c in cols] for r in range(n)]
        out = []
        for v in linalg.nullspace(field, sub, cols=len(cols)):
            w = [field.zero] * n
            for c, val in zip(cols, v):
                w[c] = val
            out.append(w)
        return out

    chains = []  # (start vector, length, degree)
    for j in range(nil, 0, -1):
        for s in sorted(deg_cols):
            ech = linalg.Echelon(field)
            for v in kernel_vectors(j - 1, s):
                ech.add(v)
            for v, length, sv in chains:
                if sv + (length - j) == s and length > j:
                    ech.add(linalg.mat_vec(field, powers[length - j], v))
            for w in kernel_vectors(j, s):
                if ech.add(w):
                    chains.append((w, j, s))

    chains.sort(key=lambda c: (c[1], c[2]))
    summands = [(length, s) for _, length, s in chains]
    basis = []
    for v, length, _ in chains:
        for i in range(length):
            basis.append(linalg.mat_vec(field, powers[i], v))
    assert sum(e for e, _ in summands) == n, "Jordan chains do not fill the space"
    return summands, basis


def realization_to_module(cfg: HypersurfaceConfig, degs, xmat):
    """Normal-form module plus the change of basis to/from the realization.

    Returns (module, to_real, from_real): to_real maps normal-form
    coordinates into the given realization; from_real is its inverse.
    """
    F = cfg.field
    summands, basis = decompose(F, cfg.d, degs, xmat)
    mod = RModule(cfg, summands)
    n = mod.dim
    to_real = [[basis[c][r] for c in range(n)] for r in range(len(degs))]
    if n:
        from_real = linalg.invert(F, to_real)
        assert from_real is not None
    else:
        from_real = []
    return mod, to_real, from_real


def subspace_realization(field, degs, xmat, vectors):
    """(sub_degs, sub_x, inclusion) for an x-stable homogeneous span."""
    comps = homogeneous_components(field, degs, vectors)
    basis, sdegs = [], []
    for s in sorted(comps):
        for v in comps[s]:
            basis.append(v)
            sdegs.append(s)
    k = len(basis)
    incl = [[basis[c][r] for c in range(k)] for r in range(len(degs))]
    # coordinates of x * basis vector in the sub-basis
    sx = linalg.zeros(field, k, k)
    for c, v in enumerate(basis):
        xv = linalg.mat_vec(field, xmat, v)
        coords = linalg.solve(field, incl, xv)
        assert coords is not None, "span is not x-stable"
        for r in range(k):
            sx[r][c] = coords[r]
    return sdegs, sx, incl


def quotient_realization(field, degs, xmat, sub_vectors):
    """(q_degs, q_x, projection, section) for the quotient by a submodule span."""
    n = len(degs)
    comps = homogeneous_components(field, degs, sub_vectors)
    deg_cols = _by_degree(degs)
    comp_cols = []  # chosen complement: standard basis indices
    ech_by_deg = {}
    for s, cols in sorted(deg_cols.items()):
        ech = linalg.Echelon(field)
        for v in comps.get(s, []):
            ech.add(v)
        sub_dim = ech.dim
        for c in cols:
            if ech.add(linalg.unit_vector(field, n, c)):
                comp_cols.append(c)
        ech_by_deg[s] = (comps.get(s, []), sub_dim)
    q = len(comp_cols)
    q_degs = [degs[c] for c in comp_cols]
    section = [[field.one if comp_cols[j] == r else field.zero for j in range(q)] for r in range(n)]

    # projection: solve [sub basis | complement] coords per degree, keep complement part
    proj = linalg.zeros(field, q, n)
    for s, cols in deg_cols.items():
        sub_basis = ech_by_deg[s][0]
        local_comp = [c for c in comp_cols if degs[c] == s]
        full = sub_basis + [linalg.unit_vector(field, n, c) for c in local_comp]
        if not full:
            continue
        # express each standard basis vector of this degree in `full` coords
        mat = [[full[c][r] for c in range(len(full))] for r in range(n)]
        for c in cols:
            coords = linalg.solve(field, mat, linalg.unit_vector(field, n, c))
            assert coords is not None
            for j, cc in enumerate(local_comp):
                proj[comp_cols.index(cc)][c] = coords[len(sub_basis) + j]
    q_x = linalg.mat_mul(field, proj, linalg.mat_mul(field, xmat, section))
    return q_degs, q_x, proj, section


# operations ---------------------------------------------------------------


def _image_vectors(f: ModuleMap):
    """Homogeneous spanning set of the image inside tgt's realization."""
    F = f.src.cfg.field
    r = f.realization()
    return [[r[i][c] for i in range(f.tgt.dim)] for c in range(f.src.dim)]


def _kernel_vectors(f: ModuleMap):
    """Homogeneous basis of the kernel inside src's realization."""
    F = f.src.cfg.field
    src_degs = f.src.basis_degrees()
    r = f.realization()
    deg_cols = _by_degree(src_degs)
    out = []
    n = f.src.dim
    for s, cols in sorted(deg_cols.items()):
        sub = [[r[i][c] for c in cols] for i in range(f.tgt.dim)]
        for v in linalg.nullspace(F, sub, cols=len(cols)):
            w = [F.zero] * n
            for c, val in zip(cols, v):
                w[c] = val
            out.append(w)
    return out


def map_ker_cok_im(f: ModuleMap):
    """Kernel, cokernel and image in normal form, with structure maps.

    Returns ((ker, incl), (cok, proj), im) where incl: ker -> src and
    proj: tgt -> cok are ModuleMaps.
    """
    cfg = f.src.cfg
    F = cfg.field

    kvecs = _kernel_vectors(f)
    sdegs, sx, incl_mat = subspace_realization(F, f.src.basis_degrees(), f.src.x_matrix(), kvecs)
    kmod, k_to_real, _ = realization_to_module(cfg, sdegs, sx)
    incl_real = linalg.mat_mul(F, incl_mat, k_to_real)
    incl = ModuleMap.from_realization(kmod, f.src, incl_real)

    ivecs = _image_vectors(f)
    idegs, ix, _ = subspace_realization(F, f.tgt.basis_degrees(), f.tgt.x_matrix(), ivecs)
    imod, _, _ = realization_to_module(cfg, idegs, ix)

    qdegs, qx, proj_mat, _ = quotient_realization(
        F, f.tgt.basis_degrees(), f.tgt.x_matrix(), ivecs
    )
    cmod, _, c_from_real = realization_to_module(cfg, qdegs, qx)
    proj_real = linalg.mat_mul(F, c_from_real, proj_mat)
    proj = ModuleMap.from_realization(f.tgt, cmod, proj_real)

    assert kmod.dim + imod.dim == f.src.dim, "rank-nullity violated"
    return (kmod, incl), (cmod, proj), imod


def is_mono_epi(f: ModuleMap):
    F = f.src.cfg.field
    r = f.realization()
    rk = linalg.rank(F, r) if r else 0
    return rk == f.src.dim, rk == f.tgt.dim


def hom_basis(m: RModule, n: RModule):
    """k-basis of degree-0 x-equivariant maps m -> n.

    Solves the commuting linear system on the realizations: unknowns are
    the degree-matching matrix entries, constraints come from x-equivariance.
    """
    if m.cfg != n.cfg:
        raise ValueError("config mismatch")
    F = m.cfg.field
    mdegs, ndegs = m.basis_degrees(), n.basis_degrees()
    unknowns = [
        (i, j)
        for i in range(n.dim)
        for j in range(m.dim)
        if ndegs[i] == mdegs[j]
    ]
    if not unknowns:
        return []
    uidx = {p: k for k, p in enumerate(unknowns)}
    xm, xn = m.x_matrix(), n.x_matrix()
    # rows: equations (x_n R - R x_m)[i][j] = 0
    rows = []
    for i in range(n.dim):
        for j in range(m.dim):
            row = [F.zero] * len(unknowns)
            touched = False
            for k in range(n.dim):
                if not F.is_zero(xn[i][k]) and (k, j) in uidx:
                    row[uidx[(k, j)]] = F.add(row[uidx[(k, j)]], xn[i][k])
                    touched = True
            for k in range(m.dim):
                if not F.is_zero(xm[k][j]) and (i, k) in uidx:
                    row[uidx[(i, k)]] = F.sub(row[uidx[(i, k)]], xm[k][j])
                    touched = True
            if touched:
                rows.append(row)
    sols = linalg.nullspace(F, rows, cols=len(unknowns))
    out = []
    for sol in sols:
        real = linalg.zeros(F, n.dim, m.dim)
        for (i, j), val in zip(unknowns, sol):
            real[i][j] = val
        out.append(ModuleMap.from_realization(m, n, real))
    return out


def projective_cover(m: RModule):
    """(P, p): the free module on m's generators and the canonical epi."""
    cfg = m.cfg
    F = cfg.field
    p_mod = RModule.free(cfg, [s for _, s in m.summands])
    n = len(m.summands)
    blocks = [[F.one if u == t else F.zero for t in range(n)] for u in range(n)]
    p = ModuleMap(p_mod, m, blocks)
    return p_mod, p


def bar_p_epic(m: RModule):
    """P/x^d P covering m; over k[x] this coincides with the projective cover."""
    return projective_cover(m)


def _map_space_span(field, maps):
    ech = linalg.Echelon(field)
    for f in maps:
        ech.add([c for row in f.realization() for c in row])
    return ech


def stable_hom_dim(m: RModule, n: RModule) -> int:
    """dim of Hom(m, n) modulo maps factoring through a projective.

    Every map through a projective factors through the projective cover
    of n, so the quotient is Hom(m, n) / (p o Hom(m, P(n))).
    """
    F = m.cfg.field
    homs = hom_basis(m, n)
    if not homs:
        return 0
    _, p = projective_cover(n)
    through = _map_space_span(F, [p @ g for g in hom_basis(m, p.src)])
    return len(homs) - through.dim


def lift_along_epi(p: ModuleMap, f: ModuleMap):
    """g with p o g = f, or None when no lift exists."""
    if p.tgt != f.tgt:
        raise ValueError("targets differ")
    F = p.src.cfg.field
    cand = hom_basis(f.src, p.src)
    cols = [[c for row in (p @ g).realization() for c in row] for g in cand]
    target = [c for row in f.realization() for c in row]
    if not target:
        return ModuleMap.zero(f.src, p.src)
    mat = [[col[r] for col in cols] for r in range(len(target))]
    coeffs = linalg.solve(F, mat, target) if cols else (
        None if any(not F.is_zero(c) for c in target) else []
    )
    if coeffs is None:
        return None
    g = ModuleMap.zero(f.src, p.src)
    for c, h in zip(coeffs, cand):
        g = g + h.scale(c)
    return g


# presentations ------------------------------------------------------------


def free_cover_realization(cfg: HypersurfaceConfig, gen_degs):
    """Realization data of the free module ⊕R(-b): (degs, x, module)."""
    mod = RModule.free(cfg, gen_degs)
    return mod.basis_degrees(), mod.x_matrix(), mod


def presentation_image_vectors(a: GradedMatrix, cfg: HypersurfaceConfig):
    """Columns of A reduced mod x^d, as homogeneous vectors in the free cover."""
    F = cfg.field
    d = cfg.d
    rows = len(a.tgt_degs)
    free_dim = rows * d
    vecs = []
    for col in range(len(a.src_degs)):
        base = [F.zero] * free_dim
        for j in range(rows):
            p = a.mat.entries[j][col]
            for c, coeff in enumerate(p.coeffs):
                if c < d and not F.is_zero(coeff):
                    base[j * d + c] = coeff
        vecs.append(base)
    return vecs


def module_from_presentation(a: GradedMatrix, cfg: HypersurfaceConfig) -> RModule:
    """Normal form of cok(A) for a graded map of free S-modules."""
    return presentation_cokernel(a, cfg)[0]


def presentation_cokernel(a: GradedMatrix, cfg: HypersurfaceConfig):
    """(module, projection) with projection from free-cover coordinates.

    projection maps the realization of ⊕R(-b_j) (the free cover of the
    cokernel) onto the normal-form realization.  Raises NotAnnihilated if
    x^d does not kill the cokernel.
    """
    F = cfg.field
    from .polymat import PolyMatrix

    omega = PolyMatrix.scalar(F, len(a.tgt_degs), Polynomial.monomial(F, cfg.d))
    if try_solve_right(a.mat, omega) is None:
        raise NotAnnihilated("x^d does not factor through the presentation")

    fdegs, fx, _ = free_cover_realization(cfg, a.tgt_degs)
    # close the column span under x
    vecs = presentation_image_vectors(a, cfg)
    closed = []
    for v in vecs:
        w = v
        for _ in range(cfg.d):
            if all(F.is_zero(c) for c in w):
                break
            closed.append(w)
            w = linalg.mat_vec(F, fx, w)
    qdegs, qx, proj_mat, _ = quotient_realization(F, fdegs, fx, closed)
    mod, _, from_real = realization_to_module(cfg, qdegs, qx)
    proj = linalg.mat_mul(F, from_real, proj_mat)
    return mod, proj
