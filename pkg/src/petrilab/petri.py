"""Petri multiplication maps H^0(L) x H^0(K - L) -> H^0(K) as explicit matrices.

For L = O(D) on an odd hyperelliptic model, H^0(K) = span{1, x, ..., x^(g-1)},
so every product of sections is reduced to a coefficient vector of length g.
The module also removes base points, picks a base-point-free pencil, and
evaluates the restricted kernels and the inequality chain instance by
instance.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Sequence

from . import poly
from .curve import INFINITY, Curve, Divisor, FunctionElement, Point, canonical_divisor, valuation
from .errors import EmptyLinearSystem, NotSpecial, PencilHasBasePoint, ProductOutsideTarget
from .hopf import BilinearTensor
from .linalg import Matrix, rank, span_dim
from .riemann_roch import clifford_index_divisor, h0, rr_space

log = logging.getLogger(__name__)

CURVE_CLIFFORD_INDEX = 0  # every in-scope curve is hyperelliptic


def canonical_coordinates(C: Curve, h: FunctionElement) -> tuple:
    """Coordinates of ``h`` in the basis 1, x, ..., x^(g-1) of H^0(K)."""
    K = C.field
    if h.b or poly.deg(h.c) != 0 or poly.deg(h.a) >= C.genus:
        raise ProductOutsideTarget(f"{h} is not in H^0(K) = span(1, ..., x^{C.genus - 1})")
    return tuple(h.a) + (K.zero,) * (C.genus - len(h.a))


def multiplication_matrix(C: Curve, sections: Sequence[FunctionElement], cosections: Sequence[FunctionElement]) -> Matrix:
    """g x (len(sections) * len(cosections)) matrix; column (i, j) is s_i * t_j, i-major."""
    columns = [canonical_coordinates(C, s * t) for s in sections for t in cosections]
    g = C.genus
    rows = tuple(tuple(col[k] for col in columns) for k in range(g))
    return Matrix(C.field, g, len(columns), rows)


def _require_petri(C: Curve, D: Divisor) -> None:
    if h0(C, D) < 1:
        raise EmptyLinearSystem(f"h0({D}) = 0")
    if h0(C, canonical_divisor(C) - D) < 1:
        raise NotSpecial(f"{D} is not special: h0(K - D) = 0")


def petri_matrix(C: Curve, D: Divisor) -> Matrix:
    _require_petri(C, D)
    K = canonical_divisor(C)
    return multiplication_matrix(C, rr_space(C, D).basis, rr_space(C, K - D).basis)


def petri_tensor(C: Curve, D: Divisor) -> BilinearTensor:
    """The Petri map as a bilinear tensor with dims (h0(D), h0(K - D), g)."""
    M = petri_matrix(C, D)
    a, b = h0(C, D), h0(C, canonical_divisor(C) - D)
    coeffs = tuple(M.rows[k][i * b + j] for i in range(a) for j in range(b) for k in range(C.genus))
    return BilinearTensor(C.field, (a, b, C.genus), coeffs)


# -- base points -------------------------------------------------------------


def _candidates(C: Curve, D: Divisor) -> list[Point]:
    pts = {INFINITY}
    for P, _ in D.affine:
        pts.add(P)
        pts.add(C.conjugate(P))
    return sorted(pts, key=Point.sort_key)


def _support_xs(D: Divisor) -> set:
    return {P.x for P, _ in D.affine}


def _strip_support(C: Curve, G: tuple, xs) -> tuple:
    K = C.field
    for x0 in xs:
        lin = poly.linear(K, x0)
        while poly.deg(G) > 0:
            q, r = poly.divmod_(K, G, lin)
            if r:
                break
            G = q
    return G


def _common_zero_poly(C: Curve, D: Divisor, sections: Sequence[FunctionElement]) -> tuple:
    """Polynomial whose roots are x-coordinates of common zeros of ``sections``
    away from the x-coordinates of supp(D).

    A common zero over x0 forces every norm a^2 - b^2 f and every cross term
    a_i b_j - a_j b_i to vanish at x0, and conversely.
    """
    K = C.field
    G: tuple = ()
    for s in sections:
        G = poly.gcd(K, G, s.norm_numerator())
    for i in range(len(sections)):
        for j in range(i + 1, len(sections)):
            si, sj = sections[i], sections[j]
            R = poly.sub(K, poly.mul(K, si.a, sj.b), poly.mul(K, sj.a, si.b))
            G = poly.gcd(K, G, R)
    return _strip_support(C, G, _support_xs(D))


def base_points(C: Curve, D: Divisor) -> list[Point]:
    """Rational base points of |D| among supp(D), conjugates, and infinity."""
    n = h0(C, D)
    if n == 0:
        return []
    return [P for P in _candidates(C, D) if h0(C, D - Divisor.point(P)) == n]


def remove_base_points(C: Curve, D: Divisor) -> tuple[Divisor, list[Point]]:
    removed: list[Point] = []
    while True:
        found = base_points(C, D)
        if not found:
            return D, removed
        D = D - Divisor.point(found[0])
        removed.append(found[0])


def is_base_point_free(C: Curve, D: Divisor) -> bool:
    n = h0(C, D)
    if n == 0:
        return False
    if n == 1:
        return D.degree == 0
    if base_points(C, D):
        return False
    return poly.deg(_common_zero_poly(C, D, rr_space(C, D).basis)) <= 0


def pencil_is_base_point_free(C: Curve, D: Divisor, s1: FunctionElement, s2: FunctionElement) -> bool:
    for P in _candidates(C, D):
        m = D.mult(P)
        if valuation(C, s1, P) + m > 0 and valuation(C, s2, P) + m > 0:
            return False
    return poly.deg(_common_zero_poly(C, D, (s1, s2))) <= 0


def pencil_basis(C: Curve, D: Divisor, seed: int = 0) -> list[FunctionElement]:
    """A basis of L(D) whose first two members form a base-point-free pencil.

    Tries echelon-basis pairs in order, then seeded random combinations.
    """
    space = rr_space(C, D)
    if space.dim < 2:
        raise ValueError(f"|{D}| has no pencil (h0 = {space.dim})")
    K = C.field
    coords = list(space.coords)
    for v1, v2 in _pencil_candidates(K, coords, seed):
        if span_dim(K, [v1, v2]) < 2:
            continue
        s1, s2 = space.element(v1), space.element(v2)
        if pencil_is_base_point_free(C, D, s1, s2):
            chosen = [v1, v2]
            for v in coords:
                if span_dim(K, chosen + [v]) > len(chosen):
                    chosen.append(v)
            return [space.element(v) for v in chosen]
    raise PencilHasBasePoint(f"no base-point-free pencil found in |{D}|")


def _pencil_candidates(K, coords, seed: int, tries: int = 64):
    for i in range(len(coords)):
        for j in range(i + 1, len(coords)):
            yield coords[i], coords[j]
    rng = random.Random(seed)
    for _ in range(tries):
        yield tuple(
            tuple(_combine(K, coords, [K.random_element(rng) for _ in coords])) for _ in range(2)
        )


def _combine(K, vectors, weights):
    out = [K.zero] * len(vectors[0])
    for v, w in zip(vectors, weights):
        for i, x in enumerate(v):
            out[i] = K.add(out[i], K.mul(w, x))
    return out


# -- restricted kernels and the inequality chain -----------------------------


def _restricted_kernels(C: Curve, D: Divisor, seed: int) -> dict[int, int]:
    """h0 of the kernel of the Petri map restricted to s_1..s_k, for k = 2..r+1."""
    sections = pencil_basis(C, D, seed)
    cosections = rr_space(C, canonical_divisor(C) - D).basis
    out = {}
    for k in range(2, len(sections) + 1):
        M = multiplication_matrix(C, sections[:k], cosections)
        out[k] = M.ncols - rank(M)
    return out


def restricted_kernel_dim(C: Curve, D: Divisor, k: int, seed: int = 0) -> int:
    """Kernel dimension of the multiplication map on the first k pencil-basis sections.

    Base points of |D| are removed first.
    """
    _require_petri(C, D)
    Dp, _ = remove_base_points(C, D)
    r = h0(C, Dp) - 1
    if not 2 <= k <= r + 1:
        raise ValueError(f"k = {k} outside 2..{r + 1}")
    return _restricted_kernels(C, Dp, seed)[k]


def bpf_trick_check(C: Curve, D: Divisor, seed: int = 0) -> bool:
    """Kernel of (u, v) -> s1 u + s2 v on H^0(K - D)^2 has dimension h0(K - 2D)."""
    Dp, _ = remove_base_points(C, D)
    return restricted_kernel_dim(C, Dp, 2, seed) == h0(C, canonical_divisor(C) - 2 * Dp)


@dataclass(frozen=True)
class ChainReport:
    divisor: Divisor
    g: int
    d: int
    r: int
    h0_KmD: int
    h0_Km2D: int
    dim_im: int
    e: int
    c: int
    restricted_kernel_dims: dict
    kernel_from_e: int
    sequence_bound: int
    printed_bound: int
    lower_bound: int
    cliff_2D: int | None
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v for v in self.checks.values() if v is not None)

    def to_json(self) -> dict:
        out = {
            k: getattr(self, k)
            for k in (
                "g", "d", "r", "h0_KmD", "h0_Km2D", "dim_im", "e", "c",
                "kernel_from_e", "sequence_bound", "printed_bound", "lower_bound", "cliff_2D",
            )
        }
        out["divisor"] = str(self.divisor)
        out["restricted_kernel_dims"] = {str(k): v for k, v in sorted(self.restricted_kernel_dims.items())}
        out["checks"] = dict(self.checks)
        out["ok"] = self.ok
        return out


def inequality_chain(C: Curve, D: Divisor, seed: int = 0, c: int = CURVE_CLIFFORD_INDEX) -> ChainReport:
    """Evaluate the lower bound h0(K - 2D) >= g - d - e and its neighbours on the
    base-point-free part of |D|."""
    _require_petri(C, D)
    D, _ = remove_base_points(C, D)
    g, d = C.genus, D.degree
    Kc = canonical_divisor(C)
    r = h0(C, D) - 1
    if r < 1:
        raise ValueError(f"|{D}| has no pencil (r = {r})")
    h0_KmD = h0(C, Kc - D)
    h0_Km2D = h0(C, Kc - 2 * D)
    dim_im = rank(petri_matrix(C, D))
    e = dim_im - (g - (d - 2 * r))
    kernels = _restricted_kernels(C, D, seed)
    full = kernels[r + 1]
    kernel_from_e = (g - d + r) * (r + 1) - (g - d + 2 * r + e)
    sequence_bound = h0_Km2D + (r - 1) * h0_KmD
    cliff_2D = clifford_index_divisor(C, 2 * D)
    checks = {
        "rank_nullity": full == (r + 1) * h0_KmD - dim_im,
        "kernel_identity": full == kernel_from_e,
        "pencil_trick": kernels[2] == h0_Km2D,
        "sequence_bound": all(v <= h0_Km2D + (k - 2) * h0_KmD for k, v in kernels.items()),
        "lower_bound": h0_Km2D >= g - d - e,
        "cliff_2D_at_most_2e": None if cliff_2D is None else cliff_2D <= 2 * e,
        "cliff_2D_at_least_c": None if cliff_2D is None else cliff_2D >= c,
        "two_e_at_least_c": 2 * e >= c,
    }
    return ChainReport(
        divisor=D, g=g, d=d, r=r, h0_KmD=h0_KmD, h0_Km2D=h0_Km2D, dim_im=dim_im, e=e, c=c,
        restricted_kernel_dims=kernels, kernel_from_e=kernel_from_e, sequence_bound=sequence_bound,
        printed_bound=h0_KmD + (r - 1) * h0_Km2D, lower_bound=g - d - e, cliff_2D=cliff_2D, checks=checks,
    )


# -- full report ---------------------------------------------------------------


@dataclass(frozen=True)
class PetriReport:
    curve_id: str
    divisor: Divisor
    d: int
    r: int
    g: int
    h0_KmD: int
    dim_im: int
    dim_ker: int
    dim_coker: int
    cliff_L: int
    e: int
    h0_Km2D: int
    bpf: bool
    bpf_divisor: Divisor | None
    chain: ChainReport | None
    checks: dict
    warnings: tuple = ()

    @property
    def ok(self) -> bool:
        return all(v for v in self.checks.values() if v is not None)

    def to_json(self) -> dict:
        out = {
            k: getattr(self, k)
            for k in ("curve_id", "d", "r", "g", "h0_KmD", "dim_im", "dim_ker", "dim_coker", "cliff_L", "e", "h0_Km2D", "bpf")
        }
        out["divisor"] = str(self.divisor)
        out["bpf_divisor"] = None if self.bpf_divisor is None else str(self.bpf_divisor)
        out["chain"] = None if self.chain is None else self.chain.to_json()
        out["checks"] = dict(self.checks)
        out["warnings"] = list(self.warnings)
        return out


def petri_report(C: Curve, D: Divisor, seed: int = 0, c: int = CURVE_CLIFFORD_INDEX) -> PetriReport:
    _require_petri(C, D)
    g, d = C.genus, D.degree
    Kc = canonical_divisor(C)
    r = h0(C, D) - 1
    h0_KmD = h0(C, Kc - D)
    M = petri_matrix(C, D)
    dim_im = rank(M)
    cliff_L = d - 2 * r
    e = dim_im - (g - cliff_L)
    warnings = []
    if d > g - 2:
        warnings.append(f"d = {d} exceeds g - 2 = {g - 2}; computed anyway")

    chain = bpf_divisor = None
    bpf_ok = chain_ok = None
    if r >= 1:
        try:
            bpf_divisor, _ = remove_base_points(C, D)
            chain = inequality_chain(C, bpf_divisor, seed, c)
            bpf_ok = chain.checks["pencil_trick"]
            chain_ok = chain.ok
        except PencilHasBasePoint as exc:
            warnings.append(str(exc))
            log.warning("%s", exc)
    checks = {
        "hopf": dim_im >= (r + 1) + h0_KmD - 1,
        "martens": g - dim_im <= d - 2 * r,
        "clifford_refinement": e >= 0 and 2 * e >= c,
        "bpf_trick": bpf_ok,
        "chain": chain_ok,
    }
    return PetriReport(
        curve_id=C.digest(), divisor=D, d=d, r=r, g=g, h0_KmD=h0_KmD, dim_im=dim_im,
        dim_ker=M.ncols - dim_im, dim_coker=g - dim_im, cliff_L=cliff_L, e=e,
        h0_Km2D=h0(C, Kc - 2 * D), bpf=is_base_point_free(C, D), bpf_divisor=bpf_divisor,
        chain=chain, checks=checks, warnings=tuple(warnings),
    )
